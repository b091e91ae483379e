//! Command-line surface: JSON file formats for algebras and bimodules,
//! catalog-name resolution, and the implementations behind the `leibniz`
//! binary's subcommands.
//!
//! Exit-code contract: 0 success, 1 validation failure, 2 parse error,
//! 3 size guard, 4 method disagreement.

use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{
    self, killing_form, leibniz_kernel, lie_quotient, validate_leibniz, LeibnizAlgebra,
    LieAlgebra, SimplicityVerdict, StructureTensor,
};
use crate::bimodule::{lift, Bimodule, LieModule, Parity};
use crate::catalog::{self, CatalogSpec};
use crate::cohomology::{self, CohomologySpace};
use crate::error::Error;
use crate::exactlin::{Mat, Scalar};
use crate::extcalc::{self, ExtMethod, ExtStatus, ExtVerdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;
pub const EXIT_DISAGREE: i32 = 4;

/// A command failure carrying the contractual exit code.
#[derive(Debug)]
pub struct CliFailure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for CliFailure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse(_) | Error::Io(_) => EXIT_PARSE,
            Error::Guard(_) => EXIT_GUARD,
            _ => EXIT_INVALID,
        };
        CliFailure {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult = Result<(), CliFailure>;

fn fail(code: i32, message: impl Into<String>) -> CliFailure {
    CliFailure {
        code,
        message: message.into(),
    }
}

// ---------------------------------------------------------------------------
// File formats
// ---------------------------------------------------------------------------

/// Algebra file: brackets are sparse, `[e_i, e_j] = sum (num/den) e_k`;
/// omitted pairs are zero.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<BracketTerm>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BracketTerm {
    pub k: usize,
    pub num: i64,
    pub den: i64,
}

/// Bimodule file: either explicit operator families (sparse row-major
/// triples `[index, num, den]` with `index = row * dim + col`) or the
/// shorthand `{"simple": "V:m", "parity": "s" | "a"}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BimoduleFile {
    pub algebra: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<Vec<Vec<[i64; 3]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<Vec<Vec<[i64; 3]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simple: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity: Option<String>,
}

fn rational(num: i64, den: i64) -> Result<Scalar, Error> {
    if den == 0 {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(Scalar::new(BigInt::from(num), BigInt::from(den)))
}

impl AlgebraFile {
    pub fn to_tensor(&self) -> Result<(Vec<String>, StructureTensor), Error> {
        if self.basis.len() != self.dim {
            return Err(Error::Parse(format!(
                "basis has {} names for dimension {}",
                self.basis.len(),
                self.dim
            )));
        }
        let n = self.dim;
        let mut c = vec![vec![vec![Scalar::zero(); n]; n]; n];
        for entry in &self.brackets {
            if entry.i >= n || entry.j >= n {
                return Err(Error::Parse(format!(
                    "bracket pair ({}, {}) out of range",
                    entry.i, entry.j
                )));
            }
            for term in &entry.terms {
                if term.k >= n {
                    return Err(Error::Parse(format!("bracket target {} out of range", term.k)));
                }
                c[entry.i][entry.j][term.k] = rational(term.num, term.den)?;
            }
        }
        Ok((self.basis.clone(), c))
    }

    pub fn from_algebra(h: &LeibnizAlgebra) -> Self {
        let n = h.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let terms: Vec<BracketTerm> = (0..n)
                    .filter_map(|k| {
                        let v = h.structure_constant(i, j, k);
                        if v.is_zero() {
                            None
                        } else {
                            Some(BracketTerm {
                                k,
                                num: bigint_to_i64(v.numer()),
                                den: bigint_to_i64(v.denom()),
                            })
                        }
                    })
                    .collect();
                if !terms.is_empty() {
                    brackets.push(BracketEntry { i, j, terms });
                }
            }
        }
        AlgebraFile {
            dim: n,
            basis: h.labels().to_vec(),
            brackets,
        }
    }
}

fn bigint_to_i64(v: &BigInt) -> i64 {
    use num_traits::ToPrimitive;
    v.to_i64().expect("structure constant exceeds i64 in file output")
}

fn mat_to_triples(m: &Mat) -> Vec<[i64; 3]> {
    m.iter()
        .map(|(r, c, v)| {
            [
                (r * m.cols() + c) as i64,
                bigint_to_i64(v.numer()),
                bigint_to_i64(v.denom()),
            ]
        })
        .collect()
}

fn triples_to_mat(dim: usize, triples: &[[i64; 3]]) -> Result<Mat, Error> {
    let mut m = Mat::zeros(dim, dim);
    for &[idx, num, den] in triples {
        if idx < 0 || idx as usize >= dim * dim {
            return Err(Error::Parse(format!("matrix index {idx} out of range")));
        }
        let idx = idx as usize;
        m.set(idx / dim, idx % dim, rational(num, den)?);
    }
    Ok(m)
}

impl BimoduleFile {
    pub fn from_bimodule(algebra_name: &str, b: &Bimodule) -> Self {
        BimoduleFile {
            algebra: algebra_name.to_string(),
            dim: Some(b.dim()),
            left: Some(b.left().iter().map(mat_to_triples).collect()),
            right: Some(b.right().iter().map(mat_to_triples).collect()),
            simple: None,
            parity: None,
        }
    }
}

// ---------------------------------------------------------------------------
// Input resolution
// ---------------------------------------------------------------------------

/// A parsed algebra input: the raw tensor plus labels, so `validate` can
/// report violations instead of refusing to construct.
pub struct AlgebraInput {
    pub name: String,
    pub labels: Vec<String>,
    pub tensor: StructureTensor,
}

/// Loads an algebra from a catalog name or a JSON file path.
pub fn load_algebra_input(arg: &str) -> Result<AlgebraInput, Error> {
    if let Ok(spec) = arg.parse::<CatalogSpec>() {
        let h = spec.build_algebra()?;
        return Ok(AlgebraInput {
            name: spec.to_string(),
            labels: h.labels().to_vec(),
            tensor: h.tensor().clone(),
        });
    }
    if !Path::new(arg).exists() {
        return Err(Error::Parse(format!(
            "'{arg}' is neither a catalog name nor an existing file"
        )));
    }
    let text = std::fs::read_to_string(arg)?;
    let file: AlgebraFile =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{arg}: {e}")))?;
    let (labels, tensor) = file.to_tensor()?;
    Ok(AlgebraInput {
        name: arg.to_string(),
        labels,
        tensor,
    })
}

/// Loads and validates an algebra.
pub fn load_algebra(arg: &str) -> Result<LeibnizAlgebra, CliFailure> {
    let input = load_algebra_input(arg).map_err(CliFailure::from)?;
    LeibnizAlgebra::new(input.labels, input.tensor)
        .map_err(|e| fail(EXIT_INVALID, format!("{}: {e}", input.name)))
}

fn parse_parity(tag: &str) -> Result<Parity, Error> {
    match tag {
        "s" => Ok(Parity::Symmetric),
        "a" => Ok(Parity::Antisymmetric),
        other => Err(Error::Parse(format!("parity must be 's' or 'a', got '{other}'"))),
    }
}

/// Builds the simple bimodule `V(w)` with the given parity over `h`,
/// requiring the Lie quotient of `h` to carry the catalog `sl2` structure
/// constants.
fn build_simple(h: &LeibnizAlgebra, weight: usize, parity: Parity) -> Result<Bimodule, Error> {
    if weight == 0 {
        return Ok(Bimodule::trivial(h.clone()));
    }
    lift(&catalog::sl2_irrep(weight)?, parity, h)
}

/// Resolves a bimodule argument: `k`, `V:m:s`, `V:m:a`, `simple:V:m:p`, or
/// a JSON file path.
pub fn load_bimodule(arg: &str, h: &LeibnizAlgebra) -> Result<Bimodule, Error> {
    if arg == "k" {
        return Ok(Bimodule::trivial(h.clone()));
    }
    let shorthand = arg.strip_prefix("simple:").unwrap_or(arg);
    if let Some(rest) = shorthand.strip_prefix("V:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() == 2 {
            let weight: usize = parts[0]
                .parse()
                .map_err(|_| Error::Parse(format!("bad weight in '{arg}'")))?;
            let parity = parse_parity(parts[1])?;
            return build_simple(h, weight, parity);
        }
        return Err(Error::Parse(format!(
            "bimodule shorthand must look like V:m:s or V:m:a, got '{arg}'"
        )));
    }
    if !Path::new(arg).exists() {
        return Err(Error::Parse(format!(
            "'{arg}' is neither a bimodule shorthand nor an existing file"
        )));
    }
    let text = std::fs::read_to_string(arg)?;
    let file: BimoduleFile =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{arg}: {e}")))?;

    let file_algebra_input = load_algebra_input(&file.algebra)?;
    let file_algebra = LeibnizAlgebra::new(file_algebra_input.labels, file_algebra_input.tensor)?;
    if !file_algebra.same_structure(h) {
        return Err(Error::DimensionMismatch(format!(
            "bimodule file '{arg}' is over a different algebra"
        )));
    }

    if let Some(simple) = &file.simple {
        let weight: usize = simple
            .strip_prefix("V:")
            .and_then(|w| w.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad simple spec '{simple}'")))?;
        let parity = parse_parity(file.parity.as_deref().unwrap_or("a"))?;
        return build_simple(h, weight, parity);
    }

    let dim = file
        .dim
        .ok_or_else(|| Error::Parse("bimodule file needs 'dim' with explicit operators".into()))?;
    let left_raw = file
        .left
        .as_ref()
        .ok_or_else(|| Error::Parse("bimodule file needs 'left' operators".into()))?;
    let zero_ops = vec![Vec::new(); h.dim()];
    let right_raw = file.right.as_deref().unwrap_or(&zero_ops);
    if left_raw.len() != h.dim() || right_raw.len() != h.dim() {
        return Err(Error::Parse(format!(
            "expected {} left and right operator lists",
            h.dim()
        )));
    }
    let left = left_raw
        .iter()
        .map(|t| triples_to_mat(dim, t))
        .collect::<Result<Vec<_>, _>>()?;
    let right = right_raw
        .iter()
        .map(|t| triples_to_mat(dim, t))
        .collect::<Result<Vec<_>, _>>()?;
    Bimodule::new(h.clone(), left, right)
}

/// Resolves a Lie-module argument for `ce`: `k`, `V:m`, or a bimodule file
/// whose right action is zero.
pub fn load_lie_module(arg: &str, g: &LieAlgebra) -> Result<LieModule, Error> {
    if arg == "k" || arg == "V:0" {
        return Ok(LieModule::trivial(g.clone(), 1));
    }
    if let Some(rest) = arg.strip_prefix("V:") {
        let weight: usize = rest
            .parse()
            .map_err(|_| Error::Parse(format!("bad weight in '{arg}'")))?;
        let module = catalog::sl2_irrep(weight)?;
        if !module.algebra().same_structure(g) {
            return Err(Error::InvalidModule(
                "catalog irreducibles require the catalog sl2 structure constants".into(),
            ));
        }
        return Ok(module);
    }
    let bimodule = load_bimodule(arg, g)?;
    LieModule::new(
        g.clone(),
        bimodule.left().to_vec(),
    )
}

/// Canonical JSON with a trailing newline; loading and saving a canonical
/// file is byte-identical.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

pub fn cmd_validate(algebra: &str, out: &mut impl std::io::Write) -> CliResult {
    let input = load_algebra_input(algebra).map_err(CliFailure::from)?;
    let report = validate_leibniz(&input.tensor).map_err(CliFailure::from)?;
    if report.is_valid() {
        writeln!(out, "valid: {} ({} basis triples checked)", input.name, input.tensor.len().pow(3))
            .map_err(|e| fail(EXIT_INVALID, e.to_string()))?;
        Ok(())
    } else {
        let mut msg = format!(
            "invalid: {} violating basis triples (i, j, k):\n",
            report.violations.len()
        );
        for v in report.violations.iter().take(20) {
            let _ = writeln!(msg, "  ({}, {}, {})", v.i, v.j, v.k);
        }
        if report.violations.len() > 20 {
            let _ = writeln!(msg, "  ...");
        }
        Err(fail(EXIT_INVALID, msg.trim_end().to_string()))
    }
}

pub fn cmd_invariants(algebra: &str, out: &mut impl std::io::Write) -> CliResult {
    let h = load_algebra(algebra)?;
    let kernel = leibniz_kernel(&h);
    let qd = lie_quotient(&h).map_err(CliFailure::from)?;
    let (kappa, _) = killing_form(&qd.quotient);
    let killing_rank = crate::exactlin::rank(&kappa);
    let verdict = algebra::is_simple_leibniz(&h).map_err(CliFailure::from)?;
    let verdict_text = match &verdict {
        SimplicityVerdict::SimpleCertified => "simple-certified".to_string(),
        SimplicityVerdict::NotSimple { reason, witness } => match witness {
            Some(w) => format!("not-simple (witness ideal of dimension {}; {reason})", w.dim()),
            None => format!("not-simple ({reason})"),
        },
        SimplicityVerdict::NotCertified { reason } => format!("not-certified ({reason})"),
    };
    let mut w = |line: String| writeln!(out, "{line}").map_err(|e| fail(EXIT_INVALID, e.to_string()));
    w(format!("dim: {}", h.dim()))?;
    w(format!("dim Leib(h): {}", kernel.dim()))?;
    w(format!("dim h_Lie: {}", qd.quotient.dim()))?;
    w(format!("Killing rank: {killing_rank}"))?;
    w(format!("simplicity: {verdict_text}"))?;
    Ok(())
}

fn scalar_string(v: &Scalar) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

fn reps_json(spaces: &[CohomologySpace]) -> serde_json::Value {
    let dims: Vec<usize> = spaces.iter().map(|s| s.dim).collect();
    let reps: Vec<serde_json::Value> = spaces
        .iter()
        .map(|s| {
            let cols: Vec<Vec<String>> = (0..s.representatives.cols())
                .map(|j| {
                    (0..s.representatives.rows())
                        .map(|i| scalar_string(&s.representatives.get(i, j)))
                        .collect()
                })
                .collect();
            serde_json::json!({
                "degree": s.degree,
                "dim": s.dim,
                "cocycles": cols,
            })
        })
        .collect();
    serde_json::json!({ "dims": dims, "representatives": reps })
}

pub fn cmd_hl(
    algebra: &str,
    coeff: &str,
    max_degree: usize,
    reps: bool,
    out: &mut impl std::io::Write,
) -> CliResult {
    let h = load_algebra(algebra)?;
    let m = load_bimodule(coeff, &h).map_err(CliFailure::from)?;
    let spaces = cohomology::hl(&h, &m, max_degree).map_err(CliFailure::from)?;
    emit_spaces(&spaces, reps, out)
}

pub fn cmd_ce(
    algebra: &str,
    coeff: &str,
    max_degree: usize,
    reps: bool,
    out: &mut impl std::io::Write,
) -> CliResult {
    let h = load_algebra(algebra)?;
    let g = LieAlgebra::new(h).map_err(CliFailure::from)?;
    let v = load_lie_module(coeff, &g).map_err(CliFailure::from)?;
    let spaces = cohomology::ce(&g, &v, max_degree).map_err(CliFailure::from)?;
    emit_spaces(&spaces, reps, out)
}

fn emit_spaces(spaces: &[CohomologySpace], reps: bool, out: &mut impl std::io::Write) -> CliResult {
    let io_err = |e: std::io::Error| fail(EXIT_INVALID, e.to_string());
    if reps {
        writeln!(out, "{}", serde_json::to_string_pretty(&reps_json(spaces)).unwrap())
            .map_err(io_err)?;
    } else {
        let dims: Vec<String> = spaces.iter().map(|s| s.dim.to_string()).collect();
        writeln!(out, "{}", dims.join(" ")).map_err(io_err)?;
    }
    Ok(())
}

fn verdict_dim_text(status: &ExtStatus) -> String {
    match status {
        ExtStatus::Exact(d) => d.to_string(),
        ExtStatus::Inconclusive(diag) => {
            let parts: Vec<String> = diag.iter().map(|d| d.to_string()).collect();
            format!("? (E2 diagonal: [{}])", parts.join(", "))
        }
    }
}

pub fn cmd_ext(
    algebra: &str,
    left: &str,
    right: &str,
    max_degree: usize,
    method: &str,
    out: &mut impl std::io::Write,
) -> CliResult {
    let h = load_algebra(algebra)?;
    let m = load_bimodule(left, &h).map_err(CliFailure::from)?;
    let n = load_bimodule(right, &h).map_err(CliFailure::from)?;
    let io_err = |e: std::io::Error| fail(EXIT_INVALID, e.to_string());

    let spectral: Option<Vec<ExtVerdict>> = match method {
        "direct" => None,
        "spectral" | "both" => Some(extcalc::ext_certified(&m, &n, max_degree).map_err(CliFailure::from)?),
        other => return Err(fail(EXIT_PARSE, format!("unknown method '{other}'"))),
    };
    let direct: Option<Vec<usize>> = match method {
        "spectral" => None,
        _ => {
            let d0 = crate::bimodule::hom_bimodule_space(&m, &n).map_err(CliFailure::from)?;
            let d1 = extcalc::ext1_direct(&m, &n).map_err(CliFailure::from)?.dim;
            Some(vec![d0, d1])
        }
    };

    let mut disagreement = false;
    for degree in 0..=max_degree {
        let (dim_text, status_text, method_text) = match (&spectral, &direct) {
            (Some(sv), Some(dv)) => {
                let v = &sv[degree];
                match (&v.status, dv.get(degree)) {
                    (ExtStatus::Exact(s), Some(d)) => {
                        if s != d {
                            disagreement = true;
                            (
                                format!("spectral {s} vs direct {d}"),
                                "disagree".to_string(),
                                "both".to_string(),
                            )
                        } else {
                            (s.to_string(), "exact".to_string(), ExtMethod::BothAgree.to_string())
                        }
                    }
                    (ExtStatus::Exact(s), None) => {
                        (s.to_string(), "exact".to_string(), ExtMethod::Spectral.to_string())
                    }
                    (ExtStatus::Inconclusive(_), Some(d)) => {
                        (d.to_string(), "exact".to_string(), ExtMethod::Direct.to_string())
                    }
                    (ExtStatus::Inconclusive(_), None) => (
                        verdict_dim_text(&v.status),
                        "inconclusive".to_string(),
                        ExtMethod::Spectral.to_string(),
                    ),
                }
            }
            (Some(sv), None) => {
                let v = &sv[degree];
                let status = match v.status {
                    ExtStatus::Exact(_) => "exact",
                    ExtStatus::Inconclusive(_) => "inconclusive",
                };
                (
                    verdict_dim_text(&v.status),
                    status.to_string(),
                    ExtMethod::Spectral.to_string(),
                )
            }
            (None, Some(dv)) => match dv.get(degree) {
                Some(d) => (d.to_string(), "exact".to_string(), ExtMethod::Direct.to_string()),
                None => (
                    "?".to_string(),
                    "inconclusive (direct route covers degrees 0 and 1)".to_string(),
                    ExtMethod::Direct.to_string(),
                ),
            },
            (None, None) => unreachable!("at least one method is always selected"),
        };
        writeln!(
            out,
            "Ext^{degree}({left}, {right}) = {dim_text}  status={status_text}  method={method_text}"
        )
        .map_err(io_err)?;
    }
    if disagreement {
        return Err(fail(
            EXIT_DISAGREE,
            "direct and spectral methods disagree; this indicates a bug",
        ));
    }
    Ok(())
}

fn table_left_order(simples: &[extcalc::SimpleBimoduleSpec]) -> Vec<extcalc::SimpleBimoduleSpec> {
    // Symmetric sources first, then the trivial bimodule, then antisymmetric.
    let mut order: Vec<extcalc::SimpleBimoduleSpec> = simples
        .iter()
        .copied()
        .filter(|s| s.weight > 0 && s.parity == Parity::Symmetric)
        .collect();
    order.extend(simples.iter().copied().filter(|s| s.weight == 0));
    order.extend(
        simples
            .iter()
            .copied()
            .filter(|s| s.weight > 0 && s.parity == Parity::Antisymmetric),
    );
    order
}

pub fn cmd_table(
    algebra: &str,
    max_weight: usize,
    max_degree: usize,
    format: &str,
    out: &mut impl std::io::Write,
) -> CliResult {
    let h = load_algebra(algebra)?;
    let simples = extcalc::simples_up_to_weight(max_weight);
    let table = extcalc::ext_table(&h, &simples, max_degree).map_err(CliFailure::from)?;
    let io_err = |e: std::io::Error| fail(EXIT_INVALID, e.to_string());

    match format {
        "json" => {
            let cells: Vec<serde_json::Value> = table
                .cells
                .iter()
                .map(|c| {
                    let (dim, status) = match &c.status {
                        ExtStatus::Exact(d) => (serde_json::json!(d), "exact"),
                        ExtStatus::Inconclusive(diag) => {
                            (serde_json::json!({ "diagonal": diag }), "inconclusive")
                        }
                    };
                    serde_json::json!({
                        "left": c.left,
                        "right": c.right,
                        "degree": c.degree,
                        "dim": dim,
                        "status": status,
                        "method": c.method.to_string(),
                        "flagged": c.flagged,
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "algebra": algebra,
                "max_weight": max_weight,
                "max_degree": max_degree,
                "warning": table.warning,
                "cells": cells,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap()).map_err(io_err)?;
        }
        "csv" => {
            if let Some(w) = &table.warning {
                writeln!(out, "# warning: {w}").map_err(io_err)?;
            }
            writeln!(out, "left,right,degree,dim,status,method").map_err(io_err)?;
            for c in &table.cells {
                let (dim, status) = match &c.status {
                    ExtStatus::Exact(d) => (d.to_string(), "exact"),
                    ExtStatus::Inconclusive(_) => (String::new(), "inconclusive"),
                };
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    c.left, c.right, c.degree, dim, status, c.method
                )
                .map_err(io_err)?;
            }
        }
        "latex" => {
            if let Some(w) = &table.warning {
                writeln!(out, "% warning: {w}").map_err(io_err)?;
            }
            let rights: Vec<String> = simples.iter().map(|s| s.to_string()).collect();
            let lefts = table_left_order(&simples);
            for degree in 0..=max_degree {
                writeln!(out, "% Ext^{degree}").map_err(io_err)?;
                writeln!(out, "\\begin{{tabular}}{{l|{}}}", "c".repeat(rights.len()))
                    .map_err(io_err)?;
                writeln!(out, " & {} \\\\ \\hline", rights.join(" & ")).map_err(io_err)?;
                for l in &lefts {
                    let mut row = vec![l.to_string()];
                    for r in &rights {
                        let cell = table
                            .cells
                            .iter()
                            .find(|c| c.left == l.to_string() && &c.right == r && c.degree == degree)
                            .expect("complete table");
                        row.push(match &cell.status {
                            ExtStatus::Exact(d) => d.to_string(),
                            ExtStatus::Inconclusive(_) => "?".to_string(),
                        });
                    }
                    writeln!(out, "{} \\\\", row.join(" & ")).map_err(io_err)?;
                }
                writeln!(out, "\\end{{tabular}}").map_err(io_err)?;
            }
        }
        other => return Err(fail(EXIT_PARSE, format!("unknown format '{other}'"))),
    }

    if table.cells.iter().any(|c| c.flagged) {
        return Err(fail(
            EXIT_DISAGREE,
            "table contains flagged cells where the two methods disagree",
        ));
    }
    Ok(())
}
