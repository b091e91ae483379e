//! Ext groups between bimodules, by two routes: a direct extension-cocycle
//! linear system in degree one, and the E2 pages of the two change-of-rings
//! spectral sequences, certified sound by endpoint vanishing of every
//! differential touching the relevant diagonal.

use std::fmt;

use num_traits::Zero;

use crate::algebra::{is_simple_leibniz, lie_quotient, LeibnizAlgebra, QuotientData};
use crate::bimodule::{
    algebra_as_module, hom_bimodule_space, hom_module, lift, restrict_action, subquotient_action,
    Bimodule, LieModule, Parity, ParityKind,
};
use crate::catalog;
use crate::cohomology::{self, hl_suite};
use crate::error::Error;
use crate::exactlin::{self, Mat, Scalar};

/// The map `f : M -> Hom(h, HL^0(h, M))`, `f(m)(x) = [x,m]_L + [m,x]_R`,
/// with its kernel and cokernel as `h_Lie`-modules.
#[derive(Clone, Debug)]
pub struct FMapData {
    pub f: Mat,
    pub kernel: LieModule,
    pub cokernel: LieModule,
}

impl FMapData {
    pub fn kernel_dim(&self) -> usize {
        self.kernel.dim()
    }

    pub fn cokernel_dim(&self) -> usize {
        self.cokernel.dim()
    }
}

/// For antisymmetric `N`: the map `n -> [., n]_L` into `Hom(h, N)` and its
/// cokernel `N-hat`, which controls `Ext^1` from symmetric to antisymmetric
/// simples.
#[derive(Clone, Debug)]
pub struct NHatData {
    pub hmap: Mat,
    pub nhat: LieModule,
}

pub fn f_map(m: &Bimodule) -> Result<FMapData, Error> {
    let h = m.algebra().clone();
    let qd = lie_quotient(&h)?;
    let suite = hl_suite(&h, m, 0)?;
    let hl0 = &suite.spaces[0];
    let w0 = &suite.modules[0];
    let h_left = algebra_as_module(&h, &qd)?;
    let hom = hom_module(&h_left, w0)?;
    let n = h.dim();

    // F[w_row * n + i, mcol] = HL^0-coordinates of (L_i + R_i) e_mcol.
    let mut f = Mat::zeros(hl0.dim * n, m.dim());
    for i in 0..n {
        let sum_op = m.left()[i].add(&m.right()[i]);
        let coords = exactlin::solve(&hl0.representatives, &sum_op)?.ok_or_else(|| {
            Error::NotInvariant("the image of f is not right-invariant".into())
        })?;
        for (w_row, mcol, v) in coords.iter() {
            f.set(w_row * n + i, mcol, v.clone());
        }
    }

    let m_mod = m.left_module(&qd)?;
    for u in 0..qd.quotient.dim() {
        if f.mul(&m_mod.rho()[u]) != hom.rho()[u].mul(&f) {
            return Err(Error::EquivarianceFailure(format!(
                "f is not equivariant for quotient basis element {u}"
            )));
        }
    }

    let ker = exactlin::kernel_basis(&f);
    let kernel = LieModule::new(qd.quotient.clone(), restrict_action(m_mod.rho(), &ker)?)?;

    let img = exactlin::image_basis(&f);
    let (_, coker_rho) = subquotient_action(hom.rho(), &Mat::identity(hom.dim()), &img)?;
    let cokernel = LieModule::new(qd.quotient.clone(), coker_rho)?;

    Ok(FMapData { f, kernel, cokernel })
}

/// `N-hat = Coker(N -> Hom(h, N))` for an antisymmetric bimodule. For such
/// coefficients the defining map coincides with `f`.
pub fn nhat(n: &Bimodule) -> Result<NHatData, Error> {
    match n.parity_kind() {
        ParityKind::Antisymmetric | ParityKind::Trivial => {}
        other => {
            return Err(Error::Unsupported(format!(
                "nhat requires an antisymmetric bimodule, got {other:?}"
            )))
        }
    }
    let fd = f_map(n)?;
    Ok(NHatData {
        hmap: fd.f,
        nhat: fd.cokernel,
    })
}

/// One realized group `Ext^{i+1}(U(h_Lie)^s, M)` with its module structure.
#[derive(Clone, Debug)]
pub struct Prop23Group {
    pub dim: usize,
    pub module: LieModule,
}

/// Realizes `Ext^{i+1}(U(h_Lie)^s, M)` as `Ker f` (i = -1), `Coker f`
/// (i = 0) or `Hom(h, HL^i(h, M))` (i > 0).
pub fn prop23_groups(m: &Bimodule, i: i64) -> Result<Prop23Group, Error> {
    let h = m.algebra().clone();
    match i {
        -1 => {
            let fd = f_map(m)?;
            Ok(Prop23Group {
                dim: fd.kernel.dim(),
                module: fd.kernel,
            })
        }
        0 => {
            let fd = f_map(m)?;
            Ok(Prop23Group {
                dim: fd.cokernel.dim(),
                module: fd.cokernel,
            })
        }
        i if i > 0 => {
            let q = i as usize;
            let qd = lie_quotient(&h)?;
            let suite = hl_suite(&h, m, q)?;
            let h_left = algebra_as_module(&h, &qd)?;
            let module = hom_module(&h_left, &suite.modules[q])?;
            Ok(Prop23Group {
                dim: module.dim(),
                module,
            })
        }
        _ => Err(Error::Unsupported(format!("no realization at index {i}"))),
    }
}

// ---------------------------------------------------------------------------
// Direct degree-one route
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct Ext1Direct {
    pub dim: usize,
    /// Basis of the full cocycle space (extensions before quotienting by
    /// coboundaries), flattened as (lambda_0..lambda_{n-1}, rho_0..rho_{n-1}).
    pub cocycles: Mat,
}

struct BlockSystem {
    triplets: Vec<(usize, usize, Scalar)>,
    block: usize,
}

impl BlockSystem {
    // unknown X_blk is nd x md flattened row-major; equations are nd x md
    // matrix identities stacked per (family, i, j).
    fn new(block: usize) -> Self {
        BlockSystem {
            triplets: Vec::new(),
            block,
        }
    }

    /// `sign * A * X_blk` contribution: coefficient of `X[a, c]` is `A[r, a]`.
    fn left_mul(&mut self, row_base: usize, blk: usize, a: &Mat, sign: i64, md: usize) {
        for (r, k, v) in a.iter() {
            for c in 0..md {
                self.triplets.push((
                    row_base + r * md + c,
                    blk * self.block + k * md + c,
                    v * exactlin::sc(sign),
                ));
            }
        }
    }

    /// `sign * X_blk * B` contribution: coefficient of `X[r, b]` is `B[b, c]`.
    fn right_mul(&mut self, row_base: usize, blk: usize, b: &Mat, sign: i64, nd: usize, md: usize) {
        for (k, c, v) in b.iter() {
            for r in 0..nd {
                self.triplets.push((
                    row_base + r * md + c,
                    blk * self.block + r * md + k,
                    v * exactlin::sc(sign),
                ));
            }
        }
    }

    /// `coeff * X_blk` contribution.
    fn scaled(&mut self, row_base: usize, blk: usize, coeff: &Scalar, nd: usize, md: usize) {
        if coeff.is_zero() {
            return;
        }
        for r in 0..nd {
            for c in 0..md {
                self.triplets.push((
                    row_base + r * md + c,
                    blk * self.block + r * md + c,
                    coeff.clone(),
                ));
            }
        }
    }
}

/// `Ext^1(M, N)` by linearizing the bimodule relations on block-triangular
/// extensions `E = N (+) M`: the unknowns are the connecting blocks
/// `lambda_x, rho_x : M -> N` of the left and right actions, and the
/// coboundaries are `lambda = L^N phi - phi L^M`, `rho = R^N phi - phi R^M`.
pub fn ext1_direct(m: &Bimodule, n: &Bimodule) -> Result<Ext1Direct, Error> {
    if !m.algebra().same_structure(n.algebra()) {
        return Err(Error::DimensionMismatch(
            "ext1_direct: bimodules over different algebras".into(),
        ));
    }
    let h = m.algebra();
    let nh = h.dim();
    let (md, nd) = (m.dim(), n.dim());
    let s = nd * md;
    let cols = 2 * nh * s;
    let lam = |k: usize| k;
    let rho = |k: usize| nh + k;

    let mut sys = BlockSystem::new(s);
    let mut row_base = 0;
    for i in 0..nh {
        for j in 0..nh {
            // LLM: L^N_i lam_j + lam_i L^M_j - L^N_j lam_i - lam_j L^M_i
            //      - sum_k c_{ij}^k lam_k = 0
            sys.left_mul(row_base, lam(j), &n.left()[i], 1, md);
            sys.right_mul(row_base, lam(i), &m.left()[j], 1, nd, md);
            sys.left_mul(row_base, lam(i), &n.left()[j], -1, md);
            sys.right_mul(row_base, lam(j), &m.left()[i], -1, nd, md);
            for k in 0..nh {
                let c = -h.structure_constant(i, j, k);
                sys.scaled(row_base, lam(k), &c, nd, md);
            }
            row_base += s;

            // LML: L^N_i rho_j + lam_i R^M_j - R^N_j lam_i - rho_j L^M_i
            //      - sum_k c_{ij}^k rho_k = 0
            sys.left_mul(row_base, rho(j), &n.left()[i], 1, md);
            sys.right_mul(row_base, lam(i), &m.right()[j], 1, nd, md);
            sys.left_mul(row_base, lam(i), &n.right()[j], -1, md);
            sys.right_mul(row_base, rho(j), &m.left()[i], -1, nd, md);
            for k in 0..nh {
                let c = -h.structure_constant(i, j, k);
                sys.scaled(row_base, rho(k), &c, nd, md);
            }
            row_base += s;

            // MLL: sum_k c_{ij}^k rho_k - R^N_j rho_i - rho_j R^M_i
            //      - L^N_i rho_j - lam_i R^M_j = 0
            for k in 0..nh {
                let c = h.structure_constant(i, j, k).clone();
                sys.scaled(row_base, rho(k), &c, nd, md);
            }
            sys.left_mul(row_base, rho(i), &n.right()[j], -1, md);
            sys.right_mul(row_base, rho(j), &m.right()[i], -1, nd, md);
            sys.left_mul(row_base, rho(j), &n.left()[i], -1, md);
            sys.right_mul(row_base, lam(i), &m.right()[j], -1, nd, md);
            row_base += s;
        }
    }
    let system = Mat::from_triplets(row_base, cols, sys.triplets);
    let solutions = exactlin::kernel_basis(&system);

    // Coboundary map phi -> (lambda, rho).
    let mut cb = BlockSystem::new(s);
    for i in 0..nh {
        cb.left_mul(lam(i) * s, 0, &n.left()[i], 1, md);
        cb.right_mul(lam(i) * s, 0, &m.left()[i], -1, nd, md);
        cb.left_mul(rho(i) * s, 0, &n.right()[i], 1, md);
        cb.right_mul(rho(i) * s, 0, &m.right()[i], -1, nd, md);
    }
    let coboundaries = Mat::from_triplets(cols, s, cb.triplets);

    let dim = solutions.dim() - exactlin::rank(&coboundaries);
    Ok(Ext1Direct {
        dim,
        cocycles: solutions.basis,
    })
}

// ---------------------------------------------------------------------------
// Spectral route
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectralVariant {
    S1,
    S2,
}

impl fmt::Display for SpectralVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectralVariant::S1 => write!(f, "S1"),
            SpectralVariant::S2 => write!(f, "S2"),
        }
    }
}

/// The E2 page `E2^{p,q} = H^p(h_Lie, Hom(left, W_q))` for rows
/// `q = 0..=dtot`, columns `p = 0..=max_p`. Vanishing entries are stored as
/// zeros, never omitted.
#[derive(Clone, Debug)]
pub struct E2Page {
    pub variant: SpectralVariant,
    /// `grid[q][p]`.
    pub grid: Vec<Vec<usize>>,
    pub row_descriptions: Vec<String>,
    pub max_p: usize,
}

impl E2Page {
    /// Entry with zero extension outside the stored rectangle; columns past
    /// the Lie-algebra dimension vanish because the exterior powers do.
    pub fn entry(&self, p: usize, q: usize) -> usize {
        if q >= self.grid.len() {
            return 0;
        }
        *self.grid[q].get(p).unwrap_or(&0)
    }
}

/// Coefficient row modules of the first spectral sequence:
/// `W_q = HL^q(h, X)` with its induced action.
pub fn s1_row_modules(
    h: &LeibnizAlgebra,
    x: &Bimodule,
    dtot: usize,
) -> Result<Vec<LieModule>, Error> {
    Ok(hl_suite(h, x, dtot)?.modules)
}

/// Coefficient row modules of the second spectral sequence:
/// `W_0 = Ker f`, `W_1 = Coker f`, `W_q = Hom(h, HL^{q-1}(h, X))` for
/// `q >= 2`.
pub fn s2_row_modules(
    h: &LeibnizAlgebra,
    x: &Bimodule,
    dtot: usize,
) -> Result<Vec<LieModule>, Error> {
    let qd = lie_quotient(h)?;
    let fd = f_map(x)?;
    let mut rows = vec![fd.kernel, fd.cokernel];
    rows.truncate(dtot + 1);
    if dtot >= 2 {
        let suite = hl_suite(h, x, dtot - 1)?;
        let h_left = algebra_as_module(h, &qd)?;
        for q in 2..=dtot {
            rows.push(hom_module(&h_left, &suite.modules[q - 1])?);
        }
    }
    Ok(rows)
}

/// Assembles the E2 grid from precomputed rows: each row is the
/// Chevalley-Eilenberg cohomology of `Hom(left, W_q)` over the quotient.
pub fn e2_from_rows(
    qd: &QuotientData,
    left: &LieModule,
    rows: &[LieModule],
    variant: SpectralVariant,
    dtot: usize,
) -> Result<E2Page, Error> {
    let dim_g = qd.quotient.dim();
    let max_p = dim_g.max(dtot + 1);
    let mut grid = Vec::with_capacity(rows.len());
    let mut row_descriptions = Vec::with_capacity(rows.len());
    for (q, w) in rows.iter().enumerate() {
        let mut row = vec![0usize; max_p + 1];
        if w.dim() > 0 && left.dim() > 0 {
            let coeff = hom_module(left, w)?;
            let spaces = cohomology::ce(&qd.quotient, &coeff, dim_g)?;
            for (p, space) in spaces.iter().enumerate() {
                row[p] = space.dim;
            }
        }
        row_descriptions.push(format!(
            "q={q}: coefficient module of dimension {} (row space dim {})",
            w.dim(),
            left.dim() * w.dim()
        ));
        grid.push(row);
    }
    while grid.len() <= dtot {
        row_descriptions.push(format!("q={}: zero row", grid.len()));
        grid.push(vec![0usize; max_p + 1]);
    }
    Ok(E2Page {
        variant,
        grid,
        row_descriptions,
        max_p,
    })
}

/// Builds the page appropriate to the parity of `left` over the common
/// algebra: antisymmetric or trivial lifts route through S1, symmetric ones
/// through S2. Mixed-parity left inputs are unsupported here.
pub fn e2_page(left: &Bimodule, right: &Bimodule, dtot: usize) -> Result<E2Page, Error> {
    if !left.algebra().same_structure(right.algebra()) {
        return Err(Error::DimensionMismatch(
            "e2_page: bimodules over different algebras".into(),
        ));
    }
    let h = left.algebra().clone();
    let qd = lie_quotient(&h)?;
    let y = left.left_module(&qd)?;
    match left.parity_kind() {
        ParityKind::Trivial | ParityKind::Antisymmetric => {
            let rows = s1_row_modules(&h, right, dtot)?;
            e2_from_rows(&qd, &y, &rows, SpectralVariant::S1, dtot)
        }
        ParityKind::Symmetric => {
            let rows = s2_row_modules(&h, right, dtot)?;
            e2_from_rows(&qd, &y, &rows, SpectralVariant::S2, dtot)
        }
        ParityKind::Mixed => Err(Error::Unsupported(
            "the left argument is neither symmetric nor antisymmetric".into(),
        )),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtStatus {
    Exact(usize),
    /// Certification failed; carries the E2 diagonal dimensions.
    Inconclusive(Vec<usize>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtMethod {
    Direct,
    Spectral,
    BothAgree,
}

impl fmt::Display for ExtMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtMethod::Direct => write!(f, "direct"),
            ExtMethod::Spectral => write!(f, "spectral"),
            ExtMethod::BothAgree => write!(f, "both-agree"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExtVerdict {
    pub degree: usize,
    pub status: ExtStatus,
    pub method: ExtMethod,
}

/// Judges the total-degree diagonal of an E2 page: the sum of the diagonal
/// entries is exact when every differential `d_r` (r >= 2) into or out of a
/// nonzero diagonal entry has a vanishing endpoint, judged at E2. Since
/// each later page is a subquotient of the previous one, vanishing at E2
/// forces vanishing at every `E_r`.
pub fn certify_degree(page: &E2Page, degree: usize) -> ExtStatus {
    let mut total = 0;
    let mut diagonal = Vec::with_capacity(degree + 1);
    let mut certified = true;
    for p in 0..=degree {
        let q = degree - p;
        let dim = page.entry(p, q);
        diagonal.push(dim);
        total += dim;
        if dim == 0 {
            continue;
        }
        for r in 2..=(q + 1) {
            if page.entry(p + r, q + 1 - r) > 0 {
                certified = false;
            }
        }
        for r in 2..=p {
            if page.entry(p - r, q + r - 1) > 0 {
                certified = false;
            }
        }
    }
    if certified {
        ExtStatus::Exact(total)
    } else {
        ExtStatus::Inconclusive(diagonal)
    }
}

/// Spectral-route Ext verdicts for degrees `0..=nmax`. The left bimodule
/// must be a pure-parity lift; mixed bimodules come back inconclusive at
/// every degree.
pub fn ext_certified(
    left: &Bimodule,
    right: &Bimodule,
    nmax: usize,
) -> Result<Vec<ExtVerdict>, Error> {
    if nmax > 3 {
        return Err(Error::Guard(format!(
            "spectral certification is limited to total degree 3, requested {nmax}"
        )));
    }
    if left.parity_kind() == ParityKind::Mixed {
        return Ok((0..=nmax)
            .map(|degree| ExtVerdict {
                degree,
                status: ExtStatus::Inconclusive(Vec::new()),
                method: ExtMethod::Spectral,
            })
            .collect());
    }
    let page = e2_page(left, right, nmax)?;
    Ok((0..=nmax)
        .map(|degree| ExtVerdict {
            degree,
            status: certify_degree(&page, degree),
            method: ExtMethod::Spectral,
        })
        .collect())
}

// ---------------------------------------------------------------------------
// Tables over the simple bimodules
// ---------------------------------------------------------------------------

/// A simple bimodule named by weight and parity; weight zero is the trivial
/// bimodule `k`, listed once.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimpleBimoduleSpec {
    pub weight: usize,
    pub parity: Parity,
}

impl fmt::Display for SimpleBimoduleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.weight == 0 {
            write!(f, "k")
        } else {
            let tag = match self.parity {
                Parity::Symmetric => "s",
                Parity::Antisymmetric => "a",
            };
            write!(f, "V({})^{tag}", self.weight)
        }
    }
}

impl SimpleBimoduleSpec {
    pub fn build(&self, h: &LeibnizAlgebra) -> Result<Bimodule, Error> {
        if self.weight == 0 {
            return Ok(Bimodule::trivial(h.clone()));
        }
        let module = catalog::sl2_irrep(self.weight)?;
        lift(&module, self.parity, h)
    }
}

/// `k, V(1)^s, V(1)^a, ..., V(w)^s, V(w)^a` in the fixed table order.
pub fn simples_up_to_weight(w: usize) -> Vec<SimpleBimoduleSpec> {
    let mut out = vec![SimpleBimoduleSpec {
        weight: 0,
        parity: Parity::Symmetric,
    }];
    for weight in 1..=w {
        out.push(SimpleBimoduleSpec {
            weight,
            parity: Parity::Symmetric,
        });
        out.push(SimpleBimoduleSpec {
            weight,
            parity: Parity::Antisymmetric,
        });
    }
    out
}

#[derive(Clone, Debug)]
pub struct ExtCell {
    pub left: String,
    pub right: String,
    pub degree: usize,
    pub status: ExtStatus,
    pub method: ExtMethod,
    /// Set when the direct and spectral routes disagree; a bug sentinel.
    pub flagged: bool,
}

#[derive(Clone, Debug)]
pub struct ExtTable {
    /// Present when the algebra is not certified simple, since the spectral
    /// verdict semantics assume a simple Leibniz algebra.
    pub warning: Option<String>,
    pub cells: Vec<ExtCell>,
}

/// The full Ext grid over ordered pairs of simple bimodules. Degrees zero
/// and one are cross-checked against the direct route; any disagreement is
/// flagged rather than silently resolved.
pub fn ext_table(
    h: &LeibnizAlgebra,
    simples: &[SimpleBimoduleSpec],
    nmax: usize,
) -> Result<ExtTable, Error> {
    let qd = lie_quotient(h)?;
    let warning = match is_simple_leibniz(h)? {
        v if v.is_certified_simple() => None,
        _ => Some(
            "algebra is not certified simple; spectral verdicts assume a simple Leibniz algebra"
                .to_string(),
        ),
    };

    let bimodules: Vec<Bimodule> = simples
        .iter()
        .map(|s| s.build(h))
        .collect::<Result<_, _>>()?;
    let left_modules: Vec<LieModule> = bimodules
        .iter()
        .map(|b| b.left_module(&qd))
        .collect::<Result<_, _>>()?;

    // Row modules depend only on the right bimodule; compute once each.
    let mut s1_rows = Vec::with_capacity(bimodules.len());
    let mut s2_rows = Vec::with_capacity(bimodules.len());
    for b in &bimodules {
        s1_rows.push(s1_row_modules(h, b, nmax)?);
        s2_rows.push(s2_row_modules(h, b, nmax)?);
    }

    let mut cells = Vec::new();
    for (li, ls) in simples.iter().enumerate() {
        for (ri, rs) in simples.iter().enumerate() {
            let left = &bimodules[li];
            let right = &bimodules[ri];
            let (variant, rows) = match left.parity_kind() {
                ParityKind::Trivial | ParityKind::Antisymmetric => {
                    (SpectralVariant::S1, &s1_rows[ri])
                }
                ParityKind::Symmetric => (SpectralVariant::S2, &s2_rows[ri]),
                ParityKind::Mixed => {
                    return Err(Error::Unsupported(
                        "table entries must be pure-parity lifts".into(),
                    ))
                }
            };
            let page = e2_from_rows(&qd, &left_modules[li], rows, variant, nmax)?;
            let direct0 = hom_bimodule_space(left, right)?;
            let direct1 = ext1_direct(left, right)?.dim;

            for degree in 0..=nmax {
                let spectral = certify_degree(&page, degree);
                let direct = match degree {
                    0 => Some(direct0),
                    1 => Some(direct1),
                    _ => None,
                };
                let (status, method, flagged) = match (&spectral, direct) {
                    (ExtStatus::Exact(s), Some(d)) => {
                        (spectral.clone(), ExtMethod::BothAgree, *s != d)
                    }
                    (ExtStatus::Exact(_), None) => (spectral.clone(), ExtMethod::Spectral, false),
                    (ExtStatus::Inconclusive(_), Some(d)) => {
                        (ExtStatus::Exact(d), ExtMethod::Direct, false)
                    }
                    (ExtStatus::Inconclusive(_), None) => {
                        (spectral.clone(), ExtMethod::Spectral, false)
                    }
                };
                cells.push(ExtCell {
                    left: ls.to_string(),
                    right: rs.to_string(),
                    degree,
                    status,
                    method,
                    flagged,
                });
            }
        }
    }
    Ok(ExtTable { warning, cells })
}
