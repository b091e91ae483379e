//! Leibniz-algebra core: structure constants, identity validation, the
//! Leibniz kernel, the canonical Lie quotient, Killing form, ideal closure
//! and desk-scale simplicity certification.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::bimodule::LieModule;
use crate::error::Error;
use crate::exactlin::{self, Mat, Scalar, Subspace};

/// `c[i][j][k]` with `[e_i, e_j] = sum_k c[i][j][k] e_k`.
pub type StructureTensor = Vec<Vec<Vec<Scalar>>>;

/// A left Leibniz algebra given by its structure-constant tensor.
///
/// The constructor rejects tensors violating the left Leibniz identity
/// `[x,[y,z]] = [[x,y],z] + [y,[x,z]]` on any basis triple.
#[derive(Clone, Debug)]
pub struct LeibnizAlgebra {
    dim: usize,
    labels: Vec<String>,
    c: StructureTensor,
}

/// One failed basis triple `(i, j, k)` of the Leibniz identity, meaning the
/// identity fails on `(e_i, e_j, e_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn tensor_dim(c: &StructureTensor) -> Result<usize, Error> {
    let n = c.len();
    for plane in c {
        if plane.len() != n {
            return Err(Error::InvalidStructure("tensor is not cubic".into()));
        }
        for line in plane {
            if line.len() != n {
                return Err(Error::InvalidStructure("tensor is not cubic".into()));
            }
        }
    }
    Ok(n)
}

/// Checks the left Leibniz identity on every basis triple and reports every
/// violating triple. An empty report means the tensor defines a Leibniz
/// algebra.
pub fn validate_leibniz(c: &StructureTensor) -> Result<ValidationReport, Error> {
    let n = tensor_dim(c)?;
    let bracket = |i: usize, j: usize| -> Vec<Scalar> { c[i][j].clone() };
    let bracket_vec = |i: usize, v: &[Scalar]| -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); n];
        for (j, coeff) in v.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for (k, val) in c[i][j].iter().enumerate() {
                if !val.is_zero() {
                    out[k] += coeff * val;
                }
            }
        }
        out
    };
    let vec_bracket = |v: &[Scalar], j: usize| -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); n];
        for (i, coeff) in v.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for (k, val) in c[i][j].iter().enumerate() {
                if !val.is_zero() {
                    out[k] += coeff * val;
                }
            }
        }
        out
    };

    let mut report = ValidationReport::default();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                // [e_i, [e_j, e_k]] - [[e_i, e_j], e_k] - [e_j, [e_i, e_k]]
                let lhs = bracket_vec(i, &bracket(j, k));
                let t1 = vec_bracket(&bracket(i, j), k);
                let t2 = bracket_vec(j, &bracket(i, k));
                let ok = lhs
                    .iter()
                    .zip(t1.iter().zip(t2.iter()))
                    .all(|(l, (a, b))| l == &(a + b));
                if !ok {
                    report.violations.push(Violation { i, j, k });
                }
            }
        }
    }
    Ok(report)
}

impl LeibnizAlgebra {
    pub fn new(labels: Vec<String>, c: StructureTensor) -> Result<Self, Error> {
        let dim = tensor_dim(&c)?;
        if labels.len() != dim {
            return Err(Error::InvalidStructure(format!(
                "{} labels for dimension {}",
                labels.len(),
                dim
            )));
        }
        let report = validate_leibniz(&c)?;
        if !report.is_valid() {
            let v = &report.violations[0];
            return Err(Error::InvalidStructure(format!(
                "Leibniz identity fails on {} basis triples, first at ({}, {}, {})",
                report.violations.len(),
                v.i,
                v.j,
                v.k
            )));
        }
        Ok(LeibnizAlgebra { dim, labels, c })
    }

    pub fn abelian(dim: usize) -> Self {
        let c = vec![vec![vec![Scalar::zero(); dim]; dim]; dim];
        LeibnizAlgebra {
            dim,
            labels: (0..dim).map(|i| format!("e{i}")).collect(),
            c,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn tensor(&self) -> &StructureTensor {
        &self.c
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.c[i][j][k]
    }

    /// `[e_i, e_j]` as a column vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Mat {
        Mat::from_triplets(
            self.dim,
            1,
            self.c[i][j]
                .iter()
                .enumerate()
                .map(|(k, v)| (k, 0, v.clone())),
        )
    }

    /// Bracket of two coordinate column vectors.
    pub fn bracket(&self, u: &Mat, v: &Mat) -> Mat {
        assert_eq!(u.rows(), self.dim);
        assert_eq!(v.rows(), self.dim);
        let mut out = Mat::zeros(self.dim, 1);
        for (i, _, a) in u.iter() {
            for (j, _, b) in v.iter() {
                for (k, val) in self.c[i][j].iter().enumerate() {
                    if !val.is_zero() {
                        out.add_to(k, 0, a * b * val);
                    }
                }
            }
        }
        out
    }

    /// Matrix of `[e_i, -]`.
    pub fn left_mult_op(&self, i: usize) -> Mat {
        Mat::from_triplets(
            self.dim,
            self.dim,
            (0..self.dim).flat_map(|j| {
                self.c[i][j]
                    .iter()
                    .enumerate()
                    .map(move |(k, v)| (k, j, v.clone()))
                    .collect::<Vec<_>>()
            }),
        )
    }

    /// Matrix of `[-, e_i]`.
    pub fn right_mult_op(&self, i: usize) -> Mat {
        Mat::from_triplets(
            self.dim,
            self.dim,
            (0..self.dim).flat_map(|j| {
                self.c[j][i]
                    .iter()
                    .enumerate()
                    .map(move |(k, v)| (k, j, v.clone()))
                    .collect::<Vec<_>>()
            }),
        )
    }

    /// Matrix of `[v, -]` for a coordinate vector `v`.
    pub fn left_op_of(&self, v: &Mat) -> Mat {
        let mut out = Mat::zeros(self.dim, self.dim);
        for (i, _, a) in v.iter() {
            out = out.add(&self.left_mult_op(i).scale(a));
        }
        out
    }

    /// The derived subspace `[h, h]`.
    pub fn derived_subspace(&self) -> Subspace {
        let mut span = Mat::zeros(self.dim, self.dim * self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, v) in self.c[i][j].iter().enumerate() {
                    if !v.is_zero() {
                        span.set(k, i * self.dim + j, v.clone());
                    }
                }
            }
        }
        Subspace::from_span(&span)
    }

    pub fn is_antisymmetric(&self) -> bool {
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    if self.c[i][j][k] != -&self.c[j][i][k] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Structural equality expected by module constructors; ignores labels.
    pub fn same_structure(&self, other: &LeibnizAlgebra) -> bool {
        self.dim == other.dim && self.c == other.c
    }
}

/// A Lie algebra: a Leibniz algebra whose bracket is antisymmetric.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    alg: LeibnizAlgebra,
}

impl LieAlgebra {
    pub fn new(alg: LeibnizAlgebra) -> Result<Self, Error> {
        if !alg.is_antisymmetric() {
            return Err(Error::NotLie("bracket is not antisymmetric".into()));
        }
        Ok(LieAlgebra { alg })
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            alg: LeibnizAlgebra::abelian(dim),
        }
    }
}

impl std::ops::Deref for LieAlgebra {
    type Target = LeibnizAlgebra;

    fn deref(&self) -> &LeibnizAlgebra {
        &self.alg
    }
}

/// The Leibniz kernel: the two-sided ideal generated by all squares `[x,x]`.
/// Over a field of characteristic zero the squares span the same space as
/// the symmetrized brackets `[x,y] + [y,x]`, so the seed is the span of the
/// latter over basis pairs.
pub fn leibniz_kernel(h: &LeibnizAlgebra) -> Subspace {
    let n = h.dim();
    let mut span = Mat::zeros(n, n * n);
    for i in 0..n {
        for j in 0..n {
            let v = h.bracket_basis(i, j).add(&h.bracket_basis(j, i));
            for (k, _, val) in v.iter() {
                span.set(k, i * n + j, val.clone());
            }
        }
    }
    ideal_closure(h, &Subspace::from_span(&span))
}

/// Smallest subspace containing `seed` that is closed under left and right
/// multiplication by the algebra.
pub fn ideal_closure(h: &LeibnizAlgebra, seed: &Subspace) -> Subspace {
    assert_eq!(seed.ambient_dim, h.dim());
    let mut current = seed.clone();
    loop {
        let mut blocks: Vec<Mat> = vec![current.basis.clone()];
        for i in 0..h.dim() {
            blocks.push(h.left_mult_op(i).mul(&current.basis));
            blocks.push(h.right_mult_op(i).mul(&current.basis));
        }
        let refs: Vec<&Mat> = blocks.iter().collect();
        let next = Subspace::from_span(&Mat::hstack(&refs));
        if next.dim() == current.dim() {
            return next;
        }
        current = next;
    }
}

/// The canonical Lie quotient `h_Lie = h / Leib(h)` with a fixed splitting.
#[derive(Clone, Debug)]
pub struct QuotientData {
    pub kernel: Subspace,
    pub quotient: LieAlgebra,
    /// `h -> h_Lie` coordinates, `(dim - k) x dim`.
    pub projection: Mat,
    /// Linear section `h_Lie -> h`, columns are preferred basis lifts.
    pub section: Mat,
}

/// Computes the quotient data. The section is chosen by completing the
/// kernel basis with standard basis vectors, so all downstream computations
/// are reproducible.
pub fn lie_quotient(h: &LeibnizAlgebra) -> Result<QuotientData, Error> {
    let n = h.dim();
    let kernel = leibniz_kernel(h);
    let k = kernel.dim();
    let q = n - k;

    let full = Mat::hstack(&[&kernel.basis, &Mat::identity(n)]);
    let pivots = exactlin::pivot_columns(&full);
    let completion: Vec<usize> = pivots.iter().filter(|&&c| c >= k).map(|&c| c - k).collect();
    debug_assert_eq!(completion.len(), q);
    let section = Mat::identity(n).select_cols(&completion);

    let change = Mat::hstack(&[&kernel.basis, &section]);
    let inv = exactlin::solve(&change, &Mat::identity(n))?
        .ok_or_else(|| Error::InvalidStructure("kernel basis completion failed".into()))?;
    let mut projection = Mat::zeros(q, n);
    for (r, c, v) in inv.iter() {
        if r >= k {
            projection.set(r - k, c, v.clone());
        }
    }
    debug_assert_eq!(projection.mul(&section), Mat::identity(q));

    let mut c_bar = vec![vec![vec![Scalar::zero(); q]; q]; q];
    for u in 0..q {
        for v in 0..q {
            let b = h.bracket(&section.col(u), &section.col(v));
            let proj = projection.mul(&b);
            for (w, _, val) in proj.iter() {
                c_bar[u][v][w] = val.clone();
            }
        }
    }
    let labels = completion
        .iter()
        .map(|&j| h.labels()[j].clone())
        .collect::<Vec<_>>();
    let quotient_leibniz = LeibnizAlgebra::new(labels, c_bar).map_err(|e| {
        Error::InvalidStructure(format!("quotient bracket is not well defined: {e}"))
    })?;
    let quotient = LieAlgebra::new(quotient_leibniz).map_err(|_| {
        Error::InvalidStructure(
            "quotient bracket fails antisymmetry; kernel computation is inconsistent".into(),
        )
    })?;

    // The projection must be a bracket homomorphism.
    for i in 0..n {
        for j in 0..n {
            let lhs = projection.mul(&h.bracket_basis(i, j));
            let rhs = quotient.bracket(&projection.col(i), &projection.col(j));
            if lhs != rhs {
                return Err(Error::InvalidStructure(format!(
                    "projection fails to respect brackets at basis pair ({i}, {j})"
                )));
            }
        }
    }

    Ok(QuotientData {
        kernel,
        quotient,
        projection,
        section,
    })
}

/// Killing form `kappa(x, y) = trace(ad_x ad_y)` and its nondegeneracy.
pub fn killing_form(g: &LieAlgebra) -> (Mat, bool) {
    let n = g.dim();
    let ads: Vec<Mat> = (0..n).map(|i| g.left_mult_op(i)).collect();
    let mut kappa = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let prod = ads[i].mul(&ads[j]);
            let mut tr = Scalar::zero();
            for d in 0..n {
                tr += prod.get(d, d);
            }
            kappa.set(i, j, tr);
        }
    }
    let nondegenerate = exactlin::rank(&kappa) == n;
    (kappa, nondegenerate)
}

// ---------------------------------------------------------------------------
// Irreducibility and multiplicities
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub enum IrreducibilityVerdict {
    Yes,
    No { witness: Subspace },
    Inconclusive,
}

/// Burnside criterion: the module is absolutely irreducible iff the unital
/// associative closure of the action matrices spans the full matrix algebra.
/// Falls back to spinning standard basis vectors for a witness subspace.
pub fn absolutely_irreducible(action: &[Mat]) -> IrreducibilityVerdict {
    let m = action.first().map_or(0, |a| a.rows());
    for a in action {
        assert_eq!(a.rows(), m);
        assert_eq!(a.cols(), m);
    }
    if m == 0 {
        return IrreducibilityVerdict::Yes;
    }

    let target = m * m;
    let mut basis_mats: Vec<Mat> = Vec::new();
    let mut span = Mat::zeros(target, 0);
    let enqueue = |mat: Mat, span: &mut Mat, basis_mats: &mut Vec<Mat>| -> bool {
        let flat = mat.vec_row_major();
        if span.cols() > 0 && exactlin::solve(span, &flat).ok().flatten().is_some() {
            return false;
        }
        if span.cols() == 0 && flat.is_zero() {
            return false;
        }
        *span = Mat::hstack(&[span, &flat]);
        basis_mats.push(mat);
        true
    };

    enqueue(Mat::identity(m), &mut span, &mut basis_mats);
    for a in action {
        enqueue(a.clone(), &mut span, &mut basis_mats);
    }
    let mut frontier = basis_mats.clone();
    let mut rounds = 0;
    while !frontier.is_empty() && span.cols() < target && rounds <= target + 1 {
        let mut next = Vec::new();
        for b in &frontier {
            for a in action {
                let prod = b.mul(a);
                if enqueue(prod.clone(), &mut span, &mut basis_mats) {
                    next.push(prod);
                }
            }
        }
        frontier = next;
        rounds += 1;
    }
    if span.cols() == target {
        return IrreducibilityVerdict::Yes;
    }

    for i in 0..m {
        let mut seed = Mat::zeros(m, 1);
        seed.set(i, 0, Scalar::one());
        let spun = spin(action, &seed);
        if spun.dim() < m {
            return IrreducibilityVerdict::No { witness: spun };
        }
    }
    IrreducibilityVerdict::Inconclusive
}

/// Smallest action-invariant subspace containing `v`.
pub fn spin(action: &[Mat], v: &Mat) -> Subspace {
    let mut current = Subspace::from_span(v);
    loop {
        let mut blocks = vec![current.basis.clone()];
        for a in action {
            blocks.push(a.mul(&current.basis));
        }
        let refs: Vec<&Mat> = blocks.iter().collect();
        let next = Subspace::from_span(&Mat::hstack(&refs));
        if next.dim() == current.dim() {
            return next;
        }
        current = next;
    }
}

/// Matrix of the intertwiner system `phi . rho_in = rho_out . phi` stacked
/// over all listed action pairs, acting on `phi` flattened row-major with
/// `dim_out` rows and `dim_in` columns.
pub fn intertwiner_system(rho_in: &[Mat], rho_out: &[Mat]) -> Mat {
    assert_eq!(rho_in.len(), rho_out.len());
    let n_in = rho_in.first().map_or(0, |a| a.rows());
    let n_out = rho_out.first().map_or(0, |a| a.rows());
    let unknowns = n_out * n_in;
    let mut triplets = Vec::new();
    for (x, (a_in, a_out)) in rho_in.iter().zip(rho_out.iter()).enumerate() {
        let row_base = x * unknowns;
        // (phi a_in)_{r,c}: coefficient of phi_{r,k} is a_in[k,c]
        for (k, c, v) in a_in.iter() {
            for r in 0..n_out {
                triplets.push((row_base + r * n_in + c, r * n_in + k, v.clone()));
            }
        }
        // -(a_out phi)_{r,c}: coefficient of phi_{k,c} is a_out[r,k]
        for (r, k, v) in a_out.iter() {
            for c in 0..n_in {
                triplets.push((row_base + r * n_in + c, k * n_in + c, -v.clone()));
            }
        }
    }
    Mat::from_triplets(rho_in.len() * unknowns, unknowns, triplets)
}

/// `dim Hom(simple, w)` over the common Lie algebra: the dimension of the
/// solution space of the simultaneous intertwiner system.
pub fn multiplicity(simple: &LieModule, w: &LieModule) -> Result<usize, Error> {
    if !simple.algebra().same_structure(w.algebra()) {
        return Err(Error::DimensionMismatch(
            "multiplicity: modules over different algebras".into(),
        ));
    }
    let system = intertwiner_system(simple.rho(), w.rho());
    Ok(system.cols() - exactlin::rank(&system))
}

// ---------------------------------------------------------------------------
// Simplicity certification
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub enum SimplicityVerdict {
    SimpleCertified,
    NotSimple {
        reason: String,
        witness: Option<Subspace>,
    },
    NotCertified {
        reason: String,
    },
}

impl SimplicityVerdict {
    pub fn is_certified_simple(&self) -> bool {
        matches!(self, SimplicityVerdict::SimpleCertified)
    }
}

/// Certifies simplicity of a Leibniz algebra when the left `h_Lie`-module
/// structure of `h` is multiplicity-free with absolutely irreducible
/// constituents: then the submodule lattice is the finite set of sums of
/// constituents, and every candidate is tested for two-sidedness. Any
/// hypothesis failure yields `NotCertified` rather than a guess.
pub fn is_simple_leibniz(h: &LeibnizAlgebra) -> Result<SimplicityVerdict, Error> {
    let leib = leibniz_kernel(h);
    let derived = h.derived_subspace();

    if !(derived.contains(&leib) && leib.dim() < derived.dim()) {
        return Ok(SimplicityVerdict::NotSimple {
            reason: "the Leibniz kernel is not strictly contained in [h, h]".into(),
            witness: None,
        });
    }
    if derived.dim() < h.dim() {
        return Ok(SimplicityVerdict::NotSimple {
            reason: "[h, h] is a proper two-sided ideal".into(),
            witness: Some(derived),
        });
    }

    let qd = lie_quotient(h)?;
    let (_, nondeg) = killing_form(&qd.quotient);
    if !nondeg {
        return Ok(SimplicityVerdict::NotSimple {
            reason: "the quotient Lie algebra has a degenerate Killing form".into(),
            witness: None,
        });
    }
    let adjoint: Vec<Mat> = (0..qd.quotient.dim())
        .map(|i| qd.quotient.left_mult_op(i))
        .collect();
    match absolutely_irreducible(&adjoint) {
        IrreducibilityVerdict::Yes => {}
        IrreducibilityVerdict::No { witness } => {
            // An ad-invariant subspace of the quotient pulls back to a
            // two-sided ideal strictly between Leib(h) and h.
            let lifted = Mat::hstack(&[&qd.section.mul(&witness.basis), &leib.basis]);
            return Ok(SimplicityVerdict::NotSimple {
                reason: "the quotient Lie algebra has a proper ideal".into(),
                witness: Some(Subspace::from_span(&lifted)),
            });
        }
        IrreducibilityVerdict::Inconclusive => {
            return Ok(SimplicityVerdict::NotCertified {
                reason: "irreducibility of the quotient adjoint module is undecided".into(),
            });
        }
    }

    // Left h_Lie-action on h through the fixed section.
    let action: Vec<Mat> = (0..qd.quotient.dim())
        .map(|u| {
            let mut op = Mat::zeros(h.dim(), h.dim());
            for (i, _, coeff) in qd.section.col(u).iter() {
                op = op.add(&h.left_mult_op(i).scale(coeff));
            }
            op
        })
        .collect();

    let pieces = match decompose_multiplicity_free(&action) {
        Ok(p) => p,
        Err(reason) => return Ok(SimplicityVerdict::NotCertified { reason }),
    };

    let r = pieces.len();
    let mut ideals: Vec<Subspace> = Vec::new();
    for mask in 0..(1u32 << r) {
        let mut parts: Vec<&Mat> = Vec::new();
        for (idx, piece) in pieces.iter().enumerate() {
            if mask & (1 << idx) != 0 {
                parts.push(&piece.basis);
            }
        }
        let candidate = if parts.is_empty() {
            Subspace::zero(h.dim())
        } else {
            Subspace::from_span(&Mat::hstack(&parts))
        };
        if is_two_sided_ideal(h, &candidate) {
            ideals.push(candidate);
        }
    }

    for ideal in &ideals {
        let allowed = ideal.dim() == 0 || ideal == &leib || ideal.dim() == h.dim();
        if !allowed {
            return Ok(SimplicityVerdict::NotSimple {
                reason: "a proper two-sided ideal different from Leib(h) exists".into(),
                witness: Some(ideal.clone()),
            });
        }
    }
    Ok(SimplicityVerdict::SimpleCertified)
}

fn is_two_sided_ideal(h: &LeibnizAlgebra, s: &Subspace) -> bool {
    for i in 0..h.dim() {
        let left = h.left_mult_op(i).mul(&s.basis);
        let right = h.right_mult_op(i).mul(&s.basis);
        match (
            exactlin::solve(&s.basis, &left),
            exactlin::solve(&s.basis, &right),
        ) {
            (Ok(Some(_)), Ok(Some(_))) => {}
            _ => return false,
        }
    }
    true
}

/// Splits the representation space into the common rational eigenspaces of a
/// commuting commutant; succeeds exactly in the multiplicity-free, split
/// case and returns the irreducible constituents.
fn decompose_multiplicity_free(action: &[Mat]) -> Result<Vec<Subspace>, String> {
    let m = action.first().map_or(0, |a| a.rows());
    if m == 0 {
        return Ok(Vec::new());
    }
    let system = intertwiner_system(action, action);
    let commutant = exactlin::kernel_basis(&system);
    let r = commutant.dim();
    let commutant_mats: Vec<Mat> = (0..r)
        .map(|j| {
            let mut mat = Mat::zeros(m, m);
            for (idx, _, v) in commutant.basis.col(j).iter() {
                mat.set(idx / m, idx % m, v.clone());
            }
            mat
        })
        .collect();

    for a in &commutant_mats {
        for b in &commutant_mats {
            if !Mat::commutator(a, b).is_zero() {
                return Err(
                    "commutant is noncommutative: the module has a constituent of multiplicity at least two"
                        .into(),
                );
            }
        }
    }

    let mut pieces = vec![Subspace::full(m)];
    for phi in &commutant_mats {
        let mut refined = Vec::new();
        for piece in pieces {
            if piece.dim() <= 1 {
                refined.push(piece);
                continue;
            }
            // phi preserves the piece; restrict and split by eigenvalues.
            let image = phi.mul(&piece.basis);
            let restricted = match exactlin::solve(&piece.basis, &image) {
                Ok(Some(x)) => x,
                _ => return Err("commutant element does not preserve a constituent".into()),
            };
            let eigenvalues = match rational_spectrum(&restricted) {
                Some(ev) => ev,
                None => {
                    return Err(
                        "commutant spectrum is not rational: constituents are not absolutely irreducible"
                            .into(),
                    )
                }
            };
            for lambda in eigenvalues {
                let shifted = restricted.sub(&Mat::identity(piece.dim()).scale(&lambda));
                let eig = exactlin::kernel_basis(&shifted);
                if eig.dim() > 0 {
                    refined.push(Subspace::from_span(&piece.basis.mul(&eig.basis)));
                }
            }
        }
        pieces = refined;
    }

    if pieces.iter().map(|p| p.dim()).sum::<usize>() != m || pieces.len() != r {
        return Err("eigenspace refinement did not split the module completely".into());
    }

    for piece in &pieces {
        let restricted: Result<Vec<Mat>, String> = action
            .iter()
            .map(|a| {
                exactlin::solve(&piece.basis, &a.mul(&piece.basis))
                    .ok()
                    .flatten()
                    .ok_or_else(|| "constituent is not action-invariant".to_string())
            })
            .collect();
        match absolutely_irreducible(&restricted?) {
            IrreducibilityVerdict::Yes => {}
            _ => {
                return Err(
                    "a constituent of the module is not certified absolutely irreducible".into(),
                )
            }
        }
    }
    Ok(pieces)
}

/// All eigenvalues of `m`, provided its minimal polynomial splits into
/// distinct rational linear factors; `None` otherwise.
fn rational_spectrum(m: &Mat) -> Option<Vec<Scalar>> {
    let n = m.rows();
    if n == 0 {
        return Some(Vec::new());
    }
    // Minimal polynomial by iterating powers until dependence.
    let mut powers = vec![Mat::identity(n)];
    let mut span = powers[0].vec_row_major();
    let coeffs = loop {
        let next = powers.last().unwrap().mul(m);
        let flat = next.vec_row_major();
        if let Ok(Some(x)) = exactlin::solve(&span, &flat) {
            break x;
        }
        span = Mat::hstack(&[&span, &flat]);
        powers.push(next);
        if powers.len() > n + 1 {
            return None;
        }
    };
    // x^d - sum coeffs[j] x^j, as integer coefficients c_0..c_d.
    let d = powers.len();
    let mut poly: Vec<Scalar> = (0..d).map(|j| -coeffs.get(j, 0)).collect();
    poly.push(Scalar::one());

    let mut den = BigInt::one();
    for c in &poly {
        den = den.lcm(c.denom());
    }
    let mut int_poly: Vec<BigInt> = poly
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();

    let mut roots = Vec::new();
    // Strip roots at zero first.
    while int_poly.first().map(|c| c.is_zero()).unwrap_or(false) {
        roots.push(Scalar::zero());
        int_poly.remove(0);
    }
    while int_poly.len() > 1 {
        let root = find_rational_root(&int_poly)?;
        roots.push(root.clone());
        int_poly = deflate(&int_poly, &root);
    }
    // Distinctness: the minimal polynomial of a diagonalizable operator is
    // squarefree; repeated roots mean the operator is not semisimple.
    let mut sorted = roots.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != roots.len() {
        return None;
    }
    Some(sorted)
}

fn find_rational_root(poly: &[BigInt]) -> Option<Scalar> {
    let eval = |x: &Scalar| -> Scalar {
        let mut acc = Scalar::zero();
        for c in poly.iter().rev() {
            acc = acc * x + Scalar::from_integer(c.clone());
        }
        acc
    };
    let lead = poly.last().unwrap();
    let constant = &poly[0];
    for p in small_divisors(constant) {
        for q in small_divisors(lead) {
            for sign in [1i64, -1] {
                let candidate = Scalar::new(&p * BigInt::from(sign), q.clone());
                if eval(&candidate).is_zero() {
                    return Some(candidate);
                }
            }
        }
    }
    None
}

/// Positive divisors discovered by trial division up to a fixed bound,
/// paired with their cofactors. Misses divisors whose smallest prefactor
/// exceeds the bound, in which case certification falls back to
/// `NotCertified` upstream.
fn small_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut out = Vec::new();
    let bound = BigInt::from(100_000u32);
    let mut d = BigInt::one();
    while &d * &d <= n && d <= bound {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            out.push(&n / &d);
        }
        d += 1;
    }
    out.sort();
    out.dedup();
    out
}

fn deflate(poly: &[BigInt], root: &Scalar) -> Vec<BigInt> {
    // Synthetic division by (x - root) over the rationals, re-cleared to
    // integers.
    let d = poly.len() - 1;
    let mut quotient = vec![Scalar::zero(); d];
    let mut carry = Scalar::zero();
    for k in (0..d).rev() {
        let coeff = Scalar::from_integer(poly[k + 1].clone()) + &carry;
        quotient[k] = coeff.clone();
        carry = coeff * root;
    }
    let mut den = BigInt::one();
    for c in &quotient {
        den = den.lcm(c.denom());
    }
    quotient
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::exactlin::sc;

    #[test]
    fn sl2_validates_and_is_antisymmetric() {
        let g = catalog::sl2();
        assert!(validate_leibniz(g.tensor()).unwrap().is_valid());
        assert!(g.is_antisymmetric());
    }

    #[test]
    fn hemi_validates_and_perturbation_fails() {
        let h = catalog::hemi_sl2(1).unwrap();
        assert_eq!(h.dim(), 5);
        assert!(validate_leibniz(h.tensor()).unwrap().is_valid());

        let mut bad = h.tensor().clone();
        bad[0][3][4] += sc(1);
        let report = validate_leibniz(&bad).unwrap();
        assert!(!report.is_valid());
    }

    #[test]
    fn abelian_kernel_is_zero() {
        let h = LeibnizAlgebra::abelian(4);
        assert_eq!(leibniz_kernel(&h).dim(), 0);
    }

    #[test]
    fn sl2_kernel_is_zero() {
        let g = catalog::sl2();
        assert_eq!(leibniz_kernel(&g).dim(), 0);
    }

    #[test]
    fn hemi_kernel_is_module_component() {
        let h = catalog::hemi_sl2(1).unwrap();
        let k = leibniz_kernel(&h);
        assert_eq!(k.dim(), 2);
        // spanned by the last two coordinates
        let expected = Subspace::from_span(&Mat::identity(5).select_cols(&[3, 4]));
        assert_eq!(k, expected);
    }

    #[test]
    fn kernel_acts_trivially_from_the_left() {
        for m in [1usize, 2, 3] {
            let h = catalog::hemi_sl2(m).unwrap();
            let k = leibniz_kernel(&h);
            for j in 0..k.dim() {
                assert!(h.left_op_of(&k.basis.col(j)).is_zero());
            }
        }
    }

    #[test]
    fn quotient_of_hemi_recovers_sl2() {
        let h = catalog::hemi_sl2(1).unwrap();
        let qd = lie_quotient(&h).unwrap();
        assert_eq!(qd.kernel.dim(), 2);
        assert_eq!(qd.quotient.dim(), 3);
        assert!(qd.quotient.same_structure(&catalog::sl2()));
        assert_eq!(qd.projection.mul(&qd.section), Mat::identity(3));
    }

    #[test]
    fn quotient_of_abelian_is_abelian() {
        let h = LeibnizAlgebra::abelian(3);
        let qd = lie_quotient(&h).unwrap();
        assert_eq!(qd.quotient.dim(), 3);
        assert!(qd.quotient.tensor().iter().flatten().flatten().all(|v| v.is_zero()));
    }

    #[test]
    fn killing_form_examples() {
        let (kappa, nondeg) = killing_form(&LieAlgebra::abelian(2));
        assert!(kappa.is_zero());
        assert!(!nondeg);

        let (kappa, nondeg) = killing_form(&catalog::sl2());
        assert!(nondeg);
        assert_eq!(kappa, kappa.transpose());
        // basis (e, h, f): kappa(h,h) = 8, kappa(e,f) = kappa(f,e) = 4
        assert_eq!(kappa.get(1, 1), sc(8));
        assert_eq!(kappa.get(0, 2), sc(4));
        assert_eq!(kappa.get(2, 0), sc(4));
        assert_eq!(kappa.get(0, 0), sc(0));

        // two-dimensional nonabelian Lie algebra [e1, e2] = e1
        let mut c = vec![vec![vec![Scalar::zero(); 2]; 2]; 2];
        c[0][1][0] = sc(1);
        c[1][0][0] = sc(-1);
        let g = LieAlgebra::new(LeibnizAlgebra::new(vec!["x".into(), "y".into()], c).unwrap())
            .unwrap();
        let (kappa, nondeg) = killing_form(&g);
        assert!(!nondeg);
        assert_eq!(exactlin::rank(&kappa), 1);
    }

    #[test]
    fn ideal_closure_examples() {
        let h = catalog::hemi_sl2(1).unwrap();
        assert_eq!(ideal_closure(&h, &Subspace::zero(5)).dim(), 0);
        assert_eq!(ideal_closure(&h, &Subspace::full(5)).dim(), 5);

        let mut seed_vec = Mat::zeros(5, 1);
        seed_vec.set(3, 0, sc(1));
        let closed = ideal_closure(&h, &Subspace::from_span(&seed_vec));
        assert_eq!(closed, leibniz_kernel(&h));
    }

    #[test]
    fn leibniz_kernel_is_closed_ideal() {
        let h = catalog::hemi_sl2(2).unwrap();
        let k = leibniz_kernel(&h);
        assert_eq!(ideal_closure(&h, &k), k);
    }

    #[test]
    fn burnside_trivial_and_irreducible() {
        assert!(matches!(
            absolutely_irreducible(&[Mat::identity(1)]),
            IrreducibilityVerdict::Yes
        ));

        let v3 = catalog::sl2_irrep(3).unwrap();
        assert!(matches!(
            absolutely_irreducible(v3.rho()),
            IrreducibilityVerdict::Yes
        ));

        let g = catalog::sl2();
        let adjoint: Vec<Mat> = (0..3).map(|i| g.left_mult_op(i)).collect();
        assert!(matches!(
            absolutely_irreducible(&adjoint),
            IrreducibilityVerdict::Yes
        ));
    }

    #[test]
    fn burnside_detects_direct_sum() {
        let v1 = catalog::sl2_irrep(1).unwrap();
        // V(1) + V(1) as block-diagonal action
        let doubled: Vec<Mat> = v1
            .rho()
            .iter()
            .map(|a| {
                let mut big = Mat::zeros(4, 4);
                for (r, c, v) in a.iter() {
                    big.set(r, c, v.clone());
                    big.set(r + 2, c + 2, v.clone());
                }
                big
            })
            .collect();
        match absolutely_irreducible(&doubled) {
            IrreducibilityVerdict::No { witness } => {
                let first = Subspace::from_span(&Mat::identity(4).select_cols(&[0, 1]));
                assert_eq!(witness, first);
            }
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn multiplicity_examples() {
        let v1 = catalog::sl2_irrep(1).unwrap();
        let v2 = catalog::sl2_irrep(2).unwrap();
        assert_eq!(multiplicity(&v1, &v1).unwrap(), 1);
        assert_eq!(multiplicity(&v1, &v2).unwrap(), 0);

        // adjoint of sl2 is V(2)
        let g = catalog::sl2();
        let adjoint = LieModule::new(
            g.clone(),
            (0..3).map(|i| g.left_mult_op(i)).collect(),
        )
        .unwrap();
        assert_eq!(multiplicity(&v2, &adjoint).unwrap(), 1);
    }

    #[test]
    fn multiplicity_weighted_sum_matches_dimension() {
        // h = hemi(sl2, V(1)) decomposes as V(1) + V(2) over sl2.
        let h = catalog::hemi_sl2(1).unwrap();
        let qd = lie_quotient(&h).unwrap();
        let action: Vec<Mat> = (0..3)
            .map(|u| {
                let mut op = Mat::zeros(5, 5);
                for (i, _, coeff) in qd.section.col(u).iter() {
                    op = op.add(&h.left_mult_op(i).scale(coeff));
                }
                op
            })
            .collect();
        let module = LieModule::new(qd.quotient.clone(), action).unwrap();
        let mut total = 0;
        for m in 0..=4 {
            let simple = catalog::sl2_irrep(m).unwrap();
            total += multiplicity(&simple, &module).unwrap() * (m + 1);
        }
        assert_eq!(total, 5);
    }

    #[test]
    fn simplicity_verdicts() {
        let h = catalog::hemi_sl2(1).unwrap();
        assert!(is_simple_leibniz(&h).unwrap().is_certified_simple());

        let h3 = catalog::hemi_sl2(3).unwrap();
        assert!(is_simple_leibniz(&h3).unwrap().is_certified_simple());

        // sl2 itself: Leib = 0 = [h,h] fails only when the bracket is
        // abelian; here Leib = 0 strictly inside [h,h] = h.
        let g = catalog::sl2();
        let verdict = is_simple_leibniz(&g).unwrap();
        assert!(verdict.is_certified_simple());

        let abelian = LeibnizAlgebra::abelian(2);
        assert!(matches!(
            is_simple_leibniz(&abelian).unwrap(),
            SimplicityVerdict::NotSimple { .. }
        ));
    }

    #[test]
    fn direct_sum_of_sl2s_is_not_simple() {
        let g = catalog::sl2();
        let n = 3;
        let mut c = vec![vec![vec![Scalar::zero(); 2 * n]; 2 * n]; 2 * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    c[i][j][k] = g.structure_constant(i, j, k).clone();
                    c[i + n][j + n][k + n] = g.structure_constant(i, j, k).clone();
                }
            }
        }
        let labels = (0..2 * n).map(|i| format!("e{i}")).collect();
        let sum = LeibnizAlgebra::new(labels, c).unwrap();
        match is_simple_leibniz(&sum).unwrap() {
            SimplicityVerdict::NotSimple { witness, .. } => {
                let w = witness.expect("witness ideal expected");
                assert!(w.dim() == 3);
            }
            other => panic!("expected NotSimple, got {other:?}"),
        }
    }

    #[test]
    fn hemi_v2_is_not_certified() {
        let h = catalog::hemi_sl2(2).unwrap();
        match is_simple_leibniz(&h).unwrap() {
            SimplicityVerdict::NotCertified { reason } => {
                assert!(reason.contains("multiplicity"));
            }
            other => panic!("expected NotCertified, got {other:?}"),
        }
    }
}
