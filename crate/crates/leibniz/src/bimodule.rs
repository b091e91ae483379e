//! Bimodule structures over a Leibniz algebra: axiom checking, the
//! symmetric/antisymmetric lifts of Lie-quotient modules, duals, the adjoint
//! bimodule, the canonical antisymmetric sub-bimodule `M_0`, and Hom spaces.

use crate::algebra::{self, LeibnizAlgebra, LieAlgebra, QuotientData};
use crate::error::Error;
use num_traits::Zero;

use crate::exactlin::{self, Mat, Subspace};

/// A left module over a Lie algebra: one action matrix per basis element,
/// satisfying `rho_{[x,y]} = rho_x rho_y - rho_y rho_x`.
#[derive(Clone, Debug)]
pub struct LieModule {
    algebra: LieAlgebra,
    dim: usize,
    rho: Vec<Mat>,
}

impl LieModule {
    pub fn new(algebra: LieAlgebra, rho: Vec<Mat>) -> Result<Self, Error> {
        let n = algebra.dim();
        if rho.len() != n {
            return Err(Error::InvalidModule(format!(
                "{} action matrices for algebra dimension {n}",
                rho.len()
            )));
        }
        let dim = rho.first().map_or(0, |m| m.rows());
        for m in &rho {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::InvalidModule("action matrices are not square of equal size".into()));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let mut expected = Mat::zeros(dim, dim);
                for k in 0..n {
                    let c = algebra.structure_constant(i, j, k);
                    if !c.is_zero() {
                        expected = expected.add(&rho[k].scale(c));
                    }
                }
                if Mat::commutator(&rho[i], &rho[j]) != expected {
                    return Err(Error::InvalidModule(format!(
                        "module law fails on basis pair ({i}, {j})"
                    )));
                }
            }
        }
        Ok(LieModule { algebra, dim, rho })
    }

    pub fn trivial(algebra: LieAlgebra, dim: usize) -> Self {
        let n = algebra.dim();
        LieModule {
            algebra,
            dim,
            rho: vec![Mat::zeros(dim, dim); n],
        }
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rho(&self) -> &[Mat] {
        &self.rho
    }

    pub fn is_trivial_action(&self) -> bool {
        self.rho.iter().all(|m| m.is_zero())
    }
}

/// Which of the three bimodule relations failed, on which basis pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BimoduleLaw {
    Llm,
    Lml,
    Mll,
}

#[derive(Clone, Debug, Default)]
pub struct BimoduleReport {
    pub violations: Vec<(BimoduleLaw, usize, usize)>,
}

impl BimoduleReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks LLM, LML and MLL on every basis pair of the algebra.
pub fn check_bimodule(h: &LeibnizAlgebra, left: &[Mat], right: &[Mat]) -> BimoduleReport {
    let n = h.dim();
    let mut report = BimoduleReport::default();
    let dim = left.first().map_or(0, |m| m.rows());
    let combo = |ops: &[Mat], i: usize, j: usize| -> Mat {
        let mut out = Mat::zeros(dim, dim);
        for (k, op) in ops.iter().enumerate() {
            let c = h.structure_constant(i, j, k);
            if !c.is_zero() {
                out = out.add(&op.scale(c));
            }
        }
        out
    };
    for i in 0..n {
        for j in 0..n {
            let l_bracket = combo(left, i, j);
            let r_bracket = combo(right, i, j);
            if Mat::commutator(&left[i], &left[j]) != l_bracket {
                report.violations.push((BimoduleLaw::Llm, i, j));
            }
            let lml_rhs = right[j].mul(&left[i]).add(&r_bracket);
            if left[i].mul(&right[j]) != lml_rhs {
                report.violations.push((BimoduleLaw::Lml, i, j));
            }
            let mll_rhs = right[j].mul(&right[i]).add(&left[i].mul(&right[j]));
            if r_bracket != mll_rhs {
                report.violations.push((BimoduleLaw::Mll, i, j));
            }
        }
    }
    report
}

/// An `h`-bimodule: left and right action operators per basis element of the
/// Leibniz algebra, satisfying LLM, LML and MLL. The operator families are
/// indexed by the basis of `h` itself even when they factor through the Lie
/// quotient, so the adjoint bimodule needs no special casing.
#[derive(Clone, Debug)]
pub struct Bimodule {
    algebra: LeibnizAlgebra,
    dim: usize,
    left: Vec<Mat>,
    right: Vec<Mat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Symmetric,
    Antisymmetric,
}

/// Observed parity of a bimodule's operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParityKind {
    /// Both actions vanish.
    Trivial,
    /// Right action vanishes.
    Antisymmetric,
    /// Right action is the negative of the left action.
    Symmetric,
    Mixed,
}

impl Bimodule {
    pub fn new(algebra: LeibnizAlgebra, left: Vec<Mat>, right: Vec<Mat>) -> Result<Self, Error> {
        let n = algebra.dim();
        if left.len() != n || right.len() != n {
            return Err(Error::InvalidBimodule(format!(
                "expected {n} left and right operators, got {} and {}",
                left.len(),
                right.len()
            )));
        }
        let dim = left.first().map_or(0, |m| m.rows());
        for m in left.iter().chain(right.iter()) {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::InvalidBimodule(
                    "operators are not square of equal size".into(),
                ));
            }
        }
        let report = check_bimodule(&algebra, &left, &right);
        if !report.is_valid() {
            let (law, i, j) = report.violations[0];
            return Err(Error::InvalidBimodule(format!(
                "{} violations, first: {law:?} at basis pair ({i}, {j})",
                report.violations.len()
            )));
        }
        Ok(Bimodule {
            algebra,
            dim,
            left,
            right,
        })
    }

    pub fn algebra(&self) -> &LeibnizAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left(&self) -> &[Mat] {
        &self.left
    }

    pub fn right(&self) -> &[Mat] {
        &self.right
    }

    pub fn parity_kind(&self) -> ParityKind {
        let right_zero = self.right.iter().all(Mat::is_zero);
        let symmetric = self
            .left
            .iter()
            .zip(self.right.iter())
            .all(|(l, r)| *r == l.neg());
        match (right_zero, symmetric) {
            (true, true) => ParityKind::Trivial,
            (true, false) => ParityKind::Antisymmetric,
            (false, true) => ParityKind::Symmetric,
            (false, false) => ParityKind::Mixed,
        }
    }

    /// The natural `h_Lie`-module carried by the left action, expressed in
    /// the basis of the quotient through its fixed section.
    pub fn left_module(&self, qd: &QuotientData) -> Result<LieModule, Error> {
        let rho = (0..qd.quotient.dim())
            .map(|u| {
                let mut op = Mat::zeros(self.dim, self.dim);
                for (i, _, coeff) in qd.section.col(u).iter() {
                    op = op.add(&self.left[i].scale(coeff));
                }
                op
            })
            .collect();
        LieModule::new(qd.quotient.clone(), rho)
    }

    /// Trivial one-dimensional bimodule `k`.
    pub fn trivial(algebra: LeibnizAlgebra) -> Self {
        let n = algebra.dim();
        Bimodule {
            algebra,
            dim: 1,
            left: vec![Mat::zeros(1, 1); n],
            right: vec![Mat::zeros(1, 1); n],
        }
    }
}

/// Lifts an `h_Lie`-module to an `h`-bimodule: the left action factors
/// through the projection, the right action is zero (antisymmetric) or the
/// negative of the left action (symmetric).
pub fn lift(m: &LieModule, parity: Parity, h: &LeibnizAlgebra) -> Result<Bimodule, Error> {
    let qd = algebra::lie_quotient(h)?;
    if !m.algebra().same_structure(&qd.quotient) {
        return Err(Error::InvalidModule(
            "module is not over the Lie quotient of the given algebra".into(),
        ));
    }
    let left: Vec<Mat> = (0..h.dim())
        .map(|i| {
            let mut op = Mat::zeros(m.dim(), m.dim());
            for (u, _, coeff) in qd.projection.col(i).iter() {
                op = op.add(&m.rho()[u].scale(coeff));
            }
            op
        })
        .collect();
    let right = match parity {
        Parity::Antisymmetric => vec![Mat::zeros(m.dim(), m.dim()); h.dim()],
        Parity::Symmetric => left.iter().map(Mat::neg).collect(),
    };
    Bimodule::new(h.clone(), left, right)
}

/// `h` as a bimodule over itself under the adjoint actions.
pub fn adjoint_bimodule(h: &LeibnizAlgebra) -> Result<Bimodule, Error> {
    let left = (0..h.dim()).map(|i| h.left_mult_op(i)).collect();
    let right = (0..h.dim()).map(|i| h.right_mult_op(i)).collect();
    Bimodule::new(h.clone(), left, right)
}

/// The canonical short exact sequence `0 -> M_0 -> M -> M/M_0 -> 0`:
/// `M_0` is spanned by the vectors `[x, m]_L + [m, x]_R`, is antisymmetric,
/// and the quotient is symmetric.
#[derive(Clone, Debug)]
pub struct M0Split {
    pub sub: Bimodule,
    /// `M_0 -> M`.
    pub embedding: Mat,
    pub quotient: Bimodule,
    /// `M -> M/M_0`.
    pub projection: Mat,
}

pub fn m0_submodule(b: &Bimodule) -> Result<M0Split, Error> {
    let sums: Vec<Mat> = b
        .left()
        .iter()
        .zip(b.right().iter())
        .map(|(l, r)| l.add(r))
        .collect();
    let refs: Vec<&Mat> = sums.iter().collect();
    let m0 = if refs.is_empty() {
        Subspace::zero(b.dim())
    } else {
        Subspace::from_span(&Mat::hstack(&refs))
    };

    let sub_left = restrict_action(b.left(), &m0)?;
    let sub_right = restrict_action(b.right(), &m0)?;
    let sub = Bimodule::new(b.algebra().clone(), sub_left, sub_right)?;
    if !sub.right.iter().all(Mat::is_zero) {
        return Err(Error::InvalidBimodule(
            "M_0 is not antisymmetric; bimodule relations are inconsistent".into(),
        ));
    }

    let split = exactlin::split_along(&m0)?;
    let quot_left: Vec<Mat> = b
        .left()
        .iter()
        .map(|l| split.proj_quot.mul(&l.mul(&split.complement)))
        .collect();
    let quot_right: Vec<Mat> = b
        .right()
        .iter()
        .map(|r| split.proj_quot.mul(&r.mul(&split.complement)))
        .collect();
    let quotient = Bimodule::new(b.algebra().clone(), quot_left, quot_right)?;

    Ok(M0Split {
        sub,
        embedding: m0.basis,
        quotient,
        projection: split.proj_quot,
    })
}

/// Restricts each operator to an invariant subspace, in the coordinates of
/// the subspace basis. Errors when the subspace is not invariant.
pub fn restrict_action(ops: &[Mat], sub: &Subspace) -> Result<Vec<Mat>, Error> {
    ops.iter()
        .map(|op| {
            exactlin::solve(&sub.basis, &op.mul(&sub.basis))?
                .ok_or_else(|| Error::NotInvariant("operator leaves the subspace".into()))
        })
        .collect()
}

/// Induced action on a subquotient `span(cocycles) / span(boundaries)`.
///
/// `cocycles` and `boundaries` are matrices of independent columns with
/// `span(boundaries)` contained in `span(cocycles)`. Returns the chosen
/// representative columns (cocycle columns extending the boundary basis)
/// and the action matrices of each operator on the quotient. Errors when an
/// operator fails to preserve either span.
pub fn subquotient_action(
    ops: &[Mat],
    cocycles: &Mat,
    boundaries: &Mat,
) -> Result<(Mat, Vec<Mat>), Error> {
    let stacked = Mat::hstack(&[boundaries, cocycles]);
    let picked: Vec<usize> = exactlin::pivot_columns(&stacked)
        .into_iter()
        .filter(|&c| c >= boundaries.cols())
        .map(|c| c - boundaries.cols())
        .collect();
    let reps = cocycles.select_cols(&picked);
    let combined = Mat::hstack(&[boundaries, &reps]);

    let mut actions = Vec::with_capacity(ops.len());
    for op in ops {
        if boundaries.cols() > 0
            && exactlin::solve(boundaries, &op.mul(boundaries))?.is_none()
        {
            return Err(Error::NotInvariant(
                "operator does not preserve the boundary span".into(),
            ));
        }
        let coords = exactlin::solve(&combined, &op.mul(&reps))?
            .ok_or_else(|| Error::NotInvariant("operator does not preserve the cocycle span".into()))?;
        let mut action = Mat::zeros(reps.cols(), reps.cols());
        for (r, c, v) in coords.iter() {
            if r >= boundaries.cols() {
                action.set(r - boundaries.cols(), c, v.clone());
            }
        }
        actions.push(action);
    }
    Ok((reps, actions))
}

/// The Leibniz algebra as a left module over its own Lie quotient: the left
/// adjoint action factors through the quotient because the Leibniz kernel
/// lies in the left center.
pub fn algebra_as_module(h: &LeibnizAlgebra, qd: &QuotientData) -> Result<LieModule, Error> {
    let rho = (0..qd.quotient.dim())
        .map(|u| {
            let mut op = Mat::zeros(h.dim(), h.dim());
            for (i, _, coeff) in qd.section.col(u).iter() {
                op = op.add(&h.left_mult_op(i).scale(coeff));
            }
            op
        })
        .collect();
    LieModule::new(qd.quotient.clone(), rho)
}

/// The dual module: `rho*_x = -(rho_x)^T`.
pub fn dual_module(m: &LieModule) -> LieModule {
    let rho = m.rho().iter().map(|a| a.transpose().neg()).collect();
    LieModule::new(m.algebra().clone(), rho).expect("dual of a module is a module")
}

/// `Hom(Y, W)` with the action `(x.f)(v) = x.f(v) - f(x.v)`, flattened
/// row-major: a map is a `dim W x dim Y` matrix, index `r * dim Y + c`.
pub fn hom_module(y: &LieModule, w: &LieModule) -> Result<LieModule, Error> {
    if !y.algebra().same_structure(w.algebra()) {
        return Err(Error::DimensionMismatch(
            "hom_module: modules over different algebras".into(),
        ));
    }
    let (ny, nw) = (y.dim(), w.dim());
    let dim = nw * ny;
    let rho = y
        .rho()
        .iter()
        .zip(w.rho().iter())
        .map(|(ry, rw)| {
            let mut triplets = Vec::new();
            // (rho_w f)_{r,c}: coefficient of f_{k,c} is rho_w[r,k]
            for (r, k, v) in rw.iter() {
                for c in 0..ny {
                    triplets.push((r * ny + c, k * ny + c, v.clone()));
                }
            }
            // -(f rho_y)_{r,c}: coefficient of f_{r,k} is rho_y[k,c]
            for (k, c, v) in ry.iter() {
                for r in 0..nw {
                    triplets.push((r * ny + c, r * ny + k, -v.clone()));
                }
            }
            Mat::from_triplets(dim, dim, triplets)
        })
        .collect();
    LieModule::new(y.algebra().clone(), rho)
}

/// Dimension of the space of bimodule homomorphisms `M -> N`: simultaneous
/// intertwiners for the left and right operator families. This is
/// `Ext^0(M, N)`.
pub fn hom_bimodule_space(m: &Bimodule, n: &Bimodule) -> Result<usize, Error> {
    if !m.algebra().same_structure(n.algebra()) {
        return Err(Error::DimensionMismatch(
            "hom_bimodule_space: bimodules over different algebras".into(),
        ));
    }
    let mut rho_in: Vec<Mat> = m.left().to_vec();
    rho_in.extend_from_slice(m.right());
    let mut rho_out: Vec<Mat> = n.left().to_vec();
    rho_out.extend_from_slice(n.right());
    let system = algebra::intertwiner_system(&rho_in, &rho_out);
    Ok(system.cols() - exactlin::rank(&system))
}
