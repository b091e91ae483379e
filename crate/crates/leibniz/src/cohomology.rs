//! Cochain complexes and cohomology: the Leibniz complex `CL^n(h, M) =
//! Hom(h^{(x)n}, M)` with its left differential, the Chevalley-Eilenberg
//! complex of a Lie algebra, representative cocycles, and the induced
//! `h_Lie`-action on `HL^q`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{lie_quotient, LeibnizAlgebra, LieAlgebra, QuotientData};
use crate::bimodule::{Bimodule, LieModule};
use crate::error::Error;
use crate::exactlin::{self, Mat, Scalar};

/// Degrees above this are refused for large inputs; see [`leibniz_complex`].
pub const DEGREE_GUARD: usize = 4;
pub const GUARD_PRODUCT: usize = 40;

/// A finite stretch of a cochain complex: `dims[q] = dim C^q` for
/// `q = 0..=D+1` and `d[q]: C^q -> C^{q+1}` for `q = 0..=D`, with every
/// consecutive composite verified to vanish.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    pub dims: Vec<usize>,
    pub d: Vec<Mat>,
}

impl CochainComplex {
    fn verify(self) -> Result<Self, Error> {
        for q in 0..self.d.len().saturating_sub(1) {
            if !self.d[q + 1].mul(&self.d[q]).is_zero() {
                return Err(Error::NotAComplex { degree: q });
            }
        }
        Ok(self)
    }

    /// The incoming differential at degree `q` (zero map for `q = 0`).
    fn d_in(&self, q: usize) -> Mat {
        if q == 0 {
            Mat::zeros(self.dims[0], 0)
        } else {
            self.d[q - 1].clone()
        }
    }
}

/// Cohomology at one degree: dimension, a representative basis of cocycle
/// columns, and the coboundary basis that fixes the splitting
/// `Z^q = B^q (+) reps`.
#[derive(Clone, Debug)]
pub struct CohomologySpace {
    pub degree: usize,
    pub dim: usize,
    /// Columns are cocycles spanning a complement of the coboundaries.
    pub representatives: Mat,
    /// Basis of the image of the incoming differential.
    pub coboundaries: Mat,
}

fn tuple_rank(tuple: &[usize], n: usize) -> usize {
    tuple.iter().fold(0, |acc, &t| acc * n + t)
}

fn next_tuple(tuple: &mut [usize], n: usize) -> bool {
    for slot in tuple.iter_mut().rev() {
        *slot += 1;
        if *slot < n {
            return true;
        }
        *slot = 0;
    }
    false
}

fn guard_degrees(dmax: usize, ambient: usize) -> Result<(), Error> {
    if dmax > DEGREE_GUARD && ambient > GUARD_PRODUCT {
        return Err(Error::Guard(format!(
            "degree {dmax} on a complex of size parameter {ambient} (limit: degree {DEGREE_GUARD} when the parameter exceeds {GUARD_PRODUCT}); estimated top cochain space has {} dimensions",
            ambient.pow(dmax as u32)
        )));
    }
    Ok(())
}

/// The Leibniz cochain complex of `h` with coefficients in a bimodule, up to
/// degree `dmax`. Basis of `CL^q`: lexicographic multi-indices
/// `(i_1, ..., i_q)` crossed with the module coordinates, flat index
/// `rank(tuple) * dim M + coord`.
pub fn leibniz_complex(
    h: &LeibnizAlgebra,
    m: &Bimodule,
    dmax: usize,
) -> Result<CochainComplex, Error> {
    if !h.same_structure(m.algebra()) {
        return Err(Error::DimensionMismatch(
            "coefficient bimodule is over a different algebra".into(),
        ));
    }
    let n = h.dim();
    let md = m.dim();
    guard_degrees(dmax, n * md)?;

    let dims: Vec<usize> = (0..=dmax + 1).map(|q| n.pow(q as u32) * md).collect();
    let mut differentials = Vec::with_capacity(dmax + 1);

    for q in 0..=dmax {
        let mut triplets: Vec<(usize, usize, Scalar)> = Vec::new();
        let mut out_tuple = vec![0usize; q + 1];
        loop {
            let out_base = tuple_rank(&out_tuple, n) * md;

            // sum_{i<q} (-1)^i [x_i, w(..hat x_i..)]_L
            for i in 0..q {
                let sign = if i % 2 == 0 { 1i64 } else { -1 };
                let mut sub = out_tuple.clone();
                sub.remove(i);
                let in_base = tuple_rank(&sub, n) * md;
                for (a, b, v) in m.left()[out_tuple[i]].iter() {
                    triplets.push((out_base + a, in_base + b, v * exactlin::sc(sign)));
                }
            }

            // (-1)^{q-1} [w(x_0..x_{q-1}), x_q]_R
            {
                let sign = if q % 2 == 1 { 1i64 } else { -1 };
                let in_base = tuple_rank(&out_tuple[..q], n) * md;
                for (a, b, v) in m.right()[out_tuple[q]].iter() {
                    triplets.push((out_base + a, in_base + b, v * exactlin::sc(sign)));
                }
            }

            // sum_{i<j} (-1)^{i+1} w(..hat x_i.., [x_i, x_j] at slot j-1, ..)
            for i in 0..q {
                for j in (i + 1)..=q {
                    let sign = if (i + 1) % 2 == 0 { 1i64 } else { -1 };
                    for k in 0..n {
                        let c = h.structure_constant(out_tuple[i], out_tuple[j], k);
                        if c.is_zero() {
                            continue;
                        }
                        let mut sub = out_tuple.clone();
                        sub.remove(i);
                        sub[j - 1] = k;
                        let in_base = tuple_rank(&sub, n) * md;
                        let coeff = c * exactlin::sc(sign);
                        for a in 0..md {
                            triplets.push((out_base + a, in_base + a, coeff.clone()));
                        }
                    }
                }
            }

            if !next_tuple(&mut out_tuple, n) {
                break;
            }
        }
        differentials.push(Mat::from_triplets(dims[q + 1], dims[q], triplets));
    }

    CochainComplex {
        dims,
        d: differentials,
    }
    .verify()
}

fn combinations(n: usize, p: usize) -> Vec<Vec<usize>> {
    if p > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut combo: Vec<usize> = (0..p).collect();
    loop {
        out.push(combo.clone());
        // next combination in lexicographic order
        let mut i = p;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if combo[i] < n - (p - i) {
                combo[i] += 1;
                for j in i + 1..p {
                    combo[j] = combo[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// The Chevalley-Eilenberg complex of a Lie algebra with coefficients in a
/// left module, up to degree `dmax`. Basis of `C^p`: strictly increasing
/// multi-indices crossed with module coordinates.
pub fn ce_complex(g: &LieAlgebra, v: &LieModule, dmax: usize) -> Result<CochainComplex, Error> {
    if !v.algebra().same_structure(g) {
        return Err(Error::DimensionMismatch(
            "coefficient module is over a different Lie algebra".into(),
        ));
    }
    let n = g.dim();
    let vd = v.dim();
    guard_degrees(dmax, n * vd)?;

    let bases: Vec<Vec<Vec<usize>>> = (0..=dmax + 1).map(|p| combinations(n, p)).collect();
    let index: Vec<BTreeMap<Vec<usize>, usize>> = bases
        .iter()
        .map(|list| {
            list.iter()
                .enumerate()
                .map(|(i, c)| (c.clone(), i))
                .collect()
        })
        .collect();
    let dims: Vec<usize> = bases.iter().map(|list| list.len() * vd).collect();

    let mut differentials = Vec::with_capacity(dmax + 1);
    for p in 0..=dmax {
        let mut triplets: Vec<(usize, usize, Scalar)> = Vec::new();
        for out_combo in &bases[p + 1] {
            let out_rank = index[p + 1][out_combo];
            let out_base = out_rank * vd;

            // sum (-1)^i x_i . w(..hat x_i..)
            for i in 0..=p {
                let sign = if i % 2 == 0 { 1i64 } else { -1 };
                let mut sub = out_combo.clone();
                sub.remove(i);
                let in_base = index[p][&sub] * vd;
                for (a, b, val) in v.rho()[out_combo[i]].iter() {
                    triplets.push((out_base + a, in_base + b, val * exactlin::sc(sign)));
                }
            }

            // sum_{i<j} (-1)^{i+j} w([x_i, x_j], ..hat x_i..hat x_j..)
            for i in 0..=p {
                for j in (i + 1)..=p {
                    let sign = if (i + j) % 2 == 0 { 1i64 } else { -1 };
                    for k in 0..n {
                        let c = g.structure_constant(out_combo[i], out_combo[j], k);
                        if c.is_zero() {
                            continue;
                        }
                        let mut sub = out_combo.clone();
                        sub.remove(j);
                        sub.remove(i);
                        if sub.contains(&k) {
                            continue;
                        }
                        let pos = sub.iter().filter(|&&u| u < k).count();
                        let mut merged = sub.clone();
                        merged.insert(pos, k);
                        let in_base = index[p][&merged] * vd;
                        let total = if pos % 2 == 0 { sign } else { -sign };
                        let coeff = c * exactlin::sc(total);
                        for a in 0..vd {
                            triplets.push((out_base + a, in_base + a, coeff.clone()));
                        }
                    }
                }
            }
        }
        differentials.push(Mat::from_triplets(dims[p + 1], dims[p], triplets));
    }

    CochainComplex {
        dims,
        d: differentials,
    }
    .verify()
}

/// Dimensions and representatives for degrees `0..=dmax` of a complex.
/// Representatives are the kernel-basis columns that extend the coboundary
/// basis, picked in deterministic column order.
pub fn cohomology_spaces(complex: &CochainComplex, dmax: usize) -> Vec<CohomologySpace> {
    (0..=dmax)
        .map(|q| {
            let cocycles = exactlin::kernel_basis(&complex.d[q]);
            let coboundaries = exactlin::image_basis(&complex.d_in(q));
            let stacked = Mat::hstack(&[&coboundaries, &cocycles.basis]);
            let picked: Vec<usize> = exactlin::pivot_columns(&stacked)
                .into_iter()
                .filter(|&c| c >= coboundaries.cols())
                .map(|c| c - coboundaries.cols())
                .collect();
            let representatives = cocycles.basis.select_cols(&picked);
            CohomologySpace {
                degree: q,
                dim: representatives.cols(),
                representatives,
                coboundaries,
            }
        })
        .collect()
}

/// Leibniz cohomology `HL^q(h, M)` for `q = 0..=dmax`.
pub fn hl(h: &LeibnizAlgebra, m: &Bimodule, dmax: usize) -> Result<Vec<CohomologySpace>, Error> {
    let complex = leibniz_complex(h, m, dmax)?;
    Ok(cohomology_spaces(&complex, dmax))
}

/// Chevalley-Eilenberg cohomology `H^p(g, V)` for `p = 0..=dmax`.
pub fn ce(g: &LieAlgebra, v: &LieModule, dmax: usize) -> Result<Vec<CohomologySpace>, Error> {
    let complex = ce_complex(g, v, dmax)?;
    Ok(cohomology_spaces(&complex, dmax))
}

/// Action of `e_i` on `CL^q(h, M)`:
/// `(x.w)(y_1..y_q) = [x, w(y_1..y_q)]_L - sum_t w(y_1, .., [x, y_t], .., y_q)`.
fn cochain_action_op(h: &LeibnizAlgebra, m: &Bimodule, q: usize, i: usize) -> Mat {
    let n = h.dim();
    let md = m.dim();
    let dim = n.pow(q as u32) * md;
    let mut triplets: Vec<(usize, usize, Scalar)> = Vec::new();
    let mut tuple = vec![0usize; q];
    loop {
        let base = tuple_rank(&tuple, n) * md;
        for (a, b, v) in m.left()[i].iter() {
            triplets.push((base + a, base + b, v.clone()));
        }
        for t in 0..q {
            for k in 0..n {
                let c = h.structure_constant(i, tuple[t], k);
                if c.is_zero() {
                    continue;
                }
                let mut sub = tuple.clone();
                sub[t] = k;
                let in_base = tuple_rank(&sub, n) * md;
                for a in 0..md {
                    triplets.push((base + a, in_base + a, -c.clone()));
                }
            }
        }
        if q == 0 || !next_tuple(&mut tuple, n) {
            break;
        }
    }
    Mat::from_triplets(dim, dim, triplets)
}

/// The cohomology spaces of the Leibniz complex together with the induced
/// `h_Lie`-module structure at every degree.
pub struct HlSuite {
    pub complex: CochainComplex,
    pub spaces: Vec<CohomologySpace>,
    pub modules: Vec<LieModule>,
}

/// Computes `HL^q` and the induced action for all `q = 0..=dmax`. The
/// adopted cochain action is gated by four runtime checks per degree:
/// (a) cocycles stay cocycles, (b) coboundaries stay coboundaries,
/// (c) the Leibniz kernel acts by zero on the quotient, and
/// (d) the Lie-module law holds on the quotient. Any failure aborts.
pub fn hl_suite(h: &LeibnizAlgebra, m: &Bimodule, dmax: usize) -> Result<HlSuite, Error> {
    let qd = lie_quotient(h)?;
    let complex = leibniz_complex(h, m, dmax)?;
    let spaces = cohomology_spaces(&complex, dmax);
    let modules = spaces
        .iter()
        .map(|space| induced_module(h, &qd, m, space))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(HlSuite {
        complex,
        spaces,
        modules,
    })
}

/// The induced `h_Lie`-module structure on `HL^q(h, M)`.
pub fn induced_action_on_hl(
    h: &LeibnizAlgebra,
    m: &Bimodule,
    q: usize,
) -> Result<LieModule, Error> {
    let mut suite = hl_suite(h, m, q)?;
    Ok(suite.modules.swap_remove(q))
}

fn induced_module(
    h: &LeibnizAlgebra,
    qd: &QuotientData,
    m: &Bimodule,
    space: &CohomologySpace,
) -> Result<LieModule, Error> {
    let n = h.dim();
    let q = space.degree;
    if space.dim == 0 {
        return LieModule::new(qd.quotient.clone(), vec![Mat::zeros(0, 0); qd.quotient.dim()]);
    }

    let ops: Vec<Mat> = (0..n).map(|i| cochain_action_op(h, m, q, i)).collect();
    let reps = &space.representatives;
    let cob = &space.coboundaries;
    let combined = Mat::hstack(&[cob, reps]);

    let mut descended: Vec<Mat> = Vec::with_capacity(n);
    let mut images: Vec<Mat> = Vec::with_capacity(n);
    for (i, op) in ops.iter().enumerate() {
        if cob.cols() > 0 {
            let moved = op.mul(cob);
            if exactlin::solve(cob, &moved)?.is_none() {
                return Err(Error::InducedActionFailure(format!(
                    "basis element {i} does not preserve coboundaries at degree {q}"
                )));
            }
        }
        let image = op.mul(reps);
        let coords = exactlin::solve(&combined, &image)?.ok_or_else(|| {
            Error::InducedActionFailure(format!(
                "basis element {i} does not preserve cocycles at degree {q}"
            ))
        })?;
        let mut action = Mat::zeros(space.dim, space.dim);
        for (r, c, v) in coords.iter() {
            if r >= cob.cols() {
                action.set(r - cob.cols(), c, v.clone());
            }
        }
        descended.push(action);
        images.push(image);
    }

    // (c) the Leibniz kernel must act by zero on the quotient
    for z in 0..qd.kernel.dim() {
        let mut image = Mat::zeros(reps.rows(), reps.cols());
        for (i, _, coeff) in qd.kernel.basis.col(z).iter() {
            image = image.add(&images[i].scale(coeff));
        }
        let coords = exactlin::solve(&combined, &image)?.ok_or_else(|| {
            Error::InducedActionFailure(format!(
                "Leibniz-kernel action leaves the cocycle space at degree {q}"
            ))
        })?;
        for (r, _, _) in coords.iter() {
            if r >= cob.cols() {
                return Err(Error::InducedActionFailure(format!(
                    "Leibniz kernel acts nontrivially on HL^{q}"
                )));
            }
        }
    }

    // (d) Lie-module law over h
    for i in 0..n {
        for j in 0..n {
            let mut expected = Mat::zeros(space.dim, space.dim);
            for k in 0..n {
                let c = h.structure_constant(i, j, k);
                if !c.is_zero() {
                    expected = expected.add(&descended[k].scale(c));
                }
            }
            if Mat::commutator(&descended[i], &descended[j]) != expected {
                return Err(Error::InducedActionFailure(format!(
                    "induced action violates the module law at degree {q}, pair ({i}, {j})"
                )));
            }
        }
    }

    let rho: Vec<Mat> = (0..qd.quotient.dim())
        .map(|u| {
            let mut acc = Mat::zeros(space.dim, space.dim);
            for (i, _, coeff) in qd.section.col(u).iter() {
                acc = acc.add(&descended[i].scale(coeff));
            }
            acc
        })
        .collect();
    LieModule::new(qd.quotient.clone(), rho)
}
