//! Exact sparse linear algebra over the rationals.
//!
//! Everything downstream (cohomology dimensions, intertwiner spaces, Ext
//! verdicts) reduces to rank, kernel and solve on sparse matrices with
//! rational entries. Elimination works on integer rows (denominators are
//! cleared per row) with cross-multiplication updates and gcd stripping, so
//! entries stay small on the structured differentials this crate produces.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Exact rational scalar. `BigRational` keeps the fraction reduced with a
/// positive denominator after every operation.
pub type Scalar = BigRational;

/// Scalar from an integer.
pub fn sc(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Scalar from a numerator/denominator pair. Panics when `den == 0`.
pub fn ratio(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Sparse matrix over the rationals. Stored entries are always nonzero.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.entries.insert((i, i), Scalar::one());
        }
        m
    }

    /// Accumulates triplets; cancelling contributions disappear.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Scalar)>,
    {
        let mut m = Mat::zeros(rows, cols);
        for (r, c, v) in triplets {
            m.add_to(r, c, v);
        }
        m
    }

    pub fn from_dense_i64(data: &[Vec<i64>]) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        let mut m = Mat::zeros(rows, cols);
        for (i, row) in data.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (j, v) in row.iter().enumerate() {
                if *v != 0 {
                    m.entries.insert((i, j), sc(*v));
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        if v.is_zero() {
            return;
        }
        let cur = self.entries.entry((r, c)).or_insert_with(Scalar::zero);
        *cur += v;
        if cur.is_zero() {
            self.entries.remove(&(r, c));
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    /// Nonzero entries of row `r`, ordered by column.
    pub fn row_entries(&self, r: usize) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries
            .range((r, 0)..(r + 1, 0))
            .map(|(&(_, c), v)| (c, v))
    }

    /// Column `j` as sparse (row, value) pairs.
    pub fn col_entries(&self, j: usize) -> Vec<(usize, Scalar)> {
        self.iter()
            .filter(|&(_, c, _)| c == j)
            .map(|(r, _, v)| (r, v.clone()))
            .collect()
    }

    /// Column `j` as an `rows x 1` matrix.
    pub fn col(&self, j: usize) -> Mat {
        let mut m = Mat::zeros(self.rows, 1);
        for (r, v) in self.col_entries(j) {
            m.entries.insert((r, 0), v);
        }
        m
    }

    /// Keeps the listed columns, in the listed order.
    pub fn select_cols(&self, cols: &[usize]) -> Mat {
        let mut m = Mat::zeros(self.rows, cols.len());
        for (new_c, &c) in cols.iter().enumerate() {
            for (r, v) in self.col_entries(c) {
                m.entries.insert((r, new_c), v);
            }
        }
        m
    }

    pub fn transpose(&self) -> Mat {
        let mut m = Mat::zeros(self.cols, self.rows);
        for (r, c, v) in self.iter() {
            m.entries.insert((c, r), v.clone());
        }
        m
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut m = Mat::zeros(self.rows, other.cols);
        for (i, k, a) in self.iter() {
            for (j, b) in other.row_entries(k) {
                m.add_to(i, j, a * b);
            }
        }
        m
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (r, c, v) in other.iter() {
            m.add_to(r, c, v.clone());
        }
        m
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (r, c, v) in other.iter() {
            m.add_to(r, c, -v.clone());
        }
        m
    }

    pub fn neg(&self) -> Mat {
        let mut m = Mat::zeros(self.rows, self.cols);
        for (r, c, v) in self.iter() {
            m.entries.insert((r, c), -v.clone());
        }
        m
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        if s.is_zero() {
            return Mat::zeros(self.rows, self.cols);
        }
        let mut m = Mat::zeros(self.rows, self.cols);
        for (r, c, v) in self.iter() {
            m.entries.insert((r, c), v * s);
        }
        m
    }

    /// `a*b - b*a`.
    pub fn commutator(a: &Mat, b: &Mat) -> Mat {
        a.mul(b).sub(&b.mul(a))
    }

    /// Horizontal concatenation.
    pub fn hstack(blocks: &[&Mat]) -> Mat {
        assert!(!blocks.is_empty());
        let rows = blocks[0].rows;
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Mat::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            for (r, c, v) in b.iter() {
                m.entries.insert((r, c + offset), v.clone());
            }
            offset += b.cols;
        }
        m
    }

    /// Vertical concatenation.
    pub fn vstack(blocks: &[&Mat]) -> Mat {
        assert!(!blocks.is_empty());
        let cols = blocks[0].cols;
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut m = Mat::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            for (r, c, v) in b.iter() {
                m.entries.insert((r + offset, c), v.clone());
            }
            offset += b.rows;
        }
        m
    }

    /// Flattens column by column into a `rows*cols x 1` matrix
    /// (row-major index `r*cols + c`).
    pub fn vec_row_major(&self) -> Mat {
        let mut m = Mat::zeros(self.rows * self.cols, 1);
        for (r, c, v) in self.iter() {
            m.entries.insert((r * self.cols + c, 0), v.clone());
        }
        m
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows.min(16) {
            let row: Vec<String> = (0..self.cols.min(16)).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// A linear subspace given by a canonical basis.
///
/// The basis matrix is the column-wise reduced echelon form of any spanning
/// set, with integer entries stripped of common content, so two subspaces are
/// equal as subspaces iff their `basis` matrices are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub ambient_dim: usize,
    pub basis: Mat,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Mat::zeros(ambient_dim, 0),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Mat::identity(ambient_dim),
        }
    }

    /// Canonical subspace spanned by the columns of `span`.
    pub fn from_span(span: &Mat) -> Self {
        let rref_rows = row_reduce(&span.transpose()).rows;
        let dim = rref_rows.len();
        let mut basis = Mat::zeros(span.rows(), dim);
        for (j, row) in rref_rows.iter().enumerate() {
            for &(i, ref v) in row {
                basis.entries.insert((i, j), Scalar::from_integer(v.clone()));
            }
        }
        Subspace {
            ambient_dim: span.rows(),
            basis,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn contains_vec(&self, v: &Mat) -> bool {
        solve(&self.basis, v).map(|x| x.is_some()).unwrap_or(false)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim
            && solve(&self.basis, &other.basis)
                .map(|x| x.is_some())
                .unwrap_or(false)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        Subspace::from_span(&Mat::hstack(&[&self.basis, &other.basis]))
    }
}

// ---------------------------------------------------------------------------
// Elimination engine
// ---------------------------------------------------------------------------

/// Sparse integer row, sorted by column, content-stripped, leading entry
/// positive.
type IntRow = Vec<(usize, BigInt)>;

fn normalize_row(row: &mut IntRow) {
    if row.is_empty() {
        return;
    }
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if row[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

/// `pa*a - pb*b` on sorted sparse rows, renormalized.
fn row_combine(pa: &BigInt, a: &IntRow, pb: &BigInt, b: &IntRow) -> IntRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(&(ca, ref va)), Some(&(cb, ref vb))) => {
                if ca == cb {
                    i += 1;
                    j += 1;
                    (ca, pa * va - pb * vb)
                } else if ca < cb {
                    i += 1;
                    (ca, pa * va)
                } else {
                    j += 1;
                    (cb, -(pb * vb))
                }
            }
            (Some(&(ca, ref va)), None) => {
                i += 1;
                (ca, pa * va)
            }
            (None, Some(&(cb, ref vb))) => {
                j += 1;
                (cb, -(pb * vb))
            }
            (None, None) => unreachable!(),
        };
        if !next.1.is_zero() {
            out.push(next);
        }
    }
    normalize_row(&mut out);
    out
}

fn mat_to_int_rows(m: &Mat) -> Vec<IntRow> {
    let mut rows: Vec<IntRow> = vec![Vec::new(); m.rows()];
    let mut dens: Vec<BigInt> = vec![BigInt::one(); m.rows()];
    for (r, _, v) in m.iter() {
        dens[r] = dens[r].lcm(v.denom());
    }
    for (r, c, v) in m.iter() {
        rows[r].push((c, v.numer() * (&dens[r] / v.denom())));
    }
    for row in rows.iter_mut() {
        normalize_row(row);
    }
    rows
}

/// Row echelon data: pivot rows in reduced form, ordered by pivot column.
struct Echelon {
    rows: Vec<IntRow>,
    pivot_cols: Vec<usize>,
}

impl Echelon {
    fn rank(&self) -> usize {
        self.pivot_cols.len()
    }
}

/// Fraction-free row reduction. Pivots are taken column by column from the
/// left (so pivot columns are the lexicographically earliest independent
/// columns); within a column the sparsest candidate row wins, which keeps
/// fill-in down on the block differentials. `pivot_col_limit` stops pivot
/// search after that many columns (used by `solve` on augmented systems).
fn row_reduce_limited(m: &Mat, pivot_col_limit: usize) -> Echelon {
    let mut active = mat_to_int_rows(m);
    active.retain(|r| !r.is_empty());
    let mut finished: Vec<(usize, IntRow)> = Vec::new();

    // Bucket rows by leading column; a row only re-buckets rightward.
    let mut buckets: BTreeMap<usize, Vec<IntRow>> = BTreeMap::new();
    for row in active {
        buckets.entry(row[0].0).or_default().push(row);
    }

    while let Some((&col, _)) = buckets.iter().next() {
        let candidates = buckets.remove(&col).unwrap();
        if col >= pivot_col_limit {
            // No pivots allowed here; park the rows as-is.
            finished.extend(candidates.into_iter().map(|r| (usize::MAX, r)));
            continue;
        }
        let pivot_idx = candidates
            .iter()
            .enumerate()
            .min_by_key(|(i, r)| (r.len(), *i))
            .map(|(i, _)| i)
            .unwrap();
        let mut rest = candidates;
        let pivot = rest.swap_remove(pivot_idx);
        let pval = pivot[0].1.clone();
        for row in rest {
            let rval = row[0].1.clone();
            let combined = row_combine(&pval, &row, &rval, &pivot);
            if !combined.is_empty() {
                buckets.entry(combined[0].0).or_default().push(combined);
            }
        }
        finished.push((col, pivot));
    }

    finished.sort_by_key(|(c, _)| *c);
    let mut pivot_cols = Vec::new();
    let mut rows = Vec::new();
    let mut parked = Vec::new();
    for (c, r) in finished {
        if c == usize::MAX {
            parked.push(r);
        } else {
            pivot_cols.push(c);
            rows.push(r);
        }
    }

    // Backward pass: reduce above each pivot. Parked rows sit entirely at
    // or past the pivot limit, so they carry no pivot-column entries.
    for i in (0..rows.len()).rev() {
        let (pc, pval) = (pivot_cols[i], rows[i][0].1.clone());
        for j in 0..i {
            if let Some(pos) = rows[j].iter().position(|&(c, _)| c == pc) {
                let rval = rows[j][pos].1.clone();
                rows[j] = row_combine(&pval, &rows[j], &rval, &rows[i]);
            }
        }
    }
    rows.extend(parked);

    Echelon { rows, pivot_cols }
}

fn row_reduce(m: &Mat) -> Echelon {
    row_reduce_limited(m, m.cols())
}

// ---------------------------------------------------------------------------
// Public operations
// ---------------------------------------------------------------------------

/// Exact rank over the rationals.
pub fn rank(m: &Mat) -> usize {
    row_reduce(m).rank()
}

/// Indices of the lexicographically earliest maximal independent column set.
pub fn pivot_columns(m: &Mat) -> Vec<usize> {
    row_reduce(m).pivot_cols
}

/// Basis of the column space: the pivot columns of `m`.
pub fn image_basis(m: &Mat) -> Mat {
    m.select_cols(&pivot_columns(m))
}

/// Basis of the right null space, one integer column per free column of `m`.
pub fn kernel_basis(m: &Mat) -> Subspace {
    let ech = row_reduce(m);
    let pivot_set: BTreeMap<usize, usize> = ech
        .pivot_cols
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, i))
        .collect();
    let free_cols: Vec<usize> = (0..m.cols()).filter(|c| !pivot_set.contains_key(c)).collect();

    let mut basis = Mat::zeros(m.cols(), free_cols.len());
    for (k, &fc) in free_cols.iter().enumerate() {
        // v[fc] = 1, v[pc] = -row[fc]/row[pc] for each pivot row.
        let mut v: Vec<(usize, Scalar)> = vec![(fc, Scalar::one())];
        for (i, &pc) in ech.pivot_cols.iter().enumerate() {
            let row = &ech.rows[i];
            if let Some(pos) = row.iter().position(|&(c, _)| c == fc) {
                let val = -BigRational::new(row[pos].1.clone(), row[0].1.clone());
                v.push((pc, val));
            }
        }
        // Clear denominators for an integer column, deterministic sign.
        let mut den = BigInt::one();
        for (_, s) in &v {
            den = den.lcm(s.denom());
        }
        for (r, s) in v {
            let int_val = s.numer() * (&den / s.denom());
            basis.set(r, k, Scalar::from_integer(int_val));
        }
    }
    Subspace {
        ambient_dim: m.cols(),
        basis,
    }
}

/// Some `x` with `a*x = b`, or `None` when the system is inconsistent.
/// Free variables are set to zero.
pub fn solve(a: &Mat, b: &Mat) -> Result<Option<Mat>, Error> {
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "solve: lhs has {} rows, rhs has {}",
            a.rows(),
            b.rows()
        )));
    }
    let aug = Mat::hstack(&[a, b]);
    let ech = row_reduce_limited(&aug, a.cols());

    // Any surviving row supported entirely in the rhs block is inconsistent.
    for (i, row) in ech.rows.iter().enumerate() {
        if i >= ech.pivot_cols.len() && !row.is_empty() {
            return Ok(None);
        }
    }

    // Free variables are zero, so each pivot row reads off directly.
    let mut x = Mat::zeros(a.cols(), b.cols());
    for (i, &pc) in ech.pivot_cols.iter().enumerate() {
        let row = &ech.rows[i];
        let pval = &row[0].1;
        for &(c, ref v) in row.iter() {
            if c >= a.cols() {
                x.set(pc, c - a.cols(), BigRational::new(v.clone(), pval.clone()));
            }
        }
    }
    debug_assert_eq!(a.mul(&x), *b);
    Ok(Some(x))
}

/// A decomposition `ambient = sub (+) complement` with the complement spanned
/// by standard basis vectors completing the subspace basis.
#[derive(Clone, Debug)]
pub struct Splitting {
    /// Standard basis columns spanning the chosen complement.
    pub complement: Mat,
    /// Coordinates on the subspace part, `k x n`.
    pub proj_sub: Mat,
    /// Coordinates on the complement part, `(n - k) x n`.
    pub proj_quot: Mat,
}

pub fn split_along(sub: &Subspace) -> Result<Splitting, Error> {
    let n = sub.ambient_dim;
    let k = sub.dim();
    let full = Mat::hstack(&[&sub.basis, &Mat::identity(n)]);
    let pivots = pivot_columns(&full);
    let completion: Vec<usize> = pivots.iter().filter(|&&c| c >= k).map(|&c| c - k).collect();
    debug_assert_eq!(completion.len(), n - k);
    let complement = Mat::identity(n).select_cols(&completion);

    let change = Mat::hstack(&[&sub.basis, &complement]);
    let inv = solve(&change, &Mat::identity(n))?
        .ok_or_else(|| Error::DimensionMismatch("subspace basis is not independent".into()))?;
    let mut proj_sub = Mat::zeros(k, n);
    let mut proj_quot = Mat::zeros(n - k, n);
    for (r, c, v) in inv.iter() {
        if r < k {
            proj_sub.set(r, c, v.clone());
        } else {
            proj_quot.set(r - k, c, v.clone());
        }
    }
    Ok(Splitting {
        complement,
        proj_sub,
        proj_quot,
    })
}

/// `dim ker(d_out) - rank(d_in)` for a composable pair
/// `C^{q-1} --d_in--> C^q --d_out--> C^{q+1}` with `d_out * d_in = 0`.
pub fn subquotient_dim(d_out: &Mat, d_in: &Mat) -> Result<usize, Error> {
    if d_out.cols() != d_in.rows() {
        return Err(Error::DimensionMismatch(format!(
            "subquotient: d_out has {} cols, d_in has {} rows",
            d_out.cols(),
            d_in.rows()
        )));
    }
    if !d_out.mul(d_in).is_zero() {
        return Err(Error::NotAComplex { degree: 0 });
    }
    let ker = d_out.cols() - rank(d_out);
    Ok(ker - rank(d_in))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_is_normalized() {
        let s = ratio(4, -6);
        assert_eq!(s, ratio(-2, 3));
        assert!(s.denom() > &BigInt::zero());
        assert!(sc(0).denom().is_one());
    }

    #[test]
    fn rank_empty_and_identity() {
        assert_eq!(rank(&Mat::zeros(0, 0)), 0);
        assert_eq!(rank(&Mat::identity(3)), 3);
    }

    #[test]
    fn rank_of_sum_index_matrix_is_two() {
        // a_{ij} = i + j (1-indexed) has rank 2; expected value frozen from
        // the dense reference elimination in tests/exactlin_oracle.rs.
        let data: Vec<Vec<i64>> = (1..=10)
            .map(|i| (1..=10).map(|j| i + j).collect())
            .collect();
        assert_eq!(rank(&Mat::from_dense_i64(&data)), 2);
    }

    #[test]
    fn kernel_identity_and_zero() {
        assert_eq!(kernel_basis(&Mat::identity(4)).dim(), 0);
        let k = kernel_basis(&Mat::zeros(2, 3));
        assert_eq!(k.dim(), 3);
    }

    #[test]
    fn kernel_of_row_vector() {
        let m = Mat::from_dense_i64(&[vec![1, 2]]);
        let k = kernel_basis(&m);
        assert_eq!(k.dim(), 1);
        assert_eq!(m.cols(), rank(&m) + k.dim());
        assert!(m.mul(&k.basis).is_zero());
        // spanned by (2, -1) up to scale
        let expected = Subspace::from_span(&Mat::from_dense_i64(&[vec![2], vec![-1]]));
        assert_eq!(Subspace::from_span(&k.basis), expected);
    }

    #[test]
    fn solve_identity_zero_and_triangular() {
        let b = Mat::from_dense_i64(&[vec![3], vec![1]]);
        assert_eq!(solve(&Mat::identity(2), &b).unwrap(), Some(b.clone()));

        assert_eq!(solve(&Mat::zeros(2, 2), &b).unwrap(), None);

        let a = Mat::from_dense_i64(&[vec![1, 1], vec![0, 1]]);
        let x = solve(&a, &b).unwrap().unwrap();
        assert_eq!(x, Mat::from_dense_i64(&[vec![2], vec![1]]));
        assert_eq!(a.mul(&x), b);
    }

    #[test]
    fn solve_shape_mismatch_errors() {
        let a = Mat::zeros(2, 2);
        let b = Mat::zeros(3, 1);
        assert!(solve(&a, &b).is_err());
    }

    #[test]
    fn subquotient_examples() {
        // zero maps in and out of k^n
        let d_out = Mat::zeros(0, 4);
        let d_in = Mat::zeros(4, 0);
        assert_eq!(subquotient_dim(&d_out, &d_in).unwrap(), 4);

        // injective d_out forces 0
        let d_out = Mat::identity(3);
        let d_in = Mat::zeros(3, 0);
        assert_eq!(subquotient_dim(&d_out, &d_in).unwrap(), 0);

        // circle complex: k -> k^2 -> 0
        let d_in = Mat::from_dense_i64(&[vec![1], vec![-1]]);
        let d_out = Mat::zeros(0, 2);
        assert_eq!(subquotient_dim(&d_out, &d_in).unwrap(), 1);
    }

    #[test]
    fn subquotient_rejects_nonzero_composite() {
        let d_in = Mat::identity(2);
        let d_out = Mat::identity(2);
        assert!(matches!(
            subquotient_dim(&d_out, &d_in),
            Err(Error::NotAComplex { .. })
        ));
    }

    #[test]
    fn pivot_columns_skip_dependent_columns() {
        // col2 = col0 + col1
        let m = Mat::from_dense_i64(&[vec![1, 0, 1, 5], vec![0, 1, 1, 0]]);
        assert_eq!(pivot_columns(&m), vec![0, 1]);
        assert_eq!(image_basis(&m).cols(), 2);
    }

    #[test]
    fn subspace_canonical_equality() {
        let a = Subspace::from_span(&Mat::from_dense_i64(&[vec![1, 1], vec![0, 2], vec![0, 0]]));
        let b = Subspace::from_span(&Mat::from_dense_i64(&[vec![3, 1], vec![2, 1], vec![0, 0]]));
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains_vec(&Mat::from_dense_i64(&[vec![5], vec![7], vec![0]])));
        assert!(!a.contains_vec(&Mat::from_dense_i64(&[vec![0], vec![0], vec![1]])));
    }

    #[test]
    fn rational_entries_survive_elimination() {
        let mut m = Mat::zeros(2, 2);
        m.set(0, 0, ratio(1, 2));
        m.set(0, 1, ratio(1, 3));
        m.set(1, 0, ratio(3, 2));
        m.set(1, 1, ratio(1, 1));
        assert_eq!(rank(&m), 1);
        let k = kernel_basis(&m);
        assert_eq!(k.dim(), 1);
        assert!(m.mul(&k.basis).is_zero());
    }
}
