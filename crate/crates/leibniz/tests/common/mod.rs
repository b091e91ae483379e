//! Shared test oracles: a naive dense Gaussian elimination over the
//! rationals, independent of the library's sparse elimination path.

use leibniz::exactlin::{Mat, Scalar};
use num_traits::Zero;

/// Rank by textbook dense elimination with exact rational arithmetic.
pub fn dense_rank(m: &Mat) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<Scalar>> = (0..rows)
        .map(|r| (0..cols).map(|c| m.get(r, c)).collect())
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        let pivot = (rank..rows).find(|&r| !a[r][col].is_zero());
        let Some(pivot) = pivot else { continue };
        a.swap(rank, pivot);
        let pv = a[rank][col].clone();
        for r in 0..rows {
            if r != rank && !a[r][col].is_zero() {
                let factor = &a[r][col] / &pv;
                for c in col..cols {
                    let sub = &a[rank][c] * &factor;
                    a[r][c] = &a[r][c] - &sub;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// `dim ker(d_out) - rank(d_in)` by the dense route.
pub fn dense_subquotient_dim(d_out: &Mat, d_in: &Mat) -> usize {
    let ker = d_out.cols() - dense_rank(d_out);
    ker - dense_rank(d_in)
}
