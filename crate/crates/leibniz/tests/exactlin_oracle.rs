//! Oracle equivalence for the sparse elimination: ranks, kernels and
//! subquotient dimensions must match a naive dense elimination, both on
//! frozen examples and on randomized inputs.

mod common;

use common::{dense_rank, dense_subquotient_dim};
use leibniz::bimodule::{lift, Parity};
use leibniz::catalog;
use leibniz::exactlin::{kernel_basis, rank, sc, solve, Mat};
use proptest::prelude::*;

#[test]
fn sum_index_matrix_rank_agrees_with_dense_oracle() {
    let data: Vec<Vec<i64>> = (1..=10)
        .map(|i| (1..=10).map(|j| i + j).collect())
        .collect();
    let m = Mat::from_dense_i64(&data);
    assert_eq!(dense_rank(&m), 2);
    assert_eq!(rank(&m), dense_rank(&m));
}

#[test]
fn leibniz_differentials_agree_with_dense_oracle() {
    let h = catalog::hemi_sl2(1).unwrap();
    let v1 = catalog::sl2_irrep(1).unwrap();
    let anti = lift(&v1, Parity::Antisymmetric, &h).unwrap();
    let complex = leibniz::cohomology::leibniz_complex(&h, &anti, 2).unwrap();
    for q in 0..=2usize {
        // well within the 200-column oracle range
        assert!(complex.d[q].cols() <= 200);
        assert_eq!(rank(&complex.d[q]), dense_rank(&complex.d[q]));
    }
    for q in 1..=2usize {
        let via_sparse =
            leibniz::exactlin::subquotient_dim(&complex.d[q], &complex.d[q - 1]).unwrap();
        let via_dense = dense_subquotient_dim(&complex.d[q], &complex.d[q - 1]);
        assert_eq!(via_sparse, via_dense);
    }
}

fn sparse_matrix_strategy() -> impl Strategy<Value = Mat> {
    (0usize..6, 0usize..6).prop_flat_map(|(rows, cols)| {
        let n = rows * cols;
        proptest::collection::vec(-3i64..=3, n).prop_map(move |vals| {
            Mat::from_triplets(
                rows,
                cols,
                vals.into_iter()
                    .enumerate()
                    .filter(|(_, v)| *v != 0)
                    .map(|(i, v)| (i / cols.max(1), i % cols.max(1), sc(v))),
            )
        })
    })
}

proptest! {
    #[test]
    fn rank_equals_dense_rank(m in sparse_matrix_strategy()) {
        prop_assert_eq!(rank(&m), dense_rank(&m));
    }

    #[test]
    fn rank_is_transpose_invariant(m in sparse_matrix_strategy()) {
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn rank_nullity_holds(m in sparse_matrix_strategy()) {
        let k = kernel_basis(&m);
        prop_assert_eq!(m.cols(), rank(&m) + k.dim());
        if k.dim() > 0 {
            prop_assert!(m.mul(&k.basis).is_zero());
        }
    }

    #[test]
    fn solve_solutions_substitute_back(a in sparse_matrix_strategy(), seed in proptest::collection::vec(-2i64..=2, 0..6)) {
        // build a consistent right-hand side from a seed vector
        let mut x = Mat::zeros(a.cols(), 1);
        for (i, v) in seed.iter().take(a.cols()).enumerate() {
            x.set(i, 0, sc(*v));
        }
        let b = a.mul(&x);
        let found = solve(&a, &b).unwrap();
        prop_assert!(found.is_some());
        prop_assert_eq!(a.mul(&found.unwrap()), b);
    }
}
