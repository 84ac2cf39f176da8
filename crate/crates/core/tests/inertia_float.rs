//! Exact inertia against the sign pattern of floating-point eigenvalues.
#![allow(clippy::needless_range_loop)]

use nalgebra::{DMatrix, SymmetricEigen};
use proptest::prelude::*;
use spintft_core::surgery::{inertia, LinkingMatrix};

fn float_inertia(rows: &[Vec<i64>]) -> (usize, usize, usize) {
    let n = rows.len();
    let m = DMatrix::from_fn(n, n, |i, j| rows[i][j] as f64);
    let eig = SymmetricEigen::new(m).eigenvalues;
    let tol = 1e-9;
    let plus = eig.iter().filter(|&&x| x > tol).count();
    let minus = eig.iter().filter(|&&x| x < -tol).count();
    (plus, minus, n - plus - minus)
}

fn check(rows: Vec<Vec<i64>>) {
    let exact = inertia(&LinkingMatrix::new(rows.clone()).unwrap());
    assert_eq!(exact.b_plus + exact.b_minus + exact.b_one, rows.len());
    assert_eq!((exact.b_plus, exact.b_minus, exact.b_one), float_inertia(&rows), "{rows:?}");
}

#[test]
fn surgery_corpus() {
    for p in 1..=9 {
        check(vec![vec![p]]);
    }
    check(vec![vec![0, 1], vec![1, 0]]);
    check(vec![vec![0; 3]; 3]);
    check(vec![vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]]);
    check(vec![vec![1, -2, 0, 3], vec![-2, -1, 2, 1], vec![0, 2, 3, -3], vec![3, 1, -3, 0]]);
}

proptest! {
    #[test]
    fn random_symmetric(n in 1usize..6, entries in proptest::collection::vec(-3i64..=3, 36)) {
        let mut rows = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in i..n {
                rows[i][j] = entries[i * 6 + j];
                rows[j][i] = entries[i * 6 + j];
            }
        }
        check(rows);
    }
}
