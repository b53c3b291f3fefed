//! Shared fixtures for the benchmarks.

use leibniz_core::{Field, Matrix};

/// A dense `n x n` integer matrix with entries in `-5..=5` and rank close to `n`.
pub fn dense_matrix(n: usize) -> Matrix {
    let v: Vec<i64> = (0..n * n).map(|k| ((k / n * 7 + k % n * 13 + k * k % 17) % 11) as i64 - 5).collect();
    let rows: Vec<&[i64]> = v.chunks(n).collect();
    Matrix::from_i64(Field::Rational, &rows)
}
