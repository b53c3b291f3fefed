//! Fraction-free (Bareiss) Gauss-Jordan elimination.
//!
//! A second, independent elimination path. Rational matrices are scaled row
//! by row to integer matrices and eliminated with exact integer division by
//! the previous pivot, so intermediate entries are minors of the input and
//! never fractions. Prime-field matrices use plain dense Gauss-Jordan.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::Matrix;
use super::scalar::{Field, Scalar};
use super::sparse;

/// Rank and RREF computed without rational intermediate arithmetic.
pub fn fraction_free_rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    match m.field() {
        Field::Rational => bareiss_rational(m),
        Field::Prime(p) => gauss_jordan_prime(m, p),
    }
}

pub fn fraction_free_rank(m: &Matrix) -> usize {
    fraction_free_rref(m).1.len()
}

#[allow(clippy::needless_range_loop)]
fn bareiss_rational(m: &Matrix) -> (Matrix, Vec<usize>) {
    let (rows, cols) = m.shape();
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            let dense = m.row_dense(i);
            let lcm = dense.iter().map(|x| x.as_rational().unwrap().denom().clone()).fold(BigInt::one(), |acc, d| acc.lcm(&d));
            dense
                .iter()
                .map(|x| {
                    let r = x.as_rational().unwrap();
                    r.numer() * (&lcm / r.denom())
                })
                .collect()
        })
        .collect();

    let mut prev = BigInt::one();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pr);
        let piv = a[r][c].clone();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..cols {
                let num = &piv * &a[i][j] - &f * &a[r][j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "inexact Bareiss division");
                a[i][j] = q;
            }
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }

    let mut out = Matrix::zeros(Field::Rational, rows, cols);
    for (i, &c) in pivots.iter().enumerate() {
        let lead = a[i][c].clone();
        let row: Vec<Scalar> = a[i].iter().map(|x| Scalar::Rational(BigRational::new(x.clone(), lead.clone()))).collect();
        out.set_row(i, sparse::from_dense(&row));
    }
    (out, pivots)
}

#[allow(clippy::needless_range_loop)]
fn gauss_jordan_prime(m: &Matrix, p: u32) -> (Matrix, Vec<usize>) {
    let (rows, cols) = m.shape();
    let p = p as u64;
    let mut a: Vec<Vec<u64>> = (0..rows)
        .map(|i| {
            m.row_dense(i)
                .iter()
                .map(|x| match x {
                    Scalar::Prime { value, .. } => *value as u64,
                    Scalar::Rational(_) => unreachable!(),
                })
                .collect()
        })
        .collect();
    let inv = |x: u64| {
        let (mut b, mut e, mut acc) = (x % p, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    };
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, pr);
        let s = inv(a[r][c]);
        for x in a[r].iter_mut() {
            *x = *x * s % p;
        }
        for i in 0..rows {
            if i == r || a[i][c] == 0 {
                continue;
            }
            let f = a[i][c];
            for j in 0..cols {
                a[i][j] = (a[i][j] + p * p - f * a[r][j] % p) % p;
            }
        }
        pivots.push(c);
        r += 1;
    }
    let field = Field::Prime(p as u32);
    let mut out = Matrix::zeros(field, rows, cols);
    for (i, row) in a.iter().enumerate().take(pivots.len()) {
        let row: Vec<Scalar> = row.iter().map(|&x| field.from_i64(x as i64)).collect();
        out.set_row(i, sparse::from_dense(&row));
    }
    (out, pivots)
}
