//! Fundamental-identity validation.
//!
//! For a fixed tuple `y = (y_2..y_n)` write `D = ad_y`. The identity on the
//! basis tuple `x` reads `[x]D = sum_i sum_k D[x_i,k] [x with x_i := k]`.
//! Both sides vanish unless `[x] != 0` or some `x[i := k]` has a nonzero
//! bracket with `D[x_i,k] != 0`, so only those candidates are evaluated.

use std::collections::BTreeSet;

use crate::exactla::multiindex::{lin, tuples, unlin};
use crate::exactla::sparse::{Accumulator, SparseVec};
use crate::exactla::Matrix;

use super::NAlgebra;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiFailure {
    /// `x_1..x_n`, 0-based.
    pub x: Vec<usize>,
    /// `y_2..y_n`, 0-based.
    pub y: Vec<usize>,
    /// `[[x_1..x_n], y_2..y_n]`.
    pub lhs: SparseVec,
    /// `sum_i [x_1..[x_i, y_2..y_n]..x_n]`.
    pub rhs: SparseVec,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiReport {
    /// Lexicographically first failing `(x, y)`, comparing `x` first.
    pub failure: Option<FiFailure>,
}

impl FiReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

pub fn validate_fi(a: &NAlgebra) -> FiReport {
    let d = a.dim();
    let n = a.arity();
    let support: Vec<usize> = (0..a.structure().rows()).filter(|&r| !a.structure().row(r).is_empty()).collect();
    let mut best: Option<(usize, usize, SparseVec, SparseVec)> = None;

    for y in tuples(d, n - 1) {
        let dm = a.ad_basis(&y);
        if dm.is_zero() {
            continue;
        }
        let dt = dm.transpose();
        let mut candidates: BTreeSet<usize> = support.iter().copied().collect();
        for &w in &support {
            let wt = unlin(w, d, n);
            for i in 0..n {
                for (z, _) in dt.row(wt[i]) {
                    let mut x = wt.clone();
                    x[i] = *z;
                    candidates.insert(lin(&x, d));
                }
            }
        }
        let ylin = lin(&y, d);
        for xl in candidates {
            if let Some((bx, by, _, _)) = &best {
                if (xl, ylin) >= (*bx, *by) {
                    break;
                }
            }
            let x = unlin(xl, d, n);
            let (lhs, rhs) = sides(a, &dm, &x);
            if lhs != rhs {
                best = Some((xl, ylin, lhs, rhs));
                break;
            }
        }
    }

    FiReport { failure: best.map(|(xl, yl, lhs, rhs)| FiFailure { x: unlin(xl, d, n), y: unlin(yl, d, n - 1), lhs, rhs }) }
}

fn sides(a: &NAlgebra, dm: &Matrix, x: &[usize]) -> (SparseVec, SparseVec) {
    let lhs = dm.apply(a.basis_bracket(x));
    let mut acc = Accumulator::new();
    let mut xs = x.to_vec();
    for i in 0..x.len() {
        for (k, c) in dm.row(x[i]) {
            xs[i] = *k;
            acc.add_scaled(c, a.basis_bracket(&xs));
        }
        xs[i] = x[i];
    }
    (lhs, acc.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Field;
    use crate::nalg::corpus;

    /// Direct evaluation of both sides with nested `bracket_sparse`.
    fn oracle(a: &NAlgebra) -> Option<(Vec<usize>, Vec<usize>)> {
        let d = a.dim();
        let n = a.arity();
        let units: Vec<SparseVec> = (0..d).map(|i| a.unit(i)).collect();
        for x in tuples(d, n) {
            for y in tuples(d, n - 1) {
                let inner = a.bracket_sparse(&x.iter().map(|&k| &units[k]).collect::<Vec<_>>());
                let mut args: Vec<&SparseVec> = vec![&inner];
                args.extend(y.iter().map(|&k| &units[k]));
                let lhs = a.bracket_sparse(&args);
                let mut acc = Accumulator::new();
                for i in 0..n {
                    let mut inner_args: Vec<&SparseVec> = vec![&units[x[i]]];
                    inner_args.extend(y.iter().map(|&k| &units[k]));
                    let b = a.bracket_sparse(&inner_args);
                    let mut outer: Vec<&SparseVec> = x.iter().map(|&k| &units[k]).collect();
                    outer[i] = &b;
                    acc.add_scaled(&a.field().one(), &a.bracket_sparse(&outer));
                }
                if lhs != acc.finish() {
                    return Some((x, y));
                }
            }
        }
        None
    }

    #[test]
    fn corpus_passes() {
        for (name, a) in corpus::corpus() {
            assert!(validate_fi(&a).passed(), "{name}");
            assert_eq!(oracle(&a), None, "{name}");
        }
    }

    #[test]
    fn characteristic_matters_for_one_dim_example() {
        let q = NAlgebra::from_brackets(Field::Rational, 3, 1, &[(vec![0, 0, 0], vec![(0, Field::Rational.one())])]).unwrap();
        let r = validate_fi(&q);
        assert!(!r.passed());
        assert_eq!(oracle(&q), Some((vec![0, 0, 0], vec![0, 0])));
        let f = r.failure.unwrap();
        assert_eq!(f.lhs, vec![(0, Field::Rational.one())]);
        assert_eq!(f.rhs, vec![(0, Field::Rational.from_i64(3))]);
        assert!(validate_fi(&corpus::ex22iv()).passed());
    }

    #[test]
    fn perturbed_ex51i_fails_at_first_oracle_tuple() {
        let a = corpus::ex51i();
        let mut s = a.structure().clone();
        s.set(lin(&[0, 1, 2], 4), 3, Field::Rational.from_i64(2));
        let b = NAlgebra::new(Field::Rational, 3, 4, s).unwrap();
        let r = validate_fi(&b);
        let f = r.failure.expect("perturbation must break the identity");
        assert_eq!(oracle(&b), Some((f.x.clone(), f.y.clone())));
        assert_ne!(f.lhs, f.rhs);
    }

    #[test]
    fn fi_iff_all_ad_maps_are_derivations() {
        let mut algebras: Vec<NAlgebra> = corpus::corpus().into_iter().map(|(_, a)| a).collect();
        let a = corpus::ex51ii();
        let mut s = a.structure().clone();
        s.set(lin(&[0, 1], 5), 2, Field::Rational.from_i64(3));
        algebras.push(NAlgebra::new(Field::Rational, 2, 5, s).unwrap());
        for a in algebras {
            let all_derivations = tuples(a.dim(), a.arity() - 1).all(|y| a.is_derivation(&a.ad_basis(&y)));
            assert_eq!(validate_fi(&a).passed(), all_derivations);
        }
    }
}
