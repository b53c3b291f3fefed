use crate::error::{Error, Result};
use crate::exactla::multiindex::{lin, tuples};
use crate::exactla::sparse::{self, Accumulator, SparseVec};
use crate::exactla::{Field, Matrix};

use super::fi::{validate_fi, FiReport};
use super::NAlgebra;

/// Three binary products on a `dim`-dimensional space, each `dim^2 x dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialgebraData {
    pub field: Field,
    pub dim: usize,
    /// `x ⊣ y`
    pub left: Matrix,
    /// `x ⊢ y`
    pub right: Matrix,
    /// `x ⊥ y`
    pub middle: Matrix,
}

impl TrialgebraData {
    pub fn new(field: Field, dim: usize, left: Matrix, right: Matrix, middle: Matrix) -> Result<Self> {
        for m in [&left, &right, &middle] {
            if m.field() != field {
                return Err(Error::FieldMismatch(field.to_string(), m.field().to_string()));
            }
            if m.rows() != dim * dim || m.cols() != dim {
                return Err(Error::DimensionMismatch { expected: dim * dim, found: m.rows() });
            }
        }
        Ok(TrialgebraData { field, dim, left, right, middle })
    }
}

/// `[x, y, z] = x ⊣ (y ⊥ z - z ⊥ y) - (y ⊥ z - z ⊥ y) ⊢ x`, with the
/// identity check on the result.
pub fn from_trialgebra(t: &TrialgebraData) -> (NAlgebra, FiReport) {
    let d = t.dim;
    let minus = t.field.from_i64(-1);
    let mut data: Vec<SparseVec> = Vec::with_capacity(d * d * d);
    for xyz in tuples(d, 3) {
        let (x, y, z) = (xyz[0], xyz[1], xyz[2]);
        let w = sparse::add_scaled(t.middle.row(lin(&[y, z], d)), &minus, t.middle.row(lin(&[z, y], d)));
        let mut acc = Accumulator::new();
        for (k, c) in &w {
            acc.add_scaled(c, t.left.row(lin(&[x, *k], d)));
            acc.add_scaled(&(&minus * c), t.right.row(lin(&[*k, x], d)));
        }
        data.push(acc.finish());
    }
    let structure = Matrix::from_rows(t.field, d, data).expect("shape checked");
    let a = NAlgebra::new(t.field, 3, d, structure).expect("shape checked");
    let report = validate_fi(&a);
    (a, report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn exhaustive_fi(a: &NAlgebra) -> bool {
        let units: Vec<SparseVec> = (0..a.dim()).map(|i| a.unit(i)).collect();
        tuples(a.dim(), 3).all(|x| {
            tuples(a.dim(), 2).all(|y| {
                let e = |k: usize| &units[k];
                let inner = a.bracket_sparse(&[e(x[0]), e(x[1]), e(x[2])]);
                let lhs = a.bracket_sparse(&[&inner, e(y[0]), e(y[1])]);
                let mut acc = Accumulator::new();
                for i in 0..3 {
                    let b = a.bracket_sparse(&[e(x[i]), e(y[0]), e(y[1])]);
                    let mut args = vec![e(x[0]), e(x[1]), e(x[2])];
                    args[i] = &b;
                    acc.add_scaled(&a.field().one(), &a.bracket_sparse(&args));
                }
                lhs == acc.finish()
            })
        })
    }

    #[test]
    fn zero_products_give_abelian() {
        let q = Field::Rational;
        let z = Matrix::zeros(q, 4, 2);
        let t = TrialgebraData::new(q, 2, z.clone(), z.clone(), z).unwrap();
        let (a, r) = from_trialgebra(&t);
        assert!(a.is_abelian());
        assert!(r.passed());
    }

    #[test]
    fn commutative_middle_product_gives_zero_bracket() {
        let q = Field::Rational;
        let m = Matrix::from_i64(q, &[&[1]]);
        let t = TrialgebraData::new(q, 1, m.clone(), m.clone(), m).unwrap();
        let (a, r) = from_trialgebra(&t);
        assert!(a.is_abelian());
        assert!(r.passed());
    }

    #[test]
    fn random_data_agrees_with_exhaustive_check() {
        let q = Field::Rational;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut seen = [0usize; 2];
        for _ in 0..20 {
            let mut gen = || {
                let rows: Vec<Vec<i64>> = (0..4).map(|_| (0..2).map(|_| rng.gen_range(-1..=1)).collect()).collect();
                let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
                Matrix::from_i64(q, &refs)
            };
            let t = TrialgebraData::new(q, 2, gen(), gen(), gen()).unwrap();
            let (a, r) = from_trialgebra(&t);
            assert_eq!(r.passed(), exhaustive_fi(&a));
            seen[r.passed() as usize] += 1;
        }
        assert!(seen[0] > 0);
    }
}
