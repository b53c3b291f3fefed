//! Sparse coordinate vectors: `(index, value)` pairs sorted by index with
//! no explicit zeros.

use super::scalar::{Field, Scalar};

pub type SparseVec = Vec<(usize, Scalar)>;

pub fn from_dense(v: &[Scalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn to_dense(field: Field, v: &SparseVec, len: usize) -> Vec<Scalar> {
    let mut out = vec![field.zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub fn get(v: &SparseVec, i: usize) -> Option<&Scalar> {
    v.binary_search_by_key(&i, |(j, _)| *j).ok().map(|k| &v[k].1)
}

/// `a + s * b`.
pub fn add_scaled(a: &SparseVec, s: &Scalar, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let v = s * &b[j].1;
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = &a[i].1 + &(s * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(v: &SparseVec, s: &Scalar) -> SparseVec {
    if s.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, s * x)).collect()
}

pub fn neg(v: &SparseVec) -> SparseVec {
    v.iter().map(|(i, x)| (*i, -x)).collect()
}

/// Accumulates scaled vectors; cheaper than repeated [`add_scaled`] when many
/// short vectors land in a long one.
#[derive(Debug, Default, Clone)]
pub struct Accumulator {
    terms: std::collections::BTreeMap<usize, Scalar>,
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, index: usize, value: &Scalar) {
        if value.is_zero() {
            return;
        }
        match self.terms.get_mut(&index) {
            Some(x) => *x += value,
            None => {
                self.terms.insert(index, value.clone());
            }
        }
    }

    pub fn add_product(&mut self, index: usize, a: &Scalar, b: &Scalar) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        self.add(index, &(a * b));
    }

    pub fn add_scaled(&mut self, s: &Scalar, v: &SparseVec) {
        if s.is_zero() {
            return;
        }
        for (i, x) in v {
            self.add(*i, &(s * x));
        }
    }

    pub fn finish(self) -> SparseVec {
        self.terms.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_scaled_cancels() {
        let q = Field::Rational;
        let a = vec![(0, q.from_i64(2)), (3, q.from_i64(1))];
        let b = vec![(0, q.from_i64(1)), (2, q.from_i64(5))];
        let c = add_scaled(&a, &q.from_i64(-2), &b);
        assert_eq!(c, vec![(2, q.from_i64(-10)), (3, q.from_i64(1))]);
    }

    #[test]
    fn accumulator_drops_zeros() {
        let q = Field::Rational;
        let mut acc = Accumulator::new();
        acc.add(4, &q.from_i64(1));
        acc.add(1, &q.from_i64(3));
        acc.add(4, &q.from_i64(-1));
        assert_eq!(acc.finish(), vec![(1, q.from_i64(3))]);
    }
}
