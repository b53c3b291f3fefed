//! Subspaces of a coordinate space, stored as a canonical RREF basis.

use super::matrix::Matrix;
use super::reduce::RowReducer;
use super::scalar::{Field, Scalar};
use super::sparse::{self, SparseVec};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Matrix::zeros(field, 0, ambient_dim), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Matrix::identity(field, ambient_dim), pivots: (0..ambient_dim).collect() }
    }

    /// Span of the given sparse vectors.
    pub fn from_sparse(field: Field, ambient_dim: usize, vectors: &[SparseVec]) -> Self {
        let mut red = RowReducer::new(field, ambient_dim);
        for v in vectors {
            if red.is_full() {
                break;
            }
            red.insert(v);
        }
        Self::from_reducer(red)
    }

    pub fn from_reducer(red: RowReducer) -> Self {
        let field = red.field();
        let ambient_dim = red.cols();
        let (rows, pivots) = red.into_rref();
        Subspace { ambient_dim, basis: Matrix::from_rows_unchecked(field, ambient_dim, rows), pivots }
    }

    /// Span of dense vectors; every vector must have length `ambient_dim`.
    pub fn span(field: Field, ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Result<Self> {
        let mut sp = Vec::with_capacity(vectors.len());
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, found: v.len() });
            }
            if let Some(x) = v.iter().find(|x| x.field() != field) {
                return Err(Error::FieldMismatch(field.to_string(), x.field().to_string()));
            }
            sp.push(sparse::from_dense(v));
        }
        Ok(Self::from_sparse(field, ambient_dim, &sp))
    }

    /// Span of standard basis vectors `e_i`, `i` in `idx` (0-based).
    pub fn coordinate(field: Field, ambient_dim: usize, idx: &[usize]) -> Self {
        let v: Vec<SparseVec> = idx.iter().map(|&i| vec![(i, field.one())]).collect();
        Self::from_sparse(field, ambient_dim, &v)
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Basis in reduced row echelon form, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient_dim).filter(|&j| !is_pivot[j]).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn reducer(&self) -> RowReducer {
        let mut red = RowReducer::new(self.field(), self.ambient_dim);
        for r in self.basis.sparse_rows() {
            red.insert(r);
        }
        red
    }

    /// Residual of `v` after eliminating the pivot columns.
    pub fn residual(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        for (i, &p) in self.pivots.iter().enumerate() {
            if let Some(x) = sparse::get(&out, p).cloned() {
                out = sparse::add_scaled(&out, &-x, self.basis.row(i));
            }
        }
        out
    }

    pub fn contains_sparse(&self, v: &SparseVec) -> bool {
        self.residual(v).is_empty()
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: v.len() });
        }
        Ok(self.contains_sparse(&sparse::from_dense(v)))
    }

    /// Coordinates of a member with respect to the RREF basis.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Scalar>> {
        if !self.contains_sparse(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| sparse::get(v, p).cloned().unwrap_or_else(|| self.field().zero())).collect())
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch(self.ambient_dim, other.ambient_dim));
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(self.field().to_string(), other.field().to_string()));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut red = self.reducer();
        for r in other.basis.sparse_rows() {
            red.insert(r);
        }
        Ok(Self::from_reducer(red))
    }

    /// Intersection by the Zassenhaus construction.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let n = self.ambient_dim;
        let mut red = RowReducer::new(self.field(), 2 * n);
        for r in self.basis.sparse_rows() {
            let mut v = r.clone();
            v.extend(r.iter().map(|(j, x)| (j + n, x.clone())));
            red.insert(&v);
        }
        for r in other.basis.sparse_rows() {
            red.insert(r);
        }
        let (rows, pivots) = red.into_rref();
        let inter: Vec<SparseVec> = rows
            .into_iter()
            .zip(pivots)
            .filter(|(_, p)| *p >= n)
            .map(|(r, _)| r.into_iter().map(|(j, x)| (j - n, x)).collect())
            .collect();
        Ok(Self::from_sparse(self.field(), n, &inter))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.basis.sparse_rows().iter().all(|r| other.contains_sparse(r)))
    }

    /// Image under a linear map given as a `ambient x target` matrix.
    pub fn image_under(&self, map: &Matrix) -> Result<Subspace> {
        if map.rows() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: map.rows() });
        }
        let imgs: Vec<SparseVec> = self.basis.sparse_rows().iter().map(|r| map.apply(r)).collect();
        Ok(Self::from_sparse(self.field(), map.cols(), &imgs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn coordinate_lines() {
        let a = Subspace::coordinate(Q, 2, &[0]);
        let b = Subspace::coordinate(Q, 2, &[1]);
        assert_eq!(a.sum(&b).unwrap().dim(), 2);
        assert_eq!(a.intersect(&b).unwrap().dim(), 0);
    }

    #[test]
    fn idempotent_lattice_ops() {
        let a = Subspace::span(Q, 3, &[vec![Q.one(), Q.from_i64(2), Q.zero()]]).unwrap();
        assert_eq!(a.sum(&a).unwrap(), a);
        assert_eq!(a.intersect(&a).unwrap(), a);
    }

    #[test]
    fn ambient_mismatch() {
        let a = Subspace::zero(Q, 2);
        let b = Subspace::zero(Q, 3);
        assert_eq!(a.sum(&b), Err(Error::AmbientMismatch(2, 3)));
    }

    #[test]
    fn membership() {
        let a = Subspace::span(Q, 3, &[vec![Q.one(), Q.one(), Q.zero()], vec![Q.zero(), Q.one(), Q.one()]]).unwrap();
        assert!(a.contains(&[Q.one(), Q.zero(), -Q.one()]).unwrap());
        assert!(!a.contains(&[Q.one(), Q.zero(), Q.zero()]).unwrap());
    }
}
