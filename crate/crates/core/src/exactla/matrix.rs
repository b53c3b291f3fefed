//! Exact matrices.
//!
//! Storage is row-sparse: each row is a [`SparseVec`]. Linear maps between
//! coordinate spaces act on row vectors from the right, so a map `V -> W` is a
//! `dim V x dim W` matrix and composition `f` then `g` is `F * G`.
//! [`Matrix::kernel_basis`] and [`Matrix::image_basis`] follow the
//! column-vector reading of the same array; [`Matrix::map_kernel`] and
//! [`Matrix::map_image`] follow the row-vector (map) reading.

use std::fmt;

use super::reduce::RowReducer;
use super::scalar::{Field, Scalar};
use super::sparse::{self, Accumulator, SparseVec};
use super::subspace::Subspace;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let data = (0..n).map(|i| vec![(i, field.one())]).collect();
        Matrix { field, rows: n, cols: n, data }
    }

    /// Builds from dense rows; all entries must belong to `field`.
    pub fn from_dense(field: Field, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: entries.len() });
        }
        if let Some(bad) = entries.iter().find(|x| x.field() != field) {
            return Err(Error::FieldMismatch(field.to_string(), bad.field().to_string()));
        }
        let data = entries.chunks(cols.max(1)).take(rows).map(sparse::from_dense).collect();
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged rows");
                sparse::from_dense(&r.iter().map(|x| field.from_i64(*x)).collect::<Vec<_>>())
            })
            .collect();
        Matrix { field, rows: rows.len(), cols, data }
    }

    /// Builds from sparse rows. Entries must be sorted, nonzero, in range and
    /// of the given field.
    pub fn from_rows(field: Field, cols: usize, data: Vec<SparseVec>) -> Result<Self> {
        for row in &data {
            for w in row.windows(2) {
                if w[0].0 >= w[1].0 {
                    return Err(Error::Invalid("sparse row not strictly sorted".into()));
                }
            }
            for (j, x) in row {
                if *j >= cols {
                    return Err(Error::OutOfRange { index: *j, bound: cols });
                }
                if x.field() != field {
                    return Err(Error::FieldMismatch(field.to_string(), x.field().to_string()));
                }
                if x.is_zero() {
                    return Err(Error::Invalid("explicit zero in sparse row".into()));
                }
            }
        }
        Ok(Matrix { field, rows: data.len(), cols, data })
    }

    pub(crate) fn from_rows_unchecked(field: Field, cols: usize, data: Vec<SparseVec>) -> Self {
        Matrix { field, rows: data.len(), cols, data }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn row_dense(&self, i: usize) -> Vec<Scalar> {
        sparse::to_dense(self.field, &self.data[i], self.cols)
    }

    pub fn sparse_rows(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn into_sparse_rows(self) -> Vec<SparseVec> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        sparse::get(&self.data[i], j).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        assert_eq!(v.field(), self.field, "field mismatch");
        let row = &mut self.data[i];
        match row.binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) if v.is_zero() => {
                row.remove(k);
            }
            Ok(k) => row[k].1 = v,
            Err(_) if v.is_zero() => {}
            Err(k) => row.insert(k, (j, v)),
        }
    }

    pub fn set_row(&mut self, i: usize, v: SparseVec) {
        self.data[i] = v;
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row_dense(i)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut cols: Vec<SparseVec> = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, x) in row {
                cols[*j].push((i, x.clone()));
            }
        }
        Matrix { field: self.field, rows: self.cols, cols: self.rows, data: cols }
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, x) in v {
            acc.add_scaled(x, &self.data[*i]);
        }
        acc.finish()
    }

    pub fn apply_dense(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: v.len() });
        }
        Ok(sparse::to_dense(self.field, &self.apply(&sparse::from_dense(v)), self.cols))
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let data = self.data.iter().map(|r| other.apply(r)).collect();
        Ok(Matrix { field: self.field, rows: self.rows, cols: other.cols, data })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.combine(other, &self.field.one())
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.combine(other, &-self.field.one())
    }

    fn combine(&self, other: &Matrix, s: &Scalar) -> Result<Matrix> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch { expected: self.rows * self.cols, found: other.rows * other.cols });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| sparse::add_scaled(a, s, b)).collect();
        Ok(Matrix { field: self.field, rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|r| sparse::scale(r, s)).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    /// Kronecker product; row index `(i, k)` maps to `i * other.rows + k`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut data = Vec::with_capacity(self.rows * other.rows);
        for a in &self.data {
            for b in &other.data {
                let mut row = Vec::with_capacity(a.len() * b.len());
                for (i, x) in a {
                    for (k, y) in b {
                        row.push((i * other.cols + k, x * y));
                    }
                }
                data.push(row);
            }
        }
        Matrix { field: self.field, rows: self.rows * other.rows, cols: self.cols * other.cols, data }
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.cols });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let data = idx.iter().map(|&i| self.data[i].clone()).collect();
        Matrix { field: self.field, rows: idx.len(), cols: self.cols, data }
    }

    /// Keeps the listed columns, renumbered in the given order.
    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let mut pos = vec![None; self.cols];
        for (k, &j) in idx.iter().enumerate() {
            pos[j] = Some(k);
        }
        let data = self
            .data
            .iter()
            .map(|r| {
                let mut v: SparseVec = r.iter().filter_map(|(j, x)| pos[*j].map(|k| (k, x.clone()))).collect();
                v.sort_by_key(|(k, _)| *k);
                v
            })
            .collect();
        Matrix { field: self.field, rows: self.rows, cols: idx.len(), data }
    }

    /// The unique reduced row echelon form (same shape, zero rows last) and
    /// its strictly increasing pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut red = RowReducer::new(self.field, self.cols);
        for r in &self.data {
            red.insert(r);
        }
        let (mut rows, pivots) = red.into_rref();
        rows.resize(self.rows, Vec::new());
        (Matrix { field: self.field, rows: self.rows, cols: self.cols, data: rows }, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut red = RowReducer::new(self.field, self.cols);
        for r in &self.data {
            if red.is_full() {
                break;
            }
            red.insert(r);
        }
        red.rank()
    }

    /// `{x : M x = 0}` as a subspace of `K^cols`.
    pub fn kernel_basis(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut vecs = Vec::new();
        for f in (0..self.cols).filter(|&j| !is_pivot[j]) {
            let mut v: SparseVec = vec![(f, self.field.one())];
            for (i, &p) in pivots.iter().enumerate() {
                if let Some(x) = sparse::get(r.row(i), f) {
                    v.push((p, -x));
                }
            }
            v.sort_by_key(|(j, _)| *j);
            vecs.push(v);
        }
        Subspace::from_sparse(self.field, self.cols, &vecs)
    }

    /// Column space, as a subspace of `K^rows`.
    pub fn image_basis(&self) -> Subspace {
        Subspace::from_sparse(self.field, self.rows, &self.transpose().data)
    }

    /// Kernel of the map `v -> v M`, a subspace of `K^rows`.
    pub fn map_kernel(&self) -> Subspace {
        self.transpose().kernel_basis()
    }

    /// Some `c` with `c M = v`, if `v` lies in the row space.
    pub fn solve_left(&self, v: &SparseVec) -> Option<SparseVec> {
        let width = self.cols + self.rows;
        let mut red = RowReducer::new(self.field, width);
        for (i, r) in self.data.iter().enumerate() {
            let mut aug = r.clone();
            aug.push((self.cols + i, self.field.one()));
            red.insert(&aug);
        }
        let res = red.reduce(v);
        if res.iter().any(|(j, _)| *j < self.cols) {
            return None;
        }
        Some(res.into_iter().map(|(j, x)| (j - self.cols, -x)).collect())
    }

    /// Image of the map `v -> v M` (the row space), a subspace of `K^cols`.
    pub fn map_image(&self) -> Subspace {
        Subspace::from_sparse(self.field, self.cols, &self.data)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row_dense(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
