//! Incremental row reduction.
//!
//! [`RowReducer`] keeps a basis in reduced row echelon form: every stored row
//! has a unit pivot and zeros in all other pivot columns. Reducing a vector
//! against such a basis only touches the basis rows whose pivot columns the
//! vector hits, so very tall sparse matrices (boundary operators) can be
//! streamed through one row at a time.

use super::scalar::{Field, Scalar};
use super::sparse::{self, Accumulator, SparseVec};

#[derive(Debug, Clone)]
pub struct RowReducer {
    field: Field,
    cols: usize,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
    row_of_pivot: Vec<Option<usize>>,
}

impl RowReducer {
    pub fn new(field: Field, cols: usize) -> Self {
        RowReducer { field, cols, rows: Vec::new(), pivots: Vec::new(), row_of_pivot: vec![None; cols] }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    /// Residual of `v` modulo the current row space. Zero iff `v` lies in it.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        if !v.iter().any(|(c, _)| self.row_of_pivot[*c].is_some()) {
            return v.clone();
        }
        let mut acc = Accumulator::new();
        for (c, x) in v {
            match self.row_of_pivot[*c] {
                None => acc.add(*c, x),
                Some(r) => {
                    let m = -x;
                    for (j, y) in &self.rows[r] {
                        if *j != *c {
                            acc.add_product(*j, &m, y);
                        }
                    }
                }
            }
        }
        acc.finish()
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the spanning set. Returns the new pivot column if `v` was
    /// independent of the current rows.
    pub fn insert(&mut self, v: &SparseVec) -> Option<usize> {
        if self.is_full() {
            return None;
        }
        let r = self.reduce(v);
        let (pc, lead) = r.first()?.clone();
        let inv = lead.inv().expect("nonzero lead");
        let r = sparse::scale(&r, &inv);
        for row in self.rows.iter_mut() {
            if let Some(x) = sparse::get(row, pc) {
                let m = -x;
                *row = sparse::add_scaled(row, &m, &r);
            }
        }
        self.row_of_pivot[pc] = Some(self.rows.len());
        self.rows.push(r);
        self.pivots.push(pc);
        Some(pc)
    }

    /// Basis rows sorted by pivot column, with their pivots.
    pub fn into_rref(self) -> (Vec<SparseVec>, Vec<usize>) {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let mut rows = self.rows;
        let pivots = order.iter().map(|&i| self.pivots[i]).collect();
        let sorted = order.iter().map(|&i| std::mem::take(&mut rows[i])).collect();
        (sorted, pivots)
    }

    pub fn rref(&self) -> (Vec<SparseVec>, Vec<usize>) {
        self.clone().into_rref()
    }

    /// Coordinates of `v` with respect to the basis rows in pivot order, if
    /// `v` lies in the row space.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        let mut piv: Vec<usize> = self.pivots.clone();
        piv.sort_unstable();
        Some(piv.iter().map(|c| sparse::get(v, *c).cloned().unwrap_or_else(|| self.field.zero())).collect())
    }
}
