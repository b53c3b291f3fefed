use crate::error::{Error, Result};
use crate::exactla::multiindex::{self, lin, tuples};
use crate::exactla::sparse::{self, Accumulator, SparseVec};
use crate::exactla::{Field, Matrix, Scalar};

/// A Leibniz n-algebra given by structure constants.
///
/// Row `lin(i_1..i_n)` of `structure` holds the coordinates of
/// `[e_{i_1},...,e_{i_n}]` (0-based basis indices).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NAlgebra {
    field: Field,
    arity: usize,
    dim: usize,
    structure: Matrix,
}

impl NAlgebra {
    pub fn new(field: Field, arity: usize, dim: usize, structure: Matrix) -> Result<Self> {
        if arity < 2 {
            return Err(Error::Invalid(format!("arity must be at least 2, got {arity}")));
        }
        if structure.field() != field {
            return Err(Error::FieldMismatch(field.to_string(), structure.field().to_string()));
        }
        let rows = multiindex::pow(dim, arity)?;
        if structure.rows() != rows {
            return Err(Error::DimensionMismatch { expected: rows, found: structure.rows() });
        }
        if structure.cols() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: structure.cols() });
        }
        Ok(NAlgebra { field, arity, dim, structure })
    }

    pub fn abelian(field: Field, dim: usize, arity: usize) -> Result<Self> {
        let rows = multiindex::pow(dim, arity)?;
        NAlgebra::new(field, arity, dim, Matrix::zeros(field, rows, dim))
    }

    /// Builds an algebra from a list of nonzero basis brackets with 0-based
    /// indices. Unlisted brackets are zero; repeated entries are summed.
    pub fn from_brackets(field: Field, arity: usize, dim: usize, brackets: &[(Vec<usize>, SparseVec)]) -> Result<Self> {
        let rows = multiindex::pow(dim, arity)?;
        let mut data: Vec<SparseVec> = vec![Vec::new(); rows];
        for (slots, value) in brackets {
            if slots.len() != arity {
                return Err(Error::ArityMismatch(arity, slots.len()));
            }
            if let Some(&bad) = slots.iter().find(|&&i| i >= dim) {
                return Err(Error::OutOfRange { index: bad, bound: dim });
            }
            let r = lin(slots, dim);
            data[r] = sparse::add_scaled(&data[r], &field.one(), value);
        }
        NAlgebra::new(field, arity, dim, Matrix::from_rows(field, dim, data)?)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure(&self) -> &Matrix {
        &self.structure
    }

    pub fn into_structure(self) -> Matrix {
        self.structure
    }

    pub fn unit(&self, i: usize) -> SparseVec {
        vec![(i, self.field.one())]
    }

    /// `[e_{x_1},...,e_{x_n}]`.
    pub fn basis_bracket(&self, x: &[usize]) -> &SparseVec {
        self.structure.row(lin(x, self.dim))
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.is_zero()
    }

    /// Number of basis tuples with a nonzero bracket.
    pub fn nonzero_brackets(&self) -> usize {
        self.structure.sparse_rows().iter().filter(|r| !r.is_empty()).count()
    }

    /// Multilinear bracket of sparse coordinate vectors.
    pub fn bracket_sparse(&self, args: &[&SparseVec]) -> SparseVec {
        debug_assert_eq!(args.len(), self.arity);
        let mut acc = Accumulator::new();
        self.expand(args, 0, 0, &self.field.one(), &mut acc);
        acc.finish()
    }

    fn expand(&self, args: &[&SparseVec], t: usize, index: usize, coef: &Scalar, acc: &mut Accumulator) {
        if t == args.len() {
            acc.add_scaled(coef, self.structure.row(index));
            return;
        }
        for (i, x) in args[t].iter() {
            self.expand(args, t + 1, index * self.dim + i, &(coef * x), acc);
        }
    }

    pub fn bracket_eval(&self, args: &[Vec<Scalar>]) -> Result<Vec<Scalar>> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch(self.arity, args.len()));
        }
        let mut sp = Vec::with_capacity(args.len());
        for a in args {
            if a.len() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, found: a.len() });
            }
            if let Some(x) = a.iter().find(|x| x.field() != self.field) {
                return Err(Error::FieldMismatch(self.field.to_string(), x.field().to_string()));
            }
            sp.push(sparse::from_dense(a));
        }
        let refs: Vec<&SparseVec> = sp.iter().collect();
        Ok(sparse::to_dense(self.field, &self.bracket_sparse(&refs), self.dim))
    }

    /// Bracket with `v` in position `slot` and basis vectors `rest` in the
    /// remaining positions, in order.
    pub fn slot_bracket(&self, v: &SparseVec, slot: usize, rest: &[usize]) -> SparseVec {
        let mut x = Vec::with_capacity(self.arity);
        x.extend_from_slice(&rest[..slot]);
        x.push(0);
        x.extend_from_slice(&rest[slot..]);
        let mut acc = Accumulator::new();
        for (k, c) in v {
            x[slot] = *k;
            acc.add_scaled(c, self.basis_bracket(&x));
        }
        acc.finish()
    }

    /// `ad_{x_2..x_n}`: the d x d matrix of `z -> [z, x_2, ..., x_n]`.
    pub fn ad_map(&self, ys: &[Vec<Scalar>]) -> Result<Matrix> {
        if ys.len() + 1 != self.arity {
            return Err(Error::ArityMismatch(self.arity - 1, ys.len()));
        }
        let mut sp = Vec::with_capacity(ys.len());
        for y in ys {
            if y.len() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, found: y.len() });
            }
            sp.push(sparse::from_dense(y));
        }
        Ok(self.ad_sparse(&sp))
    }

    pub fn ad_sparse(&self, ys: &[SparseVec]) -> Matrix {
        let rows = (0..self.dim)
            .map(|z| {
                let e = self.unit(z);
                let mut args: Vec<&SparseVec> = vec![&e];
                args.extend(ys.iter());
                self.bracket_sparse(&args)
            })
            .collect();
        Matrix::from_rows_unchecked(self.field, self.dim, rows)
    }

    /// `ad` for a basis tuple `y`: row `z` is `[e_z, e_{y_2}, ...]`.
    pub fn ad_basis(&self, y: &[usize]) -> Matrix {
        let mut x = Vec::with_capacity(self.arity);
        x.push(0);
        x.extend_from_slice(y);
        let rows = (0..self.dim)
            .map(|z| {
                x[0] = z;
                self.basis_bracket(&x).clone()
            })
            .collect();
        Matrix::from_rows_unchecked(self.field, self.dim, rows)
    }

    /// Checks that `f` is a derivation: `f[x_1..x_n] = sum_i [.., f x_i, ..]`
    /// on all basis tuples.
    pub fn is_derivation(&self, f: &Matrix) -> bool {
        if f.rows() != self.dim || f.cols() != self.dim || f.field() != self.field {
            return false;
        }
        let units: Vec<SparseVec> = (0..self.dim).map(|i| self.unit(i)).collect();
        tuples(self.dim, self.arity).all(|x| {
            let lhs = f.apply(self.basis_bracket(&x));
            let mut acc = Accumulator::new();
            for i in 0..self.arity {
                let mut args: Vec<&SparseVec> = x.iter().map(|&k| &units[k]).collect();
                args[i] = f.row(x[i]);
                acc.add_scaled(&self.field.one(), &self.bracket_sparse(&args));
            }
            lhs == acc.finish()
        })
    }

    /// The same algebra in the basis given by the rows of `t` (old
    /// coordinates): `C' = t^{(x) n} C t^{-1}`.
    pub fn transport(&self, t: &Matrix) -> Result<NAlgebra> {
        if t.shape() != (self.dim, self.dim) {
            return Err(Error::DimensionMismatch { expected: self.dim, found: t.rows() });
        }
        let mut inv = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            inv.push(t.solve_left(&self.unit(i)).ok_or_else(|| Error::Invalid("basis change is singular".into()))?);
        }
        let inv = Matrix::from_rows(self.field, self.dim, inv)?;
        let rows = tuples(self.dim, self.arity)
            .map(|x| {
                let args: Vec<&SparseVec> = x.iter().map(|&k| t.row(k)).collect();
                inv.apply(&self.bracket_sparse(&args))
            })
            .collect();
        NAlgebra::new(self.field, self.arity, self.dim, Matrix::from_rows_unchecked(self.field, self.dim, rows))
    }

    /// Skew-symmetry, checked on adjacent transpositions, which generate the
    /// symmetric group.
    pub fn is_skew_symmetric(&self) -> bool {
        let one = self.field.one();
        tuples(self.dim, self.arity).all(|x| {
            (0..self.arity - 1).all(|i| {
                let mut t = x.clone();
                t.swap(i, i + 1);
                sparse::add_scaled(self.basis_bracket(&x), &one, self.basis_bracket(&t)).is_empty()
            })
        })
    }
}

/// A linear map between algebras of the same field and arity, as a
/// `dim source x dim target` matrix acting on row vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    pub source: NAlgebra,
    pub target: NAlgebra,
    pub matrix: Matrix,
}

impl Homomorphism {
    pub fn new(source: NAlgebra, target: NAlgebra, matrix: Matrix) -> Result<Self> {
        if source.field() != target.field() {
            return Err(Error::FieldMismatch(source.field().to_string(), target.field().to_string()));
        }
        if source.arity() != target.arity() {
            return Err(Error::ArityMismatch(source.arity(), target.arity()));
        }
        if matrix.field() != source.field() {
            return Err(Error::FieldMismatch(source.field().to_string(), matrix.field().to_string()));
        }
        if matrix.rows() != source.dim() {
            return Err(Error::DimensionMismatch { expected: source.dim(), found: matrix.rows() });
        }
        if matrix.cols() != target.dim() {
            return Err(Error::DimensionMismatch { expected: target.dim(), found: matrix.cols() });
        }
        Ok(Homomorphism { source, target, matrix })
    }

    pub fn identity(a: &NAlgebra) -> Self {
        Homomorphism { source: a.clone(), target: a.clone(), matrix: Matrix::identity(a.field(), a.dim()) }
    }

    /// Exhaustive check of `f[x_1..x_n] = [f x_1, ..., f x_n]` on basis tuples.
    pub fn is_homomorphism(&self) -> bool {
        self.first_violation().is_none()
    }

    /// The first basis tuple on which the bracket is not preserved.
    pub fn first_violation(&self) -> Option<Vec<usize>> {
        let src = &self.source;
        let tgt = &self.target;
        tuples(src.dim(), src.arity()).find(|x| {
            let lhs = self.matrix.apply(src.basis_bracket(x));
            let args: Vec<&SparseVec> = x.iter().map(|&k| self.matrix.row(k)).collect();
            lhs != tgt.bracket_sparse(&args)
        })
    }

    pub fn compose(&self, then: &Homomorphism) -> Result<Homomorphism> {
        Homomorphism::new(self.source.clone(), then.target.clone(), self.matrix.mul(&then.matrix)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nalg::corpus;

    #[test]
    fn basis_brackets_from_examples() {
        let q = Field::Rational;
        let v = corpus::ex22v();
        let e = |i: usize| sparse::to_dense(q, &vec![(i, q.one())], 2);
        assert_eq!(v.bracket_eval(&[e(0), e(1), e(1)]).unwrap(), e(0));

        let a = corpus::ex51i();
        let f = |i: usize| sparse::to_dense(q, &vec![(i, q.one())], 4);
        let minus_e1 = sparse::to_dense(q, &vec![(0, q.from_i64(-1))], 4);
        assert_eq!(a.bracket_eval(&[f(1), f(2), f(3)]).unwrap(), minus_e1);
    }

    #[test]
    fn abelian_bracket_vanishes() {
        let a = NAlgebra::abelian(Field::Rational, 3, 3).unwrap();
        let v = vec![Field::Rational.from_i64(2); 3];
        assert!(a.bracket_eval(&[v.clone(), v.clone(), v]).unwrap().iter().all(Scalar::is_zero));
        let ones = vec![Field::Rational.one(); 3];
        assert!(a.ad_map(&[ones.clone(), ones]).unwrap().is_zero());
    }

    #[test]
    fn ad_of_second_basis_vector_in_ex22v() {
        let q = Field::Rational;
        let a = corpus::ex22v();
        let e2 = sparse::to_dense(q, &vec![(1, q.one())], 2);
        let ad = a.ad_map(&[e2.clone(), e2]).unwrap();
        assert_eq!(ad, Matrix::from_i64(q, &[&[1, 0], &[0, 0]]));
    }

    #[test]
    fn ad_maps_of_ex51i_are_derivations() {
        let a = corpus::ex51i();
        for y in tuples(4, 2) {
            assert!(a.is_derivation(&a.ad_basis(&y)));
        }
    }

    #[test]
    fn skew_symmetry() {
        assert!(corpus::ex51i().is_skew_symmetric());
        assert!(!corpus::ex22v().is_skew_symmetric());
    }

    #[test]
    fn bracket_eval_rejects_bad_lengths() {
        let a = corpus::ex22v();
        let q = Field::Rational;
        assert!(matches!(
            a.bracket_eval(&[vec![q.one(); 3], vec![q.one(); 2], vec![q.one(); 2]]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn identity_is_homomorphism() {
        for (_, a) in corpus::corpus() {
            assert!(Homomorphism::identity(&a).is_homomorphism());
        }
    }
}
