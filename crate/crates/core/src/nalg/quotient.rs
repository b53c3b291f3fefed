use crate::error::{Error, Result};
use crate::exactla::multiindex::{self, lin, tuples};
use crate::exactla::sparse::SparseVec;
use crate::exactla::{Matrix, Subspace};

use super::ideals::is_ideal;
use super::{Homomorphism, NAlgebra};

/// `L / I` with its projection and a 0/1 section.
///
/// The quotient basis is the images of the standard basis vectors at the
/// non-pivot columns of the ideal's reduced basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientPresentation {
    pub parent: NAlgebra,
    pub ideal: Subspace,
    pub quotient: NAlgebra,
    pub projection: Homomorphism,
    /// `dim quotient x dim parent`; row `t` is the representative of basis
    /// vector `t` of the quotient.
    pub section: Matrix,
}

/// Projection `d x |Q|` onto the non-pivot coordinates `Q` of `s`'s rref.
pub fn projection_matrix(s: &Subspace) -> Matrix {
    let d = s.ambient_dim();
    let field = s.field();
    let q = s.non_pivots();
    let mut pos = vec![usize::MAX; d];
    for (t, &j) in q.iter().enumerate() {
        pos[j] = t;
    }
    let mut rows: Vec<SparseVec> = vec![Vec::new(); d];
    for &j in &q {
        rows[j] = vec![(pos[j], field.one())];
    }
    for (r, &p) in s.pivots().iter().enumerate() {
        rows[p] = s.basis().row(r).iter().filter(|(j, _)| *j != p).map(|(j, c)| (pos[*j], -c)).collect();
    }
    Matrix::from_rows(field, q.len(), rows).expect("projection rows are sorted")
}

pub fn quotient(a: &NAlgebra, ideal: &Subspace) -> Result<QuotientPresentation> {
    if !is_ideal(a, ideal)? {
        return Err(Error::NotAnIdeal);
    }
    let field = a.field();
    let n = a.arity();
    let q = ideal.non_pivots();
    let qd = q.len();
    let pi = projection_matrix(ideal);
    let section = Matrix::from_rows(field, a.dim(), q.iter().map(|&j| vec![(j, field.one())]).collect())?;

    let rows = multiindex::pow(qd, n)?;
    let mut data: Vec<SparseVec> = Vec::with_capacity(rows);
    let mut rep = vec![0; n];
    for t in tuples(qd, n) {
        for (k, &i) in t.iter().enumerate() {
            rep[k] = q[i];
        }
        data.push(pi.apply(a.structure().row(lin(&rep, a.dim()))));
    }
    let quotient = NAlgebra::new(field, n, qd, Matrix::from_rows(field, qd, data)?)?;
    let projection = Homomorphism::new(a.clone(), quotient.clone(), pi)?;
    if let Some(x) = projection.first_violation() {
        return Err(Error::IllDefined(format!("induced bracket not well defined at basis tuple {x:?}")));
    }
    Ok(QuotientPresentation { parent: a.clone(), ideal: ideal.clone(), quotient, projection, section })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Field;
    use crate::nalg::{corpus, ideals};

    fn check_presentation(p: &QuotientPresentation) {
        let id = Matrix::identity(p.quotient.field(), p.quotient.dim());
        assert_eq!(p.section.mul(&p.projection.matrix).unwrap(), id);
        assert_eq!(p.projection.matrix.map_kernel(), p.ideal);
        assert_eq!(p.projection.matrix.map_image().dim(), p.quotient.dim());
        let n = p.parent.arity();
        for t in tuples(p.quotient.dim(), n) {
            let args: Vec<&SparseVec> = t.iter().map(|&k| p.section.row(k)).collect();
            let rep = p.parent.bracket_sparse(&args);
            assert_eq!(&p.projection.matrix.apply(&rep), p.quotient.basis_bracket(&t));
        }
    }

    #[test]
    fn trivial_quotients() {
        for (_, a) in corpus::corpus() {
            let zero = Subspace::zero(a.field(), a.dim());
            let p = quotient(&a, &zero).unwrap();
            assert_eq!(p.quotient, a);
            assert_eq!(p.projection.matrix, Matrix::identity(a.field(), a.dim()));
            check_presentation(&p);
            let full = Subspace::full(a.field(), a.dim());
            let p = quotient(&a, &full).unwrap();
            assert_eq!(p.quotient.dim(), 0);
            check_presentation(&p);
        }
    }

    #[test]
    fn ex22v_modulo_derived_ideal_is_abelian_line() {
        let v = corpus::ex22v();
        let p = quotient(&v, &Subspace::coordinate(Field::Rational, 2, &[0])).unwrap();
        assert_eq!(p.quotient, NAlgebra::abelian(Field::Rational, 1, 3).unwrap());
        check_presentation(&p);
    }

    #[test]
    fn non_coordinate_ideal() {
        let a = corpus::ex51ii();
        let i = ideals::ideal_closure(&a, &Subspace::coordinate(Field::Rational, 5, &[3])).unwrap();
        let p = quotient(&a, &i).unwrap();
        check_presentation(&p);
        assert!(crate::nalg::validate_fi(&p.quotient).passed());
    }

    #[test]
    fn rejects_non_ideal() {
        let a = corpus::ex51i();
        assert_eq!(quotient(&a, &Subspace::coordinate(Field::Rational, 4, &[0])), Err(Error::NotAnIdeal));
    }
}
