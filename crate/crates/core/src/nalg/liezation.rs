use crate::error::Result;
use crate::exactla::multiindex::tuples;
use crate::exactla::{sparse, RowReducer, Subspace};

use super::ideals::ideal_closure;
use super::quotient::{quotient, QuotientPresentation};
use super::NAlgebra;

/// The ideal generated by `[x] - sgn(s)[s x]` for all basis tuples and
/// permutations. Adjacent transpositions generate the symmetric group, and
/// `[x] - sgn(s t)[s t x]` is a sum of the generators for `s` and `t`, so
/// the generators `[x] + [t_i x]` suffice.
pub fn skew_ideal(a: &NAlgebra) -> Subspace {
    let one = a.field().one();
    let mut red = RowReducer::new(a.field(), a.dim());
    for x in tuples(a.dim(), a.arity()) {
        for i in 0..a.arity() - 1 {
            let mut t = x.clone();
            t.swap(i, i + 1);
            red.insert(&sparse::add_scaled(a.basis_bracket(&x), &one, a.basis_bracket(&t)));
        }
    }
    ideal_closure(a, &Subspace::from_reducer(red)).expect("ambient matches")
}

/// `L_Lie`: the quotient by the ideal forcing skew-symmetry.
pub fn liezation(a: &NAlgebra) -> Result<QuotientPresentation> {
    quotient(a, &skew_ideal(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::sparse::SparseVec;
    use crate::exactla::{Field, Matrix};
    use crate::nalg::{corpus, validate_fi};

    fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
        if n == 0 {
            return vec![(vec![], true)];
        }
        let mut out = Vec::new();
        for (p, even) in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                let moved = p.len() - pos;
                out.push((q, even == (moved % 2 == 0)));
            }
        }
        out
    }

    fn full_symmetric_ideal(a: &NAlgebra) -> Subspace {
        let mut gens: Vec<SparseVec> = Vec::new();
        for x in tuples(a.dim(), a.arity()) {
            for (p, even) in permutations(a.arity()) {
                let px: Vec<usize> = p.iter().map(|&k| x[k]).collect();
                let s = if even { a.field().from_i64(-1) } else { a.field().one() };
                gens.push(sparse::add_scaled(a.basis_bracket(&x), &s, a.basis_bracket(&px)));
            }
        }
        ideal_closure(a, &Subspace::from_sparse(a.field(), a.dim(), &gens)).unwrap()
    }

    #[test]
    fn permutation_signs() {
        let perms = permutations(3);
        assert_eq!(perms.len(), 6);
        assert_eq!(perms.iter().filter(|(_, e)| *e).count(), 3);
    }

    #[test]
    fn adjacent_generators_match_full_group() {
        for (name, a) in corpus::corpus() {
            assert_eq!(skew_ideal(&a), full_symmetric_ideal(&a), "{name}");
        }
    }

    #[test]
    fn lie_input_is_unchanged() {
        let a = corpus::ex51i();
        let p = liezation(&a).unwrap();
        assert!(p.ideal.is_zero());
        assert_eq!(p.projection.matrix, Matrix::identity(Field::Rational, 4));
        let ab = NAlgebra::abelian(Field::Rational, 2, 3).unwrap();
        assert_eq!(liezation(&ab).unwrap().quotient, ab);
    }

    #[test]
    fn outputs_are_skew_and_satisfy_fi() {
        for (name, a) in corpus::corpus() {
            let p = liezation(&a).unwrap();
            assert!(p.quotient.is_skew_symmetric(), "{name}");
            assert!(validate_fi(&p.quotient).passed(), "{name}");
        }
        let v = liezation(&corpus::ex22v()).unwrap();
        assert!(v.quotient.dim() <= 2);
    }
}
