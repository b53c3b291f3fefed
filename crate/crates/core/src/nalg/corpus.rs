//! Built-in example algebras.
//!
//! Brackets are listed with 1-based basis indices as `(slots, [(coef, target)])`.

use crate::error::{Error, Result};
use crate::exactla::multiindex::{lin, tuples};
use crate::exactla::sparse::SparseVec;
use crate::exactla::{Field, Matrix, Scalar};

use super::NAlgebra;

/// `(slots, [(coef, target)])`, 1-based.
type Entry<'a> = (&'a [usize], &'a [(i64, usize)]);

type Terms = Vec<(i64, usize)>;

fn table(field: Field, arity: usize, dim: usize, entries: &[Entry]) -> NAlgebra {
    let brackets: Vec<(Vec<usize>, SparseVec)> = entries
        .iter()
        .map(|(slots, terms)| {
            let mut v: SparseVec = terms.iter().map(|&(c, j)| (j - 1, field.from_i64(c))).collect();
            v.sort_by_key(|(j, _)| *j);
            (slots.iter().map(|i| i - 1).collect(), v)
        })
        .collect();
    NAlgebra::from_brackets(field, arity, dim, &brackets).expect("corpus table is well formed")
}

/// One-dimensional `[e,e,e] = e` over GF(2).
pub fn ex22iv() -> NAlgebra {
    table(Field::Prime(2), 3, 1, &[(&[1, 1, 1], &[(1, 1)])])
}

/// Two-dimensional `[e1,e2,e2] = e1`.
pub fn ex22v() -> NAlgebra {
    table(Field::Rational, 3, 2, &[(&[1, 2, 2], &[(1, 1)])])
}

/// The simple four-dimensional Lie 3-algebra.
pub fn ex51i() -> NAlgebra {
    let q = Field::Rational;
    let base: [([usize; 3], i64, usize); 4] = [([0, 1, 2], 1, 3), ([0, 1, 3], -1, 2), ([0, 2, 3], 1, 1), ([1, 2, 3], -1, 0)];
    let mut s = Matrix::zeros(q, 64, 4);
    for (slots, c, j) in base {
        for (perm, sign) in PERMS3 {
            let x: Vec<usize> = perm.iter().map(|&k| slots[k]).collect();
            s.set(lin(&x, 4), j, q.from_i64(c * sign));
        }
    }
    NAlgebra::new(q, 3, 4, s).expect("shape")
}

const PERMS3: [([usize; 3], i64); 6] =
    [([0, 1, 2], 1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([1, 0, 2], -1), ([0, 2, 1], -1), ([2, 1, 0], -1)];

/// The five-dimensional perfect Leibniz algebra.
pub fn ex51ii() -> NAlgebra {
    table(
        Field::Rational,
        2,
        5,
        &[
            (&[2, 1], &[(-1, 3)]),
            (&[1, 2], &[(1, 3)]),
            (&[1, 3], &[(-2, 1)]),
            (&[3, 1], &[(2, 1)]),
            (&[3, 2], &[(-2, 2)]),
            (&[2, 3], &[(2, 2)]),
            (&[5, 1], &[(1, 4)]),
            (&[4, 2], &[(1, 5)]),
            (&[4, 3], &[(-1, 4)]),
            (&[5, 3], &[(1, 5)]),
        ],
    )
}

/// The three-dimensional perfect Leibniz 3-algebra with parameters
/// `alpha`, `beta`.
pub fn ex51iii_with(alpha: Scalar, beta: Scalar) -> Result<NAlgebra> {
    let f = alpha.field();
    if beta.field() != f {
        return Err(Error::FieldMismatch(f.to_string(), beta.field().to_string()));
    }
    if alpha.is_zero() || beta.is_zero() {
        return Err(Error::Invalid("parameters must be nonzero".into()));
    }
    NAlgebra::from_brackets(
        f,
        3,
        3,
        &[(vec![0, 0, 1], vec![(0, alpha.clone())]), (vec![1, 0, 1], vec![(1, -&alpha)]), (vec![2, 0, 1], vec![(2, beta)])],
    )
}

pub fn ex51iii() -> NAlgebra {
    let q = Field::Rational;
    ex51iii_with(q.one(), q.one()).expect("nonzero parameters")
}

pub fn abelian(dim: usize, arity: usize) -> NAlgebra {
    NAlgebra::abelian(Field::Rational, dim, arity).expect("small abelian algebra")
}

/// `sl_2` acting on the Heisenberg algebra `<x, y, z>`, basis
/// `e, f, h, x, y, z`: a perfect Lie algebra with center `<z>`. Not part of
/// the named corpus.
pub fn sl2_heisenberg() -> NAlgebra {
    let skew: [Entry; 8] = [
        (&[3, 1], &[(2, 1)]),
        (&[3, 2], &[(-2, 2)]),
        (&[1, 2], &[(1, 3)]),
        (&[1, 5], &[(1, 4)]),
        (&[2, 4], &[(1, 5)]),
        (&[3, 4], &[(1, 4)]),
        (&[3, 5], &[(-1, 5)]),
        (&[4, 5], &[(1, 6)]),
    ];
    let negated: Vec<([usize; 2], Terms)> =
        skew.iter().map(|(s, t)| ([s[1], s[0]], t.iter().map(|&(c, j)| (-c, j)).collect())).collect();
    let mut refs: Vec<Entry> = skew.to_vec();
    refs.extend(negated.iter().map(|(s, t)| (&s[..], t.as_slice())));
    table(Field::Rational, 2, 6, &refs)
}

/// `sl_2` acting on its two-dimensional module: `sl2_heisenberg()` modulo its
/// center. Perfect, with a one-dimensional `2HL_1`.
pub fn sl2_plane() -> NAlgebra {
    let h = sl2_heisenberg();
    let z = super::center(&h);
    super::quotient(&h, &z).expect("the center is an ideal").quotient
}

/// Twenty fixed single-entry perturbations of `ex51i`: entry
/// `(5 + 37k mod 64, k mod 4)` of the structure matrix is increased by one.
pub fn ex51i_perturbations() -> Vec<NAlgebra> {
    let a = ex51i();
    let f = a.field();
    (0..20usize)
        .map(|k| {
            let mut m = a.structure().clone();
            let (r, c) = ((k * 37 + 5) % 64, k % 4);
            let v = m.get(r, c) + f.one();
            m.set(r, c, v);
            NAlgebra::new(f, 3, 4, m).expect("shape")
        })
        .collect()
}

/// The named corpus, in a fixed order.
pub fn corpus() -> Vec<(String, NAlgebra)> {
    vec![
        ("ex22iv".into(), ex22iv()),
        ("ex22v".into(), ex22v()),
        ("ex51i".into(), ex51i()),
        ("ex51ii".into(), ex51ii()),
        ("ex51iii".into(), ex51iii()),
        ("ab(2,2)".into(), abelian(2, 2)),
        ("ab(2,3)".into(), abelian(2, 3)),
        ("ab(3,3)".into(), abelian(3, 3)),
    ]
}

/// Looks up a corpus name; `ab(d,n)` accepts any dimension and arity.
pub fn by_name(name: &str) -> Option<NAlgebra> {
    let name = name.trim();
    if let Some(args) = name.strip_prefix("ab(").and_then(|s| s.strip_suffix(')')) {
        let (d, n) = args.split_once(',')?;
        let d: usize = d.trim().parse().ok()?;
        let n: usize = n.trim().parse().ok()?;
        return NAlgebra::abelian(Field::Rational, d, n).ok();
    }
    match name {
        "sl2h3" => return Some(sl2_heisenberg()),
        "sl2k2" => return Some(sl2_plane()),
        _ => {}
    }
    corpus().into_iter().find(|(k, _)| k == name).map(|(_, a)| a)
}

/// Number of basis tuples with a nonzero bracket, counted directly.
pub fn count_nonzero(a: &NAlgebra) -> usize {
    tuples(a.dim(), a.arity()).filter(|x| !a.basis_bracket(x).is_empty()).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nalg::validate_fi;

    #[test]
    fn sizes_and_identity() {
        for (name, a) in corpus() {
            assert!(validate_fi(&a).passed(), "{name}");
        }
        let a = ex51i();
        assert_eq!((a.dim(), a.arity(), count_nonzero(&a)), (4, 3, 24));
        let b = ex51ii();
        assert_eq!((b.dim(), b.arity(), count_nonzero(&b)), (5, 2, 10));
        assert!(by_name("ab(3,3)").unwrap().is_abelian());
        assert_eq!(by_name("ab(4,2)").unwrap().dim(), 4);
        assert_eq!(by_name("ex51iii"), Some(ex51iii()));
        assert_eq!(by_name("nope"), None);
    }

    #[test]
    fn ex51iii_other_parameters_satisfy_identity() {
        let q = Field::Rational;
        for (a, b) in [(2, 3), (-1, 5), (7, -2)] {
            let alg = ex51iii_with(q.from_i64(a), q.from_i64(b)).unwrap();
            assert!(validate_fi(&alg).passed());
            assert!(crate::nalg::is_perfect(&alg));
        }
        assert!(ex51iii_with(q.zero(), q.one()).is_err());
    }
}
