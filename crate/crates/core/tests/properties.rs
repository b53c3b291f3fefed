use leibniz_core::exactla::{fraction_free_rank, fraction_free_rref, Field, Matrix, Scalar, Subspace};
use leibniz_core::functors::{d_n, u_functor};
use leibniz_core::homology::n_homology_dim;
use leibniz_core::nalg::{corpus, derived_ideal, is_ideal, is_perfect, validate_fi, NAlgebra};
use leibniz_core::tensoruce::star_power;
use leibniz_core::xmod::{from_ideal, i_functor, xmod_validate, xu_functor};
use leibniz_core::Budget;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const Q: Field = Field::Rational;

fn fixed_width(max_rows: usize, c: usize) -> impl Strategy<Value = Matrix> {
    (1..=max_rows).prop_flat_map(move |r| {
        prop::collection::vec(-3i64..=3, r * c).prop_map(move |v| {
            let rows: Vec<&[i64]> = v.chunks(c).collect();
            Matrix::from_i64(Q, &rows)
        })
    })
}

fn small_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matrix> {
    (1..=max_cols).prop_flat_map(move |c| fixed_width(max_rows, c))
}

fn span_of(m: &Matrix) -> Subspace {
    m.map_image()
}

proptest! {
    #[test]
    fn rref_is_idempotent(m in small_matrix(6, 6)) {
        let (r, p) = m.rref();
        let (rr, pp) = r.rref();
        prop_assert_eq!(&r, &rr);
        prop_assert_eq!(p, pp);
    }

    #[test]
    fn rank_nullity(m in small_matrix(6, 7)) {
        let rank = m.rank();
        prop_assert_eq!(rank + m.kernel_basis().dim(), m.cols());
        prop_assert_eq!(rank + m.map_kernel().dim(), m.rows());
        prop_assert_eq!(m.map_image().dim(), rank);
    }

    #[test]
    fn reducer_matches_fraction_free(m in small_matrix(6, 6)) {
        prop_assert_eq!(m.rank(), fraction_free_rank(&m));
        let (r, p) = m.rref();
        let (f, q) = fraction_free_rref(&m);
        prop_assert_eq!(p, q);
        prop_assert_eq!(r, f);
    }

    #[test]
    fn rational_arithmetic_is_exact(a in -50i64..50, b in 1i64..50, c in -50i64..50, d in 1i64..50) {
        let x = Q.ratio(a, b).unwrap();
        let y = Q.ratio(c, d).unwrap();
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        prop_assert_eq!((&x * &y).clone(), Q.ratio(a * c, b * d).unwrap());
        if !y.is_zero() {
            prop_assert_eq!(&x.checked_div(&y).unwrap() * &y, x);
        }
    }

    #[test]
    fn prime_field_inverses(p in prop::sample::select(vec![2u64, 3, 5, 7, 101, 2147483647]), v in 1i64..1_000_000) {
        let f = Field::prime(p).unwrap();
        let x = f.from_i64(v);
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
        let s: Scalar = (0..p.min(7)).fold(f.zero(), |acc, _| &acc + &f.one());
        prop_assert_eq!(s, f.from_i64(p.min(7) as i64));
    }

    #[test]
    fn subspace_lattice_dimensions(
        (a, b) in (1..=6usize).prop_flat_map(|c| (fixed_width(4, c), fixed_width(4, c)))
    ) {
        let (u, v) = (span_of(&a), span_of(&b));
        let sum = u.sum(&v).unwrap();
        let meet = u.intersect(&v).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + v.dim());
        prop_assert!(meet.is_subspace_of(&u).unwrap() && meet.is_subspace_of(&v).unwrap());
        prop_assert!(u.is_subspace_of(&sum).unwrap() && v.is_subspace_of(&sum).unwrap());
    }
}

/// A permutation followed by three random shears `e_i += c e_j`.
fn random_invertible(rng: &mut ChaCha8Rng, d: usize) -> Matrix {
    let mut perm: Vec<usize> = (0..d).collect();
    perm.shuffle(rng);
    let mut m = Matrix::zeros(Q, d, d);
    for (i, &j) in perm.iter().enumerate() {
        m.set(i, j, Q.one());
    }
    if d > 1 {
        for _ in 0..3 {
            let i = rng.gen_range(0..d);
            let j = (i + rng.gen_range(1..d)) % d;
            let mut shear = Matrix::identity(Q, d);
            shear.set(i, j, Q.from_i64(rng.gen_range(1..=2) * if rng.gen_bool(0.5) { 1 } else { -1 }));
            m = shear.mul(&m).unwrap();
        }
    }
    assert_eq!(m.rank(), d);
    m
}

fn seeds() -> Vec<NAlgebra> {
    let mut out: Vec<NAlgebra> = corpus::corpus().into_iter().map(|(_, a)| a).filter(|a| a.field() == Q).collect();
    out.push(u_functor(&corpus::ex51ii(), 3).unwrap());
    out.push(d_n(&corpus::ex51iii()).unwrap());
    out.push(corpus::sl2_plane());
    out
}

#[test]
fn transported_instances_keep_their_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let seeds = seeds();
    for k in 0..50 {
        let a = &seeds[k % seeds.len()];
        let t = random_invertible(&mut rng, a.dim());
        let b = a.transport(&t).unwrap();
        assert!(validate_fi(&b).passed(), "instance {k}");
        assert_eq!(is_perfect(&b), is_perfect(a), "instance {k}");
        assert_eq!(derived_ideal(&b).dim(), derived_ideal(a).dim(), "instance {k}");
        let s = star_power(&b).unwrap_or_else(|e| panic!("instance {k}: {e}"));
        let hl0 = n_homology_dim(&b, 0, Budget::default()).unwrap();
        let hl1 = n_homology_dim(&b, 1, Budget::default()).unwrap();
        assert_eq!(s.coker_dim() + hl0, hl1 + b.dim(), "instance {k}");
    }
}

#[test]
fn xu_preserves_crossed_modules() {
    let mut cms = Vec::new();
    for (_, a) in corpus::corpus() {
        for v in [0, 1] {
            cms.push(i_functor(&a, v).unwrap());
        }
        let der = derived_ideal(&a);
        assert!(is_ideal(&a, &der).unwrap());
        cms.push(from_ideal(&a, &der).unwrap());
    }
    for cm in cms {
        assert!(xmod_validate(&cm).passed());
        let n = cm.arity();
        for p in [2 * n - 1, 3 * n - 2] {
            if cm.action.ambient.dim().pow(p as u32) > 1 << 14 {
                continue;
            }
            assert!(xmod_validate(&xu_functor(&cm, p).unwrap()).passed(), "arity {n} -> {p}");
        }
    }
}
