use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use leibniz_bench::dense_matrix;
use leibniz_core::exactla::fraction_free_rank;
use leibniz_core::functors::u_functor;
use leibniz_core::nalg::{corpus, validate_fi};
use leibniz_core::tensoruce::{delta2, star_power};

fn linear_algebra(c: &mut Criterion) {
    let m = dense_matrix(24);
    c.bench_function("rref 24x24", |b| b.iter(|| black_box(&m).rref()));
    c.bench_function("fraction-free rank 24x24", |b| b.iter(|| fraction_free_rank(black_box(&m))));
    let d = delta2(&corpus::ex51i()).unwrap();
    c.bench_function("delta_2 rank ex51i", |b| b.iter(|| black_box(&d).rank()));
}

fn identities(c: &mut Criterion) {
    let a = corpus::ex51i();
    c.bench_function("validate_fi ex51i", |b| b.iter(|| validate_fi(black_box(&a))));
    let u = u_functor(&corpus::ex51ii(), 3).unwrap();
    c.bench_function("validate_fi U_2^3(ex51ii)", |b| b.iter(|| validate_fi(black_box(&u))));
    let w = corpus::ex51iii();
    c.bench_function("star_power ex51iii", |b| b.iter(|| star_power(black_box(&w)).unwrap()));
}

criterion_group!(benches, linear_algebra, identities);
criterion_main!(benches);
