//! The built-in regression table: named exact checks over the example corpus.
//!
//! Each check carries the number of the acceptance criterion it belongs to;
//! group `0` pins computed invariants of the corpus that no criterion names.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exactla::multiindex::lin;
use crate::exactla::sparse::SparseVec;
use crate::exactla::{Field, Matrix, Subspace};
use crate::functors::{
    check_diagram_d_budget, check_diagram_u_budget, d_functor_budget, d_n, perfectness_transfer_check, u_functor_budget,
};
use crate::homology::{
    h_chain_map, h_complexes, homology_dim, homology_induced_map, is_chain_map, leibniz_complex_budget, n_complex_budget,
    n_homology_dim, ChainComplex, CoRepresentation,
};
use crate::nalg::{center, corpus, derived_ideal, is_perfect, validate_fi, NAlgebra};
use crate::tensoruce::{
    center_kernel_check_budget, check_universality, delta2_budget, phi_map_budget, uce_budget, witness_extensions,
};
use crate::textfmt::{emit_algebra, parse_algebra};
use crate::xmod::{
    check_xmod_diagrams, from_central_extension, from_ideal, i_functor, xmod_validate, xu_functor, CrossedModule, XmodReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub criterion: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    /// The check could not run within the row budget.
    pub budget_exceeded: bool,
}

/// The ternary brackets of `U_2^3` of the five-dimensional Leibniz algebra,
/// as tabulated by hand.
pub const U3_EX51II_TABLE: &str = "\
field Q
arity 3
dim 5
[e1,e1,e2] = -2*e1
[e2,e1,e2] = 2*e2
[e3,e1,e3] = -4*e1
[e1,e2,e1] = 2*e1
[e2,e1,e3] = 2*e3
[e3,e2,e3] = -4*e2
[e1,e2,e3] = 2*e3
[e2,e2,e1] = -2*e2
[e3,e3,e1] = 4*e1
[e1,e3,e2] = -2*e3
[e2,e3,e1] = -2*e3
[e3,e3,e2] = 4*e2
[e4,e1,e2] = -e4
[e5,e1,e2] = e5
[e4,e2,e1] = e4
[e5,e1,e3] = -2*e4
[e4,e2,e3] = 2*e5
[e5,e2,e1] = -e5
[e4,e3,e2] = -2*e5
[e5,e3,e1] = 2*e4
";

/// `(perfect, dim [L^n], dim Z, skew, HL_0, HL_1, dim L^{*n})`.
type Invariants = (bool, usize, usize, bool, usize, usize, usize);

type Builder<T> = fn() -> Result<T>;

/// 1-based `(i, j)` of tensors `e_i (x) e_j`.
type Excluded = [(usize, usize); 2];

/// Invariants and nonzero bracket count pinned per corpus algebra.
const PINNED: [(&str, Invariants, usize); 8] = [
    ("ex22iv", (true, 1, 0, true, 0, 0, 1), 1),
    ("ex22v", (false, 1, 0, false, 1, 1, 2), 1),
    ("ex51i", (true, 4, 0, true, 0, 0, 4), 24),
    ("ex51ii", (true, 5, 0, false, 0, 0, 5), 10),
    ("ex51iii", (true, 3, 0, false, 0, 0, 3), 3),
    ("ab(2,2)", (false, 0, 2, true, 2, 4, 4), 0),
    ("ab(2,3)", (false, 0, 2, true, 2, 8, 8), 0),
    ("ab(3,3)", (false, 0, 3, true, 3, 27, 27), 0),
];

struct Table {
    budget: Budget,
    checks: Vec<Check>,
}

impl Table {
    fn record(&mut self, criterion: u8, name: impl Into<String>, f: impl FnOnce(Budget) -> Result<(bool, String)>) {
        let (passed, detail, budget_exceeded) = match f(self.budget) {
            Ok((p, d)) => (p, d, false),
            Err(e @ Error::BudgetExceeded { .. }) => (false, e.to_string(), true),
            Err(e) => (false, format!("error: {e}"), false),
        };
        self.checks.push(Check { criterion, name: name.into(), passed, detail, budget_exceeded });
    }
}

/// Runs every check in a fixed order.
pub fn run(budget: Budget) -> Vec<Check> {
    let mut t = Table { budget, checks: Vec::new() };
    invariants(&mut t);
    fi_regression(&mut t);
    perfectness(&mut t);
    u_table(&mut t);
    counterexamples(&mut t);
    diagrams(&mut t);
    homology_checks(&mut t);
    chain_map(&mut t);
    pipeline(&mut t);
    phi_checks(&mut t);
    crossed_modules(&mut t);
    text_round_trip(&mut t);
    t.checks
}

/// Checks belonging to one criterion.
pub fn run_criterion(criterion: u8, budget: Budget) -> Vec<Check> {
    let mut t = Table { budget, checks: Vec::new() };
    match criterion {
        0 => invariants(&mut t),
        1 => fi_regression(&mut t),
        2 => perfectness(&mut t),
        3 => u_table(&mut t),
        4 => counterexamples(&mut t),
        5 => diagrams(&mut t),
        6 => homology_checks(&mut t),
        7 => chain_map(&mut t),
        8 => pipeline(&mut t),
        9 => phi_checks(&mut t),
        10 => crossed_modules(&mut t),
        11 => text_round_trip(&mut t),
        _ => {}
    }
    t.checks
}

fn invariants(t: &mut Table) {
    for (name, want, nnz) in PINNED {
        t.record(0, format!("invariants {name}"), |b| {
            let a = corpus::by_name(name).expect("corpus name");
            let got = (invariant_tuple(&a, b)?, corpus::count_nonzero(&a));
            Ok((got == (want, nnz), format!("{got:?}")))
        });
    }
}

fn fi_regression(t: &mut Table) {
    for (name, a) in corpus::corpus() {
        t.record(1, format!("fi {name}"), |_| {
            let r = validate_fi(&a);
            Ok((r.passed(), if r.passed() { "holds".into() } else { format!("{:?}", r.failure) }))
        });
    }
    for (k, a) in corpus::ex51i_perturbations().into_iter().enumerate() {
        t.record(1, format!("fi ex51i perturbation {k}"), |_| {
            let r = validate_fi(&a);
            Ok(match r.failure {
                Some(f) => (true, format!("fails at x = {:?}, y = {:?}", f.x, f.y)),
                None => (false, "identity holds".into()),
            })
        });
    }
}

fn perfectness(t: &mut Table) {
    for (n, p) in [(2, 3), (2, 4), (3, 5)] {
        for (name, a) in corpus::corpus().into_iter().filter(|(_, a)| a.arity() == n) {
            t.record(2, format!("perfect U_{n}^{p}({name})"), |_| {
                let r = perfectness_transfer_check(&a, p)?;
                let ok = r.agrees() && r.image_derived_dim <= r.source_derived_dim;
                Ok((
                    ok,
                    format!(
                        "perfect {} -> {}, derived {} -> {}",
                        r.source_perfect, r.image_perfect, r.source_derived_dim, r.image_derived_dim
                    ),
                ))
            });
        }
    }
}

fn u_table(t: &mut Table) {
    t.record(3, "U_2^3(ex51ii) table", |b| {
        let u = u_functor_budget(&corpus::ex51ii(), 3, b)?;
        let table = parse_algebra(U3_EX51II_TABLE)?;
        Ok((u == table, format!("{} nonzero brackets, table has {}", u.nonzero_brackets(), table.nonzero_brackets())))
    });
}

fn tensor2(d: usize, i: usize, j: usize, a: &NAlgebra) -> SparseVec {
    vec![(lin(&[i - 1, j - 1], d), a.field().one())]
}

fn counterexamples(t: &mut Table) {
    let cases: [(&str, Builder<NAlgebra>, usize, Excluded); 3] = [
        ("D(ex51i)", || d_n(&corpus::ex51i()), 4, [(1, 1), (2, 2)]),
        ("D(U_2^3(ex51ii))", || d_n(&u_functor_budget(&corpus::ex51ii(), 3, Budget::default())?), 5, [(4, 5), (5, 4)]),
        ("D(ex51iii)", || d_n(&corpus::ex51iii()), 3, [(1, 2), (2, 1)]),
    ];
    for (name, build, base, excluded) in cases {
        t.record(4, format!("{name} is not perfect"), |_| {
            let d = build()?;
            let der = derived_ideal(&d);
            let outside = excluded.iter().all(|&(i, j)| !der.contains_sparse(&tensor2(base, i, j, &d)));
            Ok((!is_perfect(&d) && outside, format!("dim {}, derived {}, listed tensors outside: {outside}", d.dim(), der.dim())))
        });
    }
}

fn diagrams(t: &mut Table) {
    for (name, a, p, q) in [("ex22v", corpus::ex22v(), 5, 9), ("ex51ii", corpus::ex51ii(), 3, 5)] {
        t.record(5, format!("U diagram {name} p={p} q={q}"), |b| {
            let ok = check_diagram_u_budget(&a, p, q, b)?;
            Ok((ok, format!("commutes: {ok}")))
        });
    }
    t.record(5, "D diagram U_3^7(ex22v) (7,4,3)", |b| {
        let a = u_functor_budget(&corpus::ex22v(), 7, b)?;
        let ok = check_diagram_d_budget(&a, 3, 4, b)?;
        let dim = d_functor_budget(&d_functor_budget(&a, 4, b)?, 2, b)?.dim();
        Ok((ok && dim == 64, format!("commutes: {ok}, dim {dim}")))
    });
}

fn squares_to_zero(c: &ChainComplex) -> Result<bool> {
    for k in 1..c.k_max() {
        if !c.boundary(k + 1).mul(c.boundary(k))?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn homology_checks(t: &mut Table) {
    for (name, a) in corpus::corpus() {
        t.record(6, format!("d o d = 0 {name}"), |b| {
            let c = n_complex_budget(&a, 1, 3, b)?;
            let mut ok = squares_to_zero(&c)?;
            if a.arity() == 2 {
                let m = CoRepresentation::tensor_with_algebra(&a, 1)?;
                ok &= squares_to_zero(&leibniz_complex_budget(&m.base.clone(), &m, 3, b)?)?;
            }
            Ok((ok, format!("dims {:?}", c.dims())))
        });
        t.record(6, format!("HL_0 {name}"), |b| {
            let h0 = n_homology_dim(&a, 0, b)?;
            let want = a.dim() - derived_ideal(&a).dim();
            Ok((h0 == want, format!("{h0} vs {want}")))
        });
        t.record(6, format!("delta_2 = d_2 {name}"), |b| {
            let ok = delta2_budget(&a, b)? == *n_complex_budget(&a, 1, 2, b)?.boundary(2);
            Ok((ok, format!("equal: {ok}")))
        });
    }
    t.record(6, "2HL_k = HL_{k+1} ex51ii", |b| {
        let g = corpus::ex51ii();
        let two = n_complex_budget(&g, 1, 2, b)?;
        let cl = leibniz_complex_budget(&g, &CoRepresentation::trivial(g.clone(), 1)?, 3, b)?;
        let pairs: Vec<(usize, usize)> =
            (0..2).map(|k| Ok((homology_dim(&two, k)?, homology_dim(&cl, k + 1)?))).collect::<Result<_>>()?;
        Ok((pairs.iter().all(|(x, y)| x == y), format!("{pairs:?}")))
    });
}

fn chain_map(t: &mut Table) {
    let g = corpus::ex51ii();
    t.record(7, "h is a chain map ex51ii n=3", |b| {
        let (s, tg) = h_complexes(&g, 3, 2, 1, b)?;
        let h = h_chain_map(&g, 3, 2, 1, b)?;
        let ok = is_chain_map(&s, &tg, &h)?;
        Ok((ok, format!("degrees 1..2: {ok}")))
    });
    t.record(7, "h_0 bijective, h_1 surjective ex51ii n=3", |b| {
        let h = h_chain_map(&g, 3, 1, 1, b)?;
        let h0 = h[0].rank() == h[0].rows() && h[0].rows() == h[0].cols();
        let h1 = h[1].rank() == h[1].cols();
        Ok((h0 && h1, format!("h_0 bijective {h0}, h_1 surjective {h1}")))
    });
    t.record(7, "induced h_1 surjective ex51ii n=3", |b| {
        let m = homology_induced_map(&g, 3, 1, 1, b)?;
        Ok((m.rank == m.target_dim, format!("rank {} onto {}", m.rank, m.target_dim)))
    });
}

fn pipeline(t: &mut Table) {
    let instances: [(&str, Builder<NAlgebra>); 4] = [
        ("ex51i", || Ok(corpus::ex51i())),
        ("ex51iii", || Ok(corpus::ex51iii())),
        ("U_2^3(ex51ii)", || u_functor_budget(&corpus::ex51ii(), 3, Budget::default())),
        ("sl2k2", || Ok(corpus::sl2_plane())),
    ];
    for (name, build) in instances {
        t.record(8, format!("uce pipeline {name}"), |b| {
            let a = build()?;
            let u = uce_budget(&a, b)?;
            let star = &u.star;
            let hl1 = n_homology_dim(&a, 1, b)?;
            let four_term = star.coker_dim() == hl1 + derived_ideal(&a).dim();
            let kernel = u.extension.kernel.dim() == hl1 && u.extension.is_central();
            let ws = witness_extensions(&u)?;
            for w in &ws {
                check_universality(&u, w)?;
            }
            Ok((
                four_term && kernel,
                format!("dim L* {}, HL_1 {hl1}, kernel {}, {} witnesses", star.coker_dim(), u.extension.kernel.dim(), ws.len()),
            ))
        });
    }
}

fn phi_checks(t: &mut Table) {
    for (name, a, p) in [("ex51iii", corpus::ex51iii(), 5), ("sl2h3", corpus::sl2_heisenberg(), 3)] {
        t.record(9, format!("phi {name} p={p}"), |b| {
            let phi = phi_map_budget(&a, p, b)?;
            Ok((phi.rank() == phi.target.coker_dim(), format!("rank {} onto {}", phi.rank(), phi.target.coker_dim())))
        });
        t.record(9, format!("center in ker phi {name} p={p}"), |b| {
            let c = center_kernel_check_budget(&a, p, b)?;
            let vacuous = if c.is_vacuous() { ", vacuous (Z = 0)" } else { "" };
            Ok((c.verdict(), format!("{} slots, dim Z {}{vacuous}", c.slots.len(), c.center_n_dim)))
        });
    }
}

fn xmod_detail(r: &XmodReport) -> String {
    if r.passed() {
        "action and CM1-CM3 hold".into()
    } else {
        format!("{r:?}")
    }
}

fn crossed_module_checks(t: &mut Table, name: &str, a: &NAlgebra, build: impl Fn(Budget) -> Result<CrossedModule>, p: usize) {
    t.record(10, format!("xmod {name}"), |b| {
        let r = xmod_validate(&build(b)?);
        Ok((r.passed(), xmod_detail(&r)))
    });
    t.record(10, format!("XU^{p} {name}"), |b| {
        let r = xmod_validate(&xu_functor(&build(b)?, p)?);
        Ok((r.passed(), xmod_detail(&r)))
    });
    t.record(10, format!("diagrams I/J {name} p={p}"), |b| {
        let r = check_xmod_diagrams(a, &build(b)?, p)?;
        Ok((r.passed(), format!("{r:?}")))
    });
}

fn crossed_modules(t: &mut Table) {
    let v = corpus::ex22v();
    let e1 = Subspace::coordinate(v.field(), 2, &[0]);
    crossed_module_checks(t, "ex22v ideal <e1>", &v, |_| from_ideal(&v, &e1), 5);
    let w = corpus::ex51iii();
    crossed_module_checks(t, "uce(ex51iii)", &w, |b| from_central_extension(&uce_budget(&w, b)?.extension), 5);

    let binary: [(&str, Builder<CrossedModule>); 3] = [
        ("I^1(ex51ii)", || i_functor(&corpus::ex51ii(), 1)),
        ("uce(sl2k2)", || from_central_extension(&crate::tensoruce::uce(&corpus::sl2_plane())?.extension)),
        ("ex51ii with mu = 0", || {
            let cm = i_functor(&corpus::ex51ii(), 1)?;
            let mu = crate::exactla::Matrix::zeros(cm.mu.field(), cm.mu.rows(), cm.mu.cols());
            CrossedModule::new(cm.action, mu)
        }),
    ];
    for (name, build) in binary {
        t.record(10, format!("CM2 = CM3 {name}"), |_| {
            let r = xmod_validate(&build()?);
            Ok((r.cm2.is_none() == r.cm3.is_none(), format!("cm2 {:?}, cm3 {:?}", r.cm2, r.cm3)))
        });
    }
}

fn text_round_trip(t: &mut Table) {
    let mut all = corpus::corpus();
    all.push(("sl2h3".into(), corpus::sl2_heisenberg()));
    for (name, a) in all {
        t.record(11, format!("text round trip {name}"), |_| {
            let text = emit_algebra(&a);
            let back = parse_algebra(&text)?;
            let ok = back == a && emit_algebra(&back) == text;
            Ok((ok, format!("{} bytes", text.len())))
        });
    }
}

/// A permutation followed by three seeded shears `e_i += c e_j`.
fn random_basis_change(rng: &mut ChaCha8Rng, field: Field, d: usize) -> Matrix {
    let mut perm: Vec<usize> = (0..d).collect();
    perm.shuffle(rng);
    let mut m = Matrix::zeros(field, d, d);
    for (i, &j) in perm.iter().enumerate() {
        m.set(i, j, field.one());
    }
    for _ in 0..if d > 1 { 3 } else { 0 } {
        let i = rng.gen_range(0..d);
        let j = (i + rng.gen_range(1..d)) % d;
        let mut shear = Matrix::identity(field, d);
        shear.set(i, j, field.from_i64(rng.gen_range(-2..=2)));
        m = shear.mul(&m).expect("square");
    }
    m
}

fn invariant_tuple(a: &NAlgebra, b: Budget) -> Result<Invariants> {
    Ok((
        is_perfect(a),
        derived_ideal(a).dim(),
        center(a).dim(),
        a.is_skew_symmetric(),
        n_homology_dim(a, 0, b)?,
        n_homology_dim(a, 1, b)?,
        crate::tensoruce::star_power_budget(a, b)?.coker_dim(),
    ))
}

/// `count` corpus algebras in seeded random bases; the identity and every
/// basis-free invariant must survive the change of basis.
pub fn run_randomized(seed: u64, count: usize, budget: Budget) -> Vec<Check> {
    let mut t = Table { budget, checks: Vec::new() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all = corpus::corpus();
    for k in 0..count {
        let (name, a) = &all[k % all.len()];
        let m = random_basis_change(&mut rng, a.field(), a.dim());
        t.record(0, format!("random basis {k} for {name} (seed {seed})"), |b| {
            let moved = a.transport(&m)?;
            let fi = validate_fi(&moved).passed();
            let got = invariant_tuple(&moved, b)?;
            Ok((fi && got == invariant_tuple(a, b)?, format!("identity holds: {fi}, invariants {got:?}")))
        });
    }
    t.checks
}
