//! The forgetful functors `U_n^p` and the Daletskii-Takhtajan functors
//! `D_q^p`, on objects and on homomorphisms.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exactla::multiindex::{self, lin, pow_u128, unlin_into};
use crate::exactla::sparse::{Accumulator, SparseVec};
use crate::exactla::Matrix;
use crate::nalg::{derived_ideal, Homomorphism, NAlgebra};

/// Arities `n` and `p = k(n-1)+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArityPair {
    pub n: usize,
    pub p: usize,
    pub k: usize,
}

impl ArityPair {
    pub fn new(n: usize, p: usize) -> Result<Self> {
        if n < 2 || p < 2 || !(p - 1).is_multiple_of(n - 1) {
            return Err(Error::IncompatibleArities { from: n, to: p });
        }
        Ok(ArityPair { n, p, k: (p - 1) / (n - 1) })
    }
}

/// `U_n^p(L)`: the same space with the right-nested p-ary bracket
/// `[l_1..l_{n-1}, [l_n..l_{2n-2}, [ ... [l_{p-n+1}..l_p] ... ]]]`.
pub fn u_functor(a: &NAlgebra, p: usize) -> Result<NAlgebra> {
    u_functor_budget(a, p, Budget::default())
}

pub fn u_functor_budget(a: &NAlgebra, p: usize, budget: Budget) -> Result<NAlgebra> {
    let pair = ArityPair::new(a.arity(), p)?;
    budget.check(pow_u128(a.dim(), p))?;
    let n = pair.n;
    let d = a.dim();
    let heads = multiindex::pow(d, n - 1)?;
    // Column slices C[(x, m)] for each head x, indexed by m.
    let head_rows: Vec<Vec<&SparseVec>> = (0..heads).map(|x| (0..d).map(|m| a.structure().row(x * d + m)).collect()).collect();
    let mut t: Vec<SparseVec> = a.structure().sparse_rows().to_vec();
    for _ in 1..pair.k {
        let mut next = Vec::with_capacity(heads * t.len());
        for head in &head_rows {
            for inner in &t {
                let mut acc = Accumulator::new();
                for (m, c) in inner {
                    acc.add_scaled(c, head[*m]);
                }
                next.push(acc.finish());
            }
        }
        t = next;
    }
    NAlgebra::new(a.field(), p, d, Matrix::from_rows(a.field(), d, t)?)
}

/// `D_q^p(L)` on `L^{(x) kappa}`, `q = kappa(p-1)+1`:
/// `[X_1, ..., X_p] = sum_i l_11 (x) .. [l_1i, X_2, ..., X_p] .. (x) l_1kappa`.
pub fn d_functor(a: &NAlgebra, p: usize) -> Result<NAlgebra> {
    d_functor_budget(a, p, Budget::default())
}

pub fn d_functor_budget(a: &NAlgebra, p: usize, budget: Budget) -> Result<NAlgebra> {
    let q = a.arity();
    let pair = ArityPair::new(p, q).map_err(|_| Error::IncompatibleArities { from: q, to: p })?;
    let kappa = pair.k;
    let d = a.dim();
    budget.check(pow_u128(d, kappa * p))?;
    let big = multiindex::pow(d, kappa)?;
    let rows = multiindex::pow(d, kappa * p)?;
    let mut slots = vec![0; kappa * p];
    let mut inner = vec![0; q];
    let mut data = Vec::with_capacity(rows);
    for r in 0..rows {
        unlin_into(r, d, &mut slots);
        inner[1..].copy_from_slice(&slots[kappa..]);
        let mut acc = Accumulator::new();
        let mut first = slots[..kappa].to_vec();
        for i in 0..kappa {
            inner[0] = slots[i];
            for (k, c) in a.basis_bracket(&inner) {
                first[i] = *k;
                acc.add(lin(&first, d), c);
            }
            first[i] = slots[i];
        }
        data.push(acc.finish());
    }
    NAlgebra::new(a.field(), p, big, Matrix::from_rows(a.field(), big, data)?)
}

/// `D_n = D_n^2`.
pub fn d_n(a: &NAlgebra) -> Result<NAlgebra> {
    d_functor(a, 2)
}

/// `U_p^q(U_n^p(L)) = U_n^q(L)`.
pub fn check_diagram_u(a: &NAlgebra, p: usize, q: usize) -> Result<bool> {
    check_diagram_u_budget(a, p, q, Budget::default())
}

pub fn check_diagram_u_budget(a: &NAlgebra, p: usize, q: usize, budget: Budget) -> Result<bool> {
    ArityPair::new(a.arity(), p)?;
    ArityPair::new(p, q)?;
    budget.check(pow_u128(a.dim(), q))?;
    let two_step = u_functor_budget(&u_functor_budget(a, p, budget)?, q, budget)?;
    let direct = u_functor_budget(a, q, budget)?;
    Ok(two_step == direct)
}

/// `D_p(D_q^p(L)) = D_n(D_q^n(L))` on `L^{(x)(q-1)}`.
pub fn check_diagram_d(a: &NAlgebra, n: usize, p: usize) -> Result<bool> {
    check_diagram_d_budget(a, n, p, Budget::default())
}

pub fn check_diagram_d_budget(a: &NAlgebra, n: usize, p: usize, budget: Budget) -> Result<bool> {
    let q = a.arity();
    ArityPair::new(p, q)?;
    ArityPair::new(n, q)?;
    budget.check(pow_u128(a.dim(), 2 * (q - 1)))?;
    let via_p = d_functor_budget(&d_functor_budget(a, p, budget)?, 2, budget)?;
    let via_n = d_functor_budget(&d_functor_budget(a, n, budget)?, 2, budget)?;
    Ok(via_p == via_n)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerfectnessTransfer {
    pub source_perfect: bool,
    pub image_perfect: bool,
    pub source_derived_dim: usize,
    pub image_derived_dim: usize,
}

impl PerfectnessTransfer {
    pub fn agrees(&self) -> bool {
        self.source_perfect == self.image_perfect
    }
}

pub fn perfectness_transfer_check(a: &NAlgebra, p: usize) -> Result<PerfectnessTransfer> {
    let u = u_functor(a, p)?;
    let s = derived_ideal(a).dim();
    let t = derived_ideal(&u).dim();
    Ok(PerfectnessTransfer {
        source_perfect: s == a.dim(),
        image_perfect: t == u.dim(),
        source_derived_dim: s,
        image_derived_dim: t,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctorTag {
    /// `U_n^p` with target arity `p`.
    U(usize),
    /// `D_q^p` with target arity `p`.
    D(usize),
}

/// `U(h) = h` on the same carriers; `D(h) = h^{(x) kappa}`.
pub fn hom_functor_image(h: &Homomorphism, tag: FunctorTag) -> Result<Homomorphism> {
    let out = match tag {
        FunctorTag::U(p) => Homomorphism::new(u_functor(&h.source, p)?, u_functor(&h.target, p)?, h.matrix.clone())?,
        FunctorTag::D(p) => {
            let src = d_functor(&h.source, p)?;
            let tgt = d_functor(&h.target, p)?;
            let kappa = (h.source.arity() - 1) / (p - 1);
            let mut m = Matrix::identity(h.matrix.field(), 1);
            for _ in 0..kappa {
                m = m.kron(&h.matrix);
            }
            Homomorphism::new(src, tgt, m)?
        }
    };
    if let Some(x) = out.first_violation() {
        return Err(Error::IllDefined(format!("image map does not preserve the bracket at {x:?}")));
    }
    Ok(out)
}
