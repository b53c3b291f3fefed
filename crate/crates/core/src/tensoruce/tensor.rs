use crate::budget::Budget;
use crate::error::Result;
use crate::exactla::multiindex::{self, lin, pow_u128, tuples, unlin_into};
use crate::exactla::sparse::{Accumulator, SparseVec};
use crate::exactla::{Field, Matrix};
use crate::nalg::NAlgebra;

/// `v_1 (x) ... (x) v_m` for vectors in `K^d`, leftmost factor most
/// significant.
pub fn kron_sparse(vs: &[&SparseVec], d: usize, field: Field) -> SparseVec {
    let mut out: SparseVec = vec![(0, field.one())];
    for v in vs {
        let mut next = Vec::with_capacity(out.len() * v.len());
        for (i, a) in &out {
            for (j, b) in v.iter() {
                next.push((i * d + j, a * b));
            }
        }
        out = next;
    }
    out
}

/// `D` extended to `L^{(x) m}` as a derivation:
/// `sum_i x_1 (x) .. (x) D x_i (x) .. (x) x_m`.
pub fn derivation_on_tensor(dmap: &Matrix, v: &SparseVec, m: usize) -> SparseVec {
    let d = dmap.rows();
    let mut x = vec![0; m];
    let mut acc = Accumulator::new();
    for (idx, c) in v {
        unlin_into(*idx, d, &mut x);
        let mut stride = 1;
        for i in (0..m).rev() {
            let base = idx - x[i] * stride;
            for (k, w) in dmap.row(x[i]) {
                acc.add_product(base + k * stride, c, w);
            }
            stride *= d;
        }
    }
    acc.finish()
}

/// The bracket of `L^{(x) n}`: `[T_1, ..., T_n] = D(T_1)` where `D` is the
/// derivation `ad_{[T_2], ..., [T_n]}` acting on every factor of `T_1`.
pub fn tensor_bracket(a: &NAlgebra, args: &[&SparseVec]) -> SparseVec {
    let ys: Vec<SparseVec> = args[1..].iter().map(|t| a.structure().apply(t)).collect();
    derivation_on_tensor(&a.ad_sparse(&ys), args[0], a.arity())
}

pub fn tensor_bracket_algebra(a: &NAlgebra) -> Result<NAlgebra> {
    tensor_bracket_algebra_budget(a, Budget::default())
}

/// `L^{(x) n}` with the bracket of [`tensor_bracket`], materialized.
pub fn tensor_bracket_algebra_budget(a: &NAlgebra, budget: Budget) -> Result<NAlgebra> {
    let n = a.arity();
    let d = a.dim();
    budget.check(pow_u128(d, n * n))?;
    let big = multiindex::pow(d, n)?;
    let ads: Vec<Matrix> = tuples(big, n - 1)
        .map(|rest| {
            let ys: Vec<SparseVec> = rest.iter().map(|&t| a.structure().row(t).clone()).collect();
            a.ad_sparse(&ys)
        })
        .collect();
    let mut rows = Vec::with_capacity(multiindex::pow(big, n)?);
    for first in 0..big {
        let e = vec![(first, a.field().one())];
        for ad in &ads {
            rows.push(derivation_on_tensor(ad, &e, n));
        }
    }
    NAlgebra::new(a.field(), n, big, Matrix::from_rows(a.field(), big, rows)?)
}

pub fn delta2(a: &NAlgebra) -> Result<Matrix> {
    delta2_budget(a, Budget::default())
}

/// `delta_2 : L^{(x)(2n-1)} -> L^{(x) n}`,
/// `x_1..x_{2n-1} -> [x_1..x_n] (x) x_{n+1}.. - sum_i x_1 (x) .. [x_i, x_{n+1}, ..] .. (x) x_n`.
pub fn delta2_budget(a: &NAlgebra, budget: Budget) -> Result<Matrix> {
    let n = a.arity();
    let d = a.dim();
    budget.check(pow_u128(d, 2 * n - 1))?;
    let tail = multiindex::pow(d, n - 1)?;
    let mut rows = Vec::with_capacity(multiindex::pow(d, 2 * n - 1)?);
    let mut inner = vec![0; n];
    for x in tuples(d, 2 * n - 1) {
        let mut acc = Accumulator::new();
        let rest = lin(&x[n..], d);
        for (k, c) in a.basis_bracket(&x[..n]) {
            acc.add(k * tail + rest, c);
        }
        inner[1..].copy_from_slice(&x[n..]);
        let mut stride = 1;
        let head = lin(&x[..n], d);
        for i in (0..n).rev() {
            inner[0] = x[i];
            let base = head - x[i] * stride;
            for (k, c) in a.basis_bracket(&inner) {
                acc.add(base + k * stride, &-c);
            }
            stride *= d;
        }
        rows.push(acc.finish());
    }
    Ok(Matrix::from_rows_unchecked(a.field(), multiindex::pow(d, n)?, rows))
}
