//! Leibniz chain complexes `CL_*(g, M)` and the n-ary complexes
//! `nCL_*(L, M) = CL_*(D_n(L), M (x) L)`.
//!
//! A basis element `m (x) x_1 (x) ... (x) x_k` of `CL_k` has linear index
//! `m * d^k + lin(x_1..x_k)`: the coefficient slot is most significant.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exactla::multiindex::{self, lin, pow_u128, unlin_into};
use crate::exactla::sparse::{Accumulator, SparseVec};
use crate::exactla::{Field, Matrix, Subspace};
use crate::functors::{d_n, u_functor_budget};
use crate::nalg::NAlgebra;

/// A co-representation of a Leibniz algebra `g` on `K^dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoRepresentation {
    pub base: NAlgebra,
    pub dim: usize,
    /// `[m, x]`: row `m * d + x`, shape `dim*d x dim`.
    pub right: Matrix,
    /// `[x, m]`: row `x * dim + m`, shape `d*dim x dim`.
    pub left: Matrix,
}

impl CoRepresentation {
    pub fn new(base: NAlgebra, dim: usize, right: Matrix, left: Matrix) -> Result<Self> {
        if base.arity() != 2 {
            return Err(Error::ArityMismatch(2, base.arity()));
        }
        let d = base.dim();
        for m in [&right, &left] {
            if m.field() != base.field() {
                return Err(Error::FieldMismatch(base.field().to_string(), m.field().to_string()));
            }
            if m.rows() != dim * d || m.cols() != dim {
                return Err(Error::DimensionMismatch { expected: dim * d, found: m.rows() });
            }
        }
        Ok(CoRepresentation { base, dim, right, left })
    }

    pub fn trivial(base: NAlgebra, dim: usize) -> Result<Self> {
        let f = base.field();
        let d = base.dim();
        CoRepresentation::new(base, dim, Matrix::zeros(f, dim * d, dim), Matrix::zeros(f, dim * d, dim))
    }

    /// `M (x) L` over `D_n(L)` for trivial `M = K^m_dim`:
    /// `[m (x) l, w] = m (x) [l, w]` and `[w, m (x) l] = -m (x) [l, w]`.
    pub fn tensor_with_algebra(a: &NAlgebra, m_dim: usize) -> Result<Self> {
        let base = d_n(a)?;
        let f = a.field();
        let d = a.dim();
        let big = base.dim();
        let cd = m_dim * d;
        let mut inner = vec![0; a.arity()];
        let mut right = Vec::with_capacity(cd * big);
        for c in 0..cd {
            let (m, l) = (c / d.max(1), c % d.max(1));
            for w in 0..big {
                inner[0] = l;
                unlin_into(w, d, &mut inner[1..]);
                right.push(a.basis_bracket(&inner).iter().map(|(j, x)| (m * d + j, x.clone())).collect::<SparseVec>());
            }
        }
        let mut left = vec![Vec::new(); big * cd];
        for (r, row) in right.iter().enumerate() {
            let (c, w) = (r / big, r % big);
            left[w * cd + c] = row.iter().map(|(j, x)| (*j, -x)).collect();
        }
        CoRepresentation::new(base, cd, Matrix::from_rows(f, cd, right)?, Matrix::from_rows(f, cd, left)?)
    }
}

/// Boundaries `d_k : C_k -> C_{k-1}` for `k = 1..=k_max`, as
/// `dim C_k x dim C_{k-1}` matrices, with `d_{k-1} d_k = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    field: Field,
    dims: Vec<usize>,
    boundaries: Vec<Matrix>,
}

impl ChainComplex {
    pub fn new(field: Field, dims: Vec<usize>, boundaries: Vec<Matrix>) -> Result<Self> {
        if boundaries.len() + 1 != dims.len() {
            return Err(Error::DimensionMismatch { expected: dims.len().saturating_sub(1), found: boundaries.len() });
        }
        for (k, b) in boundaries.iter().enumerate() {
            if b.shape() != (dims[k + 1], dims[k]) {
                return Err(Error::DimensionMismatch { expected: dims[k + 1], found: b.rows() });
            }
        }
        for k in 1..boundaries.len() {
            if !boundaries[k].mul(&boundaries[k - 1])?.is_zero() {
                return Err(Error::IllDefined(format!("d_{} d_{} is not zero", k, k + 1)));
            }
        }
        Ok(ChainComplex { field, dims, boundaries })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn k_max(&self) -> usize {
        self.dims.len() - 1
    }

    /// `d_k` for `1 <= k <= k_max`.
    pub fn boundary(&self, k: usize) -> &Matrix {
        &self.boundaries[k - 1]
    }
}

/// `CL_*(g, M)` up to degree `k_max` with
/// `d(m x_1..x_k) = [m,x_1] x_2..x_k + sum_{i>=2} (-1)^i [x_i,m] x_1..^x_i..x_k
///   + sum_{i<j} (-1)^{j+1} m x_1..[x_i,x_j]..^x_j..x_k`.
pub fn leibniz_complex(g: &NAlgebra, m: &CoRepresentation, k_max: usize) -> Result<ChainComplex> {
    leibniz_complex_budget(g, m, k_max, Budget::default())
}

pub fn leibniz_complex_budget(g: &NAlgebra, m: &CoRepresentation, k_max: usize, budget: Budget) -> Result<ChainComplex> {
    if k_max < 1 {
        return Err(Error::Invalid("k_max must be at least 1".into()));
    }
    if g.arity() != 2 {
        return Err(Error::ArityMismatch(2, g.arity()));
    }
    if &m.base != g {
        return Err(Error::Invalid("co-representation is over a different algebra".into()));
    }
    let d = g.dim();
    budget.check(m.dim as u128 * pow_u128(d, k_max))?;
    let dims: Vec<usize> = (0..=k_max).map(|k| Ok(m.dim * multiindex::pow(d, k)?)).collect::<Result<_>>()?;
    let mut boundaries = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        boundaries.push(boundary(g, m, k)?);
    }
    ChainComplex::new(g.field(), dims, boundaries)
}

fn boundary(g: &NAlgebra, m: &CoRepresentation, k: usize) -> Result<Matrix> {
    let f = g.field();
    let d = g.dim();
    let block = multiindex::pow(d, k)?;
    let lower = block / d.max(1);
    let rows = m.dim * block;
    let mut x = vec![0; k];
    let mut rest = Vec::with_capacity(k);
    let mut data = Vec::with_capacity(rows);
    for r in 0..rows {
        let mi = r / block;
        unlin_into(r % block, d, &mut x);
        let mut acc = Accumulator::new();

        for (mj, c) in m.right.row(mi * d + x[0]) {
            acc.add(mj * lower + lin(&x[1..], d), c);
        }
        for i in 1..k {
            let sign = if (i + 1) % 2 == 0 { f.one() } else { -f.one() };
            rest.clear();
            rest.extend(x.iter().enumerate().filter(|&(t, _)| t != i).map(|(_, v)| *v));
            let tail = lin(&rest, d);
            for (mj, c) in m.left.row(x[i] * m.dim + mi) {
                acc.add(mj * lower + tail, &(&sign * c));
            }
        }
        for j in 1..k {
            let sign = if (j + 2) % 2 == 0 { f.one() } else { -f.one() };
            for i in 0..j {
                for (t, c) in g.basis_bracket(&[x[i], x[j]]) {
                    rest.clear();
                    rest.extend(x.iter().enumerate().filter(|&(s, _)| s != j).map(|(s, v)| if s == i { *t } else { *v }));
                    acc.add(mi * lower + lin(&rest, d), &(&sign * c));
                }
            }
        }
        data.push(acc.finish());
    }
    Matrix::from_rows(f, m.dim * lower, data)
}

/// `nCL_*(L, K^m_dim)` up to degree `k_max`.
pub fn n_complex(a: &NAlgebra, m_dim: usize, k_max: usize) -> Result<ChainComplex> {
    n_complex_budget(a, m_dim, k_max, Budget::default())
}

pub fn n_complex_budget(a: &NAlgebra, m_dim: usize, k_max: usize, budget: Budget) -> Result<ChainComplex> {
    budget.check(m_dim as u128 * pow_u128(a.dim(), 1 + k_max * (a.arity() - 1)))?;
    let m = CoRepresentation::tensor_with_algebra(a, m_dim)?;
    leibniz_complex_budget(&m.base.clone(), &m, k_max, budget)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homology {
    pub degree: usize,
    pub dim: usize,
    pub cycles: Subspace,
    pub boundaries: Subspace,
    /// Kernel basis vectors reduced modulo the boundaries, one per class.
    pub representatives: Vec<SparseVec>,
}

/// `H_k` for `0 <= k < k_max`.
pub fn homology(c: &ChainComplex, k: usize) -> Result<Homology> {
    if k >= c.k_max() {
        return Err(Error::OutOfRange { index: k, bound: c.k_max() });
    }
    let cycles = if k == 0 { Subspace::full(c.field(), c.dims()[0]) } else { c.boundary(k).map_kernel() };
    let boundaries = c.boundary(k + 1).map_image();
    let image = boundaries.reducer();
    let mut span = image.clone();
    let mut representatives = Vec::new();
    for v in &cycles.basis().sparse_rows()[..cycles.dim()] {
        let r = image.reduce(v);
        if span.insert(&r).is_some() {
            representatives.push(r);
        }
    }
    Ok(Homology { degree: k, dim: representatives.len(), cycles, boundaries, representatives })
}

pub fn homology_dim(c: &ChainComplex, k: usize) -> Result<usize> {
    if k >= c.k_max() {
        return Err(Error::OutOfRange { index: k, bound: c.k_max() });
    }
    let ker = if k == 0 { c.dims()[0] } else { c.dims()[k] - c.boundary(k).rank() };
    Ok(ker - c.boundary(k + 1).rank())
}

/// `nHL_k(L, K)`.
pub fn n_homology_dim(a: &NAlgebra, k: usize, budget: Budget) -> Result<usize> {
    homology_dim(&n_complex_budget(a, 1, k + 1, budget)?, k)
}

/// `rho : L^{(x)(n-1)} -> L`, `l_1..l_{n-1} -> [l_1,[l_2,..[l_{n-2},l_{n-1}]..]]`.
pub fn rho(g: &NAlgebra, n: usize, budget: Budget) -> Result<Matrix> {
    if n == 2 {
        return Ok(Matrix::identity(g.field(), g.dim()));
    }
    Ok(u_functor_budget(g, n - 1, budget)?.into_structure())
}

/// `h_k = id_{M (x) L} (x) rho^{(x)k} : nCL_k(U_n(g), M) -> 2CL_k(g, M)`.
pub fn h_chain_map(g: &NAlgebra, n: usize, k_max: usize, m_dim: usize, budget: Budget) -> Result<Vec<Matrix>> {
    if g.arity() != 2 {
        return Err(Error::ArityMismatch(2, g.arity()));
    }
    budget.check(m_dim as u128 * pow_u128(g.dim(), 1 + k_max * (n - 1)))?;
    let r = rho(g, n, budget)?;
    let mut h = Matrix::identity(g.field(), m_dim * g.dim());
    let mut out = vec![h.clone()];
    for _ in 1..=k_max {
        h = h.kron(&r);
        out.push(h.clone());
    }
    Ok(out)
}

/// The complexes on both sides of `h_*`, up to degree `k_max`.
pub fn h_complexes(g: &NAlgebra, n: usize, k_max: usize, m_dim: usize, budget: Budget) -> Result<(ChainComplex, ChainComplex)> {
    let source = n_complex_budget(&u_functor_budget(g, n, budget)?, m_dim, k_max, budget)?;
    let target = n_complex_budget(g, m_dim, k_max, budget)?;
    Ok((source, target))
}

/// Checks `h_k d^T_k = d^S_k h_{k-1}` for `k = 1..=k_max`.
pub fn is_chain_map(source: &ChainComplex, target: &ChainComplex, h: &[Matrix]) -> Result<bool> {
    for k in 1..h.len().min(source.k_max() + 1) {
        let lhs = h[k].mul(target.boundary(k))?;
        let rhs = source.boundary(k).mul(&h[k - 1])?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedMap {
    pub degree: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    /// `source_dim x target_dim`, in representative coordinates.
    pub matrix: Matrix,
    pub rank: usize,
}

/// `h-bar_k : nHL_k(U_n(g), K^m) -> 2HL_k(g, K^m)` on representatives.
pub fn homology_induced_map(g: &NAlgebra, n: usize, k: usize, m_dim: usize, budget: Budget) -> Result<InducedMap> {
    let (source, target) = h_complexes(g, n, k + 1, m_dim, budget)?;
    let h = h_chain_map(g, n, k + 1, m_dim, budget)?;
    if !is_chain_map(&source, &target, &h)? {
        return Err(Error::IllDefined("h is not a chain map".into()));
    }
    let hs = homology(&source, k)?;
    let ht = homology(&target, k)?;
    let image = ht.boundaries.reducer();
    for b in &hs.boundaries.basis().sparse_rows()[..hs.boundaries.dim()] {
        if !image.contains(&h[k].apply(b)) {
            return Err(Error::IllDefined("a boundary is not sent to a boundary".into()));
        }
    }
    let reps = Matrix::from_rows(g.field(), target.dims()[k], ht.representatives.clone())?;
    let mut rows = Vec::with_capacity(hs.dim);
    for v in &hs.representatives {
        let r = image.reduce(&h[k].apply(v));
        let c = reps.solve_left(&r).ok_or_else(|| Error::IllDefined("image of a cycle is not a cycle".into()))?;
        rows.push(c);
    }
    let matrix = Matrix::from_rows(g.field(), ht.dim, rows)?;
    let rank = matrix.rank();
    Ok(InducedMap { degree: k, source_dim: hs.dim, target_dim: ht.dim, matrix, rank })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::fraction_free_rank;
    use crate::functors::u_functor;
    use crate::nalg::{corpus, derived_ideal};

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn abelian_complexes_have_zero_boundaries() {
        let g = NAlgebra::abelian(q(), 3, 2).unwrap();
        let m = CoRepresentation::trivial(g.clone(), 1).unwrap();
        let c = leibniz_complex(&g, &m, 3).unwrap();
        assert_eq!(c.dims(), &[1, 3, 9, 27]);
        for k in 0..3 {
            assert_eq!(homology_dim(&c, k).unwrap(), 3usize.pow(k as u32));
        }
        let a = NAlgebra::abelian(q(), 2, 3).unwrap();
        let c = n_complex(&a, 1, 2).unwrap();
        assert_eq!(c.dims(), &[2, 8, 32]);
        assert_eq!(homology_dim(&c, 1).unwrap(), 8);
    }

    #[test]
    fn trivial_coefficients_ex51ii() {
        let g = corpus::ex51ii();
        let m = CoRepresentation::trivial(g.clone(), 1).unwrap();
        let c = leibniz_complex(&g, &m, 3).unwrap();
        assert!(c.boundary(1).is_zero());
        // Out of CL_2 only the [x_1, x_2] term survives, with sign -1.
        assert_eq!(c.boundary(2), &g.structure().scale(&q().from_i64(-1)));
        assert_eq!(c.boundary(2).rank(), 5);
        let two = n_complex(&g, 1, 2).unwrap();
        assert_eq!(two.boundary(1), g.structure());
    }

    #[test]
    fn d_squared_vanishes_for_all_corpus_algebras() {
        for (name, a) in corpus::corpus() {
            let k_max = if a.dim() > 3 && a.arity() > 2 { 2 } else { 3 };
            let c = n_complex(&a, 1, k_max).unwrap();
            assert_eq!(c.k_max(), k_max, "{name}");
            if a.arity() == 2 {
                let m = CoRepresentation::trivial(a.clone(), 2).unwrap();
                leibniz_complex(&a, &m, 3).unwrap();
                let m = CoRepresentation::tensor_with_algebra(&a, 1).unwrap();
                leibniz_complex(&m.base.clone(), &m, 3).unwrap();
            }
        }
        let c = n_complex(&corpus::ex51i(), 1, 2).unwrap();
        assert_eq!(c.dims(), &[4, 64, 1024]);
    }

    #[test]
    fn degree_zero_is_the_abelianization() {
        for (name, a) in corpus::corpus() {
            let c = n_complex(&a, 1, 1).unwrap();
            assert_eq!(homology_dim(&c, 0).unwrap(), a.dim() - derived_ideal(&a).dim(), "{name}");
        }
    }

    #[test]
    fn arity_two_shifts_degree() {
        for (name, a) in corpus::corpus() {
            if a.arity() != 2 {
                continue;
            }
            let m = CoRepresentation::trivial(a.clone(), 1).unwrap();
            let cl = leibniz_complex(&a, &m, 3).unwrap();
            let two = n_complex(&a, 1, 2).unwrap();
            for k in 0..2 {
                assert_eq!(two.boundary(k + 1), &cl.boundary(k + 2).scale(&q().from_i64(-1)), "{name}");
                assert_eq!(homology_dim(&two, k).unwrap(), homology_dim(&cl, k + 1).unwrap(), "{name}");
            }
        }
    }

    #[test]
    fn homology_paths_agree() {
        let a = corpus::ex51iii();
        let c = n_complex(&a, 1, 2).unwrap();
        let h = homology(&c, 1).unwrap();
        let dense = |m: &Matrix| fraction_free_rank(m);
        let ff = c.dims()[1] - dense(c.boundary(1)) - dense(c.boundary(2));
        assert_eq!(h.dim, ff);
        assert_eq!(homology_dim(&c, 1).unwrap(), ff);
        assert!(matches!(homology(&c, 2), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn representatives_are_independent_cycles() {
        let a = corpus::ex22v();
        let c = n_complex(&a, 1, 2).unwrap();
        let h = homology(&c, 1).unwrap();
        let mut red = h.boundaries.reducer();
        for r in &h.representatives {
            assert!(h.cycles.contains_sparse(r));
            assert!(red.insert(r).is_some());
        }
        assert_eq!(h.dim + h.boundaries.dim(), h.cycles.dim());
    }

    #[test]
    fn chain_map_law() {
        let b = Budget::default();
        for g in [corpus::ex51ii(), NAlgebra::abelian(q(), 2, 2).unwrap()] {
            for n in [2, 3] {
                let (s, t) = h_complexes(&g, n, 2, 1, b).unwrap();
                let h = h_chain_map(&g, n, 2, 1, b).unwrap();
                assert!(is_chain_map(&s, &t, &h).unwrap());
                assert_eq!(h[0], Matrix::identity(q(), g.dim()));
            }
        }
        let ab = NAlgebra::abelian(q(), 2, 2).unwrap();
        let h = h_chain_map(&ab, 3, 2, 1, b).unwrap();
        assert!(h[1].is_zero() && h[2].is_zero());
        let g = corpus::ex51ii();
        let h = h_chain_map(&g, 3, 1, 1, b).unwrap();
        assert_eq!(h[1].map_image().dim(), h[1].cols());
        let (s, _) = h_complexes(&g, 3, 1, 1, b).unwrap();
        assert_eq!(s, n_complex(&u_functor(&g, 3).unwrap(), 1, 1).unwrap());
    }

    #[test]
    fn induced_maps() {
        let b = Budget::default();
        let g = corpus::ex51ii();
        let h0 = homology_induced_map(&g, 3, 0, 1, b).unwrap();
        assert_eq!((h0.source_dim, h0.target_dim), (0, 0));
        let h1 = homology_induced_map(&g, 3, 1, 1, b).unwrap();
        let two = n_complex(&g, 1, 2).unwrap();
        assert_eq!(h1.target_dim, homology_dim(&two, 1).unwrap());
        assert_eq!(h1.rank, h1.target_dim);
        let ab = NAlgebra::abelian(q(), 2, 2).unwrap();
        let h0 = homology_induced_map(&ab, 3, 0, 1, b).unwrap();
        assert_eq!(h0.matrix, Matrix::identity(q(), 2));
    }

    #[test]
    fn non_trivial_module_must_square_to_zero() {
        let g = corpus::ex51ii();
        let mut right = Matrix::zeros(q(), 5, 1);
        right.set(0, 0, q().one());
        let m = CoRepresentation::new(g.clone(), 1, right, Matrix::zeros(q(), 5, 1)).unwrap();
        assert!(matches!(leibniz_complex(&g, &m, 3), Err(Error::IllDefined(_))));
    }

    #[test]
    fn budget_is_enforced() {
        let a = corpus::ex51i();
        assert!(matches!(n_complex_budget(&a, 1, 2, Budget(1000)), Err(Error::BudgetExceeded { .. })));
    }
}
