use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exactla::multiindex::{lin, pow_u128, tuples, unlin_into};
use crate::exactla::sparse::{Accumulator, SparseVec};
use crate::exactla::{Matrix, Subspace};
use crate::functors::{u_functor_budget, ArityPair};
use crate::nalg::{center, Homomorphism, NAlgebra};

use super::extension::require_perfect;
use super::star::{star_power_budget, StarPower};
use super::tensor::kron_sparse;

/// `phi : L^{*p} -> L^{*n}` between the star powers of `U_n^p(L)` and `L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiMap {
    /// Star power of `U_n^p(L)`, arity `p`.
    pub source: StarPower,
    /// Star power of `L`, arity `n`.
    pub target: StarPower,
    /// `L^{*p} -> U_n^p(L^{*n})`.
    pub phi: Homomorphism,
}

impl PhiMap {
    pub fn kernel(&self) -> Subspace {
        self.phi.matrix.map_kernel()
    }

    pub fn rank(&self) -> usize {
        self.phi.matrix.rank()
    }
}

pub fn phi_map(a: &NAlgebra, p: usize) -> Result<PhiMap> {
    phi_map_budget(a, p, Budget::default())
}

/// Builds `phi(x_1 * .. * x_p) = x_1 * .. * x_{n-1} * [x_n, .., [.., x_p]]`
/// and verifies it is well defined, a homomorphism, surjective, compatible
/// with both bracket maps and with their kernels.
pub fn phi_map_budget(a: &NAlgebra, p: usize, budget: Budget) -> Result<PhiMap> {
    let n = a.arity();
    ArityPair::new(n, p)?;
    require_perfect(a)?;
    budget.check(pow_u128(a.dim(), 2 * p - 1))?;
    let ap = u_functor_budget(a, p, budget)?;
    let source = star_power_budget(&ap, budget)?;
    let target = star_power_budget(a, budget)?;
    let tail = p - n + 1;
    let omega =
        if tail == 1 { Matrix::identity(a.field(), a.dim()) } else { u_functor_budget(a, tail, budget)?.into_structure() };
    let tensor_phi = |v: &SparseVec| tensor_phi(&omega, a.dim(), n, p, v);

    for g in &source.relations.basis().sparse_rows()[..source.relations.dim()] {
        if !target.project(&tensor_phi(g)).is_empty() {
            return Err(Error::IllDefined("phi does not vanish on Im(delta_2)".into()));
        }
    }
    let rows = source.representatives.iter().map(|&t| target.project(&tensor_phi(&vec![(t, a.field().one())]))).collect();
    let matrix = Matrix::from_rows(a.field(), target.coker_dim(), rows)?;
    let codomain = u_functor_budget(&target.algebra, p, budget)?;
    let phi = Homomorphism::new(source.algebra.clone(), codomain, matrix)?;
    if let Some(x) = phi.first_violation() {
        return Err(Error::IllDefined(format!("phi is not a homomorphism at {x:?}")));
    }
    if phi.matrix.mul(&target.bracket_map.matrix)? != source.bracket_map.matrix {
        return Err(Error::IllDefined("phi does not commute with the bracket maps".into()));
    }
    if phi.matrix.rank() != target.coker_dim() {
        return Err(Error::NotSurjective);
    }
    let hl1_p = source.bracket_map.matrix.map_kernel();
    let hl1_n = target.bracket_map.matrix.map_kernel();
    if !hl1_p.image_under(&phi.matrix)?.is_subspace_of(&hl1_n)? {
        return Err(Error::IllDefined("phi does not map pHL_1 into nHL_1".into()));
    }
    Ok(PhiMap { source, target, phi })
}

fn tensor_phi(omega: &Matrix, d: usize, n: usize, p: usize, v: &SparseVec) -> SparseVec {
    let mut x = vec![0; p];
    let mut acc = Accumulator::new();
    for (t, c) in v {
        unlin_into(*t, d, &mut x);
        let head = lin(&x[..n - 1], d) * d;
        for (k, w) in omega.row(lin(&x[n - 1..], d)) {
            acc.add_product(head + k, c, w);
        }
    }
    acc.finish()
}

/// Membership of `L * .. * Z * .. * L` (center in one slot) in `Ker(phi)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotCheck {
    /// 1-based slot of the center factor.
    pub position: usize,
    /// With `Z` the center of the `n`-algebra.
    pub holds_n_center: bool,
    /// With `Z` the center of `U_n^p(L)`.
    pub holds_p_center: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenterKernelCheck {
    pub n: usize,
    pub p: usize,
    pub center_n_dim: usize,
    pub center_p_dim: usize,
    /// Every slot `1..=p`, so slots outside `n..=p` are reported as well.
    pub slots: Vec<SlotCheck>,
    pub kernel_dim: usize,
    /// Dimension of the sum over slots `n..=p`, `n`-center reading.
    pub sum_dim: usize,
}

impl CenterKernelCheck {
    /// All memberships for slots `n..=p` hold.
    pub fn verdict(&self) -> bool {
        self.slots.iter().filter(|s| s.position >= self.n).all(|s| s.holds_n_center)
    }

    pub fn is_vacuous(&self) -> bool {
        self.center_n_dim == 0
    }
}

pub fn center_kernel_check(a: &NAlgebra, p: usize) -> Result<CenterKernelCheck> {
    center_kernel_check_budget(a, p, Budget::default())
}

pub fn center_kernel_check_budget(a: &NAlgebra, p: usize, budget: Budget) -> Result<CenterKernelCheck> {
    let n = a.arity();
    let phi = phi_map_budget(a, p, budget)?;
    let zn = center(a);
    let zp = center(&phi.source.source);
    let d = a.dim();
    let f = a.field();
    let units: Vec<SparseVec> = (0..d).map(|i| vec![(i, f.one())]).collect();
    let mut sum = Vec::new();
    let mut slots = Vec::with_capacity(p);
    for pos in 0..p {
        let mut holds = [true, true];
        for (r, z) in [&zn, &zp].into_iter().enumerate() {
            for zv in &z.basis().sparse_rows()[..z.dim()] {
                for rest in tuples(d, p - 1) {
                    let mut factors: Vec<&SparseVec> = rest.iter().map(|&i| &units[i]).collect();
                    factors.insert(pos, zv);
                    let class = phi.source.project(&kron_sparse(&factors, d, f));
                    if !phi.phi.matrix.apply(&class).is_empty() {
                        holds[r] = false;
                    }
                    if r == 0 && pos + 1 >= n {
                        sum.push(class);
                    }
                }
            }
        }
        slots.push(SlotCheck { position: pos + 1, holds_n_center: holds[0], holds_p_center: holds[1] });
    }
    Ok(CenterKernelCheck {
        n,
        p,
        center_n_dim: zn.dim(),
        center_p_dim: zp.dim(),
        slots,
        kernel_dim: phi.kernel().dim(),
        sum_dim: Subspace::from_sparse(f, phi.source.coker_dim(), &sum).dim(),
    })
}
