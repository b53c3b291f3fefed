use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exactla::multiindex::{self, tuples, unlin};
use crate::exactla::sparse::SparseVec;
use crate::exactla::{Matrix, RowReducer, Subspace};
use crate::functors::u_functor_budget;
use crate::homology::n_homology_dim;
use crate::nalg::{center, is_perfect, quotient, validate_fi, Homomorphism, NAlgebra};

use super::star::{star_power_budget, StarPower};

/// `0 -> M -> K -> L -> 0` with `M` central in `K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralExtension {
    pub total: NAlgebra,
    pub base: NAlgebra,
    pub projection: Homomorphism,
    pub kernel: Subspace,
}

impl CentralExtension {
    /// Checks that `projection` is a surjective homomorphism with central
    /// kernel.
    pub fn new(projection: Homomorphism) -> Result<Self> {
        if !projection.is_homomorphism() {
            return Err(Error::IllDefined("projection is not a homomorphism".into()));
        }
        if projection.matrix.rank() != projection.target.dim() {
            return Err(Error::NotSurjective);
        }
        let kernel = projection.matrix.map_kernel();
        if !kernel.is_subspace_of(&center(&projection.source))? {
            return Err(Error::NotCentral);
        }
        Ok(CentralExtension { total: projection.source.clone(), base: projection.target.clone(), projection, kernel })
    }

    /// `L (+) K^lines`: the base with zero-bracket lines appended.
    pub fn trivial_enlargement(base: &NAlgebra, lines: usize) -> Result<Self> {
        let d = base.dim();
        let n = base.arity();
        let f = base.field();
        let rows = tuples(d + lines, n)
            .map(|x| if x.iter().any(|&i| i >= d) { Vec::new() } else { base.basis_bracket(&x).clone() })
            .collect();
        let total = NAlgebra::new(f, n, d + lines, Matrix::from_rows(f, d + lines, rows)?)?;
        let mut proj: Vec<SparseVec> = (0..d).map(|i| vec![(i, f.one())]).collect();
        proj.extend((0..lines).map(|_| Vec::new()));
        Self::new(Homomorphism::new(total, base.clone(), Matrix::from_rows(f, d, proj)?)?)
    }

    /// `K / line` for a line inside the kernel, with the induced projection.
    pub fn quotient_by_line(&self, line: &SparseVec) -> Result<Self> {
        if !self.kernel.contains_sparse(line) {
            return Err(Error::Invalid("line is not in the kernel".into()));
        }
        let ideal = Subspace::from_sparse(self.total.field(), self.total.dim(), std::slice::from_ref(line));
        let q = quotient(&self.total, &ideal)?;
        let proj = q.section.mul(&self.projection.matrix)?;
        Self::new(Homomorphism::new(q.quotient, self.base.clone(), proj)?)
    }

    pub fn is_central(&self) -> bool {
        self.kernel.is_subspace_of(&center(&self.total)).unwrap_or(false)
    }
}

/// The universal central extension `0 -> nHL_1 -> L^{*n} -> L -> 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Uce {
    pub star: StarPower,
    pub extension: CentralExtension,
}

pub fn uce(a: &NAlgebra) -> Result<Uce> {
    uce_budget(a, Budget::default())
}

/// Exists iff `a` is perfect; the kernel dimension is cross-checked against
/// `nHL_1(a)`.
pub fn uce_budget(a: &NAlgebra, budget: Budget) -> Result<Uce> {
    require_perfect(a)?;
    let star = star_power_budget(a, budget)?;
    let extension = CentralExtension::new(star.bracket_map.clone())?;
    let hl1 = n_homology_dim(a, 1, budget)?;
    if extension.kernel.dim() != hl1 {
        return Err(Error::IllDefined(format!("kernel has dimension {} but nHL_1 has dimension {hl1}", extension.kernel.dim())));
    }
    Ok(Uce { star, extension })
}

pub(crate) fn require_perfect(a: &NAlgebra) -> Result<()> {
    if is_perfect(a) {
        Ok(())
    } else {
        Err(Error::NotPerfect { dim: a.dim(), derived: crate::nalg::derived_ideal(a).dim() })
    }
}

/// A right inverse of the projection, supported on the rows picked greedily
/// in `order`.
pub fn section(projection: &Matrix, order: impl IntoIterator<Item = usize>) -> Result<Matrix> {
    let f = projection.field();
    let d = projection.cols();
    let mut red = RowReducer::new(f, d);
    let mut picked = Vec::with_capacity(d);
    for i in order {
        if red.insert(projection.row(i)).is_some() {
            picked.push(i);
        }
        if picked.len() == d {
            break;
        }
    }
    if picked.len() < d {
        return Err(Error::NotSurjective);
    }
    let square = projection.select_rows(&picked);
    let mut rows = Vec::with_capacity(d);
    for i in 0..d {
        let c = square.solve_left(&vec![(i, f.one())]).ok_or(Error::NotSurjective)?;
        let mut row: SparseVec = c.into_iter().map(|(j, v)| (picked[j], v)).collect();
        row.sort_by_key(|e| e.0);
        rows.push(row);
    }
    Matrix::from_rows(f, projection.rows(), rows)
}

/// `h(x_1 * .. * x_n) = [s x_1, .., s x_n]` on the representatives, and the
/// same formula on every basis tensor.
fn lift(u: &Uce, other: &CentralExtension, s: &Matrix) -> Result<(Matrix, Matrix)> {
    let n = u.star.source.arity();
    let d = u.star.source.dim();
    let tensor = (0..multiindex::pow(d, n)?)
        .map(|t| {
            let args: Vec<&SparseVec> = unlin(t, d, n).into_iter().map(|i| s.row(i)).collect();
            other.total.bracket_sparse(&args)
        })
        .collect();
    let tensor = Matrix::from_rows(other.total.field(), other.total.dim(), tensor)?;
    let h = tensor.select_rows(&u.star.representatives);
    Ok((h, tensor))
}

/// The finite family of extensions the universal property is tested
/// against: the UCE itself, `L (+) K`, and a central-line quotient (of the
/// UCE when its kernel is nonzero, otherwise of `L (+) K^2`).
pub fn witness_extensions(u: &Uce) -> Result<Vec<CentralExtension>> {
    let base = &u.extension.base;
    let third = match u.extension.kernel.basis().sparse_rows().first() {
        Some(line) => u.extension.quotient_by_line(line)?,
        None => {
            let e = CentralExtension::trivial_enlargement(base, 2)?;
            let line = vec![(base.dim() + 1, base.field().one())];
            e.quotient_by_line(&line)?
        }
    };
    Ok(vec![u.extension.clone(), CentralExtension::trivial_enlargement(base, 1)?, third])
}

/// The unique map of extensions `h : L^{*n} -> K'` over the identity of `L`.
pub fn check_universality(u: &Uce, other: &CentralExtension) -> Result<Homomorphism> {
    if other.base != u.extension.base {
        return Err(Error::Invalid("extensions have different bases".into()));
    }
    if !other.is_central() {
        return Err(Error::NotCentral);
    }
    let rows = other.projection.matrix.rows();
    let s = section(&other.projection.matrix, 0..rows)?;
    let (h, tensor) = lift(u, other, &s)?;
    if u.star.projection_from_tensor.mul(&h)? != tensor {
        return Err(Error::IllDefined("lift does not vanish on Im(delta_2)".into()));
    }
    let h = Homomorphism::new(u.extension.total.clone(), other.total.clone(), h)?;
    if !h.is_homomorphism() {
        return Err(Error::IllDefined("lift is not a homomorphism".into()));
    }
    if h.matrix.mul(&other.projection.matrix)? != u.extension.projection.matrix {
        return Err(Error::IllDefined("lift does not commute with the projections".into()));
    }
    // Two lifts differ by a linear map into the central kernel vanishing on
    // [K^n]; the space of such maps must be zero.
    let k = u.extension.total.structure().map_image().dim();
    if other.kernel.dim() * (u.extension.total.dim() - k) != 0 {
        return Err(Error::IllDefined("lift is not unique".into()));
    }
    let s2 = section(&other.projection.matrix, (0..rows).rev())?;
    if lift(u, other, &s2)?.0 != h.matrix {
        return Err(Error::IllDefined("lift depends on the section".into()));
    }
    Ok(h)
}

/// `0 -> nHL_1 -> U_n^p(L^{*n}) -> U_n^p(L) -> 0`, re-verified in arity `p`.
pub fn u_on_uce(a: &NAlgebra, p: usize) -> Result<CentralExtension> {
    u_on_uce_budget(a, p, Budget::default())
}

pub fn u_on_uce_budget(a: &NAlgebra, p: usize, budget: Budget) -> Result<CentralExtension> {
    let u = uce_budget(a, budget)?;
    let total = u_functor_budget(&u.extension.total, p, budget)?;
    let base = u_functor_budget(a, p, budget)?;
    if let Some(failure) = validate_fi(&total).failure {
        return Err(Error::IllDefined(format!("U of the extension fails the fundamental identity at {failure:?}")));
    }
    let ext = CentralExtension::new(Homomorphism::new(total, base, u.extension.projection.matrix.clone())?)?;
    debug_assert_eq!(ext.kernel, u.extension.kernel);
    Ok(ext)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functors::u_functor;
    use crate::nalg::corpus;

    #[test]
    fn abelian_has_no_uce() {
        assert!(matches!(uce(&corpus::abelian(2, 3)), Err(Error::NotPerfect { .. })));
    }

    #[test]
    fn ex51i_uce_kernel_matches_homology() {
        let a = corpus::ex51i();
        let u = uce(&a).unwrap();
        assert_eq!(u.extension.projection.matrix.rank(), 4);
        let hl1 = n_homology_dim(&a, 1, Budget::default()).unwrap();
        assert_eq!(u.extension.kernel.dim(), hl1);
        assert_eq!(u.star.coker_dim(), 4 + hl1);
    }

    #[test]
    fn kernel_is_spanned_by_hl1_representatives() {
        for a in [corpus::ex51i(), corpus::ex51ii(), corpus::ex51iii()] {
            let u = uce(&a).unwrap();
            let c = crate::homology::n_complex(&a, 1, 2).unwrap();
            let h = crate::homology::homology(&c, 1).unwrap();
            let image: Vec<SparseVec> = h.representatives.iter().map(|r| u.star.project(r)).collect();
            let span = Subspace::from_sparse(a.field(), u.star.coker_dim(), &image);
            assert_eq!(span, u.extension.kernel);
        }
    }

    #[test]
    fn binary_image_has_uce() {
        let a = u_functor(&corpus::ex51ii(), 3).unwrap();
        let u = uce(&a).unwrap();
        assert!(u.extension.is_central());
    }

    #[test]
    fn universality_against_witnesses() {
        for a in [corpus::ex51ii(), corpus::ex51iii()] {
            let u = uce(&a).unwrap();
            let id = check_universality(&u, &u.extension).unwrap();
            assert_eq!(id.matrix, Matrix::identity(a.field(), u.star.coker_dim()));

            let triv = CentralExtension::trivial_enlargement(&a, 1).unwrap();
            let h = check_universality(&u, &triv).unwrap();
            let expect =
                Matrix::from_rows(a.field(), a.dim() + 1, u.extension.projection.matrix.clone().into_sparse_rows()).unwrap();
            assert_eq!(h.matrix, expect);

            if let Some(line) = u.extension.kernel.basis().sparse_rows().first() {
                let other = u.extension.quotient_by_line(line).unwrap();
                let h = check_universality(&u, &other).unwrap();
                let ideal = Subspace::from_sparse(a.field(), u.star.coker_dim(), std::slice::from_ref(line));
                let q = quotient(&u.extension.total, &ideal).unwrap();
                assert_eq!(h.matrix, q.projection.matrix);
            }
        }
    }

    #[test]
    fn witnesses_over_a_base_with_homology() {
        let a = corpus::sl2_plane();
        let u = uce(&a).unwrap();
        assert_eq!(u.extension.kernel.dim(), 1);
        let ws = witness_extensions(&u).unwrap();
        assert_eq!(ws[2].total.dim(), 5);
        for w in &ws {
            check_universality(&u, w).unwrap();
        }
        // The Heisenberg extension is a non-split central extension of the
        // same base; the lift onto it is an isomorphism.
        let h = corpus::sl2_heisenberg();
        let q = quotient(&h, &center(&h)).unwrap();
        let ext = CentralExtension::new(q.projection).unwrap();
        let lift = check_universality(&u, &ext).unwrap();
        assert_eq!(lift.matrix.rank(), 6);
    }

    #[test]
    fn witnesses_over_a_superperfect_base() {
        let u = uce(&corpus::ex51iii()).unwrap();
        for w in witness_extensions(&u).unwrap() {
            check_universality(&u, &w).unwrap();
        }
    }

    #[test]
    fn sections_are_right_inverses() {
        let pi = Matrix::from_i64(crate::exactla::Field::Rational, &[&[1, 0], &[1, 1], &[0, 2], &[0, 0]]);
        for s in [section(&pi, 0..4).unwrap(), section(&pi, (0..4).rev()).unwrap()] {
            assert_eq!(s.mul(&pi).unwrap(), Matrix::identity(pi.field(), 2));
        }
    }

    #[test]
    fn non_central_other_is_rejected() {
        let a = corpus::ex51iii();
        let f = a.field();
        let d = a.dim();
        let rows = tuples(2 * d, 3)
            .map(|x| {
                if x.iter().all(|&i| i < d) {
                    a.basis_bracket(&x).clone()
                } else if x.iter().all(|&i| i >= d) {
                    let y: Vec<usize> = x.iter().map(|i| i - d).collect();
                    a.basis_bracket(&y).iter().map(|(k, c)| (k + d, c.clone())).collect()
                } else {
                    Vec::new()
                }
            })
            .collect();
        let sum = NAlgebra::new(f, 3, 2 * d, Matrix::from_rows(f, 2 * d, rows).unwrap()).unwrap();
        let mut proj: Vec<SparseVec> = (0..d).map(|i| vec![(i, f.one())]).collect();
        proj.extend((0..d).map(|_| Vec::new()));
        let pi = Homomorphism::new(sum, a.clone(), Matrix::from_rows(f, d, proj).unwrap()).unwrap();
        assert!(matches!(CentralExtension::new(pi), Err(Error::NotCentral)));
    }

    #[test]
    fn u_on_uce_stays_central() {
        let a = corpus::ex51iii();
        let ext = u_on_uce(&a, 5).unwrap();
        assert_eq!(ext.total.arity(), 5);
        assert_eq!(ext.kernel, uce(&a).unwrap().extension.kernel);
    }
}
