//! Actions and crossed modules of Leibniz n-algebras.
//!
//! An action of `P` on `L` is stored as the semidirect ambient algebra on
//! `L (+) P`: the first `split` coordinates span `L`, the rest span `P`, and
//! every bracket with an `L` argument lands in `L`. The action axioms are then
//! the fundamental-identity instances of the ambient with mixed arguments.

use crate::error::{Error, Result};
use crate::exactla::multiindex::tuples;
use crate::exactla::sparse::SparseVec;
use crate::exactla::{Matrix, Subspace};
use crate::functors::{u_functor, ArityPair};
use crate::nalg::{center, is_ideal, quotient, validate_fi, FiReport, NAlgebra};
use crate::tensoruce::{section, CentralExtension};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionStructure {
    pub ambient: NAlgebra,
    /// Dimension of the acted-on algebra `L`.
    pub split: usize,
}

impl ActionStructure {
    pub fn new(ambient: NAlgebra, split: usize) -> Result<Self> {
        if split > ambient.dim() {
            return Err(Error::OutOfRange { index: split, bound: ambient.dim() + 1 });
        }
        Ok(ActionStructure { ambient, split })
    }

    pub fn l_dim(&self) -> usize {
        self.split
    }

    pub fn p_dim(&self) -> usize {
        self.ambient.dim() - self.split
    }

    fn in_l(&self, i: usize) -> bool {
        i < self.split
    }

    /// `L`, the first block.
    pub fn acted_on(&self) -> Result<NAlgebra> {
        restrict(&self.ambient, 0, self.split)
    }

    /// `P`, the second block.
    pub fn acting(&self) -> Result<NAlgebra> {
        restrict(&self.ambient, self.split, self.ambient.dim())
    }
}

fn restrict(a: &NAlgebra, lo: usize, hi: usize) -> Result<NAlgebra> {
    let f = a.field();
    let rows = tuples(hi - lo, a.arity())
        .map(|x| {
            let y: Vec<usize> = x.iter().map(|i| i + lo).collect();
            a.basis_bracket(&y).iter().filter(|(k, _)| (lo..hi).contains(k)).map(|(k, c)| (k - lo, c.clone())).collect()
        })
        .collect();
    NAlgebra::new(f, a.arity(), hi - lo, Matrix::from_rows(f, hi - lo, rows)?)
}

/// A basis tuple whose bracket leaves its block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradingFailure {
    pub tuple: Vec<usize>,
    pub value: SparseVec,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionReport {
    pub grading: Option<GradingFailure>,
    pub fi: FiReport,
    /// `true` marks `L` among `x_1..x_n, y_1..y_{n-1}` of the failing identity.
    pub fi_pattern: Option<Vec<bool>>,
}

impl ActionReport {
    pub fn passed(&self) -> bool {
        self.grading.is_none() && self.fi.passed()
    }
}

pub fn action_validate(s: &ActionStructure) -> ActionReport {
    let mut grading = None;
    for x in tuples(s.ambient.dim(), s.ambient.arity()) {
        let value = s.ambient.basis_bracket(&x);
        let to_l = x.iter().any(|&i| s.in_l(i));
        if value.iter().any(|(k, _)| s.in_l(*k) != to_l) {
            grading = Some(GradingFailure { tuple: x, value: value.clone() });
            break;
        }
    }
    let fi = validate_fi(&s.ambient);
    let fi_pattern = fi.failure.as_ref().map(|f| f.x.iter().chain(&f.y).map(|&i| s.in_l(i)).collect());
    ActionReport { grading, fi, fi_pattern }
}

/// The `L`/`P` assignments of the `2n - 1` variables of the fundamental
/// identity with both kinds present; there are `2^{2n-1} - 2`.
pub fn mixed_fi_patterns(n: usize) -> Vec<Vec<bool>> {
    tuples(2, 2 * n - 1)
        .map(|t| t.into_iter().map(|b| b == 0).collect::<Vec<bool>>())
        .filter(|p| p.iter().any(|&b| b) && p.iter().any(|&b| !b))
        .collect()
}

/// `mu : L -> P` with an action of `P` on `L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedModule {
    pub action: ActionStructure,
    /// `dim L x dim P`.
    pub mu: Matrix,
}

impl CrossedModule {
    pub fn new(action: ActionStructure, mu: Matrix) -> Result<Self> {
        if mu.shape() != (action.l_dim(), action.p_dim()) {
            return Err(Error::DimensionMismatch { expected: action.l_dim(), found: mu.rows() });
        }
        Ok(CrossedModule { action, mu })
    }

    pub fn arity(&self) -> usize {
        self.action.ambient.arity()
    }

    /// `mu(e_i)` in ambient coordinates.
    fn mu_ambient(&self, i: usize) -> SparseVec {
        let s = self.action.split;
        self.mu.row(i).iter().map(|(k, c)| (k + s, c.clone())).collect()
    }

    fn mu_of(&self, v: &SparseVec) -> SparseVec {
        let l: SparseVec = v.iter().filter(|(k, _)| self.action.in_l(*k)).cloned().collect();
        let s = self.action.split;
        self.mu.apply(&l).into_iter().map(|(k, c)| (k + s, c)).collect()
    }

    fn replaced(&self, x: &[usize], positions: &[usize]) -> SparseVec {
        let f = self.action.ambient.field();
        let args: Vec<SparseVec> = x
            .iter()
            .enumerate()
            .map(|(t, &i)| if positions.contains(&t) { self.mu_ambient(i) } else { vec![(i, f.one())] })
            .collect();
        let refs: Vec<&SparseVec> = args.iter().collect();
        self.action.ambient.bracket_sparse(&refs)
    }
}

/// A basis tuple and the positions whose `L` arguments were replaced by
/// their `mu`-images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub tuple: Vec<usize>,
    pub replaced: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XmodReport {
    pub action: ActionReport,
    /// `mu[l_1..l_n] = [mu l_1..mu l_n]`.
    pub homomorphism: Option<Witness>,
    pub cm1: Option<Witness>,
    pub cm2: Option<Witness>,
    pub cm3: Option<Witness>,
}

impl XmodReport {
    pub fn passed(&self) -> bool {
        self.action.passed() && self.homomorphism.is_none() && self.cm1.is_none() && self.cm2.is_none() && self.cm3.is_none()
    }
}

/// Nonempty proper subsets of `items`, by increasing bitmask.
fn proper_subsets(items: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (1..(1usize << items.len()) - 1)
        .map(move |mask| items.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &i)| i).collect())
}

/// Exhaustive CM1-CM3 over basis tuples and replacement patterns.
///
/// CM3 is applied to every tuple with at least two `L` arguments, pure-`L`
/// tuples included, so for `n = 2` it is literally CM2.
pub fn xmod_validate(cm: &CrossedModule) -> XmodReport {
    let action = action_validate(&cm.action);
    let mut report = XmodReport { action, homomorphism: None, cm1: None, cm2: None, cm3: None };
    let a = &cm.action.ambient;
    for x in tuples(a.dim(), a.arity()) {
        let ls: Vec<usize> = (0..x.len()).filter(|&t| cm.action.in_l(x[t])).collect();
        if ls.is_empty() {
            continue;
        }
        let value = a.basis_bracket(&x);
        let pure = ls.len() == x.len();
        if pure {
            if report.homomorphism.is_none() && cm.mu_of(value) != cm.replaced(&x, &ls) {
                report.homomorphism = Some(Witness { tuple: x.clone(), replaced: ls.clone() });
            }
            if report.cm2.is_none() {
                if let Some(s) = proper_subsets(&ls).find(|s| &cm.replaced(&x, s) != value) {
                    report.cm2 = Some(Witness { tuple: x.clone(), replaced: s });
                }
            }
        } else if report.cm1.is_none() && cm.mu_of(value) != cm.replaced(&x, &ls) {
            report.cm1 = Some(Witness { tuple: x.clone(), replaced: ls.clone() });
        }
        if ls.len() >= 2 && report.cm3.is_none() {
            if let Some(s) = proper_subsets(&ls).find(|s| &cm.replaced(&x, s) != value) {
                report.cm3 = Some(Witness { tuple: x.clone(), replaced: s });
            }
        }
    }
    report
}

/// `I -> A` for an ideal `I`, acted on by the bracket of `A`.
pub fn from_ideal(a: &NAlgebra, i: &Subspace) -> Result<CrossedModule> {
    if !is_ideal(a, i)? {
        return Err(Error::NotAnIdeal);
    }
    let r = i.dim();
    let embed: Vec<SparseVec> = i.basis().sparse_rows()[..r].to_vec();
    let units: Vec<SparseVec> = (0..a.dim()).map(|k| a.unit(k)).collect();
    let ambient = semidirect(
        a,
        r,
        |k| if k < r { &embed[k] } else { &units[k - r] },
        |v| i.coordinates(v).map(|c| c.into_iter().enumerate().filter(|(_, s)| !s.is_zero()).collect()),
    )?;
    let mu = Matrix::from_rows(a.field(), a.dim(), embed)?;
    CrossedModule::new(ActionStructure::new(ambient, r)?, mu)
}

/// Ambient on `L (+) P` where a tuple is bracketed in `host` after sending
/// each coordinate through `image`; brackets with an `L` argument are read
/// back into `L` by `to_l`, the others stay in `P = host`.
fn semidirect<'v>(
    host: &NAlgebra,
    split: usize,
    image: impl Fn(usize) -> &'v SparseVec,
    to_l: impl Fn(&SparseVec) -> Option<SparseVec>,
) -> Result<NAlgebra> {
    let f = host.field();
    let dim = split + host.dim();
    let mut rows = Vec::new();
    for x in tuples(dim, host.arity()) {
        let args: Vec<&SparseVec> = x.iter().map(|&k| image(k)).collect();
        let w = host.bracket_sparse(&args);
        if x.iter().any(|&k| k < split) {
            rows.push(to_l(&w).ok_or_else(|| Error::IllDefined("bracket with an L argument leaves L".into()))?);
        } else {
            rows.push(w.into_iter().map(|(k, c)| (k + split, c)).collect());
        }
    }
    NAlgebra::new(f, host.arity(), dim, Matrix::from_rows(f, dim, rows)?)
}

/// `pi : K -> L` for a central extension, `L` acting on `K` through
/// pre-images; the result is checked to be independent of the section.
pub fn from_central_extension(ce: &CentralExtension) -> Result<CrossedModule> {
    if !ce.is_central() {
        return Err(Error::NotCentral);
    }
    let pi = &ce.projection.matrix;
    let build = |s: &Matrix| -> Result<NAlgebra> {
        let dk = ce.total.dim();
        let dl = ce.base.dim();
        let f = ce.total.field();
        let dim = dk + dl;
        let units: Vec<SparseVec> = (0..dk).map(|k| ce.total.unit(k)).collect();
        let mut rows = Vec::new();
        for x in tuples(dim, ce.total.arity()) {
            if x.iter().all(|&k| k >= dk) {
                let y: Vec<usize> = x.iter().map(|k| k - dk).collect();
                rows.push(ce.base.basis_bracket(&y).iter().map(|(k, c)| (k + dk, c.clone())).collect());
            } else {
                let args: Vec<&SparseVec> = x.iter().map(|&k| if k < dk { &units[k] } else { s.row(k - dk) }).collect();
                rows.push(ce.total.bracket_sparse(&args));
            }
        }
        NAlgebra::new(f, ce.total.arity(), dim, Matrix::from_rows(f, dim, rows)?)
    };
    let ambient = build(&section(pi, 0..pi.rows())?)?;
    if build(&section(pi, (0..pi.rows()).rev())?)? != ambient {
        return Err(Error::IllDefined("action depends on the section".into()));
    }
    CrossedModule::new(ActionStructure::new(ambient, ce.total.dim())?, pi.clone())
}

/// `XU_n^p`: `U_n^p` on the ambient, `mu` unchanged.
pub fn xu_functor(cm: &CrossedModule, p: usize) -> Result<CrossedModule> {
    ArityPair::new(cm.arity(), p)?;
    let ambient = u_functor(&cm.action.ambient, p)?;
    CrossedModule::new(ActionStructure::new(ambient, cm.action.split)?, cm.mu.clone())
}

/// `I^0(L) = (0 -> L)`, `I^1(L) = (L -> L)`.
pub fn i_functor(a: &NAlgebra, variant: u8) -> Result<CrossedModule> {
    match variant {
        0 => from_ideal(a, &Subspace::zero(a.field(), a.dim())),
        1 => from_ideal(a, &Subspace::full(a.field(), a.dim())),
        v => Err(Error::Invalid(format!("no I^{v}"))),
    }
}

/// `J^0 = P / Im(mu)`, `J^1 = P`, `J^2 = L`.
pub fn j_functor(cm: &CrossedModule, variant: u8) -> Result<NAlgebra> {
    match variant {
        0 => Ok(quotient(&cm.action.acting()?, &cm.mu.map_image())?.quotient),
        1 => cm.action.acting(),
        2 => cm.action.acted_on(),
        v => Err(Error::Invalid(format!("no J^{v}"))),
    }
}

/// `Ker(mu)` lies in the center of `L`.
pub fn kernel_is_central(cm: &CrossedModule) -> Result<bool> {
    cm.mu.map_kernel().is_subspace_of(&center(&cm.action.acted_on()?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramReport {
    /// `XU o I^i = I^i o U`, `i = 0, 1`.
    pub i: [bool; 2],
    /// `U o J^j = J^j o XU`, `j = 0, 1, 2`.
    pub j: [bool; 3],
}

impl DiagramReport {
    pub fn passed(&self) -> bool {
        self.i.iter().chain(&self.j).all(|&b| b)
    }
}

pub fn check_xmod_diagrams(a: &NAlgebra, cm: &CrossedModule, p: usize) -> Result<DiagramReport> {
    let ua = u_functor(a, p)?;
    let mut i = [false; 2];
    for (v, slot) in i.iter_mut().enumerate() {
        *slot = xu_functor(&i_functor(a, v as u8)?, p)? == i_functor(&ua, v as u8)?;
    }
    let xu = xu_functor(cm, p)?;
    let mut j = [false; 3];
    for (v, slot) in j.iter_mut().enumerate() {
        *slot = u_functor(&j_functor(cm, v as u8)?, p)? == j_functor(&xu, v as u8)?;
    }
    Ok(DiagramReport { i, j })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Field;
    use crate::nalg::corpus;
    use crate::tensoruce::uce;

    fn e1_ideal() -> (NAlgebra, Subspace) {
        let a = corpus::ex22v();
        let i = Subspace::coordinate(a.field(), 2, &[0]);
        (a, i)
    }

    #[test]
    fn ex22v_split_action() {
        let a = corpus::ex22v();
        let s = ActionStructure::new(a, 1).unwrap();
        assert!(action_validate(&s).passed());
    }

    #[test]
    fn abelian_ambient_always_acts() {
        for split in 0..=3 {
            assert!(action_validate(&ActionStructure::new(corpus::abelian(3, 3), split).unwrap()).passed());
        }
    }

    #[test]
    fn perturbed_mixed_bracket_breaks_grading() {
        let a = corpus::ex22v();
        let mut m = a.structure().clone();
        let f = a.field();
        m.set(crate::exactla::multiindex::lin(&[0, 1, 1], 2), 1, f.one());
        let bad = NAlgebra::new(f, 3, 2, m).unwrap();
        let r = action_validate(&ActionStructure::new(bad, 1).unwrap());
        assert_eq!(r.grading.unwrap().tuple, vec![0, 1, 1]);
    }

    #[test]
    fn pattern_counts() {
        assert_eq!(mixed_fi_patterns(2).len(), 6);
        assert_eq!(mixed_fi_patterns(3).len(), 30);
    }

    #[test]
    fn inclusion_and_zero_crossed_modules() {
        let a = corpus::ex51i();
        for v in [0, 1] {
            let cm = i_functor(&a, v).unwrap();
            assert!(xmod_validate(&cm).passed(), "I^{v}");
            assert!(kernel_is_central(&cm).unwrap());
        }
        assert_eq!(j_functor(&i_functor(&a, 1).unwrap(), 1).unwrap(), a);
        assert_eq!(j_functor(&i_functor(&a, 1).unwrap(), 2).unwrap(), a);
        assert_eq!(j_functor(&i_functor(&a, 0).unwrap(), 0).unwrap(), a);
        assert_eq!(j_functor(&i_functor(&a, 1).unwrap(), 0).unwrap().dim(), 0);
    }

    #[test]
    fn ideal_crossed_module_and_its_lift() {
        let (a, i) = e1_ideal();
        let cm = from_ideal(&a, &i).unwrap();
        assert!(xmod_validate(&cm).passed());
        let j0 = j_functor(&cm, 0).unwrap();
        assert_eq!(j0.dim(), 1);
        assert!(j0.is_abelian());
        let up = xu_functor(&cm, 5).unwrap();
        assert_eq!(up.arity(), 5);
        assert!(xmod_validate(&up).passed());
        assert!(check_xmod_diagrams(&a, &cm, 5).unwrap().passed());
    }

    #[test]
    fn non_ideal_is_rejected() {
        let a = corpus::ex22v();
        let i = Subspace::coordinate(a.field(), 2, &[1]);
        assert!(matches!(from_ideal(&a, &i), Err(Error::NotAnIdeal)));
    }

    #[test]
    fn central_extension_crossed_modules() {
        for a in [corpus::ex51i(), corpus::ex51iii()] {
            let u = uce(&a).unwrap();
            let cm = from_central_extension(&u.extension).unwrap();
            assert!(xmod_validate(&cm).passed());
            assert!(kernel_is_central(&cm).unwrap());
        }
    }

    #[test]
    fn binary_cm2_and_cm3_coincide() {
        let a = corpus::ex51ii();
        let mut cm = i_functor(&a, 1).unwrap();
        let r = xmod_validate(&cm);
        assert_eq!(r.cm2, r.cm3);
        cm.mu = cm.mu.scale(&a.field().from_i64(2));
        let r = xmod_validate(&cm);
        assert!(r.cm2.is_some());
        assert_eq!(r.cm2, r.cm3);
    }

    #[test]
    fn broken_mu_is_caught() {
        let a = corpus::ex51iii();
        let mut cm = i_functor(&a, 1).unwrap();
        cm.mu = Matrix::zeros(Field::Rational, 3, 3);
        let r = xmod_validate(&cm);
        assert!(r.homomorphism.is_none());
        assert!(r.cm1.is_none());
        assert!(r.cm2.is_some());
        assert!(r.cm3.is_some());
    }
}
