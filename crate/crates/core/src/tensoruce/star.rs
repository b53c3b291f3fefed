use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exactla::multiindex::{self, pow_u128, tuples};
use crate::exactla::sparse::SparseVec;
use crate::exactla::{Matrix, Subspace};
use crate::nalg::{derived_ideal, projection_matrix, Homomorphism, NAlgebra};

use super::tensor::{delta2_budget, derivation_on_tensor, kron_sparse};

/// `L^{*n} = L^{(x) n} / Im(delta_2)` with its induced bracket.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarPower {
    pub source: NAlgebra,
    /// `Im(delta_2)` inside `L^{(x) n}`.
    pub relations: Subspace,
    /// Tensor index of the representative of each basis vector.
    pub representatives: Vec<usize>,
    /// `d^n x coker_dim`.
    pub projection_from_tensor: Matrix,
    pub algebra: NAlgebra,
    /// `x_1 * .. * x_n -> [x_1, .., x_n]`.
    pub bracket_map: Homomorphism,
}

impl StarPower {
    pub fn coker_dim(&self) -> usize {
        self.representatives.len()
    }

    /// Class of a tensor in `L^{*n}`.
    pub fn project(&self, t: &SparseVec) -> SparseVec {
        self.projection_from_tensor.apply(t)
    }
}

pub fn star_power(a: &NAlgebra) -> Result<StarPower> {
    star_power_budget(a, Budget::default())
}

pub fn star_power_budget(a: &NAlgebra, budget: Budget) -> Result<StarPower> {
    let n = a.arity();
    let field = a.field();
    let relations = delta2_budget(a, budget)?.map_image();
    let reps = relations.non_pivots();
    let c = reps.len();
    budget.check(pow_u128(c, n))?;
    let proj = projection_matrix(&relations);
    let generators = &relations.basis().sparse_rows()[..relations.dim()];

    // Relations in a slot other than the first enter only through their
    // bracket, which must vanish.
    for g in generators {
        if !a.structure().apply(g).is_empty() {
            return Err(Error::IllDefined("a relation has nonzero bracket".into()));
        }
    }
    // In the first slot the bracket is the derivation ad_{y_2..y_n}, with
    // y_i ranging over brackets, hence over a basis of [L^n].
    let derived = derived_ideal(a);
    let ybasis = &derived.basis().sparse_rows()[..derived.dim()];
    for y in tuples(ybasis.len(), n - 1) {
        let ys: Vec<SparseVec> = y.iter().map(|&i| ybasis[i].clone()).collect();
        let ad = a.ad_sparse(&ys);
        for g in generators {
            if !proj.apply(&derivation_on_tensor(&ad, g, n)).is_empty() {
                return Err(Error::IllDefined("a relation is not stable under the bracket".into()));
            }
        }
    }

    let brackets: Vec<&SparseVec> = reps.iter().map(|&t| a.structure().row(t)).collect();
    let mut rows = Vec::with_capacity(multiindex::pow(c, n)?);
    for q in tuples(c, n) {
        let factors: Vec<&SparseVec> = q.iter().map(|&i| brackets[i]).collect();
        let product = proj.apply(&kron_sparse(&factors, a.dim(), field));
        let ad = a.ad_sparse(&factors[1..].iter().map(|v| (*v).clone()).collect::<Vec<_>>());
        let first = vec![(reps[q[0]], field.one())];
        if proj.apply(&derivation_on_tensor(&ad, &first, n)) != product {
            return Err(Error::IllDefined("bracket of representatives disagrees with the product of brackets".into()));
        }
        rows.push(product);
    }
    let algebra = NAlgebra::new(field, n, c, Matrix::from_rows(field, c, rows)?)?;
    let map = Matrix::from_rows(field, a.dim(), brackets.into_iter().cloned().collect())?;
    let bracket_map = Homomorphism::new(algebra.clone(), a.clone(), map)?;
    Ok(StarPower { source: a.clone(), relations, representatives: reps, projection_from_tensor: proj, algebra, bracket_map })
}
