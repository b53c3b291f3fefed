use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::exactla::multiindex::tuples;
use crate::exactla::sparse::SparseVec;
use crate::exactla::{Matrix, RowReducer, Subspace};

use super::NAlgebra;

fn check_ambient(a: &NAlgebra, s: &Subspace) -> Result<()> {
    if s.ambient_dim() != a.dim() {
        return Err(Error::AmbientMismatch(a.dim(), s.ambient_dim()));
    }
    if s.field() != a.field() {
        return Err(Error::FieldMismatch(a.field().to_string(), s.field().to_string()));
    }
    Ok(())
}

/// All brackets with `v` in one slot and basis vectors elsewhere.
fn slot_brackets<'a>(a: &'a NAlgebra, v: &'a SparseVec) -> impl Iterator<Item = SparseVec> + 'a {
    let n = a.arity();
    (0..n).flat_map(move |slot| tuples(a.dim(), n - 1).map(move |rest| a.slot_bracket(v, slot, &rest)))
}

pub fn is_ideal(a: &NAlgebra, s: &Subspace) -> Result<bool> {
    check_ambient(a, s)?;
    let red = s.reducer();
    Ok(s.basis().sparse_rows()[..s.dim()].iter().all(|b| slot_brackets(a, b).all(|w| red.contains(&w))))
}

/// Smallest n-sided ideal containing `s`.
pub fn ideal_closure(a: &NAlgebra, s: &Subspace) -> Result<Subspace> {
    check_ambient(a, s)?;
    let mut red = s.reducer();
    let mut queue: VecDeque<SparseVec> = s.basis().sparse_rows()[..s.dim()].iter().cloned().collect();
    while let Some(v) = queue.pop_front() {
        if red.is_full() {
            break;
        }
        for w in slot_brackets(a, &v).collect::<Vec<_>>() {
            let r = red.reduce(&w);
            if !r.is_empty() {
                red.insert(&r);
                queue.push_back(r);
            }
        }
    }
    Ok(Subspace::from_reducer(red))
}

/// `[L^n]`, the span of all brackets.
pub fn derived_ideal(a: &NAlgebra) -> Subspace {
    a.structure().map_image()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Commutator {
    pub ideal: Subspace,
    /// Dimension of the raw span of mixed brackets before closure.
    pub span_dim: usize,
}

impl Commutator {
    pub fn closure_enlarged(&self) -> bool {
        self.ideal.dim() > self.span_dim
    }
}

/// `[I, J, L^{n-2}]`: the ideal generated by brackets with an element of `I`
/// and an element of `J` in two distinct slots and basis vectors elsewhere.
pub fn commutator(a: &NAlgebra, i: &Subspace, j: &Subspace) -> Result<Commutator> {
    if !is_ideal(a, i)? || !is_ideal(a, j)? {
        return Err(Error::NotAnIdeal);
    }
    let n = a.arity();
    let d = a.dim();
    let ib = &i.basis().sparse_rows()[..i.dim()];
    let jb = &j.basis().sparse_rows()[..j.dim()];
    let mut red = RowReducer::new(a.field(), d);
    for si in 0..n {
        for sj in 0..n {
            if si == sj {
                continue;
            }
            for u in ib {
                for v in jb {
                    for rest in tuples(d, n - 2) {
                        let mut args: Vec<SparseVec> = Vec::with_capacity(n);
                        let mut r = rest.iter();
                        for t in 0..n {
                            if t == si {
                                args.push(u.clone());
                            } else if t == sj {
                                args.push(v.clone());
                            } else {
                                args.push(a.unit(*r.next().unwrap()));
                            }
                        }
                        let refs: Vec<&SparseVec> = args.iter().collect();
                        red.insert(&a.bracket_sparse(&refs));
                    }
                }
            }
        }
    }
    let span = Subspace::from_reducer(red);
    let span_dim = span.dim();
    Ok(Commutator { ideal: ideal_closure(a, &span)?, span_dim })
}

pub fn commutator_ideal(a: &NAlgebra, i: &Subspace, j: &Subspace) -> Result<Subspace> {
    Ok(commutator(a, i, j)?.ideal)
}

pub fn is_perfect(a: &NAlgebra) -> bool {
    derived_ideal(a).dim() == a.dim()
}

/// Span of brackets of elements of `s` in every slot.
fn bracket_of_subspace(a: &NAlgebra, s: &Subspace) -> Subspace {
    let b = &s.basis().sparse_rows()[..s.dim()];
    let mut red = RowReducer::new(a.field(), a.dim());
    for t in tuples(b.len(), a.arity()) {
        let args: Vec<&SparseVec> = t.iter().map(|&k| &b[k]).collect();
        red.insert(&a.bracket_sparse(&args));
    }
    Subspace::from_reducer(red)
}

/// Dimensions of `L ⊇ [L^n] ⊇ [[L^n]^n] ⊇ ...` up to the first repeat.
pub fn derived_series(a: &NAlgebra) -> Vec<usize> {
    let mut dims = vec![a.dim()];
    let mut cur = Subspace::full(a.field(), a.dim());
    loop {
        let next = bracket_of_subspace(a, &cur);
        if next.dim() == cur.dim() {
            return dims;
        }
        dims.push(next.dim());
        cur = next;
    }
}

/// Vectors whose bracket with anything, in any slot, is zero.
pub fn center(a: &NAlgebra) -> Subspace {
    let n = a.arity();
    let d = a.dim();
    let rests: Vec<Vec<usize>> = tuples(d, n - 1).collect();
    let block = rests.len() * d;
    let rows: Vec<SparseVec> = (0..d)
        .map(|z| {
            let e = a.unit(z);
            let mut row = Vec::new();
            for slot in 0..n {
                for (r, rest) in rests.iter().enumerate() {
                    let off = slot * block + r * d;
                    row.extend(a.slot_bracket(&e, slot, rest).into_iter().map(|(j, c)| (off + j, c)));
                }
            }
            row
        })
        .collect();
    Matrix::from_rows(a.field(), n * block, rows).expect("center matrix rows are sorted").map_kernel()
}
