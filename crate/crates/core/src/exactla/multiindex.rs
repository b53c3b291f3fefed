//! Coordinates on tensor powers `V^{(x) m}` of a `d`-dimensional space.
//!
//! The leftmost slot is most significant: `lin(i_1..i_m) = sum_t i_t d^(m-t)`
//! with 0-based slots, so iterating linear indices in order enumerates
//! tuples lexicographically.

use crate::error::{Error, Result};

/// `d^m`, or an error if it does not fit in `usize`.
pub fn pow(d: usize, m: usize) -> Result<usize> {
    let mut acc: usize = 1;
    for _ in 0..m {
        acc = acc.checked_mul(d).ok_or(Error::BudgetExceeded { required: u128::MAX, budget: usize::MAX })?;
    }
    Ok(acc)
}

/// `d^m` as a `u128` for budget comparisons.
pub fn pow_u128(d: usize, m: usize) -> u128 {
    (d as u128).checked_pow(m as u32).unwrap_or(u128::MAX)
}

pub fn lin(slots: &[usize], d: usize) -> usize {
    slots.iter().fold(0, |acc, &i| acc * d + i)
}

pub fn unlin(mut index: usize, d: usize, m: usize) -> Vec<usize> {
    let mut out = vec![0; m];
    for t in (0..m).rev() {
        out[t] = index % d;
        index /= d;
    }
    out
}

/// Writes the tuple for `index` into `out` without allocating.
pub fn unlin_into(mut index: usize, d: usize, out: &mut [usize]) {
    for t in (0..out.len()).rev() {
        out[t] = index % d;
        index /= d;
    }
}

/// Lexicographic iterator over all `m`-tuples with entries below `d`.
#[derive(Debug, Clone)]
pub struct Tuples {
    d: usize,
    current: Option<Vec<usize>>,
}

impl Tuples {
    pub fn new(d: usize, m: usize) -> Self {
        let current = if d == 0 && m > 0 { None } else { Some(vec![0; m]) };
        Tuples { d, current }
    }
}

impl Iterator for Tuples {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.current.take()?;
        let mut nxt = cur.clone();
        let mut t = nxt.len();
        loop {
            if t == 0 {
                break;
            }
            t -= 1;
            nxt[t] += 1;
            if nxt[t] < self.d {
                self.current = Some(nxt);
                break;
            }
            nxt[t] = 0;
        }
        Some(cur)
    }
}

pub fn tuples(d: usize, m: usize) -> Tuples {
    Tuples::new(d, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linearization_is_bijective() {
        for d in 1..=5 {
            for m in 0..=9 {
                let n = pow(d, m).unwrap();
                if n > 50_000 {
                    continue;
                }
                for (k, t) in tuples(d, m).enumerate() {
                    assert_eq!(lin(&t, d), k);
                    assert_eq!(unlin(k, d, m), t);
                }
                assert_eq!(tuples(d, m).count(), n);
            }
        }
    }

    #[test]
    fn leftmost_slot_most_significant() {
        assert_eq!(lin(&[1, 0, 0], 3), 9);
        assert_eq!(lin(&[0, 0, 2], 3), 2);
    }

    #[test]
    fn empty_cases() {
        assert_eq!(tuples(0, 2).count(), 0);
        assert_eq!(tuples(0, 0).count(), 1);
        assert_eq!(tuples(3, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
    }
}
