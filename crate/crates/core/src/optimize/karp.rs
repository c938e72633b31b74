//! Karp's maximum cycle mean recurrence and longest-path node potentials on
//! integer weights. Runs on `i128` when the data provably fits, on `BigInt`
//! otherwise.

use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};

pub(crate) trait ExactInt:
    Clone + Ord + Send + Sync + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + From<i64>
{
    fn from_big(value: &BigInt) -> Self;
    fn into_big(self) -> BigInt;
}

impl ExactInt for i128 {
    fn from_big(value: &BigInt) -> Self {
        value.to_i128().expect("bounded by fits_i128")
    }
    fn into_big(self) -> BigInt {
        BigInt::from(self)
    }
}

impl ExactInt for BigInt {
    fn from_big(value: &BigInt) -> Self {
        value.clone()
    }
    fn into_big(self) -> BigInt {
        self
    }
}

/// Whether every quantity of size `n^3 * max_abs` stays inside `i128`.
pub(crate) fn fits_i128(max_abs: &BigInt, n: usize) -> bool {
    let n = BigInt::from(n.max(1));
    max_abs * &n * &n * &n * 4 < BigInt::one() << 120
}

/// a/b < c/d for positive b, d.
fn less<T: ExactInt>(a: &T, b: i64, c: &T, d: i64) -> bool {
    a.clone() * T::from(d) < c.clone() * T::from(b)
}

/// Maximum cycle mean of a strongly connected component with local node
/// indices `0..n`, as `numerator / denominator` with `denominator` in `1..=n`.
pub(crate) fn max_cycle_mean<T: ExactInt>(n: usize, edges: &[(usize, usize, T)]) -> (T, i64) {
    // walk[k * n + v]: heaviest walk of exactly k edges from node 0 to v
    let mut walk: Vec<Option<T>> = vec![None; (n + 1) * n];
    walk[0] = Some(T::from(0));
    for k in 1..=n {
        let (done, rest) = walk.split_at_mut(k * n);
        let prev = &done[(k - 1) * n..];
        let cur = &mut rest[..n];
        for (u, v, w) in edges {
            if let Some(du) = &prev[*u] {
                let cand = du.clone() + w.clone();
                match &cur[*v] {
                    Some(dv) if *dv >= cand => {}
                    _ => cur[*v] = Some(cand),
                }
            }
        }
    }
    let mut best: Option<(T, i64)> = None;
    for v in 0..n {
        let Some(full) = &walk[n * n + v] else { continue };
        let mut worst: Option<(T, i64)> = None;
        for k in 0..n {
            if let Some(dk) = &walk[k * n + v] {
                let num = full.clone() - dk.clone();
                let den = (n - k) as i64;
                if worst.as_ref().is_none_or(|(a, b)| less(&num, den, a, *b)) {
                    worst = Some((num, den));
                }
            }
        }
        if let Some((num, den)) = worst {
            if best.as_ref().is_none_or(|(a, b)| less(a, *b, &num, den)) {
                best = Some((num, den));
            }
        }
    }
    best.expect("strongly connected component with a cycle")
}

/// Node potentials `x` with `x[v] >= x[u] + w` for every edge, tight
/// along heaviest paths. Requires that no cycle has positive weight.
pub(crate) fn longest_path_potentials<T: ExactInt>(
    n: usize,
    edges: &[(usize, usize, T)],
) -> Result<Vec<T>> {
    let mut x = vec![T::from(0); n];
    for _ in 0..=n {
        let mut changed = false;
        for (u, v, w) in edges {
            let cand = x[*u].clone() + w.clone();
            if cand > x[*v] {
                x[*v] = cand;
                changed = true;
            }
        }
        if !changed {
            return Ok(x);
        }
    }
    Err(Error::Internal("longest-path relaxation did not converge: positive cycle".into()))
}
