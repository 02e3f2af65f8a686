//! Binomials, multinomials and weak compositions.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombinatError {
    #[error("multinomial parts sum to {sum}, which exceeds n = {n}")]
    PartsExceedTotal { n: usize, sum: usize },
}

pub fn factorial(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: usize, k: i64) -> BigInt {
    if k < 0 || k as usize > n {
        return BigInt::zero();
    }
    let k = (k as usize).min(n - k as usize);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `n! / (p_1! ... p_m! (n - sum p)!)`; the final block is implicit.
pub fn multinomial(n: usize, parts: &[usize]) -> Result<BigInt, CombinatError> {
    let sum: usize = parts.iter().sum();
    if sum > n {
        return Err(CombinatError::PartsExceedTotal { n, sum });
    }
    // Product of binomials avoids dividing one huge factorial.
    let mut acc = BigInt::one();
    let mut remaining = n;
    for &p in parts {
        acc *= binomial(remaining, p as i64);
        remaining -= p;
    }
    Ok(acc)
}

/// A weak composition: `parts` sums to `total`, zeros allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    pub parts: Vec<usize>,
    pub total: usize,
}

/// Lazy lexicographic enumeration of weak compositions of `total` into
/// exactly `parts` pieces.
///
/// The first composition is `(0, ..., 0, total)` and the last is
/// `(total, 0, ..., 0)`. Yields nothing when `parts == 0`.
pub fn weak_compositions(total: usize, parts: usize) -> WeakCompositions {
    let current = if parts == 0 {
        None
    } else {
        let mut v = vec![0; parts];
        v[parts - 1] = total;
        Some(v)
    };
    WeakCompositions { total, current }
}

#[derive(Debug, Clone)]
pub struct WeakCompositions {
    total: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for WeakCompositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let cur = self.current.take()?;
        let out = Composition {
            parts: cur.clone(),
            total: self.total,
        };
        self.current = successor(cur);
        Some(out)
    }
}

// Lexicographic successor: find the rightmost position i < last with a
// positive suffix mass, bump it, and dump the remaining mass on the last slot.
fn successor(mut v: Vec<usize>) -> Option<Vec<usize>> {
    let last = v.len() - 1;
    let mut tail = v[last];
    let mut i = last;
    while i > 0 {
        i -= 1;
        if tail > 0 {
            v[i] += 1;
            tail -= 1;
            for slot in v.iter_mut().skip(i + 1) {
                *slot = 0;
            }
            v[last] = tail;
            return Some(v);
        }
        tail += v[i];
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(5, 2), big(10));
        assert_eq!(binomial(7, 0), big(1));
        assert_eq!(binomial(3, 5), big(0));
        assert_eq!(binomial(3, -1), big(0));
        assert_eq!(binomial(0, 0), big(1));
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial(3, &[1, 1, 1]).unwrap(), big(6));
        for l in 0..10 {
            assert_eq!(multinomial(l, &[l]).unwrap(), big(1));
        }
        assert_eq!(multinomial(4, &[2, 2]).unwrap(), big(6));
        assert_eq!(
            multinomial(3, &[2, 2]),
            Err(CombinatError::PartsExceedTotal { n: 3, sum: 4 })
        );
    }

    #[test]
    fn multinomial_times_factorials_is_n_factorial() {
        for n in 0..=10 {
            for parts in 1..=3 {
                for s in 0..=n {
                    for c in weak_compositions(s, parts) {
                        let m = multinomial(n, &c.parts).unwrap();
                        let denom = c
                            .parts
                            .iter()
                            .fold(factorial(n - s), |acc, &p| acc * factorial(p));
                        assert_eq!(m * denom, factorial(n));
                    }
                }
            }
        }
    }

    #[test]
    fn composition_examples() {
        let all: Vec<_> = weak_compositions(2, 2).map(|c| c.parts).collect();
        assert_eq!(all, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        let zero: Vec<_> = weak_compositions(0, 4).map(|c| c.parts).collect();
        assert_eq!(zero, vec![vec![0, 0, 0, 0]]);
        assert_eq!(weak_compositions(3, 2).count(), 4);
        assert_eq!(weak_compositions(3, 0).count(), 0);
        assert_eq!(weak_compositions(5, 1).count(), 1);
    }

    #[test]
    fn composition_counts_order_and_sums() {
        for total in 0..=7 {
            for parts in 1..=5 {
                let all: Vec<_> = weak_compositions(total, parts).collect();
                assert_eq!(
                    BigInt::from(all.len()),
                    binomial(total + parts - 1, parts as i64 - 1)
                );
                assert!(all.iter().all(|c| c.parts.iter().sum::<usize>() == total));
                assert!(all.windows(2).all(|w| w[0].parts < w[1].parts));
            }
        }
    }

    #[test]
    fn multinomial_theorem_at_ones() {
        for n in 1..=6usize {
            for l in 0..=6usize {
                let sum = weak_compositions(l, n)
                    .map(|c| multinomial(l, &c.parts).unwrap())
                    .fold(BigInt::zero(), |a, b| a + b);
                assert_eq!(sum, BigInt::from(n).pow(l as u32), "n={n} l={l}");
            }
        }
    }
}
