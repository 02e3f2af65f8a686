//! Signed Stirling numbers of the first kind and factorial polynomials.
//!
//! `S1(n, m)` is the coefficient of `x^m` in the falling factorial
//! `(x)_n = x(x-1)...(x-n+1)`. The unsigned numbers needed for rising
//! factorials are written as `(-1)^(n-m) S1(n, m)` at the use site; there is
//! no second table.

use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::poly::Polynomial;
use crate::rational::{int, Rational};

/// Triangle of `S1(n, m)` for `0 <= m <= n <= n_max`.
#[derive(Debug, Clone)]
pub struct Stirling1Table {
    rows: Vec<Vec<BigInt>>,
}

impl Stirling1Table {
    pub fn new(n_max: usize) -> Self {
        let mut table = Stirling1Table {
            rows: vec![vec![BigInt::one()]],
        };
        table.extend_to(n_max);
        table
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// Appends rows via `S1(n+1, m) = S1(n, m-1) - n S1(n, m)`.
    pub fn extend_to(&mut self, n_max: usize) {
        while self.rows.len() <= n_max {
            let n = self.rows.len() - 1;
            let prev = &self.rows[n];
            let row: Vec<BigInt> = (0..=n + 1)
                .map(|m| {
                    let left = if m >= 1 { prev[m - 1].clone() } else { BigInt::zero() };
                    let right = prev.get(m).map(|v| v * n).unwrap_or_default();
                    left - right
                })
                .collect();
            self.rows.push(row);
        }
    }

    /// `S1(n, m)`, or `None` if `n` is past the built rows.
    pub fn get(&self, n: usize, m: usize) -> Option<BigInt> {
        let row = self.rows.get(n)?;
        Some(row.get(m).cloned().unwrap_or_default())
    }
}

static SHARED: LazyLock<RwLock<Stirling1Table>> =
    LazyLock::new(|| RwLock::new(Stirling1Table::new(32)));

/// Grows the shared table ahead of a parallel phase.
pub fn precompute(n_max: usize) {
    let mut table = SHARED.write().expect("stirling table lock poisoned");
    table.extend_to(n_max);
}

/// Signed `S1(n, m)`; zero outside the triangle.
pub fn stirling1(n: usize, m: usize) -> BigInt {
    if m > n {
        return BigInt::zero();
    }
    if let Some(v) = SHARED.read().expect("stirling table lock poisoned").get(n, m) {
        return v;
    }
    precompute(n);
    SHARED
        .read()
        .expect("stirling table lock poisoned")
        .get(n, m)
        .expect("row was just built")
}

pub fn stirling1_rat(n: usize, m: usize) -> Rational {
    Rational::from_integer(stirling1(n, m))
}

/// `(x)_n = prod_{i<n} (x - i)`, built by direct multiplication.
pub fn falling_factorial_poly(n: usize) -> Polynomial {
    (0..n).fold(Polynomial::one(), |acc, i| {
        &acc * &Polynomial::new(vec![int(-(i as i64)), int(1)])
    })
}

/// `x^(n) = prod_{i<n} (x + i)`.
pub fn rising_factorial_poly(n: usize) -> Polynomial {
    (0..n).fold(Polynomial::one(), |acc, i| {
        &acc * &Polynomial::new(vec![int(i as i64), int(1)])
    })
}

/// Rising factorial value `y^(n) = y(y+1)...(y+n-1)`; `y^(0) = 1`.
pub fn rising_factorial(y: &Rational, n: usize) -> Rational {
    (0..n).fold(Rational::one(), |acc, i| acc * (y + int(i as i64)))
}

/// Falling factorial value `(y)_n`.
pub fn falling_factorial(y: &Rational, n: usize) -> Rational {
    (0..n).fold(Rational::one(), |acc, i| acc * (y - int(i as i64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::sign;

    #[test]
    fn examples() {
        assert_eq!(stirling1(3, 2), BigInt::from(-3));
        assert_eq!(stirling1(4, 1), BigInt::from(-6));
        assert_eq!(stirling1(4, 2), BigInt::from(11));
        for n in 0..10 {
            assert_eq!(stirling1(n, n), BigInt::one());
        }
        assert_eq!(stirling1(0, 0), BigInt::one());
        assert_eq!(stirling1(5, 0), BigInt::zero());
        assert_eq!(stirling1(2, 5), BigInt::zero());
    }

    #[test]
    fn factorial_poly_examples() {
        assert_eq!(falling_factorial_poly(0), Polynomial::one());
        assert_eq!(falling_factorial_poly(2), Polynomial::from_ints(&[0, -1, 1]));
        assert_eq!(falling_factorial_poly(3), Polynomial::from_ints(&[0, 2, -3, 1]));
        assert_eq!(falling_factorial_poly(4), Polynomial::from_ints(&[0, -6, 11, -6, 1]));
        assert_eq!(rising_factorial_poly(0), Polynomial::one());
        assert_eq!(rising_factorial_poly(2), Polynomial::from_ints(&[0, 1, 1]));
        assert_eq!(rising_factorial_poly(3), Polynomial::from_ints(&[0, 2, 3, 1]));
    }

    #[test]
    fn table_matches_falling_factorial() {
        for n in 0..=20 {
            let p = falling_factorial_poly(n);
            for m in 0..=n {
                assert_eq!(p.coeff(m), stirling1_rat(n, m), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn rising_uses_signed_table() {
        for n in 0..=20 {
            let p = rising_factorial_poly(n);
            for m in 0..=n {
                assert_eq!(p.coeff(m), sign(n - m) * stirling1_rat(n, m), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn row_sums_vanish() {
        for n in 2..=20 {
            let sum = (0..=n).fold(BigInt::zero(), |acc, m| acc + stirling1(n, m));
            assert!(sum.is_zero());
            assert!(falling_factorial_poly(n).eval(&int(1)).is_zero());
        }
    }

    #[test]
    fn recurrence_holds_for_every_entry() {
        let t = Stirling1Table::new(30);
        for n in 0..30 {
            for m in 1..=n + 1 {
                let lhs = t.get(n + 1, m).unwrap();
                let rhs = t.get(n, m - 1).unwrap() - t.get(n, m).unwrap() * n;
                assert_eq!(lhs, rhs);
            }
        }
        assert_eq!(t.n_max(), 30);
        assert!(t.get(31, 0).is_none());
    }

    #[test]
    fn shared_table_grows_on_demand() {
        // Past the preseeded 32 rows.
        let p = falling_factorial_poly(40);
        assert_eq!(stirling1_rat(40, 7), p.coeff(7));
    }

    #[test]
    fn factorial_values() {
        assert_eq!(rising_factorial(&int(0), 0), int(1));
        assert_eq!(rising_factorial(&int(0), 3), int(0));
        assert_eq!(rising_factorial(&int(2), 3), int(24));
        assert_eq!(falling_factorial(&int(5), 2), int(20));
    }
}
