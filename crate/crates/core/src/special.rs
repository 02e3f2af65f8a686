//! Companion number families, each computed from its generating function.
//!
//! | family | generating function |
//! |---|---|
//! | Bernoulli `B_n` | `t/(e^t-1)` |
//! | higher-order `B_n^(r)(x)` | `(t/(e^t-1))^r e^(xt)` |
//! | Nørlund `B_n^(n)` | `t/((1+t) log(1+t))` |
//! | Cauchy `C_n` | `t/log(1+t)` |
//! | Carlitz `β_n^(r)(a)` | `(t/log(1+t))^r (1+t)^a` |
//! | Frobenius-Euler `H_n^(r)(x|λ)` | `((1-λ)/(e^t-λ))^r e^(xt)` |
//!
//! Closed forms such as the binomial convolution for `B_n^(r)(x)` are
//! checked against the series definitions in the tests.

use num_traits::One;
use thiserror::Error;

use crate::combinat::binomial;
use crate::poly::Polynomial;
use crate::rational::{from_big, int, Rational};
use crate::series::{
    binomial_pow_series, expm1_scaled_series, log1p_series, ScalarSeries, Series,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecialError {
    #[error("lambda = 1 is a pole of the Frobenius-Euler generating function")]
    LambdaIsOne,
}

/// `t/(e^t - 1)` to order `n`.
pub fn bernoulli_gf(order: usize) -> ScalarSeries {
    ScalarSeries::t(order + 1)
        .div_with_valuation(&expm1_scaled_series(&Rational::one(), order + 1))
        .expect("e^t - 1 has valuation 1")
}

/// `t/log(1+t)` to order `n`.
pub fn cauchy_gf(order: usize) -> ScalarSeries {
    ScalarSeries::t(order + 1)
        .div_with_valuation(&log1p_series(order + 1))
        .expect("log(1+t) has valuation 1")
}

/// `t/((1+t) log(1+t))` to order `n`.
pub fn norlund_gf(order: usize) -> ScalarSeries {
    let inv_one_plus_t = binomial_pow_series(&int(-1), order);
    cauchy_gf(order).mul(&inv_one_plus_t)
}

/// `B_0..=B_n` with `B_1 = -1/2`.
pub fn bernoulli_numbers(n_max: usize) -> Vec<Rational> {
    bernoulli_gf(n_max).egf_coeffs()
}

pub fn bernoulli(n: usize) -> Rational {
    bernoulli_numbers(n).pop().expect("nonempty")
}

/// `B_0^(r)..=B_n^(r)`: EGF numbers of `(t/(e^t-1))^r`, any integer `r`.
pub fn bernoulli_higher_row(r: i64, n_max: usize) -> Vec<Rational> {
    bernoulli_gf(n_max)
        .pow_int(r)
        .expect("t/(e^t-1) has unit constant term")
        .egf_coeffs()
}

pub fn bernoulli_higher(n: usize, r: i64) -> Rational {
    bernoulli_higher_row(r, n).pop().expect("nonempty")
}

/// `B_n^(r)(x) = sum_j C(n, j) B_(n-j)^(r) x^j`.
pub fn bernoulli_higher_poly(n: usize, r: i64) -> Polynomial {
    let row = bernoulli_higher_row(r, n);
    binomial_convolution(&row, n)
}

/// Nørlund numbers `B_0^(0)..=B_n^(n)` from `t/((1+t) log(1+t))`.
pub fn norlund_numbers(n_max: usize) -> Vec<Rational> {
    norlund_gf(n_max).egf_coeffs()
}

pub fn norlund(n: usize) -> Rational {
    norlund_numbers(n).pop().expect("nonempty")
}

/// Cauchy numbers of the first kind `C_0..=C_n`.
pub fn cauchy_numbers(n_max: usize) -> Vec<Rational> {
    cauchy_gf(n_max).egf_coeffs()
}

pub fn cauchy(n: usize) -> Rational {
    cauchy_numbers(n).pop().expect("nonempty")
}

/// `β_0^(r)(a)..=β_n^(r)(a)`.
pub fn carlitz_beta_row(r: i64, a: &Rational, n_max: usize) -> Vec<Rational> {
    cauchy_gf(n_max)
        .pow_int(r)
        .expect("t/log(1+t) has unit constant term")
        .mul(&binomial_pow_series(a, n_max))
        .egf_coeffs()
}

pub fn carlitz_beta(n: usize, r: i64, a: &Rational) -> Rational {
    carlitz_beta_row(r, a, n).pop().expect("nonempty")
}

/// EGF numbers of `((1-λ)/(e^t-λ))^r`, i.e. `H_0^(r)(0|λ)..=H_n^(r)(0|λ)`.
pub fn frobenius_euler_numbers(
    r: i64,
    lambda: &Rational,
    n_max: usize,
) -> Result<Vec<Rational>, SpecialError> {
    if lambda.is_one() {
        return Err(SpecialError::LambdaIsOne);
    }
    // (e^t - λ)/(1 - λ) = 1 + (e^t - 1)/(1 - λ)
    let scale = (Rational::one() - lambda).recip();
    let base = expm1_scaled_series(&Rational::one(), n_max)
        .scale(&scale)
        .add(&ScalarSeries::one(n_max));
    Ok(base
        .pow_int(-r)
        .expect("constant term is 1")
        .egf_coeffs())
}

/// `H_n^(r)(x|λ)` as a polynomial; monic of degree `n`.
pub fn frobenius_euler_poly(
    n: usize,
    r: i64,
    lambda: &Rational,
) -> Result<Polynomial, SpecialError> {
    let row = frobenius_euler_numbers(r, lambda, n)?;
    Ok(binomial_convolution(&row, n))
}

/// `H_n^(r)(x|λ)` at a point.
pub fn frobenius_euler(
    n: usize,
    r: i64,
    lambda: &Rational,
    x: &Rational,
) -> Result<Rational, SpecialError> {
    Ok(frobenius_euler_poly(n, r, lambda)?.eval(x))
}

// Appell-type product with e^(xt): n-th polynomial is sum_j C(n,j) a_(n-j) x^j.
fn binomial_convolution(row: &[Rational], n: usize) -> Polynomial {
    Polynomial::new(
        (0..=n)
            .map(|j| from_big(binomial(n, j as i64)) * &row[n - j])
            .collect(),
    )
}

/// Precomputed tables for the verifier's hot loops.
///
/// Built once, single-threaded, before any parallel phase; read-only after.
#[derive(Debug, Clone)]
pub struct SpecialTables {
    n_max: usize,
    bernoulli: Vec<Rational>,
    cauchy: Vec<Rational>,
    norlund: Vec<Rational>,
    // higher[r][n] = B_n^(r), r = 0..=n_max + 1
    higher: Vec<Vec<Rational>>,
}

impl SpecialTables {
    pub fn build(n_max: usize) -> Self {
        SpecialTables {
            n_max,
            bernoulli: bernoulli_numbers(n_max),
            cauchy: cauchy_numbers(n_max),
            norlund: norlund_numbers(n_max),
            higher: (0..=n_max as i64 + 1)
                .map(|r| bernoulli_higher_row(r, n_max))
                .collect(),
        }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn bernoulli(&self, n: usize) -> &Rational {
        &self.bernoulli[n]
    }

    pub fn cauchy(&self, n: usize) -> &Rational {
        &self.cauchy[n]
    }

    pub fn norlund(&self, n: usize) -> &Rational {
        &self.norlund[n]
    }

    /// `B_n^(r)` for `0 <= r <= n_max + 1`.
    pub fn bernoulli_higher(&self, n: usize, r: usize) -> &Rational {
        &self.higher[r][n]
    }
}

/// Reconstructs `sum_n H_n^(r)(x|λ) t^n/n!` from the polynomials, for
/// comparison with the generating-function product.
pub fn frobenius_euler_gf_from_polys(
    r: i64,
    lambda: &Rational,
    order: usize,
) -> Result<Series<Polynomial>, SpecialError> {
    let mut polys = Vec::with_capacity(order + 1);
    let mut fact = Rational::one();
    for n in 0..=order {
        if n > 0 {
            fact *= int(n as i64);
        }
        polys.push(frobenius_euler_poly(n, r, lambda)?.scale(&fact.recip()));
    }
    Ok(Series::new(polys))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::series::exp_series;
    use num_traits::Zero;

    #[test]
    fn bernoulli_examples() {
        assert_eq!(bernoulli(0), int(1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(12), rat(-691, 2730));
        for m in 1..10 {
            assert!(bernoulli(2 * m + 1).is_zero());
        }
    }

    #[test]
    fn higher_examples() {
        for n in 0..6 {
            let expected = if n == 0 { int(1) } else { int(0) };
            assert_eq!(bernoulli_higher(n, 0), expected);
        }
        for r in -4..=4 {
            assert_eq!(bernoulli_higher(1, r), rat(-r, 2));
        }
        for n in 0..10 {
            assert_eq!(bernoulli_higher(n, 1), bernoulli(n));
        }
    }

    #[test]
    fn higher_poly_examples() {
        assert_eq!(bernoulli_higher_poly(0, 3), Polynomial::one());
        assert_eq!(
            bernoulli_higher_poly(1, 1),
            Polynomial::new(vec![rat(-1, 2), int(1)])
        );
        for n in 0..8 {
            for r in -2..=3 {
                assert_eq!(bernoulli_higher_poly(n, r).eval(&int(0)), bernoulli_higher(n, r));
            }
        }
    }

    #[test]
    fn higher_poly_matches_bivariate_series() {
        // (t/(e^t-1))^r * e^(xt) over the polynomial ring.
        let order = 9;
        let ext = Series::from_fn(order, |i| {
            Polynomial::monomial(exp_series(order).coeffs()[i].clone(), i)
        });
        for r in -2..=3 {
            let gf = bernoulli_gf(order)
                .pow_int(r)
                .unwrap()
                .to_poly_series()
                .mul(&ext)
                .egf_coeffs();
            for (n, p) in gf.iter().enumerate() {
                assert_eq!(p, &bernoulli_higher_poly(n, r), "n={n} r={r}");
            }
        }
    }

    #[test]
    fn higher_additive_in_order() {
        for r in 0..=3 {
            for s in 0..=3 {
                let a = bernoulli_higher_row(r, 10);
                let b = bernoulli_higher_row(s, 10);
                let c = bernoulli_higher_row(r + s, 10);
                for n in 0..=10 {
                    let conv = (0..=n).fold(Rational::zero(), |acc, j| {
                        acc + from_big(binomial(n, j as i64)) * &a[j] * &b[n - j]
                    });
                    assert_eq!(conv, c[n]);
                }
            }
        }
    }

    #[test]
    fn norlund_examples() {
        assert_eq!(norlund(0), int(1));
        assert_eq!(norlund(1), rat(-1, 2));
        assert_eq!(norlund(2), rat(5, 6));
    }

    #[test]
    fn norlund_two_paths() {
        let direct = norlund_numbers(16);
        for (n, v) in direct.iter().enumerate() {
            assert_eq!(v, &bernoulli_higher(n, n as i64), "n={n}");
        }
    }

    #[test]
    fn diagonal_bernoulli_at_one_is_cauchy() {
        let c = cauchy_numbers(16);
        for (l, cl) in c.iter().enumerate() {
            assert_eq!(&bernoulli_higher_poly(l, l as i64).eval(&int(1)), cl, "l={l}");
        }
    }

    #[test]
    fn cauchy_examples() {
        let c = cauchy_numbers(4);
        assert_eq!(c, vec![int(1), rat(1, 2), rat(-1, 6), rat(1, 4), rat(-19, 30)]);
    }

    #[test]
    fn carlitz_examples() {
        for r in -2..=3 {
            assert_eq!(carlitz_beta(0, r, &rat(3, 7)), int(1));
        }
        assert_eq!(carlitz_beta(1, 1, &int(0)), rat(1, 2));
        for n in 0..6 {
            let expected = if n == 0 { int(1) } else { int(0) };
            assert_eq!(carlitz_beta(n, 0, &int(0)), expected);
        }
        let c = cauchy_numbers(16);
        assert_eq!(carlitz_beta_row(1, &int(0), 16), c);
    }

    #[test]
    fn frobenius_examples() {
        for lambda in [int(2), int(-1), rat(1, 2)] {
            for n in 0..6 {
                assert_eq!(
                    frobenius_euler_poly(n, 0, &lambda).unwrap(),
                    Polynomial::monomial(int(1), n)
                );
                let p = frobenius_euler_poly(n, 2, &lambda).unwrap();
                assert_eq!(p.degree(), Some(n));
                assert_eq!(p.leading_coeff(), Some(&int(1)));
            }
            assert_eq!(frobenius_euler_poly(0, 3, &lambda).unwrap(), Polynomial::one());
            assert_eq!(
                frobenius_euler(1, 1, &lambda, &int(0)).unwrap(),
                (&lambda - int(1)).recip()
            );
        }
        assert_eq!(
            frobenius_euler_poly(2, 1, &int(1)),
            Err(SpecialError::LambdaIsOne)
        );
    }

    #[test]
    fn frobenius_matches_generating_function() {
        let order = 10;
        let ext = Series::from_fn(order, |i| {
            Polynomial::monomial(exp_series(order).coeffs()[i].clone(), i)
        });
        for lambda in [int(2), int(-1), rat(1, 2)] {
            for r in 0..=3 {
                // Built independently: recip of (e^t - λ) times (1-λ), r-th power.
                let mut e_minus = exp_series(order);
                let c0 = &e_minus.coeffs()[0] - &lambda;
                let mut cs = e_minus.coeffs().to_vec();
                cs[0] = c0;
                e_minus = Series::new(cs);
                let base = e_minus.recip().unwrap().scale(&(int(1) - &lambda));
                let mut gf = ScalarSeries::one(order);
                for _ in 0..r {
                    gf = gf.mul(&base);
                }
                let gf = gf.to_poly_series().mul(&ext);
                assert_eq!(frobenius_euler_gf_from_polys(r, &lambda, order).unwrap(), gf);
            }
        }
    }

    #[test]
    fn tables_agree_with_free_functions() {
        let t = SpecialTables::build(8);
        assert_eq!(t.n_max(), 8);
        for n in 0..=8 {
            assert_eq!(t.bernoulli(n), &bernoulli(n));
            assert_eq!(t.cauchy(n), &cauchy(n));
            assert_eq!(t.norlund(n), &norlund(n));
            for r in 0..=9 {
                assert_eq!(t.bernoulli_higher(n, r), &bernoulli_higher(n, r as i64));
            }
        }
    }
}
