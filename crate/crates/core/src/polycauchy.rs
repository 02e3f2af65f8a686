//! Poly-Cauchy numbers `C_n^(k)` and polynomials `C_n^(k)(x)` of the first
//! kind, the hybrid numbers `T_n^(r,k)`, and the expansions of `C_n^(k)(x)`
//! in the higher-order Bernoulli, Frobenius-Euler and rising-factorial bases.
//!
//! The generating function is `Lif_k(log(1+t)) / (1+t)^x`. The primary path
//! is the Stirling-number closed form
//!
//! ```text
//! C_n^(k)(x) = sum_m S1(n, m) sum_j C(m, j) (-x)^j / (m - j + 1)^k
//! ```
//!
//! and [`pc_poly_oracle`] expands the generating function directly.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::combinat::{binomial, factorial, multinomial, weak_compositions};
use crate::poly::Polynomial;
use crate::rational::{from_big, int, int_pow_rational, sign, Rational};
use crate::series::{binomial_pow_poly, lif_series, log1p_series, ScalarSeries};
use crate::special::{carlitz_beta_row, cauchy_gf, cauchy_numbers, norlund_numbers, SpecialError};
use crate::stirling::{falling_factorial, rising_factorial, stirling1_rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyCauchyError {
    #[error("the derivative formula needs n >= 1")]
    ZeroDegree,
    #[error(transparent)]
    Special(#[from] SpecialError),
}

/// `C_n^(k)(x)` together with its indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyCauchyPoly {
    pub n: usize,
    pub k: i64,
    pub poly: Polynomial,
}

/// `T_n^(r,k)` together with its indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TNumber {
    pub n: usize,
    pub r: usize,
    pub k: i64,
    pub value: Rational,
}

fn pow_m1(base: usize, k: i64) -> Rational {
    // 1 / base^k
    int_pow_rational(base as u64, -k)
}

/// `C_n^(k) = sum_m S1(n, m) / (m+1)^k`.
pub fn pc_number(n: usize, k: i64) -> Rational {
    (0..=n).fold(Rational::zero(), |acc, m| {
        acc + stirling1_rat(n, m) * pow_m1(m + 1, k)
    })
}

pub fn pc_numbers(n_max: usize, k: i64) -> Vec<Rational> {
    (0..=n_max).map(|n| pc_number(n, k)).collect()
}

/// Closed-form `C_n^(k)(x)`; the coefficient of `x^j` is
/// `(-1)^j sum_{m>=j} C(m, j) S1(n, m) / (m-j+1)^k`.
pub fn pc_poly(n: usize, k: i64) -> PolyCauchyPoly {
    let coeffs = (0..=n)
        .map(|j| {
            let s = (j..=n).fold(Rational::zero(), |acc, m| {
                acc + from_big(binomial(m, j as i64)) * stirling1_rat(n, m) * pow_m1(m - j + 1, k)
            });
            sign(j) * s
        })
        .collect();
    PolyCauchyPoly {
        n,
        k,
        poly: Polynomial::new(coeffs),
    }
}

/// `Lif_k(log(1+t))`, the EGF of the numbers `C_n^(k)`.
pub fn pc_number_gf(k: i64, order: usize) -> ScalarSeries {
    lif_series(k, order)
        .compose(&log1p_series(order))
        .expect("log(1+t) has zero constant term")
}

/// `C_0^(k)(x)..=C_n^(k)(x)` read off the bivariate generating function
/// `Lif_k(log(1+t)) (1+t)^(-x)`.
pub fn pc_poly_oracle_row(n_max: usize, k: i64) -> Vec<Polynomial> {
    let neg_x = -&Polynomial::x();
    pc_number_gf(k, n_max)
        .to_poly_series()
        .mul(&binomial_pow_poly(&neg_x, n_max))
        .egf_coeffs()
}

pub fn pc_poly_oracle(n: usize, k: i64) -> Polynomial {
    pc_poly_oracle_row(n, k).pop().expect("nonempty")
}

/// `T_n^(r,k)` as a multinomial convolution of `r` Cauchy sequences with one
/// poly-Cauchy sequence.
pub fn t_number(n: usize, r: usize, k: i64) -> TNumber {
    let c = cauchy_numbers(n);
    let ck = pc_numbers(n, k);
    let value = weak_compositions(n, r + 1).fold(Rational::zero(), |acc, comp| {
        let (head, last) = comp.parts.split_at(r);
        let prod = head
            .iter()
            .fold(ck[last[0]].clone(), |p, &l| p * &c[l]);
        acc + from_big(multinomial(n, &comp.parts).expect("parts sum to n")) * prod
    });
    TNumber { n, r, k, value }
}

/// `T_0^(r,k)..=T_n^(r,k)` from `(t/log(1+t))^r Lif_k(log(1+t))`.
pub fn t_numbers_series(n_max: usize, r: usize, k: i64) -> Vec<Rational> {
    cauchy_gf(n_max)
        .pow_int(r as i64)
        .expect("unit constant term")
        .mul(&pc_number_gf(k, n_max))
        .egf_coeffs()
}

/// `d/dx C_n^(k)(x) = (-1)^n n! sum_{l<n} (-1)^l / ((n-l) l!) C_l^(k)(x)`.
pub fn pc_derivative(n: usize, k: i64) -> Result<Polynomial, PolyCauchyError> {
    if n == 0 {
        return Err(PolyCauchyError::ZeroDegree);
    }
    let nf = from_big(factorial(n));
    let sum = (0..n).fold(Polynomial::zero(), |acc, l| {
        let c = sign(l) / (int((n - l) as i64) * from_big(factorial(l)));
        &acc + &pc_poly(l, k).poly.scale(&c)
    });
    Ok(sum.scale(&(sign(n) * nf)))
}

/// `sum_j (-1)^(n-j) C(n, j) C_j^(k)(x) y^(n-j)` with `y^(m)` the rising
/// factorial. Equals `C_n^(k)(x + y)`.
pub fn pc_shift_identity(n: usize, k: i64, y: &Rational) -> Polynomial {
    (0..=n).fold(Polynomial::zero(), |acc, j| {
        let c = sign(n - j) * from_big(binomial(n, j as i64)) * rising_factorial(y, n - j);
        &acc + &pc_poly(j, k).poly.scale(&c)
    })
}

/// Coefficients `C_(n,m)` with `C_n^(k)(x) = sum_m C_(n,m) B_m^(r)(x)`, via
/// Carlitz numbers `β_a^(r)(-r)`.
pub fn expand_bernoulli_basis(n: usize, k: i64, r: i64) -> Vec<Rational> {
    let beta = carlitz_beta_row(r, &int(-r), n);
    bernoulli_basis_from_row(n, k, &beta)
}

/// Same coefficients as [`expand_bernoulli_basis`], with `β_a^(r)(-r)`
/// replaced by its expansion in products of Nørlund numbers.
pub fn expand_bernoulli_basis_norlund(n: usize, k: i64, r: usize) -> Vec<Rational> {
    let norlund = norlund_numbers(n);
    let row: Vec<Rational> = (0..=n)
        .map(|a| {
            if r == 0 {
                return if a == 0 { Rational::one() } else { Rational::zero() };
            }
            weak_compositions(a, r).fold(Rational::zero(), |acc, comp| {
                let prod = comp
                    .parts
                    .iter()
                    .fold(Rational::one(), |p, &ai| p * &norlund[ai]);
                acc + from_big(multinomial(a, &comp.parts).expect("parts sum to a")) * prod
            })
        })
        .collect();
    bernoulli_basis_from_row(n, k, &row)
}

fn bernoulli_basis_from_row(n: usize, k: i64, row: &[Rational]) -> Vec<Rational> {
    let ck = pc_numbers(n, k);
    (0..=n)
        .map(|m| {
            let mut acc = Rational::zero();
            for l in 0..=n - m {
                let outer = from_big(binomial(n, (l + m) as i64)) * stirling1_rat(l + m, m);
                for a in 0..=n - m - l {
                    acc += &outer
                        * from_big(binomial(n - m - l, a as i64))
                        * &row[a]
                        * &ck[n - m - l - a];
                }
            }
            sign(m) * acc
        })
        .collect()
}

/// Coefficients with `C_n^(k)(x) = sum_m C_(n,m) H_m^(r)(x|λ)`, via
/// `C_j^(k)(a)` for `a = 0..=r`.
pub fn expand_frobenius_basis(
    n: usize,
    k: i64,
    r: usize,
    lambda: &Rational,
) -> Result<Vec<Rational>, PolyCauchyError> {
    if lambda.is_one() {
        return Err(SpecialError::LambdaIsOne.into());
    }
    let polys: Vec<Polynomial> = (0..=n).map(|j| pc_poly(j, k).poly).collect();
    let prefactor = (Rational::one() - lambda).pow(-(r as i32));
    Ok((0..=n)
        .map(|m| {
            let mut acc = Rational::zero();
            for l in 0..=n - m {
                let outer = from_big(binomial(n, (l + m) as i64)) * stirling1_rat(l + m, m);
                for a in 0..=r {
                    acc += &outer
                        * sign(a)
                        * from_big(binomial(r, a as i64))
                        * lambda.pow((r - a) as i32)
                        * polys[n - m - l].eval(&int(a as i64));
                }
            }
            sign(m + r) * &prefactor * acc
        })
        .collect())
}

/// Variant of [`expand_frobenius_basis`] using only the numbers `C_j^(k)`.
pub fn expand_frobenius_basis_alt(
    n: usize,
    k: i64,
    r: usize,
    lambda: &Rational,
) -> Result<Vec<Rational>, PolyCauchyError> {
    if lambda.is_one() {
        return Err(SpecialError::LambdaIsOne.into());
    }
    let ck = pc_numbers(n, k);
    let prefactor = (Rational::one() - lambda).pow(-(r as i32));
    Ok((0..=n)
        .map(|m| {
            let mut acc = Rational::zero();
            for l in 0..=n - m {
                let outer = from_big(binomial(n, (l + m) as i64)) * stirling1_rat(l + m, m);
                let rest = n - m - l;
                for b in 0..=rest {
                    let fall = falling_factorial(&int(rest as i64), b);
                    for a in 0..=r {
                        acc += &outer
                            * sign(a + b)
                            * from_big(binomial(r, a as i64))
                            * multichoose(a, b)
                            * &fall
                            * lambda.pow((r - a) as i32)
                            * &ck[rest - b];
                    }
                }
            }
            sign(m + r) * &prefactor * acc
        })
        .collect())
}

/// `C(a+b-1, b)`, read as `a^(b)/b!` so that `a = 0` gives `δ_(b,0)`.
fn multichoose(a: usize, b: usize) -> Rational {
    rising_factorial(&int(a as i64), b) / from_big(factorial(b))
}

/// Coefficient of `x^(m)` is `(-1)^m C(n, m) C_(n-m)^(k)`.
pub fn expand_rising_basis(n: usize, k: i64) -> Vec<Rational> {
    let ck = pc_numbers(n, k);
    (0..=n)
        .map(|m| sign(m) * from_big(binomial(n, m as i64)) * &ck[n - m])
        .collect()
}

/// `sum_m coeffs[m] * basis(m)`.
pub fn reconstruct(coeffs: &[Rational], mut basis: impl FnMut(usize) -> Polynomial) -> Polynomial {
    coeffs
        .iter()
        .enumerate()
        .fold(Polynomial::zero(), |acc, (m, c)| &acc + &basis(m).scale(c))
}
