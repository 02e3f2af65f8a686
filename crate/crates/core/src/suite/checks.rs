//! One function per identity. Each computes both sides independently and
//! compares them exactly. With `mutate`, one summand on the right-hand side
//! has its sign flipped; the suite must then report a failure.

use std::fmt::Display;

use num_traits::{One, Zero};

use crate::combinat::{binomial, factorial, multinomial, weak_compositions};
use crate::poly::Polynomial;
use crate::polycauchy::{
    expand_bernoulli_basis, expand_bernoulli_basis_norlund, expand_frobenius_basis,
    expand_frobenius_basis_alt, expand_rising_basis, pc_derivative, pc_number, pc_number_gf,
    pc_poly, pc_poly_oracle, pc_shift_identity, reconstruct, t_number, t_numbers_series,
};
use crate::rational::{from_big, int, int_pow_rational, sign, Rational};
use crate::series::{expm1_scaled_series, binomial_pow_series, lif_series, log1p_series, ScalarSeries};
use crate::special::{bernoulli_higher_poly, frobenius_euler_poly, SpecialTables};
use crate::stirling::{rising_factorial_poly, stirling1_rat};

use super::{IdentityId, Params};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(super) enum Verdict {
    Pass,
    Fail { lhs: String, rhs: String },
}

impl Verdict {
    fn and(self, next: impl FnOnce() -> Verdict) -> Verdict {
        match self {
            Verdict::Pass => next(),
            fail => fail,
        }
    }
}

fn compare<T: PartialEq + Display>(lhs: &T, rhs: &T) -> Verdict {
    if lhs == rhs {
        Verdict::Pass
    } else {
        Verdict::Fail {
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }
}

/// `-1` when mutating, else `1`.
fn flip(mutate: bool) -> Rational {
    if mutate {
        -Rational::one()
    } else {
        Rational::one()
    }
}

fn big(n: usize, k: usize) -> Rational {
    from_big(binomial(n, k as i64))
}

fn fact(n: usize) -> Rational {
    from_big(factorial(n))
}

/// `1 / base^k`.
fn inv_pow(base: usize, k: i64) -> Rational {
    int_pow_rational(base as u64, -k)
}

fn x_plus_one() -> Polynomial {
    Polynomial::from_ints(&[1, 1])
}

pub(super) fn check(id: IdentityId, p: &Params, tables: &SpecialTables, mutate: bool) -> Verdict {
    use IdentityId::*;
    match id {
        OracleEq26 => oracle(p.usize("n"), p.int("k"), mutate),
        T1 => coefficients_by_compositions(p.usize("n"), p.int("k"), tables, mutate),
        T2 => coefficient_three_ways(p.usize("n"), p.usize("j"), p.int("k"), tables, mutate),
        T3 => recurrence_in_shifted_x(p.usize("n"), p.int("k"), mutate),
        T4 => recurrence_in_index(p.usize("n"), p.int("k"), tables, mutate),
        T5 => stirling_weighted_sums(p.usize("n"), p.usize("m"), p.int("k"), mutate),
        T5Cor => value_at_one_lower_index(p.usize("n"), p.int("k"), mutate),
        L6 => via_first_order_hybrid(p.usize("n"), p.int("k"), mutate),
        L7 => via_higher_order_hybrid(p.usize("n"), p.usize("m"), p.int("k"), mutate),
        E58 => hybrid_two_paths(p.usize("n"), p.usize("r"), p.int("k"), mutate),
        E62 => lif_derivative(p.usize("m"), p.int("k"), p.usize("order"), mutate),
        E67 => derivative(p.usize("n"), p.int("k"), mutate),
        E39 => shift(p.usize("n"), p.int("k"), mutate),
        T8 => bernoulli_basis(p.usize("n"), p.int("k"), p.usize("r"), mutate),
        T8Norlund => bernoulli_basis_norlund(p.usize("n"), p.int("k"), p.usize("r"), mutate),
        T9 => frobenius_basis(p.usize("n"), p.int("k"), p.usize("r"), &p.rat("lambda"), false, mutate),
        T9Alt => frobenius_basis(p.usize("n"), p.int("k"), p.usize("r"), &p.rat("lambda"), true, mutate),
        T10 => rising_basis(p.usize("n"), p.int("k"), mutate),
        E55Lif1 => {
            if p.has("order") {
                lif1_series(p.usize("order"), mutate)
            } else {
                lif1_numbers(p.usize("n"), tables, mutate)
            }
        }
        NorlundEqCauchy => norlund_cauchy(p.usize("n"), tables, mutate),
    }
}

fn oracle(n: usize, k: i64, mutate: bool) -> Verdict {
    let lhs = pc_poly(n, k).poly;
    let mut coeffs = pc_poly_oracle(n, k).coeffs().to_vec();
    if let Some(top) = coeffs.last_mut() {
        *top = &*top * flip(mutate);
    }
    compare(&lhs, &Polynomial::new(coeffs))
}

/// `sum over weak compositions (l_1..l_n) of l` of
/// `(n-1)! / (l_1! ... l_n! (n-1-l)!) * B_(l_1) ... B_(l_n)`.
fn bernoulli_composition_sum(n: usize, l: usize, tables: &SpecialTables) -> Rational {
    weak_compositions(l, n).fold(Rational::zero(), |acc, comp| {
        let prod = comp
            .parts
            .iter()
            .fold(Rational::one(), |p, &li| p * tables.bernoulli(li));
        acc + from_big(multinomial(n - 1, &comp.parts).expect("l <= n - 1")) * prod
    })
}

/// The `x^j` coefficient without its sign, as a composition sum.
fn composition_coefficient(n: usize, j: usize, k: i64, sums: &[Rational]) -> Rational {
    let l_max = (n - 1).min(n - j);
    (0..=l_max).fold(Rational::zero(), |acc, l| {
        acc + &sums[l] * big(n - l, j) * inv_pow(n - l - j + 1, k)
    })
}

fn coefficients_by_compositions(n: usize, k: i64, tables: &SpecialTables, mutate: bool) -> Verdict {
    let sums: Vec<Rational> = (0..n).map(|l| bernoulli_composition_sum(n, l, tables)).collect();
    let coeffs: Vec<Rational> = (0..=n)
        .map(|j| {
            let c = sign(j) * composition_coefficient(n, j, k, &sums);
            if j == 0 {
                c * flip(mutate)
            } else {
                c
            }
        })
        .collect();
    compare(&pc_poly(n, k).poly, &Polynomial::new(coeffs))
}

fn coefficient_three_ways(n: usize, j: usize, k: i64, tables: &SpecialTables, mutate: bool) -> Verdict {
    let e1 = (j..=n).fold(Rational::zero(), |acc, m| {
        acc + big(m, j) * stirling1_rat(n, m) * inv_pow(m - j + 1, k)
    });
    let sums: Vec<Rational> = (0..n).map(|l| bernoulli_composition_sum(n, l, tables)).collect();
    let e2 = composition_coefficient(n, j, k, &sums);

    let mut inner = Rational::zero();
    for a in j.max(1)..=n {
        for l in j.saturating_sub(1)..a {
            let mut term = sign(l + 1 - j) / fact(a)
                * big(n - 1, a - 1)
                * big(a - 1, l)
                * big(l + 1, j)
                * tables.bernoulli_higher(a - 1 - l, a)
                * inv_pow(l + 2 - j, k);
            if mutate && a == n && l == n - 1 {
                term = -term;
            }
            inner += term;
        }
    }
    let e3 = sign(n) * fact(n) * inner;

    // The polynomial carries the sign (-1)^j, and so does the third form.
    let signed = sign(j) * &e1;
    let coefficient = pc_poly(n, k).poly.coeff(j);
    let verdict = compare(&e1, &e2)
        .and(|| compare(&signed, &e3))
        .and(|| compare(&coefficient, &signed));
    if j == 0 {
        verdict.and(|| compare(&pc_number(n, k), &e1))
    } else {
        verdict
    }
}

fn recurrence_in_shifted_x(n: usize, k: i64, mutate: bool) -> Verdict {
    let lhs = pc_poly(n + 1, k).poly;
    let mut rhs = Polynomial::zero();
    for l in 0..=n {
        let s = stirling1_rat(n, l);
        for j in 0..=l {
            let c = &s * sign(j) * big(l, j) * inv_pow(l - j + 2, k);
            rhs = &rhs + &x_plus_one().pow(j).scale(&c);
        }
    }
    let shifted = &Polynomial::x() * &pc_poly(n, k).poly.shift(&int(1));
    rhs = &rhs - &shifted.scale(&flip(mutate));
    compare(&lhs, &rhs)
}

/// `B_l^(l)(1) = sum_j C(l, j) B_j^(l)`.
fn bernoulli_diag_at_one(l: usize, tables: &SpecialTables) -> Rational {
    (0..=l).fold(Rational::zero(), |acc, j| acc + big(l, j) * tables.bernoulli_higher(j, l))
}

fn recurrence_in_index(n: usize, k: i64, tables: &SpecialTables, mutate: bool) -> Verdict {
    let one = int(1);
    let lhs = pc_poly(n, k).poly;
    let mut sum = Polynomial::zero();
    let mut last = Polynomial::zero();
    for l in 0..=n {
        let diff = &pc_poly(n - l, k - 1).poly.shift(&one) - &pc_poly(n - l, k).poly.shift(&one);
        let term = diff.scale(&(big(n, l) * bernoulli_diag_at_one(l, tables)));
        if l == n {
            last = term.clone();
        }
        sum = &sum + &term;
    }
    let shifted = &Polynomial::x() * &pc_poly(n - 1, k).poly.shift(&one);
    let rhs = &sum.scale(&int(n as i64).recip()) - &shifted.scale(&flip(mutate));
    compare(&last, &Polynomial::zero()).and(|| compare(&lhs, &rhs))
}

fn stirling_weighted_sums(n: usize, m: usize, k: i64, mutate: bool) -> Verdict {
    let one = int(1);
    let mut lhs = Rational::zero();
    let mut rhs = Rational::zero();
    for l in 0..=n - m {
        let rest = n - l - m;
        lhs += fact(m) * big(n, l + m) * stirling1_rat(l + m, m) * pc_number(rest, k);
        let weight = fact(m - 1) * big(n - 1, l + m - 1) * stirling1_rat(l + m - 1, m - 1);
        let at_one = int(m as i64 - 1) * pc_poly(rest, k).poly.eval(&one)
            + flip(mutate) * pc_poly(rest, k - 1).poly.eval(&one);
        rhs += weight * at_one;
    }
    compare(&lhs, &rhs)
}

fn value_at_one_lower_index(n: usize, k: i64, mutate: bool) -> Verdict {
    let lhs = pc_poly(n - 1, k - 1).poly.eval(&int(1));
    let rhs = (0..n).fold(Rational::zero(), |acc, l| {
        let s = if l == 0 { flip(mutate) } else { sign(l) };
        acc + s * fact(l) * big(n, l + 1) * pc_number(n - l - 1, k)
    });
    compare(&lhs, &rhs)
}

fn via_first_order_hybrid(n: usize, k: i64, mutate: bool) -> Verdict {
    let lhs = pc_number(n, k);
    let sum = (0..=n).fold(Rational::zero(), |acc, l| {
        let diff = t_number(l, 1, k - 1).value - t_number(l, 1, k).value;
        let s = if l == n { flip(mutate) } else { Rational::one() };
        acc + s * sign(n - l) * fact(n - l) * big(n, l) * diff
    });
    compare(&lhs, &(sum / int(n as i64)))
}

fn via_higher_order_hybrid(n: usize, m: usize, k: i64, mutate: bool) -> Verdict {
    let lhs = pc_number(n, k);
    let mut rhs = Rational::zero();
    for a in 1..=m {
        let top = n - m + a;
        for l in 0..=a {
            let weight = stirling1_rat(m, a) * stirling1_rat(a + 1, l + 1);
            if weight.is_zero() {
                continue;
            }
            let t = t_numbers_series(top, a, k - l as i64);
            for s in 0..=top {
                let mut term = sign(s)
                    * big(m + s - 1, s)
                    * fact(n - m)
                    / fact(top - s)
                    * &weight
                    * &t[top - s];
                if mutate && a == 1 && l == 0 && s == 0 {
                    term = -term;
                }
                rhs += term;
            }
        }
    }
    compare(&lhs, &rhs)
}

fn hybrid_two_paths(n: usize, r: usize, k: i64, mutate: bool) -> Verdict {
    let lhs = t_numbers_series(n, r, k).pop().expect("nonempty");
    let mut rhs = t_number(n, r, k).value;
    if mutate {
        // The composition (0, ..., 0, n) contributes C_n^(k).
        rhs -= int(2) * pc_number(n, k);
    }
    compare(&lhs, &rhs)
}

fn lif_derivative(m: usize, k: i64, order: usize, mutate: bool) -> Verdict {
    let log = log1p_series(order);
    let composed = |kk: i64| {
        lif_series(kk, order)
            .compose(&log)
            .expect("log(1+t) has zero constant term")
    };
    let mut deriv = composed(k);
    for _ in 0..m {
        deriv = deriv.derivative().expect("order exceeds m");
    }
    let prefactor = binomial_pow_series(&int(m as i64), order)
        .mul(&log.pow_int(m as i64).expect("nonnegative power"));
    let lhs = prefactor.mul(&deriv);

    let mut rhs = ScalarSeries::zero(order);
    for a in 1..=m {
        let log_pow = log.pow_int((m - a) as i64).expect("nonnegative power");
        for l in 0..=a {
            let mut c = stirling1_rat(m, a) * stirling1_rat(a + 1, l + 1);
            if mutate && a == 1 && l == 0 {
                c = -c;
            }
            if c.is_zero() {
                continue;
            }
            rhs = rhs.add(&composed(k - l as i64).mul(&log_pow).scale(&c));
        }
    }
    compare(&lhs, &rhs.truncate(order - m))
}

fn derivative(n: usize, k: i64, mutate: bool) -> Verdict {
    let lhs = pc_poly(n, k).poly.derivative();
    let mut rhs = pc_derivative(n, k).expect("n >= 1");
    if mutate {
        // The l = 0 summand is (-1)^n (n-1)!.
        let first = sign(n) * fact(n - 1);
        rhs = &rhs - &Polynomial::constant(int(2) * first);
    }
    compare(&lhs, &rhs)
}

fn shift(n: usize, k: i64, mutate: bool) -> Verdict {
    let base = pc_poly(n, k).poly;
    let mut verdict = Verdict::Pass;
    for y in 0..=n {
        let y = int(y as i64);
        let lhs = base.shift(&y);
        let mut rhs = pc_shift_identity(n, k, &y);
        if mutate {
            // The j = n summand is C_n^(k)(x) itself.
            rhs = &rhs - &base.scale(&int(2));
        }
        verdict = verdict.and(|| compare(&lhs, &rhs));
    }
    verdict
}

fn flip_last(coeffs: &mut [Rational], mutate: bool) {
    if let Some(top) = coeffs.last_mut() {
        *top = &*top * flip(mutate);
    }
}

fn bernoulli_basis(n: usize, k: i64, r: usize, mutate: bool) -> Verdict {
    let mut coeffs = expand_bernoulli_basis(n, k, r as i64);
    flip_last(&mut coeffs, mutate);
    let rhs = reconstruct(&coeffs, |m| bernoulli_higher_poly(m, r as i64));
    compare(&pc_poly(n, k).poly, &rhs)
}

fn bernoulli_basis_norlund(n: usize, k: i64, r: usize, mutate: bool) -> Verdict {
    let carlitz = expand_bernoulli_basis(n, k, r as i64);
    let mut coeffs = expand_bernoulli_basis_norlund(n, k, r);
    flip_last(&mut coeffs, mutate);
    let rhs = reconstruct(&coeffs, |m| bernoulli_higher_poly(m, r as i64));
    let mut verdict = Verdict::Pass;
    for (a, b) in carlitz.iter().zip(&coeffs) {
        verdict = verdict.and(|| compare(a, b));
    }
    verdict.and(|| compare(&pc_poly(n, k).poly, &rhs))
}

fn frobenius_basis(n: usize, k: i64, r: usize, lambda: &Rational, alt: bool, mutate: bool) -> Verdict {
    let expanded = if alt {
        expand_frobenius_basis_alt(n, k, r, lambda)
    } else {
        expand_frobenius_basis(n, k, r, lambda)
    };
    let mut coeffs = match expanded {
        Ok(c) => c,
        Err(e) => {
            return Verdict::Fail {
                lhs: pc_poly(n, k).poly.to_string(),
                rhs: e.to_string(),
            }
        }
    };
    flip_last(&mut coeffs, mutate);
    let rhs = reconstruct(&coeffs, |m| {
        frobenius_euler_poly(m, r as i64, lambda).expect("lambda != 1 checked above")
    });
    compare(&pc_poly(n, k).poly, &rhs)
}

fn rising_basis(n: usize, k: i64, mutate: bool) -> Verdict {
    let mut coeffs = expand_rising_basis(n, k);
    flip_last(&mut coeffs, mutate);
    let rhs = reconstruct(&coeffs, rising_factorial_poly);
    compare(&pc_poly(n, k).poly, &rhs)
}

fn lif1_numbers(n: usize, tables: &SpecialTables, mutate: bool) -> Verdict {
    let cauchy = tables.cauchy(n) * flip(mutate);
    compare(&pc_number(n, 1), &cauchy)
        .and(|| compare(&pc_poly(n, 1).poly.eval(&Rational::zero()), &cauchy))
        .and(|| compare(&pc_number_gf(1, n).egf_coeffs()[n], &cauchy))
}

fn lif1_series(order: usize, mutate: bool) -> Verdict {
    let lhs = lif_series(1, order);
    // (e^(ct) - 1) / (ct), read off one degree up.
    let c = flip(mutate);
    let expm1 = expm1_scaled_series(&c, order + 1);
    let rhs = ScalarSeries::from_fn(order, |m| expm1.coeffs()[m + 1].clone() / &c);
    compare(&lhs, &rhs)
}

fn norlund_cauchy(n: usize, tables: &SpecialTables, mutate: bool) -> Verdict {
    let cauchy = tables.cauchy(n) * flip(mutate);
    compare(tables.norlund(n), tables.bernoulli_higher(n, n))
        .and(|| compare(&bernoulli_diag_at_one(n, tables), &cauchy))
}
