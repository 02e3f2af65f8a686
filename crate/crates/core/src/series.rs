//! Truncated formal power series over an exact coefficient ring.
//!
//! A [`Series`] stores the plain coefficients `a_0..=a_N` of `t^i` together
//! with its truncation order `N`. Terms past `N` are unknown, not zero, so
//! every operation reports the order up to which its result is exact:
//! sums and products keep the smaller order, derivatives lose one, and
//! division by a series of valuation `v` loses `v`.
//!
//! EGF numbers (`n! [t^n] f`) are only produced at the boundary, by
//! [`Series::umbral_apply`] and [`Series::egf_coeffs`].

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::combinat::factorial;
use crate::poly::Polynomial;
use crate::rational::{int, int_pow_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("composition needs an inner series with zero constant term")]
    NonzeroConstantTerm,
    #[error("constant term is not invertible")]
    NonUnitConstant,
    #[error("numerator valuation {numerator} is below denominator valuation {denominator}")]
    NegativeValuation { numerator: usize, denominator: usize },
    #[error("division by a series that vanishes to its truncation order")]
    ZeroDivisor,
    #[error("coefficient t^{requested} requested from a series known only to order {order}")]
    OrderExceeded { requested: usize, order: usize },
    #[error("operation needs more terms than the series carries")]
    OrderExhausted,
}

/// Coefficient ring for [`Series`]: exact, with decidable equality.
///
/// Implemented for [`Rational`] (scalar series) and [`Polynomial`] (series
/// whose coefficients are polynomials in `x`, for bivariate generating
/// functions).
pub trait Ring: Clone + PartialEq + Zero + One + fmt::Debug + fmt::Display + Send + Sync {
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
    /// Multiplicative inverse, if this element is a unit.
    fn unit_inverse(&self) -> Option<Self>;
}

impl Ring for Rational {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
    fn unit_inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

impl Ring for Polynomial {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Rational) -> Self {
        Polynomial::scale(self, c)
    }
    fn unit_inverse(&self) -> Option<Self> {
        let c = self.as_constant()?;
        (!c.is_zero()).then(|| Polynomial::constant(c.recip()))
    }
}

/// Power series `a_0 + a_1 t + ... + a_N t^N + O(t^(N+1))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series<R> {
    coeffs: Vec<R>,
}

pub type ScalarSeries = Series<Rational>;
pub type PolySeries = Series<Polynomial>;

impl<R: Ring> Series<R> {
    /// Series with the given coefficients; the order is `coeffs.len() - 1`.
    ///
    /// Panics on an empty vector: a series always knows at least `a_0`.
    pub fn new(coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        Series { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> R) -> Self {
        Series::new((0..=order).map(f).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::from_fn(order, |_| R::zero())
    }

    pub fn one(order: usize) -> Self {
        Self::constant(R::one(), order)
    }

    pub fn constant(c: R, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `t` (or `0 + O(t)` at order 0).
    pub fn t(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = R::one();
        }
        s
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Option<&R> {
        self.coeffs.get(i)
    }

    /// Drops terms past `order`. Orders above the current one are ignored.
    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        Series::new(self.coeffs[..=n].to_vec())
    }

    /// Index of the first nonzero coefficient within the known terms.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn map<S: Ring>(&self, f: impl FnMut(&R) -> S) -> Series<S> {
        Series::new(self.coeffs.iter().map(f).collect())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        Self::from_fn(n, |i| self.coeffs[i].add_ref(&rhs.coeffs[i]))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        Self::from_fn(n, |i| self.coeffs[i].sub_ref(&rhs.coeffs[i]))
    }

    pub fn neg(&self) -> Self {
        self.map(R::neg_ref)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|a| a.scale(c))
    }

    /// Multiplies by a single ring element.
    pub fn scale_by(&self, c: &R) -> Self {
        self.map(|a| a.mul_ref(c))
    }

    /// Cauchy product, truncated at the smaller order.
    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let mut out = vec![R::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n + 1 - i).enumerate() {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Series::new(out)
    }

    /// Multiplies by `t^shift`, keeping the order.
    pub fn mul_t_pow(&self, shift: usize) -> Self {
        Self::from_fn(self.order(), |i| {
            if i >= shift {
                self.coeffs[i - shift].clone()
            } else {
                R::zero()
            }
        })
    }

    /// `f(g(t))` by Horner's scheme; `g` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstantTerm);
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = Self::constant(self.coeffs[n].clone(), n);
        for c in self.coeffs[..n].iter().rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] = acc.coeffs[0].add_ref(c);
        }
        Ok(acc)
    }

    /// `1/f`; needs a unit constant term.
    pub fn recip(&self) -> Result<Self, SeriesError> {
        let inv0 = self.coeffs[0]
            .unit_inverse()
            .ok_or(SeriesError::NonUnitConstant)?;
        let n = self.order();
        let mut out: Vec<R> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut acc = R::zero();
            for i in 1..=k {
                acc = acc.add_ref(&self.coeffs[i].mul_ref(&out[k - i]));
            }
            out.push(acc.mul_ref(&inv0).neg_ref());
        }
        Ok(Series::new(out))
    }

    /// `f/g` as an honest power series.
    ///
    /// With `v` the valuation of `g`, both sides are divided by `t^v` first, so
    /// the result is known to order `min(N_f, N_g) - v`.
    pub fn div_with_valuation(&self, g: &Self) -> Result<Self, SeriesError> {
        let v = g.valuation().ok_or(SeriesError::ZeroDivisor)?;
        if let Some(vf) = self.valuation() {
            if vf < v {
                return Err(SeriesError::NegativeValuation {
                    numerator: vf,
                    denominator: v,
                });
            }
        }
        let n = self.order().min(g.order());
        if n < v {
            return Err(SeriesError::OrderExhausted);
        }
        let num = Series::new(self.coeffs[v..=n].to_vec());
        let den = Series::new(g.coeffs[v..=n].to_vec());
        Ok(num.mul(&den.recip()?))
    }

    /// `f^k` by repeated squaring; negative `k` inverts first.
    pub fn pow_int(&self, k: i64) -> Result<Self, SeriesError> {
        let base = if k < 0 { self.recip()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one(self.order());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// Termwise `d/dt`; the order drops by one.
    pub fn derivative(&self) -> Result<Self, SeriesError> {
        if self.order() == 0 {
            return Err(SeriesError::OrderExhausted);
        }
        Ok(Self::from_fn(self.order() - 1, |i| {
            self.coeffs[i + 1].scale(&int(i as i64 + 1))
        }))
    }

    /// The umbral pairing `<f(t) | x^n> = n! [t^n] f`.
    pub fn umbral_apply(&self, n: usize) -> Result<R, SeriesError> {
        let c = self.coeffs.get(n).ok_or(SeriesError::OrderExceeded {
            requested: n,
            order: self.order(),
        })?;
        Ok(c.scale(&Rational::from_integer(factorial(n))))
    }

    /// All EGF numbers `n! a_n` for `n <= N`.
    pub fn egf_coeffs(&self) -> Vec<R> {
        let mut fact = BigInt::one();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if i > 0 {
                    fact *= i;
                }
                c.scale(&Rational::from_integer(fact.clone()))
            })
            .collect()
    }
}

impl ScalarSeries {
    /// Lifts a scalar series into the polynomial-coefficient ring.
    pub fn to_poly_series(&self) -> PolySeries {
        self.map(|c| Polynomial::constant(c.clone()))
    }
}

/// Renders as `a0 + a1*t + a2*t^2 + ...`, zero terms omitted.
impl<R: Ring> fmt::Display for Series<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            wrote = true;
            let text = c.to_string();
            let needs_parens = text.contains(' ') || text.contains('*');
            let c = if needs_parens { format!("({text})") } else { text };
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{i}")?,
            }
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

/// `log(1+t) = t - t^2/2 + t^3/3 - ...`
pub fn log1p_series(order: usize) -> ScalarSeries {
    Series::from_fn(order, |i| match i {
        0 => Rational::zero(),
        _ if i % 2 == 1 => Rational::new(BigInt::one(), BigInt::from(i)),
        _ => -Rational::new(BigInt::one(), BigInt::from(i)),
    })
}

/// `e^t`.
pub fn exp_series(order: usize) -> ScalarSeries {
    exp_scaled_series(&Rational::one(), order)
}

/// `e^(c t)`.
pub fn exp_scaled_series(c: &Rational, order: usize) -> ScalarSeries {
    let mut term = Rational::one();
    Series::from_fn(order, |i| {
        if i > 0 {
            term = &term * c / int(i as i64);
        }
        term.clone()
    })
}

/// `e^(c t) - 1`.
pub fn expm1_scaled_series(c: &Rational, order: usize) -> ScalarSeries {
    let mut s = exp_scaled_series(c, order);
    s.coeffs[0] = Rational::zero();
    s
}

/// Polylogarithm factorial function: coefficients `1 / (m! (m+1)^k)`.
pub fn lif_series(k: i64, order: usize) -> ScalarSeries {
    Series::from_fn(order, |m| {
        (int_pow_rational(m as u64 + 1, k) * Rational::from_integer(factorial(m))).recip()
    })
}

/// `(1+t)^c` for a rational exponent: `sum_j C(c, j) t^j`.
pub fn binomial_pow_series(c: &Rational, order: usize) -> ScalarSeries {
    let mut term = Rational::one();
    Series::from_fn(order, |j| {
        if j > 0 {
            term = &term * (c - int(j as i64 - 1)) / int(j as i64);
        }
        term.clone()
    })
}

/// `(1+t)^c(x)` for a polynomial exponent: coefficient of `t^j` is the
/// polynomial `c(c-1)...(c-j+1)/j!`.
pub fn binomial_pow_poly(c: &Polynomial, order: usize) -> PolySeries {
    let mut falling = Polynomial::one();
    Series::from_fn(order, |j| {
        if j > 0 {
            let step = c - &Polynomial::constant(int(j as i64 - 1));
            falling = &falling * &step;
        }
        falling.scale(&Rational::from_integer(factorial(j)).recip())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, sign};
    use crate::stirling::{falling_factorial_poly, rising_factorial_poly};
    use proptest::prelude::*;

    fn s(cs: &[(i64, i64)]) -> ScalarSeries {
        Series::new(cs.iter().map(|&(p, q)| rat(p, q)).collect())
    }

    fn ints(cs: &[i64]) -> ScalarSeries {
        Series::new(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(ints(&[1, 1, 0]).mul(&ints(&[1, -1, 0])), ints(&[1, 0, -1]));
        let f = ints(&[3, 1, 4]);
        assert_eq!(f.add(&ScalarSeries::zero(2)), f);
        assert_eq!(ScalarSeries::t(2).mul(&ScalarSeries::t(2)), ints(&[0, 0, 1]));
        // Mixed orders keep the smaller one.
        assert_eq!(ints(&[1, 1, 1, 1]).add(&ints(&[1, 1])).order(), 1);
    }

    #[test]
    fn compose_examples() {
        let f = ints(&[1, 1, 0, 0, 0]);
        let g = ints(&[0, 0, 1, 0, 0]);
        assert_eq!(f.compose(&g).unwrap(), ints(&[1, 0, 1, 0, 0]));
        let h = s(&[(1, 1), (2, 3), (-5, 7), (1, 9)]);
        assert_eq!(h.compose(&ScalarSeries::t(3)).unwrap(), h);
        assert_eq!(
            ints(&[1, 1]).compose(&ints(&[1, 1])),
            Err(SeriesError::NonzeroConstantTerm)
        );
    }

    #[test]
    fn exp_of_log1p_is_one_plus_t() {
        for n in 1..=32 {
            let c = exp_series(n).compose(&log1p_series(n)).unwrap();
            let mut expected = ScalarSeries::zero(n);
            expected.coeffs[0] = int(1);
            expected.coeffs[1] = int(1);
            assert_eq!(c, expected, "order {n}");
        }
    }

    #[test]
    fn recip_examples() {
        assert_eq!(ints(&[1, -1, 0, 0]).recip().unwrap(), ints(&[1, 1, 1, 1]));
        assert_eq!(ScalarSeries::one(3).recip().unwrap(), ScalarSeries::one(3));
        assert_eq!(ints(&[0, 1]).recip(), Err(SeriesError::NonUnitConstant));
        // (e^t - 2)/(1 - 2) = 1 - t - t^2/2; reciprocal solved by hand from
        // g0 = 1, g1 = g0*1 = 1, g2 = g1*1 + g0/2 = 3/2.
        let f = expm1_scaled_series(&int(1), 2)
            .add(&ScalarSeries::constant(int(-1), 2))
            .scale(&int(-1));
        let g = f.recip().unwrap();
        assert_eq!(g, s(&[(1, 1), (1, 1), (3, 2)]));
        assert_eq!(f.mul(&g), ScalarSeries::one(2));
    }

    #[test]
    fn division_examples() {
        let q = ScalarSeries::t(5).div_with_valuation(&log1p_series(5)).unwrap();
        assert_eq!(q, s(&[(1, 1), (1, 2), (-1, 12), (1, 24), (-19, 720)]));
        let f = ints(&[2, 3, 5]);
        assert_eq!(f.div_with_valuation(&ScalarSeries::one(2)).unwrap(), f);
        assert_eq!(
            ScalarSeries::one(3).div_with_valuation(&ScalarSeries::t(3)),
            Err(SeriesError::NegativeValuation {
                numerator: 0,
                denominator: 1
            })
        );
        assert_eq!(
            f.div_with_valuation(&ScalarSeries::zero(2)),
            Err(SeriesError::ZeroDivisor)
        );
    }

    #[test]
    fn pow_examples() {
        assert_eq!(ints(&[1, 1, 0, 0]).pow_int(2).unwrap(), ints(&[1, 2, 1, 0]));
        assert_eq!(ints(&[4, 1, 7]).pow_int(0).unwrap(), ScalarSeries::one(2));
        assert_eq!(ints(&[1, 1, 0]).pow_int(-1).unwrap(), ints(&[1, -1, 1]));
        assert_eq!(ints(&[0, 1]).pow_int(-2), Err(SeriesError::NonUnitConstant));
        let f = s(&[(1, 1), (1, 3), (-2, 5), (1, 7)]);
        assert_eq!(f.pow_int(5).unwrap(), f.mul(&f).mul(&f).mul(&f).mul(&f));
    }

    #[test]
    fn elementary_series() {
        assert_eq!(log1p_series(3), s(&[(0, 1), (1, 1), (-1, 2), (1, 3)]));
        assert_eq!(exp_series(3), s(&[(1, 1), (1, 1), (1, 2), (1, 6)]));
        assert_eq!(expm1_scaled_series(&int(-1), 2), s(&[(0, 1), (-1, 1), (1, 2)]));
        let shifted = expm1_scaled_series(&int(1), 3)
            .div_with_valuation(&ScalarSeries::t(3))
            .unwrap();
        assert_eq!(shifted, s(&[(1, 1), (1, 2), (1, 6)]));
    }

    #[test]
    fn lif_examples() {
        for k in -4..=4 {
            assert_eq!(lif_series(k, 5).coeffs[0], int(1));
        }
        assert_eq!(lif_series(0, 6), exp_series(6));
        assert_eq!(lif_series(1, 3), s(&[(1, 1), (1, 2), (1, 6), (1, 24)]));
        assert_eq!(lif_series(-1, 2), s(&[(1, 1), (2, 1), (3, 2)]));
    }

    #[test]
    fn lif_index_one_is_expm1_over_t() {
        for n in 0..=32 {
            let q = expm1_scaled_series(&int(1), n + 1)
                .div_with_valuation(&ScalarSeries::t(n + 1))
                .unwrap();
            assert_eq!(lif_series(1, n), q, "order {n}");
        }
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(ints(&[0, 0, 1]).derivative().unwrap(), ints(&[0, 2]));
        assert_eq!(ints(&[7, 0, 0]).derivative().unwrap(), ints(&[0, 0]));
        let d = log1p_series(6).derivative().unwrap();
        assert_eq!(d, ints(&[1, -1, 1, -1, 1, -1]));
        assert_eq!(ints(&[1]).derivative(), Err(SeriesError::OrderExhausted));
    }

    #[test]
    fn umbral_examples() {
        for k in 0..6 {
            let mut f = ScalarSeries::zero(6);
            f.coeffs[k] = int(1);
            for n in 0..=6 {
                let expected = if n == k {
                    Rational::from_integer(factorial(k))
                } else {
                    Rational::zero()
                };
                assert_eq!(f.umbral_apply(n).unwrap(), expected);
            }
        }
        assert_eq!(
            ScalarSeries::one(2).umbral_apply(3),
            Err(SeriesError::OrderExceeded {
                requested: 3,
                order: 2
            })
        );
    }

    #[test]
    fn binomial_pow_poly_examples() {
        assert_eq!(
            binomial_pow_poly(&Polynomial::zero(), 4),
            PolySeries::one(4)
        );
        let neg_x = -&Polynomial::x();
        let s = binomial_pow_poly(&neg_x, 3);
        assert_eq!(s.coeff(1).unwrap(), &neg_x);
        let pos = binomial_pow_poly(&Polynomial::x(), 12).egf_coeffs();
        for (n, p) in pos.iter().enumerate() {
            assert_eq!(p, &falling_factorial_poly(n));
        }
        let neg = binomial_pow_poly(&neg_x, 12).egf_coeffs();
        for (n, p) in neg.iter().enumerate() {
            assert_eq!(p, &rising_factorial_poly(n).scale(&sign(n)));
        }
    }

    #[test]
    fn scalar_binomial_pow_matches_poly_version() {
        for a in -3..=3 {
            let c = int(a);
            let poly = binomial_pow_poly(&Polynomial::constant(c.clone()), 8);
            assert_eq!(binomial_pow_series(&c, 8).to_poly_series(), poly);
        }
        // (1+t)^(1/2) squared is 1+t.
        let h = binomial_pow_series(&rat(1, 2), 10);
        let mut expected = ScalarSeries::zero(10);
        expected.coeffs[0] = int(1);
        expected.coeffs[1] = int(1);
        assert_eq!(h.mul(&h), expected);
    }

    #[test]
    fn display() {
        assert_eq!(s(&[(1, 1), (0, 1), (-1, 2)]).to_string(), "1 + -1/2*t^2 + O(t^3)");
        let p = PolySeries::new(vec![Polynomial::one(), -&Polynomial::x()]);
        assert_eq!(p.to_string(), "1 + (-1*x)*t + O(t^2)");
    }

    fn arb_series(order: usize) -> impl Strategy<Value = ScalarSeries> {
        proptest::collection::vec((-30i64..30, 1i64..8), order + 1)
            .prop_map(|cs| Series::new(cs.into_iter().map(|(p, q)| rat(p, q)).collect()))
    }

    proptest! {
        #[test]
        fn recip_is_inverse(mut f in arb_series(8), c in 1i64..9) {
            f.coeffs[0] = int(c);
            let g = f.recip().unwrap();
            prop_assert_eq!(g.mul(&f), ScalarSeries::one(8));
        }

        #[test]
        fn division_undoes_multiplication(f in arb_series(9), mut g in arb_series(9), v in 0usize..3) {
            // Shift both by v so the valuations line up.
            g.coeffs[0] = int(3);
            let gv = g.mul_t_pow(v);
            let fv = f.mul_t_pow(v);
            let q = fv.div_with_valuation(&gv).unwrap();
            prop_assert_eq!(q.order(), 9 - v);
            prop_assert_eq!(q.mul(&g.truncate(9 - v)), f.truncate(9 - v));
        }

        #[test]
        fn umbral_linear(f in arb_series(6), g in arb_series(6), a in -5i64..5, b in -5i64..5, n in 0usize..=6) {
            let lhs = f.scale(&int(a)).add(&g.scale(&int(b))).umbral_apply(n).unwrap();
            let rhs = f.umbral_apply(n).unwrap() * int(a) + g.umbral_apply(n).unwrap() * int(b);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
