use num_traits::Zero;

use crate::poly::Polynomial;
use crate::series::{exp_series, lif_series, log1p_series, PolySeries, SeriesError};

use super::ast::{Expr, ExprKind};
use super::{EvalError, SourceSpan};

/// Largest truncation order accepted by [`eval_series`].
pub const MAX_ORDER: usize = 64;
/// Largest `|k|` for `lif(k; ...)`.
pub const MAX_LIF_INDEX: i64 = 64;
/// Largest `|k|` for `base^k`.
pub const MAX_EXPONENT: i64 = 4096;

/// Expands `expr` as a power series in `t` with coefficients in `Q[x]`, exact
/// through `t^order`.
///
/// Division by a series of valuation `v` loses `v` terms, so the expression is
/// evaluated at a higher working order until the result reaches `order`.
pub fn eval_series(expr: &Expr, order: usize) -> Result<PolySeries, EvalError> {
    if order > MAX_ORDER {
        return Err(EvalError::OrderTooLarge {
            order,
            max: MAX_ORDER,
        });
    }
    // Division loses terms and a divisor can look like zero at a low working
    // order, so both cases retry with more terms up to `order + MAX_ORDER`.
    let cap = order + MAX_ORDER;
    let mut working = order;
    loop {
        let retry = match eval(expr, working) {
            Ok(s) if s.order() >= order => return Ok(s.truncate(order)),
            Ok(s) => working + (order - s.order()),
            Err(e @ (EvalError::ZeroDivisor { .. } | EvalError::OrderExhausted { .. })) => {
                if working >= cap {
                    return Err(e);
                }
                2 * working + 1
            }
            Err(e) => return Err(e),
        };
        if working >= cap {
            return Err(EvalError::OrderExhausted { span: expr.span });
        }
        working = retry.min(cap);
    }
}

fn series_err(e: SeriesError, span: SourceSpan) -> EvalError {
    match e {
        SeriesError::NegativeValuation {
            numerator,
            denominator,
        } => EvalError::DivisionValuation {
            span,
            numerator,
            denominator,
        },
        SeriesError::NonUnitConstant => EvalError::NonUnitRecip { span },
        SeriesError::ZeroDivisor => EvalError::ZeroDivisor { span },
        SeriesError::NonzeroConstantTerm => EvalError::NonzeroConstantArgument { span },
        SeriesError::OrderExceeded { .. } | SeriesError::OrderExhausted => {
            EvalError::OrderExhausted { span }
        }
    }
}

fn has_zero_constant(s: &PolySeries) -> bool {
    s.coeffs()[0].is_zero()
}

fn eval(expr: &Expr, order: usize) -> Result<PolySeries, EvalError> {
    let span = expr.span;
    Ok(match &expr.kind {
        ExprKind::Lit(v) => PolySeries::constant(Polynomial::constant(v.clone()), order),
        ExprKind::T => PolySeries::t(order),
        ExprKind::X => PolySeries::constant(Polynomial::x(), order),
        ExprKind::Neg(a) => eval(a, order)?.neg(),
        ExprKind::Add(a, b) => eval(a, order)?.add(&eval(b, order)?),
        ExprKind::Sub(a, b) => eval(a, order)?.sub(&eval(b, order)?),
        ExprKind::Mul(a, b) => eval(a, order)?.mul(&eval(b, order)?),
        ExprKind::Div(a, b) => {
            let num = eval(a, order)?;
            let den = eval(b, order)?;
            num.div_with_valuation(&den).map_err(|e| series_err(e, span))?
        }
        ExprKind::Pow(a, k) => {
            if k.abs() > MAX_EXPONENT {
                return Err(EvalError::ExponentTooLarge { span, k: *k });
            }
            eval(a, order)?
                .pow_int(*k)
                .map_err(|e| series_err(e, span))?
        }
        ExprKind::Log1p(a) => {
            let arg = eval(a, order)?;
            if !has_zero_constant(&arg) {
                return Err(EvalError::NonzeroConstantArgument { span: a.span });
            }
            compose(log1p_series(order).to_poly_series(), &arg, span)?
        }
        ExprKind::Exp(a) => {
            let arg = eval(a, order)?;
            if !has_zero_constant(&arg) {
                return Err(EvalError::ExpOfNonzeroConstant { span: a.span });
            }
            compose(exp_series(order).to_poly_series(), &arg, span)?
        }
        ExprKind::Lif(k, a) => {
            if k.abs() > MAX_LIF_INDEX {
                return Err(EvalError::LifIndexTooLarge { span, k: *k });
            }
            let arg = eval(a, order)?;
            if !has_zero_constant(&arg) {
                return Err(EvalError::NonzeroConstantArgument { span: a.span });
            }
            compose(lif_series(*k, order).to_poly_series(), &arg, span)?
        }
    })
}

fn compose(outer: PolySeries, inner: &PolySeries, span: SourceSpan) -> Result<PolySeries, EvalError> {
    outer.compose(inner).map_err(|e| series_err(e, span))
}
