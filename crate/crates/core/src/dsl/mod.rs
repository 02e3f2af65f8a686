//! A small language for generating functions.
//!
//! Expressions are built from integer literals, `t`, `x`, the four
//! operations, integer powers, `log1p`, `exp` and `lif(k; ...)`, and are
//! expanded as power series in `t` with coefficients in `Q[x]`:
//!
//! ```
//! use polycauchy::dsl::{eval_str, egf};
//! let s = eval_str("t/log1p(t)", 4).unwrap();
//! let numbers: Vec<String> = egf(&s).iter().map(|c| c.to_string()).collect();
//! assert_eq!(numbers, ["1", "1/2", "-1/6", "1/4", "-19/30"]);
//! ```

mod ast;
mod eval;
mod lexer;
mod parser;

use thiserror::Error;

use crate::poly::Polynomial;
use crate::series::PolySeries;

pub use ast::{Expr, ExprKind};
pub use eval::{eval_series, MAX_EXPONENT, MAX_LIF_INDEX, MAX_ORDER};
pub use lexer::{tokenize, Tok, Token};
pub use parser::{parse, MAX_DEPTH};

/// Byte range `start..end` in the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        SourceSpan { start, end }
    }

    pub fn join(self, other: SourceSpan) -> SourceSpan {
        SourceSpan::new(self.start.min(other.start), self.end.max(other.end))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unknown character `{ch}`")]
    UnknownCharacter { span: SourceSpan, ch: char },
    #[error("malformed number")]
    MalformedNumber { span: SourceSpan },
    #[error("unknown identifier `{name}`")]
    UnknownIdentifier { span: SourceSpan, name: String },
    #[error("unexpected {found}, expected {}", expected.join(" or "))]
    UnexpectedToken {
        span: SourceSpan,
        found: String,
        expected: Vec<&'static str>,
    },
    #[error("unbalanced parenthesis")]
    UnbalancedParen { span: SourceSpan },
    #[error("exponent must be an integer literal")]
    NonIntegerExponent { span: SourceSpan },
    #[error("integer does not fit in 64 bits")]
    IntegerTooLarge { span: SourceSpan },
    #[error("expression nested more than {MAX_DEPTH} levels deep")]
    NestingTooDeep { span: SourceSpan },
}

impl ParseError {
    pub fn span(&self) -> SourceSpan {
        match self {
            ParseError::UnknownCharacter { span, .. }
            | ParseError::MalformedNumber { span }
            | ParseError::UnknownIdentifier { span, .. }
            | ParseError::UnexpectedToken { span, .. }
            | ParseError::UnbalancedParen { span }
            | ParseError::NonIntegerExponent { span }
            | ParseError::IntegerTooLarge { span }
            | ParseError::NestingTooDeep { span } => *span,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("numerator has valuation {numerator}, below the denominator's {denominator}")]
    DivisionValuation {
        span: SourceSpan,
        numerator: usize,
        denominator: usize,
    },
    #[error("negative power of a series whose constant term is not invertible")]
    NonUnitRecip { span: SourceSpan },
    #[error("division by a series that is zero to the working order")]
    ZeroDivisor { span: SourceSpan },
    #[error("exp needs an argument with zero constant term")]
    ExpOfNonzeroConstant { span: SourceSpan },
    #[error("argument must have zero constant term")]
    NonzeroConstantArgument { span: SourceSpan },
    #[error("lif index {k} exceeds {MAX_LIF_INDEX} in absolute value")]
    LifIndexTooLarge { span: SourceSpan, k: i64 },
    #[error("exponent {k} exceeds {MAX_EXPONENT} in absolute value")]
    ExponentTooLarge { span: SourceSpan, k: i64 },
    #[error("order {order} exceeds the maximum {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("could not reach the requested order")]
    OrderExhausted { span: SourceSpan },
}

impl EvalError {
    /// `None` for errors about the requested order rather than the text.
    pub fn span(&self) -> Option<SourceSpan> {
        match self {
            EvalError::DivisionValuation { span, .. }
            | EvalError::NonUnitRecip { span }
            | EvalError::ZeroDivisor { span }
            | EvalError::ExpOfNonzeroConstant { span }
            | EvalError::NonzeroConstantArgument { span }
            | EvalError::LifIndexTooLarge { span, .. }
            | EvalError::ExponentTooLarge { span, .. }
            | EvalError::OrderExhausted { span } => Some(*span),
            EvalError::OrderTooLarge { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

impl DslError {
    pub fn span(&self) -> Option<SourceSpan> {
        match self {
            DslError::Parse(e) => Some(e.span()),
            DslError::Eval(e) => e.span(),
        }
    }
}

/// Parses and expands in one step.
pub fn eval_str(input: &str, order: usize) -> Result<PolySeries, DslError> {
    let expr = parse(input)?;
    Ok(eval_series(&expr, order)?)
}

/// `n! [t^n] s` for every `n`.
pub fn egf(s: &PolySeries) -> Vec<Polynomial> {
    s.egf_coeffs()
}

/// Error message followed by the input with the offending span underlined.
pub fn diagnostic(input: &str, err: &DslError) -> String {
    let mut out = format!("error: {err}\n");
    if let Some(span) = err.span() {
        let col = input[..span.start].chars().count();
        let width = input[span.start..span.end].chars().count().max(1);
        out.push_str(&format!("  {input}\n  {}{}\n", " ".repeat(col), "^".repeat(width)));
    }
    out
}
