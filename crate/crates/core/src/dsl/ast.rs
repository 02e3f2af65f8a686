use std::fmt;

use num_traits::{Signed, Zero};

use crate::rational::Rational;

use super::SourceSpan;

/// A node of a generating-function expression.
///
/// Equality is structural and ignores spans.
#[derive(Debug, Clone)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Lit(Rational),
    T,
    X,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Log1p(Box<Expr>),
    Exp(Box<Expr>),
    Lif(i64, Box<Expr>),
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Expr {
    pub fn new(kind: ExprKind, span: SourceSpan) -> Self {
        Expr { kind, span }
    }

    /// Binding strength used when rendering: sums 1, products 2, negation 3,
    /// powers 4, atoms 5.
    fn precedence(&self) -> u8 {
        match &self.kind {
            ExprKind::Add(..) | ExprKind::Sub(..) => 1,
            ExprKind::Mul(..) | ExprKind::Div(..) => 2,
            ExprKind::Neg(_) => 3,
            ExprKind::Pow(..) => 4,
            _ => 5,
        }
    }

    fn write_child(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

/// Canonical text that reparses to the same tree.
///
/// Negative and non-integer literals are parenthesised so that they fold back
/// into a single literal.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Lit(v) => {
                if v.is_integer() && !v.is_negative() {
                    write!(f, "{v}")
                } else {
                    write!(f, "({v})")
                }
            }
            ExprKind::T => write!(f, "t"),
            ExprKind::X => write!(f, "x"),
            ExprKind::Neg(a) => {
                write!(f, "-")?;
                a.write_child(f, 3)
            }
            ExprKind::Add(a, b) | ExprKind::Sub(a, b) => {
                a.write_child(f, 1)?;
                let op = if matches!(self.kind, ExprKind::Add(..)) { "+" } else { "-" };
                write!(f, " {op} ")?;
                b.write_child(f, 2)
            }
            ExprKind::Mul(a, b) | ExprKind::Div(a, b) => {
                a.write_child(f, 2)?;
                let op = if matches!(self.kind, ExprKind::Mul(..)) { "*" } else { "/" };
                write!(f, "{op}")?;
                b.write_child(f, 3)
            }
            ExprKind::Pow(a, k) => {
                a.write_child(f, 5)?;
                write!(f, "^{k}")
            }
            ExprKind::Log1p(a) => write!(f, "log1p({a})"),
            ExprKind::Exp(a) => write!(f, "exp({a})"),
            ExprKind::Lif(k, a) => write!(f, "lif({k}; {a})"),
        }
    }
}

/// `Neg(lit)` and `Div(lit, lit)` with a nonzero denominator become literals.
pub fn fold(kind: ExprKind) -> ExprKind {
    match kind {
        ExprKind::Neg(a) => match a.kind {
            ExprKind::Lit(v) => ExprKind::Lit(-v),
            _ => ExprKind::Neg(a),
        },
        ExprKind::Div(a, b) => match (&a.kind, &b.kind) {
            (ExprKind::Lit(p), ExprKind::Lit(q)) if !q.is_zero() => ExprKind::Lit(p / q),
            _ => ExprKind::Div(a, b),
        },
        other => other,
    }
}
