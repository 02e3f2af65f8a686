//! Recursive descent with one token of lookahead.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | atom ('^' '-'? integer)?
//! atom   := integer | 't' | 'x' | '(' expr ')'
//!         | 'log1p' '(' expr ')' | 'exp' '(' expr ')'
//!         | 'lif' '(' '-'? integer ';' expr ')'
//! ```

use num_traits::ToPrimitive;

use crate::rational::from_big;

use super::ast::{fold, Expr, ExprKind};
use super::lexer::{tokenize, Tok, Token};
use super::{ParseError, SourceSpan};

/// Deepest nesting accepted before giving up, to keep recursion bounded.
pub const MAX_DEPTH: usize = 256;

pub fn parse(input: &str) -> Result<Expr, ParseError> {
    let tokens = tokenize(input)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        depth: 0,
    };
    let expr = p.expr()?;
    let next = p.peek().clone();
    match next.tok {
        Tok::End => Ok(expr),
        Tok::RParen => Err(ParseError::UnbalancedParen { span: next.span }),
        _ => Err(p.unexpected(&["operator", "end of input"])),
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&'static str]) -> ParseError {
        let t = self.peek();
        ParseError::UnexpectedToken {
            span: t.span,
            found: t.tok.describe(),
            expected: expected.to_vec(),
        }
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(ParseError::NestingTooDeep {
                span: self.peek().span,
            });
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        self.enter()?;
        let mut lhs = self.term()?;
        loop {
            let make: fn(Box<Expr>, Box<Expr>) -> ExprKind = match self.peek().tok {
                Tok::Plus => ExprKind::Add,
                Tok::Minus => ExprKind::Sub,
                _ => break,
            };
            self.bump();
            let rhs = self.term()?;
            let span = lhs.span.join(rhs.span);
            lhs = Expr::new(make(Box::new(lhs), Box::new(rhs)), span);
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            let make: fn(Box<Expr>, Box<Expr>) -> ExprKind = match self.peek().tok {
                Tok::Star => ExprKind::Mul,
                Tok::Slash => ExprKind::Div,
                _ => break,
            };
            self.bump();
            let rhs = self.factor()?;
            let span = lhs.span.join(rhs.span);
            lhs = Expr::new(fold(make(Box::new(lhs), Box::new(rhs))), span);
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.peek().tok == Tok::Minus {
            self.enter()?;
            let minus = self.bump();
            let inner = self.factor()?;
            self.depth -= 1;
            let span = minus.span.join(inner.span);
            return Ok(Expr::new(fold(ExprKind::Neg(Box::new(inner))), span));
        }
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let (k, end) = self.signed_integer(|span| ParseError::NonIntegerExponent { span })?;
        let span = base.span.join(end);
        Ok(Expr::new(ExprKind::Pow(Box::new(base), k), span))
    }

    /// `'-'? integer`, returning the value and the span it covers.
    fn signed_integer(
        &mut self,
        not_integer: impl Fn(SourceSpan) -> ParseError,
    ) -> Result<(i64, SourceSpan), ParseError> {
        let start = self.peek().span;
        let negative = self.peek().tok == Tok::Minus;
        if negative {
            self.bump();
        }
        let t = self.peek().clone();
        let Tok::Int(v) = t.tok else {
            return Err(not_integer(t.span));
        };
        self.bump();
        let span = start.join(t.span);
        let v = v
            .to_i64()
            .ok_or(ParseError::IntegerTooLarge { span })?;
        Ok((if negative { -v } else { v }, span))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Int(v) => {
                self.bump();
                Ok(Expr::new(ExprKind::Lit(from_big(v)), t.span))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                let close = self.close(t.span)?;
                Ok(Expr::new(inner.kind, t.span.join(close)))
            }
            Tok::Ident(name) => {
                self.bump();
                match name.as_str() {
                    "t" => Ok(Expr::new(ExprKind::T, t.span)),
                    "x" => Ok(Expr::new(ExprKind::X, t.span)),
                    "log1p" | "exp" => {
                        let open = self.open()?;
                        let arg = Box::new(self.expr()?);
                        let close = self.close(open)?;
                        let kind = if name == "exp" {
                            ExprKind::Exp(arg)
                        } else {
                            ExprKind::Log1p(arg)
                        };
                        Ok(Expr::new(kind, t.span.join(close)))
                    }
                    "lif" => {
                        let open = self.open()?;
                        let (k, _) = self.signed_integer(|span| ParseError::UnexpectedToken {
                            span,
                            found: "non-integer".into(),
                            expected: vec!["integer index"],
                        })?;
                        if self.peek().tok != Tok::Semi {
                            return Err(self.unexpected(&["`;`"]));
                        }
                        self.bump();
                        let arg = Box::new(self.expr()?);
                        let close = self.close(open)?;
                        Ok(Expr::new(ExprKind::Lif(k, arg), t.span.join(close)))
                    }
                    _ => Err(ParseError::UnknownIdentifier {
                        span: t.span,
                        name,
                    }),
                }
            }
            _ => Err(self.unexpected(&["number", "`t`", "`x`", "`(`", "function"])),
        }
    }

    fn open(&mut self) -> Result<SourceSpan, ParseError> {
        if self.peek().tok != Tok::LParen {
            return Err(self.unexpected(&["`(`"]));
        }
        Ok(self.bump().span)
    }

    fn close(&mut self, open: SourceSpan) -> Result<SourceSpan, ParseError> {
        match self.peek().tok {
            Tok::RParen => Ok(self.bump().span),
            Tok::End => Err(ParseError::UnbalancedParen { span: open }),
            _ => Err(self.unexpected(&["`)`", "operator"])),
        }
    }
}
