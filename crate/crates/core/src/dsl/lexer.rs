use num_bigint::BigInt;

use super::{ParseError, SourceSpan};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Semi,
    End,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Int(v) => format!("integer `{v}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Semi => "`;`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub span: SourceSpan,
}

/// Splits `input` into tokens, ending with [`Tok::End`].
///
/// Literals are unsigned integers only; `3/4` is three tokens.
pub fn tokenize(input: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = input.char_indices().peekable();
    while let Some(&(start, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c.is_ascii_digit() {
            let mut end = start;
            let mut malformed = false;
            while let Some(&(i, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    if d.is_alphanumeric() || d == '.' || d == '_' {
                        malformed = true;
                    } else {
                        break;
                    }
                }
                end = i + d.len_utf8();
                chars.next();
            }
            let span = SourceSpan::new(start, end);
            if malformed {
                return Err(ParseError::MalformedNumber { span });
            }
            let value = input[start..end].parse::<BigInt>().expect("ascii digits");
            out.push(Token { tok: Tok::Int(value), span });
            continue;
        }
        if c.is_alphabetic() {
            let mut end = start;
            while let Some(&(i, d)) = chars.peek() {
                if !(d.is_alphanumeric() || d == '_') {
                    break;
                }
                end = i + d.len_utf8();
                chars.next();
            }
            out.push(Token {
                tok: Tok::Ident(input[start..end].to_string()),
                span: SourceSpan::new(start, end),
            });
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ';' => Tok::Semi,
            other => {
                return Err(ParseError::UnknownCharacter {
                    span: SourceSpan::new(start, start + other.len_utf8()),
                    ch: other,
                })
            }
        };
        chars.next();
        out.push(Token {
            tok,
            span: SourceSpan::new(start, start + c.len_utf8()),
        });
    }
    out.push(Token {
        tok: Tok::End,
        span: SourceSpan::new(input.len(), input.len()),
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(s: &str) -> Vec<Tok> {
        tokenize(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    fn id(s: &str) -> Tok {
        Tok::Ident(s.into())
    }

    #[test]
    fn examples() {
        assert_eq!(
            kinds("t/log1p(t)"),
            vec![id("t"), Tok::Slash, id("log1p"), Tok::LParen, id("t"), Tok::RParen, Tok::End]
        );
        assert_eq!(
            kinds("lif(2; log1p(t))"),
            vec![
                id("lif"),
                Tok::LParen,
                Tok::Int(2.into()),
                Tok::Semi,
                id("log1p"),
                Tok::LParen,
                id("t"),
                Tok::RParen,
                Tok::RParen,
                Tok::End
            ]
        );
        assert_eq!(
            kinds("3/4 * t^2"),
            vec![
                Tok::Int(3.into()),
                Tok::Slash,
                Tok::Int(4.into()),
                Tok::Star,
                id("t"),
                Tok::Caret,
                Tok::Int(2.into()),
                Tok::End
            ]
        );
    }

    #[test]
    fn spans_are_byte_offsets() {
        let toks = tokenize("  lif(12;t)").unwrap();
        assert_eq!(toks[0].span, SourceSpan::new(2, 5));
        assert_eq!(toks[2].span, SourceSpan::new(6, 8));
        assert_eq!(toks.last().unwrap().span, SourceSpan::new(11, 11));
    }

    #[test]
    fn unicode_minus() {
        assert_eq!(kinds("\u{2212}t"), vec![Tok::Minus, id("t"), Tok::End]);
    }

    #[test]
    fn errors() {
        assert_eq!(
            tokenize("t + 3x"),
            Err(ParseError::MalformedNumber { span: SourceSpan::new(4, 6) })
        );
        assert_eq!(
            tokenize("1.5"),
            Err(ParseError::MalformedNumber { span: SourceSpan::new(0, 3) })
        );
        assert_eq!(
            tokenize("t $ 2"),
            Err(ParseError::UnknownCharacter { span: SourceSpan::new(2, 3), ch: '$' })
        );
    }
}
