//! Parser for polynomial expressions: integer literals, named
//! variables, `+`, `-`, `*`, `^` with nonnegative integer exponents,
//! and parentheses. Implicit multiplication is a syntax error.

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;

use crate::closure::CharSpec;
use crate::poly::SparsePolynomial;

const MAX_EXPONENT: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseError {
    Syntax { position: usize, message: String },
    UnknownVariable { position: usize, name: String },
    ExponentOverflow { position: usize },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { position, message } => {
                write!(f, "syntax error at byte {position}: {message}")
            }
            ParseError::UnknownVariable { position, name } => {
                write!(f, "unknown variable '{name}' at byte {position}")
            }
            ParseError::ExponentOverflow { position } => {
                write!(f, "exponent too large at byte {position}")
            }
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                tokens.push((Token::Plus, i));
                i += 1;
            }
            '-' | '\u{2212}' => {
                tokens.push((Token::Minus, i));
                i += c.len_utf8();
            }
            '*' => {
                tokens.push((Token::Star, i));
                i += 1;
            }
            '^' => {
                tokens.push((Token::Caret, i));
                i += 1;
            }
            '(' => {
                tokens.push((Token::LParen, i));
                i += 1;
            }
            ')' => {
                tokens.push((Token::RParen, i));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let value: BigInt = text[start..i].parse().expect("digits");
                tokens.push((Token::Int(value), start));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                tokens.push((Token::Ident(text[start..i].to_string()), start));
            }
            other => {
                return Err(ParseError::Syntax {
                    position: i,
                    message: format!("unexpected character '{other}'"),
                });
            }
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    field: CharSpec,
    vars: &'a [String],
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&(Token, usize)> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<(Token, usize)> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> usize {
        self.peek().map_or(self.end, |(_, p)| *p)
    }

    fn syntax(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            position: self.here(),
            message: message.into(),
        }
    }

    fn expr(&mut self) -> Result<SparsePolynomial, ParseError> {
        let mut acc = self.term()?;
        while let Some((tok, _)) = self.peek() {
            match tok {
                Token::Plus => {
                    self.next();
                    acc = acc.add(&self.term()?);
                }
                Token::Minus => {
                    self.next();
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<SparsePolynomial, ParseError> {
        let mut acc = self.factor()?;
        while let Some((Token::Star, _)) = self.peek() {
            self.next();
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<SparsePolynomial, ParseError> {
        match self.peek() {
            Some((Token::Plus, _)) => {
                self.next();
                self.factor()
            }
            Some((Token::Minus, _)) => {
                self.next();
                Ok(self.factor()?.neg())
            }
            _ => {
                let base = self.primary()?;
                if let Some((Token::Caret, _)) = self.peek() {
                    self.next();
                    let (tok, pos) = self
                        .next()
                        .ok_or_else(|| self.syntax("expected exponent after '^'"))?;
                    let Token::Int(n) = tok else {
                        return Err(ParseError::Syntax {
                            position: pos,
                            message: "exponent must be a nonnegative integer literal".into(),
                        });
                    };
                    let n: u64 = n
                        .try_into()
                        .map_err(|_| ParseError::ExponentOverflow { position: pos })?;
                    if n > MAX_EXPONENT {
                        return Err(ParseError::ExponentOverflow { position: pos });
                    }
                    return Ok(base.pow(n as u32));
                }
                Ok(base)
            }
        }
    }

    fn primary(&mut self) -> Result<SparsePolynomial, ParseError> {
        let Some((tok, pos)) = self.next() else {
            return Err(ParseError::Syntax {
                position: self.end,
                message: "unexpected end of input".into(),
            });
        };
        match tok {
            Token::Int(n) => Ok(SparsePolynomial::constant(
                self.field,
                self.vars,
                BigRational::from_integer(n),
            )),
            Token::Ident(name) => {
                let idx = self
                    .vars
                    .iter()
                    .position(|v| *v == name)
                    .ok_or(ParseError::UnknownVariable {
                        position: pos,
                        name,
                    })?;
                Ok(SparsePolynomial::variable(self.field, self.vars, idx))
            }
            Token::LParen => {
                let inner = self.expr()?;
                match self.next() {
                    Some((Token::RParen, _)) => Ok(inner),
                    _ => Err(ParseError::Syntax {
                        position: pos,
                        message: "unbalanced parenthesis".into(),
                    }),
                }
            }
            other => Err(ParseError::Syntax {
                position: pos,
                message: format!("unexpected token {other:?}"),
            }),
        }
    }
}

/// Parse `text` into an exact polynomial in the given variables.
pub fn parse_polynomial(
    text: &str,
    field: CharSpec,
    vars: &[String],
) -> Result<SparsePolynomial, ParseError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        field,
        vars,
        end: text.len(),
    };
    let poly = parser.expr()?;
    if let Some((tok, position)) = parser.peek() {
        return Err(ParseError::Syntax {
            position: *position,
            message: format!("unexpected token {tok:?}"),
        });
    }
    Ok(poly)
}
