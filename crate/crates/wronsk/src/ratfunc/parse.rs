//! Recursive-descent parser for rational-function expressions.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := factor (('*'|'/') factor)*
//! factor   := base ('^' uint)?
//! base     := 'z' | rational | '(' expr ')'
//! rational := int ('/' uint)?
//! ```
//!
//! `p/q` with two bare integers is a single rational literal, so `3/4^2`
//! means `(3/4)^2`; a quotient with any non-literal operand, such as `1/z`,
//! is ordinary division.

use num::BigInt;
use num::Zero;

use crate::error::{Error, Result};

use super::{Rat, RatFunc};

const MAX_EXPONENT: u64 = 4096;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Z,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Eof,
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

fn lex(input: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = BigInt::parse_bytes(&bytes[start..i], 10).unwrap();
                toks.push((Tok::Num(n), start));
            }
            b'z' => {
                toks.push((Tok::Z, i));
                i += 1;
            }
            b'+' => {
                toks.push((Tok::Plus, i));
                i += 1;
            }
            b'-' => {
                toks.push((Tok::Minus, i));
                i += 1;
            }
            b'*' => {
                toks.push((Tok::Star, i));
                i += 1;
            }
            b'/' => {
                toks.push((Tok::Slash, i));
                i += 1;
            }
            b'^' => {
                toks.push((Tok::Caret, i));
                i += 1;
            }
            b'(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            b')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            b',' => {
                toks.push((Tok::Comma, i));
                i += 1;
            }
            _ => {
                return Err(Error::Parse {
                    pos: i,
                    msg: format!("unexpected character {:?}", input[i..].chars().next().unwrap()),
                })
            }
        }
    }
    toks.push((Tok::Eof, input.len()));
    Ok(toks)
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek2(&self) -> &Tok {
        let i = (self.at + 1).min(self.toks.len() - 1);
        &self.toks[i].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.factor()?;
                }
                Tok::Slash => {
                    self.bump();
                    let rhs = self.factor()?;
                    acc = acc.div(&rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RatFunc> {
        let base = self.base()?;
        if self.peek() == &Tok::Caret {
            self.bump();
            let e = self.uint("exponent")?;
            return base.pow(e as i64);
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<RatFunc> {
        match self.peek().clone() {
            Tok::Z => {
                self.bump();
                Ok(RatFunc::var())
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if self.peek() != &Tok::RParen {
                    return Err(Error::Parse {
                        pos: self.pos(),
                        msg: "expected ')'".into(),
                    });
                }
                self.bump();
                Ok(inner)
            }
            Tok::Minus => {
                self.bump();
                match self.peek().clone() {
                    Tok::Num(n) => {
                        self.bump();
                        self.rational_tail(-n)
                    }
                    _ => Err(Error::Parse {
                        pos: self.pos(),
                        msg: "expected a number after '-'".into(),
                    }),
                }
            }
            Tok::Num(n) => {
                self.bump();
                self.rational_tail(n)
            }
            _ => Err(Error::Parse {
                pos: self.pos(),
                msg: "expected 'z', a number, or '('".into(),
            }),
        }
    }

    /// A signed integer has been read; greedily absorb `/ uint` into a
    /// rational literal when the next two tokens allow it.
    fn rational_tail(&mut self, numer: BigInt) -> Result<RatFunc> {
        if self.peek() == &Tok::Slash {
            if let Tok::Num(d) = self.peek2().clone() {
                self.bump();
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                self.bump();
                return Ok(RatFunc::constant(Rat::new(numer, d)));
            }
        }
        Ok(RatFunc::constant(Rat::from_integer(numer)))
    }

    fn uint(&mut self, what: &str) -> Result<u64> {
        match self.peek().clone() {
            Tok::Num(n) => {
                let pos = self.pos();
                self.bump();
                let e: u64 = n.try_into().map_err(|_| Error::Parse {
                    pos,
                    msg: format!("{what} too large"),
                })?;
                if e > MAX_EXPONENT {
                    return Err(Error::Parse {
                        pos,
                        msg: format!("{what} too large"),
                    });
                }
                Ok(e)
            }
            _ => Err(Error::Parse {
                pos: self.pos(),
                msg: format!("expected an unsigned integer {what}"),
            }),
        }
    }
}

/// Parses one rational-function expression.
pub fn parse_ratfunc(input: &str) -> Result<RatFunc> {
    let mut p = Parser {
        toks: lex(input)?,
        at: 0,
    };
    let value = p.expr()?;
    match p.peek() {
        Tok::Eof => Ok(value),
        _ => Err(Error::Parse {
            pos: p.pos(),
            msg: "unexpected trailing input".into(),
        }),
    }
}

/// Parses a comma-separated list of expressions, e.g. `"1, z, z^2"`.
pub fn parse_section(input: &str) -> Result<Vec<RatFunc>> {
    let mut p = Parser {
        toks: lex(input)?,
        at: 0,
    };
    let mut out = vec![p.expr()?];
    while p.peek() == &Tok::Comma {
        p.bump();
        out.push(p.expr()?);
    }
    match p.peek() {
        Tok::Eof => Ok(out),
        _ => Err(Error::Parse {
            pos: p.pos(),
            msg: "unexpected trailing input".into(),
        }),
    }
}
