//! Recursive-descent parser.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := factor (('*' | '/') factor)*
//! factor   := atom ('^' exponent)?
//! exponent := signed_rational | ident
//! atom     := number | ident | ident '(' expr ')' | '(' expr ')' | '-' atom
//! ```
//!
//! A `/` belongs to a rational exponent only when it directly follows the
//! numerator: `x^1/2` is a square root, `x^2 / 3` a quotient.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use super::ast::{BinOp, Expr, Power, Var};
use crate::numeric::{ExactRational, Func};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    /// Byte offset of the offending input.
    pub offset: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: expected {}, found {}", self.offset, self.expected.join(" or "), self.found)
    }
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error(&["expression"]));
    }
    let e = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error(&["+", "-", "*", "/", "^", "end of input"]));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let found = match self.peek() {
            None => "end of input".to_string(),
            Some(_) => {
                let rest = std::str::from_utf8(&self.src[self.pos..]).unwrap_or("?");
                format!("`{}`", rest.chars().next().unwrap_or('?'))
            }
        };
        ParseError { offset: self.pos, expected: expected.iter().map(|s| s.to_string()).collect(), found }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            self.skip_ws();
            let op = match self.peek() {
                Some(b'+') => BinOp::Add,
                Some(b'-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::bin(op, lhs, rhs);
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            self.skip_ws();
            let op = match self.peek() {
                Some(b'*') => BinOp::Mul,
                Some(b'/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.factor()?;
            lhs = Expr::bin(op, lhs, rhs);
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let power = self.exponent()?;
        Ok(Expr::Pow(Box::new(base), power))
    }

    fn exponent(&mut self) -> Result<Power, ParseError> {
        self.skip_ws();
        if matches!(self.peek(), Some(c) if c.is_ascii_alphabetic()) {
            let start = self.pos;
            let name = self.ident();
            return match Var::from_name(name) {
                Some(v) => Ok(Power::Var(v)),
                None => {
                    self.pos = start;
                    Err(self.error(&["integer", "rational p/q", "x", "n", "k"]))
                }
            };
        }
        let negative = self.peek() == Some(b'-');
        if negative {
            self.pos += 1;
        }
        let num = self.digits().ok_or_else(|| self.error(&["integer", "rational p/q", "x", "n", "k"]))?;
        let mut q = ExactRational::from_integer(num);
        if self.peek() == Some(b'/') && matches!(self.src.get(self.pos + 1), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
            let den = self.digits().expect("digit checked");
            q = ExactRational::new(q.numer().clone(), den).map_err(|_| ParseError {
                offset: self.pos - 1,
                expected: vec!["nonzero denominator".into()],
                found: "`0`".into(),
            })?;
        }
        Ok(Power::Rational(if negative { -q } else { q }))
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
    }

    fn ident(&mut self) -> &str {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("")
    }

    fn number(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.peek() == Some(b'.') {
            self.pos += 1;
            let frac_start = self.pos;
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.pos += 1;
            }
            if frac_start == self.pos {
                return Err(self.error(&["digit"]));
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("0");
        let q: ExactRational = text.parse().map_err(|_| ParseError {
            offset: start,
            expected: vec!["number".into()],
            found: format!("`{text}`"),
        })?;
        Ok(Expr::Num(q))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        const ATOM_START: [&str; 4] = ["number", "identifier", "(", "-"];
        self.skip_ws();
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(Expr::neg(self.atom()?))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.error(&["+", "-", "*", "/", "^", ")"]));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => self.number(),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let name = self.ident().to_string();
                if let Some(func) = Func::from_name(&name) {
                    self.skip_ws();
                    if self.peek() != Some(b'(') {
                        return Err(self.error(&["("]));
                    }
                    self.pos += 1;
                    let arg = self.expr()?;
                    self.skip_ws();
                    if self.peek() != Some(b')') {
                        return Err(self.error(&["+", "-", "*", "/", "^", ")"]));
                    }
                    self.pos += 1;
                    return Ok(Expr::call(func, arg));
                }
                match Var::from_name(&name) {
                    Some(v) => Ok(Expr::Var(v)),
                    None => {
                        self.pos = start;
                        Err(ParseError {
                            offset: start,
                            expected: ["x", "n", "k", "sin", "cos", "exp", "log", "sqrt", "abs"]
                                .iter()
                                .map(|s| s.to_string())
                                .collect(),
                            found: format!("`{name}`"),
                        })
                    }
                }
            }
            _ => Err(self.error(&ATOM_START)),
        }
    }
}
