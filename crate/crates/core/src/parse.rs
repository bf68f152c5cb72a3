//! Text grammar for polynomials:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 'x' digit | '(' expr ')'
//! ```
//!
//! Integer literals of any length are reduced modulo `p` while reading.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::NVARS;
use crate::poly::Polynomial;

pub fn parse_polynomial(text: &str, field: PrimeField) -> Result<Polynomial> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, field };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

/// Parses a comma-separated list of polynomials. An empty list is allowed.
pub fn parse_polynomial_list(text: &str, field: PrimeField) -> Result<Vec<Polynomial>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in text.split(',') {
        match parse_polynomial(piece, field) {
            Ok(p) => out.push(p),
            Err(Error::Syntax { pos, message }) => return Err(Error::Syntax { pos: pos + offset, message }),
            Err(Error::UnknownVariable { name, pos }) => {
                return Err(Error::UnknownVariable { name, pos: pos + offset })
            }
            Err(e) => return Err(e),
        }
        offset += piece.len() + 1;
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: PrimeField,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax { pos: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while let Some(b'*') = self.peek() {
            self.pos += 1;
            let f = self.unary()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if let Some(b'^') = self.peek() {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let mut e: u64 = 0;
            while let Some(&c) = self.src.get(self.pos) {
                if !c.is_ascii_digit() {
                    break;
                }
                e = e * 10 + (c - b'0') as u64;
                if e > 1000 {
                    return Err(Error::Syntax { pos: start, message: "exponent too large".into() });
                }
                self.pos += 1;
            }
            if self.pos == start {
                return Err(self.error("expected a non-negative integer exponent"));
            }
            return Ok(base.pow(e as u32));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let p = self.field.characteristic() as u64;
                let mut v: u64 = 0;
                while let Some(&c) = self.src.get(self.pos) {
                    if !c.is_ascii_digit() {
                        break;
                    }
                    v = (v * 10 + (c - b'0') as u64) % p;
                    self.pos += 1;
                }
                Ok(Polynomial::constant(self.field, v as i64))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while let Some(&c) = self.src.get(self.pos) {
                    if !(c.is_ascii_alphanumeric() || c == b'_') {
                        break;
                    }
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("?");
                match name.strip_prefix('x').and_then(|d| d.parse::<usize>().ok()) {
                    Some(i) if i < NVARS && name.len() == 2 => Ok(Polynomial::var(self.field, i)),
                    _ => Err(Error::UnknownVariable { name: name.to_string(), pos: start }),
                }
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
