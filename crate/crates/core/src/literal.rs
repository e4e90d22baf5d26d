//! Parser for the polynomial literal grammar shared by ring files and CLI
//! arguments.
//!
//! The accepted language is a small superset of the documented one: sums of
//! products of integers, variables and parenthesised sub-expressions, each
//! optionally raised to a nonnegative integer power. `(t+1)*x^2 + t`,
//! `x^5 + x^2 + 1` and `(x^2+x+1)*(x^5+x^2+1)` are all valid.

use crate::error::{Error, Result};

/// Target algebra of a literal.
pub trait LiteralAlgebra {
    type Elem: Clone;

    fn integer(&self, n: i64) -> Self::Elem;
    fn variable(&self, name: &str) -> Result<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.integer(1);
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

pub fn parse<A: LiteralAlgebra>(text: &str, alg: &A) -> Result<A::Elem> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(Error::parse("empty polynomial literal"));
    }
    let mut p = Parser { chars: &chars, pos: 0, alg };
    let value = p.expr()?;
    if p.pos != chars.len() {
        return Err(p.error(format!("unexpected `{}`", chars[p.pos])));
    }
    Ok(value)
}

struct Parser<'a, A> {
    chars: &'a [char],
    pos: usize,
    alg: &'a A,
}

impl<A: LiteralAlgebra> Parser<'_, A> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn error(&self, msg: String) -> Error {
        let text: String = self.chars.iter().collect();
        Error::parse(format!("{msg} at offset {} in `{text}`", self.pos))
    }

    fn expr(&mut self) -> Result<A::Elem> {
        let mut negate = false;
        match self.peek() {
            Some('-') => {
                negate = true;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { self.alg.neg(&first) } else { first };
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { self.alg.add(&acc, &t) } else { self.alg.add(&acc, &self.alg.neg(&t)) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<A::Elem> {
        let mut acc = self.power()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let f = self.power()?;
            acc = self.alg.mul(&acc, &f);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<A::Elem> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            return Ok(self.alg.pow(&base, e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer".into()));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.error(format!("integer `{s}` out of range")))
    }

    fn atom(&mut self) -> Result<A::Elem> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let n = i64::try_from(n).map_err(|_| self.error("integer out of range".into()))?;
                Ok(self.alg.integer(n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                self.pos += 1;
                while self.peek().is_some_and(|c| c.is_ascii_digit() || c == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                self.alg.variable(&name).map_err(|e| match e {
                    Error::Parse { message, .. } => self.error(message),
                    other => other,
                })
            }
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of input".into())),
        }
    }
}
