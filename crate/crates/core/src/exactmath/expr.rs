//! Parser for plain-text polynomial expressions in `s` and `t`, such as
//! `1/1440*s*t*(t-1)*(s-1)*(s+t+1)*(s+t)`.
//!
//! Accepts integers, the symbols `s` and `t`, `+ - * /`, parentheses and
//! integer powers written `**` or `^`. Division is only allowed by nonzero
//! constants. Whitespace is ignored.

use num_bigint::BigInt;
use num_rational::BigRational;
use std::str::FromStr;

use super::poly::BivariatePolynomial;
use crate::error::{Error, Result};

pub fn parse_st_expression(src: &str) -> Result<BivariatePolynomial> {
    let chars: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser { chars, pos: 0 };
    let value = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(p.error("trailing input"));
    }
    Ok(value)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!(
            "{what} at offset {} in polynomial expression",
            self.pos
        ))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<BivariatePolynomial> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<BivariatePolynomial> {
        let mut acc = self.unary()?;
        loop {
            if self.peek() == Some('*') && self.chars.get(self.pos + 1) != Some(&'*') {
                self.pos += 1;
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                let mut terms = d.terms();
                let c = match (terms.next(), terms.next()) {
                    (Some((m, c)), None) if m.s == 0 && m.t == 0 => c.clone(),
                    _ => return Err(self.error("division by a non-constant")),
                };
                acc = acc.scale(&c.recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<BivariatePolynomial> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<BivariatePolynomial> {
        let base = self.atom()?;
        let is_pow = if self.peek() == Some('^') {
            self.pos += 1;
            true
        } else if self.peek() == Some('*') && self.chars.get(self.pos + 1) == Some(&'*') {
            self.pos += 2;
            true
        } else {
            false
        };
        if !is_pow {
            return Ok(base);
        }
        let n = self.integer()?;
        let n = u32::try_from(&n).map_err(|_| self.error("exponent out of range"))?;
        Ok(base.pow(n))
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        BigInt::from_str(&text).map_err(|_| self.error("bad integer"))
    }

    fn atom(&mut self) -> Result<BivariatePolynomial> {
        match self.peek() {
            Some('s') => {
                self.pos += 1;
                Ok(BivariatePolynomial::var_s())
            }
            Some('t') => {
                self.pos += 1;
                Ok(BivariatePolynomial::var_t())
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(BivariatePolynomial::constant(
                BigRational::from_integer(self.integer()?),
            )),
            _ => Err(self.error("unexpected character")),
        }
    }
}
