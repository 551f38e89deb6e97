//! Textual form of scalars: `c*q^e*t^a*mu1^b` terms joined by ` + ` / ` - `.
//!
//! Every coefficient is written explicitly as an integer or `p/q` literal so
//! the output parses back to the identical value.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::fraction::ParamFraction;
use super::poly::{Monomial, ParamPoly, Sym};
use super::Rational;
use crate::error::{Error, Result};

pub fn format_poly(p: &ParamPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&c.abs().to_string());
        for &(s, e) in m.pairs() {
            out.push('*');
            out.push_str(&s.name());
            if e != 1 {
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
    }
    out
}

pub fn format_fraction(f: &ParamFraction) -> String {
    f.to_string()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!(
            "{what} at offset {} in {:?}",
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        s.parse().map_err(|_| self.err("bad integer"))
    }

    fn signed_small(&mut self) -> Result<i32> {
        let neg = self.eat(b'-');
        let v = self.integer()?;
        let v: i32 = v.try_into().map_err(|_| self.err("exponent out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn factor(&mut self, coef: &mut Rational, mono: &mut Monomial) -> Result<()> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let save = self.pos;
                // a '/' followed by digits is part of the literal
                if self.eat(b'/') && self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    *coef *= Rational::new(n, d);
                } else {
                    self.pos = save;
                    *coef *= Rational::from_integer(n);
                }
                Ok(())
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let sym = Sym::parse(name).ok_or_else(|| self.err("unknown symbol"))?;
                let e = if self.eat(b'^') { self.signed_small()? } else { 1 };
                if e < 0 && sym != Sym::Q {
                    return Err(self.err("negative exponent on a polynomial symbol"));
                }
                *mono = mono.mul(&Monomial::var(sym, e));
                Ok(())
            }
            _ => Err(self.err("expected a number or symbol")),
        }
    }

    fn term(&mut self) -> Result<ParamPoly> {
        let mut coef = Rational::one();
        let mut mono = Monomial::one();
        self.factor(&mut coef, &mut mono)?;
        while self.eat(b'*') {
            self.factor(&mut coef, &mut mono)?;
        }
        Ok(ParamPoly::term(coef, mono))
    }

    fn poly(&mut self) -> Result<ParamPoly> {
        let mut neg = false;
        if self.eat(b'-') {
            neg = true;
        } else {
            self.eat(b'+');
        }
        let mut acc = ParamPoly::zero();
        loop {
            let t = self.term()?;
            acc = if neg { &acc - &t } else { &acc + &t };
            if self.eat(b'+') {
                neg = false;
            } else if self.eat(b'-') {
                neg = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn finish(&mut self) -> Result<()> {
        if self.peek().is_some() {
            Err(self.err("trailing input"))
        } else {
            Ok(())
        }
    }
}

pub fn parse_poly(s: &str) -> Result<ParamPoly> {
    let mut p = Parser::new(s);
    let out = p.poly()?;
    p.finish()?;
    Ok(out)
}

/// Parses either a plain polynomial or `(num)/(den)`.
pub fn parse_fraction(s: &str) -> Result<ParamFraction> {
    let mut p = Parser::new(s);
    if p.peek() == Some(b'(') {
        p.pos += 1;
        let num = p.poly()?;
        if !p.eat(b')') || !p.eat(b'/') || !p.eat(b'(') {
            return Err(p.err("expected ')/('"));
        }
        let den = p.poly()?;
        if !p.eat(b')') {
            return Err(p.err("expected ')'"));
        }
        p.finish()?;
        ParamFraction::new(num, den)
    } else {
        let num = p.poly()?;
        p.finish()?;
        Ok(ParamFraction::from_poly(num))
    }
}
