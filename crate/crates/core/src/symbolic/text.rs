//! Bracket text: `"[a,b]^2*[a,c]*b0*c0^2"`, with optional rational
//! coefficients and sums (`"3/2*[a,b]*c0 - a0^2"`).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{BracketExpr, BracketMonomial};
use crate::context::{symbol_ordinal_of, Letter};
use crate::error::{Error, Result};
use crate::poly::{integer, Rational};

impl BracketExpr {
    pub fn parse(text: &str) -> Result<BracketExpr> {
        let mut p = Parser { src: text.as_bytes(), pos: 0 };
        p.skip_ws();
        if p.pos == p.src.len() {
            return Err(p.error("empty expression"));
        }
        let mut out = BracketExpr::zero();
        let mut first = true;
        loop {
            p.skip_ws();
            if p.pos == p.src.len() {
                break;
            }
            let sign = match p.peek() {
                Some(b'+') => {
                    p.pos += 1;
                    1
                }
                Some(b'-') => {
                    p.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => return Err(p.error("expected `+` or `-`")),
            };
            first = false;
            let (c, b) = p.term()?;
            out.add_term(c * integer(sign), b);
        }
        Ok(out)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, message: &str) -> Error {
        Error::Syntax { position: self.pos, message: message.to_string() }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn number(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().unwrap())
    }

    fn exponent(&mut self) -> Result<u32> {
        self.skip_ws();
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        let n = self.number().ok_or_else(|| self.error("expected exponent"))?;
        u32::try_from(n).map_err(|_| self.error("exponent too large"))
    }

    fn letter(&mut self) -> Result<Letter> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_lowercase() => {
                self.pos += 1;
                Ok(Letter::symbol(symbol_ordinal_of(c as char).unwrap()))
            }
            Some(c) if c.is_ascii_alphabetic() => Err(Error::UnknownLetter((c as char).to_string())),
            _ => Err(self.error("expected a symbol letter")),
        }
    }

    fn term(&mut self) -> Result<(Rational, BracketMonomial)> {
        let mut coeff = Rational::one();
        let mut mono = BracketMonomial::one();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'[') => {
                    self.pos += 1;
                    let a = self.letter()?;
                    self.expect(b',')?;
                    let b = self.letter()?;
                    self.expect(b']')?;
                    let l = self.exponent()?;
                    let (s, part) = BracketMonomial::bracket_power(a, b, l)?;
                    coeff *= integer(s as i64);
                    mono = mono.mul(&part);
                }
                Some(c) if c.is_ascii_digit() => {
                    let num = self.number().unwrap();
                    let mut value = Rational::from_integer(num);
                    self.skip_ws();
                    if self.peek() == Some(b'/') {
                        self.pos += 1;
                        let den = self.number().ok_or_else(|| self.error("expected denominator"))?;
                        if den.is_zero() {
                            return Err(self.error("zero denominator"));
                        }
                        value /= Rational::from_integer(den);
                    }
                    coeff *= value;
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let a = self.letter()?;
                    match self.number() {
                        Some(i) if i.is_zero() => {}
                        Some(_) => {
                            return Err(self.error("only index-0 linear factors are bracket expressions"))
                        }
                        None => return Err(self.error("expected `0` after the letter")),
                    }
                    let m = self.exponent()?;
                    mono = mono.mul(&BracketMonomial::linear(a, m));
                }
                _ => return Err(self.error("expected a factor")),
            }
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((coeff, mono));
            }
        }
    }
}
