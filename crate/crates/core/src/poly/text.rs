//! Plain-text polynomial syntax: `"x0*y1 - x1*y0"`, `"3/2*a0^2*b1"`,
//! `"(x0*y1 - x1*y0)^2"`.

use num_bigint::BigInt;

use super::{Polynomial, Rational};
use crate::context::{Letter, LetterContext};
use crate::error::{Error, Result};

impl Polynomial {
    /// Parses `text` over the letters of `ctx`.
    pub fn parse(text: &str, ctx: &LetterContext) -> Result<Polynomial> {
        let mut p = Parser { src: text, pos: 0, ctx };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos < text.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(out)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    ctx: &'a LetterContext,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn error(&self, message: &str) -> Error {
        Error::Syntax { position: self.pos, message: message.to_string() }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    fn expr(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        if self.rest().is_empty() {
            return Err(self.error("empty expression"));
        }
        let mut acc = if self.eat('-') {
            -self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc += self.term()?;
            } else if self.eat('-') {
                acc -= self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        while self.eat('*') {
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let exp = self
                .digits()
                .ok_or_else(|| self.error("expected exponent"))?
                .parse::<u32>()
                .map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().unwrap().parse().unwrap();
                let mut value = Rational::from_integer(num);
                let save = self.pos;
                if self.eat('/') {
                    self.skip_ws();
                    match self.digits() {
                        Some(d) => {
                            let den: BigInt = d.parse().unwrap();
                            if den == BigInt::from(0) {
                                return Err(self.error("zero denominator"));
                            }
                            value /= Rational::from_integer(den);
                        }
                        None => {
                            self.pos = save;
                            return Err(self.error("expected denominator"));
                        }
                    }
                }
                Ok(Polynomial::constant(value))
            }
            Some(c) if c.is_alphabetic() => self.variable(),
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn variable(&mut self) -> Result<Polynomial> {
        let rest = self.rest();
        let letter: Option<Letter> = self
            .ctx
            .letters()
            .filter(|l| {
                let name = l.name();
                rest.starts_with(&name)
                    && rest[name.len()..].chars().next().is_some_and(|c| c.is_ascii_digit())
            })
            .max_by_key(|l| l.name().len());
        let Some(letter) = letter else {
            let name: String = rest.chars().take_while(|c| c.is_alphabetic() || *c == '_').collect();
            return Err(Error::UnknownLetter(name));
        };
        self.pos += letter.name().len();
        let index = self.digits().unwrap();
        let index: u32 = index.parse().map_err(|_| self.error("index too large"))?;
        if index > letter.size() as u32 {
            return Err(Error::IndexOutOfRange {
                letter: letter.name(),
                index,
                max: letter.size() as u32,
            });
        }
        Ok(Polynomial::var(letter.var(index as u16)))
    }
}
