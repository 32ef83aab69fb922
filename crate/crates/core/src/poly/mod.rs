//! Exact sparse multivariate polynomials over the rationals.

mod json;
mod monomial;
mod text;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use json::{PolynomialJson, TermJson};
pub use monomial::Monomial;

use crate::context::{Letter, Variable};
use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Per-letter total degrees of a multihomogeneous polynomial.
pub type Multidegree = BTreeMap<Letter, u32>;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn factorial(n: u32) -> Rational {
    Rational::from_integer((1..=n as u64).fold(BigInt::one(), |acc, k| acc * k))
}

/// `m (m-1) ... (m-i+1)`; the empty product is 1.
pub fn falling_factorial(m: u32, i: u32) -> Rational {
    let mut acc = BigInt::one();
    for k in 0..i {
        acc *= BigInt::from(m as i64 - k as i64);
    }
    Rational::from_integer(acc)
}

pub fn binomial(n: u32, k: u32) -> Rational {
    if k > n {
        return Rational::zero();
    }
    falling_factorial(n, k) / factorial(k)
}

/// `"num/den"`, the lossless wire form.
pub fn rational_to_fraction(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::term(c, Monomial::one())
    }

    pub fn var(v: Variable) -> Self {
        Polynomial::term(Rational::one(), Monomial::var(v))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Polynomial { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn letters(&self) -> Vec<Letter> {
        let mut out: Vec<Letter> = self
            .terms
            .keys()
            .flat_map(|m| m.iter().map(|(v, _)| v.letter()).collect::<Vec<_>>())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn variables(&self) -> Vec<Variable> {
        let mut out: Vec<Variable> =
            self.terms.keys().flat_map(|m| m.iter().map(|(v, _)| v).collect::<Vec<_>>()).collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn pow(&self, mut n: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn partial(&self, v: Variable) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().filter_map(|(m, c)| {
            m.without_one(v).map(|(e, rest)| (rest, c * integer(e as i64)))
        }))
    }

    /// Applies the derivation determined by `v -> c * w` on variables
    /// (`None` means `v -> 0`).
    pub fn apply_linear_derivation<F>(&self, image: F) -> Polynomial
    where
        F: Fn(Variable) -> Option<(Rational, Variable)>,
    {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in &self.terms {
            for (v, _) in m.iter() {
                let Some((k, w)) = image(v) else { continue };
                let (e, rest) = m.without_one(v).expect("variable present");
                let coeff = c * &k * integer(e as i64);
                *acc.entry(rest.mul(&Monomial::var(w))).or_insert_with(Rational::zero) += coeff;
            }
        }
        Polynomial { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    /// Substitutes variables by variables (`y_i := x_i` and similar renamings).
    pub fn map_vars(&self, f: impl Fn(Variable) -> Variable) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (m.map_vars(&f), c.clone())))
    }

    /// Replaces each monomial by a polynomial image, multiplied by its coefficient.
    pub fn map_monomials(&self, mut f: impl FnMut(&Monomial) -> Result<Polynomial>) -> Result<Polynomial> {
        let mut acc = Polynomial::zero();
        for (m, c) in &self.terms {
            acc += &f(m)?.scale(c);
        }
        Ok(acc)
    }

    /// Splits into multihomogeneous components keyed by per-letter degree.
    pub fn split_multihomogeneous(&self) -> BTreeMap<Multidegree, Polynomial> {
        let mut parts: BTreeMap<Multidegree, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            parts.entry(m.letter_degrees()).or_default().terms.insert(m.clone(), c.clone());
        }
        parts
    }

    /// Per-letter degree vector. The zero polynomial has the empty multidegree.
    pub fn multidegree(&self) -> Result<Multidegree> {
        let mut it = self.terms.keys().map(Monomial::letter_degrees);
        let Some(first) = it.next() else { return Ok(Multidegree::new()) };
        if it.all(|d| d == first) {
            Ok(first)
        } else {
            Err(Error::NotMultihomogeneous)
        }
    }

    pub fn degree_in(&self, letter: Letter) -> u32 {
        self.terms.keys().map(|m| m.degree_in(letter)).max().unwrap_or(0)
    }

    /// Common `E`-eigenvalue of the terms, if the polynomial is isobaric.
    pub fn isobaric_weight(&self) -> Result<i64> {
        let mut it = self.terms.keys().map(Monomial::e_weight);
        let Some(first) = it.next() else { return Err(Error::ZeroPolynomial("weight")) };
        if it.all(|w| w == first) {
            Ok(first)
        } else {
            Err(Error::NotIsobaric)
        }
    }

    /// Scalar multiple with integer coefficients of content 1 and positive
    /// leading coefficient, together with the factor used (`self * factor`).
    pub fn primitive(&self) -> (Polynomial, Rational) {
        if self.is_zero() {
            return (Polynomial::zero(), Rational::one());
        }
        let mut lcm = BigInt::one();
        let mut gcd = BigInt::zero();
        for c in self.terms.values() {
            lcm = lcm.lcm(c.denom());
        }
        for c in self.terms.values() {
            let n = c.numer() * (&lcm / c.denom());
            gcd = gcd.gcd(&n);
        }
        let mut factor = Rational::new(lcm, gcd);
        if self.leading_term().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            factor = -factor;
        }
        (self.scale(&factor), factor)
    }

    /// `Some(c)` with `self = c * other`, for nonzero `other`.
    pub fn ratio_to(&self, other: &Polynomial) -> Option<Rational> {
        let (m, c) = other.leading_term()?;
        let k = self.coefficient(m) / c;
        (&other.scale(&k) == self).then_some(k)
    }

    pub fn is_scalar_multiple_of(&self, other: &Polynomial) -> bool {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => true,
            (false, false) => self.ratio_to(other).is_some(),
            _ => false,
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            match self.terms.get_mut(m) {
                Some(a) => {
                    *a += c;
                    if a.is_zero() {
                        self.terms.remove(m);
                    }
                }
                None => {
                    self.terms.insert(m.clone(), c.clone());
                }
            }
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        *self += &(-rhs);
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(self.len() * rhs.len());
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                *acc.entry(m.mul(n)).or_insert_with(Rational::zero) += a * b;
            }
        }
        Polynomial { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: Polynomial) {
        *self += &rhs;
    }
}

impl SubAssign<Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: Polynomial) {
        *self -= &rhs;
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        iter.fold(Polynomial::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl std::iter::Product for Polynomial {
    fn product<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        iter.fold(Polynomial::one(), |acc, p| &acc * &p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::LetterContext;

    fn p(text: &str, ctx: &LetterContext) -> Polynomial {
        Polynomial::parse(text, ctx).unwrap()
    }

    #[test]
    fn addition_cancels() {
        let ctx = LetterContext::roman(&[3]).unwrap();
        assert_eq!(p("x0 + x1", &ctx) + p("-x1", &ctx), p("x0", &ctx));
        let q = p("x1^2 - 2*x0*x2", &ctx);
        assert_eq!(&q + &Polynomial::zero(), q);
        assert_eq!(q + p("2*x0*x2", &ctx), p("x1^2", &ctx));
    }

    #[test]
    fn bracket_square_expands() {
        let ctx = LetterContext::symbolic(2).unwrap();
        let br = p("a0*b1 - a1*b0", &ctx);
        assert_eq!(br.pow(2), p("a0^2*b1^2 - 2*a0*a1*b0*b1 + a1^2*b0^2", &ctx));
        assert_eq!(&br * &Polynomial::one(), br);
        // [a,b][b,a] = -[a,b]^2, checked against a termwise hand product
        let ba = p("b0*a1 - b1*a0", &ctx);
        let mut by_hand = Polynomial::zero();
        for (m, c) in br.terms() {
            for (n, d) in ba.terms() {
                by_hand += Polynomial::term(c * d, m.mul(n));
            }
        }
        assert_eq!(&br * &ba, by_hand);
        assert_eq!(&br * &ba, -br.pow(2));
    }

    #[test]
    fn partial_derivatives() {
        let ctx = LetterContext::symbolic(2).unwrap();
        let a0 = ctx.lookup("a").unwrap().var(0);
        let b0 = ctx.lookup("b").unwrap().var(0);
        assert_eq!(p("a0^2*b0", &ctx).partial(a0), p("2*a0*b0", &ctx));
        assert_eq!(p("a0*b1 - a1*b0", &ctx).partial(b0), p("-a1", &ctx));
        let ctx3 = LetterContext::roman(&[3]).unwrap();
        assert!(p("x1^3", &ctx3).partial(ctx3.romans()[0].var(0)).is_zero());
    }

    #[test]
    fn multidegree_of_example_product() {
        let ctx = LetterContext::roman(&[1, 2, 3]).unwrap();
        let md = p("x0*y0^2*z0", &ctx).multidegree().unwrap();
        assert_eq!(md.values().copied().collect::<Vec<_>>(), vec![1, 2, 1]);
        assert_eq!(p("x0", &ctx).multidegree().unwrap().len(), 1);
        assert_eq!(p("x0 + y0", &ctx).multidegree(), Err(Error::NotMultihomogeneous));
    }

    #[test]
    fn primitive_normalization() {
        let ctx = LetterContext::roman(&[2]).unwrap();
        let (q, k) = p("1/2*x1^2 - x0*x2", &ctx).primitive();
        assert_eq!(q, p("2*x0*x2 - x1^2", &ctx));
        assert_eq!(k, integer(-2));
    }

    #[test]
    fn falling_factorial_empty_product() {
        assert_eq!(falling_factorial(5, 0), integer(1));
        assert_eq!(falling_factorial(5, 3), integer(60));
        assert_eq!(binomial(6, 2), integer(15));
    }
}
