//! Bracket expressions over symbol letters.
//!
//! A [`BracketMonomial`] is `prod [a,b]^l * prod c0^m`; a [`BracketExpr`] is a
//! formal rational combination of them. Formal combinations are not reduced
//! modulo syzygies: two expressions are the same polynomial iff their
//! expansions agree.

mod text;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::context::Letter;
use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{integer, Monomial, Polynomial, Rational};
use crate::sl2;

/// `a0*b1 - a1*b0`.
pub fn bracket(a: Letter, b: Letter) -> Result<Polynomial> {
    check_symbol(a)?;
    check_symbol(b)?;
    if a == b {
        return Err(Error::RepeatedLetter(a.name()));
    }
    Ok(raw_bracket(a, b))
}

fn raw_bracket(a: Letter, b: Letter) -> Polynomial {
    Polynomial::from_terms([
        (Monomial::from_pairs([(a.var(0), 1), (b.var(1), 1)]), integer(1)),
        (Monomial::from_pairs([(a.var(1), 1), (b.var(0), 1)]), integer(-1)),
    ])
}

fn check_symbol(l: Letter) -> Result<()> {
    if l.is_symbol() {
        Ok(())
    } else {
        Err(Error::KindMismatch(format!("`{l}` is not a symbol letter")))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BracketMonomial {
    brackets: BTreeMap<(Letter, Letter), u32>,
    linears: BTreeMap<Letter, u32>,
}

impl BracketMonomial {
    pub fn one() -> Self {
        BracketMonomial::default()
    }

    /// `c0^m`.
    pub fn linear(c: Letter, m: u32) -> Self {
        let mut out = BracketMonomial::one();
        if m > 0 {
            out.linears.insert(c, m);
        }
        out
    }

    /// `[a,b]^l` stored with its letters in order, and the sign that costs.
    pub fn bracket_power(a: Letter, b: Letter, l: u32) -> Result<(i32, Self)> {
        check_symbol(a)?;
        check_symbol(b)?;
        if a == b {
            return Err(Error::RepeatedLetter(a.name()));
        }
        let mut out = BracketMonomial::one();
        if l == 0 {
            return Ok((1, out));
        }
        let (key, sign) = if a < b { ((a, b), 1) } else { ((b, a), if l % 2 == 1 { -1 } else { 1 }) };
        out.brackets.insert(key, l);
        Ok((sign, out))
    }

    /// Builds from ordered data; callers guarantee `a < b` in every key.
    pub fn from_parts(
        brackets: impl IntoIterator<Item = ((Letter, Letter), u32)>,
        linears: impl IntoIterator<Item = (Letter, u32)>,
    ) -> Self {
        let mut out = BracketMonomial::one();
        for ((a, b), l) in brackets {
            assert!(a < b, "bracket letters must be ordered");
            if l > 0 {
                *out.brackets.entry((a, b)).or_insert(0) += l;
            }
        }
        for (c, m) in linears {
            if m > 0 {
                *out.linears.entry(c).or_insert(0) += m;
            }
        }
        out
    }

    pub fn brackets(&self) -> impl Iterator<Item = ((Letter, Letter), u32)> + '_ {
        self.brackets.iter().map(|(&k, &l)| (k, l))
    }

    pub fn linears(&self) -> impl Iterator<Item = (Letter, u32)> + '_ {
        self.linears.iter().map(|(&k, &m)| (k, m))
    }

    pub fn bracket_exponent(&self, a: Letter, b: Letter) -> u32 {
        let key = if a < b { (a, b) } else { (b, a) };
        self.brackets.get(&key).copied().unwrap_or(0)
    }

    pub fn linear_exponent(&self, c: Letter) -> u32 {
        self.linears.get(&c).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.brackets.is_empty() && self.linears.is_empty()
    }

    pub fn mul(&self, other: &BracketMonomial) -> BracketMonomial {
        BracketMonomial::from_parts(
            self.brackets().chain(other.brackets()),
            self.linears().chain(other.linears()),
        )
    }

    /// `wt_a = sum_b (l_ab + l_ba) + m_a`.
    pub fn weights(&self) -> BTreeMap<Letter, u32> {
        let mut w = BTreeMap::new();
        for ((a, b), l) in self.brackets() {
            *w.entry(a).or_insert(0) += l;
            *w.entry(b).or_insert(0) += l;
        }
        for (c, m) in self.linears() {
            *w.entry(c).or_insert(0) += m;
        }
        w
    }

    /// `ord P = sum m_c`.
    pub fn order(&self) -> u32 {
        self.linears.values().sum()
    }

    pub fn degree(&self) -> u32 {
        self.brackets.values().map(|l| 2 * l).sum::<u32>() + self.order()
    }

    pub fn support(&self) -> BTreeSet<Letter> {
        self.weights().into_keys().collect()
    }

    pub fn expand(&self) -> Polynomial {
        let mut acc = Polynomial::term(
            Rational::one(),
            Monomial::from_pairs(self.linears().map(|(c, m)| (c.var(0), m))),
        );
        for ((a, b), l) in self.brackets() {
            acc = &acc * &raw_bracket(a, b).pow(l);
        }
        acc
    }

    /// Connected components of the letter-sharing graph of the factors.
    pub fn components(&self) -> Vec<BracketMonomial> {
        let letters: Vec<Letter> = self.support().into_iter().collect();
        let mut parent: Vec<usize> = (0..letters.len()).collect();
        fn find(parent: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while parent[r] != r {
                r = parent[r];
            }
            parent[i] = r;
            r
        }
        let pos = |l: Letter| letters.binary_search(&l).unwrap();
        for ((a, b), _) in self.brackets() {
            let (ra, rb) = (find(&mut parent, pos(a)), find(&mut parent, pos(b)));
            parent[ra] = rb;
        }
        let mut parts: BTreeMap<usize, BracketMonomial> = BTreeMap::new();
        for ((a, b), l) in self.brackets() {
            let r = find(&mut parent, pos(a));
            parts.entry(r).or_default().brackets.insert((a, b), l);
        }
        for (c, m) in self.linears() {
            let r = find(&mut parent, pos(c));
            parts.entry(r).or_default().linears.insert(c, m);
        }
        parts.into_values().collect()
    }

    /// The disjoint factors when there is more than one.
    pub fn decomposition(&self) -> Option<Vec<BracketMonomial>> {
        let parts = self.components();
        (parts.len() > 1).then_some(parts)
    }

    pub fn is_decomposable(&self) -> bool {
        self.decomposition().is_some()
    }

    /// Renames letters (`f` must be injective on the support); returns the
    /// sign picked up by reorienting brackets.
    pub fn permute(&self, f: impl Fn(Letter) -> Letter) -> (i32, BracketMonomial) {
        let mut sign = 1;
        let mut out = BracketMonomial::one();
        for ((a, b), l) in self.brackets() {
            let (s, part) = BracketMonomial::bracket_power(f(a), f(b), l).expect("injective renaming");
            sign *= s;
            out = out.mul(&part);
        }
        for (c, m) in self.linears() {
            out = out.mul(&BracketMonomial::linear(f(c), m));
        }
        (sign, out)
    }
}

impl fmt::Display for BracketMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for ((a, b), l) in self.brackets() {
            parts.push(if l == 1 { format!("[{a},{b}]") } else { format!("[{a},{b}]^{l}") });
        }
        for (c, m) in self.linears() {
            parts.push(if m == 1 { format!("{c}0") } else { format!("{c}0^{m}") });
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// Formal rational combination of bracket monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BracketExpr {
    terms: BTreeMap<BracketMonomial, Rational>,
}

impl BracketExpr {
    pub fn zero() -> Self {
        BracketExpr::default()
    }

    pub fn monomial(c: Rational, b: BracketMonomial) -> Self {
        let mut out = BracketExpr::zero();
        out.add_term(c, b);
        out
    }

    /// `[a,b]` with the sign convention applied.
    pub fn bracket(a: Letter, b: Letter) -> Result<Self> {
        let (s, m) = BracketMonomial::bracket_power(a, b, 1)?;
        Ok(BracketExpr::monomial(integer(s as i64), m))
    }

    pub fn linear(c: Letter, m: u32) -> Self {
        BracketExpr::monomial(Rational::one(), BracketMonomial::linear(c, m))
    }

    pub fn add_term(&mut self, c: Rational, b: BracketMonomial) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(b.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&b);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&BracketMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, b: &BracketMonomial) -> Rational {
        self.terms.get(b).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &BracketExpr) -> BracketExpr {
        let mut out = self.clone();
        for (b, c) in other.terms() {
            out.add_term(c.clone(), b.clone());
        }
        out
    }

    pub fn scale(&self, k: &Rational) -> BracketExpr {
        let mut out = BracketExpr::zero();
        for (b, c) in self.terms() {
            out.add_term(c * k, b.clone());
        }
        out
    }

    pub fn mul(&self, other: &BracketExpr) -> BracketExpr {
        let mut out = BracketExpr::zero();
        for (b, c) in self.terms() {
            for (b2, c2) in other.terms() {
                out.add_term(c * c2, b.mul(b2));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> BracketExpr {
        (0..n).fold(BracketExpr::monomial(Rational::one(), BracketMonomial::one()), |acc, _| acc.mul(self))
    }

    pub fn expand(&self) -> Polynomial {
        self.terms().map(|(b, c)| b.expand().scale(c)).sum()
    }

    pub fn support(&self) -> BTreeSet<Letter> {
        self.terms.keys().flat_map(BracketMonomial::support).collect()
    }

    /// Common weight vector of the terms.
    pub fn weights(&self) -> Result<BTreeMap<Letter, u32>> {
        let mut it = self.terms.keys().map(BracketMonomial::weights);
        let first = it.next().ok_or(Error::ZeroPolynomial("weight"))?;
        if it.all(|w| w == first) {
            Ok(first)
        } else {
            Err(Error::NotIsobaric)
        }
    }

    /// Common order of the terms.
    pub fn order(&self) -> Result<u32> {
        let mut it = self.terms.keys().map(BracketMonomial::order);
        let first = it.next().ok_or(Error::ZeroPolynomial("order"))?;
        if it.all(|o| o == first) {
            Ok(first)
        } else {
            Err(Error::NotIsobaric)
        }
    }

    pub fn permute(&self, f: impl Fn(Letter) -> Letter) -> BracketExpr {
        let mut out = BracketExpr::zero();
        for (b, c) in self.terms() {
            let (s, b2) = b.permute(&f);
            out.add_term(c * integer(s as i64), b2);
        }
        out
    }
}

impl fmt::Display for BracketExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (b, c)) in self.terms().rev().enumerate() {
            match (k, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if b.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{b}")?;
            } else {
                write!(f, "{a}*{b}")?;
            }
        }
        Ok(())
    }
}

/// One class of the support under `a ~ b iff wt_a = wt_b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportClass {
    pub weight: u32,
    pub letters: Vec<Letter>,
}

/// Classes ordered by weight.
pub fn support_classes(p: &Polynomial) -> Result<Vec<SupportClass>> {
    let sl2::Weight::Symbolic(w) = sl2::weight_of(p)? else {
        return Err(Error::KindMismatch("support classes need a symbolic polynomial".into()));
    };
    Ok(classes_of(&w))
}

pub(crate) fn classes_of(w: &BTreeMap<Letter, u32>) -> Vec<SupportClass> {
    let mut by_weight: BTreeMap<u32, Vec<Letter>> = BTreeMap::new();
    for (&l, &n) in w {
        by_weight.entry(n).or_default().push(l);
    }
    by_weight.into_iter().map(|(weight, letters)| SupportClass { weight, letters }).collect()
}

/// Every bracket monomial with the given letter weights and order.
pub fn bracket_monomials_with(weights: &BTreeMap<Letter, u32>, order: u32) -> Vec<BracketMonomial> {
    let letters: Vec<Letter> = weights.keys().copied().collect();
    let mut pairs = Vec::new();
    for i in 0..letters.len() {
        for j in i + 1..letters.len() {
            pairs.push((letters[i], letters[j]));
        }
    }
    let mut out = Vec::new();
    let mut remaining = weights.clone();
    let mut chosen = Vec::new();
    enumerate(&pairs, 0, &mut remaining, &mut chosen, order, &mut out);
    out
}

fn enumerate(
    pairs: &[(Letter, Letter)],
    k: usize,
    remaining: &mut BTreeMap<Letter, u32>,
    chosen: &mut Vec<((Letter, Letter), u32)>,
    order: u32,
    out: &mut Vec<BracketMonomial>,
) {
    if k == pairs.len() {
        if remaining.values().sum::<u32>() == order {
            out.push(BracketMonomial::from_parts(chosen.iter().copied(), remaining.iter().map(|(&l, &m)| (l, m))));
        }
        return;
    }
    let (a, b) = pairs[k];
    let max = remaining[&a].min(remaining[&b]);
    for l in 0..=max {
        *remaining.get_mut(&a).unwrap() -= l;
        *remaining.get_mut(&b).unwrap() -= l;
        if l > 0 {
            chosen.push(((a, b), l));
        }
        enumerate(pairs, k + 1, remaining, chosen, order, out);
        if l > 0 {
            chosen.pop();
        }
        *remaining.get_mut(&a).unwrap() += l;
        *remaining.get_mut(&b).unwrap() += l;
    }
}

/// A bracket combination expanding to `p`, found by an exact linear solve
/// over all bracket monomials of the weight and order of `p`.
pub fn bracket_representation(p: &Polynomial) -> Result<BracketExpr> {
    if p.is_zero() {
        return Ok(BracketExpr::zero());
    }
    let weights = match sl2::weight_of(p)? {
        sl2::Weight::Symbolic(w) => w,
        sl2::Weight::Isobaric(_) => {
            return Err(Error::KindMismatch("bracket representation needs a symbolic polynomial".into()))
        }
    };
    let e = sl2::e_eigenvalue(p)?;
    if e < 0 {
        return Err(Error::NoSolution("negative weight".into()));
    }
    let candidates = bracket_monomials_with(&weights, e as u32);
    let basis: Vec<Polynomial> = candidates.par_iter().map(BracketMonomial::expand).collect();
    let coeffs = linalg::express(&basis, p)
        .ok_or_else(|| Error::NoSolution("not in the span of the bracket monomials".into()))?;
    let mut out = BracketExpr::zero();
    for (b, c) in candidates.into_iter().zip(coeffs) {
        out.add_term(c, b);
    }
    Ok(out)
}

/// A factor of a syzygy term, kept with its written orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    Bracket(Letter, Letter),
    Linear(Letter),
}

/// A bracket relation that holds identically after expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Syzygy {
    pub name: &'static str,
    pub terms: Vec<(Rational, Vec<Factor>)>,
}

impl Syzygy {
    pub fn expand(&self) -> Polynomial {
        self.terms
            .iter()
            .map(|(c, factors)| {
                let p: Polynomial = factors
                    .iter()
                    .map(|f| match *f {
                        Factor::Bracket(a, b) => raw_bracket(a, b),
                        Factor::Linear(a) => Polynomial::var(a.var(0)),
                    })
                    .product();
                p.scale(c)
            })
            .sum()
    }
}

impl fmt::Display for Syzygy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|(c, factors)| {
                let body: Vec<String> = factors
                    .iter()
                    .map(|x| match x {
                        Factor::Bracket(a, b) => format!("[{a},{b}]"),
                        Factor::Linear(a) => format!("{a}0"),
                    })
                    .collect();
                if c.is_one() {
                    body.join("*")
                } else {
                    format!("{c}*{}", body.join("*"))
                }
            })
            .collect();
        write!(f, "{} = 0", terms.join(" + "))
    }
}

/// Antisymmetry, the three-term relation with linear factors, and the
/// Plücker relation on four distinct letters.
pub fn syzygy_instances(letters: [Letter; 4]) -> Result<Vec<Syzygy>> {
    for (i, &l) in letters.iter().enumerate() {
        check_symbol(l)?;
        if letters[..i].contains(&l) {
            return Err(Error::RepeatedLetter(l.name()));
        }
    }
    let [a, b, c, d] = letters;
    let one = Rational::one;
    use Factor::{Bracket as B, Linear as L};
    Ok(vec![
        Syzygy { name: "antisymmetry", terms: vec![(one(), vec![B(a, b)]), (one(), vec![B(b, a)])] },
        Syzygy {
            name: "three-term",
            terms: vec![
                (one(), vec![L(c), B(a, b)]),
                (one(), vec![L(b), B(c, a)]),
                (one(), vec![L(a), B(b, c)]),
            ],
        },
        Syzygy {
            name: "pluecker",
            terms: vec![
                (one(), vec![B(a, b), B(c, d)]),
                (one(), vec![B(c, a), B(b, d)]),
                (one(), vec![B(b, c), B(a, d)]),
            ],
        },
    ])
}
