//! Maps between symbol letters and roman letters.
//!
//! `lambda_map` sends `a0^(w-i) a1^i` to `i! x_i` where `x` is the roman
//! letter assigned to `a` (of size `w`); `lambda_tilde` goes back on
//! multilinear input via `x_k -> a0^(d-k) a1^k / k!`. Polarization and
//! restitution move between a polynomial and its multilinear form.

use std::collections::BTreeMap;
use std::fmt;

use crate::context::{Letter, LetterContext, Variable};
use crate::error::{Error, Result};
use crate::poly::{factorial, Monomial, Polynomial, Rational};
use crate::sl2;
use crate::symbolic::{self, BracketExpr};

/// Which roman letter each symbol letter stands for.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LetterAssignment {
    map: BTreeMap<Letter, Letter>,
}

impl LetterAssignment {
    pub fn new(pairs: impl IntoIterator<Item = (Letter, Letter)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (s, r) in pairs {
            if !s.is_symbol() || !r.is_roman() {
                return Err(Error::Assignment(format!("`{s}:{r}` must map a symbol to a roman letter")));
            }
            if map.insert(s, r).is_some_and(|old| old != r) {
                return Err(Error::Assignment(format!("`{s}` assigned twice")));
            }
        }
        Ok(LetterAssignment { map })
    }

    /// Parses `"a:x,b:y,c:y"`; roman letters are looked up in `ctx`.
    pub fn parse(text: &str, ctx: &LetterContext) -> Result<Self> {
        let mut pairs = Vec::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (s, r) = item
                .split_once(':')
                .ok_or_else(|| Error::Assignment(format!("expected `symbol:letter`, got `{item}`")))?;
            let (s, r) = (s.trim(), r.trim());
            let mut chars = s.chars();
            let sym = match (chars.next(), chars.next()) {
                (Some(c), None) => crate::context::symbol_ordinal_of(c).map(Letter::symbol),
                _ => None,
            }
            .ok_or_else(|| Error::UnknownLetter(s.to_string()))?;
            let rom = ctx
                .romans()
                .iter()
                .copied()
                .find(|l| l.name() == r)
                .ok_or_else(|| Error::UnknownLetter(r.to_string()))?;
            pairs.push((sym, rom));
        }
        LetterAssignment::new(pairs)
    }

    pub fn get(&self, symbol: Letter) -> Option<Letter> {
        self.map.get(&symbol).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Letter, Letter)> + '_ {
        self.map.iter().map(|(&s, &r)| (s, r))
    }

    pub fn romans(&self) -> Vec<Letter> {
        let mut out: Vec<Letter> = self.map.values().copied().collect();
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for LetterAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(s, r)| format!("{s}:{r}")).collect();
        f.write_str(&parts.join(","))
    }
}

/// The map `Lambda`. Roman variables already present pass through unchanged.
pub fn lambda_map(p: &Polynomial, assignment: &LetterAssignment) -> Result<Polynomial> {
    p.map_monomials(|m| {
        let mut coeff = Rational::from_integer(1.into());
        let mut pairs: Vec<(Variable, u32)> = Vec::new();
        let mut symbols: BTreeMap<Letter, (u32, u32)> = BTreeMap::new();
        for (v, e) in m.iter() {
            let l = v.letter();
            if l.is_symbol() {
                let slot = symbols.entry(l).or_insert((0, 0));
                slot.0 += e;
                if v.index() == 1 {
                    slot.1 = e;
                }
            } else {
                pairs.push((v, e));
            }
        }
        for (s, (deg, i)) in symbols {
            let x = assignment
                .get(s)
                .ok_or_else(|| Error::Assignment(format!("symbol `{s}` has no roman letter")))?;
            if deg != x.size() as u32 {
                return Err(Error::WeightMismatch {
                    symbol: s.name(),
                    weight: deg,
                    roman: x.name(),
                    size: x.size() as u32,
                });
            }
            coeff *= factorial(i);
            pairs.push((x.var(i as u16), 1));
        }
        Ok(Polynomial::term(coeff, Monomial::from_pairs(pairs)))
    })
}

/// The map `Lambda~` on multilinear roman input: symbol letters `a, b, c, ...`
/// are allocated to the roman letters of `f` in letter order.
pub fn lambda_tilde(f: &Polynomial) -> Result<(Polynomial, LetterAssignment)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("lambda-tilde"));
    }
    let md = f.multidegree().map_err(|_| Error::NotMultilinear)?;
    if md.keys().any(|l| !l.is_roman()) || md.values().any(|&k| k != 1) {
        return Err(Error::NotMultilinear);
    }
    let symbol_of: BTreeMap<Letter, Letter> =
        md.keys().enumerate().map(|(k, &r)| (r, Letter::symbol(k as u16))).collect();
    let image = f.map_monomials(|m| {
        let mut pairs = Vec::new();
        let mut coeff = Rational::from_integer(1.into());
        for (v, _) in m.iter() {
            let s = symbol_of[&v.letter()];
            let (d, k) = (v.letter().size() as u32, v.index() as u32);
            pairs.push((s.var(0), d - k));
            pairs.push((s.var(1), k));
            coeff /= factorial(k);
        }
        Ok(Polynomial::term(coeff, Monomial::from_pairs(pairs.into_iter().filter(|&(_, e)| e > 0))))
    })?;
    let assignment = LetterAssignment::new(symbol_of.into_iter().map(|(r, s)| (s, r)))?;
    Ok((image, assignment))
}

/// `sum_i y_i * df/dx_i`.
pub fn polarize(f: &Polynomial, x: Letter, y: Letter) -> Result<Polynomial> {
    check_pair(x, y)?;
    if f.letters().contains(&y) {
        return Err(Error::LetterInUse(y.name()));
    }
    Ok(x.vars().map(|xi| &Polynomial::var(y.var(xi.index())) * &f.partial(xi)).sum())
}

/// Substitutes `y_i := x_i`.
pub fn restitute(f: &Polynomial, y: Letter, x: Letter) -> Result<Polynomial> {
    check_pair(x, y)?;
    Ok(f.map_vars(|v| if v.letter() == y { x.var(v.index()) } else { v }))
}

fn check_pair(x: Letter, y: Letter) -> Result<()> {
    if x.kind() != y.kind() {
        return Err(Error::KindMismatch(format!("`{x}` and `{y}` are of different kinds")));
    }
    if x.size() != y.size() {
        return Err(Error::SizeMismatch {
            x: x.name(),
            x_size: x.size() as u32,
            y: y.name(),
            y_size: y.size() as u32,
        });
    }
    Ok(())
}

/// A multilinear polarization of a multihomogeneous polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polarization {
    pub poly: Polynomial,
    pub context: LetterContext,
    /// Fresh letter to the letter it copies.
    pub origin: BTreeMap<Letter, Letter>,
    /// `prod m_x!`: restituting every copy gives `factor * f`.
    pub factor: Rational,
}

/// Polarizes each roman letter of degree `m > 1` into `m` distinct copies.
pub fn full_polarization(f: &Polynomial, ctx: &LetterContext) -> Result<Polarization> {
    let md = f.multidegree()?;
    let mut poly = f.clone();
    let mut context = ctx.clone();
    for l in f.letters() {
        if !context.contains(l) {
            context = context.union(&LetterContext::new(Vec::new(), vec![l])?)?;
        }
    }
    let mut origin = BTreeMap::new();
    let mut factor = Rational::from_integer(1.into());
    for (&x, &m) in &md {
        if !x.is_roman() {
            return Err(Error::KindMismatch(format!("`{x}` is not a roman letter")));
        }
        factor *= factorial(m);
        for _ in 1..m {
            let (next, y) = context.with_fresh_roman(x.size());
            context = next;
            poly = polarize(&poly, x, y)?;
            origin.insert(y, x);
        }
    }
    Ok(Polarization { poly, context, origin, factor })
}

/// A bracket expression `expr` with `lambda_map(expr.expand(), assignment) = f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Symbolization {
    pub expr: BracketExpr,
    pub assignment: LetterAssignment,
}

/// Full polarization, `Lambda~`, then a bracket representation, rescaled so
/// that `Lambda` gives back exactly `f`.
pub fn symbolize(f: &Polynomial, ctx: &LetterContext) -> Result<Symbolization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("symbolize"));
    }
    if !sl2::is_semi_invariant(f) {
        return Err(Error::NotSemiInvariant);
    }
    let pol = full_polarization(f, ctx)?;
    let (image, to_copy) = lambda_tilde(&pol.poly)?;
    let expr = symbolic::bracket_representation(&image)?;
    let assignment = LetterAssignment::new(
        to_copy.iter().map(|(s, r)| (s, pol.origin.get(&r).copied().unwrap_or(r))),
    )?;
    Ok(Symbolization { expr: expr.scale(&(Rational::from_integer(1.into()) / pol.factor)), assignment })
}
