//! Generator search for the kernel of `D_d`.
//!
//! Starting from `{x0 | x roman}`, each step adds the transvectants
//! `(x0, F)^i` that are not already in the subalgebra generated so far,
//! `F` running over monomials in the current generators. A step that adds
//! nothing is a fixed point within the search bounds.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::context::{Letter, LetterContext};
use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{Multidegree, Polynomial, Rational};
use crate::sl2;
use crate::transvect::transvectant_with_orders;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    /// Largest total degree of a candidate.
    pub max_total_degree: u32,
    /// Largest transvection index `i`; `None` allows every admissible index.
    pub max_transvection_order: Option<u32>,
}

impl SearchBounds {
    pub fn degree(max_total_degree: u32) -> Self {
        SearchBounds { max_total_degree: max_total_degree.max(1), max_transvection_order: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub poly: Polynomial,
    pub multidegree: Multidegree,
    pub order: u32,
    /// How the generator arose, e.g. `(x0, g1^2)^3`.
    pub provenance: String,
}

impl Generator {
    /// Normalizes `poly` and records its gradings.
    pub fn new(name: impl Into<String>, poly: &Polynomial, provenance: impl Into<String>) -> Result<Self> {
        let (poly, _) = poly.primitive();
        let multidegree = poly.multidegree()?;
        let order = sl2::order_of(&poly)?;
        Ok(Generator { name: name.into(), poly, multidegree, order, provenance: provenance.into() })
    }

    pub fn degree(&self) -> u32 {
        self.multidegree.values().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    pub generators: Vec<Generator>,
    pub context: LetterContext,
    pub bounds: SearchBounds,
    pub complete_within_bounds: bool,
}

fn check_roman(ctx: &LetterContext) -> Result<()> {
    if !ctx.symbols().is_empty() {
        return Err(Error::InvalidContext("the generator search needs a roman-only context".into()));
    }
    if ctx.romans().is_empty() {
        return Err(Error::InvalidContext("empty context".into()));
    }
    Ok(())
}

/// `{x0 | x roman}`.
pub fn initial_set(ctx: &LetterContext, bounds: &SearchBounds) -> Result<GeneratorSet> {
    check_roman(ctx)?;
    let generators = ctx
        .romans()
        .iter()
        .map(|&x| {
            let v = x.var(0);
            Generator::new(v.to_string(), &Polynomial::var(v), v.to_string())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GeneratorSet { generators, context: ctx.clone(), bounds: bounds.clone(), complete_within_bounds: false })
}

impl GeneratorSet {
    /// A set built from given polynomials (normalized), e.g. a reference list.
    pub fn from_polys(ctx: &LetterContext, polys: &[Polynomial], bounds: &SearchBounds) -> Result<Self> {
        check_roman(ctx)?;
        let generators = polys
            .iter()
            .enumerate()
            .map(|(k, p)| Generator::new(format!("g{}", k + 1), p, "given"))
            .collect::<Result<Vec<_>>>()?;
        Ok(GeneratorSet { generators, context: ctx.clone(), bounds: bounds.clone(), complete_within_bounds: false })
    }

    pub fn polys(&self) -> Vec<Polynomial> {
        self.generators.iter().map(|g| g.poly.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

/// `sum c * prod g_j^e_j` expressing a polynomial in given generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub terms: Vec<(Rational, Vec<u32>)>,
}

impl Witness {
    pub fn evaluate(&self, gens: &[Polynomial]) -> Polynomial {
        self.terms.iter().map(|(c, e)| product(gens, e).scale(c)).sum()
    }

    pub fn format(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(c, e)| {
                let m = monomial_name(names, e);
                if c.is_one() {
                    m
                } else {
                    format!("({c})*{m}")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

fn monomial_name(names: &[String], e: &[u32]) -> String {
    let parts: Vec<String> = e
        .iter()
        .zip(names)
        .filter(|(&k, _)| k > 0)
        .map(|(&k, n)| if k == 1 { n.clone() } else { format!("{n}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn product(gens: &[Polynomial], e: &[u32]) -> Polynomial {
    gens.iter().zip(e).filter(|(_, &k)| k > 0).map(|(g, &k)| g.pow(k)).product()
}

struct Grading {
    letters: Vec<Letter>,
    degrees: Vec<Vec<u32>>,
    weights: Vec<i64>,
}

impl Grading {
    fn of(gens: &[Polynomial], extra: &[Letter]) -> Result<Self> {
        let mut letters: Vec<Letter> = gens.iter().flat_map(|g| g.letters()).chain(extra.iter().copied()).collect();
        letters.sort();
        letters.dedup();
        let mut degrees = Vec::new();
        let mut weights = Vec::new();
        for g in gens {
            let md = g.multidegree()?;
            degrees.push(letters.iter().map(|l| md.get(l).copied().unwrap_or(0)).collect());
            weights.push(g.isobaric_weight()?);
        }
        Ok(Grading { letters, degrees, weights })
    }

    /// Exponent vectors with the given per-letter degrees and weight.
    fn monomials(&self, target: &[u32], weight: i64) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut e = vec![0; self.degrees.len()];
        let mut rem = target.to_vec();
        self.walk(0, &mut rem, &mut e, weight, &mut out);
        out
    }

    fn walk(&self, j: usize, rem: &mut Vec<u32>, e: &mut Vec<u32>, weight: i64, out: &mut Vec<Vec<u32>>) {
        if j == self.degrees.len() {
            if rem.iter().all(|&r| r == 0) {
                let w: i64 = e.iter().zip(&self.weights).map(|(&k, &w)| k as i64 * w).sum();
                if w == weight {
                    out.push(e.clone());
                }
            }
            return;
        }
        let d = &self.degrees[j];
        if d.iter().all(|&k| k == 0) {
            self.walk(j + 1, rem, e, weight, out);
            return;
        }
        let max = rem.iter().zip(d).filter(|(_, &k)| k > 0).map(|(&r, &k)| r / k).min().unwrap();
        for k in 0..=max {
            for (r, &dk) in rem.iter_mut().zip(d) {
                *r -= k * dk;
            }
            e[j] = k;
            self.walk(j + 1, rem, e, weight, out);
            for (r, &dk) in rem.iter_mut().zip(d) {
                *r += k * dk;
            }
        }
        e[j] = 0;
    }
}

/// Decides whether `s` lies in the algebra generated by `gens` by an exact
/// linear solve over the generator monomials of matching multidegree and
/// weight. Returns an expressing combination when it does.
pub fn membership(s: &Polynomial, gens: &[Polynomial]) -> Option<Witness> {
    let mut parts: BTreeMap<(BTreeMap<Letter, u32>, i64), Polynomial> = BTreeMap::new();
    for (m, c) in s.terms() {
        let key = (m.letter_degrees(), m.e_weight());
        *parts.entry(key).or_default() += Polynomial::term(c.clone(), m.clone());
    }
    let grading = Grading::of(gens, &s.letters()).ok()?;
    let mut terms = Vec::new();
    for ((md, w), part) in parts {
        let target: Vec<u32> = grading.letters.iter().map(|l| md.get(l).copied().unwrap_or(0)).collect();
        let exps = grading.monomials(&target, w);
        if exps.is_empty() {
            return None;
        }
        let basis: Vec<Polynomial> = exps.par_iter().map(|e| product(gens, e)).collect();
        let coeffs = linalg::express(&basis, &part)?;
        for (e, c) in exps.into_iter().zip(coeffs) {
            if !c.is_zero() {
                terms.push((c, e));
            }
        }
    }
    Some(Witness { terms })
}

pub fn subalgebra_membership(s: &Polynomial, set: &GeneratorSet) -> Option<Witness> {
    membership(s, &set.polys())
}

/// Every generator of each set lies in the algebra generated by the other.
pub fn verify_generates(candidates: &GeneratorSet, reference: &GeneratorSet) -> bool {
    let (a, b) = (candidates.polys(), reference.polys());
    a.iter().all(|p| membership(p, &b).is_some()) && b.iter().all(|p| membership(p, &a).is_some())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateStatus {
    Added,
    Zero,
    Member,
    /// Skipped: `(x0, G*H)^i` with `i <= ord G`, `H` a factor of least order.
    PrunedReducible,
    /// Skipped: `i` above `max_transvection_order`.
    BeyondBound,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub letter: Letter,
    /// Exponents of `F` over the generators at the start of the step.
    pub exponents: Vec<u32>,
    pub index: u32,
    pub degree: u32,
    pub provenance: String,
    pub status: CandidateStatus,
    /// The transvectant, kept for candidates that were computed.
    pub value: Option<Polynomial>,
}

#[derive(Clone, Debug)]
pub struct StepReport {
    pub candidates: Vec<Candidate>,
    pub added: usize,
}

impl fmt::Display for StepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.candidates {
            writeln!(f, "{:<40} {:?}", c.provenance, c.status)?;
        }
        write!(f, "added {}", self.added)
    }
}

/// Exponent vectors of total degree `1..=max_degree` over `n` generators of
/// the given degrees.
fn monomials_up_to(degrees: &[u32], max_degree: u32) -> Vec<Vec<u32>> {
    fn rec(degrees: &[u32], j: usize, left: u32, e: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if j == degrees.len() {
            if e.iter().any(|&k| k > 0) {
                out.push(e.clone());
            }
            return;
        }
        let d = degrees[j].max(1);
        for k in 0..=left / d {
            e[j] = k;
            rec(degrees, j + 1, left - k * d, e, out);
        }
        e[j] = 0;
    }
    let mut out = Vec::new();
    let mut e = vec![0; degrees.len()];
    rec(degrees, 0, max_degree, &mut e, &mut out);
    out
}

/// `i <= ord F - (least order of a factor)` for `F` with at least two factors.
fn pruned(e: &[u32], orders: &[u32], index: u32) -> bool {
    let factors: u32 = e.iter().sum();
    if factors < 2 {
        return false;
    }
    let ord: u32 = e.iter().zip(orders).map(|(&k, &o)| k * o).sum();
    let least = e.iter().zip(orders).filter(|(&k, _)| k > 0).map(|(_, &o)| o).min().unwrap();
    index <= ord - least
}

/// One step `T -> tau(T)` with a record of every candidate.
pub fn tau_step_report(set: &GeneratorSet) -> Result<(GeneratorSet, StepReport)> {
    check_roman(&set.context)?;
    let gens = set.polys();
    let names: Vec<String> = set.generators.iter().map(|g| g.name.clone()).collect();
    let orders: Vec<u32> = set.generators.iter().map(|g| g.order).collect();
    let degrees: Vec<u32> = set.generators.iter().map(Generator::degree).collect();
    let bound = set.bounds.max_total_degree;

    let mut candidates = Vec::new();
    for e in monomials_up_to(&degrees, bound.saturating_sub(1)) {
        let ord_f: u32 = e.iter().zip(&orders).map(|(&k, &o)| k * o).sum();
        let deg_f: u32 = e.iter().zip(&degrees).map(|(&k, &d)| k * d).sum();
        for &x in set.context.romans() {
            let top = (x.size() as u32).min(ord_f);
            for i in 1..=top {
                let status = if set.bounds.max_transvection_order.is_some_and(|m| i > m) {
                    CandidateStatus::BeyondBound
                } else if pruned(&e, &orders, i) {
                    CandidateStatus::PrunedReducible
                } else {
                    CandidateStatus::Member
                };
                candidates.push(Candidate {
                    letter: x,
                    provenance: format!("({}, {})^{i}", x.var(0), monomial_name(&names, &e)),
                    exponents: e.clone(),
                    index: i,
                    degree: deg_f + 1,
                    status,
                    value: None,
                });
            }
        }
    }
    candidates.sort_by(|a, b| {
        (a.degree, a.letter, a.index, &a.exponents).cmp(&(b.degree, b.letter, b.index, &b.exponents))
    });

    let values: Vec<Option<Polynomial>> = candidates
        .par_iter()
        .map(|c| {
            (c.status == CandidateStatus::Member).then(|| {
                let f = product(&gens, &c.exponents);
                let ord_f: u32 = c.exponents.iter().zip(&orders).map(|(&k, &o)| k * o).sum();
                let x = c.letter.size() as u32;
                transvectant_with_orders(&Polynomial::var(c.letter.var(0)), &f, c.index, x, ord_f)
            })
        })
        .collect();

    let mut out = set.clone();
    let mut current = gens.clone();
    let mut added = 0;
    for (c, v) in candidates.iter_mut().zip(values) {
        let Some(v) = v else { continue };
        if v.is_zero() {
            c.status = CandidateStatus::Zero;
        } else if membership(&v, &current).is_some() {
            c.status = CandidateStatus::Member;
        } else {
            let name = format!("g{}", out.generators.len() + 1);
            let g = Generator::new(name, &v, c.provenance.clone())?;
            current.push(g.poly.clone());
            out.generators.push(g);
            c.status = CandidateStatus::Added;
            added += 1;
        }
        c.value = Some(v);
    }
    let cut = candidates.iter().any(|c| c.status == CandidateStatus::BeyondBound);
    out.complete_within_bounds = added == 0 && !cut;
    Ok((out, StepReport { candidates, added }))
}

pub fn tau_step(set: &GeneratorSet) -> Result<GeneratorSet> {
    Ok(tau_step_report(set)?.0)
}

/// Iterates `tau_step` from `initial_set` until a step adds nothing.
pub fn kernel_generators(ctx: &LetterContext, bounds: &SearchBounds) -> Result<GeneratorSet> {
    let mut set = initial_set(ctx, bounds)?;
    loop {
        let next = tau_step(&set)?;
        if next.generators.len() == set.generators.len() {
            return Ok(next);
        }
        set = next;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub name: String,
    pub poly: String,
    pub multidegree: BTreeMap<String, u32>,
    pub order: u32,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSetJson {
    pub signature: Vec<u16>,
    pub bounds: SearchBounds,
    pub complete_within_bounds: bool,
    pub generators: Vec<GeneratorJson>,
}

impl GeneratorSet {
    pub fn to_json(&self) -> GeneratorSetJson {
        GeneratorSetJson {
            signature: self.context.signature(),
            bounds: self.bounds.clone(),
            complete_within_bounds: self.complete_within_bounds,
            generators: self
                .generators
                .iter()
                .map(|g| GeneratorJson {
                    name: g.name.clone(),
                    poly: g.poly.to_string(),
                    multidegree: g.multidegree.iter().map(|(l, &k)| (l.name(), k)).collect(),
                    order: g.order,
                    provenance: g.provenance.clone(),
                })
                .collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable")
    }

    pub fn from_json(json: &GeneratorSetJson) -> Result<Self> {
        let context = LetterContext::roman(&json.signature)?;
        let generators = json
            .generators
            .iter()
            .map(|g| {
                let poly = Polynomial::parse(&g.poly, &context)?;
                let mut out = Generator::new(g.name.clone(), &poly, g.provenance.clone())?;
                out.poly = poly;
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GeneratorSet {
            generators,
            context,
            bounds: json.bounds.clone(),
            complete_within_bounds: json.complete_within_bounds,
        })
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.generators {
            let md: Vec<String> = g.multidegree.values().map(u32::to_string).collect();
            writeln!(f, "{} = {}    [multidegree ({}), order {}, {}]", g.name, g.poly, md.join(","), g.order, g.provenance)?;
        }
        if self.complete_within_bounds {
            write!(f, "fixed point within degree {}", self.bounds.max_total_degree)
        } else {
            write!(f, "not a fixed point within the bounds")
        }
    }
}
