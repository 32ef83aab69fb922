//! Shared fixtures and random generators for the integration tests.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use weitzenbock::gordan::{kernel_generators, SearchBounds};
use weitzenbock::poly::integer;
use weitzenbock::symbolic::{BracketExpr, BracketMonomial};
use weitzenbock::transfer::LetterAssignment;
use weitzenbock::{Letter, LetterContext, Monomial, Polynomial};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Seed for randomized suites; `WEITZ_SEED` overrides it.
pub fn seed() -> u64 {
    std::env::var("WEITZ_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED)
}

pub fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed());
    r.set_stream(stream);
    r
}

pub fn ctx(sig: &[u16]) -> LetterContext {
    LetterContext::roman(sig).unwrap()
}

pub fn p(text: &str, ctx: &LetterContext) -> Polynomial {
    Polynomial::parse(text, ctx).unwrap()
}

pub fn b(text: &str) -> BracketExpr {
    BracketExpr::parse(text).unwrap()
}

pub fn bm(text: &str) -> BracketMonomial {
    let e = b(text);
    assert_eq!(e.len(), 1, "{text} is not a single bracket monomial");
    let m = e.terms().next().unwrap().0.clone();
    m
}

pub fn assign(text: &str, ctx: &LetterContext) -> LetterAssignment {
    LetterAssignment::parse(text, ctx).unwrap()
}

pub fn symbols(n: usize) -> Vec<Letter> {
    LetterContext::symbolic(n).unwrap().symbols().to_vec()
}

/// Determinant by cofactor expansion along the first row.
pub fn det(m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Polynomial::zero();
    for j in 0..n {
        let minor: Vec<Vec<Polynomial>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = &m[0][j] * &det(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Random polynomial over the letters of `ctx`: `terms` monomials of degree
/// at most `max_degree`, integer coefficients in `-5..=5`.
pub fn random_poly(ctx: &LetterContext, rng: &mut impl Rng, terms: usize, max_degree: u32) -> Polynomial {
    let vars: Vec<_> = ctx.letters().flat_map(|l| l.vars()).collect();
    Polynomial::from_terms((0..terms).map(|_| {
        let deg = rng.gen_range(0..=max_degree);
        let m = Monomial::from_pairs((0..deg).map(|_| (vars[rng.gen_range(0..vars.len())], 1)));
        (m, integer(rng.gen_range(-5..=5)))
    }))
}

/// Random polynomial homogeneous of degree `k` in the letter `x`, times
/// random factors in the other letters.
pub fn random_homogeneous_in(ctx: &LetterContext, x: Letter, k: u32, rng: &mut impl Rng) -> Polynomial {
    let others: Vec<_> = ctx.letters().filter(|&l| l != x).flat_map(|l| l.vars()).collect();
    let xs: Vec<_> = x.vars().collect();
    Polynomial::from_terms((0..4).map(|_| {
        let mut pairs: Vec<_> = (0..k).map(|_| (xs[rng.gen_range(0..xs.len())], 1)).collect();
        if !others.is_empty() {
            for _ in 0..rng.gen_range(0..=2) {
                pairs.push((others[rng.gen_range(0..others.len())], 1));
            }
        }
        (Monomial::from_pairs(pairs), integer(rng.gen_range(-4..=4)))
    }))
}

pub fn random_context(rng: &mut impl Rng) -> LetterContext {
    let n = rng.gen_range(1..=3);
    let sig: Vec<u16> = (0..n).map(|_| rng.gen_range(1..=4)).collect();
    ctx(&sig)
}

/// Random bracket monomial on the first `n` symbol letters.
pub fn random_bracket_monomial(n: usize, rng: &mut impl Rng, max_brackets: u32, max_linear: u32) -> BracketMonomial {
    let s = symbols(n);
    let mut out = BracketMonomial::one();
    for _ in 0..rng.gen_range(0..=max_brackets) {
        let mut pair = s.clone();
        pair.shuffle(rng);
        let (_, m) = BracketMonomial::bracket_power(pair[0], pair[1], 1).unwrap();
        out = out.mul(&m);
    }
    for &l in &s {
        out = out.mul(&BracketMonomial::linear(l, rng.gen_range(0..=max_linear)));
    }
    out
}

/// Random semi-invariants of a roman context: products of kernel generators.
pub struct SemiInvariantPool {
    pub ctx: LetterContext,
    pub gens: Vec<Polynomial>,
}

impl SemiInvariantPool {
    pub fn new(sig: &[u16], degree: u32) -> Self {
        let c = ctx(sig);
        let set = kernel_generators(&c, &SearchBounds::degree(degree)).unwrap();
        SemiInvariantPool { ctx: c, gens: set.polys() }
    }

    /// Product of `factors` random generators with a random scalar.
    pub fn sample(&self, rng: &mut impl Rng, factors: usize) -> Polynomial {
        let mut acc = Polynomial::constant(integer(rng.gen_range(1..=3)));
        for _ in 0..factors {
            acc = &acc * self.gens.choose(rng).unwrap();
        }
        acc
    }
}
