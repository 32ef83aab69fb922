//! Convolutions of bracket expressions and semi-transvectants of semi-invariants.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::context::Letter;
use crate::error::{Error, Result};
use crate::poly::{binomial, factorial, falling_factorial, integer, Polynomial, Rational};
use crate::sl2::{self, order_of, raise};
use crate::symbolic::{bracket, BracketExpr, BracketMonomial};

/// `Conv_{a,b}` on bracket expressions: `c * m_a m_b * [a,b] * P` with one
/// `a0` and one `b0` removed. Brackets are constants for the operator.
pub fn convolve(expr: &BracketExpr, a: Letter, b: Letter) -> Result<BracketExpr> {
    let (sign, br) = BracketMonomial::bracket_power(a, b, 1)?;
    let mut out = BracketExpr::zero();
    for (m, c) in expr.terms() {
        if let Some((k, rest)) = convolve_monomial(m, a, b) {
            out.add_term(c * integer(sign as i64 * k as i64), rest.mul(&br));
        }
    }
    Ok(out)
}

/// `(m_a m_b, P / (a0 b0))`, or `None` if either linear factor is missing.
fn convolve_monomial(m: &BracketMonomial, a: Letter, b: Letter) -> Option<(u32, BracketMonomial)> {
    let (ma, mb) = (m.linear_exponent(a), m.linear_exponent(b));
    if ma == 0 || mb == 0 {
        return None;
    }
    let linears = m.linears().map(|(c, e)| (c, if c == a || c == b { e - 1 } else { e }));
    Some((ma * mb, BracketMonomial::from_parts(m.brackets(), linears)))
}

/// The operator `[a,b] * d^2/(da0 db0)` applied literally to an expanded polynomial.
pub fn convolve_expanded(p: &Polynomial, a: Letter, b: Letter) -> Result<Polynomial> {
    let br = bracket(a, b)?;
    Ok(&br * &p.partial(a.var(0)).partial(b.var(0)))
}

/// Every bracket monomial reachable from `b` by at most `depth` convolutions,
/// `b` itself included, up to scalar.
pub fn all_convolutions(b: &BracketMonomial, depth: usize) -> Vec<BracketMonomial> {
    let mut seen: BTreeSet<BracketMonomial> = BTreeSet::from([b.clone()]);
    let mut frontier = vec![b.clone()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for m in &frontier {
            let lin: Vec<Letter> = m.linears().map(|(c, _)| c).collect();
            for (i, &x) in lin.iter().enumerate() {
                for &y in &lin[i + 1..] {
                    let (_, rest) = convolve_monomial(m, x, y).unwrap();
                    let (_, br) = BracketMonomial::bracket_power(x, y, 1).unwrap();
                    let t = rest.mul(&br);
                    if seen.insert(t.clone()) {
                        next.push(t);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    seen.into_iter().collect()
}

/// `[f,g]^r = sum_i (-1)^i C(r,i) D*^i(f)/[p]_i * D*^(r-i)(g)/[q]_(r-i)`
/// with `p, q` the orders of `f, g`.
pub fn semi_transvectant(f: &Polynomial, g: &Polynomial, r: u32) -> Result<Polynomial> {
    if !sl2::is_semi_invariant(f) || !sl2::is_semi_invariant(g) {
        return Err(Error::NotSemiInvariant);
    }
    if f.is_zero() || g.is_zero() {
        return Ok(Polynomial::zero());
    }
    let (p, q) = (order_of(f)?, order_of(g)?);
    if r > p.min(q) {
        return Err(Error::TransvectantRange { r, max: p.min(q) });
    }
    Ok(transvectant_with_orders(f, g, r, p, q))
}

/// The transvectant formula with the orders supplied by the caller.
pub(crate) fn transvectant_with_orders(f: &Polynomial, g: &Polynomial, r: u32, p: u32, q: u32) -> Polynomial {
    let mut rf = vec![f.clone()];
    let mut rg = vec![g.clone()];
    for _ in 0..r {
        rf.push(raise(rf.last().unwrap()));
        rg.push(raise(rg.last().unwrap()));
    }
    let mut acc = Polynomial::zero();
    for i in 0..=r {
        let mut c = binomial(r, i) / (falling_factorial(p, i) * falling_factorial(q, r - i));
        if i % 2 == 1 {
            c = -c;
        }
        acc += (&rf[i as usize] * &rg[(r - i) as usize]).scale(&c);
    }
    acc
}

pub fn semi_jacobian(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    semi_transvectant(f, g, 1)
}

/// `Hes(f) = [f,f]^2`.
pub fn semi_hessian(f: &Polynomial) -> Result<Polynomial> {
    if !sl2::is_semi_invariant(f) {
        return Err(Error::NotSemiInvariant);
    }
    let order = order_of(f)?;
    if order < 2 {
        return Err(Error::OrderTooSmall { order, needed: 2 });
    }
    semi_transvectant(f, f, 2)
}

/// A `k`-fold contraction with its share of `[Phi,Psi]^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contraction {
    /// The oriented contraction `prod [a,b]^n_ab * (remaining linear factors)`.
    pub expr: BracketExpr,
    /// Fraction of the slot pairings of `Phi` against `Psi` that give `expr`.
    pub weight: Rational,
}

/// All `k`-fold contractions of disjoint `phi` and `psi`: `k` linear factors
/// `a0` of `phi` are paired with `k` linear factors `b0` of `psi` and each
/// pair is replaced by `[a,b]`.
pub fn k_fold_contractions(phi: &BracketMonomial, psi: &BracketMonomial, k: u32) -> Result<Vec<BracketExpr>> {
    Ok(contraction_weights(phi, psi, k)?.into_iter().map(|c| c.expr).collect())
}

/// The contractions with the classical weights; they sum to 1 and
/// `[Phi,Psi]^k = sum weight * expr`.
pub fn contraction_weights(phi: &BracketMonomial, psi: &BracketMonomial, k: u32) -> Result<Vec<Contraction>> {
    if !phi.support().is_disjoint(&psi.support()) {
        return Err(Error::OverlappingSupports);
    }
    let (p, q) = (phi.order(), psi.order());
    if k > p.min(q) {
        return Err(Error::TransvectantRange { r: k, max: p.min(q) });
    }
    let left: Vec<(Letter, u32)> = phi.linears().collect();
    let right: Vec<(Letter, u32)> = psi.linears().collect();
    let cells: Vec<(usize, usize)> =
        (0..left.len()).flat_map(|i| (0..right.len()).map(move |j| (i, j))).collect();
    let total = binomial(p, k) * binomial(q, k) * factorial(k);
    let mut out: BTreeMap<BracketMonomial, (i32, Rational)> = BTreeMap::new();
    let mut counts = vec![0u32; cells.len()];
    let mut rows = vec![0u32; left.len()];
    let mut cols = vec![0u32; right.len()];
    fill(&cells, 0, k, &left, &right, &mut counts, &mut rows, &mut cols, &mut |counts, rows, cols| {
        let mut ways = Rational::from_integer(1.into());
        let mut sign = 1;
        let mut t = phi.mul(psi);
        let mut brackets = BracketMonomial::one();
        for (c, &n) in cells.iter().zip(counts) {
            if n > 0 {
                let (s, b) = BracketMonomial::bracket_power(left[c.0].0, right[c.1].0, n).unwrap();
                sign *= s;
                brackets = brackets.mul(&b);
                ways /= factorial(n);
            }
        }
        for (i, &(_, m)) in left.iter().enumerate() {
            ways *= falling_factorial(m, rows[i]);
        }
        for (j, &(_, m)) in right.iter().enumerate() {
            ways *= falling_factorial(m, cols[j]);
        }
        let linears: Vec<(Letter, u32)> = left
            .iter()
            .zip(rows.iter())
            .chain(right.iter().zip(cols.iter()))
            .map(|(&(l, m), &used)| (l, m - used))
            .collect();
        t = BracketMonomial::from_parts(t.brackets().chain(brackets.brackets()), linears);
        let slot = out.entry(t).or_insert((sign, Rational::zero()));
        slot.1 += ways / &total;
    });
    Ok(out
        .into_iter()
        .map(|(t, (sign, weight))| Contraction { expr: BracketExpr::monomial(integer(sign as i64), t), weight })
        .collect())
}

type Emit<'a> = dyn FnMut(&[u32], &[u32], &[u32]) + 'a;

#[allow(clippy::too_many_arguments)]
fn fill(
    cells: &[(usize, usize)],
    at: usize,
    left_to_place: u32,
    left: &[(Letter, u32)],
    right: &[(Letter, u32)],
    counts: &mut Vec<u32>,
    rows: &mut Vec<u32>,
    cols: &mut Vec<u32>,
    emit: &mut Emit<'_>,
) {
    if left_to_place == 0 {
        emit(counts, rows, cols);
        return;
    }
    if at == cells.len() {
        return;
    }
    let (i, j) = cells[at];
    let room = (left[i].1 - rows[i]).min(right[j].1 - cols[j]).min(left_to_place);
    for n in (0..=room).rev() {
        counts[at] = n;
        rows[i] += n;
        cols[j] += n;
        fill(cells, at + 1, left_to_place - n, left, right, counts, rows, cols, emit);
        rows[i] -= n;
        cols[j] -= n;
    }
    counts[at] = 0;
}

/// Coefficients `q_T` with `[Phi,Psi]^k = sum q_T T` over the `k`-fold
/// contractions `T`, found by an exact linear solve.
pub fn contraction_decomposition(
    phi: &BracketMonomial,
    psi: &BracketMonomial,
    k: u32,
) -> Result<Vec<(BracketExpr, Rational)>> {
    let ts = k_fold_contractions(phi, psi, k)?;
    let target = semi_transvectant(&phi.expand(), &psi.expand(), k)?;
    let basis: Vec<Polynomial> = ts.iter().map(BracketExpr::expand).collect();
    let q = crate::linalg::express(&basis, &target)
        .ok_or_else(|| Error::NoSolution("transvectant outside the span of the contractions".into()))?;
    Ok(ts.into_iter().zip(q).collect())
}
