//! Exact linear solves over the rationals.

use num_traits::{One, Zero};

use crate::poly::{Monomial, Polynomial, Rational};

/// Solves `sum_j x_j columns[j] = target` by row reduction. Returns one
/// solution with every free variable set to zero, or `None` if inconsistent.
pub fn solve(columns: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let rows = target.len();
    let cols = columns.len();
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rational> = columns.iter().map(|c| c[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = Rational::one() / &m[row][col];
        for v in m[row].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r != row && !other[col].is_zero() {
                let k = other[col].clone();
                for (v, pv) in other.iter_mut().zip(&pivot_row) {
                    *v -= &k * pv;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    if m[row..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][cols].clone();
    }
    Some(x)
}

/// Coefficients `c_j` with `sum_j c_j basis[j] = target`, if any.
pub fn express(basis: &[Polynomial], target: &Polynomial) -> Option<Vec<Rational>> {
    let mut monomials: Vec<&Monomial> =
        basis.iter().chain(std::iter::once(target)).flat_map(|p| p.terms().map(|(m, _)| m)).collect();
    monomials.sort();
    monomials.dedup();
    let columns: Vec<Vec<Rational>> =
        basis.iter().map(|p| monomials.iter().map(|m| p.coefficient(m)).collect()).collect();
    let rhs: Vec<Rational> = monomials.iter().map(|m| target.coefficient(m)).collect();
    solve(&columns, &rhs)
}

/// Rank of a family of polynomials viewed as coefficient vectors.
pub fn rank(family: &[Polynomial]) -> usize {
    let mut reduced: Vec<Polynomial> = Vec::new();
    for p in family {
        let mut q = p.clone();
        // Reduce by previous pivots (each pivot's leading monomial is unique).
        while let Some((lm, lc)) = q.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            match reduced.iter().find(|r| r.leading_term().map(|(m, _)| m) == Some(&lm)) {
                Some(r) => {
                    let k = lc / r.coefficient(&lm);
                    q -= r.scale(&k);
                }
                None => break,
            }
        }
        if !q.is_zero() {
            reduced.push(q);
        }
    }
    reduced.len()
}
