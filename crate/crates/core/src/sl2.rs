//! The sl2 triple acting on polynomials: `D` lowers, `D*` raises, `E` weighs.
//!
//! On a letter of size `d` (symbols have `d = 1`):
//! `D(v_i) = v_{i-1}`, `D*(v_i) = (i+1)(d-i) v_{i+1}`, `E(v_i) = (d-2i) v_i`.

use std::collections::BTreeMap;
use std::fmt;

use crate::context::{Letter, Variable};
use crate::error::{Error, Result};
use crate::poly::{integer, Polynomial};

/// The derivation `D`.
pub fn lower(p: &Polynomial) -> Polynomial {
    p.apply_linear_derivation(|v| {
        let i = v.index();
        (i > 0).then(|| (integer(1), v.shifted(i - 1).unwrap()))
    })
}

/// The derivation `D*`.
pub fn raise(p: &Polynomial) -> Polynomial {
    p.apply_linear_derivation(raise_var)
}

fn raise_var(v: Variable) -> Option<(crate::poly::Rational, Variable)> {
    let i = v.index() as i64;
    let d = v.letter().size() as i64;
    (i < d).then(|| (integer((i + 1) * (d - i)), v.shifted(v.index() + 1).unwrap()))
}

/// The derivation `E`; every monomial is an eigenvector.
pub fn weight_op(p: &Polynomial) -> Polynomial {
    Polynomial::from_terms(p.terms().map(|(m, c)| (m.clone(), c * integer(m.e_weight()))))
}

pub fn is_semi_invariant(p: &Polynomial) -> bool {
    lower(p).is_zero()
}

/// Least `k` with `D*^{k+1}(p) = 0`.
pub fn order_of(p: &Polynomial) -> Result<u32> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("order"));
    }
    let guard = p
        .terms()
        .map(|(m, _)| m.iter().map(|(v, e)| e * v.letter().size() as u32).sum::<u32>())
        .max()
        .unwrap_or(0)
        + 1;
    let mut q = p.clone();
    for k in 0..=guard {
        q = raise(&q);
        if q.is_zero() {
            return Ok(k);
        }
    }
    Err(Error::IterationLimit(guard))
}

/// Weights of a polynomial: per symbol letter for purely symbolic input,
/// otherwise the `E`-eigenvalue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Weight {
    Symbolic(BTreeMap<Letter, u32>),
    Isobaric(i64),
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Isobaric(w) => write!(f, "{w}"),
            Weight::Symbolic(map) => {
                let parts: Vec<String> = map.iter().map(|(l, w)| format!("{l}:{w}")).collect();
                write!(f, "({})", parts.join(", "))
            }
        }
    }
}

pub fn weight_of(p: &Polynomial) -> Result<Weight> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("weight"));
    }
    if p.letters().iter().all(|l| l.is_symbol()) {
        let md = p.multidegree().map_err(|_| Error::NotIsobaric)?;
        Ok(Weight::Symbolic(md))
    } else {
        Ok(Weight::Isobaric(p.isobaric_weight()?))
    }
}

/// `E`-eigenvalue, for symbolic and roman inputs alike.
pub fn e_eigenvalue(p: &Polynomial) -> Result<i64> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("weight"));
    }
    let e = weight_op(p);
    let (m, c) = p.leading_term().unwrap();
    let k = e.coefficient(m) / c;
    if e == p.scale(&k) {
        Ok(k.to_integer().try_into().expect("weight fits in i64"))
    } else {
        Err(Error::NotIsobaric)
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
    fn lowering_examples() {
        let d2 = LetterContext::roman(&[2]).unwrap();
        assert!(lower(&p("x1^2 - 2*x0*x2", &d2)).is_zero());
        let d4 = LetterContext::roman(&[4]).unwrap();
        assert!(lower(&p("x2^2 + 2*x0*x4 - 2*x1*x3", &d4)).is_zero());
        let s = LetterContext::symbolic(1).unwrap();
        assert_eq!(lower(&p("a1", &s)), p("a0", &s));
        assert!(lower(&p("a0", &s)).is_zero());
    }

    #[test]
    fn raising_examples() {
        let s = LetterContext::symbolic(1).unwrap();
        assert_eq!(raise(&p("a0", &s)), p("a1", &s));
        assert!(raise(&p("a1", &s)).is_zero());
        let d5 = LetterContext::roman(&[5]).unwrap();
        assert_eq!(raise(&p("x0", &d5)), p("5*x1", &d5));
        assert!(raise(&p("x5", &d5)).is_zero());
    }

    #[test]
    fn weight_examples() {
        let s = LetterContext::symbolic(1).unwrap();
        assert_eq!(weight_op(&p("a0", &s)), p("a0", &s));
        assert_eq!(weight_op(&p("a1", &s)), p("-a1", &s));
        let d4 = LetterContext::roman(&[4]).unwrap();
        assert_eq!(weight_op(&p("x1", &d4)), p("2*x1", &d4));
        let d2 = LetterContext::roman(&[2]).unwrap();
        assert!(weight_op(&p("x1^2 - 2*x0*x2", &d2)).is_zero());
        assert_eq!(weight_of(&p("x0 + x1", &d2)), Err(Error::NotIsobaric));
        assert_eq!(
            weight_of(&p("a0", &s)),
            Ok(Weight::Symbolic([(s.symbols()[0], 1)].into_iter().collect()))
        );
    }

    #[test]
    fn orders() {
        let d3 = LetterContext::roman(&[3]).unwrap();
        assert_eq!(order_of(&p("x0", &d3)), Ok(3));
        assert_eq!(order_of(&p("x1^2 - 2*x0*x2", &d3)), Ok(2));
        let ch = p("8*x0*x2^3 + 9*x3^2*x0^2 + 6*x1^3*x3 - 3*x1^2*x2^2 - 18*x0*x1*x2*x3", &d3);
        assert_eq!(order_of(&ch), Ok(0));
        assert!(is_semi_invariant(&p("3*x3*x0^2 + x1^3 - 3*x0*x1*x2", &d3)));
        assert!(!is_semi_invariant(&p("x1", &d3)));
        assert!(is_semi_invariant(&p("7", &d3)));
        assert!(order_of(&Polynomial::zero()).is_err());
    }

    #[test]
    fn commutators_on_variables() {
        let ctx = LetterContext::roman(&[1, 2, 5]).unwrap();
        for l in ctx.letters() {
            for v in l.vars() {
                let f = Polynomial::var(v);
                let ed = weight_op(&lower(&f)) - lower(&weight_op(&f));
                assert_eq!(ed, lower(&f).scale(&integer(2)));
                let ef = weight_op(&raise(&f)) - raise(&weight_op(&f));
                assert_eq!(ef, raise(&f).scale(&integer(-2)));
                assert_eq!(lower(&raise(&f)) - raise(&lower(&f)), weight_op(&f));
            }
        }
    }
}
