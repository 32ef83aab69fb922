//! Lossless JSON form of polynomials: rationals travel as `"num/den"` strings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{parse_rational, rational_to_fraction, Monomial, Polynomial};
use crate::context::LetterContext;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    /// Variable name to exponent, e.g. `{"x1": 2}`.
    pub monomial: BTreeMap<String, u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub terms: Vec<TermJson>,
}

impl Polynomial {
    pub fn to_json(&self) -> PolynomialJson {
        PolynomialJson {
            terms: self
                .terms()
                .rev()
                .map(|(m, c)| TermJson {
                    coeff: rational_to_fraction(c),
                    monomial: m.iter().map(|(v, e)| (v.to_string(), e)).collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &PolynomialJson, ctx: &LetterContext) -> Result<Polynomial> {
        let mut terms = Vec::with_capacity(json.terms.len());
        for t in &json.terms {
            let c = parse_rational(&t.coeff)
                .ok_or_else(|| Error::Json(format!("bad coefficient `{}`", t.coeff)))?;
            let mut pairs = Vec::new();
            for (name, &e) in &t.monomial {
                let v = Polynomial::parse(name, ctx)?;
                match v.variables().as_slice() {
                    [one] if v == Polynomial::var(*one) => pairs.push((*one, e)),
                    _ => return Err(Error::Json(format!("`{name}` is not a variable"))),
                }
            }
            terms.push((Monomial::from_pairs(pairs), c));
        }
        Ok(Polynomial::from_terms(terms))
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("serializable")
    }

    pub fn from_json_str(text: &str, ctx: &LetterContext) -> Result<Polynomial> {
        let json: PolynomialJson =
            serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        Polynomial::from_json(&json, ctx)
    }
}
