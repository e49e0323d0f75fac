use serde::{Deserialize, Serialize};

use super::poly::MultiPoly;
use super::rational::{fmt_rat, parse_rat};
use super::var::{Mono, Var};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub exps: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

/// JSON form of a polynomial: variable list plus dense exponent vectors in canonical term order.
pub fn poly_to_json(f: &MultiPoly) -> PolyJson {
    let vars = f.vars();
    let terms = f
        .terms()
        .map(|(m, c)| TermJson { coeff: fmt_rat(c), exps: vars.iter().map(|v| m.exp(v)).collect() })
        .collect();
    PolyJson { vars: vars.iter().map(|v| v.to_string()).collect(), terms }
}

pub fn poly_json(f: &MultiPoly) -> serde_json::Value {
    serde_json::to_value(poly_to_json(f)).expect("serializable")
}

pub fn poly_from_json(j: &PolyJson) -> Result<MultiPoly> {
    let vars: Vec<Var> = j.vars.iter().map(|s| Var::parse(s)).collect::<Result<_>>()?;
    let mut f = MultiPoly::zero();
    for t in &j.terms {
        if t.exps.len() != vars.len() {
            return Err(Error::Parse("exponent vector length".into()));
        }
        let m = Mono::from_pairs(vars.iter().copied().zip(t.exps.iter().copied()));
        f.add_term(m, parse_rat(&t.coeff)?);
    }
    Ok(f)
}

/// Serializes a rational as its `p/q` string.
pub fn ser_rat<S: serde::Serializer>(r: &super::Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&super::fmt_rat(r))
}
