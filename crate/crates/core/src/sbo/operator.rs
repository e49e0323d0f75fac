use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::param::ParamScalarJson;
use crate::exact::{
    fmt_rat, rat_is_zero, rat_pow, Coeff, Mono, MultiPoly, ParamEnv, ParamScalar, Poly, RatFn,
    Rational, Var,
};

/// `coeff * poly`, where the holomorphic variables of `poly` multiply and each conjugate
/// variable `~v` differentiates in `v` with weight `1/w_v`.
#[derive(Clone, Debug, PartialEq)]
pub struct OpBlock {
    pub coeff: ParamScalar,
    pub poly: MultiPoly,
}

/// One expanded term.
#[derive(Clone, Debug, PartialEq)]
pub struct OpTerm {
    pub coeff: ParamScalar,
    pub mult: Mono,
    pub diff: Mono,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OpTermJson {
    pub coeff: ParamScalarJson,
    pub mult: String,
    pub diff: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightJson {
    pub var: String,
    pub weight: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RestrictJson {
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyOperatorJson {
    pub terms: Vec<OpTermJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub weights: Vec<WeightJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub restrict: Vec<RestrictJson>,
}

/// Finite differential operator with polynomial multipliers and factored parameter
/// coefficients. After application, `restrict` renames variables (diagonal restriction).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PolyOperator {
    pub blocks: Vec<OpBlock>,
    pub weights: BTreeMap<Var, Rational>,
    pub restrict: Vec<(Var, Var)>,
}

pub fn parse_mono(s: &str) -> Result<Mono> {
    let s = s.trim();
    if s == "1" || s.is_empty() {
        return Ok(Mono::one());
    }
    let mut pairs = Vec::new();
    for f in s.split('*') {
        let (v, e) = match f.rfind('^') {
            Some(k) if !f[k..].contains(']') => {
                (&f[..k], f[k + 1..].parse::<u32>().map_err(|_| Error::Parse(format!("exponent in {f:?}")))?)
            }
            _ => (f, 1),
        };
        pairs.push((Var::parse(v)?, e));
    }
    Ok(Mono::from_pairs(pairs))
}

impl PolyOperator {
    pub fn identity() -> Self {
        PolyOperator { blocks: vec![OpBlock { coeff: ParamScalar::one(), poly: MultiPoly::one() }], ..Default::default() }
    }

    /// Multiplication by `p`.
    pub fn multiplication(p: MultiPoly) -> Self {
        PolyOperator { blocks: vec![OpBlock { coeff: ParamScalar::one(), poly: p }], ..Default::default() }
    }

    /// Sets the derivative weight of every variable of a domain.
    pub fn with_weights(mut self, dom: &crate::jordan::Domain) -> Self {
        for c in &dom.coords {
            self.weights.insert(c.var, c.weight.clone());
        }
        self
    }

    pub fn push(&mut self, coeff: ParamScalar, poly: MultiPoly) {
        if !coeff.is_zero() && !poly.is_zero() {
            self.blocks.push(OpBlock { coeff, poly });
        }
    }

    /// Expanded terms in block order.
    pub fn terms(&self) -> Vec<OpTerm> {
        let mut out = Vec::new();
        for b in &self.blocks {
            for (m, c) in b.poly.terms() {
                let (diff, mult) = m.split(|v| v.conj);
                out.push(OpTerm { coeff: b.coeff.scale(c), mult, diff });
            }
        }
        out
    }

    /// Largest derivative order.
    pub fn order(&self) -> u32 {
        self.terms().iter().map(|t| t.diff.deg()).max().unwrap_or(0)
    }

    /// Variables that are differentiated and variables that multiply.
    pub fn groups(&self) -> (BTreeSet<&'static str>, BTreeSet<&'static str>) {
        let mut d = BTreeSet::new();
        let mut m = BTreeSet::new();
        for b in &self.blocks {
            for v in b.poly.vars() {
                if v.conj {
                    d.insert(v.g);
                } else {
                    m.insert(v.g);
                }
            }
        }
        (d, m)
    }

    /// Multiplication and derivative groups must be disjoint and every derivative
    /// variable must carry a weight.
    pub fn check_hygiene(&self) -> Result<()> {
        let (d, m) = self.groups();
        if let Some(g) = d.intersection(&m).next() {
            return Err(Error::Shape(format!("group {g} both multiplies and differentiates")));
        }
        for b in &self.blocks {
            for v in b.poly.vars() {
                if v.conj && !self.weights.contains_key(&v.holo()) {
                    return Err(Error::Shape(format!("no derivative weight for {}", v.holo())));
                }
            }
        }
        Ok(())
    }

    /// The symbol `sum coeff * poly` with coefficients as rational functions.
    pub fn symbol(&self) -> Result<Poly<RatFn>> {
        self.symbol_in::<RatFn>(&ParamEnv::new())
    }

    pub fn symbol_in<C: Coeff>(&self, env: &ParamEnv) -> Result<Poly<C>> {
        let mut out: Poly<C> = Poly::zero();
        for b in &self.blocks {
            let c = C::from_param(&b.coeff, env)?;
            let p: Poly<C> = b.poly.try_map_coeffs(|r| Ok(C::from_rat(r.clone())))?;
            out.add_assign(&p.map_coeffs(|x| x.mul(&c)));
        }
        Ok(out)
    }

    /// Exact application; parameters not representable in `C` are taken from `env`.
    pub fn apply<C: Coeff>(&self, f: &Poly<C>, env: &ParamEnv) -> Result<Poly<C>> {
        let fdeg = f.deg();
        let mut out: Poly<C> = Poly::zero();
        for b in &self.blocks {
            let mut acc: Poly<C> = Poly::zero();
            for (m, c) in b.poly.terms() {
                let (diff, mult) = m.split(|v| v.conj);
                if diff.deg() > fdeg {
                    continue;
                }
                let mut scale = c.clone();
                let mut d = Mono::one();
                for (v, e) in diff.pairs() {
                    let h = v.holo();
                    let w = self.weights.get(&h).ok_or_else(|| Error::Shape(format!("no derivative weight for {h}")))?;
                    scale *= rat_pow(w, -(*e as i32));
                    d = d.mul(&Mono::var(h, *e));
                }
                let t = f.diff_mono(&d);
                if t.is_zero() {
                    continue;
                }
                acc.add_assign(&t.mul_mono(&mult).scale_rat(&scale));
            }
            if !acc.is_zero() {
                let c = C::from_param(&b.coeff, env)?;
                out.add_assign(&acc.map_coeffs(|x| x.mul(&c)));
            }
        }
        if self.restrict.is_empty() {
            return Ok(out);
        }
        Ok(out.map_vars(|v| self.restrict.iter().find(|(a, _)| *a == v).map_or(v, |(_, b)| *b)))
    }

    /// Application with the parameters kept as rational functions.
    pub fn apply_symbolic(&self, f: &MultiPoly) -> Result<Poly<RatFn>> {
        let g: Poly<RatFn> = f.try_map_coeffs(|r| Ok(RatFn::from_rat(r.clone())))?;
        self.apply(&g, &ParamEnv::new())
    }

    /// Application at rational parameter values.
    pub fn apply_at(&self, f: &MultiPoly, env: &ParamEnv) -> Result<MultiPoly> {
        self.apply(f, env)
    }

    /// Evaluates every block coefficient at `env`.
    pub fn specialize(&self, env: &ParamEnv) -> Result<PolyOperator> {
        let mut out = PolyOperator { weights: self.weights.clone(), restrict: self.restrict.clone(), blocks: vec![] };
        for b in &self.blocks {
            out.push(ParamScalar::constant(b.coeff.eval(env)?), b.poly.clone());
        }
        Ok(out)
    }

    pub fn to_json_struct(&self) -> PolyOperatorJson {
        let terms = self
            .terms()
            .into_iter()
            .filter(|t| !t.coeff.is_zero())
            .map(|t| OpTermJson { coeff: t.coeff.to_json(), mult: t.mult.to_string(), diff: t.diff.to_string() })
            .collect();
        PolyOperatorJson {
            terms,
            weights: self.weights.iter().map(|(v, w)| WeightJson { var: v.to_string(), weight: fmt_rat(w) }).collect(),
            restrict: self.restrict.iter().map(|(a, b)| RestrictJson { from: a.to_string(), to: b.to_string() }).collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_json_struct()).expect("serializable")
    }

    /// Rebuilds an operator with one block per term.
    pub fn from_json(j: &PolyOperatorJson) -> Result<Self> {
        let mut op = PolyOperator::default();
        for w in &j.weights {
            op.weights.insert(Var::parse(&w.var)?, crate::exact::parse_rat(&w.weight)?);
        }
        for r in &j.restrict {
            op.restrict.push((Var::parse(&r.from)?, Var::parse(&r.to)?));
        }
        for t in &j.terms {
            let m = parse_mono(&t.mult)?.mul(&parse_mono(&t.diff)?);
            op.push(ParamScalar::from_json(&t.coeff)?, MultiPoly::term(m, crate::exact::rone()));
        }
        Ok(op)
    }

    /// Equality of the expanded operators (after collecting equal monomials).
    pub fn same_as(&self, o: &PolyOperator) -> Result<bool> {
        Ok(self.symbol()? == o.symbol()? && self.weights == o.weights && self.restrict == o.restrict)
    }

    pub fn to_latex(&self) -> String {
        let mut parts = Vec::new();
        for t in self.terms() {
            if t.coeff.is_zero() {
                continue;
            }
            let mut s = t.coeff.to_latex();
            if s == "1" && (t.mult.deg() > 0 || t.diff.deg() > 0) {
                s.clear();
            } else if s == "-1" && (t.mult.deg() > 0 || t.diff.deg() > 0) {
                s = "-".into();
            }
            for (v, e) in t.mult.pairs() {
                s.push_str(&latex_power(&latex_var(v), *e));
            }
            for (v, e) in t.diff.pairs() {
                let d = format!("\\partial_{{{}}}", latex_sub(&v.holo()));
                s.push_str(&latex_power(&d, *e));
            }
            if s.is_empty() {
                s = "1".into();
            }
            parts.push(s);
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            if let Some(rest) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        out
    }
}

fn latex_sub(v: &Var) -> String {
    if v.i == 0 && v.j == 0 {
        v.g.to_string()
    } else {
        format!("{},{}{}", v.g, v.i, v.j)
    }
}

fn latex_var(v: &Var) -> String {
    format!("{{{}}}_{{{}{}}}", v.g, v.i, v.j)
}

fn latex_power(base: &str, e: u32) -> String {
    if e == 1 {
        base.to_string()
    } else {
        format!("{base}^{{{e}}}")
    }
}

/// `true` when no block has a zero coefficient or zero polynomial.
pub fn is_reduced(op: &PolyOperator) -> bool {
    op.blocks.iter().all(|b| !b.coeff.is_zero() && !b.poly.is_zero() && b.poly.terms().all(|(_, c)| !rat_is_zero(c)))
}
