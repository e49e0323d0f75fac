//! Expansions of `h^{-lambda}` and of the invariant kernel used as the coefficient oracle.

mod oracle;

pub use oracle::{build_hat_kernel, coefficient_oracle, HoloGeometry, SourceFactor};

use serde::Serialize;

use crate::error::Result;
use crate::exact::{int, pochhammer_in, rone, rzero, Mono, MultiPoly, ParamScalar, Partition, Poly, RatFn, Rational, Var};
use crate::jordan::Domain;
use crate::spaces::{hks_labels, repkernel_k};

/// Expands a factored scalar with nonnegative multiplicities into a polynomial.
pub fn param_poly(p: &ParamScalar) -> Option<MultiPoly> {
    let mut acc = MultiPoly::from_rat(p.c().clone());
    for f in p.factors() {
        if f.mult < 0 {
            return None;
        }
        let mut lin = MultiPoly::var(f.param);
        lin.add_term(Mono::one(), f.shift.clone());
        acc = acc.mul(&lin.pow(f.mult as u32));
    }
    Some(acc)
}

/// Moves the parameter variables of `f` into rational-function coefficients.
pub fn lift_params(f: &MultiPoly, is_param: &dyn Fn(&Var) -> bool) -> Poly<RatFn> {
    let mut out: Poly<RatFn> = Poly::zero();
    for (rest, pp) in f.collect_by(|v| !is_param(v)) {
        out.add_term(rest, RatFn::from_poly(pp));
    }
    out
}

/// One structured term `c_m(lambda) * P_m`.
#[derive(Clone, Debug)]
pub struct SeriesTerm {
    pub m: Partition,
    pub coeff: ParamScalar,
    pub poly: MultiPoly,
}

/// Degree-truncated `sum_m c_m(lambda) P_m`.
#[derive(Clone, Debug)]
pub struct ParamSeries {
    pub param: Var,
    pub degree: u32,
    pub terms: Vec<SeriesTerm>,
}

impl ParamSeries {
    /// Evaluates at a rational parameter value.
    pub fn eval(&self, lam: &Rational) -> Result<MultiPoly> {
        let mut acc = MultiPoly::zero();
        for t in &self.terms {
            acc.add_assign(&t.poly.scale_rat(&t.coeff.eval_at(lam)?));
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|t| {
                serde_json::json!({
                    "m": t.m.parts(),
                    "coeff": t.coeff.to_json(),
                    "kernel": crate::exact::poly_json(&t.poly),
                })
            })
            .collect();
        serde_json::json!({"param": self.param.to_string(), "degree": self.degree, "terms": terms})
    }
}

/// Per-degree agreement between the direct and the structured expansion.
#[derive(Clone, Debug, Serialize)]
pub struct DegreeCheck {
    pub degree: u32,
    pub components: usize,
    pub agree: bool,
}

#[derive(Clone, Debug)]
pub struct HExpansion {
    pub structured: ParamSeries,
    pub checks: Vec<DegreeCheck>,
}

impl HExpansion {
    pub fn agree(&self) -> bool {
        self.checks.iter().all(|c| c.agree)
    }
}

/// `h(x,y)^{-lambda}` through bidegree `(n,n)`: the binomial series of `h` against
/// `sum_m (lambda)_{m,d} K_m`, compared coefficientwise in `lambda`.
pub fn expand_h_power(dom: &Domain, n: u32) -> Result<HExpansion> {
    let kind = dom.kind;
    let lam = crate::exact::default_param();
    let h = crate::jordan::generic_norm(dom)?;
    let u = MultiPoly::one().sub(&h);
    let conj = |v: &Var| v.conj;
    let g = dom.groups()[0];
    // u^j truncated, and (lambda)_j/j! coefficient lists
    let mut upow: Vec<MultiPoly> = vec![MultiPoly::one()];
    for _ in 1..=n {
        let next = upow.last().unwrap().mul_trunc(&u, &conj, n);
        upow.push(next);
    }
    let mut cj: Vec<Vec<Rational>> = vec![vec![rone()]];
    for j in 1..=n as usize {
        // multiply previous by (lambda + j - 1)/j
        let prev = &cj[j - 1];
        let mut next = vec![rzero(); prev.len() + 1];
        for (i, c) in prev.iter().enumerate() {
            next[i + 1] += c / int(j as i64);
            next[i] += c * int(j as i64 - 1) / int(j as i64);
        }
        cj.push(next);
    }
    let zeros = vec![rzero(); kind.rank()];
    let mut terms = Vec::new();
    let mut checks = Vec::new();
    for k in 0..=n {
        let labels = hks_labels(kind, k);
        let mut kms = Vec::new();
        for m in &labels {
            let km = repkernel_k(kind, m, g, g)?;
            let c = pochhammer_in(lam, &zeros, m, &kind.d());
            kms.push((m.clone(), c, km));
        }
        let mut agree = true;
        for i in 0..=k as usize {
            let mut direct = MultiPoly::zero();
            for (j, up) in upow.iter().enumerate().take(k as usize + 1) {
                if let Some(c) = cj[j].get(i) {
                    if !crate::exact::rat_is_zero(c) {
                        direct.add_assign(&up.homogeneous(conj, k).scale_rat(c));
                    }
                }
            }
            let mut structured = MultiPoly::zero();
            for (_, c, km) in &kms {
                let cp = param_poly(c).expect("pochhammer is a polynomial");
                let ci = cp.coeff(&Mono::var(lam, i as u32));
                if !crate::exact::rat_is_zero(&ci) {
                    structured.add_assign(&km.scale_rat(&ci));
                }
            }
            if direct != structured {
                agree = false;
            }
        }
        checks.push(DegreeCheck { degree: k, components: kms.len(), agree });
        for (m, coeff, poly) in kms {
            terms.push(SeriesTerm { m, coeff, poly });
        }
    }
    Ok(HExpansion { structured: ParamSeries { param: lam, degree: n, terms }, checks })
}

