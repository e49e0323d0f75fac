//! Symmetry breaking and holographic operators as explicit finite differential operators.

pub mod normal;
pub mod operator;
pub mod pairs;
pub mod tensor;

pub use normal::{mult_embed, mult_embed_check, normal_sbo, normal_sbo_check, NormalPair};
pub use operator::{parse_mono, OpBlock, OpTerm, PolyOperator, PolyOperatorJson};
pub use pairs::{PairGeometry, PairId, PairSpec, Source};
pub use tensor::{rc_tensor, tensor_check, tensor_oracle, TensorSpec};

use serde::Serialize;

use crate::error::Result;
use crate::exact::{default_param, MultiPoly, ParamEnv, Poly, RatFn, Rational};
use crate::expansion::coefficient_oracle;
use crate::jordan::Domain;
use crate::lie::{calibrate, convention, intertwine_check, IntertwineReport, LieElement, ProdElement, Space, SpaceFactor};

/// Monomial degree used when a domain is calibrated on demand.
pub const CALIBRATION_DEGREE: u32 = 2;

pub fn ensure_calibrated(dom: &Domain) -> Result<()> {
    if convention(dom).is_err() {
        calibrate(dom, CALIBRATION_DEGREE)?;
    }
    Ok(())
}

/// The holographic operator of `pair` through conjugate degree `budget`.
pub fn holographic(pair: &PairSpec, budget: u32) -> Result<PolyOperator> {
    pair.closed_form(budget)
}

/// Exact application with the parameters kept symbolic.
pub fn apply_operator(op: &PolyOperator, f: &MultiPoly) -> Result<Poly<RatFn>> {
    op.apply_symbolic(f)
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub pair: String,
    pub degree: u32,
    pub terms: usize,
    pub mismatches: Vec<String>,
}

impl OracleReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty() && self.terms > 0
    }
}

/// Compares two symbols monomial by monomial.
pub fn compare_symbols(a: &Poly<RatFn>, b: &Poly<RatFn>) -> Vec<String> {
    let d = a.sub(b);
    d.terms().take(20).map(|(m, c)| format!("{m}: {}", crate::exact::Coeff::to_text(c))).collect()
}

/// Closed form against `coefficient_oracle` through conjugate degree `n`.
pub fn oracle_agreement(pair: &PairSpec, n: u32) -> Result<OracleReport> {
    let geom = pair.geometry()?;
    let oracle = coefficient_oracle(&geom.holo(), &geom.kernel, n)?;
    let sym = pair.closed_form(n)?.symbol()?.truncate(|v| v.conj, n);
    Ok(OracleReport { pair: pair.label(), degree: n, terms: sym.len(), mismatches: compare_symbols(&sym, &oracle) })
}

fn embed(big: &Domain, src: &Domain, b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![crate::exact::rzero(); big.dim()];
    for (c, x) in src.coords.iter().zip(b) {
        let i = big.index_of(&c.var).expect("source coordinate in the big domain");
        out[i] = x.clone();
    }
    out
}

/// Pairs `(X on the source product, iota(X) on the big domain)` spanning `g1`.
pub fn subalgebra_pairs(big: &Domain, sources: &[&Domain]) -> Vec<(ProdElement, ProdElement)> {
    let mut out = Vec::new();
    for (i, src) in sources.iter().enumerate() {
        let u = crate::lie::unit_vectors(src);
        for b in &u {
            let e = embed(big, src, b);
            out.push((vec![(i, LieElement::Plus(b.clone()))], vec![(0, LieElement::Plus(e.clone()))]));
            out.push((vec![(i, LieElement::Minus(b.clone()))], vec![(0, LieElement::Minus(e))]));
        }
        for a in &u {
            for b in &u {
                let (ea, eb) = (embed(big, src, a), embed(big, src, b));
                out.push((vec![(i, LieElement::Kay(a.clone(), b.clone()))], vec![(0, LieElement::Kay(ea, eb))]));
            }
        }
    }
    out
}

fn at(w: &MultiPoly, lam: &Rational) -> MultiPoly {
    let p = default_param();
    w.eval_partial(&|v| (*v == p).then(|| lam.clone()))
}

/// Source and target spaces at a rational `lambda`, the source weights scaled by `kappa`.
pub fn holographic_spaces(geom: &PairGeometry, lam: &Rational, kappa: &Rational) -> Result<(Space, Space)> {
    ensure_calibrated(&geom.big)?;
    let mut src = Vec::new();
    for (i, s) in geom.sources.iter().enumerate() {
        ensure_calibrated(&s.dom)?;
        src.push(SpaceFactor { dom: s.dom.clone(), weight: at(&geom.source_weight(i), lam).scale_rat(kappa) });
    }
    let big = Space::single(geom.big.clone(), MultiPoly::from_rat(lam.clone()));
    Ok((Space { factors: src }, big))
}

/// `intertwine_check` for the holographic operator at a rational `lambda`.
pub fn holographic_intertwine(pair: &PairSpec, lam: &Rational, n: u32) -> Result<IntertwineReport> {
    holographic_intertwine_scaled(pair, lam, &crate::exact::rone(), n)
}

pub fn holographic_intertwine_scaled(pair: &PairSpec, lam: &Rational, kappa: &Rational, n: u32) -> Result<IntertwineReport> {
    let geom = pair.geometry()?;
    let (src, big) = holographic_spaces(&geom, lam, kappa)?;
    let doms: Vec<&Domain> = geom.sources.iter().map(|s| &s.dom).collect();
    let pairs = subalgebra_pairs(&geom.big, &doms);
    let mut env = ParamEnv::new();
    env.insert(default_param(), lam.clone());
    let op = |f: &MultiPoly| -> Result<MultiPoly> { pair.closed_form(f.deg())?.apply(f, &env) };
    intertwine_check(&op, &src, &big, &pairs, n)
}
