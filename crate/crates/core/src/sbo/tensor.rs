use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{
    binomial, default_param, int, partitions_of, partitions_up_to, pochhammer_in, rat_pow, rzero, Coeff, Mono,
    MultiPoly, ParamEnv, Partition, Poly, RatFn, Rational, Var,
};
use crate::jordan::{det_poly, Domain, Kind, PMat};
use crate::lie::{intertwine_check, IntertwineReport, LieElement, ProdElement, Space, SpaceFactor};
use crate::spaces::hks_project_conj;

use super::operator::PolyOperator;

pub const LEFT: &str = "xL";
pub const RIGHT: &str = "xR";
pub const TARGET: &str = "y";
/// Auxiliary vector for the rank-one `MAT(s,1)` case.
pub const AUX: &str = "y2";

/// `O_lambda(D0) (x) O_mu(D0) -> O_{lambda+mu+2k}(D0)` on the diagonal.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TensorSpec {
    pub kind: Kind,
    pub k: u32,
}

pub fn mu_param() -> Var {
    Var::param("mu")
}

fn zeros(r: usize) -> Vec<Rational> {
    vec![rzero(); r]
}

impl TensorSpec {
    pub fn new(kind: Kind, k: u32) -> Result<Self> {
        let ok = kind.is_tube() || matches!(kind, Kind::Mat(_, 1));
        if !ok {
            return Err(Error::Unsupported(format!("tensor product for {kind}: only tube type and MAT(s,1)")));
        }
        Ok(TensorSpec { kind, k })
    }

    pub fn left(&self) -> Domain {
        Domain::standard(self.kind, LEFT)
    }

    pub fn right(&self) -> Domain {
        Domain::standard(self.kind, RIGHT)
    }

    pub fn target(&self) -> Domain {
        Domain::standard(self.kind, TARGET)
    }

    fn restrict(&self) -> Vec<(Var, Var)> {
        let t = self.target().vars();
        let mut out: Vec<(Var, Var)> = self.left().vars().into_iter().zip(t.iter().copied()).collect();
        out.extend(self.right().vars().into_iter().zip(t.iter().copied()));
        out
    }

    /// `Delta(conj wL - conj wR)^k`, or the rank-one binomial kernel.
    pub fn kernel(&self) -> Result<MultiPoly> {
        let wl: PMat<Rational> = self.left().conj_point();
        let wr: PMat<Rational> = self.right().conj_point();
        if self.kind.is_tube() {
            return Ok(det_poly(self.kind, &wl.sub(&wr))?.pow(self.k));
        }
        let Kind::Mat(s, _) = self.kind else { unreachable!() };
        let y2: PMat<Rational> = PMat::from_fn(1, s, |_, j| MultiPoly::var(Var::new(AUX, 1, j + 1)));
        Ok(y2.mul(&wl.sub(&wr)).get(0, 0).pow(self.k))
    }
}

/// The tensor-product symmetry breaking operator, built from the `x_R`-slot HKS
/// decomposition of the kernel.
pub fn rc_tensor(spec: &TensorSpec) -> Result<PolyOperator> {
    let kind = spec.kind;
    let r = kind.rank();
    let d = kind.d();
    let kern = spec.kernel()?;
    let lam = default_param();
    let mu = mu_param();
    let mut op = PolyOperator { restrict: spec.restrict(), ..Default::default() };
    op = op.with_weights(&spec.left()).with_weights(&spec.right());
    let pieces: Vec<(Partition, MultiPoly)> = if kind.is_tube() {
        partitions_up_to(spec.k * r as u32, r)
            .into_iter()
            .filter(|m| m.part(0) <= spec.k)
            .map(|m| Ok((m.clone(), hks_project_conj(kind, RIGHT, &kern, &m)?)))
            .collect::<Result<_>>()?
    } else {
        (0..=spec.k)
            .map(|j| {
                let m = Partition::new(vec![j])?;
                let right = |v: &Var| v.conj && v.g == RIGHT;
                Ok((m, kern.homogeneous(right, j)))
            })
            .collect::<Result<_>>()?
    };
    for (m, p) in pieces {
        if p.is_zero() {
            continue;
        }
        let mstar = m.with_len(r).and_then(|x| x.complement(spec.k, r)).ok_or_else(|| Error::Shape("partition".into()))?;
        let c = pochhammer_in(lam, &zeros(r), &mstar, &d).mul(&pochhammer_in(mu, &zeros(r), &m, &d)).inv()?;
        op.push(c, p);
    }
    op.check_hygiene()?;
    Ok(op)
}

/// Independent symbol: both slots projected, weighted by `1/((lambda)_m (mu)_n)`.
pub fn tensor_oracle(spec: &TensorSpec) -> Result<Poly<RatFn>> {
    let kind = spec.kind;
    let r = kind.rank();
    let d = kind.d();
    let kern = spec.kernel()?;
    let n = spec.k * r as u32;
    let mut out: Poly<RatFn> = Poly::zero();
    if !kind.is_tube() {
        for j in 0..=spec.k {
            let (a, b) = (Partition::new(vec![spec.k - j])?, Partition::new(vec![j])?);
            let part = kern.homogeneous(|v: &Var| v.conj && v.g == RIGHT, j);
            let c = pochhammer_in(default_param(), &zeros(1), &a, &d).mul(&pochhammer_in(mu_param(), &zeros(1), &b, &d));
            let c = RatFn::from_param(&c.inv()?, &ParamEnv::new())?;
            out.add_assign(&crate::expansion::lift_params(&part, &|_| false).map_coeffs(|x| x.mul(&c)));
        }
        return Ok(out);
    }
    for a in 0..=n {
        let la = kern.homogeneous(|v: &Var| v.conj && v.g == LEFT, a);
        for ma in partitions_of(a, r) {
            let pa = hks_project_conj(kind, LEFT, &la, &ma)?;
            if pa.is_zero() {
                continue;
            }
            for mb in partitions_of(n - a, r) {
                let pb = hks_project_conj(kind, RIGHT, &pa, &mb)?;
                if pb.is_zero() {
                    continue;
                }
                let c = pochhammer_in(default_param(), &zeros(r), &ma, &d).mul(&pochhammer_in(mu_param(), &zeros(r), &mb, &d));
                let c = RatFn::from_param(&c.inv()?, &ParamEnv::new())?;
                out.add_assign(&crate::expansion::lift_params(&pb, &|_| false).map_coeffs(|x| x.mul(&c)));
            }
        }
    }
    Ok(out)
}

/// The rank-one closed form `(-k)_m / ((lambda)_{k-m} (mu)_m m!)`.
pub fn sl2_coefficient(k: u32, m: u32) -> crate::exact::ParamScalar {
    let c = rat_pow(&int(-1), m as i32) * binomial(k as i64, m as i64);
    let a = Partition::new(vec![k - m]).unwrap();
    let b = Partition::new(vec![m]).unwrap();
    let z = zeros(1);
    pochhammer_in(default_param(), &z, &a, &int(1))
        .mul(&pochhammer_in(mu_param(), &z, &b, &int(1)))
        .inv()
        .expect("nonzero")
        .scale(&c)
}

/// Weight of the target `lambda + mu + 2k`.
pub fn target_weight(k: u32) -> MultiPoly {
    let mut w = MultiPoly::var(default_param()).add(&MultiPoly::var(mu_param()));
    w.add_term(Mono::one(), int(2 * k as i64));
    w
}

fn diagonal_pairs(dom: &Domain) -> Vec<(ProdElement, ProdElement)> {
    let mut out = Vec::new();
    let u = crate::lie::unit_vectors(dom);
    let mut els: Vec<LieElement> = Vec::new();
    for b in &u {
        els.push(LieElement::Plus(b.clone()));
        els.push(LieElement::Minus(b.clone()));
        for a in &u {
            els.push(LieElement::Kay(a.clone(), b.clone()));
        }
    }
    for e in els {
        out.push((vec![(0, e.clone()), (1, e.clone())], vec![(0, e)]));
    }
    out
}

/// `intertwine_check` with weights given as polynomials in `lambda, mu` (or their values).
fn check_with(spec: &TensorSpec, wl: MultiPoly, wr: MultiPoly, wt: MultiPoly, env: &ParamEnv, n: u32, symbolic: bool) -> Result<IntertwineReport> {
    if !spec.kind.is_tube() {
        return Err(Error::Unsupported("intertwining check for the vector-valued rank-one case".into()));
    }
    let (l, r, t) = (spec.left(), spec.right(), spec.target());
    for d in [&l, &r, &t] {
        super::ensure_calibrated(d)?;
    }
    let a = Space { factors: vec![SpaceFactor { dom: l.clone(), weight: wl }, SpaceFactor { dom: r, weight: wr }] };
    let b = Space::single(t, wt);
    let pairs = diagonal_pairs(&l);
    let op = rc_tensor(spec)?;
    if symbolic {
        let f = |g: &Poly<RatFn>| op.apply(g, env);
        intertwine_check(&f, &a, &b, &pairs, n)
    } else {
        let f = |g: &MultiPoly| op.apply(g, env);
        intertwine_check(&f, &a, &b, &pairs, n)
    }
}

/// Symbolic check in `lambda, mu`.
pub fn tensor_check(spec: &TensorSpec, n: u32) -> Result<IntertwineReport> {
    check_with(spec, MultiPoly::var(default_param()), MultiPoly::var(mu_param()), target_weight(spec.k), &ParamEnv::new(), n, true)
}

/// Check at rational `(lambda, mu)`.
pub fn tensor_check_at(spec: &TensorSpec, lam: &Rational, mu: &Rational, n: u32) -> Result<IntertwineReport> {
    let mut env = ParamEnv::new();
    env.insert(default_param(), lam.clone());
    env.insert(mu_param(), mu.clone());
    let wt = target_weight(spec.k).eval_partial(&|v| env.get(v).cloned());
    check_with(spec, MultiPoly::from_rat(lam.clone()), MultiPoly::from_rat(mu.clone()), wt, &env, n, false)
}
