use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;

use super::fischer::{fischer_inner, mono_norm};
use super::jack::{jack_phi_tilde, TraceCoordinatePoly};
use crate::error::{Error, Result};
use crate::exact::{
    default_param, int, partitions_of, pochhammer_in, rat, rat_is_zero, rone, rzero, Coeff, Mono, MultiPoly, ParamEnv,
    Partition, Poly, RatFn, Rational, Var,
};
use crate::jordan::matrix::rat_solve;
use crate::jordan::{Domain, Kind, PMat};

const CANON: &str = "k";

/// Substitutes `p_j -> c * Tr(A^j)` (for SKEW `c = 1/2`).
pub fn trace_eval<C: Coeff>(t: &TraceCoordinatePoly, a: &PMat<C>, c: &Rational) -> Poly<C> {
    let mut pows: Vec<PMat<C>> = vec![a.clone()];
    let maxj = t.poly().vars().iter().map(|v| v.i as usize).max().unwrap_or(0);
    while pows.len() < maxj {
        let next = pows.last().unwrap().mul(a);
        pows.push(next);
    }
    t.eval_with(&|j| pows[j as usize - 1].trace().scale_rat(c))
}

fn trace_factor(kind: Kind) -> Rational {
    match kind {
        Kind::Skew(_) => rat(1, 2),
        _ => rone(),
    }
}

struct KmEntry {
    /// Rows of `K_m`: holomorphic monomial -> conjugate polynomial.
    rows: BTreeMap<Mono, MultiPoly>,
    full: MultiPoly,
}

type KmKey = (Kind, Vec<u32>);

static KM_CACHE: Lazy<Mutex<HashMap<KmKey, Arc<KmEntry>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// Direct expansion of `h(x,y)^{-lambda}` through conjugate degree `n`, with `lambda`
/// kept as the polynomial variable `param`.
pub fn h_power_series(dom: &Domain, n: u32, param: Var) -> Result<MultiPoly> {
    let h = crate::jordan::generic_norm(dom)?;
    let u = MultiPoly::one().sub(&h);
    let conj = |v: &Var| v.conj;
    let mut acc = MultiPoly::one();
    let mut pw = MultiPoly::one();
    // (lambda)_j / j! as a polynomial in lambda
    let mut coef = MultiPoly::one();
    for j in 1..=n {
        pw = pw.mul_trunc(&u, &conj, n);
        if pw.is_zero() {
            break;
        }
        let mut lin = MultiPoly::var(param);
        lin.add_term(Mono::one(), int(j as i64 - 1));
        coef = coef.mul(&lin).scale_rat(&(rone() / int(j as i64)));
        acc.add_assign(&pw.mul(&coef));
    }
    Ok(acc)
}

fn quadric_kernels(kind: Kind, k: u32) -> Result<Vec<(Partition, MultiPoly)>> {
    let dom = Domain::standard(kind, CANON);
    let lam = Var::param("quadric_lambda");
    let series = h_power_series(&dom, k, lam)?;
    let hk = series.homogeneous(|v: &Var| v.conj, k);
    let parts = partitions_of(k, 2);
    let c = parts.len();
    let d = kind.d();
    let zeros = vec![rzero(); 2];
    for offset in 0..20 {
        let lams: Vec<Rational> = (0..c).map(|i| rat(3 * (i + offset) as i64 + 1, 3)).collect();
        let p: Vec<Vec<Rational>> = lams
            .iter()
            .map(|l| parts.iter().map(|m| pochhammer_in(lam, &zeros, m, &d).eval_at(l).expect("finite")).collect())
            .collect();
        let mut sols = Vec::new();
        let mut ok = true;
        for (i, m) in parts.iter().enumerate() {
            // row i of P^{-1}: solve P^T w = e_i
            let pt: Vec<Vec<Rational>> = (0..c).map(|a| (0..c).map(|b| p[b][a].clone()).collect()).collect();
            let mut e = vec![rzero(); c];
            e[i] = rone();
            match rat_solve(&pt, &e) {
                Some(w) => {
                    let mut km = MultiPoly::zero();
                    for (l, wi) in lams.iter().zip(w) {
                        if !rat_is_zero(&wi) {
                            let hv = hk.eval_partial(&|v| if *v == lam { Some(l.clone()) } else { None });
                            km.add_assign(&hv.scale_rat(&wi));
                        }
                    }
                    sols.push((m.clone(), km));
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            let total = sols.iter().fold(MultiPoly::zero(), |a, (_, p)| a.add(p));
            let expk = super::fischer::exp_kernel(&dom, k).homogeneous(|v: &Var| v.conj, k);
            if total != expk {
                return Err(Error::Unsupported("quadric kernel fails exponential completeness".into()));
            }
            return Ok(sols);
        }
    }
    Err(Error::Singular)
}

fn km_entry(kind: Kind, m: &Partition) -> Result<Arc<KmEntry>> {
    let r = kind.rank();
    let mt = m.trimmed();
    let key = (kind, mt.parts().to_vec());
    if let Some(e) = KM_CACHE.lock().unwrap().get(&key) {
        return Ok(e.clone());
    }
    if mt.len() > r {
        return Err(Error::Shape(format!("partition {m} longer than rank {r}")));
    }
    let full = match kind {
        Kind::Quadric(_) => {
            let all = quadric_kernels(kind, m.size())?;
            let mut found = MultiPoly::zero();
            let mut cache = KM_CACHE.lock().unwrap();
            for (p, k) in all {
                let pt = p.trimmed();
                let e = Arc::new(KmEntry { rows: k.collect_by(|v: &Var| !v.conj), full: k.clone() });
                if pt == mt {
                    found = k;
                }
                cache.insert((kind, pt.parts().to_vec()), e);
            }
            found
        }
        _ => {
            let dom = Domain::standard(kind, CANON);
            let x: PMat<Rational> = dom.sym_point();
            let yb: PMat<Rational> = dom.conj_point();
            let (q, s) = kind.shape();
            let a = if q <= s { x.mul(&yb.transpose()) } else { yb.transpose().mul(&x) };
            let t = jack_phi_tilde(&kind.d(), r, m);
            trace_eval(&t, &a, &trace_factor(kind))
        }
    };
    let e = Arc::new(KmEntry { rows: full.collect_by(|v: &Var| !v.conj), full });
    KM_CACHE.lock().unwrap().insert(key, e.clone());
    Ok(e)
}

fn regroup(v: Var, g: &str) -> Var {
    v.with_group(g)
}

/// `K_m(x,y)` with `x` in group `xg` and conjugate `y` in group `yg`.
pub fn repkernel_k(kind: Kind, m: &Partition, xg: &str, yg: &str) -> Result<MultiPoly> {
    let e = km_entry(kind, m)?;
    Ok(e.full.map_vars(|v| if v.conj { regroup(v, yg) } else { regroup(v, xg) }))
}

/// HKS component `f_m` of the part of `f` in the holomorphic variables of group `g`
/// (standard coordinates of `kind`); other variables are carried along as coefficients.
pub fn hks_project<C: Coeff>(kind: Kind, g: &str, f: &Poly<C>, m: &Partition) -> Result<Poly<C>> {
    let canon = Domain::standard(kind, CANON);
    let gi = crate::exact::var::intern(g);
    let is_dom = |v: &Var| !v.conj && std::ptr::eq(v.g, gi);
    let n = m.size();
    let mut out = Poly::zero();
    let mut entry = None;
    for (b, rest) in f.collect_by(is_dom) {
        if b.deg() != n {
            continue;
        }
        let e = match &entry {
            Some(e) => e,
            None => {
                entry = Some(km_entry(kind, m)?);
                entry.as_ref().unwrap()
            }
        };
        let bc = b.map_vars(|v| v.with_group(CANON));
        let Some(row) = e.rows.get(&bc) else { continue };
        let scale = mono_norm(&canon, &bc);
        let row_h: Poly<C> = row
            .map_vars(|v| v.holo().with_group(g))
            .try_map_coeffs(|r| Ok(C::from_rat(r * &scale)))?;
        out.add_assign(&rest.mul(&row_h));
    }
    Ok(out)
}

/// Projection acting on the conjugate variables of group `g`.
pub fn hks_project_conj<C: Coeff>(kind: Kind, g: &str, f: &Poly<C>, m: &Partition) -> Result<Poly<C>> {
    let gi = crate::exact::var::intern(g);
    let flip = |v: Var| if std::ptr::eq(v.g, gi) { v.bar() } else { v };
    let p = hks_project(kind, g, &f.map_vars(flip), m)?;
    Ok(p.map_vars(flip))
}

/// Partitions of `n` of length at most the rank.
pub fn hks_labels(kind: Kind, n: u32) -> Vec<Partition> {
    partitions_of(n, kind.rank())
}

/// `sum_m <f_m, g_m>_F / (lambda)_{m,d}` exactly in `lambda`.
pub fn weighted_inner(kind: Kind, g: &str, f: &MultiPoly, h: &MultiPoly, param: Var) -> Result<RatFn> {
    let dom = Domain::standard(kind, g);
    let maxdeg = f.deg().max(h.deg());
    let mut acc = RatFn::zero_fn();
    let zeros = vec![rzero(); kind.rank()];
    for n in 0..=maxdeg {
        let fh = f.homogeneous(|_| true, n);
        let hh = h.homogeneous(|_| true, n);
        if fh.is_zero() || hh.is_zero() {
            continue;
        }
        for m in hks_labels(kind, n) {
            let fm = hks_project(kind, g, &fh, &m)?;
            let ip = fischer_inner(&dom, &fm, &hh);
            if rat_is_zero(&ip) {
                continue;
            }
            let inv = pochhammer_in(param, &zeros, &m, &kind.d()).inv()?;
            let c = RatFn::from_param(&inv.scale(&ip), &ParamEnv::new())?;
            acc = acc.add(&c);
        }
    }
    Ok(acc)
}

/// `weighted_inner` with the default parameter name.
pub fn weighted_inner_default(kind: Kind, g: &str, f: &MultiPoly, h: &MultiPoly) -> Result<RatFn> {
    weighted_inner(kind, g, f, h, default_param())
}

/// `Phi~'_m(A) = Phi~^{(2)}_m(t_1^2,...,t_r^2)` with `p_j(t^2) = Tr(A^{2j})/2`.
pub fn schur_prime<C: Coeff>(m: &Partition, a: &PMat<C>, r: usize) -> Poly<C> {
    let t = jack_phi_tilde(&int(2), r, m);
    let a2 = a.mul(a);
    trace_eval(&t, &a2, &rat(1, 2))
}

trait ZeroFn {
    fn zero_fn() -> Self;
}

impl ZeroFn for RatFn {
    fn zero_fn() -> Self {
        <RatFn as Coeff>::zero()
    }
}
