use crate::error::Result;
use crate::exact::{int, pochhammer_affine, rone, Coeff, Mono, MultiPoly, ParamEnv, Poly, RatFn, Rational, Var};
use crate::jordan::{h_of, quasi_inverse_series, Domain, Kind, PMat};
use crate::spaces::{hks_labels, hks_project_conj};

use super::lift_params;

/// One factor of the source domain `p1+`, with intrinsic weight `a*lambda + b`.
#[derive(Clone, Debug)]
pub struct SourceFactor {
    pub kind: Kind,
    pub group: &'static str,
    pub a: Rational,
    pub b: Rational,
}

/// Big domain with the coordinate groups spanning `p1+` and the source factors.
#[derive(Clone, Debug)]
pub struct HoloGeometry {
    pub big: Domain,
    pub p1: Vec<&'static str>,
    pub sources: Vec<SourceFactor>,
    pub lambda: Var,
}

impl HoloGeometry {
    pub fn in_p1(&self, v: &Var) -> bool {
        self.p1.iter().any(|g| std::ptr::eq(*g, v.g))
    }
}

/// `h(x2,y1)^{-lambda} K(Proj2(x2^{y1}))` truncated at conjugate degree `n`, with
/// `lambda` kept as a polynomial variable.
pub fn build_hat_kernel(geom: &HoloGeometry, k: &MultiPoly, n: u32) -> Result<MultiPoly> {
    let big = &geom.big;
    let x2: PMat<Rational> = big.sym_point_where(&|v| !geom.in_p1(v), false);
    let y1: PMat<Rational> = big.sym_point_where(&|v| geom.in_p1(v), true);
    let conj = |v: &Var| v.conj;
    let h = h_of(big, &x2, &y1);
    let u = MultiPoly::one().sub(&h);
    let mut series = MultiPoly::one();
    let mut pw = MultiPoly::one();
    let mut coef = MultiPoly::one();
    for j in 1..=n {
        pw = pw.mul_trunc(&u, &conj, n);
        if pw.is_zero() {
            break;
        }
        let mut lin = MultiPoly::var(geom.lambda);
        lin.add_term(Mono::one(), int(j as i64 - 1));
        coef = coef.mul(&lin).scale_rat(&(rone() / int(j as i64)));
        series.add_assign(&pw.mul(&coef));
    }
    let kpart = if k.is_constant() {
        k.clone()
    } else {
        let q = quasi_inverse_series(big, &x2, &y1, &conj, n);
        let c = big.coords_of(&q);
        k.substitute_trunc(
            &|v| {
                if v.conj || geom.in_p1(v) {
                    return None;
                }
                big.index_of(v).map(|i| c[i].clone())
            },
            &conj,
            n,
        )
    };
    Ok(series.mul_trunc(&kpart, &conj, n))
}

fn project_all(
    geom: &HoloGeometry,
    f: &MultiPoly,
    idx: usize,
    budget: u32,
    coef: RatFn,
    out: &mut Poly<RatFn>,
) -> Result<()> {
    if idx == geom.sources.len() {
        if !f.is_zero() {
            let lifted = lift_params(f, &|v| *v == geom.lambda);
            out.add_assign(&lifted.map_coeffs(|c| c.mul(&coef)));
        }
        return Ok(());
    }
    let s = &geom.sources[idx];
    let gi = crate::exact::var::intern(s.group);
    for deg in 0..=budget {
        let part = f.homogeneous(|v: &Var| v.conj && std::ptr::eq(v.g, gi), deg);
        if part.is_zero() {
            continue;
        }
        for m in hks_labels(s.kind, deg) {
            let pm = hks_project_conj(s.kind, s.group, &part, &m)?;
            if pm.is_zero() {
                continue;
            }
            let c = pochhammer_affine(geom.lambda, &s.a, &s.b, &m, &s.kind.d()).inv()?;
            let c = RatFn::from_param(&c, &ParamEnv::new())?;
            project_all(geom, &pm, idx + 1, budget - deg, coef.mul(&c), out)?;
        }
    }
    Ok(())
}

/// The symbol `F(x2; conj w1)` obtained by pairing `e^{(y1|w1)}` with the invariant
/// kernel in the weighted inner product of the source, through conjugate degree `n`.
pub fn coefficient_oracle(geom: &HoloGeometry, k: &MultiPoly, n: u32) -> Result<Poly<RatFn>> {
    let khat = build_hat_kernel(geom, k, n)?;
    let mut out = Poly::zero();
    project_all(geom, &khat, 0, n, RatFn::one(), &mut out)?;
    Ok(out)
}

