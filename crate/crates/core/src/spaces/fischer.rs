use crate::exact::{rat_pow, rone, Coeff, Mono, MultiPoly, Poly, Rational, Var};
use crate::jordan::Domain;

/// `prod a_v! / w_v^{a_v}` over the domain variables of `m`.
pub fn mono_norm(dom: &Domain, m: &Mono) -> Rational {
    let mut acc = rone();
    for (v, e) in m.pairs() {
        let w = dom.weight(v).expect("variable of the domain");
        acc *= crate::exact::factorial(*e) * rat_pow(w, -(*e as i32));
    }
    acc
}

/// Fischer inner product: monomials are orthogonal with `<x^a,x^a> = a!/w^a`.
pub fn fischer_inner(dom: &Domain, f: &MultiPoly, g: &MultiPoly) -> Rational {
    let mut acc = crate::exact::rzero();
    for (m, c) in f.terms() {
        let d = g.coeff(m);
        if !crate::exact::rat_is_zero(&d) {
            acc += c * d * mono_norm(dom, m);
        }
    }
    acc
}

/// Applies `p(conj d/dx)`: each conjugate variable `~v` acts as `w_v^{-1} d/dv`.
pub fn fischer_apply<C: Coeff>(dom: &Domain, p: &MultiPoly, g: &Poly<C>) -> Poly<C> {
    let mut out = Poly::zero();
    for (m, c) in p.terms() {
        let mut scale = c.clone();
        let mut d = Mono::one();
        for (v, e) in m.pairs() {
            let w = dom.weight(v).expect("variable of the domain");
            scale *= rat_pow(w, -(*e as i32));
            d = d.mul(&Mono::var(v.holo(), *e));
        }
        let t = g.diff_mono(&d);
        if !t.is_zero() {
            out.add_assign(&t.scale_rat(&scale));
        }
    }
    out
}

/// Truncation of `e^{(x|y)}` through total degree `n` in `x`.
pub fn exp_kernel(dom: &Domain, n: u32) -> MultiPoly {
    let mut u = MultiPoly::zero();
    for c in &dom.coords {
        u.add_term(Mono::from_pairs([(c.var, 1), (c.var.bar(), 1)]), c.weight.clone());
    }
    let mut acc = MultiPoly::one();
    let mut pw = MultiPoly::one();
    for k in 1..=n {
        pw = pw.mul(&u).scale_rat(&(rone() / Rational::from_integer(k.into())));
        acc.add_assign(&pw);
    }
    acc
}

pub fn is_domain_var(dom: &Domain, v: &Var) -> bool {
    dom.index_of(v).is_some()
}
