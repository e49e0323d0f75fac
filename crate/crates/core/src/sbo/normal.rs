use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{int, rat, Mono, MultiPoly, Partition, Rational, Var};
use crate::jordan::{blocks, Domain, Kind};
use crate::lie::{intertwine_ops, FirstOrder, IntertwineReport, LieElement, Space};
use crate::spaces::{fischer_apply, repkernel_k};

/// Output slot of the normal derivative.
pub const SLOT: &str = "y";

/// `U(q, s1+s2) > U(q, s1) x U(s2)` realized on `MAT(q, s1+s2)` with `x11` the
/// first `s1` columns and `x12` the remaining `s2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NormalPair {
    pub q: usize,
    pub s1: usize,
    pub s2: usize,
}

impl NormalPair {
    pub fn new(q: usize, s1: usize, s2: usize) -> Result<Self> {
        if q == 0 || s1 == 0 || s2 == 0 {
            return Err(Error::Shape("normal pair sizes must be positive".into()));
        }
        Ok(NormalPair { q, s1, s2 })
    }

    pub fn big(&self) -> Domain {
        blocks::mat(self.q, 0, self.s1, self.s2)
    }

    pub fn sub(&self) -> Domain {
        Domain::standard(Kind::Mat(self.q, self.s1), "x11")
    }

    pub fn normal(&self) -> Domain {
        Domain::standard(Kind::Mat(self.q, self.s2), "x12")
    }

    fn is_normal(v: &Var) -> bool {
        v.g == "x12"
    }
}

/// `K_m(y, conj d/dx12) f` restricted to `x12 = 0`; the slot `y` carries the `W`-realization.
pub fn normal_sbo(pair: &NormalPair, m: &Partition, f: &MultiPoly) -> Result<MultiPoly> {
    let kind = Kind::Mat(pair.q, pair.s2);
    if m.trimmed().len() > pair.q.min(pair.s2) {
        return Err(Error::Shape(format!("partition {m} longer than the rank")));
    }
    let km = repkernel_k(kind, m, SLOT, "x12")?;
    let nd = pair.normal();
    let mut out = MultiPoly::zero();
    for (ym, conj) in km.collect_by(|v| !v.conj) {
        let g = fischer_apply(&nd, &conj, f);
        let g = g.filter(|mono| mono.deg_in(NormalPair::is_normal) == 0);
        out.add_assign(&g.mul_mono(&ym));
    }
    Ok(out)
}

/// `K(x12) f(x11)`.
pub fn mult_embed(k: &MultiPoly, f: &MultiPoly) -> MultiPoly {
    k.mul(f)
}

fn unit(dom: &Domain, v: &Var) -> Vec<Rational> {
    let mut e = vec![crate::exact::rzero(); dom.dim()];
    e[dom.index_of(v).expect("variable of the domain")] = int(1);
    e
}

/// Generators of `g1` for `U(1,2) > U(1,1) x U(1)`: the `U(1,1)` part on `x11` and the
/// central `U(1)` element `KAY(e2,e2) - KAY(e1,e1)/2`, which acts trivially on `x11`.
struct Generators {
    sub: Vec<LieElement>,
    z: (LieElement, LieElement),
}

fn generators(pair: &NormalPair) -> Result<Generators> {
    if (pair.q, pair.s1, pair.s2) != (1, 1, 1) {
        return Err(Error::Unsupported("intertwining checks are wired for U(1,2) > U(1,1) x U(1)".into()));
    }
    let big = pair.big();
    let e1 = unit(&big, &Var::new("x11", 1, 1));
    let e2 = unit(&big, &Var::new("x12", 1, 1));
    Ok(Generators {
        sub: vec![LieElement::Plus(e1.clone()), LieElement::Minus(e1.clone()), LieElement::Kay(e1.clone(), e1.clone())],
        z: (LieElement::Kay(e2.clone(), e2), LieElement::Kay(e1.clone(), e1)),
    })
}

fn big_dpi(big: &Domain, lam: &Rational, e: &LieElement) -> Result<FirstOrder> {
    let conv = crate::lie::convention(big)?;
    Ok(crate::lie::dpi_with(big, &MultiPoly::from_rat(lam.clone()), &conv, e))
}

/// `d pi(Z)` on the big domain and its scalar on degree-`j` normal jets.
fn central(big: &Domain, lam: &Rational, g: &Generators, j: u32) -> Result<(FirstOrder, Rational)> {
    let a = big_dpi(big, lam, &g.z.0)?;
    let b = big_dpi(big, lam, &g.z.1)?;
    let z = a.add(&b.scale(&rat(-1, 2)));
    let x2 = Var::new("x12", 1, 1);
    let x1 = Var::new("x11", 1, 1);
    let on = |v: &Var| z.v.iter().find(|(w, _)| w == v).map(|(_, c)| c.clone()).unwrap_or_else(MultiPoly::zero);
    if !on(&x1).is_zero() {
        return Err(Error::Shape("central element moves x11".into()));
    }
    let eig = on(&x2).coeff(&Mono::var(x2, 1));
    Ok((z.clone(), z.a.const_term() + eig * int(j as i64)))
}

fn sub_space(pair: &NormalPair, lam: &Rational, j: u32) -> Result<Space> {
    let sub = pair.sub();
    super::ensure_calibrated(&sub)?;
    // a degree-j normal jet shifts the weight of the U(1,1) factor by j
    Ok(Space::single(sub, MultiPoly::from_rat(lam + int(j as i64))))
}

fn sub_vec(pair: &NormalPair, e: &LieElement) -> LieElement {
    let (big, sub) = (pair.big(), pair.sub());
    let pick = |b: &[Rational]| -> Vec<Rational> { sub.coords.iter().map(|c| b[big.index_of(&c.var).unwrap()].clone()).collect() };
    match e {
        LieElement::Plus(b) => LieElement::Plus(pick(b)),
        LieElement::Minus(b) => LieElement::Minus(pick(b)),
        LieElement::Kay(a, b) => LieElement::Kay(pick(a), pick(b)),
    }
}

fn constant(c: Rational) -> FirstOrder {
    FirstOrder { a: MultiPoly::from_rat(c), v: vec![] }
}

/// `F* d pi(X) = d pi'(X) F*` for the normal derivative with `m = (j)`, through degree `n`.
pub fn normal_sbo_check(pair: &NormalPair, j: u32, lam: &Rational, n: u32) -> Result<IntertwineReport> {
    let big = pair.big();
    super::ensure_calibrated(&big)?;
    let g = generators(pair)?;
    let sub = sub_space(pair, lam, j)?;
    let mut ops = Vec::new();
    for e in &g.sub {
        ops.push((format!("{e:?}"), big_dpi(&big, lam, e)?, sub.dpi(&vec![(0, sub_vec(pair, e))])?));
    }
    let (z, chi) = central(&big, lam, &g, j)?;
    ops.push(("Z".to_string(), z, constant(chi)));
    let m = Partition::new(vec![j])?;
    let op = |f: &MultiPoly| normal_sbo(pair, &m, f);
    intertwine_ops(&op, &big.vars(), &ops, n)
}

/// `F d pi'(X) = d pi(X) F` for `F f = x12^j f(x11)`, through degree `n`.
pub fn mult_embed_check(pair: &NormalPair, j: u32, lam: &Rational, n: u32) -> Result<IntertwineReport> {
    let big = pair.big();
    super::ensure_calibrated(&big)?;
    let g = generators(pair)?;
    let sub = sub_space(pair, lam, j)?;
    let k = MultiPoly::var(Var::new("x12", 1, 1)).pow(j);
    let mut ops = Vec::new();
    for e in &g.sub {
        ops.push((format!("{e:?}"), sub.dpi(&vec![(0, sub_vec(pair, e))])?, big_dpi(&big, lam, e)?));
    }
    let (z, chi) = central(&big, lam, &g, j)?;
    ops.push(("Z".to_string(), constant(chi), z));
    let op = |f: &MultiPoly| Ok(mult_embed(&k, f));
    intertwine_ops(&op, &pair.sub().vars(), &ops, n)
}

