use std::collections::BTreeMap;
use std::fmt;
use std::sync::Mutex;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{
    default_param, factorial, int, partitions_of, pochhammer_affine, rat, rone, Mono, MultiPoly, Partition,
    ParamScalar, Rational, Var,
};
use crate::expansion::{HoloGeometry, SourceFactor};
use crate::jordan::{blocks, Domain, Kind, PMat};
use crate::spaces::{jack_phi_tilde, schur_prime, trace_eval};

use super::operator::PolyOperator;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PairId {
    Tensor,
    SpSpSp,
    UUU,
    SostSostSost,
    SpU,
    SostU,
    SuSp,
    SuSost,
    Su33Sost6,
    SoSoSo,
}

impl PairId {
    pub const HOLOGRAPHIC: [PairId; 9] = [
        PairId::SpSpSp,
        PairId::UUU,
        PairId::SostSostSost,
        PairId::SpU,
        PairId::SostU,
        PairId::SuSp,
        PairId::SuSost,
        PairId::Su33Sost6,
        PairId::SoSoSo,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            PairId::Tensor => "tensor",
            PairId::SpSpSp => "sp-spsp",
            PairId::UUU => "u-uu",
            PairId::SostSostSost => "sost-sostsost",
            PairId::SpU => "sp-u",
            PairId::SostU => "sost-u",
            PairId::SuSp => "su-sp",
            PairId::SuSost => "su-sost",
            PairId::Su33Sost6 => "su33-sost6",
            PairId::SoSoSo => "so-soso",
        }
    }

    pub fn parse(s: &str) -> Result<PairId> {
        let t = s.to_ascii_lowercase().replace('_', "-");
        let all = [PairId::Tensor].into_iter().chain(PairId::HOLOGRAPHIC);
        for p in all {
            if p.tag() == t {
                return Ok(p);
            }
        }
        Err(Error::Parse(format!("unknown pair {s:?}")))
    }

    /// Number of size parameters.
    pub fn arity(&self) -> usize {
        match self {
            PairId::UUU => 4,
            PairId::SuSp | PairId::SuSost => 1,
            PairId::Su33Sost6 => 0,
            PairId::Tensor => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for PairId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A holographic pair instance.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PairSpec {
    pub id: PairId,
    pub sizes: Vec<usize>,
    pub k: u32,
    pub l: u32,
}

/// A source factor with its realized domain (the Fischer weights of the derivatives).
#[derive(Clone, Debug)]
pub struct Source {
    pub dom: Domain,
    pub factor: SourceFactor,
}

/// Everything needed to build, check and compare a holographic operator.
#[derive(Clone, Debug)]
pub struct PairGeometry {
    pub big: Domain,
    pub p1: Vec<&'static str>,
    pub sources: Vec<Source>,
    pub kernel: MultiPoly,
}

impl PairGeometry {
    pub fn holo(&self) -> HoloGeometry {
        HoloGeometry {
            big: self.big.clone(),
            p1: self.p1.clone(),
            sources: self.sources.iter().map(|s| s.factor.clone()).collect(),
            lambda: default_param(),
        }
    }

    /// Source weight `a*lambda + b` as a polynomial in `lambda`.
    pub fn source_weight(&self, i: usize) -> MultiPoly {
        let f = &self.sources[i].factor;
        let mut w = MultiPoly::var(default_param()).scale_rat(&f.a);
        w.add_term(Mono::one(), f.b.clone());
        w
    }
}

fn lam() -> Var {
    default_param()
}

fn holo_mat(kind: Kind, g: &str) -> PMat<Rational> {
    Domain::standard(kind, g).sym_point()
}

fn conj_mat(kind: Kind, g: &str) -> PMat<Rational> {
    Domain::standard(kind, g).conj_point()
}

fn source(kind: Kind, g: &'static str, a: Rational, b: Rational) -> Source {
    Source { dom: Domain::standard(kind, g), factor: SourceFactor { kind, group: g, a, b } }
}

fn quad(v: &PMat<Rational>) -> MultiPoly {
    v.entries().iter().fold(MultiPoly::zero(), |acc, e| acc.add(&e.mul(e)))
}

/// Series term generator: partitions of each size and the term for each.
type Term = Box<dyn Fn(&Partition) -> (ParamScalar, MultiPoly) + Send + Sync>;

struct Plan {
    geom: PairGeometry,
    rank: usize,
    term: Term,
}

fn jack_term(d: Rational, r: usize, c: Rational, arg: PMat<Rational>, a: Rational, b: Rational) -> Term {
    Box::new(move |m: &Partition| {
        let t = jack_phi_tilde(&d, r, m);
        let p = trace_eval(&t, &arg, &c);
        (pochhammer_affine(lam(), &a, &b, m, &d).inv().expect("nonzero"), p)
    })
}

fn schur_term(r: usize, arg: PMat<Rational>, a: Rational, b: Rational) -> Term {
    Box::new(move |m: &Partition| {
        let p = schur_prime(m, &arg, r);
        (pochhammer_affine(lam(), &a, &b, m, &int(2)).inv().expect("nonzero"), p)
    })
}

/// `sum_m c_m / (lambda + b)_m * base^m` for rank-one sums.
fn scalar_term(base: MultiPoly, b: Rational, sign: Rational) -> Term {
    Box::new(move |m: &Partition| {
        let n = m.size();
        let c = pochhammer_affine(lam(), &rone(), &b, m, &int(2))
            .inv()
            .expect("nonzero")
            .scale(&(crate::exact::rat_pow(&sign, n as i32) / factorial(n)));
        (c, base.pow(n))
    })
}

fn check_sizes(p: &PairSpec) -> Result<()> {
    if p.sizes.len() != p.id.arity() || p.sizes.iter().any(|&s| s == 0) {
        return Err(Error::Unsupported(format!("{}: sizes {:?}", p.id, p.sizes)));
    }
    Ok(())
}

impl PairSpec {
    pub fn new(id: PairId, sizes: &[usize], k: u32, l: u32) -> Result<PairSpec> {
        let p = PairSpec { id, sizes: sizes.to_vec(), k, l };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        check_sizes(self)?;
        let s = &self.sizes;
        let bad = |why: &str| Err(Error::Unsupported(format!("{}: {why}", self.id)));
        match self.id {
            PairId::Tensor => return bad("use rc_tensor"),
            PairId::SpSpSp | PairId::SostSostSost => {
                if self.l != 0 {
                    return bad("l must be 0");
                }
                if self.k > 0 && s[0] != s[1] {
                    return bad("k = 0 unless the blocks agree");
                }
            }
            PairId::UUU => {
                if self.k > 0 && s[0] != s[3] {
                    return bad("k > 0 needs q' = s''");
                }
                if self.l > 0 && s[1] != s[2] {
                    return bad("l > 0 needs q'' = s'");
                }
            }
            PairId::SostU => {
                if (self.k > 0 && s[0] % 2 == 1) || (self.l > 0 && s[1] % 2 == 1) {
                    return bad("Pfaffian powers need even blocks");
                }
            }
            PairId::SuSp => {
                if self.l != 0 || (self.k > 0 && s[0] % 2 == 1) {
                    return bad("k = 0 for odd s, l = 0");
                }
            }
            PairId::SuSost | PairId::Su33Sost6 | PairId::SoSoSo => {
                if self.l != 0 {
                    return bad("l must be 0");
                }
            }
            PairId::SpU => {}
        }
        Ok(())
    }

    pub fn label(&self) -> String {
        let s: Vec<String> = self.sizes.iter().map(|x| x.to_string()).collect();
        format!("{}[{}] k={} l={}", self.id, s.join(","), self.k, self.l)
    }

    pub fn geometry(&self) -> Result<PairGeometry> {
        Ok(self.plan()?.geom)
    }

    fn plan(&self) -> Result<Plan> {
        self.validate()?;
        let s = &self.sizes;
        let (k, l) = (int(self.k as i64), int(self.l as i64));
        let one = rone();
        let plan = match self.id {
            PairId::SpSpSp => {
                let (a, b) = (s[0], s[1]);
                let x12 = holo_mat(Kind::Mat(a, b), "x12");
                let kernel = if self.k > 0 { x12.det().pow(self.k) } else { MultiPoly::one() };
                let arg = x12.mul(&conj_mat(Kind::Sym(b), "x22")).mul(&x12.transpose()).mul(&conj_mat(Kind::Sym(a), "x11"));
                Plan {
                    geom: PairGeometry {
                        big: blocks::sym(a, b),
                        p1: vec![intern("x11"), intern("x22")],
                        sources: vec![
                            source(Kind::Sym(a), intern("x11"), one.clone(), k.clone()),
                            source(Kind::Sym(b), intern("x22"), one.clone(), k.clone()),
                        ],
                        kernel,
                    },
                    rank: a.min(b),
                    term: jack_term(int(1), a.min(b), one.clone(), arg, one, k),
                }
            }
            PairId::UUU => {
                let (q1, q2, s1, s2) = (s[0], s[1], s[2], s[3]);
                let x12 = holo_mat(Kind::Mat(q1, s2), "x12");
                let x21 = holo_mat(Kind::Mat(q2, s1), "x21");
                let mut kernel = MultiPoly::one();
                if self.k > 0 {
                    kernel = kernel.mul(&x12.det().pow(self.k));
                }
                if self.l > 0 {
                    kernel = kernel.mul(&x21.det().pow(self.l));
                }
                let arg = x12
                    .mul(&conj_mat(Kind::Mat(q2, s2), "x22").transpose())
                    .mul(&x21)
                    .mul(&conj_mat(Kind::Mat(q1, s1), "x11").transpose());
                let r = q1.min(s1).min(q2).min(s2);
                let kl = &k + &l;
                Plan {
                    geom: PairGeometry {
                        big: blocks::mat(q1, q2, s1, s2),
                        p1: vec![intern("x11"), intern("x22")],
                        sources: vec![
                            source(Kind::Mat(q1, s1), intern("x11"), one.clone(), kl.clone()),
                            source(Kind::Mat(q2, s2), intern("x22"), one.clone(), kl.clone()),
                        ],
                        kernel,
                    },
                    rank: r,
                    term: jack_term(int(2), r, one.clone(), arg, one, kl),
                }
            }
            PairId::SostSostSost => {
                let (a, b) = (s[0], s[1]);
                let x12 = holo_mat(Kind::Mat(a, b), "x12");
                let kernel = if self.k > 0 { x12.det().pow(self.k) } else { MultiPoly::one() };
                let arg = x12
                    .mul(&conj_mat(Kind::Skew(b), "x22"))
                    .mul(&x12.transpose())
                    .mul(&conj_mat(Kind::Skew(a), "x11"))
                    .neg();
                let r = (a / 2).min(b / 2);
                let w = &k * int(2);
                Plan {
                    geom: PairGeometry {
                        big: blocks::skew(a, b),
                        p1: vec![intern("x11"), intern("x22")],
                        sources: vec![
                            source(Kind::Skew(a), intern("x11"), one.clone(), w.clone()),
                            source(Kind::Skew(b), intern("x22"), one.clone(), w.clone()),
                        ],
                        kernel,
                    },
                    rank: r,
                    term: jack_term(int(4), r, rat(1, 2), arg, one, w),
                }
            }
            PairId::SpU => {
                let (a, b) = (s[0], s[1]);
                let x11 = holo_mat(Kind::Sym(a), "x11");
                let x22 = holo_mat(Kind::Sym(b), "x22");
                let mut kernel = MultiPoly::one();
                if self.k > 0 {
                    kernel = kernel.mul(&x11.det().pow(self.k));
                }
                if self.l > 0 {
                    kernel = kernel.mul(&x22.det().pow(self.l));
                }
                let w12 = conj_mat(Kind::Mat(a, b), "x12");
                let arg = x11.mul(&w12).mul(&x22).mul(&w12.transpose()).scale_rat(&rat(1, 4));
                let r = a.min(b);
                let kl = &k + &l;
                Plan {
                    geom: PairGeometry {
                        big: blocks::sym(a, b),
                        p1: vec![intern("x12")],
                        sources: vec![source(Kind::Mat(a, b), intern("x12"), int(2), &kl * int(2))],
                        kernel,
                    },
                    rank: r,
                    term: jack_term(int(1), r, one.clone(), arg, one, kl + rat(1, 2)),
                }
            }
            PairId::SostU => {
                let (a, b) = (s[0], s[1]);
                let x11 = holo_mat(Kind::Skew(a), "x11");
                let x22 = holo_mat(Kind::Skew(b), "x22");
                let mut kernel = MultiPoly::one();
                if self.k > 0 {
                    kernel = kernel.mul(&x11.pfaffian().pow(self.k));
                }
                if self.l > 0 {
                    kernel = kernel.mul(&x22.pfaffian().pow(self.l));
                }
                let w12 = conj_mat(Kind::Mat(a, b), "x12");
                let arg = x11.mul(&w12).mul(&x22).mul(&w12.transpose()).neg();
                let r = (a / 2).min(b / 2);
                let kl = &k + &l;
                Plan {
                    geom: PairGeometry {
                        big: blocks::skew(a, b),
                        p1: vec![intern("x12")],
                        sources: vec![source(Kind::Mat(a, b), intern("x12"), one.clone(), kl.clone())],
                        kernel,
                    },
                    rank: r,
                    term: jack_term(int(4), r, rat(1, 2), arg, one, kl - int(1)),
                }
            }
            PairId::SuSp => {
                let n = s[0];
                let x2 = holo_mat(Kind::Skew(n), "x2");
                let kernel = if self.k > 0 { x2.pfaffian().pow(self.k) } else { MultiPoly::one() };
                let arg = x2.mul(&conj_mat(Kind::Sym(n), "x1"));
                Plan {
                    geom: PairGeometry {
                        big: blocks::mat_sym_skew(n, "x1", "x2"),
                        p1: vec![intern("x1")],
                        sources: vec![source(Kind::Sym(n), intern("x1"), one.clone(), k.clone())],
                        kernel,
                    },
                    rank: n / 2,
                    term: schur_term(n / 2, arg, one, k - rat(1, 2)),
                }
            }
            PairId::SuSost => {
                let n = s[0];
                let x2 = holo_mat(Kind::Sym(n), "x2");
                let kernel = if self.k > 0 { x2.det().pow(self.k) } else { MultiPoly::one() };
                let arg = x2.mul(&conj_mat(Kind::Skew(n), "x1")).scale_rat(&rat(1, 2));
                Plan {
                    geom: PairGeometry {
                        big: blocks::mat_sym_skew(n, "x2", "x1"),
                        p1: vec![intern("x1")],
                        sources: vec![source(Kind::Skew(n), intern("x1"), int(2), &k * int(4))],
                        kernel,
                    },
                    rank: n / 2,
                    term: schur_term(n / 2, arg, one, &k * int(2) + rat(1, 2)),
                }
            }
            PairId::Su33Sost6 => {
                let x2 = holo_mat(Kind::Sym(3), "x2");
                let kernel = if self.k > 0 { x2.det().pow(self.k) } else { MultiPoly::one() };
                let w1 = conj_mat(Kind::Mat(1, 3), "x1");
                // x1 -> [x1]x gives Q(x2)x1 = -x1 x2^#, so the quadratic argument carries a sign
                let base = w1.mul(&x2.adjugate()).mul(&w1.transpose()).get(0, 0).scale_rat(&rat(-1, 4));
                let w = &k * int(2);
                Plan {
                    geom: PairGeometry {
                        big: blocks::mat3_cross(),
                        p1: vec![intern("x1")],
                        sources: vec![source(Kind::Mat(1, 3), intern("x1"), SU33_KAPPA.clone(), &w * &*SU33_KAPPA)],
                        kernel,
                    },
                    rank: 1,
                    term: scalar_term(base, w + rat(1, 2), one),
                }
            }
            PairId::SoSoSo => {
                let (a, b) = (s[0], s[1]);
                let x2 = holo_mat(Kind::Quadric(b), "x2");
                let qx2 = quad(&x2);
                let kernel = qx2.pow(self.k);
                let base = qx2.mul(&quad(&conj_mat(Kind::Quadric(a), "x1")));
                let w = &k * int(2);
                let shift = &w - rat(a as i64 - 2, 2);
                Plan {
                    geom: PairGeometry {
                        big: blocks::quadric(a, b),
                        p1: vec![intern("x1")],
                        sources: vec![source(Kind::Quadric(a), intern("x1"), one.clone(), w)],
                        kernel,
                    },
                    rank: 1,
                    term: scalar_term(base, shift, int(-1)),
                }
            }
            PairId::Tensor => unreachable!(),
        };
        Ok(plan)
    }

    /// The holographic operator through conjugate degree `budget`.
    pub fn closed_form(&self, budget: u32) -> Result<PolyOperator> {
        let key = (self.clone(), budget);
        if let Some(op) = CLOSED.lock().unwrap().get(&key) {
            return Ok(op.clone());
        }
        let plan = self.plan()?;
        let mut op = PolyOperator::default();
        for src in &plan.geom.sources {
            op = op.with_weights(&src.dom);
        }
        for n in 0..=budget / 2 {
            for m in partitions_of(n, plan.rank) {
                let (c, p) = (plan.term)(&m);
                op.push(c, plan.geom.kernel.mul(&p));
            }
        }
        op.check_hygiene()?;
        CLOSED.lock().unwrap().insert(key, op.clone());
        Ok(op)
    }
}

static CLOSED: once_cell::sync::Lazy<Mutex<BTreeMap<(PairSpec, u32), PolyOperator>>> =
    once_cell::sync::Lazy::new(|| Mutex::new(BTreeMap::new()));

static SU33_KAPPA: once_cell::sync::Lazy<Rational> = once_cell::sync::Lazy::new(|| int(2));

fn intern(s: &str) -> &'static str {
    crate::exact::var::intern(s)
}
