//! Scalar-type action of `g = p+ + k + p-` on polynomials, calibrated by bracket relations.

mod check;

pub use check::{intertwine_check, intertwine_inputs, intertwine_ops, monomial_basis, FromParamOp, InterFailure, IntertwineReport};

use std::collections::HashMap;
use std::sync::Mutex;

use once_cell::sync::Lazy;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{fmt_rat, int, rat, rzero, Coeff, MultiPoly, Poly, Rational, Var};
use crate::jordan::{d_fn, q_fn, Domain, PMat};

/// Element of `g^C` for one factor: `PLUS(b) = b`, `KAY(a,b) = [a, theta b]`, `MINUS(b) = theta b`.
#[derive(Clone, Debug, PartialEq)]
pub enum LieElement {
    Plus(Vec<Rational>),
    Kay(Vec<Rational>, Vec<Rational>),
    Minus(Vec<Rational>),
}

/// Element of a product algebra: a sum of per-factor elements.
pub type ProdElement = Vec<(usize, LieElement)>;

/// Calibrated constants of the action.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ActionConvention {
    pub s0: String,
    pub s1: String,
    pub s2: String,
    pub c1: String,
    pub c2: String,
    #[serde(skip)]
    vals: [Rational; 5],
}

impl ActionConvention {
    pub fn new(s0: Rational, s1: Rational, s2: Rational, c1: Rational, c2: Rational) -> Self {
        ActionConvention {
            s0: fmt_rat(&s0),
            s1: fmt_rat(&s1),
            s2: fmt_rat(&s2),
            c1: fmt_rat(&c1),
            c2: fmt_rat(&c2),
            vals: [s0, s1, s2, c1, c2],
        }
    }

    pub fn values(&self) -> &[Rational; 5] {
        &self.vals
    }
}

/// First-order differential operator `a + sum_v c_v d/dv`.
#[derive(Clone, Debug, PartialEq)]
pub struct FirstOrder<C: Coeff = Rational> {
    pub a: Poly<C>,
    pub v: Vec<(Var, Poly<C>)>,
}

impl<C: Coeff> FirstOrder<C> {
    pub fn zero() -> Self {
        FirstOrder { a: Poly::zero(), v: Vec::new() }
    }

    pub fn apply(&self, f: &Poly<C>) -> Poly<C> {
        let mut out = self.a.mul(f);
        for (x, c) in &self.v {
            if c.is_zero() {
                continue;
            }
            let d = f.diff(x, 1);
            if !d.is_zero() {
                out.add_assign(&c.mul(&d));
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut v = self.v.clone();
        for (x, c) in &o.v {
            match v.iter_mut().find(|(y, _)| y == x) {
                Some(e) => e.1 = e.1.add(c),
                None => v.push((*x, c.clone())),
            }
        }
        FirstOrder { a: self.a.add(&o.a), v }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        FirstOrder { a: self.a.scale_rat(r), v: self.v.iter().map(|(x, c)| (*x, c.scale_rat(r))).collect() }
    }
}

impl FirstOrder<Rational> {
    /// Moves parameter variables into rational-function coefficients.
    pub fn lift(&self, is_param: &dyn Fn(&Var) -> bool) -> FirstOrder<crate::exact::RatFn> {
        let l = |p: &MultiPoly| crate::expansion::lift_params(p, is_param);
        FirstOrder { a: l(&self.a), v: self.v.iter().map(|(x, c)| (*x, l(c))).collect() }
    }

    /// Specializes parameter variables to rationals.
    pub fn specialize(&self, env: &crate::exact::ParamEnv) -> Self {
        let s = |p: &MultiPoly| p.eval_partial(&|v| env.get(v).cloned());
        FirstOrder { a: s(&self.a), v: self.v.iter().map(|(x, c)| (*x, s(c))).collect() }
    }
}

/// One factor of a representation space: a domain with a weight polynomial in the parameters.
#[derive(Clone, Debug)]
pub struct SpaceFactor {
    pub dom: Domain,
    pub weight: MultiPoly,
}

/// Tensor product of scalar holomorphic representations.
#[derive(Clone, Debug)]
pub struct Space {
    pub factors: Vec<SpaceFactor>,
}

impl Space {
    pub fn single(dom: Domain, weight: MultiPoly) -> Self {
        Space { factors: vec![SpaceFactor { dom, weight }] }
    }

    pub fn vars(&self) -> Vec<Var> {
        self.factors.iter().flat_map(|f| f.dom.vars()).collect()
    }

    /// `d pi(X)` as a first-order operator; requires calibrated factors.
    pub fn dpi(&self, x: &ProdElement) -> Result<FirstOrder> {
        let mut acc = FirstOrder::zero();
        for (i, e) in x {
            let f = &self.factors[*i];
            let conv = convention(&f.dom)?;
            acc = acc.add(&dpi_with(&f.dom, &f.weight, &conv, e));
        }
        Ok(acc)
    }
}

fn point(dom: &Domain, b: &[Rational]) -> PMat<Rational> {
    dom.matrix_of_rat(b)
}

fn inner_rat(dom: &Domain, a: &[Rational], b: &[Rational]) -> Rational {
    dom.coords.iter().zip(a.iter().zip(b.iter())).map(|(c, (x, y))| &c.weight * x * y).sum()
}

/// Pieces of `d pi(X)`: (parameter-free derivative part, weight-multiplied part without constants).
fn pieces(dom: &Domain, weight: &MultiPoly, e: &LieElement) -> (Vec<(Var, MultiPoly)>, MultiPoly) {
    let vars = dom.vars();
    let x: PMat<Rational> = dom.sym_point();
    match e {
        LieElement::Plus(b) => {
            let v = vars.iter().zip(b.iter()).map(|(x, c)| (*x, MultiPoly::from_rat(c.clone()))).collect();
            (v, MultiPoly::zero())
        }
        LieElement::Kay(a, b) => {
            let dx = d_fn(dom.kind, &point(dom, a), &point(dom, b), &x);
            let c = dom.coords_of(&dx);
            let ip = inner_rat(dom, a, b);
            (vars.iter().copied().zip(c).collect(), weight.scale_rat(&ip))
        }
        LieElement::Minus(b) => {
            let qx = q_fn(dom.kind, &x, &point(dom, b));
            let c = dom.coords_of(&qx);
            let bp = point(dom, b);
            let ip = x.frobenius(&bp).scale_rat(&dom.kind.kappa());
            (vars.iter().copied().zip(c).collect(), weight.mul(&ip))
        }
    }
}

/// `d pi(X)` with explicit constants `(s0, s1, s2, c1, c2)`.
pub fn dpi_with(dom: &Domain, weight: &MultiPoly, conv: &ActionConvention, e: &LieElement) -> FirstOrder {
    let [s0, s1, s2, c1, c2] = conv.values();
    let (v, a) = pieces(dom, weight, e);
    let (dv, da) = match e {
        LieElement::Plus(_) => (s0, &rzero()),
        LieElement::Kay(..) => (s1, s2),
        LieElement::Minus(_) => (c2, c1),
    };
    FirstOrder { a: a.scale_rat(da), v: v.into_iter().map(|(x, c)| (x, c.scale_rat(dv))).collect() }
}

/// `d pi(X) f` for a calibrated domain.
pub fn dpi_apply(dom: &Domain, weight: &MultiPoly, e: &LieElement, f: &MultiPoly) -> Result<MultiPoly> {
    let conv = convention(dom)?;
    Ok(dpi_with(dom, weight, &conv, e).apply(f))
}

/// Bracket `[X, Y]` in `g^C`, as a signed list of elements.
pub fn bracket(dom: &Domain, x: &LieElement, y: &LieElement) -> Vec<(Rational, LieElement)> {
    use LieElement::*;
    let dc = |a: &[Rational], b: &[Rational], c: &[Rational]| -> Vec<Rational> {
        let r = d_fn(dom.kind, &point(dom, a), &point(dom, b), &point(dom, c));
        dom.coords_of(&r).into_iter().map(|p| p.const_term()).collect()
    };
    let one = int(1);
    let neg = int(-1);
    match (x, y) {
        (Plus(_), Plus(_)) | (Minus(_), Minus(_)) => vec![],
        (Plus(b), Minus(c)) => vec![(one, Kay(b.clone(), c.clone()))],
        (Minus(_), Plus(_)) => bracket(dom, y, x).into_iter().map(|(s, e)| (-s, e)).collect(),
        (Kay(a, b), Plus(c)) => vec![(neg, Plus(dc(a, b, c)))],
        (Kay(a, b), Minus(c)) => vec![(one, Minus(dc(b, a, c)))],
        (Plus(_), Kay(..)) | (Minus(_), Kay(..)) => bracket(dom, y, x).into_iter().map(|(s, e)| (-s, e)).collect(),
        (Kay(a, b), Kay(c, d)) => vec![(neg, Kay(dc(a, b, c), d.clone())), (one, Kay(c.clone(), dc(b, a, d)))],
    }
}

/// Coordinate unit vectors of the domain.
pub fn unit_vectors(dom: &Domain) -> Vec<Vec<Rational>> {
    let n = dom.dim();
    (0..n)
        .map(|i| {
            let mut v = vec![rzero(); n];
            v[i] = int(1);
            v
        })
        .collect()
}

/// The spanning set `{PLUS(e_i)}, {MINUS(e_i)}, {KAY(e_i, e_j)}`.
pub fn spanning_set(dom: &Domain) -> Vec<LieElement> {
    let u = unit_vectors(dom);
    let mut out: Vec<LieElement> = u.iter().map(|b| LieElement::Plus(b.clone())).collect();
    out.extend(u.iter().map(|b| LieElement::Minus(b.clone())));
    for a in &u {
        for b in &u {
            out.push(LieElement::Kay(a.clone(), b.clone()));
        }
    }
    out
}

static CONVENTIONS: Lazy<Mutex<HashMap<String, ActionConvention>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// The stored convention for `dom`, or `UNCALIBRATED`.
pub fn convention(dom: &Domain) -> Result<ActionConvention> {
    CONVENTIONS.lock().unwrap().get(&dom.name).cloned().ok_or(Error::Uncalibrated)
}

fn lambda_weight() -> MultiPoly {
    MultiPoly::var(crate::exact::default_param())
}

/// Relation pairs checked during calibration. `KAY`-`KAY` brackets follow from the
/// others by the Jacobi identity; they are included for domains of dimension at most 6.
fn relation_pairs(dom: &Domain) -> Vec<(LieElement, LieElement)> {
    let span = spanning_set(dom);
    let mut out = Vec::new();
    for x in &span {
        for y in &span {
            let keep = match (x, y) {
                (LieElement::Plus(_), LieElement::Minus(_)) => true,
                (LieElement::Plus(a), LieElement::Plus(b)) | (LieElement::Minus(a), LieElement::Minus(b)) => a < b,
                (LieElement::Kay(..), LieElement::Plus(_)) | (LieElement::Kay(..), LieElement::Minus(_)) => true,
                (LieElement::Kay(..), LieElement::Kay(..)) => dom.dim() <= 6 && format!("{x:?}") < format!("{y:?}"),
                _ => false,
            };
            if keep {
                out.push((x.clone(), y.clone()));
            }
        }
    }
    out
}

type Pieces = (Vec<(Var, MultiPoly)>, MultiPoly, u8);

fn element_pieces(dom: &Domain, w: &MultiPoly, e: &LieElement) -> Pieces {
    let (v, a) = pieces(dom, w, e);
    let tag = match e {
        LieElement::Plus(_) => 0,
        LieElement::Kay(..) => 1,
        LieElement::Minus(_) => 2,
    };
    (v, a, tag)
}

fn assemble(p: &Pieces, conv: &ActionConvention) -> FirstOrder {
    let [s0, s1, s2, c1, c2] = conv.values();
    let (dv, da) = match p.2 {
        0 => (s0, None),
        1 => (s1, Some(s2)),
        _ => (c2, Some(c1)),
    };
    let a = match da {
        Some(r) => p.1.scale_rat(r),
        None => MultiPoly::zero(),
    };
    FirstOrder { a, v: p.0.iter().map(|(x, c)| (*x, c.scale_rat(dv))).collect() }
}

/// Relation pairs with precomputed pieces: `(X, Y, [X,Y])`.
struct Prepared(Vec<(Pieces, Pieces, Vec<(Rational, Pieces)>)>);

fn prepare(dom: &Domain) -> Prepared {
    let w = lambda_weight();
    Prepared(
        relation_pairs(dom)
            .into_iter()
            .map(|(x, y)| {
                let br = bracket(dom, &x, &y).into_iter().map(|(s, e)| (s, element_pieces(dom, &w, &e))).collect();
                (element_pieces(dom, &w, &x), element_pieces(dom, &w, &y), br)
            })
            .collect(),
    )
}

fn prepared_hold(prep: &Prepared, conv: &ActionConvention, monos: &[MultiPoly]) -> bool {
    let ops: Vec<(FirstOrder, FirstOrder, FirstOrder)> = prep
        .0
        .iter()
        .map(|(x, y, br)| {
            let mut r = FirstOrder::zero();
            for (s, p) in br {
                r = r.add(&assemble(p, conv).scale(s));
            }
            (assemble(x, conv), assemble(y, conv), r)
        })
        .collect();
    for f in monos {
        for (dx, dy, r) in &ops {
            let lhs = dx.apply(&dy.apply(f)).sub(&dy.apply(&dx.apply(f)));
            if lhs != r.apply(f) {
                return false;
            }
        }
    }
    true
}

/// Checks `[dpi X, dpi Y] f = dpi([X,Y]) f` on the given monomials.
pub fn relations_hold(dom: &Domain, conv: &ActionConvention, monos: &[MultiPoly]) -> bool {
    prepared_hold(&prepare(dom), conv, monos)
}

/// Searches `{+-1, +-1/2, +-2}` for `s1, c1, c2` (with `s0 = -1`, `s2 = 1` fixed)
/// and stores the unique consistent convention for `dom`.
pub fn calibrate(dom: &Domain, n: u32) -> Result<ActionConvention> {
    if let Ok(c) = convention(dom) {
        return Ok(c);
    }
    let conv = search(dom, n)?;
    CONVENTIONS.lock().unwrap().insert(dom.name.clone(), conv.clone());
    Ok(conv)
}

/// The candidate search without storing the result.
pub fn search(dom: &Domain, n: u32) -> Result<ActionConvention> {
    let cands = [int(1), int(-1), rat(1, 2), rat(-1, 2), int(2), int(-2)];
    let monos = monomial_basis(&dom.vars(), n);
    let low: Vec<MultiPoly> = monos.iter().filter(|m| m.deg() <= 1).cloned().collect();
    let prep = prepare(dom);
    let mut found = Vec::new();
    for s1 in &cands {
        for c1 in &cands {
            for c2 in &cands {
                let conv = ActionConvention::new(int(-1), s1.clone(), int(1), c1.clone(), c2.clone());
                if prepared_hold(&prep, &conv, &low) && prepared_hold(&prep, &conv, &monos) {
                    found.push(conv);
                }
            }
        }
    }
    match found.len() {
        0 => Err(Error::CalibrationFail),
        1 => Ok(found.pop().unwrap()),
        k => Err(Error::CalibrationAmbiguous(k)),
    }
}

