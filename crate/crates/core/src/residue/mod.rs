//! Submodule filtrations at reducible weights and residues of holographic operators.

use num::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{default_param, int, partitions_of, LimitSignal, MultiPoly, ParamEnv, ParamScalar, Partition, Rational, Var};
use crate::jordan::Kind;
use crate::lie::{intertwine_inputs, monomial_basis, FirstOrder, IntertwineReport};
use crate::sbo::{holographic_spaces, subalgebra_pairs, OpBlock, PairId, PairSpec, PolyOperator};
use crate::spaces::hks_project;

/// `M_i(lambda)`: the sum of `P_m` with `m_i <= (d/2)(i-1) - lambda`. `M_i = 0` for `i <= 0`
/// and `M_i` is everything for `i > r`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SubmoduleSpec {
    pub kind: Kind,
    pub index: i64,
    #[serde(serialize_with = "crate::exact::json::ser_rat")]
    pub weight: Rational,
}

impl SubmoduleSpec {
    pub fn new(kind: Kind, index: i64, weight: Rational) -> Self {
        SubmoduleSpec { kind, index, weight }
    }

    pub fn is_zero(&self) -> bool {
        self.index <= 0
    }

    pub fn is_all(&self) -> bool {
        self.index > self.kind.rank() as i64
    }

    pub fn contains(&self, m: &Partition) -> bool {
        if self.is_zero() {
            return false;
        }
        if self.is_all() {
            return true;
        }
        let i = self.index;
        let bound = self.kind.d() * int(i - 1) / int(2) - &self.weight;
        int(m.part(i as usize - 1) as i64) <= bound
    }
}

/// The `M_i` component of `f` in the variable group `g`; other variables are coefficients.
pub fn submodule_project(spec: &SubmoduleSpec, g: &str, f: &MultiPoly) -> Result<MultiPoly> {
    if spec.is_zero() {
        return Ok(MultiPoly::zero());
    }
    if spec.is_all() {
        return Ok(f.clone());
    }
    let in_g = |v: &Var| !v.conj && v.g == g;
    let mut out = MultiPoly::zero();
    for n in 0..=f.deg_in(in_g) {
        let fn_ = f.homogeneous(in_g, n);
        if fn_.is_zero() {
            continue;
        }
        for m in partitions_of(n, spec.kind.rank()) {
            if spec.contains(&m) {
                out.add_assign(&hks_project(spec.kind, g, &fn_, &m)?);
            }
        }
    }
    Ok(out)
}

/// `lim (lambda - lambda0)^order F_lambda`, term by term. Blocks whose limit diverges are kept
/// apart; applying the residue to an input they do not annihilate is an error.
#[derive(Clone, Debug)]
pub struct ResidueOperator {
    pub at: Rational,
    pub order: u32,
    pub op: PolyOperator,
    pub divergent: PolyOperator,
}

impl ResidueOperator {
    pub fn apply(&self, f: &MultiPoly) -> Result<MultiPoly> {
        let env = ParamEnv::new();
        for b in &self.divergent.blocks {
            let single = PolyOperator {
                blocks: vec![OpBlock { coeff: ParamScalar::one(), poly: b.poly.clone() }],
                weights: self.divergent.weights.clone(),
                restrict: self.divergent.restrict.clone(),
            };
            if !single.apply(f, &env)?.is_zero() {
                return Err(Error::OrderTooSmall);
            }
        }
        self.op.apply(f, &env)
    }
}

/// Residue of `pair`'s operator at `lambda0`, through conjugate degree `budget`.
pub fn residue_operator(pair: &PairSpec, lam0: &Rational, order: u32, budget: u32) -> Result<ResidueOperator> {
    let full = pair.closed_form(budget)?;
    let p = default_param();
    let mut op = PolyOperator { weights: full.weights.clone(), restrict: full.restrict.clone(), blocks: vec![] };
    let mut divergent = op.clone();
    for b in &full.blocks {
        match b.coeff.limit(&p, lam0, order as i32) {
            Ok(c) => op.push(ParamScalar::constant(c), b.poly.clone()),
            Err(LimitSignal::Vanishes) => {}
            Err(LimitSignal::Diverges(_)) => divergent.blocks.push(b.clone()),
        }
    }
    Ok(ResidueOperator { at: lam0.clone(), order, op, divergent })
}

/// Largest pole order at `lambda0` among the coefficients through conjugate degree `budget`.
pub fn pole_order(pair: &PairSpec, lam0: &Rational, budget: u32) -> Result<u32> {
    let p = default_param();
    let op = pair.closed_form(budget)?;
    Ok(op.blocks.iter().map(|b| (-b.coeff.order_at(&p, lam0)).max(0) as u32).max().unwrap_or(0))
}

fn ceil_i(r: &Rational) -> i64 {
    r.ceil().to_integer().to_i64().expect("small")
}

/// Which part of a product of source modules an input is drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Region {
    /// `M_a (x) O + O (x) M_a`
    Sum(i64),
    /// `M_a (x) M_a`
    Prod(i64),
}

/// The residue family of a pair at `mu`: index window, order shift and the submodule pattern.
#[derive(Clone, Debug, Serialize)]
pub struct ResidueFamily {
    pub pair: String,
    #[serde(serialize_with = "crate::exact::json::ser_rat")]
    pub mu: Rational,
    #[serde(serialize_with = "crate::exact::json::ser_rat")]
    pub lambda0: Rational,
    /// Weight of the source modules at `lambda0`.
    #[serde(serialize_with = "crate::exact::json::ser_rat")]
    pub source_weight: Rational,
    pub shift: i64,
    pub i_min: i64,
    pub i_max: i64,
    pub expected_pole_order: u32,
    half: bool,
}

impl ResidueFamily {
    pub fn new(pair: &PairSpec, mu: &Rational) -> Result<Self> {
        let kl = int((pair.k + pair.l) as i64);
        let lambda0 = mu - &kl;
        let r = *pair.sizes.iter().min().unwrap_or(&0) as i64;
        let (shift, i_max, half, source_weight) = match pair.id {
            PairId::UUU => {
                if !mu.is_integer() {
                    return Err(Error::Unsupported("u-uu residues need an integer mu".into()));
                }
                (ceil_i(mu).max(0), r, false, mu.clone())
            }
            PairId::SpU => {
                let two = mu * int(2);
                if !two.is_integer() {
                    return Err(Error::Unsupported("sp-u residues need mu in Z/2".into()));
                }
                let half = !mu.is_integer();
                let top = if half { (r + 1) / 2 } else { r / 2 };
                (ceil_i(mu).max(0), top, half, two)
            }
            _ => return Err(Error::Unsupported(format!("residues for {}", pair.id))),
        };
        let expected = (i_max - shift).max(0) as u32;
        Ok(ResidueFamily {
            pair: pair.label(),
            mu: mu.clone(),
            lambda0,
            source_weight,
            shift,
            i_min: shift,
            i_max,
            expected_pole_order: expected,
            half,
        })
    }

    /// Order of the limit defining the `i`-th residue.
    pub fn order(&self, i: i64) -> Result<u32> {
        if i < self.i_min || i > self.i_max.max(self.i_min) {
            return Err(Error::Shape(format!("residue index {i} outside [{}, {}]", self.i_min, self.i_max)));
        }
        Ok((i - self.shift) as u32)
    }

    /// `(defined on, vanishes on, intertwines on)`; `None` for the last means the whole module.
    pub fn regions(&self, id: PairId, i: i64) -> (Region, Region, Option<Region>) {
        let top = i == self.i_max;
        match (id, self.half) {
            (PairId::UUU, _) => (Region::Sum(i + 1), Region::Sum(i), Some(Region::Prod(i + 1))),
            (_, false) => (Region::Sum(2 * i + 2), Region::Sum(2 * i), (!top).then_some(Region::Prod(2 * i + 1))),
            (_, true) => (Region::Sum(2 * i + 1), Region::Sum(2 * i - 1), (!top).then_some(Region::Prod(2 * i))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidueReport {
    pub family: ResidueFamily,
    pub index: i64,
    pub order: u32,
    pub pole_order: u32,
    pub degree: u32,
    pub defined_checked: usize,
    pub defined_failed: usize,
    pub vanishing_checked: usize,
    pub vanishing_failed: usize,
    pub intertwine: IntertwineReport,
}

impl ResidueReport {
    pub fn ok(&self) -> bool {
        self.pole_order == self.family.expected_pole_order
            && self.defined_failed == 0
            && self.vanishing_failed == 0
            && self.intertwine.failed == 0
    }
}

/// HKS-homogeneous pieces of the monomials of degree `<= n` in one source factor.
fn pieces(kind: Kind, g: &'static str, vars: &[Var], n: u32) -> Result<Vec<(MultiPoly, Partition)>> {
    let mut out: Vec<(MultiPoly, Partition)> = Vec::new();
    for mono in monomial_basis(vars, n) {
        let d = mono.deg();
        for m in partitions_of(d, kind.rank()) {
            let p = hks_project(kind, g, &mono, &m)?;
            if !p.is_zero() && !out.iter().any(|(q, mm)| *mm == m && *q == p) {
                out.push((p, m));
            }
        }
    }
    Ok(out)
}

fn in_region(specs: &[SubmoduleSpec], parts: &[&Partition], region: Region) -> bool {
    let member = |a: i64| parts.iter().zip(specs).map(|(m, s)| SubmoduleSpec { index: a, ..s.clone() }.contains(m)).collect::<Vec<_>>();
    match region {
        Region::Sum(a) => member(a).into_iter().any(|x| x),
        Region::Prod(a) => member(a).into_iter().all(|x| x),
    }
}

/// Well-definedness, vanishing on the smaller submodule and intertwining on the declared
/// quotient for the `i`-th residue at `mu`, with inputs of degree `<= n`.
pub fn residue_property_check(pair: &PairSpec, mu: &Rational, i: i64, n: u32) -> Result<ResidueReport> {
    let fam = ResidueFamily::new(pair, mu)?;
    let order = fam.order(i)?;
    let budget = n + 1;
    let res = residue_operator(pair, &fam.lambda0, order, budget)?;
    let pole = pole_order(pair, &fam.lambda0, 2 * (pair.sizes.iter().sum::<usize>() as u32 + 2))?;
    let geom = pair.geometry()?;
    let specs: Vec<SubmoduleSpec> = geom.sources.iter().map(|s| SubmoduleSpec::new(s.factor.kind, 0, fam.source_weight.clone())).collect();

    // products of per-factor pieces
    let mut inputs: Vec<(MultiPoly, Vec<Partition>)> = vec![(MultiPoly::one(), vec![])];
    for s in &geom.sources {
        let ps = pieces(s.factor.kind, s.factor.group, &s.dom.vars(), n)?;
        let mut next = Vec::new();
        for (f, ms) in &inputs {
            for (p, m) in &ps {
                if f.deg() + p.deg() <= n {
                    let mut mm = ms.clone();
                    mm.push(m.clone());
                    next.push((f.mul(p), mm));
                }
            }
        }
        inputs = next;
    }

    let (defined, vanish, inter) = fam.regions(pair.id, i);
    let select = |r: Region| -> Vec<MultiPoly> {
        inputs.iter().filter(|(_, ms)| in_region(&specs, &ms.iter().collect::<Vec<_>>(), r)).map(|(f, _)| f.clone()).collect()
    };

    let dom_in = select(defined);
    let mut defined_failed = 0;
    for f in &dom_in {
        if res.apply(f).is_err() {
            defined_failed += 1;
        }
    }
    let van_in = select(vanish);
    let mut vanishing_failed = 0;
    for f in &van_in {
        match res.apply(f) {
            Ok(g) if g.is_zero() => {}
            _ => vanishing_failed += 1,
        }
    }

    let int_in = match inter {
        Some(r) => select(r),
        None => inputs.iter().map(|(f, _)| f.clone()).collect(),
    };
    let (src, big) = holographic_spaces(&geom, &fam.lambda0, &crate::exact::rone())?;
    let doms: Vec<&crate::jordan::Domain> = geom.sources.iter().map(|s| &s.dom).collect();
    let ops: Vec<(String, FirstOrder, FirstOrder)> = subalgebra_pairs(&geom.big, &doms)
        .iter()
        .map(|(x, y)| Ok((format!("{x:?}"), src.dpi(x)?, big.dpi(y)?)))
        .collect::<Result<_>>()?;
    let apply = |f: &MultiPoly| res.apply(f);
    let intertwine = intertwine_inputs(&apply, &int_in, &ops, n)?;

    Ok(ResidueReport {
        family: fam,
        index: i,
        order,
        pole_order: pole,
        degree: n,
        defined_checked: dom_in.len(),
        defined_failed,
        vanishing_checked: van_in.len(),
        vanishing_failed,
        intertwine,
    })
}

/// Expected pole order at `mu` for the wired pairs.
pub fn expected_pole_order(pair: &PairSpec, mu: &Rational) -> Result<u32> {
    Ok(ResidueFamily::new(pair, mu)?.expected_pole_order)
}
