use std::collections::BTreeMap;
use std::fmt;

use super::coeff::Coeff;
use super::rational::{int, Rational};
use super::var::{Mono, Var};
use crate::error::{Error, Result};

/// Sparse multivariate polynomial with coefficients in `C`.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<C: Coeff = Rational> {
    t: BTreeMap<Mono, C>,
}

pub type MultiPoly = Poly<Rational>;

impl<C: Coeff> Default for Poly<C> {
    fn default() -> Self {
        Poly { t: BTreeMap::new() }
    }
}

impl<C: Coeff> Poly<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: C) -> Self {
        Self::term(Mono::one(), c)
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn from_rat(r: Rational) -> Self {
        Self::constant(C::from_rat(r))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(int(n))
    }

    pub fn var(v: Var) -> Self {
        Self::term(Mono::var(v, 1), C::one())
    }

    pub fn term(m: Mono, c: C) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.t.insert(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.t.is_empty()
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &C)> {
        self.t.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Mono, C)> {
        self.t.into_iter()
    }

    pub fn coeff(&self, m: &Mono) -> C {
        self.t.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Constant term.
    pub fn const_term(&self) -> C {
        self.coeff(&Mono::one())
    }

    pub fn is_constant(&self) -> bool {
        self.t.keys().all(|m| m.is_one())
    }

    pub fn add_term(&mut self, m: Mono, c: C) {
        if c.is_zero() {
            return;
        }
        match self.t.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_assign(&c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.add_assign(o);
        r
    }

    pub fn add_assign(&mut self, o: &Self) {
        for (m, c) in o.t.iter() {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in o.t.iter() {
            r.add_term(m.clone(), c.neg());
        }
        r
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for (m1, c1) in self.t.iter() {
            for (m2, c2) in o.t.iter() {
                r.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        r
    }

    /// Product keeping only monomials whose `pred`-degree is at most `max`.
    pub fn mul_trunc(&self, o: &Self, pred: &dyn Fn(&Var) -> bool, max: u32) -> Self {
        let mut r = Self::zero();
        let od: Vec<(u32, &Mono, &C)> = o.t.iter().map(|(m, c)| (m.deg_in(pred), m, c)).collect();
        for (m1, c1) in self.t.iter() {
            let d1 = m1.deg_in(pred);
            if d1 > max {
                continue;
            }
            for (d2, m2, c2) in od.iter() {
                if d1 + d2 <= max {
                    r.add_term(m1.mul(m2), c1.mul(c2));
                }
            }
        }
        r
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut r = Self::zero();
        for (m, a) in self.t.iter() {
            let v = a.mul(c);
            if !v.is_zero() {
                r.t.insert(m.clone(), v);
            }
        }
        r
    }

    pub fn scale_rat(&self, q: &Rational) -> Self {
        self.scale(&C::from_rat(q.clone()))
    }

    pub fn mul_mono(&self, mono: &Mono) -> Self {
        let mut r = Self::zero();
        for (m, c) in self.t.iter() {
            r.t.insert(m.mul(mono), c.clone());
        }
        r
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn pow_trunc(&self, n: u32, pred: &dyn Fn(&Var) -> bool, max: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul_trunc(self, pred, max);
        }
        acc
    }

    pub fn map_coeffs(&self, f: impl Fn(&C) -> C) -> Self {
        let mut r = Self::zero();
        for (m, c) in self.t.iter() {
            r.add_term(m.clone(), f(c));
        }
        r
    }

    pub fn try_map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> Result<D>) -> Result<Poly<D>> {
        let mut r = Poly::<D>::zero();
        for (m, c) in self.t.iter() {
            r.add_term(m.clone(), f(c)?);
        }
        Ok(r)
    }

    pub fn map_vars(&self, f: impl Fn(Var) -> Var) -> Self {
        let mut r = Self::zero();
        for (m, c) in self.t.iter() {
            r.add_term(m.map_vars(&f), c.clone());
        }
        r
    }

    /// Flips every variable between holomorphic and conjugate.
    pub fn conj(&self) -> Self {
        self.map_vars(Var::bar)
    }

    pub fn deg(&self) -> u32 {
        self.t.keys().map(|m| m.deg()).max().unwrap_or(0)
    }

    pub fn deg_in(&self, pred: impl Fn(&Var) -> bool) -> u32 {
        self.t.keys().map(|m| m.deg_in(&pred)).max().unwrap_or(0)
    }

    pub fn filter(&self, keep: impl Fn(&Mono) -> bool) -> Self {
        let mut r = Self::zero();
        for (m, c) in self.t.iter() {
            if keep(m) {
                r.t.insert(m.clone(), c.clone());
            }
        }
        r
    }

    /// Drops monomials whose `pred`-degree exceeds `max`.
    pub fn truncate(&self, pred: impl Fn(&Var) -> bool, max: u32) -> Self {
        self.filter(|m| m.deg_in(&pred) <= max)
    }

    /// The part homogeneous of `pred`-degree `d`.
    pub fn homogeneous(&self, pred: impl Fn(&Var) -> bool, d: u32) -> Self {
        self.filter(|m| m.deg_in(&pred) == d)
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.t.keys().flat_map(|m| m.pairs().iter().map(|p| p.0)).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// k-th partial derivative in `v`.
    pub fn diff(&self, v: &Var, k: u32) -> Self {
        let mut r = Self::zero();
        for (m, c) in self.t.iter() {
            let e = m.exp(v);
            if e < k {
                continue;
            }
            let mut f = 1i64;
            for t in 0..k {
                f *= (e - t) as i64;
            }
            let nm = m.div_var(v, k).unwrap();
            r.add_term(nm, c.scale(&int(f)));
        }
        r
    }

    /// Applies the monomial differential operator `d` (plain partials).
    pub fn diff_mono(&self, d: &Mono) -> Self {
        let mut r = self.clone();
        for &(v, e) in d.pairs() {
            r = r.diff(&v, e);
            if r.is_zero() {
                break;
            }
        }
        r
    }

    /// Substitutes variables by polynomials; variables mapped to `None` are kept.
    pub fn substitute(&self, f: &dyn Fn(&Var) -> Option<Poly<C>>) -> Self {
        self.substitute_trunc(f, &|_| false, u32::MAX)
    }

    /// Substitution that truncates intermediate products by `pred`-degree.
    pub fn substitute_trunc(
        &self,
        f: &dyn Fn(&Var) -> Option<Poly<C>>,
        pred: &dyn Fn(&Var) -> bool,
        max: u32,
    ) -> Self {
        let mut cache: BTreeMap<(Var, u32), Poly<C>> = BTreeMap::new();
        let mut r = Self::zero();
        for (m, c) in self.t.iter() {
            let mut acc = Poly::constant(c.clone());
            for &(v, e) in m.pairs() {
                let pv = match cache.get(&(v, e)) {
                    Some(p) => p.clone(),
                    None => {
                        let p = match f(&v) {
                            Some(base) => base.pow_trunc(e, pred, max),
                            None => Poly::term(Mono::var(v, e), C::one()),
                        };
                        cache.insert((v, e), p.clone());
                        p
                    }
                };
                acc = acc.mul_trunc(&pv, pred, max);
                if acc.is_zero() {
                    break;
                }
            }
            r.add_assign(&acc);
        }
        r
    }

    /// Substitution by polynomials of degree at most one.
    pub fn compose_linear(&self, f: &dyn Fn(&Var) -> Option<Poly<C>>) -> Result<Self> {
        for v in self.vars() {
            if let Some(p) = f(&v) {
                if p.deg() > 1 {
                    return Err(Error::Shape(format!("substitution for {v} is not linear")));
                }
            }
        }
        Ok(self.substitute(f))
    }

    /// Groups terms by the part of the monomial satisfying `pred`.
    pub fn collect_by(&self, pred: impl Fn(&Var) -> bool) -> BTreeMap<Mono, Poly<C>> {
        let mut out: BTreeMap<Mono, Poly<C>> = BTreeMap::new();
        for (m, c) in self.t.iter() {
            let (a, b) = m.split(&pred);
            out.entry(a).or_default().add_term(b, c.clone());
        }
        out
    }

    pub fn to_text(&self) -> String {
        if self.t.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.t.iter().enumerate() {
            if k > 0 {
                s.push_str(" + ");
            }
            let ct = c.to_text();
            if m.is_one() {
                s.push_str(&ct);
            } else if ct == "1" {
                s.push_str(&m.to_string());
            } else {
                s.push_str(&format!("({ct})*{m}"));
            }
        }
        s
    }
}

impl Poly<Rational> {
    /// Evaluates at rational values for the variables that `f` binds.
    pub fn eval_partial(&self, f: &dyn Fn(&Var) -> Option<Rational>) -> Self {
        self.substitute(&|v| f(v).map(Poly::from_rat))
    }

    /// Exact division by the linear factor `(v + a)`; `None` if it does not divide.
    pub fn div_linear(&self, v: &Var, a: &Rational) -> Option<Self> {
        // write self = sum_k c_k(other) v^k and do synthetic division
        let groups = self.collect_by(|w| w == v);
        let top = groups.keys().map(|m| m.exp(v)).max()?;
        let mut coeffs: Vec<Poly<Rational>> = vec![Poly::zero(); top as usize + 1];
        for (m, p) in groups {
            coeffs[m.exp(v) as usize] = p;
        }
        // quotient q_{k-1} = c_k + ... via q_{k-1} = c_k - a*q_k (descending)
        let mut q: Vec<Poly<Rational>> = vec![Poly::zero(); top as usize];
        let mut carry = Poly::zero();
        for k in (1..=top as usize).rev() {
            let cur = coeffs[k].add(&carry);
            q[k - 1] = cur.clone();
            carry = cur.scale_rat(&(-a));
        }
        if !coeffs[0].add(&carry).is_zero() {
            return None;
        }
        let mut r = Poly::zero();
        for (k, p) in q.into_iter().enumerate() {
            r.add_assign(&p.mul_mono(&Mono::var(*v, k as u32)));
        }
        Some(r)
    }
}

impl<C: Coeff> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl<C: Coeff> std::ops::Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, o: &Poly<C>) -> Poly<C> {
        Poly::add(self, o)
    }
}
impl<C: Coeff> std::ops::Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, o: &Poly<C>) -> Poly<C> {
        Poly::sub(self, o)
    }
}
impl<C: Coeff> std::ops::Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, o: &Poly<C>) -> Poly<C> {
        Poly::mul(self, o)
    }
}
impl<C: Coeff> std::ops::Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly::neg(self)
    }
}
