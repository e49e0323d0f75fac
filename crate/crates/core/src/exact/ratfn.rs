use std::fmt;

use num::{One, Zero};

use super::coeff::{Coeff, ParamEnv};
use super::param::ParamScalar;
use super::poly::Poly;
use super::rational::{rat_pow, Rational};
use super::var::{Mono, Var};
use crate::error::{Error, Result};

/// Rational function in the formal parameters whose denominator is a product
/// of linear factors `(p + shift)^e`. Kept reduced, so equality is structural.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFn {
    num: Poly<Rational>,
    den: Vec<(Var, Rational, u32)>,
}

fn linear(v: &Var, s: &Rational) -> Poly<Rational> {
    let mut p = Poly::var(*v);
    p.add_term(Mono::one(), s.clone());
    p
}

impl RatFn {
    pub fn param(v: Var) -> Self {
        RatFn { num: Poly::var(v), den: Vec::new() }
    }

    pub fn from_poly(num: Poly<Rational>) -> Self {
        RatFn { num, den: Vec::new() }
    }

    pub fn num(&self) -> &Poly<Rational> {
        &self.num
    }

    pub fn den(&self) -> &[(Var, Rational, u32)] {
        &self.den
    }

    /// Cancels denominator factors that divide the numerator.
    fn reduce(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        let mut den = Vec::new();
        for (v, s, mut e) in std::mem::take(&mut self.den) {
            while e > 0 {
                match self.num.div_linear(&v, &s) {
                    Some(q) => {
                        self.num = q;
                        e -= 1;
                    }
                    None => break,
                }
            }
            if e > 0 {
                den.push((v, s, e));
            }
        }
        self.den = den;
        self
    }

    fn lcm(a: &[(Var, Rational, u32)], b: &[(Var, Rational, u32)]) -> Vec<(Var, Rational, u32)> {
        let mut out: Vec<(Var, Rational, u32)> = a.to_vec();
        for (v, s, e) in b.iter() {
            match out.iter_mut().find(|(w, t, _)| w == v && t == s) {
                Some(x) => x.2 = x.2.max(*e),
                None => out.push((*v, s.clone(), *e)),
            }
        }
        out.sort_by(|x, y| (x.0, &x.1).cmp(&(y.0, &y.1)));
        out
    }

    /// Numerator rescaled to the denominator `l` (which must be a multiple).
    fn lift(&self, l: &[(Var, Rational, u32)]) -> Poly<Rational> {
        let mut n = self.num.clone();
        for (v, s, e) in l.iter() {
            let have = self.den.iter().find(|(w, t, _)| w == v && t == s).map_or(0, |x| x.2);
            for _ in have..*e {
                n = n.mul(&linear(v, s));
            }
        }
        n
    }

    pub fn eval(&self, env: &ParamEnv) -> Result<Rational> {
        let n = self.num.eval_partial(&|v| env.get(v).cloned());
        if !n.is_constant() {
            return Err(Error::Unbound(n.vars().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")));
        }
        let mut acc = n.const_term();
        for (v, s, e) in self.den.iter() {
            let x = env.get(v).ok_or_else(|| Error::Unbound(v.to_string()))? + s;
            if Zero::is_zero(&x) {
                return Err(Error::Pole(v.to_string()));
            }
            acc *= rat_pow(&x, -(*e as i32));
        }
        Ok(acc)
    }
}

impl Coeff for RatFn {
    fn zero() -> Self {
        RatFn { num: Poly::zero(), den: Vec::new() }
    }
    fn one() -> Self {
        Self::from_rat(<Rational as One>::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        if self.den.is_empty() && o.den.is_empty() {
            return RatFn { num: self.num.add(&o.num), den: Vec::new() };
        }
        if self.den == o.den {
            return RatFn { num: self.num.add(&o.num), den: self.den.clone() }.reduce();
        }
        let l = Self::lcm(&self.den, &o.den);
        RatFn { num: self.lift(&l).add(&o.lift(&l)), den: l }.reduce()
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let num = self.num.mul(&o.num);
        if self.den.is_empty() && o.den.is_empty() {
            return RatFn { num, den: Vec::new() };
        }
        let mut den = self.den.clone();
        for (v, s, e) in o.den.iter() {
            match den.iter_mut().find(|(w, t, _)| w == v && t == s) {
                Some(x) => x.2 += e,
                None => den.push((*v, s.clone(), *e)),
            }
        }
        den.sort_by(|x, y| (x.0, &x.1).cmp(&(y.0, &y.1)));
        RatFn { num, den }.reduce()
    }
    fn neg(&self) -> Self {
        RatFn { num: self.num.neg(), den: self.den.clone() }
    }
    fn from_rat(r: Rational) -> Self {
        RatFn { num: Poly::from_rat(r), den: Vec::new() }
    }
    fn scale(&self, r: &Rational) -> Self {
        if Zero::is_zero(r) {
            return Self::zero();
        }
        RatFn { num: self.num.scale_rat(r), den: self.den.clone() }
    }
    fn as_rat(&self) -> Option<Rational> {
        if self.den.is_empty() && self.num.is_constant() {
            Some(self.num.const_term())
        } else {
            None
        }
    }
    fn from_param(p: &ParamScalar, _env: &ParamEnv) -> Result<Self> {
        let mut num = Poly::from_rat(p.c().clone());
        let mut den = Vec::new();
        for f in p.factors() {
            if f.mult > 0 {
                for _ in 0..f.mult {
                    num = num.mul(&linear(&f.param, &f.shift));
                }
            } else {
                den.push((f.param, f.shift.clone(), (-f.mult) as u32));
            }
        }
        den.sort_by(|x, y| (x.0, &x.1).cmp(&(y.0, &y.1)));
        Ok(RatFn { num, den }.reduce())
    }
    fn to_text(&self) -> String {
        let n = self.num.to_text();
        if self.den.is_empty() {
            return n;
        }
        let d: Vec<String> = self
            .den
            .iter()
            .map(|(v, s, e)| if *e == 1 { format!("({v}+{s})") } else { format!("({v}+{s})^{e}") })
            .collect();
        format!("({n})/({})", d.join("*"))
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}
