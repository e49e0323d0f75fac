use std::fmt;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use super::coeff::ParamEnv;
use super::partition::Partition;
use super::rational::{fmt_rat, int, parse_rat, rat_pow, Rational};
use super::var::Var;
use crate::error::{Error, Result};

/// Name of the default formal parameter.
pub const DEFAULT_PARAM: &str = "lambda";

pub fn default_param() -> Var {
    Var::param(DEFAULT_PARAM)
}

/// One linear factor `(p + shift)^mult`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Factor {
    pub param: Var,
    pub shift: Rational,
    pub mult: i32,
}

/// `c * prod (p_i + shift_i)^mult_i`, kept factored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamScalar {
    c: Rational,
    factors: Vec<Factor>,
}

/// Outcome of a limit that is not a finite nonzero number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LimitSignal {
    Vanishes,
    Diverges(i32),
}

impl ParamScalar {
    pub fn constant(c: Rational) -> Self {
        ParamScalar { c, factors: Vec::new() }
    }

    pub fn zero() -> Self {
        Self::constant(Rational::zero())
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The factor `(p + shift)`.
    pub fn linear(param: Var, shift: Rational) -> Self {
        ParamScalar { c: Rational::one(), factors: vec![Factor { param, shift, mult: 1 }] }
    }

    pub fn from_parts(c: Rational, factors: impl IntoIterator<Item = (Var, Rational, i32)>) -> Self {
        let mut p = Self::constant(c);
        for (param, shift, mult) in factors {
            p = p.mul(&ParamScalar { c: Rational::one(), factors: vec![Factor { param, shift, mult }] });
        }
        p
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut fs: Vec<Factor> = self.factors.clone();
        for f in o.factors.iter() {
            match fs.iter_mut().find(|g| g.param == f.param && g.shift == f.shift) {
                Some(g) => g.mult += f.mult,
                None => fs.push(f.clone()),
            }
        }
        fs.retain(|f| f.mult != 0);
        fs.sort();
        ParamScalar { c: &self.c * &o.c, factors: fs }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        ParamScalar { c: &self.c * r, factors: self.factors.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Pole("0".into()));
        }
        Ok(ParamScalar {
            c: self.c.recip(),
            factors: self
                .factors
                .iter()
                .map(|f| Factor { param: f.param, shift: f.shift.clone(), mult: -f.mult })
                .collect(),
        })
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Total degree in the parameters (numerator minus denominator).
    pub fn degree(&self) -> i32 {
        self.factors.iter().map(|f| f.mult).sum()
    }

    pub fn params(&self) -> Vec<Var> {
        let mut v: Vec<Var> = self.factors.iter().map(|f| f.param).collect();
        v.dedup();
        v
    }

    pub fn eval(&self, env: &ParamEnv) -> Result<Rational> {
        let mut acc = self.c.clone();
        if acc.is_zero() {
            return Ok(acc);
        }
        for f in self.factors.iter() {
            let v = env.get(&f.param).ok_or_else(|| Error::Unbound(f.param.to_string()))?;
            let base = v + &f.shift;
            if base.is_zero() && f.mult < 0 {
                return Err(Error::Pole(format!("{}={}", f.param, v)));
            }
            acc *= rat_pow(&base, f.mult);
        }
        Ok(acc)
    }

    /// Evaluates at a single value of the default parameter.
    pub fn eval_at(&self, x: &Rational) -> Result<Rational> {
        let mut env = ParamEnv::new();
        for p in self.params() {
            env.insert(p, x.clone());
        }
        self.eval(&env)
    }

    /// Multiplicity of the factor vanishing at `param = x0` (negative for poles).
    pub fn order_at(&self, param: &Var, x0: &Rational) -> i32 {
        let s = -x0;
        self.factors.iter().filter(|f| &f.param == param && f.shift == s).map(|f| f.mult).sum()
    }

    /// `lim_{p -> x0} (p - x0)^order * self`, exactly.
    pub fn limit(&self, param: &Var, x0: &Rational, order: i32) -> std::result::Result<Rational, LimitSignal> {
        if self.is_zero() {
            return Ok(Rational::zero());
        }
        let rem = order + self.order_at(param, x0);
        if rem > 0 {
            return Err(LimitSignal::Vanishes);
        }
        if rem < 0 {
            return Err(LimitSignal::Diverges(-rem));
        }
        let s = -x0;
        let mut acc = self.c.clone();
        for f in self.factors.iter() {
            if &f.param == param && f.shift == s {
                continue;
            }
            if &f.param != param {
                return Err(LimitSignal::Diverges(0));
            }
            acc *= rat_pow(&(x0 + &f.shift), f.mult);
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> ParamScalarJson {
        ParamScalarJson {
            c: fmt_rat(&self.c),
            factors: self
                .factors
                .iter()
                .map(|f| FactorJson {
                    param: if f.param.g == DEFAULT_PARAM { None } else { Some(f.param.to_string()) },
                    shift: fmt_rat(&f.shift),
                    mult: f.mult,
                })
                .collect(),
        }
    }

    pub fn from_json(j: &ParamScalarJson) -> Result<Self> {
        let mut fs = Vec::new();
        for f in j.factors.iter() {
            let param = match &f.param {
                Some(p) => Var::parse(p)?,
                None => default_param(),
            };
            fs.push((param, parse_rat(&f.shift)?, f.mult));
        }
        Ok(Self::from_parts(parse_rat(&j.c)?, fs))
    }

    pub fn to_latex(&self) -> String {
        let mut num = Vec::new();
        let mut den = Vec::new();
        for f in self.factors.iter() {
            let name = match f.param.g {
                "lambda" => "\\lambda".to_string(),
                "mu" => "\\mu".to_string(),
                "nu" => "\\nu".to_string(),
                g => g.to_string(),
            };
            let base = if f.shift.is_zero() {
                name
            } else if f.shift > Rational::zero() {
                format!("({}+{})", name, latex_rat(&f.shift))
            } else {
                format!("({}-{})", name, latex_rat(&-f.shift.clone()))
            };
            let e = f.mult.abs();
            let t = if e == 1 { base } else { format!("{base}^{{{e}}}") };
            if f.mult > 0 {
                num.push(t);
            } else {
                den.push(t);
            }
        }
        let cn = latex_rat(&self.c.numer().clone().into());
        let cd = self.c.denom().clone();
        let mut top = num.join("");
        if top.is_empty() {
            top = cn.clone();
        } else if cn == "-1" {
            top = format!("-{top}");
        } else if cn != "1" {
            top = format!("{cn}{top}");
        }
        let mut bot = den.join("");
        if cd != num::BigInt::one() {
            bot = format!("{cd}{bot}");
        }
        if bot.is_empty() {
            top
        } else {
            format!("\\frac{{{top}}}{{{bot}}}")
        }
    }
}

fn latex_rat(r: &Rational) -> String {
    if r.is_integer() {
        r.to_string()
    } else {
        format!("\\tfrac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

impl fmt::Display for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.c)?;
        for fa in self.factors.iter() {
            write!(f, "*({}+{})^{}", fa.param, fa.shift, fa.mult)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorJson {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub param: Option<String>,
    pub shift: String,
    pub mult: i32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamScalarJson {
    pub c: String,
    pub factors: Vec<FactorJson>,
}

/// `(p + s)_{m,d} = prod_j (p + s_j - (d/2)(j-1))_{m_j}`.
pub fn pochhammer(shifts: &[Rational], m: &Partition, d: &Rational) -> ParamScalar {
    pochhammer_in(default_param(), shifts, m, d)
}

pub fn pochhammer_in(param: Var, shifts: &[Rational], m: &Partition, d: &Rational) -> ParamScalar {
    let mut acc = ParamScalar::one();
    for (j, &mj) in m.parts().iter().enumerate() {
        let s = shifts.get(j).cloned().unwrap_or_else(Rational::zero);
        let base = s - d * int(j as i64) / int(2);
        for t in 0..mj {
            acc = acc.mul(&ParamScalar::linear(param, &base + int(t as i64)));
        }
    }
    acc
}

/// `(a*p + b)_{m,d}` for an affine weight, as a factored scalar.
pub fn pochhammer_affine(param: Var, a: &Rational, b: &Rational, m: &Partition, d: &Rational) -> ParamScalar {
    if a.is_zero() {
        let mut c = Rational::one();
        for (j, &mj) in m.parts().iter().enumerate() {
            for t in 0..mj {
                c *= b - d * int(j as i64) / int(2) + int(t as i64);
            }
        }
        return ParamScalar::constant(c);
    }
    let mut acc = ParamScalar::one();
    for (j, &mj) in m.parts().iter().enumerate() {
        for t in 0..mj {
            let s = (b - d * int(j as i64) / int(2) + int(t as i64)) / a;
            acc = acc.mul(&ParamScalar::linear(param, s).scale(a));
        }
    }
    acc
}
