use std::collections::BTreeMap;
use std::fmt::Debug;

use num::{One, Zero};

use super::param::ParamScalar;
use super::rational::Rational;
use super::var::Var;
use crate::error::Result;

/// Values for formal parameters when specializing.
pub type ParamEnv = BTreeMap<Var, Rational>;

/// Coefficient field for polynomials: plain rationals or rational functions of parameters.
pub trait Coeff: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rat(r: Rational) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    fn as_rat(&self) -> Option<Rational>;
    /// Converts a parameter scalar, using `env` for parameters this field cannot hold.
    fn from_param(p: &ParamScalar, env: &ParamEnv) -> Result<Self>;
    fn to_text(&self) -> String;

    fn add_assign(&mut self, o: &Self) {
        *self = self.add(o);
    }
}

impl Coeff for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rat(r: Rational) -> Self {
        r
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn as_rat(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn from_param(p: &ParamScalar, env: &ParamEnv) -> Result<Self> {
        p.eval(env)
    }
    fn to_text(&self) -> String {
        self.to_string()
    }
    fn add_assign(&mut self, o: &Self) {
        *self += o;
    }
}
