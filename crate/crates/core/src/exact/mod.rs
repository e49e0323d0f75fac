pub mod coeff;
pub mod json;
pub mod param;
pub mod partition;
pub mod poly;
pub mod ratfn;
pub mod rational;
pub mod var;

pub use coeff::{Coeff, ParamEnv};
pub use json::{poly_from_json, poly_json, poly_to_json, PolyJson, TermJson};
pub use param::{default_param, pochhammer, pochhammer_affine, pochhammer_in, LimitSignal, ParamScalar};
pub use partition::{partitions_of, partitions_up_to, Partition};
pub use poly::{MultiPoly, Poly};
pub use ratfn::RatFn;
pub use rational::{abs_rat, binomial, binomial_rat, ceil_rat, factorial, fmt_rat, int, is_integer, parse_rat, rat, rat_is_zero, rat_pow, rone, rzero, Rational};
pub use var::{is_param, Mono, Var};

use crate::error::Result;

/// Flat entry points over the types above.
pub fn poly_diff(f: &MultiPoly, v: &Var, k: u32) -> MultiPoly {
    f.diff(v, k)
}

pub fn poly_compose_linear<C: Coeff>(f: &Poly<C>, sub: &std::collections::BTreeMap<Var, Poly<C>>) -> Result<Poly<C>> {
    f.compose_linear(&|v| sub.get(v).cloned())
}

pub fn param_limit(p: &ParamScalar, x0: &Rational, order: i32) -> std::result::Result<Rational, LimitSignal> {
    p.limit(&default_param(), x0, order)
}
