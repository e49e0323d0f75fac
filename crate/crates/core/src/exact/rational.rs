use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn parse_rat(s: &str) -> Result<Rational> {
    s.trim().parse::<Rational>().map_err(|_| Error::Parse(format!("rational {s:?}")))
}

pub fn fmt_rat(r: &Rational) -> String {
    r.to_string()
}

pub fn factorial(n: u32) -> Rational {
    let mut acc = BigInt::one();
    for t in 2..=n {
        acc *= t;
    }
    Rational::from_integer(acc)
}

pub fn binomial(n: i64, k: i64) -> Rational {
    if k < 0 || k > n {
        return Rational::zero();
    }
    let mut acc = Rational::one();
    for t in 0..k {
        acc = acc * int(n - t) / int(t + 1);
    }
    acc
}

/// Generalized binomial coefficient `C(a, k)` for rational `a`.
pub fn binomial_rat(a: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    for t in 0..k {
        acc = acc * (a - int(t as i64)) / int(t as i64 + 1);
    }
    acc
}

pub fn rat_pow(r: &Rational, e: i32) -> Rational {
    if e >= 0 {
        num::pow(r.clone(), e as usize)
    } else {
        num::pow(r.recip(), (-e) as usize)
    }
}

pub fn is_integer(r: &Rational) -> bool {
    r.is_integer()
}

pub fn ceil_rat(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}

pub fn abs_rat(r: &Rational) -> Rational {
    r.abs()
}

pub fn rzero() -> Rational {
    <Rational as num::Zero>::zero()
}

pub fn rone() -> Rational {
    <Rational as num::One>::one()
}

pub fn rat_is_zero(r: &Rational) -> bool {
    num::Zero::is_zero(r)
}
