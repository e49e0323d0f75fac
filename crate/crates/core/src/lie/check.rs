use serde::Serialize;

use crate::error::Result;
use crate::exact::{is_param, Coeff, Mono, MultiPoly, Poly, RatFn, Var};

use super::{FirstOrder, ProdElement, Space};

/// All monomials of total degree at most `n` in `vars`.
pub fn monomial_basis(vars: &[Var], n: u32) -> Vec<MultiPoly> {
    let mut out = vec![MultiPoly::one()];
    let mut layer = vec![(MultiPoly::one(), 0usize)];
    for _ in 0..n {
        let mut next = Vec::new();
        for (m, start) in &layer {
            for (i, v) in vars.iter().enumerate().skip(*start) {
                next.push((m.mul(&MultiPoly::var(*v)), i));
            }
        }
        out.extend(next.iter().map(|(m, _)| m.clone()));
        layer = next;
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct InterFailure {
    pub element: String,
    pub monomial: String,
    pub residual: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct IntertwineReport {
    pub degree: u32,
    pub checked: usize,
    pub failed: usize,
    pub failures: Vec<InterFailure>,
}

impl IntertwineReport {
    pub fn ok(&self) -> bool {
        self.failed == 0 && self.checked > 0
    }
}

/// Coefficient types that can absorb the parameter variables of a [`FirstOrder`].
pub trait FromParamOp: Coeff {
    fn from_op(op: &FirstOrder) -> FirstOrder<Self>;
}

impl FromParamOp for crate::exact::Rational {
    fn from_op(op: &FirstOrder) -> FirstOrder<Self> {
        op.clone()
    }
}

impl FromParamOp for RatFn {
    fn from_op(op: &FirstOrder) -> FirstOrder<Self> {
        op.lift(&is_param)
    }
}

/// Checks `dpi_b(Y) F f = F dpi_a(X) f` for each pair `(X, Y)` and each monomial `f` of
/// degree at most `n` on `a`. Failures are collected, up to 20.
pub fn intertwine_check<C: FromParamOp>(
    op: &dyn Fn(&Poly<C>) -> Result<Poly<C>>,
    a: &Space,
    b: &Space,
    pairs: &[(ProdElement, ProdElement)],
    n: u32,
) -> Result<IntertwineReport> {
    let ops: Vec<(String, FirstOrder<C>, FirstOrder<C>)> = pairs
        .iter()
        .map(|(x, y)| Ok((format!("{x:?}"), C::from_op(&a.dpi(x)?), C::from_op(&b.dpi(y)?))))
        .collect::<Result<_>>()?;
    intertwine_ops(op, &a.vars(), &ops, n)
}

/// The same check with explicitly given operator pairs `(label, on a, on b)`.
pub fn intertwine_ops<C: Coeff>(
    op: &dyn Fn(&Poly<C>) -> Result<Poly<C>>,
    vars: &[Var],
    ops: &[(String, FirstOrder<C>, FirstOrder<C>)],
    n: u32,
) -> Result<IntertwineReport> {
    let monos: Vec<Poly<C>> = monomial_basis(vars, n)
        .iter()
        .map(|m| Poly::term(m.terms().next().map(|(m, _)| m.clone()).unwrap_or_else(Mono::one), C::one()))
        .collect();
    intertwine_inputs(op, &monos, ops, n)
}

/// The same check over an explicit list of inputs (e.g. a basis of a submodule).
pub fn intertwine_inputs<C: Coeff>(
    op: &dyn Fn(&Poly<C>) -> Result<Poly<C>>,
    monos: &[Poly<C>],
    ops: &[(String, FirstOrder<C>, FirstOrder<C>)],
    n: u32,
) -> Result<IntertwineReport> {
    let images: Vec<Poly<C>> = monos.iter().map(op).collect::<Result<_>>()?;
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut failed = 0;
    for (label, da, db) in ops {
        for (f, fm) in monos.iter().zip(images.iter()) {
            let lhs = db.apply(fm);
            let rhs = op(&da.apply(f))?;
            checked += 1;
            let r = lhs.sub(&rhs);
            if !r.is_zero() {
                failed += 1;
                if failures.len() < 20 {
                    failures.push(InterFailure { element: label.clone(), monomial: f.to_text(), residual: r.to_text() });
                }
            }
        }
    }
    Ok(IntertwineReport { degree: n, checked, failed, failures })
}
