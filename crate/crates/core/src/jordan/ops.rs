use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num::ToPrimitive;
use once_cell::sync::Lazy;

use super::domain::{Domain, Kind};
use super::matrix::{rat_solve, PMat};
use crate::error::{Error, Result};
use crate::exact::{binomial_rat, int, rat, Coeff, MultiPoly, Poly, Rational, Var};

fn qform<C: Coeff>(a: &PMat<C>, b: &PMat<C>) -> Poly<C> {
    a.frobenius(b)
}

/// `Q(x)y` with `ybar` the conjugate point (`y* = ybar^t`).
pub fn q_fn<C: Coeff>(kind: Kind, x: &PMat<C>, ybar: &PMat<C>) -> PMat<C> {
    match kind {
        Kind::Quadric(_) => {
            let two = Poly::from_int(2);
            x.scale(&two.mul(&qform(x, ybar))).sub(&ybar.scale(&qform(x, x)))
        }
        _ => x.mul(&ybar.transpose()).mul(x),
    }
}

/// `D(x,y)z`.
pub fn d_fn<C: Coeff>(kind: Kind, x: &PMat<C>, ybar: &PMat<C>, z: &PMat<C>) -> PMat<C> {
    match kind {
        Kind::Quadric(_) => {
            let two = Poly::from_int(2);
            z.scale(&two.mul(&qform(x, ybar)))
                .add(&x.scale(&two.mul(&qform(z, ybar))))
                .sub(&ybar.scale(&two.mul(&qform(x, z))))
        }
        _ => {
            let yt = ybar.transpose();
            x.mul(&yt).mul(z).add(&z.mul(&yt).mul(x))
        }
    }
}

/// `B(x,y)z = z - D(x,y)z + Q(x)Q(y)z`.
pub fn b_apply<C: Coeff>(kind: Kind, x: &PMat<C>, ybar: &PMat<C>, z: &PMat<C>) -> PMat<C> {
    match kind {
        Kind::Quadric(_) => z.sub(&d_fn(kind, x, ybar, z)).add(&q_fn(kind, x, &q_fn(kind, ybar, z))),
        _ => {
            let yt = ybar.transpose();
            let l = PMat::identity(x.rows).sub(&x.mul(&yt));
            let r = PMat::identity(x.cols).sub(&yt.mul(x));
            l.mul(z).mul(&r)
        }
    }
}

/// `B(x,y)` as an endomorphism of p+ in the domain's coordinates (`[row][col]`).
pub fn bergman_matrix<C: Coeff>(dom: &Domain, x: &PMat<C>, ybar: &PMat<C>) -> Vec<Vec<Poly<C>>> {
    let n = dom.dim();
    let mut m = vec![vec![Poly::zero(); n]; n];
    for a in 0..n {
        let mut e = vec![Poly::zero(); n];
        e[a] = Poly::one();
        let z = dom.matrix_of(&e);
        let col = dom.coords_of(&b_apply(dom.kind, x, ybar, &z));
        for (b, v) in col.into_iter().enumerate() {
            m[b][a] = v;
        }
    }
    m
}

fn rat_point(dom: &Domain, v: &[Rational]) -> PMat<Rational> {
    dom.matrix_of_rat(v)
}

fn to_rats(v: Vec<MultiPoly>) -> Vec<Rational> {
    v.into_iter().map(|p| p.const_term()).collect()
}

pub fn q_concrete(dom: &Domain, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    to_rats(dom.coords_of(&q_fn(dom.kind, &rat_point(dom, x), &rat_point(dom, y))))
}

pub fn d_concrete(dom: &Domain, x: &[Rational], y: &[Rational], z: &[Rational]) -> Vec<Rational> {
    to_rats(dom.coords_of(&d_fn(dom.kind, &rat_point(dom, x), &rat_point(dom, y), &rat_point(dom, z))))
}

/// Concrete `B(x,y)` as a rational matrix. Concrete points are real, so the
/// conjugate point has the same coordinates.
pub fn bergman_concrete(dom: &Domain, x: &[Rational], y: &[Rational]) -> Vec<Vec<Rational>> {
    bergman_matrix(dom, &rat_point(dom, x), &rat_point(dom, y))
        .into_iter()
        .map(|r| r.into_iter().map(|p| p.const_term()).collect())
        .collect()
}

/// `x^y = B(x,y)^{-1}(x - Q(x)y)` at a rational point.
pub fn quasi_inverse_concrete(dom: &Domain, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
    let b = bergman_concrete(dom, x, y);
    let q = q_concrete(dom, x, y);
    let rhs: Vec<Rational> = x.iter().zip(q.iter()).map(|(a, c)| a - c).collect();
    rat_solve(&b, &rhs).ok_or(Error::Singular)
}

/// Formal quasi-inverse truncated at `pred`-degree `max`.
pub fn quasi_inverse_series<C: Coeff>(
    dom: &Domain,
    x: &PMat<C>,
    ybar: &PMat<C>,
    pred: &dyn Fn(&Var) -> bool,
    max: u32,
) -> PMat<C> {
    match dom.kind {
        Kind::Quadric(_) => {
            let hinv = h_inverse_series(dom, x, ybar, pred, max);
            let v = x.sub(&ybar.scale(&qform(x, x)));
            v.map(|p| p.mul_trunc(&hinv, pred, max))
        }
        _ => {
            let yx = ybar.transpose().mul_trunc(x, pred, max);
            let mut acc = PMat::identity(x.cols);
            let mut pw = PMat::identity(x.cols);
            loop {
                pw = pw.mul_trunc(&yx, pred, max);
                if pw.is_zero() {
                    break;
                }
                acc = acc.add(&pw);
            }
            x.mul_trunc(&acc, pred, max)
        }
    }
}

/// `h(x,y)^{-1}` as a series truncated at `pred`-degree `max`.
pub fn h_inverse_series<C: Coeff>(
    dom: &Domain,
    x: &PMat<C>,
    ybar: &PMat<C>,
    pred: &dyn Fn(&Var) -> bool,
    max: u32,
) -> Poly<C> {
    let h = h_of(dom, x, ybar).truncate(|v| pred(v), max);
    let u = Poly::one().sub(&h);
    let mut acc = Poly::one();
    let mut pw = Poly::one();
    loop {
        pw = pw.mul_trunc(&u, pred, max);
        if pw.is_zero() {
            break;
        }
        acc.add_assign(&pw);
    }
    acc
}

static H_CACHE: Lazy<Mutex<HashMap<String, Arc<MultiPoly>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// The generic norm `h` as a polynomial in the domain's variables and their conjugates.
pub fn generic_norm(dom: &Domain) -> Result<Arc<MultiPoly>> {
    if let Some(h) = H_CACHE.lock().unwrap().get(&dom.name) {
        return Ok(h.clone());
    }
    let x: PMat<Rational> = dom.sym_point();
    let yb: PMat<Rational> = dom.conj_point();
    let h = match dom.kind {
        Kind::Quadric(_) => {
            let q = |a: &PMat<Rational>, b: &PMat<Rational>| a.frobenius(b);
            Poly::one().sub(&q(&x, &yb).scale_rat(&int(2))).add(&q(&x, &x).mul(&q(&yb, &yb)))
        }
        Kind::Sym(_) | Kind::Mat(..) => {
            let (q, s) = dom.kind.shape();
            if q <= s {
                PMat::identity(q).sub(&x.mul(&yb.transpose())).det()
            } else {
                PMat::identity(s).sub(&yb.transpose().mul(&x)).det()
            }
        }
        Kind::Skew(s) => {
            let det = PMat::identity(s).sub(&x.mul(&yb.transpose())).det();
            let r = dom.rank() as u32;
            let holo = |v: &Var| !v.conj;
            let u = det.sub(&Poly::one());
            let mut acc = Poly::one();
            let mut pw = Poly::one();
            for k in 1..=(2 * r + 1) {
                pw = pw.mul_trunc(&u, &holo, r);
                if pw.is_zero() {
                    break;
                }
                acc.add_assign(&pw.scale_rat(&binomial_rat(&rat(1, 2), k)));
            }
            if acc.mul(&acc) != det {
                return Err(Error::SqrtFail);
            }
            acc
        }
    };
    let h = Arc::new(h);
    H_CACHE.lock().unwrap().insert(dom.name.clone(), h.clone());
    Ok(h)
}

/// `h(x,y)` at arbitrary (symbolic or concrete) matrix arguments.
pub fn h_of<C: Coeff>(dom: &Domain, x: &PMat<C>, ybar: &PMat<C>) -> Poly<C> {
    let h = generic_norm(dom).expect("generic norm");
    let xc = dom.coords_of(x);
    let yc = dom.coords_of(ybar);
    let hc: Poly<C> = h.try_map_coeffs(|r| Ok(C::from_rat(r.clone()))).expect("coefficient lift");
    hc.substitute(&|v| {
        let i = dom.index_of(v)?;
        Some(if v.conj { yc[i].clone() } else { xc[i].clone() })
    })
}

pub fn h_concrete(dom: &Domain, x: &[Rational], y: &[Rational]) -> Rational {
    h_of(dom, &rat_point(dom, x), &rat_point(dom, y)).const_term()
}

/// Determinant polynomial: det for SYM and square MAT, Pfaffian for even SKEW.
pub fn det_poly<C: Coeff>(kind: Kind, x: &PMat<C>) -> Result<Poly<C>> {
    match kind {
        Kind::Sym(_) => Ok(x.det()),
        Kind::Mat(q, s) if q == s => Ok(x.det()),
        Kind::Skew(s) if s % 2 == 0 => Ok(x.pfaffian()),
        k => Err(Error::Unsupported(format!("determinant polynomial on {k}"))),
    }
}

/// `x^#`: classical adjugate (SYM, square MAT) or the Pfaffian adjugate (SKEW(4), SKEW(6)).
pub fn adjugate<C: Coeff>(kind: Kind, x: &PMat<C>) -> Result<PMat<C>> {
    match kind {
        Kind::Sym(_) => Ok(x.adjugate()),
        Kind::Mat(q, s) if q == s => Ok(x.adjugate()),
        Kind::Skew(s) if s == 4 || s == 6 || s == 2 => Ok(x.pf_adjugate()),
        k => Err(Error::Unsupported(format!("adjugate on {k}"))),
    }
}

/// `(x|y)` normalized so that `(e_1|e_1) = 1`.
pub fn inner_product<C: Coeff>(kind: Kind, x: &PMat<C>, ybar: &PMat<C>) -> Poly<C> {
    x.frobenius(ybar).scale_rat(&kind.kappa())
}

/// Largest spectral value of a real rational point (floating point, tolerance 1e-12).
pub fn spectral_norm_numeric(dom: &Domain, x: &[Rational]) -> f64 {
    let m = rat_point(dom, x).to_rat().expect("concrete point");
    let f: Vec<Vec<f64>> = m.iter().map(|r| r.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect()).collect();
    match dom.kind {
        Kind::Quadric(_) => {
            let n2: f64 = f.iter().map(|r| r[0] * r[0]).sum();
            // real points: |q(x)| = |x|^2
            (n2 + (n2 * n2 - n2 * n2).max(0.0).sqrt()).sqrt()
        }
        _ => {
            let rows = f.len();
            let cols = if rows == 0 { 0 } else { f[0].len() };
            let mut g = vec![vec![0.0; cols]; cols];
            for i in 0..cols {
                for j in 0..cols {
                    g[i][j] = (0..rows).map(|k| f[k][i] * f[k][j]).sum();
                }
            }
            max_eig_psd(&g).max(0.0).sqrt()
        }
    }
}

fn max_eig_psd(a: &[Vec<f64>]) -> f64 {
    let n = a.len();
    let mut best: f64 = 0.0;
    for start in 0..n {
        let mut v = vec![0.0; n];
        v[start] = 1.0;
        let mut lam = 0.0;
        for _ in 0..5000 {
            let w: Vec<f64> = (0..n).map(|i| (0..n).map(|j| a[i][j] * v[j]).sum()).collect();
            let nrm = w.iter().map(|t| t * t).sum::<f64>().sqrt();
            if nrm == 0.0 {
                lam = 0.0;
                break;
            }
            let next: Vec<f64> = w.iter().map(|t| t / nrm).collect();
            let diff: f64 = next.iter().zip(v.iter()).map(|(p, q)| (p - q).abs()).sum();
            v = next;
            lam = nrm;
            if diff < 1e-15 {
                break;
            }
        }
        best = best.max(lam);
    }
    best
}
