use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::domain::{blocks, Domain, Kind};
use super::matrix::{rat_det, rat_mat_mul, rat_solve, PMat};
use super::ops::*;
use crate::error::Result;
use crate::exact::{fmt_rat, rat, Mono, MultiPoly, Rational, Var};

/// Outcome of one identity family on one domain.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub domain: String,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub failures: Vec<String>,
}

impl IdentityReport {
    fn new(identity: &str, domain: &str) -> Self {
        IdentityReport { identity: identity.into(), domain: domain.into(), passed: 0, failed: 0, skipped: 0, failures: Vec::new() }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            if self.failures.len() < 5 {
                self.failures.push(what());
            }
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0 && self.passed > 0
    }
}

/// A symmetric-pair splitting `p+ = p1 + p2` given by coordinate groups.
#[derive(Clone, Debug)]
pub struct Splitting {
    pub name: String,
    pub dom: Domain,
    pub p1: Vec<&'static str>,
}

impl Splitting {
    pub fn new(name: &str, dom: Domain, p1: &[&str]) -> Self {
        Splitting { name: name.into(), dom, p1: p1.iter().map(|g| crate::exact::var::intern(g)).collect() }
    }

    pub fn in_p1(&self, v: &Var) -> bool {
        self.p1.iter().any(|g| std::ptr::eq(*g, v.g))
    }

    /// Zeroes the coordinates outside `p1` (`first = true`) or inside it.
    pub fn proj(&self, v: &[Rational], first: bool) -> Vec<Rational> {
        self.dom
            .coords
            .iter()
            .zip(v.iter())
            .map(|(c, x)| if self.in_p1(&c.var) == first { x.clone() } else { crate::exact::rzero() })
            .collect()
    }
}

/// The symmetric-pair splittings checked on each desk domain.
pub fn desk_splittings(kind: Kind) -> Vec<Splitting> {
    match kind {
        Kind::Sym(2) => vec![
            Splitting::new("sym:1+1 offdiag", blocks::sym(1, 1), &["x12"]),
            Splitting::new("sym:1+1 diag", blocks::sym(1, 1), &["x11", "x22"]),
        ],
        Kind::Mat(2, 2) => vec![
            Splitting::new("mat:blocks diag", blocks::mat(1, 1, 1, 1), &["x11", "x22"]),
            Splitting::new("mat:blocks column", blocks::mat(1, 1, 1, 1), &["x11", "x21"]),
        ],
        Kind::Skew(4) => vec![
            Splitting::new("skew:2+2 diag", blocks::skew(2, 2), &["x11", "x22"]),
            Splitting::new("skew:2+2 offdiag", blocks::skew(2, 2), &["x12"]),
        ],
        Kind::Quadric(3) => vec![
            Splitting::new("quadric:2+1", blocks::quadric(2, 1), &["x1"]),
            Splitting::new("quadric:1+2", blocks::quadric(1, 2), &["x1"]),
        ],
        _ => Vec::new(),
    }
}

/// Pairs of subsystems with `D(p1,p2) = 0` (matrix kinds only).
fn decomp_splitting(kind: Kind) -> Option<(Domain, &'static str, &'static str)> {
    match kind {
        Kind::Sym(2) => Some((blocks::sym(1, 1), "x11", "x22")),
        Kind::Mat(2, 2) => Some((blocks::mat(1, 1, 1, 1), "x11", "x22")),
        Kind::Skew(4) => Some((blocks::skew(2, 2), "x11", "x22")),
        _ => None,
    }
}

pub fn random_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| rat(rng.gen_range(-4..=4), rng.gen_range(1..=7))).collect()
}

fn show(v: &[Rational]) -> String {
    let s: Vec<String> = v.iter().map(fmt_rat).collect();
    format!("({})", s.join(","))
}

fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b.iter()).map(|(x, y)| x + y).collect()
}

fn neg(a: &[Rational]) -> Vec<Rational> {
    a.iter().map(|x| -x).collect()
}

fn pow_rat(r: &Rational, p: &Rational) -> Rational {
    let e: i32 = p.to_integer().try_into().expect("integral genus");
    crate::exact::rat_pow(r, e)
}

/// Runs the identity suite on the standard realization of `kind`.
pub fn jordan_suite(kind: Kind, seed: u64, points: usize) -> Result<Vec<IdentityReport>> {
    let dom = Domain::standard(kind, "x");
    let name = kind.to_string();
    let n = dom.dim();
    let p = kind.genus();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let qi = |x: &[Rational], y: &[Rational]| quasi_inverse_concrete(&dom, x, y);
    let bm = |x: &[Rational], y: &[Rational]| bergman_concrete(&dom, x, y);
    let inv = |m: &Vec<Vec<Rational>>, v: &[Rational]| rat_solve(m, v);

    let mut det_pts = IdentityReport::new("detB=h^p (points)", &name);
    let mut bl = IdentityReport::new("Bergman_left", &name);
    let mut br = IdentityReport::new("Bergman_right", &name);
    let mut qa = IdentityReport::new("quasiinv_add", &name);
    let mut qt = IdentityReport::new("quasiinv_twice", &name);
    let mut pl1 = IdentityReport::new("projlemma(1)", &name);
    let mut pl2 = IdentityReport::new("projlemma(2)", &name);

    for _ in 0..points {
        let x = random_point(&mut rng, n);
        let y = random_point(&mut rng, n);
        let z = random_point(&mut rng, n);
        let tag = || format!("x={} y={} z={}", show(&x), show(&y), show(&z));

        let b = bm(&x, &y);
        det_pts.record(rat_det(&b) == pow_rat(&h_concrete(&dom, &x, &y), &p), tag);

        match qi(&x, &y) {
            Ok(xy) => {
                let lhs = rat_mat_mul(&b, &bm(&xy, &z));
                bl.record(lhs == bm(&x, &add(&y, &z)), tag);
                let rhs = bm(&add(&y, &z), &x);
                br.record(rat_mat_mul(&bm(&z, &xy), &bm(&y, &x)) == rhs, tag);
                match (qi(&x, &add(&y, &z)), qi(&xy, &z)) {
                    (Ok(a), Ok(c)) => qa.record(a == c, tag),
                    (Err(_), Err(_)) => qa.skipped += 1,
                    _ => qa.record(false, tag),
                }
                let yx = qi(&y, &x);
                match (qi(&add(&x, &z), &y), yx.and_then(|yx| qi(&z, &yx))) {
                    (Ok(a), Ok(zz)) => {
                        let corr = inv(&b, &zz);
                        match corr {
                            Some(c) => qt.record(a == add(&xy, &c), tag),
                            None => qt.skipped += 1,
                        }
                    }
                    (Err(_), Err(_)) => qt.skipped += 1,
                    _ => qt.record(false, tag),
                }
                let qxy = q_concrete(&dom, &x, &y);
                let qyx = q_concrete(&dom, &y, &x);
                let lhs = rat_mat_mul(&bm(&neg(&x), &y), &b);
                let m1 = bm(&qxy, &y);
                let m2 = bm(&x, &qyx);
                pl1.record(lhs == m1 && m1 == m2, tag);
                match (qi(&qxy, &y), qi(&x, &qyx)) {
                    (Ok(a), Ok(c)) => pl2.record(xy == add(&a, &c), tag),
                    _ => pl2.skipped += 1,
                }
            }
            Err(_) => {
                for r in [&mut bl, &mut br, &mut qa, &mut qt, &mut pl1, &mut pl2] {
                    r.skipped += 1;
                }
            }
        }
    }

    let mut out = vec![det_pts, det_symbolic(&dom, &mut rng)?, bl, br, qa, qt, pl1, pl2];
    for sp in desk_splittings(kind) {
        out.extend(projprop(&sp, &mut rng, points)?);
    }
    if let Some(r) = bergman_decomp(kind, &mut rng, points) {
        out.push(r);
    }
    Ok(out)
}

/// `Det B(x,y) = h(x,y)^p` as a polynomial identity in `x` for a few concrete `y`.
fn det_symbolic(dom: &Domain, rng: &mut ChaCha8Rng) -> Result<IdentityReport> {
    let mut rep = IdentityReport::new("detB=h^p (polynomial in x)", &dom.kind.to_string());
    let p: u32 = dom.kind.genus().to_integer().try_into().expect("genus");
    let x: PMat<Rational> = dom.sym_point();
    for _ in 0..2 {
        let y = random_point(rng, dom.dim());
        let yb: PMat<Rational> = dom.matrix_of_rat(&y);
        let b = bergman_matrix(dom, &x, &yb);
        let n = dom.dim();
        let bm = PMat::from_fn(n, n, |i, j| b[i][j].clone());
        let lhs = bm.det();
        let rhs = h_of(dom, &x, &yb).pow(p);
        rep.record(lhs == rhs, || format!("y={}", show(&y)));
    }
    Ok(rep)
}

fn projprop(sp: &Splitting, rng: &mut ChaCha8Rng, points: usize) -> Result<Vec<IdentityReport>> {
    let dom = &sp.dom;
    let mut r1 = IdentityReport::new(&format!("projprop(1) {}", sp.name), &dom.kind.to_string());
    let mut r2 = IdentityReport::new(&format!("projprop(2) {}", sp.name), &dom.kind.to_string());
    for _ in 0..points {
        let v = random_point(rng, dom.dim());
        let w = random_point(rng, dom.dim());
        let x2 = sp.proj(&v, false);
        let y1 = sp.proj(&w, true);
        let q = q_concrete(dom, &y1, &x2);
        match (quasi_inverse_concrete(dom, &x2, &y1), quasi_inverse_concrete(dom, &x2, &q)) {
            (Ok(a), Ok(b)) => r1.record(sp.proj(&a, false) == b, || format!("x2={} y1={}", show(&x2), show(&y1))),
            _ => r1.skipped += 1,
        }
    }
    // (2) as an exact polynomial identity in x2 and conj(y1)
    let x2: PMat<Rational> = dom.sym_point_where(&|v| !sp.in_p1(v), false);
    let y1b: PMat<Rational> = dom.sym_point_where(&|v| sp.in_p1(v), true);
    let lhs = h_of(dom, &x2, &y1b).pow(2);
    let a = h_of(dom, &q_fn(dom.kind, &x2, &y1b), &y1b);
    let b = h_of(dom, &x2, &q_fn(dom.kind, &y1b, &x2));
    r2.record(lhs == a && a == b, || "symbolic".into());
    Ok(vec![r1, r2])
}

/// `i^2 -> -1` for the formal unit `i`.
fn reduce_i(p: &MultiPoly, i: Var) -> MultiPoly {
    let mut out = MultiPoly::zero();
    for (m, c) in p.terms() {
        let e = m.pairs().iter().find(|(v, _)| *v == i).map_or(0, |(_, e)| *e);
        let mut rest = Mono::from_pairs(m.pairs().iter().filter(|(v, _)| *v != i).copied());
        if e % 2 == 1 {
            rest = rest.mul(&Mono::var(i, 1));
        }
        out.add_term(rest, if (e / 2) % 2 == 1 { -c.clone() } else { c.clone() });
    }
    out
}

fn poly_mat_mul(a: &[Vec<MultiPoly>], b: &[Vec<MultiPoly>], i: Var) -> Vec<Vec<MultiPoly>> {
    let n = a.len();
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    let mut acc = MultiPoly::zero();
                    for k in 0..n {
                        acc.add_assign(&a[r][k].mul(&b[k][c]));
                    }
                    reduce_i(&acc, i)
                })
                .collect()
        })
        .collect()
}

/// The Lie ball has no rational Peirce splitting: `p1 = C u`, `p2 = C conj(u)` with the
/// isotropic `u = (1, i, 0, ...)`. Points are polynomials in a formal `i`, reduced mod `i^2 + 1`.
fn bergman_decomp_quadric(n: usize, rng: &mut ChaCha8Rng, points: usize) -> IdentityReport {
    let kind = Kind::Quadric(n);
    let dom = Domain::standard(kind, "x");
    let i = Var::new("i", 1, 1);
    let mut rep = IdentityReport::new("Bergman_decomp", &kind.to_string());
    let iv = MultiPoly::var(i);
    let vec_of = |c: &Rational, sign: i64| -> PMat<Rational> {
        let mut v = vec![MultiPoly::zero(); dom.dim()];
        v[0] = MultiPoly::from_rat(c.clone());
        v[1] = iv.scale_rat(&(c * crate::exact::int(sign)));
        dom.matrix_of(&v)
    };
    let reduce_mat = |m: Vec<Vec<MultiPoly>>| -> Vec<Vec<MultiPoly>> { m.iter().map(|row| row.iter().map(|p| reduce_i(p, i)).collect()).collect() };
    let zs: PMat<Rational> = dom.sym_point();
    for _ in 0..points {
        let c = random_point(rng, 4);
        // x1 in C u, x2 in C conj(u); conj(y1) in C conj(u), conj(y2) in C u
        let (x1, x2, y1, y2) = (vec_of(&c[0], 1), vec_of(&c[1], -1), vec_of(&c[2], -1), vec_of(&c[3], 1));
        let orth = [d_fn(kind, &x1, &y2, &zs), d_fn(kind, &x2, &y1, &zs)].iter().all(|m| dom.coords_of(m).iter().all(|p| reduce_i(p, i).is_zero()));
        let lhs = reduce_mat(bergman_matrix(&dom, &x1.add(&x2), &y1.add(&y2)));
        let rhs = poly_mat_mul(&bergman_matrix(&dom, &x1, &y1), &bergman_matrix(&dom, &x2, &y2), i);
        rep.record(orth && lhs == rhs, || format!("coefficients {}", show(&c)));
    }
    rep
}

fn bergman_decomp(kind: Kind, rng: &mut ChaCha8Rng, points: usize) -> Option<IdentityReport> {
    if let Kind::Quadric(n) = kind {
        return (n >= 2).then(|| bergman_decomp_quadric(n, rng, points));
    }
    let (dom, g1, g2) = decomp_splitting(kind)?;
    let mut rep = IdentityReport::new("Bergman_decomp", &kind.to_string());
    let pick = |v: &[Rational], g: &str| -> Vec<Rational> {
        dom.coords.iter().zip(v.iter()).map(|(c, x)| if c.var.g == g { x.clone() } else { crate::exact::rzero() }).collect()
    };
    for _ in 0..points {
        let a = random_point(rng, dom.dim());
        let b = random_point(rng, dom.dim());
        let (x1, x2, y1, y2) = (pick(&a, g1), pick(&a, g2), pick(&b, g1), pick(&b, g2));
        let lhs = bergman_concrete(&dom, &add(&x1, &x2), &add(&y1, &y2));
        let rhs = rat_mat_mul(&bergman_concrete(&dom, &x1, &y1), &bergman_concrete(&dom, &x2, &y2));
        rep.record(lhs == rhs, || format!("x={} y={}", show(&a), show(&b)));
    }
    Some(rep)
}

