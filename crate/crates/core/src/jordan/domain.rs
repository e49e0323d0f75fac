use std::fmt;

use num::Zero;
use serde::{Deserialize, Serialize};

use super::matrix::PMat;
use crate::error::{Error, Result};
use crate::exact::{int, rat, rone, rzero, Coeff, Poly, Rational, Var};

/// The four classical Jordan triple systems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    Sym(usize),
    Mat(usize, usize),
    Skew(usize),
    Quadric(usize),
}

impl Kind {
    /// Shape of the matrix realization (QUADRIC is a column vector).
    pub fn shape(&self) -> (usize, usize) {
        match *self {
            Kind::Sym(r) => (r, r),
            Kind::Mat(q, s) => (q, s),
            Kind::Skew(s) => (s, s),
            Kind::Quadric(n) => (n, 1),
        }
    }

    pub fn rank(&self) -> usize {
        match *self {
            Kind::Sym(r) => r,
            Kind::Mat(q, s) => q.min(s),
            Kind::Skew(s) => s / 2,
            Kind::Quadric(n) => {
                if n >= 2 {
                    2
                } else {
                    n
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        match *self {
            Kind::Sym(r) => r * (r + 1) / 2,
            Kind::Mat(q, s) => q * s,
            Kind::Skew(s) => s * (s.saturating_sub(1)) / 2,
            Kind::Quadric(n) => n,
        }
    }

    pub fn d(&self) -> Rational {
        match *self {
            Kind::Sym(_) => int(1),
            Kind::Mat(..) => int(2),
            Kind::Skew(_) => int(4),
            Kind::Quadric(n) => int(n as i64 - 2),
        }
    }

    /// `b = n/r - 1 - (r-1)d/2`.
    pub fn b(&self) -> Rational {
        let r = self.rank() as i64;
        if r == 0 {
            return rzero();
        }
        rat(self.dim() as i64, r) - int(1) - int(r - 1) * self.d() / int(2)
    }

    /// Genus `p = (r-1)d + b + 2`.
    pub fn genus(&self) -> Rational {
        let r = self.rank() as i64;
        int(r - 1) * self.d() + self.b() + int(2)
    }

    pub fn eps(&self) -> Rational {
        match self {
            Kind::Skew(_) => int(2),
            _ => int(1),
        }
    }

    /// Factor `k` with `(x|y) = k * sum x_ij conj(y_ij)`.
    pub fn kappa(&self) -> Rational {
        match self {
            Kind::Quadric(_) => int(2),
            k => rone() / k.eps(),
        }
    }

    pub fn is_tube(&self) -> bool {
        match *self {
            Kind::Sym(_) => true,
            Kind::Mat(q, s) => q == s,
            Kind::Skew(s) => s % 2 == 0,
            Kind::Quadric(_) => true,
        }
    }

    pub fn is_matrix(&self) -> bool {
        !matches!(self, Kind::Quadric(_))
    }

    /// Parses `sym:2`, `mat:2x3`, `skew:4`, `quadric:3`.
    pub fn parse(s: &str) -> Result<Kind> {
        let bad = || Error::Parse(format!("domain {s:?}"));
        let (k, p) = s.split_once(':').ok_or_else(bad)?;
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let kind = match k.trim().to_ascii_lowercase().as_str() {
            "sym" => Kind::Sym(num(p)?),
            "mat" => {
                let (a, b) = p.split_once('x').ok_or_else(bad)?;
                Kind::Mat(num(a)?, num(b)?)
            }
            "skew" => Kind::Skew(num(p)?),
            "quadric" => Kind::Quadric(num(p)?),
            _ => return Err(bad()),
        };
        if kind.dim() == 0 {
            return Err(bad());
        }
        Ok(kind)
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Kind::Sym(_) => "sym",
            Kind::Mat(..) => "mat",
            Kind::Skew(_) => "skew",
            Kind::Quadric(_) => "quadric",
        }
    }

    pub fn params(&self) -> Vec<usize> {
        match *self {
            Kind::Sym(r) => vec![r],
            Kind::Mat(q, s) => vec![q, s],
            Kind::Skew(s) => vec![s],
            Kind::Quadric(n) => vec![n],
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Kind::Mat(q, s) => write!(f, "mat:{q}x{s}"),
            k => write!(f, "{}:{}", k.tag(), k.params()[0]),
        }
    }
}

/// One real coordinate of p+: a variable and its matrix basis element.
#[derive(Clone, Debug, PartialEq)]
pub struct Coord {
    pub var: Var,
    pub basis: Vec<Vec<Rational>>,
    pub weight: Rational,
}

/// A realized domain: kind plus an ordered orthogonal coordinate basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Domain {
    pub kind: Kind,
    pub coords: Vec<Coord>,
    pub name: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StructureConstants {
    pub r: usize,
    pub n: usize,
    pub d: String,
    pub b: String,
    pub p: String,
    pub eps: String,
}

fn unit(rows: usize, cols: usize, entries: &[(usize, usize, i64)]) -> Vec<Vec<Rational>> {
    let mut m = vec![vec![rzero(); cols]; rows];
    for &(i, j, v) in entries {
        m[i][j] = int(v);
    }
    m
}

impl Domain {
    /// Standard coordinates `g[i,j]` (1-based) for the kind.
    pub fn standard(kind: Kind, g: &str) -> Domain {
        let (rows, cols) = kind.shape();
        let mut raw = Vec::new();
        match kind {
            Kind::Sym(r) => {
                for i in 0..r {
                    for j in i..r {
                        let b = if i == j { unit(r, r, &[(i, i, 1)]) } else { unit(r, r, &[(i, j, 1), (j, i, 1)]) };
                        raw.push((Var::new(g, i + 1, j + 1), b));
                    }
                }
            }
            Kind::Mat(q, s) => {
                for i in 0..q {
                    for j in 0..s {
                        raw.push((Var::new(g, i + 1, j + 1), unit(q, s, &[(i, j, 1)])));
                    }
                }
            }
            Kind::Skew(s) => {
                for i in 0..s {
                    for j in (i + 1)..s {
                        raw.push((Var::new(g, i + 1, j + 1), unit(s, s, &[(i, j, 1), (j, i, -1)])));
                    }
                }
            }
            Kind::Quadric(n) => {
                for j in 0..n {
                    raw.push((Var::new(g, 1, j + 1), unit(rows, cols, &[(j, 0, 1)])));
                }
            }
        }
        Domain::custom(&format!("{kind}/{g}"), kind, raw)
    }

    /// A domain with explicitly chosen coordinate basis matrices; weights follow
    /// from the normalized inner product.
    pub fn custom(name: &str, kind: Kind, raw: Vec<(Var, Vec<Vec<Rational>>)>) -> Domain {
        let kappa = kind.kappa();
        let coords = raw
            .into_iter()
            .map(|(var, basis)| {
                let mut w = rzero();
                for row in &basis {
                    for e in row {
                        w += e * e;
                    }
                }
                Coord { var, basis, weight: &kappa * w }
            })
            .collect();
        Domain { kind, coords, name: name.to_string() }
    }

    pub fn constants(&self) -> StructureConstants {
        let k = self.kind;
        StructureConstants {
            r: k.rank(),
            n: k.dim(),
            d: k.d().to_string(),
            b: k.b().to_string(),
            p: k.genus().to_string(),
            eps: k.eps().to_string(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn rank(&self) -> usize {
        self.kind.rank()
    }

    pub fn vars(&self) -> Vec<Var> {
        self.coords.iter().map(|c| c.var).collect()
    }

    pub fn index_of(&self, v: &Var) -> Option<usize> {
        let h = v.holo();
        self.coords.iter().position(|c| c.var == h)
    }

    pub fn weight(&self, v: &Var) -> Option<&Rational> {
        self.index_of(v).map(|i| &self.coords[i].weight)
    }

    pub fn groups(&self) -> Vec<&'static str> {
        let mut g: Vec<&'static str> = Vec::new();
        for c in &self.coords {
            if !g.iter().any(|x| std::ptr::eq(*x, c.var.g)) {
                g.push(c.var.g);
            }
        }
        g
    }

    /// Sum of `vals[a] * M_a`.
    pub fn matrix_of<C: Coeff>(&self, vals: &[Poly<C>]) -> PMat<C> {
        let (rows, cols) = self.kind.shape();
        let mut m = PMat::zeros(rows, cols);
        for (c, v) in self.coords.iter().zip(vals.iter()) {
            if v.is_zero() {
                continue;
            }
            for i in 0..rows {
                for j in 0..cols {
                    let b = &c.basis[i][j];
                    if !Zero::is_zero(b) {
                        let cur = m.get(i, j).add(&v.scale_rat(b));
                        m.set(i, j, cur);
                    }
                }
            }
        }
        m
    }

    pub fn matrix_of_rat<C: Coeff>(&self, vals: &[Rational]) -> PMat<C> {
        let v: Vec<Poly<C>> = vals.iter().map(|r| Poly::from_rat(r.clone())).collect();
        self.matrix_of(&v)
    }

    /// Coordinates of a matrix in this basis (orthogonal projection).
    pub fn coords_of<C: Coeff>(&self, m: &PMat<C>) -> Vec<Poly<C>> {
        self.coords
            .iter()
            .map(|c| {
                let mut acc = Poly::zero();
                let mut nrm = rzero();
                for i in 0..m.rows {
                    for j in 0..m.cols {
                        let b = &c.basis[i][j];
                        if !Zero::is_zero(b) {
                            nrm += b * b;
                            acc.add_assign(&m.get(i, j).scale_rat(b));
                        }
                    }
                }
                acc.scale_rat(&(rone() / nrm))
            })
            .collect()
    }

    /// Symbolic holomorphic point built from the coordinate variables.
    pub fn sym_point<C: Coeff>(&self) -> PMat<C> {
        self.sym_point_where(&|_| true, false)
    }

    /// Symbolic conjugate point `sum conj(v_a) M_a`.
    pub fn conj_point<C: Coeff>(&self) -> PMat<C> {
        self.sym_point_where(&|_| true, true)
    }

    /// Symbolic point using only the coordinates selected by `keep`.
    pub fn sym_point_where<C: Coeff>(&self, keep: &dyn Fn(&Var) -> bool, conj: bool) -> PMat<C> {
        let vals: Vec<Poly<C>> = self
            .coords
            .iter()
            .map(|c| {
                if keep(&c.var) {
                    Poly::var(if conj { c.var.bar() } else { c.var })
                } else {
                    Poly::zero()
                }
            })
            .collect();
        self.matrix_of(&vals)
    }

    /// Symbolic point with the coordinate variables renamed into group `g`.
    pub fn renamed_point<C: Coeff>(&self, g: &str, conj: bool) -> PMat<C> {
        let vals: Vec<Poly<C>> = self
            .coords
            .iter()
            .map(|c| {
                let v = Var { g: crate::exact::var::intern(&format!("{g}{}", c.var.g)), ..c.var };
                Poly::var(if conj { v.bar() } else { v })
            })
            .collect();
        self.matrix_of(&vals)
    }

    /// Frame tripotents `e_j` as coordinate vectors (matrix kinds only).
    pub fn frame(&self) -> Option<Vec<Vec<Rational>>> {
        let (rows, cols) = self.kind.shape();
        let r = self.rank();
        let mats: Vec<Vec<Vec<Rational>>> = match self.kind {
            Kind::Sym(_) | Kind::Mat(..) => (0..r).map(|j| unit(rows, cols, &[(j, j, 1)])).collect(),
            Kind::Skew(_) => (0..r).map(|j| unit(rows, cols, &[(2 * j, 2 * j + 1, 1), (2 * j + 1, 2 * j, -1)])).collect(),
            Kind::Quadric(_) => return None,
        };
        let mut out = Vec::new();
        for m in mats {
            let p: PMat<Rational> = PMat::from_rat(&m);
            let c = self.coords_of(&p);
            if self.matrix_of(&c) != p {
                return None;
            }
            out.push(c.iter().map(|x| x.const_term()).collect());
        }
        Some(out)
    }

    /// Maximal tripotent `e` as a coordinate vector (matrix kinds only).
    pub fn unit_point(&self) -> Option<Vec<Rational>> {
        let f = self.frame()?;
        let mut e = vec![rzero(); self.dim()];
        for t in f {
            for (a, b) in e.iter_mut().zip(t) {
                *a += b;
            }
        }
        Some(e)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"kind": self.kind.tag(), "params": self.kind.params()})
    }
}

/// Block-coordinate realizations used by the symmetric pairs.
pub mod blocks {
    use super::*;

    fn sym_pair(n: usize, i: usize, j: usize) -> Vec<Vec<Rational>> {
        if i == j {
            unit(n, n, &[(i, i, 1)])
        } else {
            unit(n, n, &[(i, j, 1), (j, i, 1)])
        }
    }

    fn skew_pair(n: usize, i: usize, j: usize) -> Vec<Vec<Rational>> {
        unit(n, n, &[(i, j, 1), (j, i, -1)])
    }

    /// SYM(s1+s2) with blocks `x11` (sym), `x12` (full), `x22` (sym).
    pub fn sym(s1: usize, s2: usize) -> Domain {
        let n = s1 + s2;
        let mut raw = Vec::new();
        for i in 0..s1 {
            for j in i..s1 {
                raw.push((Var::new("x11", i + 1, j + 1), sym_pair(n, i, j)));
            }
        }
        for i in 0..s1 {
            for j in 0..s2 {
                raw.push((Var::new("x12", i + 1, j + 1), sym_pair(n, i, s1 + j)));
            }
        }
        for i in 0..s2 {
            for j in i..s2 {
                raw.push((Var::new("x22", i + 1, j + 1), sym_pair(n, s1 + i, s1 + j)));
            }
        }
        Domain::custom(&format!("symblocks:{s1},{s2}"), Kind::Sym(n), raw)
    }

    /// MAT(q1+q2, s1+s2) with blocks `x11`, `x12`, `x21`, `x22`.
    pub fn mat(q1: usize, q2: usize, s1: usize, s2: usize) -> Domain {
        let (q, s) = (q1 + q2, s1 + s2);
        let mut raw = Vec::new();
        let blocks = [("x11", 0, 0, q1, s1), ("x12", 0, s1, q1, s2), ("x21", q1, 0, q2, s1), ("x22", q1, s1, q2, s2)];
        for (g, r0, c0, nr, nc) in blocks {
            for i in 0..nr {
                for j in 0..nc {
                    raw.push((Var::new(g, i + 1, j + 1), unit(q, s, &[(r0 + i, c0 + j, 1)])));
                }
            }
        }
        Domain::custom(&format!("matblocks:{q1},{q2},{s1},{s2}"), Kind::Mat(q, s), raw)
    }

    /// SKEW(s1+s2) with blocks `x11` (skew), `x12` (full), `x22` (skew).
    pub fn skew(s1: usize, s2: usize) -> Domain {
        let n = s1 + s2;
        let mut raw = Vec::new();
        for i in 0..s1 {
            for j in (i + 1)..s1 {
                raw.push((Var::new("x11", i + 1, j + 1), skew_pair(n, i, j)));
            }
        }
        for i in 0..s1 {
            for j in 0..s2 {
                raw.push((Var::new("x12", i + 1, j + 1), skew_pair(n, i, s1 + j)));
            }
        }
        for i in 0..s2 {
            for j in (i + 1)..s2 {
                raw.push((Var::new("x22", i + 1, j + 1), skew_pair(n, s1 + i, s1 + j)));
            }
        }
        Domain::custom(&format!("skewblocks:{s1},{s2}"), Kind::Skew(n), raw)
    }

    /// MAT(s,s) split into its symmetric part (group `sym_g`) and skew part (group `skew_g`).
    pub fn mat_sym_skew(s: usize, sym_g: &str, skew_g: &str) -> Domain {
        let mut raw = Vec::new();
        for i in 0..s {
            for j in i..s {
                raw.push((Var::new(sym_g, i + 1, j + 1), sym_pair(s, i, j)));
            }
        }
        for i in 0..s {
            for j in (i + 1)..s {
                raw.push((Var::new(skew_g, i + 1, j + 1), skew_pair(s, i, j)));
            }
        }
        Domain::custom(&format!("matsymskew:{s}/{sym_g},{skew_g}"), Kind::Mat(s, s), raw)
    }

    /// MAT(3,3) with `x1[1,k]` the cross-product matrix of `e_k` and `x2` symmetric.
    pub fn mat3_cross() -> Domain {
        let mut raw = Vec::new();
        // [v]x has (i,j) entry -eps_{ijk} v_k
        let cross = |k: usize| -> Vec<Vec<Rational>> {
            let (a, b) = ((k + 1) % 3, (k + 2) % 3);
            unit(3, 3, &[(b, a, 1), (a, b, -1)])
        };
        for k in 0..3 {
            raw.push((Var::new("x1", 1, k + 1), cross(k)));
        }
        for i in 0..3 {
            for j in i..3 {
                raw.push((Var::new("x2", i + 1, j + 1), sym_pair(3, i, j)));
            }
        }
        Domain::custom("mat3cross", Kind::Mat(3, 3), raw)
    }

    /// QUADRIC(n1+n2) with `x1` the first n1 coordinates and `x2` the rest.
    pub fn quadric(n1: usize, n2: usize) -> Domain {
        let n = n1 + n2;
        let mut raw = Vec::new();
        for j in 0..n1 {
            raw.push((Var::new("x1", 1, j + 1), unit(n, 1, &[(j, 0, 1)])));
        }
        for j in 0..n2 {
            raw.push((Var::new("x2", 1, j + 1), unit(n, 1, &[(n1 + j, 0, 1)])));
        }
        Domain::custom(&format!("quadricblocks:{n1},{n2}"), Kind::Quadric(n), raw)
    }
}
