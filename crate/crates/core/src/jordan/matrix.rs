use num::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{Coeff, Poly, Rational, Var};

/// Dense matrix over a polynomial ring.
#[derive(Clone, Debug, PartialEq)]
pub struct PMat<C: Coeff = Rational> {
    pub rows: usize,
    pub cols: usize,
    e: Vec<Poly<C>>,
}

impl<C: Coeff> PMat<C> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PMat { rows, cols, e: vec![Poly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Poly::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Poly<C>) -> Self {
        let mut e = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                e.push(f(i, j));
            }
        }
        PMat { rows, cols, e }
    }

    pub fn from_rat(m: &[Vec<Rational>]) -> Self {
        let rows = m.len();
        let cols = if rows == 0 { 0 } else { m[0].len() };
        Self::from_fn(rows, cols, |i, j| Poly::from_rat(m[i][j].clone()))
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly<C> {
        &self.e[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly<C>) {
        self.e[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> &[Poly<C>] {
        &self.e
    }

    pub fn map(&self, f: impl Fn(&Poly<C>) -> Poly<C>) -> Self {
        PMat { rows: self.rows, cols: self.cols, e: self.e.iter().map(f).collect() }
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Shape(format!("{}x{} vs {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o).expect("matrix add shape");
        PMat { rows: self.rows, cols: self.cols, e: self.e.iter().zip(o.e.iter()).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o).expect("matrix sub shape");
        PMat { rows: self.rows, cols: self.cols, e: self.e.iter().zip(o.e.iter()).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn neg(&self) -> Self {
        self.map(|p| p.neg())
    }

    pub fn scale(&self, c: &Poly<C>) -> Self {
        self.map(|p| p.mul(c))
    }

    pub fn scale_rat(&self, q: &Rational) -> Self {
        self.map(|p| p.scale_rat(q))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "matrix mul shape");
        let mut r = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * r.cols + j;
                    r.e[idx].add_assign(&a.mul(b));
                }
            }
        }
        r
    }

    /// Product truncated by `pred`-degree.
    pub fn mul_trunc(&self, o: &Self, pred: &dyn Fn(&Var) -> bool, max: u32) -> Self {
        assert_eq!(self.cols, o.rows, "matrix mul shape");
        let mut r = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * r.cols + j;
                    r.e[idx].add_assign(&a.mul_trunc(b, pred, max));
                }
            }
        }
        r
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Entrywise variable conjugation (no transpose).
    pub fn conj(&self) -> Self {
        self.map(|p| p.conj())
    }

    pub fn trace(&self) -> Poly<C> {
        let mut t = Poly::zero();
        for i in 0..self.rows.min(self.cols) {
            t.add_assign(self.get(i, i));
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|p| p.is_zero())
    }

    /// Frobenius bilinear pairing `sum_ij a_ij b_ij` (no conjugation).
    pub fn frobenius(&self, o: &Self) -> Poly<C> {
        let mut t = Poly::zero();
        for (a, b) in self.e.iter().zip(o.e.iter()) {
            if !a.is_zero() && !b.is_zero() {
                t.add_assign(&a.mul(b));
            }
        }
        t
    }

    /// Determinant by subset dynamic programming over columns.
    pub fn det(&self) -> Poly<C> {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Poly::one();
        }
        let mut dp: Vec<Poly<C>> = vec![Poly::zero(); 1 << n];
        dp[0] = Poly::one();
        for mask in 0usize..(1 << n) {
            if dp[mask].is_zero() {
                continue;
            }
            let row = mask.count_ones() as usize;
            if row == n {
                continue;
            }
            let cur = dp[mask].clone();
            for c in 0..n {
                if mask & (1 << c) != 0 {
                    continue;
                }
                let a = self.get(row, c);
                if a.is_zero() {
                    continue;
                }
                let above = (mask >> (c + 1)).count_ones();
                let term = cur.mul(a);
                let next = mask | (1 << c);
                if above % 2 == 0 {
                    dp[next].add_assign(&term);
                } else {
                    dp[next] = dp[next].sub(&term);
                }
            }
        }
        dp[(1 << n) - 1].clone()
    }

    /// Submatrix keeping the listed rows and columns.
    pub fn sub_matrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Pfaffian of a skew-symmetric matrix.
    pub fn pfaffian(&self) -> Poly<C> {
        assert_eq!(self.rows, self.cols);
        let idx: Vec<usize> = (0..self.rows).collect();
        self.pf_rec(&idx)
    }

    fn pf_rec(&self, idx: &[usize]) -> Poly<C> {
        let n = idx.len();
        if n == 0 {
            return Poly::one();
        }
        if n % 2 == 1 {
            return Poly::zero();
        }
        let mut acc = Poly::zero();
        for j in 1..n {
            let a = self.get(idx[0], idx[j]);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = idx.iter().enumerate().filter(|(k, _)| *k != 0 && *k != j).map(|(_, &v)| v).collect();
            let t = a.mul(&self.pf_rec(&rest));
            if j % 2 == 1 {
                acc.add_assign(&t);
            } else {
                acc = acc.sub(&t);
            }
        }
        acc
    }

    /// Classical adjugate: `x * adj(x) = det(x) I`.
    pub fn adjugate(&self) -> Self {
        let n = self.rows;
        Self::from_fn(n, n, |i, j| {
            let rows: Vec<usize> = (0..n).filter(|&k| k != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&k| k != i).collect();
            let m = self.sub_matrix(&rows, &cols).det();
            if (i + j) % 2 == 0 {
                m
            } else {
                m.neg()
            }
        })
    }

    /// Skew adjugate `x^#` with `x x^# = Pf(x) I` (even size).
    pub fn pf_adjugate(&self) -> Self {
        let n = self.rows;
        let mut r = Self::zeros(n, n);
        for k in 0..n {
            for l in (k + 1)..n {
                let rest: Vec<usize> = (0..n).filter(|&t| t != k && t != l).collect();
                let p = self.pf_rec(&rest);
                let p = if (k + l) % 2 == 0 { p } else { p.neg() };
                r.set(l, k, p.neg());
                r.set(k, l, p);
            }
        }
        r
    }

    /// Converts constant entries to a rational matrix.
    pub fn to_rat(&self) -> Option<Vec<Vec<Rational>>> {
        let mut out = vec![vec![<Rational as Zero>::zero(); self.cols]; self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let p = self.get(i, j);
                if !p.is_constant() {
                    return None;
                }
                out[i][j] = p.const_term().as_rat()?;
            }
        }
        Some(out)
    }

    pub fn substitute(&self, f: &dyn Fn(&Var) -> Option<Poly<C>>) -> Self {
        self.map(|p| p.substitute(f))
    }

    pub fn truncate(&self, pred: &dyn Fn(&Var) -> bool, max: u32) -> Self {
        self.map(|p| p.truncate(pred, max))
    }
}

/// Solves `a x = b` over the rationals; `None` when `a` is singular.
pub fn rat_solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a.iter().zip(b.iter()).map(|(r, v)| {
        let mut row = r.clone();
        row.push(v.clone());
        row
    }).collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !rz(&m[r][col]))?;
        m.swap(col, piv);
        let p = m[col][col].clone();
        for k in col..=n {
            m[col][k] = &m[col][k] / &p;
        }
        for r in 0..n {
            if r != col && !rz(&m[r][col]) {
                let f = m[r][col].clone();
                for k in col..=n {
                    let t = &f * &m[col][k];
                    m[r][k] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

pub fn rat_det(a: &[Vec<Rational>]) -> Rational {
    let n = a.len();
    let mut m = a.to_vec();
    let mut det = <Rational as One>::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !rz(&m[r][col])) else {
            return <Rational as Zero>::zero();
        };
        if piv != col {
            m.swap(col, piv);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in (col + 1)..n {
            if !rz(&m[r][col]) {
                let f = &m[r][col] / &p;
                for k in col..n {
                    let t = &f * &m[col][k];
                    m[r][k] -= t;
                }
            }
        }
    }
    det
}

pub fn rat_mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut r = vec![vec![<Rational as Zero>::zero(); m]; n];
    for i in 0..n {
        for t in 0..k {
            if rz(&a[i][t]) {
                continue;
            }
            for j in 0..m {
                r[i][j] += &a[i][t] * &b[t][j];
            }
        }
    }
    r
}

fn rz(x: &Rational) -> bool {
    Zero::is_zero(x)
}
