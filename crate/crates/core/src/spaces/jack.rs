use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;
use serde::Serialize;

use crate::exact::{
    factorial, fmt_rat, int, partitions_of, rat_is_zero, rat_pow, rone, rzero, Coeff, Mono, MultiPoly, Partition, Poly,
    Rational, Var,
};
use crate::jordan::matrix::rat_solve;

/// Power-sum symbol `p_j`.
pub fn psym(j: u32) -> Var {
    Var::new("p", j as usize, 0)
}

fn mono_partition(m: &Mono) -> Vec<u32> {
    let mut parts = Vec::new();
    for (v, e) in m.pairs() {
        for _ in 0..*e {
            parts.push(v.i as u32);
        }
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

fn p_of(parts: &[u32]) -> Mono {
    let mut m = Mono::one();
    for &j in parts {
        if j > 0 {
            m = m.mul(&Mono::var(psym(j), 1));
        }
    }
    m
}

/// `z_lambda = prod i^{m_i} m_i!`.
pub fn z_lambda(parts: &[u32]) -> Rational {
    let mut acc = rone();
    let mut counts: HashMap<u32, u32> = HashMap::new();
    for &p in parts {
        if p > 0 {
            *counts.entry(p).or_default() += 1;
        }
    }
    for (i, m) in counts {
        acc *= rat_pow(&int(i as i64), m as i32) * factorial(m);
    }
    acc
}

/// A symmetric function written in the power sums `p_1, p_2, ...`.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceCoordinatePoly(pub MultiPoly);

#[derive(Serialize)]
pub struct PowersumTerm {
    pub coeff: String,
    pub powers: Vec<u32>,
}

impl TraceCoordinatePoly {
    pub fn poly(&self) -> &MultiPoly {
        &self.0
    }

    pub fn terms_json(&self) -> Vec<PowersumTerm> {
        self.0.terms().map(|(m, c)| PowersumTerm { coeff: fmt_rat(c), powers: mono_partition(m) }).collect()
    }

    /// Substitutes `p_j -> trace(j)`.
    pub fn eval_with<C: Coeff>(&self, trace: &dyn Fn(u32) -> Poly<C>) -> Poly<C> {
        let lifted: Poly<C> = self.0.try_map_coeffs(|r| Ok(C::from_rat(r.clone()))).expect("lift");
        let mut cache: HashMap<u32, Poly<C>> = HashMap::new();
        for v in self.0.vars() {
            cache.insert(v.i as u32, trace(v.i as u32));
        }
        lifted.substitute(&|v| cache.get(&(v.i as u32)).cloned())
    }

    /// Value at the diagonal point `diag(a)`.
    pub fn eval_diag(&self, a: &[Rational]) -> Rational {
        let mut acc = rzero();
        for (m, c) in self.0.terms() {
            let mut t = c.clone();
            for (v, e) in m.pairs() {
                let pj: Rational = a.iter().map(|x| rat_pow(x, v.i as i32)).sum();
                t *= rat_pow(&pj, *e as i32);
            }
            acc += t;
        }
        acc
    }
}

/// `<p_l, p_m>_alpha = delta z_l alpha^{len l}`.
fn jack_inner(alpha: &Rational, f: &MultiPoly, g: &MultiPoly) -> Rational {
    let mut acc = rzero();
    for (m, c) in f.terms() {
        let d = g.coeff(m);
        if rat_is_zero(&d) {
            continue;
        }
        let parts = mono_partition(m);
        acc += c * d * z_lambda(&parts) * rat_pow(alpha, parts.len() as i32);
    }
    acc
}

/// Number of ways to place the parts of `mu` into bins with sums `lam`.
fn placements(mu: &[u32], bins: &mut Vec<u32>) -> u64 {
    match mu.split_first() {
        None => u64::from(bins.iter().all(|&b| b == 0)),
        Some((&first, rest)) => {
            let mut total = 0;
            for i in 0..bins.len() {
                if bins[i] >= first {
                    bins[i] -= first;
                    total += placements(rest, bins);
                    bins[i] += first;
                }
            }
            total
        }
    }
}

/// Monomial symmetric functions of degree `n` in the power-sum basis.
pub fn monomial_in_powersums(n: u32) -> Vec<(Partition, MultiPoly)> {
    let parts = partitions_of(n, n as usize);
    let k = parts.len();
    // a[mu][lam] = coefficient of m_lam in p_mu
    let trimmed: Vec<Vec<u32>> = parts.iter().map(|p| p.parts().iter().copied().filter(|&x| x > 0).collect()).collect();
    let mut a = vec![vec![rzero(); k]; k];
    for (i, mu) in trimmed.iter().enumerate() {
        for (j, lam) in trimmed.iter().enumerate() {
            let mut bins = lam.clone();
            a[i][j] = int(placements(mu, &mut bins) as i64);
        }
    }
    // m_lam = sum_mu inv[lam][mu] p_mu, i.e. solve a^T columns
    let at: Vec<Vec<Rational>> = (0..k).map(|j| (0..k).map(|i| a[i][j].clone()).collect()).collect();
    let mut out = Vec::new();
    for (l, lam) in parts.iter().enumerate() {
        // p_mu = sum_lam a[mu][lam] m_lam  =>  m = A^{-T}... solve a^T x = e_l? no: m_lam = sum_mu c_mu p_mu
        // requires sum_mu c_mu a[mu][lam'] = delta(lam, lam'), i.e. a^T c = e_lam.
        let mut e = vec![rzero(); k];
        e[l] = rone();
        let c = rat_solve(&at, &e).expect("power sums are a basis");
        let mut p = MultiPoly::zero();
        for (mu, cm) in trimmed.iter().zip(c) {
            if !rat_is_zero(&cm) {
                p.add_term(p_of(mu), cm);
            }
        }
        out.push((lam.clone(), p));
    }
    out
}

/// Jack polynomials `P_lambda^{(alpha)}` of degree `n` (monic in `m_lambda`), in power sums.
pub fn jack_p(alpha: &Rational, n: u32) -> Vec<(Partition, MultiPoly)> {
    let mut mons = monomial_in_powersums(n);
    mons.reverse(); // increasing lex order extends dominance
    let mut done: Vec<(Partition, MultiPoly, Rational)> = Vec::new();
    for (lam, m) in mons {
        let mut p = m.clone();
        for (_, q, qq) in &done {
            let c = jack_inner(alpha, &m, q) / qq;
            if !rat_is_zero(&c) {
                p = p.sub(&q.scale_rat(&c));
            }
        }
        let pp = jack_inner(alpha, &p, &p);
        done.push((lam, p, pp));
    }
    done.reverse();
    done.into_iter().map(|(l, p, _)| (l, p)).collect()
}

type Table = Arc<Vec<(Partition, MultiPoly)>>;

static PHI_CACHE: Lazy<Mutex<HashMap<(String, u32), Table>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// `Phi~_m` for all `|m| = n` in the full ring of symmetric functions:
/// `p_1^n/n! = sum_m Phi~_m` with `Phi~_m` proportional to the Jack polynomial, `alpha = 2/d`.
pub fn phi_tilde_table(d: &Rational, n: u32) -> Table {
    let key = (fmt_rat(d), n);
    if let Some(t) = PHI_CACHE.lock().unwrap().get(&key) {
        return t.clone();
    }
    let alpha = int(2) / d;
    let target = MultiPoly::term(p_of(&vec![1; n as usize]), rone() / factorial(n));
    let table: Vec<(Partition, MultiPoly)> = jack_p(&alpha, n)
        .into_iter()
        .map(|(lam, p)| {
            let c = jack_inner(&alpha, &target, &p) / jack_inner(&alpha, &p, &p);
            (lam, p.scale_rat(&c))
        })
        .collect();
    let t = Arc::new(table);
    PHI_CACHE.lock().unwrap().insert(key, t.clone());
    t
}

/// Elementary symmetric `e_k` in power sums (Newton identities).
fn elementary(k: u32, memo: &mut HashMap<u32, MultiPoly>) -> MultiPoly {
    if k == 0 {
        return MultiPoly::one();
    }
    if let Some(e) = memo.get(&k) {
        return e.clone();
    }
    let mut acc = MultiPoly::zero();
    for i in 1..=k {
        let t = elementary(k - i, memo).mul(&MultiPoly::var(psym(i)));
        acc = if i % 2 == 1 { acc.add(&t) } else { acc.sub(&t) };
    }
    let e = acc.scale_rat(&(rone() / int(k as i64)));
    memo.insert(k, e.clone());
    e
}

/// Rewrites `p_j` with `j > r` in terms of `p_1..p_r` (valid in `r` variables).
pub fn reduce_rank(f: &MultiPoly, r: usize) -> MultiPoly {
    let r = r as u32;
    let maxj = f.vars().iter().map(|v| v.i as u32).max().unwrap_or(0);
    if maxj <= r {
        return f.clone();
    }
    if r == 0 {
        return MultiPoly::from_rat(f.const_term());
    }
    let mut memo = HashMap::new();
    let es: Vec<MultiPoly> = (0..=r).map(|i| elementary(i, &mut memo)).collect();
    let mut red: HashMap<u32, MultiPoly> = HashMap::new();
    for j in 1..=maxj {
        let v = if j <= r {
            MultiPoly::var(psym(j))
        } else {
            let mut acc = MultiPoly::zero();
            for i in 1..=r {
                let t = es[i as usize].mul(&red[&(j - i)]);
                acc = if i % 2 == 1 { acc.add(&t) } else { acc.sub(&t) };
            }
            acc
        };
        red.insert(j, v);
    }
    f.substitute(&|v| if v.g == "p" { red.get(&(v.i as u32)).cloned() } else { None })
}

/// `Phi~_m^{(d)}` in `r = len(m)`-or-more variables, reduced to `p_1..p_r`.
pub fn jack_phi_tilde(d: &Rational, r: usize, m: &Partition) -> TraceCoordinatePoly {
    let n = m.size();
    if m.len() > r {
        return TraceCoordinatePoly(MultiPoly::zero());
    }
    let table = phi_tilde_table(d, n);
    let mt = m.trimmed();
    let p = table.iter().find(|(l, _)| l.trimmed() == mt).map(|(_, p)| p.clone()).unwrap_or_default();
    TraceCoordinatePoly(reduce_rank(&p, r))
}

/// Numerator and denominator of the Schur bialternant `det(t_i^{m_j+r-j}) / det(t_i^{r-j})`.
pub fn bialternant(m: &Partition, r: usize) -> (MultiPoly, MultiPoly) {
    use crate::jordan::PMat;
    let t = |i: usize| MultiPoly::var(Var::new("t", i + 1, 0));
    let parts: Vec<u32> = (0..r).map(|j| m.part(j)).collect();
    let num = PMat::from_fn(r, r, |i, j| t(i).pow(parts[j] + (r - 1 - j) as u32)).det();
    let den = PMat::from_fn(r, r, |i, j| t(i).pow((r - 1 - j) as u32)).det();
    (num, den)
}

/// Power sums `p_j(t_1..t_r)` as polynomials in `t`.
pub fn powersum_in_t(j: u32, r: usize) -> MultiPoly {
    let mut p = MultiPoly::zero();
    for i in 0..r {
        p.add_term(Mono::var(Var::new("t", i + 1, 0), j), rone());
    }
    p
}

/// Expands a trace-coordinate polynomial in explicit variables `t_1..t_r`.
pub fn to_t_poly(f: &TraceCoordinatePoly, r: usize) -> MultiPoly {
    f.eval_with(&|j| powersum_in_t(j, r))
}
