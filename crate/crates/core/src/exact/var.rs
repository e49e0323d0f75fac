use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::sync::Mutex;

use once_cell::sync::Lazy;
use smallvec::SmallVec;

use crate::error::{Error, Result};

static NAMES: Lazy<Mutex<HashSet<&'static str>>> = Lazy::new(|| Mutex::new(HashSet::new()));

/// Interns a group name so that equal names share one pointer.
pub fn intern(name: &str) -> &'static str {
    let mut set = NAMES.lock().unwrap();
    if let Some(s) = set.get(name) {
        return s;
    }
    let s: &'static str = Box::leak(name.to_string().into_boxed_str());
    set.insert(s);
    s
}

/// A polynomial variable `g[i,j]`; conjugate variables are independent symbols.
#[derive(Clone, Copy, Debug)]
pub struct Var {
    pub g: &'static str,
    pub i: u16,
    pub j: u16,
    pub conj: bool,
}

impl Var {
    pub fn new(g: &str, i: usize, j: usize) -> Var {
        Var { g: intern(g), i: i as u16, j: j as u16, conj: false }
    }

    /// A formal parameter such as `lambda`.
    pub fn param(name: &str) -> Var {
        Var::new(name, 0, 0)
    }

    pub fn bar(self) -> Var {
        Var { conj: !self.conj, ..self }
    }

    pub fn holo(self) -> Var {
        Var { conj: false, ..self }
    }

    pub fn with_group(self, g: &str) -> Var {
        Var { g: intern(g), ..self }
    }

    pub fn parse(s: &str) -> Result<Var> {
        let bad = || Error::Parse(format!("variable {s:?}"));
        let (conj, rest) = match s.strip_prefix('~') {
            Some(r) => (true, r),
            None => (false, s),
        };
        if !rest.contains('[') {
            let mut v = Var::param(rest);
            v.conj = conj;
            return Ok(v);
        }
        let open = rest.find('[').ok_or_else(bad)?;
        let inner = rest[open + 1..].strip_suffix(']').ok_or_else(bad)?;
        let mut it = inner.split(',');
        let i = it.next().and_then(|t| t.trim().parse().ok()).ok_or_else(bad)?;
        let j = it.next().and_then(|t| t.trim().parse().ok()).ok_or_else(bad)?;
        let mut v = Var::new(&rest[..open], i, j);
        v.conj = conj;
        Ok(v)
    }
}

impl PartialEq for Var {
    fn eq(&self, o: &Var) -> bool {
        std::ptr::eq(self.g, o.g) && self.i == o.i && self.j == o.j && self.conj == o.conj
    }
}
impl Eq for Var {}

impl std::hash::Hash for Var {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        (self.g.as_ptr() as usize).hash(h);
        self.i.hash(h);
        self.j.hash(h);
        self.conj.hash(h);
    }
}

impl Ord for Var {
    fn cmp(&self, o: &Var) -> Ordering {
        if !std::ptr::eq(self.g, o.g) {
            let c = self.g.cmp(o.g);
            if c != Ordering::Equal {
                return c;
            }
        }
        (self.conj, self.i, self.j).cmp(&(o.conj, o.i, o.j))
    }
}
impl PartialOrd for Var {
    fn partial_cmp(&self, o: &Var) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.conj {
            write!(f, "~")?;
        }
        if self.i == 0 && self.j == 0 {
            write!(f, "{}", self.g)
        } else {
            write!(f, "{}[{},{}]", self.g, self.i, self.j)
        }
    }
}

/// Monomial: sorted (variable, exponent) list, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Mono {
    deg: u32,
    v: SmallVec<[(Var, u32); 4]>,
}

impl Ord for Mono {
    fn cmp(&self, o: &Mono) -> Ordering {
        self.deg.cmp(&o.deg).then_with(|| self.v.cmp(&o.v))
    }
}
impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Mono) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Mono {
    pub fn one() -> Mono {
        Mono::default()
    }

    pub fn var(v: Var, e: u32) -> Mono {
        if e == 0 {
            return Mono::one();
        }
        let mut m = Mono::one();
        m.v.push((v, e));
        m.deg = e;
        m
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Mono {
        let mut m = Mono::one();
        for (v, e) in pairs {
            m = m.mul(&Mono::var(v, e));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.v.is_empty()
    }

    pub fn deg(&self) -> u32 {
        self.deg
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.v
    }

    pub fn exp(&self, x: &Var) -> u32 {
        self.v.iter().find(|(v, _)| v == x).map_or(0, |p| p.1)
    }

    pub fn deg_in(&self, pred: impl Fn(&Var) -> bool) -> u32 {
        self.v.iter().filter(|(v, _)| pred(v)).map(|p| p.1).sum()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut v = SmallVec::with_capacity(self.v.len() + o.v.len());
        let (mut a, mut b) = (0, 0);
        while a < self.v.len() && b < o.v.len() {
            match self.v[a].0.cmp(&o.v[b].0) {
                Ordering::Less => {
                    v.push(self.v[a]);
                    a += 1;
                }
                Ordering::Greater => {
                    v.push(o.v[b]);
                    b += 1;
                }
                Ordering::Equal => {
                    v.push((self.v[a].0, self.v[a].1 + o.v[b].1));
                    a += 1;
                    b += 1;
                }
            }
        }
        v.extend_from_slice(&self.v[a..]);
        v.extend_from_slice(&o.v[b..]);
        Mono { deg: self.deg + o.deg, v }
    }

    /// Divides by `x^k`; returns `None` when the exponent is too small.
    pub fn div_var(&self, x: &Var, k: u32) -> Option<Mono> {
        if k == 0 {
            return Some(self.clone());
        }
        let pos = self.v.iter().position(|(v, _)| v == x)?;
        let e = self.v[pos].1;
        if e < k {
            return None;
        }
        let mut m = self.clone();
        if e == k {
            m.v.remove(pos);
        } else {
            m.v[pos].1 = e - k;
        }
        m.deg -= k;
        Some(m)
    }

    /// Divides by `o` if it divides.
    pub fn div(&self, o: &Mono) -> Option<Mono> {
        let mut m = self.clone();
        for (v, e) in o.v.iter() {
            m = m.div_var(v, *e)?;
        }
        Some(m)
    }

    /// Splits into (part with pred true, rest).
    pub fn split(&self, pred: impl Fn(&Var) -> bool) -> (Mono, Mono) {
        let mut a = Mono::one();
        let mut b = Mono::one();
        for &(v, e) in self.v.iter() {
            let t = if pred(&v) { &mut a } else { &mut b };
            t.v.push((v, e));
            t.deg += e;
        }
        (a, b)
    }

    pub fn map_vars(&self, f: impl Fn(Var) -> Var) -> Mono {
        Mono::from_pairs(self.v.iter().map(|&(v, e)| (f(v), e)))
    }

    pub fn conj(&self) -> Mono {
        self.map_vars(Var::bar)
    }

    /// Product of factorials of the exponents.
    pub fn factorial(&self) -> num::BigInt {
        let mut acc = num::BigInt::from(1);
        for &(_, e) in self.v.iter() {
            for t in 2..=e {
                acc *= t;
            }
        }
        acc
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.v.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Formal parameters are the index-free variables created by [`Var::param`].
pub fn is_param(v: &Var) -> bool {
    v.i == 0 && v.j == 0 && !v.conj
}
