use std::fmt;

use crate::error::{Error, Result};

/// Weakly decreasing tuple of non-negative integers; trailing zeros are kept.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("not a partition: {parts:?}")));
        }
        Ok(Partition(parts))
    }

    pub fn zero(r: usize) -> Self {
        Partition(vec![0; r])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.iter().filter(|&&p| p > 0).count()
    }

    pub fn is_empty(&self) -> bool {
        self.size() == 0
    }

    /// Part `i` (0-based), zero beyond the stored length.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Padded or trimmed copy of length `r` (trimming only zeros).
    pub fn with_len(&self, r: usize) -> Option<Self> {
        if self.len() > r {
            return None;
        }
        let mut v = self.0.clone();
        v.resize(r, 0);
        Some(Partition(v))
    }

    /// Nonzero parts only.
    pub fn trimmed(&self) -> Self {
        Partition(self.0.iter().copied().filter(|&p| p > 0).collect())
    }

    pub fn contains(&self, o: &Partition) -> bool {
        let n = self.0.len().max(o.0.len());
        (0..n).all(|i| self.part(i) >= o.part(i))
    }

    /// `(k - m_r, ..., k - m_1)` for a length-`r` partition.
    pub fn complement(&self, k: u32, r: usize) -> Option<Self> {
        let m = self.with_len(r)?;
        if m.part(0) > k {
            return None;
        }
        Some(Partition(m.0.iter().rev().map(|&p| k - p).collect()))
    }

    pub fn dominates(&self, o: &Partition) -> bool {
        let n = self.0.len().max(o.0.len());
        let (mut a, mut b) = (0u32, 0u32);
        for i in 0..n {
            a += self.part(i);
            b += o.part(i);
            if a < b {
                return false;
            }
        }
        a == b
    }

    pub fn scaled(&self, f: u32) -> Self {
        Partition(self.0.iter().map(|p| p * f).collect())
    }

    pub fn parse(s: &str) -> Result<Self> {
        let parts: Result<Vec<u32>> = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("partition {s:?}"))))
            .collect();
        Self::new(parts?)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// All partitions of `n` with at most `max_len` parts, as length-`max_len` tuples,
/// in decreasing lexicographic order.
pub fn partitions_of(n: u32, max_len: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(n: u32, max_part: u32, max_len: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            let mut v = cur.clone();
            v.resize(max_len, 0);
            out.push(Partition(v));
            return;
        }
        if cur.len() == max_len {
            return;
        }
        for p in (1..=max_part.min(n)).rev() {
            cur.push(p);
            rec(n - p, p, max_len, cur, out);
            cur.pop();
        }
    }
    rec(n, n, max_len, &mut cur, &mut out);
    out
}

/// All partitions with `|m| <= n` and at most `r` parts.
pub fn partitions_up_to(n: u32, r: usize) -> Vec<Partition> {
    (0..=n).flat_map(|k| partitions_of(k, r)).collect()
}
