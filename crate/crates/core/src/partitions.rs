//! Integer partitions, hook lengths and simultaneous core enumeration.
//!
//! Two enumerators are provided. [`enumerate_st_cores`] walks order ideals
//! of the poset of semigroup gaps (the first-column hook sets of the cores).
//! [`naive_cores_up_to`] knows nothing about gaps: it grows partitions one
//! row at a time from the bottom and checks raw hook lengths, and is used as
//! an independent oracle.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

/// An ordered pair of distinct, relatively prime positive integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CorePair {
    s: u32,
    t: u32,
}

/// First-column hook lengths of a partition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BetaSet(BTreeSet<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} has a zero part"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn num_parts(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.0.first().copied().unwrap_or(0);
        Partition(
            (1..=width)
                .map(|j| self.0.iter().take_while(|&&p| p >= j).count() as u32)
                .collect(),
        )
    }

    /// Hook length of every cell, row by row: `λ_i − i + λ′_j − j + 1`.
    pub fn hook_lengths(&self) -> Vec<Vec<u32>> {
        let conj = self.conjugate();
        self.0
            .iter()
            .enumerate()
            .map(|(i, &row)| {
                (0..row as usize)
                    .map(|j| (row as usize - j) as u32 + conj.0[j] - i as u32 - 1)
                    .collect()
            })
            .collect()
    }

    pub fn hook_set(&self) -> BTreeSet<u32> {
        self.hook_lengths().into_iter().flatten().collect()
    }

    /// True iff no hook length equals `s`.
    pub fn is_core(&self, s: u32) -> bool {
        self.hook_lengths().iter().flatten().all(|&h| h != s)
    }

    pub fn is_st_core(&self, pair: CorePair) -> bool {
        self.hook_lengths()
            .iter()
            .flatten()
            .all(|&h| h != pair.s && h != pair.t)
    }

    pub fn first_column_hooks(&self) -> BetaSet {
        let k = self.0.len() as u32;
        BetaSet(
            self.0
                .iter()
                .enumerate()
                .map(|(i, &p)| p + k - 1 - i as u32)
                .collect(),
        )
    }

    /// Compact form: `4211` when every part is a single digit,
    /// `12,3` otherwise, and `empty` for the empty partition.
    pub fn compact(&self) -> String {
        if self.0.is_empty() {
            "empty".to_string()
        } else if self.0.iter().all(|&p| p <= 9) {
            self.0.iter().map(|p| p.to_string()).collect()
        } else {
            self.0
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.compact())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "empty" {
            return Ok(Partition::empty());
        }
        let parts: Option<Vec<u32>> = if s.contains(',') {
            s.split(',').map(|p| p.trim().parse::<u32>().ok()).collect()
        } else {
            s.chars().map(|c| c.to_digit(10)).collect()
        };
        Partition::new(parts.ok_or_else(|| Error::Parse(format!("bad partition '{s}'")))?)
    }
}

impl CorePair {
    pub fn new(s: u32, t: u32) -> Result<Self> {
        if s == 0 || t == 0 || s == t || s.gcd(&t) != 1 {
            return Err(Error::NotCoprime { s, t });
        }
        Ok(CorePair { s, t })
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn swapped(&self) -> CorePair {
        CorePair {
            s: self.t,
            t: self.s,
        }
    }

    /// Largest integer not of the form `a·s + b·t` with `a, b ≥ 0`.
    pub fn frobenius_number(&self) -> i64 {
        self.s as i64 * self.t as i64 - self.s as i64 - self.t as i64
    }

    pub fn is_representable(&self, n: u64) -> bool {
        let (s, t) = (self.s as u64, self.t as u64);
        (0..=n / s).any(|a| (n - a * s).is_multiple_of(t))
    }

    /// Positive integers not representable by `s` and `t`, ascending.
    pub fn gaps(&self) -> Vec<u32> {
        let f = self.frobenius_number();
        if f < 1 {
            return Vec::new();
        }
        (1..=f as u32)
            .filter(|&n| !self.is_representable(n as u64))
            .collect()
    }

    /// All valid pairs `s < t ≤ max_t`, ordered by `(s + t, s)`.
    pub fn coprime_pairs_up_to(max_t: u32) -> Vec<CorePair> {
        let mut pairs: Vec<CorePair> = (1..=max_t)
            .flat_map(|t| (1..t).filter_map(move |s| CorePair::new(s, t).ok()))
            .collect();
        pairs.sort_by_key(|p| (p.s + p.t, p.s));
        pairs
    }
}

impl fmt::Display for CorePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.s, self.t)
    }
}

impl BetaSet {
    pub fn new(labels: Vec<u32>) -> Result<Self> {
        let set: BTreeSet<u32> = labels.iter().copied().collect();
        if set.len() != labels.len() {
            return Err(Error::InvalidBetaSet(format!(
                "{labels:?} has repeated labels"
            )));
        }
        if set.contains(&0) {
            return Err(Error::InvalidBetaSet("labels must be positive".into()));
        }
        Ok(BetaSet(set))
    }

    pub fn labels(&self) -> impl DoubleEndedIterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Size of the corresponding partition: label sum minus `k(k−1)/2`.
    pub fn partition_size(&self) -> u64 {
        let k = self.0.len() as u64;
        self.0.iter().map(|&x| x as u64).sum::<u64>() - k * k.saturating_sub(1) / 2
    }

    /// Inverse of [`Partition::first_column_hooks`]: with labels sorted
    /// descending `x_1 > … > x_k`, part `i` is `x_i − (k − i)`.
    pub fn to_partition(&self) -> Partition {
        let k = self.0.len() as u32;
        Partition(
            self.0
                .iter()
                .rev()
                .enumerate()
                .map(|(i, &x)| x - (k - 1 - i as u32))
                .collect(),
        )
    }
}

/// Enumerates every `(s,t)`-core as the order ideals of the gap poset, where
/// `x` covers `x − s` and `x − t` whenever those are positive.
///
/// Sorted by size, then by parts in decreasing lexicographic order.
pub fn enumerate_st_cores(pair: CorePair) -> Vec<Partition> {
    let mut out: Vec<Partition> = order_ideals(pair)
        .iter()
        .map(BetaSet::to_partition)
        .collect();
    out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| b.0.cmp(&a.0)));
    out
}

/// All order ideals of the gap poset, i.e. the beta-sets of the cores.
pub fn order_ideals(pair: CorePair) -> Vec<BetaSet> {
    let gaps = pair.gaps();
    let (s, t) = (pair.s, pair.t);
    let mut out = Vec::new();
    let mut chosen: BTreeSet<u32> = BTreeSet::new();

    // Gaps are visited in increasing order, so x − s and x − t are decided first.
    fn walk(
        gaps: &[u32],
        idx: usize,
        s: u32,
        t: u32,
        chosen: &mut BTreeSet<u32>,
        out: &mut Vec<BetaSet>,
    ) {
        let Some(&x) = gaps.get(idx) else {
            out.push(BetaSet(chosen.clone()));
            return;
        };
        walk(gaps, idx + 1, s, t, chosen, out);
        let below_ok = |d: u32| x <= d || chosen.contains(&(x - d));
        if below_ok(s) && below_ok(t) {
            chosen.insert(x);
            walk(gaps, idx + 1, s, t, chosen, out);
            chosen.remove(&x);
        }
    }

    walk(&gaps, 0, s, t, &mut chosen, &mut out);
    out
}

/// `(s+t−1)! / (s! t!)`.
pub fn anderson_count(pair: CorePair) -> BigUint {
    let fact = |n: u32| (1..=n).fold(BigUint::one(), |acc, k| acc * k);
    fact(pair.s + pair.t - 1) / (fact(pair.s) * fact(pair.t))
}

/// Sizes of all `(s,t)`-cores, ascending.
pub fn size_multiset(pair: CorePair) -> Vec<u64> {
    let mut sizes: Vec<u64> = order_ideals(pair)
        .iter()
        .map(BetaSet::partition_size)
        .collect();
    sizes.sort_unstable();
    sizes
}

/// Every `(s,t)`-core of size at most `max_size`, found from hook lengths alone.
///
/// Partitions are grown by prepending a new top row no shorter than the
/// current one. The hooks of the rows already placed never change when a
/// row is added above them, and every set of bottom rows of a core is itself
/// a core, so rejecting any row that creates a hook of length `s` or `t`
/// prunes nothing that could lead to a core.
pub fn naive_cores_up_to(pair: CorePair, max_size: u64) -> Vec<Partition> {
    let mut out = vec![Partition::empty()];
    // rows stored bottom-up
    let mut rows: Vec<u32> = Vec::new();
    grow(pair, max_size, 0, &mut rows, &mut out);
    out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| b.0.cmp(&a.0)));
    out
}

fn grow(pair: CorePair, max_size: u64, size: u64, rows: &mut Vec<u32>, out: &mut Vec<Partition>) {
    let min_len = rows.last().copied().unwrap_or(1).max(1);
    let mut len = min_len;
    while size + len as u64 <= max_size {
        if new_row_hooks_ok(pair, rows, len) {
            rows.push(len);
            out.push(Partition(rows.iter().rev().copied().collect()));
            grow(pair, max_size, size + len as u64, rows, out);
            rows.pop();
        }
        len += 1;
    }
}

/// Hooks of a new top row of length `len` placed above `rows` (bottom-up).
fn new_row_hooks_ok(pair: CorePair, rows: &[u32], len: u32) -> bool {
    (1..=len).all(|j| {
        let leg = rows.iter().filter(|&&r| r >= j).count() as u32;
        let hook = len - j + leg + 1;
        hook != pair.s && hook != pair.t
    })
}
