//! Integer partitions: the index set of every basis in this crate.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::One;
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Builds a partition, rejecting zero parts and increasing sequences.
    pub fn new(parts: Vec<u32>) -> Result<Self, Error> {
        if parts.iter().any(|&p| p == 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(Partition(parts))
    }

    /// Sorts and drops zeros. Useful for compositions and weights.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn single(n: u32) -> Self {
        if n == 0 {
            Partition::empty()
        } else {
            Partition(vec![n])
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest part, 0 for the empty partition.
    pub fn first(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    /// Part i (0-based), 0 past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Self {
        let n = self.first() as usize;
        let mut out = Vec::with_capacity(n);
        for j in 0..n {
            out.push(self.0.iter().filter(|&&p| p as usize > j).count() as u32);
        }
        Partition(out)
    }

    /// Multiplicities m_i for i = 1..=largest part.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0usize; self.first() as usize + 1];
        for &p in &self.0 {
            m[p as usize] += 1;
        }
        m
    }

    /// z_λ = Π i^{m_i} m_i!, the centralizer order of a permutation of cycle type λ.
    pub fn z(&self) -> BigInt {
        let mut acc = BigInt::one();
        for (i, &mi) in self.multiplicities().iter().enumerate().skip(1) {
            for k in 1..=mi {
                acc *= BigInt::from(i) * BigInt::from(k);
            }
        }
        acc
    }

    /// Sign of a permutation of cycle type λ: (-1)^{|λ| - ℓ(λ)}.
    pub fn sign(&self) -> i32 {
        if (self.weight() - self.length()) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Union of multisets of parts (the power-sum product rule).
    pub fn union(&self, other: &Partition) -> Partition {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            if self.0[i] >= other.0[j] {
                v.push(self.0[i]);
                i += 1;
            } else {
                v.push(other.0[j]);
                j += 1;
            }
        }
        v.extend_from_slice(&self.0[i..]);
        v.extend_from_slice(&other.0[j..]);
        Partition(v)
    }

    /// Every part multiplied by n.
    pub fn scale(&self, n: u32) -> Partition {
        Partition(self.0.iter().map(|&p| p * n).collect())
    }

    /// True when the Young diagram of self fits inside that of other.
    pub fn contained_in(&self, other: &Partition) -> bool {
        self.length() <= other.length() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Dominance order: self ≥ other.
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.weight() != other.weight() {
            return false;
        }
        let (mut a, mut b) = (0u64, 0u64);
        for i in 0..self.length().max(other.length()) {
            a += self.part(i) as u64;
            b += other.part(i) as u64;
            if a < b {
                return false;
            }
        }
        true
    }

    /// Removes part occurrences: returns None if some part of `sub` is missing.
    pub fn remove_parts(&self, sub: &Partition) -> Option<Partition> {
        let mut v = self.0.clone();
        for &p in &sub.0 {
            let pos = v.iter().position(|&x| x == p)?;
            v.remove(pos);
        }
        Some(Partition(v))
    }

    /// Partitions whose diagram fits in an `rows` × `cols` box.
    pub fn in_box(rows: usize, cols: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(rows: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            out.push(Partition(cur.clone()));
            if cur.len() == rows {
                return;
            }
            for p in (1..=max).rev() {
                cur.push(p);
                rec(rows, p, cur, out);
                cur.pop();
            }
        }
        rec(rows, cols, &mut cur, &mut out);
        out.sort();
        out
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self, Error> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.0
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;
    /// Parses "2,1,1"; "∅" or the empty string give the empty partition.
    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        if t.is_empty() || t == "∅" {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(',')
            .map(|x| x.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad part `{x}` in `{s}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}

/// Parses a semicolon separated list, e.g. "2,1,1;4;∅".
pub fn parse_partition_list(s: &str) -> Result<Vec<Partition>, Error> {
    s.split(';').map(Partition::from_str).collect()
}

static PARTITIONS: Lazy<RwLock<HashMap<usize, Arc<Vec<Partition>>>>> = Lazy::new(Default::default);

/// All partitions of n, in reverse lexicographic order ((n) first, (1^n) last). Cached.
pub fn partitions_of(n: usize) -> Arc<Vec<Partition>> {
    if let Some(v) = PARTITIONS.read().unwrap().get(&n) {
        return v.clone();
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    rec(n as u32, n as u32, &mut cur, &mut out);
    let v = Arc::new(out);
    PARTITIONS.write().unwrap().insert(n, v.clone());
    v
}

/// Index of λ inside `partitions_of(|λ|)`.
pub fn partition_index(lambda: &Partition) -> usize {
    static INDEX: Lazy<RwLock<HashMap<Partition, usize>>> = Lazy::new(Default::default);
    if let Some(&i) = INDEX.read().unwrap().get(lambda) {
        return i;
    }
    let all = partitions_of(lambda.weight());
    let mut w = INDEX.write().unwrap();
    for (i, p) in all.iter().enumerate() {
        w.insert(p.clone(), i);
    }
    w[lambda]
}

/// Partitions of every weight 0..=n.
pub fn partitions_up_to(n: usize) -> Vec<Partition> {
    (0..=n).flat_map(|k| partitions_of(k).iter().cloned().collect::<Vec<_>>()).collect()
}

/// Compositions (ordered tuples of positive parts) of n.
pub fn compositions_of(n: usize) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions_of(n - first) {
            rest.insert(0, first as u32);
            out.push(rest);
        }
    }
    out
}
