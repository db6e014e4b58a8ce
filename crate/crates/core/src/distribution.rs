//! Pebble distributions, demand vectors, and single pebbling moves.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use thiserror::Error;

use crate::graph::{Graph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("vertex {vertex} holds {have} pebble(s); a move needs 2")]
    InsufficientPebbles { vertex: usize, have: u32 },
    #[error("vertices {from} and {to} are not adjacent")]
    NotAdjacent { from: usize, to: usize },
    #[error("vertex {0} out of range")]
    OutOfRange(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DemandError {
    #[error("demand vector must have a positive entry")]
    Zero,
    #[error("vertex {0} out of range")]
    OutOfRange(usize),
}

/// Per-vertex pebble counts with a cached total.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Distribution {
    counts: Vec<u32>,
    total: u64,
}

impl Distribution {
    pub fn new(counts: Vec<u32>) -> Self {
        let total = counts.iter().map(|&c| c as u64).sum();
        Distribution { counts, total }
    }

    pub fn zeros(n: usize) -> Self {
        Distribution {
            counts: vec![0; n],
            total: 0,
        }
    }

    /// `count` pebbles on `v`, nothing elsewhere.
    pub fn pile(n: usize, v: usize, count: u32) -> Self {
        let mut d = Self::zeros(n);
        d.add(v, count);
        d
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, u32)]) -> Self {
        let mut d = Self::zeros(n);
        for &(v, c) in pairs {
            d.add(v, c);
        }
        d
    }

    #[inline]
    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    #[inline]
    pub fn get(&self, v: usize) -> u32 {
        self.counts[v]
    }

    #[inline]
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn add(&mut self, v: usize, count: u32) {
        self.counts[v] += count;
        self.total += count as u64;
    }

    /// Pointwise `self ≥ other`.
    pub fn dominates(&self, other: &[u32]) -> bool {
        self.counts.iter().zip(other).all(|(a, b)| a >= b)
    }

    pub fn stats(&self) -> DistributionStats {
        let mut k = 0;
        let mut r = 0;
        for &c in &self.counts {
            k += (c > 0) as usize;
            r += (c % 2 == 1) as usize;
        }
        DistributionStats {
            p: self.total,
            k,
            r,
        }
    }

    /// Moves two pebbles off `from` and places one on `to`.
    pub fn apply_move(&self, g: &Graph, from: VertexId, to: VertexId) -> Result<Self, MoveError> {
        let mut next = self.clone();
        next.apply_move_in_place(g, from, to)?;
        Ok(next)
    }

    pub fn apply_move_in_place(
        &mut self,
        g: &Graph,
        from: VertexId,
        to: VertexId,
    ) -> Result<(), MoveError> {
        let (a, b) = (from.index(), to.index());
        for x in [a, b] {
            if x >= self.counts.len() || x >= g.n() {
                return Err(MoveError::OutOfRange(x));
            }
        }
        if self.counts[a] < 2 {
            return Err(MoveError::InsufficientPebbles {
                vertex: a,
                have: self.counts[a],
            });
        }
        if !g.has_edge(a, b) {
            return Err(MoveError::NotAdjacent { from: a, to: b });
        }
        self.counts[a] -= 2;
        self.counts[b] += 1;
        self.total -= 1;
        Ok(())
    }

    /// The distribution moved by a vertex permutation: pebbles on `v` end up
    /// on `perm(v)`.
    pub fn permuted(&self, perm: &crate::graph::Permutation) -> Self {
        let mut counts = vec![0; self.counts.len()];
        for (v, &c) in self.counts.iter().enumerate() {
            counts[perm.image(v)] = c;
        }
        Distribution {
            counts,
            total: self.total,
        }
    }
}

impl From<Vec<u32>> for Distribution {
    fn from(counts: Vec<u32>) -> Self {
        Distribution::new(counts)
    }
}

/// Total pebbles `p`, occupied vertices `k`, odd vertices `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DistributionStats {
    pub p: u64,
    pub k: usize,
    pub r: usize,
}

/// Per-vertex pebble requirements of a solvability query.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DemandVector {
    required: Vec<u32>,
    total: u64,
}

impl DemandVector {
    pub fn new(required: Vec<u32>) -> Result<Self, DemandError> {
        let total: u64 = required.iter().map(|&c| c as u64).sum();
        if total == 0 {
            return Err(DemandError::Zero);
        }
        Ok(DemandVector { required, total })
    }

    /// `t` pebbles on `v`.
    pub fn single(n: usize, v: VertexId, t: u32) -> Result<Self, DemandError> {
        if v.index() >= n {
            return Err(DemandError::OutOfRange(v.index()));
        }
        let mut required = vec![0; n];
        required[v.index()] = t;
        Self::new(required)
    }

    /// One pebble on each listed vertex simultaneously.
    pub fn cover(n: usize, vertices: &[usize]) -> Result<Self, DemandError> {
        let mut required = vec![0; n];
        for &v in vertices {
            if v >= n {
                return Err(DemandError::OutOfRange(v));
            }
            required[v] = 1;
        }
        Self::new(required)
    }

    #[inline]
    pub fn required(&self) -> &[u32] {
        &self.required
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn len(&self) -> usize {
        self.required.len()
    }

    pub fn is_empty(&self) -> bool {
        self.required.is_empty()
    }

    /// Vertices with a positive requirement, in index order.
    pub fn targets(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.required
            .iter()
            .enumerate()
            .filter(|(_, &t)| t > 0)
            .map(|(v, &t)| (v, t))
    }

    #[inline]
    pub fn is_met_by(&self, counts: &[u32]) -> bool {
        counts.iter().zip(&self.required).all(|(c, t)| c >= t)
    }
}

/// Exact dyadic rational `numer / 2^shift`.
#[derive(Clone, Copy, Debug)]
pub struct Weight {
    numer: u128,
    shift: u32,
}

impl Weight {
    pub fn new(numer: u128, shift: u32) -> Self {
        let mut w = Weight { numer, shift };
        while w.shift > 0 && w.numer.is_multiple_of(2) {
            w.numer /= 2;
            w.shift -= 1;
        }
        w
    }

    pub fn numerator(&self) -> u128 {
        self.numer
    }

    pub fn denominator(&self) -> u128 {
        1u128 << self.shift
    }

    /// `self ≥ t`.
    pub fn at_least(&self, t: u64) -> bool {
        self.numer >= (t as u128) << self.shift
    }

    pub fn to_f64(&self) -> f64 {
        self.numer as f64 / self.denominator() as f64
    }
}

impl PartialEq for Weight {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Weight {}

impl PartialOrd for Weight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Weight {
    fn cmp(&self, other: &Self) -> Ordering {
        let s = self.shift.max(other.shift);
        (self.numer << (s - self.shift)).cmp(&(other.numer << (s - other.shift)))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.shift == 0 {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "{}/{}", self.numer, self.denominator())
        }
    }
}

/// `Σ_u d(u) · 2^(−dist(u, s))`. If this is below the demand at `s`, no
/// move sequence can deliver that demand: a move toward `s` preserves the
/// sum and every other move lowers it.
pub fn weight_bound(g: &Graph, d: &Distribution, s: VertexId) -> Weight {
    let dist = g.distances_from(s.index());
    let shift = dist.iter().copied().max().unwrap_or(0);
    let numer = d
        .counts()
        .iter()
        .zip(&dist)
        .map(|(&c, &k)| (c as u128) << (shift - k))
        .sum();
    Weight::new(numer, shift)
}
