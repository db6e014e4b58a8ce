//! Stars-and-bars enumeration of pebble distributions, optionally reduced to
//! one representative per orbit of a symmetry group.

use alloc::vec;
use alloc::vec::Vec;

use crate::distribution::Distribution;
use crate::graph::{Graph, VertexId};
use crate::symmetry::SymmetryGroup;

/// Number of ways to place `p` indistinguishable pebbles on `n` vertices,
/// `C(p + n - 1, n - 1)`.
pub fn stars_and_bars(n: usize, p: u64) -> u128 {
    if n == 0 {
        return (p == 0) as u128;
    }
    binomial(p as u128 + n as u128 - 1, n as u128 - 1)
}

pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Weak compositions of `total` over `slots`, in lexicographically
/// decreasing order of the full count vector (`[p, 0, ..]` first).
#[derive(Clone, Debug)]
pub struct Compositions {
    slots: Vec<usize>,
    parts: Vec<u32>,
    counts: Vec<u32>,
    done: bool,
}

impl Compositions {
    pub fn new(n: usize, total: u32) -> Self {
        Self::over(n, (0..n).collect(), total)
    }

    /// Compositions supported on `slots` (ascending vertex indices) of an
    /// `n`-vertex count vector.
    pub fn over(n: usize, slots: Vec<usize>, total: u32) -> Self {
        let mut parts = vec![0; slots.len()];
        let mut counts = vec![0; n];
        let done = if let Some(&first) = slots.first() {
            parts[0] = total;
            counts[first] = total;
            false
        } else {
            total != 0
        };
        Compositions {
            slots,
            parts,
            counts,
            done,
        }
    }

    fn advance(&mut self) {
        let s = self.parts.len();
        if s < 2 {
            self.done = true;
            return;
        }
        let Some(i) = (0..s - 1).rev().find(|&i| self.parts[i] > 0) else {
            self.done = true;
            return;
        };
        let tail: u32 = self.parts[i + 1..].iter().sum();
        self.parts[i] -= 1;
        for j in i + 1..s {
            self.parts[j] = 0;
        }
        self.parts[i + 1] = tail + 1;
        for j in i..s {
            self.counts[self.slots[j]] = self.parts[j];
        }
    }
}

impl Iterator for Compositions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let out = self.counts.clone();
        self.advance();
        Some(out)
    }
}

/// Canonical orbit representatives of size-`p` distributions, optionally
/// supported on a subset of vertices.
#[derive(Clone, Debug)]
pub struct CanonicalStream {
    inner: Compositions,
    group: SymmetryGroup,
}

impl CanonicalStream {
    pub fn new(inner: Compositions, group: SymmetryGroup) -> Self {
        CanonicalStream { inner, group }
    }

    pub fn group(&self) -> &SymmetryGroup {
        &self.group
    }
}

impl Iterator for CanonicalStream {
    type Item = Distribution;

    fn next(&mut self) -> Option<Distribution> {
        for counts in self.inner.by_ref() {
            if self.group.is_canonical(&counts) {
                return Some(Distribution::new(counts));
            }
        }
        None
    }
}

/// One distribution of `p` pebbles per orbit of the graph's symmetry group
/// (restricted to the stabilizer of `stabilizer` when given).
pub fn enumerate_canonical(g: &Graph, p: u32, stabilizer: Option<VertexId>) -> CanonicalStream {
    let mut group = SymmetryGroup::of_graph(g);
    if let Some(v) = stabilizer {
        group = group.stabilizer_of_vertex(v.index());
    }
    CanonicalStream::new(Compositions::new(g.n(), p), group)
}
