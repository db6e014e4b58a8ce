//! Two-pebbling, odd two-pebbling, and the `4f_4 < 14f − 2(m − 5)` test.
//!
//! The hypothesis `p > 2f − k` does not bound `p`, but 2-solvability only
//! improves as pebbles are added. Removing one pebble from a violating
//! distribution keeps it violating and lowers `p + k` by 1 (the vertex keeps
//! a pebble) or 2 (it empties), so every violation shrinks to one with
//! `p + k ∈ {2f + 1, 2f + 2}`. With `r` in place of `k`, `p + r` is always
//! even and removals change it by 0 or −2; a −2 step is always available
//! (take from an odd vertex, or twice from an even one), so the frontier is
//! `p + r = 2f + 2`. Only these frontiers are enumerated.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::distribution::{DemandVector, Distribution};
use crate::enumerate::Compositions;
use crate::graph::{Graph, VertexId};
use crate::number::{group_for, pebbling_number_with, EngineError, EngineOptions};
use crate::sweep::UnsolvableAtlas;
use crate::symmetry::SymmetryGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Property {
    TwoPebbling,
    OddTwoPebbling,
    Herscovici,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::TwoPebbling => "two-pebbling",
            Property::OddTwoPebbling => "odd-two-pebbling",
            Property::Herscovici => "herscovici",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PropertyError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("the inequality needs at least 5 vertices, got {0}")]
    TooFewVertices(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub property: Property,
    pub holds: bool,
    /// A distribution meeting the hypothesis from which two pebbles cannot
    /// reach the vertex.
    pub counterexample: Option<(Distribution, VertexId)>,
    pub f_value: u64,
    /// `f_4(G)`, for the inequality check only.
    pub f4_value: Option<u64>,
    /// Distributions examined.
    pub search_size: u64,
}

/// Checks the two-pebbling property, computing `f(G)` with the engine.
pub fn check_two_pebbling(g: &Graph) -> Result<PropertyReport, PropertyError> {
    check_property_with(g, Property::TwoPebbling, &EngineOptions::default(), None)
}

pub fn check_odd_two_pebbling(g: &Graph) -> Result<PropertyReport, PropertyError> {
    check_property_with(g, Property::OddTwoPebbling, &EngineOptions::default(), None)
}

pub fn check_herscovici_inequality(g: &Graph) -> Result<PropertyReport, PropertyError> {
    check_property_with(g, Property::Herscovici, &EngineOptions::default(), None)
}

/// `known_f` lets a caller supply an already verified `f(G)`.
pub fn check_property_with(
    g: &Graph,
    property: Property,
    opts: &EngineOptions,
    known_f: Option<u64>,
) -> Result<PropertyReport, PropertyError> {
    if property == Property::Herscovici {
        return herscovici(g, opts, known_f);
    }
    let f = match known_f {
        Some(f) => f,
        None => pebbling_number_with(g, 1, opts)?.value,
    };
    let group = group_for(g, opts);
    let mut search_size = 0u64;
    for v in group.orbit_representatives() {
        let stab = group.stabilizer_of_vertex(v);
        let demand = DemandVector::single(g.n(), VertexId(v), 2).expect("positive demand");
        let atlas = UnsolvableAtlas::build(g, &demand, stab.clone(), opts.budget)
            .map_err(EngineError::from)?;
        let mut bad = None;
        for_each_frontier(g.n(), f, property, &stab, |counts| {
            search_size += 1;
            if atlas.is_unsolvable(counts) {
                bad = Some(Distribution::new(counts.to_vec()));
                false
            } else {
                true
            }
        });
        if let Some(d) = bad {
            return Ok(PropertyReport {
                property,
                holds: false,
                counterexample: Some((d, VertexId(v))),
                f_value: f,
                f4_value: None,
                search_size,
            });
        }
    }
    Ok(PropertyReport {
        property,
        holds: true,
        counterexample: None,
        f_value: f,
        f4_value: None,
        search_size,
    })
}

/// Visits the canonical frontier distributions in a fixed order until
/// `visit` returns false.
fn for_each_frontier(
    n: usize,
    f: u64,
    property: Property,
    group: &SymmetryGroup,
    mut visit: impl FnMut(&[u32]) -> bool,
) {
    let mut go = |base: &[u32], comps: Compositions, step: u32| -> bool {
        let mut counts = vec![0u32; n];
        for c in comps {
            for w in 0..n {
                counts[w] = base[w] + step * c[w];
            }
            if group.is_canonical(&counts) && !visit(&counts) {
                return false;
            }
        }
        true
    };
    match property {
        Property::TwoPebbling => {
            // support of size k, each vertex at least one pebble
            for total in [2 * f + 1, 2 * f + 2] {
                for k in 1..=n {
                    let Some(extra) = total.checked_sub(2 * k as u64) else {
                        break;
                    };
                    for support in Subsets::new(n, k) {
                        let mut base = vec![0u32; n];
                        for &w in &support {
                            base[w] = 1;
                        }
                        if !go(&base, Compositions::over(n, support, extra as u32), 1) {
                            return;
                        }
                    }
                }
            }
        }
        Property::OddTwoPebbling => {
            // r odd vertices, then f + 1 − r pairs anywhere
            for r in 0..=n {
                let Some(pairs) = (f + 1).checked_sub(r as u64) else {
                    break;
                };
                for odd in Subsets::new(n, r) {
                    let mut base = vec![0u32; n];
                    for &w in &odd {
                        base[w] = 1;
                    }
                    if !go(&base, Compositions::new(n, pairs as u32), 2) {
                        return;
                    }
                }
            }
        }
        Property::Herscovici => unreachable!(),
    }
}

fn herscovici(
    g: &Graph,
    opts: &EngineOptions,
    known_f: Option<u64>,
) -> Result<PropertyReport, PropertyError> {
    let m = g.n();
    if m < 5 {
        return Err(PropertyError::TooFewVertices(m));
    }
    let mut search_size = 0u64;
    let f = match known_f {
        Some(f) => f,
        None => {
            let r = pebbling_number_with(g, 1, opts)?;
            search_size += r.explored() as u64;
            r.value
        }
    };
    let f4 = pebbling_number_with(g, 4, opts)?;
    search_size += f4.explored() as u64;
    let holds = herscovici_holds(f, f4.value, m);
    Ok(PropertyReport {
        property: Property::Herscovici,
        holds,
        counterexample: None,
        f_value: f,
        f4_value: Some(f4.value),
        search_size,
    })
}

/// `4 f_4 < 14 f − 2(m − 5)`.
pub fn herscovici_holds(f: u64, f4: u64, m: usize) -> bool {
    4 * f4 as i128 + 2 * (m as i128 - 5) < 14 * f as i128
}

/// `k`-subsets of `0..n` in lexicographic order.
#[derive(Clone, Debug)]
pub struct Subsets {
    n: usize,
    cur: Option<Vec<usize>>,
}

impl Subsets {
    pub fn new(n: usize, k: usize) -> Self {
        Subsets {
            n,
            cur: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.take()?;
        let k = out.len();
        let mut next = out.clone();
        if let Some(i) = (0..k).rev().find(|&i| next[i] < self.n - k + i) {
            next[i] += 1;
            for j in i + 1..k {
                next[j] = next[j - 1] + 1;
            }
            self.cur = Some(next);
        }
        Some(out)
    }
}
