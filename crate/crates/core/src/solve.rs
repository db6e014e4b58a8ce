//! Single solvability queries with replayable certificates.
//!
//! Depth-first search over reachable distributions. Every move removes a
//! pebble, so the depth is bounded by the starting total and the reachable
//! space is finite. States proven to fail are memoized by their exact count
//! vector. A node is cut as soon as some demanded vertex's weight bound falls
//! below its requirement.

use alloc::vec::Vec;

use hashbrown::HashSet;

use crate::distribution::{DemandVector, Distribution, MoveError};
use crate::graph::{Graph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Solvable,
    Unsolvable,
}

/// Result of a solvability query. For solvable queries, `moves` replays
/// from the queried distribution to a state meeting the demand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub outcome: Outcome,
    pub moves: Vec<(VertexId, VertexId)>,
    pub explored: usize,
}

impl Certificate {
    pub fn is_solvable(&self) -> bool {
        self.outcome == Outcome::Solvable
    }

    /// Replays the moves and returns the final distribution.
    pub fn replay(&self, g: &Graph, start: &Distribution) -> Result<Distribution, MoveError> {
        let mut d = start.clone();
        for &(a, b) in &self.moves {
            d.apply_move_in_place(g, a, b)?;
        }
        Ok(d)
    }

    /// True when the moves are legal and end in a state meeting `demand`.
    pub fn check(&self, g: &Graph, start: &Distribution, demand: &DemandVector) -> bool {
        match self.outcome {
            Outcome::Unsolvable => self.moves.is_empty(),
            Outcome::Solvable => self
                .replay(g, start)
                .map(|end| demand.is_met_by(end.counts()))
                .unwrap_or(false),
        }
    }
}

struct Target {
    /// `required << shift`
    threshold: u128,
    /// `2^(shift - dist(u, vertex))`
    scale: Vec<u128>,
}

struct Search<'a> {
    g: &'a Graph,
    demand: &'a DemandVector,
    targets: Vec<Target>,
    failed: HashSet<Vec<u32>>,
    moves: Vec<(VertexId, VertexId)>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, demand: &'a DemandVector) -> Self {
        let targets = demand
            .targets()
            .map(|(v, t)| {
                let dist = g.distances_from(v);
                let shift = dist.iter().copied().max().unwrap_or(0);
                Target {
                    threshold: (t as u128) << shift,
                    scale: dist.iter().map(|&k| 1u128 << (shift - k)).collect(),
                }
            })
            .collect();
        Search {
            g,
            demand,
            targets,
            failed: HashSet::new(),
            moves: Vec::new(),
        }
    }

    fn weights(&self, counts: &[u32]) -> Vec<u128> {
        self.targets
            .iter()
            .map(|t| {
                counts
                    .iter()
                    .zip(&t.scale)
                    .map(|(&c, &s)| c as u128 * s)
                    .sum()
            })
            .collect()
    }

    fn dfs(&mut self, state: &mut Vec<u32>, weights: &mut [u128]) -> bool {
        if self.demand.is_met_by(state) {
            return true;
        }
        if self
            .targets
            .iter()
            .zip(weights.iter())
            .any(|(t, &w)| w < t.threshold)
        {
            return false;
        }
        if self.failed.contains(state.as_slice()) {
            return false;
        }
        let g = self.g;
        for a in 0..state.len() {
            if state[a] < 2 {
                continue;
            }
            for &b in g.neighbors(a) {
                state[a] -= 2;
                state[b] += 1;
                for (t, w) in self.targets.iter().zip(weights.iter_mut()) {
                    *w = *w + t.scale[b] - 2 * t.scale[a];
                }
                let found = self.dfs(state, weights);
                for (t, w) in self.targets.iter().zip(weights.iter_mut()) {
                    *w = *w + 2 * t.scale[a] - t.scale[b];
                }
                state[a] += 2;
                state[b] -= 1;
                if found {
                    self.moves.push((VertexId(a), VertexId(b)));
                    return true;
                }
            }
        }
        self.failed.insert(state.clone());
        false
    }
}

/// Decides whether some sequence of pebbling moves takes `d` to a state that
/// meets `demand` pointwise. The search is complete; moves are tried in
/// `(from, to)` index order, so the certificate is deterministic.
pub fn solvable(g: &Graph, d: &Distribution, demand: &DemandVector) -> Certificate {
    assert_eq!(d.len(), g.n(), "distribution length must match the graph");
    assert_eq!(demand.len(), g.n(), "demand length must match the graph");
    let mut search = Search::new(g, demand);
    let mut state = d.counts().to_vec();
    let mut weights = search.weights(&state);
    let found = search.dfs(&mut state, &mut weights);
    let explored = search.failed.len();
    let mut moves = search.moves;
    moves.reverse();
    Certificate {
        outcome: if found {
            Outcome::Solvable
        } else {
            Outcome::Unsolvable
        },
        moves: if found { moves } else { Vec::new() },
        explored,
    }
}

/// Convenience wrapper: can `t` pebbles reach `target`?
pub fn reaches(g: &Graph, d: &Distribution, target: VertexId, t: u32) -> bool {
    let demand = DemandVector::single(g.n(), target, t).expect("t must be positive");
    solvable(g, d, &demand).is_solvable()
}
