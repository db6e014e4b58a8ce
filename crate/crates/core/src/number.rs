//! Rooted and global (t-)pebbling numbers.

use alloc::vec::Vec;

use thiserror::Error;

use crate::distribution::{DemandVector, Distribution};
use crate::graph::{Graph, VertexId};
use crate::sweep::{sweep, SweepError, SweepLimits};
use crate::symmetry::SymmetryGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Find the value.
    Discover,
    /// Confirm a claimed value: some distribution of `expected - 1` pebbles
    /// fails and every distribution of `expected` pebbles succeeds.
    Verify(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Sweep(#[from] SweepError),
    #[error("t must be positive")]
    ZeroDemand,
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("claimed value {expected} is wrong: an unsolvable distribution of that size exists")]
    TooSmall {
        expected: u64,
        counterexample: Distribution,
    },
    #[error("claimed value {expected} is wrong: every distribution of {actual} pebbles already succeeds")]
    TooLarge { expected: u64, actual: u64 },
}

/// Knobs shared by the number computations.
#[derive(Clone, Copy, Debug, Default)]
pub struct EngineOptions {
    /// Ignore the graph's symmetry generators.
    pub no_symmetry: bool,
    /// Per-level state budget for the sweep.
    pub budget: Option<usize>,
}

/// `f_t(G, v)` with an extremal witness (an unsolvable distribution of
/// `value - 1` pebbles).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedNumber {
    pub target: VertexId,
    pub t: u32,
    pub value: u64,
    pub witness: Distribution,
    /// Unsolvable orbit representatives enumerated.
    pub explored: usize,
}

/// The symmetry group the engine uses for `g` under `opts`.
pub fn group_for(g: &Graph, opts: &EngineOptions) -> SymmetryGroup {
    if opts.no_symmetry {
        SymmetryGroup::trivial(g.n())
    } else {
        SymmetryGroup::of_graph(g)
    }
}

pub fn rooted_number(
    g: &Graph,
    v: VertexId,
    t: u32,
    mode: Mode,
) -> Result<RootedNumber, EngineError> {
    rooted_number_with(g, v, t, mode, &EngineOptions::default())
}

pub fn rooted_number_with(
    g: &Graph,
    v: VertexId,
    t: u32,
    mode: Mode,
    opts: &EngineOptions,
) -> Result<RootedNumber, EngineError> {
    if v.index() >= g.n() {
        return Err(EngineError::VertexOutOfRange(v.index()));
    }
    let group = group_for(g, opts).stabilizer_of_vertex(v.index());
    rooted_in_group(g, v, t, mode, &group, opts.budget)
}

/// `f_t(G, v)` with the sweep reduced by `group`, which must fix `v`.
pub fn rooted_in_group(
    g: &Graph,
    v: VertexId,
    t: u32,
    mode: Mode,
    group: &SymmetryGroup,
    budget: Option<usize>,
) -> Result<RootedNumber, EngineError> {
    if v.index() >= g.n() {
        return Err(EngineError::VertexOutOfRange(v.index()));
    }
    if t == 0 {
        return Err(EngineError::ZeroDemand);
    }
    let demand = DemandVector::single(g.n(), v, t).map_err(|_| EngineError::ZeroDemand)?;
    let limits = SweepLimits {
        max_level: match mode {
            Mode::Discover => None,
            Mode::Verify(expected) => Some(expected),
        },
        budget,
    };
    let summary = sweep(g, &demand, group, limits)?;
    let explored = summary.explored();
    match (mode, summary.threshold) {
        (Mode::Discover, Some(value)) | (Mode::Verify(_), Some(value)) => {
            if let Mode::Verify(expected) = mode {
                if value != expected {
                    return Err(EngineError::TooLarge {
                        expected,
                        actual: value,
                    });
                }
            }
            Ok(RootedNumber {
                target: v,
                t,
                value,
                witness: summary.witness,
                explored,
            })
        }
        (Mode::Verify(expected), None) => Err(EngineError::TooSmall {
            expected,
            counterexample: summary.witness,
        }),
        (Mode::Discover, None) => unreachable!("unbounded sweep always terminates"),
    }
}

/// `f_t(G)` as the maximum of `f_t(G, v)` over one vertex per orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PebblingNumber {
    pub value: u64,
    pub argmax: VertexId,
    pub witness: Distribution,
    pub per_root: Vec<RootedNumber>,
}

impl PebblingNumber {
    pub fn explored(&self) -> usize {
        self.per_root.iter().map(|r| r.explored).sum()
    }
}

pub fn pebbling_number(g: &Graph, t: u32) -> Result<PebblingNumber, EngineError> {
    pebbling_number_with(g, t, &EngineOptions::default())
}

pub fn pebbling_number_with(
    g: &Graph,
    t: u32,
    opts: &EngineOptions,
) -> Result<PebblingNumber, EngineError> {
    let group = group_for(g, opts);
    let mut per_root = Vec::new();
    for v in group.orbit_representatives() {
        let stab = group.stabilizer_of_vertex(v);
        per_root.push(rooted_in_group(
            g,
            VertexId(v),
            t,
            Mode::Discover,
            &stab,
            opts.budget,
        )?);
    }
    Ok(PebblingNumber::from_roots(per_root))
}

impl PebblingNumber {
    /// Takes the maximum over per-root results (the first root attaining it
    /// in the given order).
    pub fn from_roots(per_root: Vec<RootedNumber>) -> Self {
        let best = (0..per_root.len())
            .rev()
            .max_by_key(|&i| per_root[i].value)
            .expect("graphs have at least one vertex");
        PebblingNumber {
            value: per_root[best].value,
            argmax: per_root[best].target,
            witness: per_root[best].witness.clone(),
            per_root,
        }
    }
}

/// Verify mode for the global number: every root stays within `expected`
/// and at least one root attains it.
pub fn verify_pebbling_number(
    g: &Graph,
    t: u32,
    expected: u64,
    opts: &EngineOptions,
) -> Result<PebblingNumber, EngineError> {
    let group = group_for(g, opts);
    let mut per_root = Vec::new();
    let mut attained = None;
    for v in group.orbit_representatives() {
        let stab = group.stabilizer_of_vertex(v);
        let demand =
            DemandVector::single(g.n(), VertexId(v), t).map_err(|_| EngineError::ZeroDemand)?;
        let limits = SweepLimits {
            max_level: Some(expected),
            budget: opts.budget,
        };
        let summary = sweep(g, &demand, &stab, limits)?;
        let Some(value) = summary.threshold else {
            return Err(EngineError::TooSmall {
                expected,
                counterexample: summary.witness,
            });
        };
        if value == expected && attained.is_none() {
            attained = Some(per_root.len());
        }
        per_root.push(RootedNumber {
            target: VertexId(v),
            t,
            value,
            explored: summary.explored(),
            witness: summary.witness,
        });
    }
    match attained {
        Some(i) => Ok(PebblingNumber {
            value: expected,
            argmax: per_root[i].target,
            witness: per_root[i].witness.clone(),
            per_root,
        }),
        None => Err(EngineError::TooLarge {
            expected,
            actual: per_root.iter().map(|r| r.value).max().unwrap_or(0),
        }),
    }
}
