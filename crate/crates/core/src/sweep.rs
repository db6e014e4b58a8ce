//! Level-by-level enumeration of unsolvable distributions.
//!
//! For a fixed demand, the unsolvable distributions are closed under removing
//! pebbles, so every unsolvable distribution of size `s + 1` extends one of
//! size `s`. A distribution is unsolvable exactly when it does not meet the
//! demand and every single move leads to an unsolvable distribution, which at
//! size `s` is a membership test against the complete level below. Sweeping
//! sizes upward therefore lists all unsolvable distributions (one per orbit of
//! the demand's stabilizer), and the first empty level is the smallest size at
//! which every distribution is solvable.
//!
//! Each candidate is generated once: a canonical distribution's parent is the
//! canonical form of what remains after removing one pebble from its
//! highest-index occupied vertex.

use alloc::vec;
use alloc::vec::Vec;
use core::hash::{BuildHasher, Hash};

use hashbrown::hash_table::{Entry, HashTable};
use hashbrown::DefaultHashBuilder;
use thiserror::Error;

use crate::distribution::{DemandVector, Distribution};
use crate::graph::Graph;
use crate::symmetry::SymmetryGroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SweepError {
    #[error("level {level} exceeded the budget of {budget} states")]
    BudgetExceeded { level: u64, budget: usize },
    #[error("pebble counts up to {0} do not fit the state encoding")]
    CountTooLarge(u64),
}

/// Fixed-width pebble count stored in a level.
pub trait Cell: Copy + Ord + Hash + Default + core::fmt::Debug {
    const MAX: u64;
    fn from_u64(x: u64) -> Self;
    fn get(self) -> u64;
}

impl Cell for u8 {
    const MAX: u64 = u8::MAX as u64;
    #[inline]
    fn from_u64(x: u64) -> Self {
        x as u8
    }
    #[inline]
    fn get(self) -> u64 {
        self as u64
    }
}

impl Cell for u16 {
    const MAX: u64 = u16::MAX as u64;
    #[inline]
    fn from_u64(x: u64) -> Self {
        x as u16
    }
    #[inline]
    fn get(self) -> u64 {
        self as u64
    }
}

/// A set of equal-length count vectors stored contiguously.
pub struct LevelSet<C> {
    n: usize,
    arena: Vec<C>,
    table: HashTable<u32>,
    hasher: DefaultHashBuilder,
}

impl<C: Cell> LevelSet<C> {
    pub fn new(n: usize) -> Self {
        LevelSet {
            n,
            arena: Vec::new(),
            table: HashTable::new(),
            hasher: DefaultHashBuilder::default(),
        }
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize) -> &[C] {
        &self.arena[i * self.n..(i + 1) * self.n]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[C]> {
        self.arena.chunks_exact(self.n.max(1)).take(self.len())
    }

    pub fn contains(&self, key: &[C]) -> bool {
        let h = self.hasher.hash_one(key);
        let (arena, n) = (&self.arena, self.n);
        self.table
            .find(h, |&i| &arena[i as usize * n..(i as usize + 1) * n] == key)
            .is_some()
    }

    /// Returns false if `key` was already present.
    pub fn insert(&mut self, key: &[C]) -> bool {
        let h = self.hasher.hash_one(key);
        let (arena, n, hasher) = (&mut self.arena, self.n, &self.hasher);
        match self.table.entry(
            h,
            |&i| &arena[i as usize * n..(i as usize + 1) * n] == key,
            |&i| hasher.hash_one(&arena[i as usize * n..(i as usize + 1) * n]),
        ) {
            Entry::Occupied(_) => false,
            Entry::Vacant(slot) => {
                let idx = (arena.len() / n.max(1)) as u32;
                arena.extend_from_slice(key);
                slot.insert(idx);
                true
            }
        }
    }
}

/// Settings for a sweep.
#[derive(Clone, Copy, Debug, Default)]
pub struct SweepLimits {
    /// Stop after finishing this level.
    pub max_level: Option<u64>,
    /// Maximum number of states in a single level.
    pub budget: Option<usize>,
}

/// Outcome of a sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepSummary {
    /// Sizes of the unsolvable levels `0, 1, ..` that were built.
    pub level_sizes: Vec<usize>,
    /// Smallest size whose level is empty, if reached.
    pub threshold: Option<u64>,
    /// First member (in generation order) of the last non-empty level.
    pub witness: Distribution,
}

impl SweepSummary {
    pub fn explored(&self) -> usize {
        self.level_sizes.iter().sum()
    }
}

/// Largest count any unsolvable distribution can hold on a vertex: a pile
/// of `Σ_s t_s 2^dist(u,s)` on `u` serves every target along shortest paths.
fn pile_limits(g: &Graph, demand: &DemandVector) -> Vec<u64> {
    let mut limits = vec![0u64; g.n()];
    for (s, t) in demand.targets() {
        for (u, d) in g.distances_from(s).into_iter().enumerate() {
            let add = (t as u64).checked_shl(d).unwrap_or(u64::MAX);
            limits[u] = limits[u].saturating_add(add);
        }
    }
    limits
}

struct Sweeper<'a, C> {
    g: &'a Graph,
    demand: &'a DemandVector,
    group: &'a SymmetryGroup,
    limits: Vec<u64>,
    scratch: Vec<C>,
    canon: Vec<C>,
}

impl<'a, C: Cell> Sweeper<'a, C> {
    fn canonical(&mut self, counts: &[C]) -> Vec<C> {
        let mut out = vec![C::default(); counts.len()];
        self.group.canonicalize_into(counts, &mut out);
        out
    }

    fn meets_demand(&self, c: &[C]) -> bool {
        c.iter()
            .zip(self.demand.required())
            .all(|(&x, &t)| x.get() >= t as u64)
    }

    /// Every single move from `c` lands in `below`.
    fn all_moves_fail(&mut self, c: &[C], below: &LevelSet<C>) -> bool {
        let trivial = self.group.is_trivial();
        self.scratch.clear();
        self.scratch.extend_from_slice(c);
        for a in 0..c.len() {
            if c[a].get() < 2 {
                continue;
            }
            for &b in self.g.neighbors(a) {
                self.scratch[a] = C::from_u64(c[a].get() - 2);
                self.scratch[b] = C::from_u64(c[b].get() + 1);
                let hit = if trivial {
                    below.contains(&self.scratch)
                } else {
                    self.canon.resize(c.len(), C::default());
                    self.group.canonicalize_into(&self.scratch, &mut self.canon);
                    below.contains(&self.canon)
                };
                self.scratch[a] = c[a];
                self.scratch[b] = c[b];
                if !hit {
                    return false;
                }
            }
        }
        true
    }

    /// Builds the next level from a complete level `below`.
    fn next_level(&mut self, below: &LevelSet<C>) -> LevelSet<C> {
        let n = self.g.n();
        let trivial = self.group.is_trivial();
        let mut next = LevelSet::new(n);
        let mut cand = vec![C::default(); n];
        for i in 0..below.len() {
            let parent = below.get(i);
            let last = parent.iter().rposition(|x| x.get() > 0).unwrap_or(0);
            let start = if trivial { last } else { 0 };
            for v in start..n {
                if parent[v].get() + 1 >= self.limits[v] {
                    continue;
                }
                cand.copy_from_slice(parent);
                cand[v] = C::from_u64(parent[v].get() + 1);
                if self.meets_demand(&cand) {
                    continue;
                }
                let key = if trivial {
                    cand.clone()
                } else {
                    let key = self.canonical(&cand);
                    let top = key.iter().rposition(|x| x.get() > 0).expect("nonempty");
                    let mut up = key.clone();
                    up[top] = C::from_u64(up[top].get() - 1);
                    if self.canonical(&up) != parent || next.contains(&key) {
                        continue;
                    }
                    key
                };
                if self.all_moves_fail(&cand, below) {
                    next.insert(&key);
                }
            }
        }
        next
    }
}

fn to_distribution<C: Cell>(cells: &[C]) -> Distribution {
    Distribution::new(cells.iter().map(|c| c.get() as u32).collect())
}

/// Callback receiving every completed level: `(size, level)`.
pub type LevelVisitor<'v> = dyn FnMut(u64, &dyn LevelView) + 'v;

/// Read access to a completed level independent of the cell width.
pub trait LevelView {
    fn len(&self) -> usize;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
    /// Membership of a canonical count vector.
    fn contains_counts(&self, counts: &[u32]) -> bool;
    fn member(&self, i: usize) -> Distribution;
}

impl<C: Cell> LevelView for LevelSet<C> {
    fn len(&self) -> usize {
        LevelSet::len(self)
    }

    fn contains_counts(&self, counts: &[u32]) -> bool {
        if counts.iter().any(|&x| x as u64 > C::MAX) {
            return false;
        }
        let key: Vec<C> = counts.iter().map(|&x| C::from_u64(x as u64)).collect();
        self.contains(&key)
    }

    fn member(&self, i: usize) -> Distribution {
        to_distribution(self.get(i))
    }
}

fn run<C: Cell>(
    g: &Graph,
    demand: &DemandVector,
    group: &SymmetryGroup,
    limits: SweepLimits,
    pile: Vec<u64>,
    visit: &mut LevelVisitor<'_>,
) -> Result<SweepSummary, SweepError> {
    let n = g.n();
    let mut sweeper = Sweeper::<C> {
        g,
        demand,
        group,
        limits: pile,
        scratch: Vec::with_capacity(n),
        canon: Vec::with_capacity(n),
    };
    let mut level = LevelSet::<C>::new(n);
    level.insert(&vec![C::default(); n]);
    let mut sizes = vec![1usize];
    let mut witness = Distribution::zeros(n);
    visit(0, &level);
    let mut size = 0u64;
    loop {
        if limits.max_level.is_some_and(|m| size >= m) {
            return Ok(SweepSummary {
                level_sizes: sizes,
                threshold: None,
                witness,
            });
        }
        let next = sweeper.next_level(&level);
        size += 1;
        if let Some(budget) = limits.budget {
            if next.len() > budget {
                return Err(SweepError::BudgetExceeded {
                    level: size,
                    budget,
                });
            }
        }
        visit(size, &next);
        sizes.push(next.len());
        if next.is_empty() {
            return Ok(SweepSummary {
                level_sizes: sizes,
                threshold: Some(size),
                witness,
            });
        }
        witness = to_distribution(next.get(0));
        level = next;
    }
}

/// Sweeps the unsolvable distributions for `demand`, one per orbit of
/// `group`, which must stabilize the demand vector. `visit` sees each level
/// as soon as it is complete.
pub fn sweep_with(
    g: &Graph,
    demand: &DemandVector,
    group: &SymmetryGroup,
    limits: SweepLimits,
    visit: &mut LevelVisitor<'_>,
) -> Result<SweepSummary, SweepError> {
    debug_assert!(
        group
            .elements()
            .all(|p| (0..g.n()).all(|v| demand.required()[p.image(v)] == demand.required()[v])),
        "group must stabilize the demand"
    );
    let pile = pile_limits(g, demand);
    let widest = pile.iter().copied().max().unwrap_or(0);
    if widest <= u8::MAX as u64 {
        run::<u8>(g, demand, group, limits, pile, visit)
    } else if widest <= u16::MAX as u64 {
        run::<u16>(g, demand, group, limits, pile, visit)
    } else {
        Err(SweepError::CountTooLarge(widest))
    }
}

pub fn sweep(
    g: &Graph,
    demand: &DemandVector,
    group: &SymmetryGroup,
    limits: SweepLimits,
) -> Result<SweepSummary, SweepError> {
    sweep_with(g, demand, group, limits, &mut |_, _| {})
}

/// Every unsolvable distribution for a demand, kept level by level for
/// membership queries.
pub struct UnsolvableAtlas {
    group: SymmetryGroup,
    levels: Vec<Vec<Vec<u32>>>,
    members: Vec<hashbrown::HashSet<Vec<u32>>>,
    threshold: Option<u64>,
}

impl UnsolvableAtlas {
    pub fn build(
        g: &Graph,
        demand: &DemandVector,
        group: SymmetryGroup,
        budget: Option<usize>,
    ) -> Result<Self, SweepError> {
        Self::build_limited(
            g,
            demand,
            group,
            SweepLimits {
                max_level: None,
                budget,
            },
        )
    }

    /// Like [`UnsolvableAtlas::build`] but stops after `limits.max_level`;
    /// sizes above it cannot be queried.
    pub fn build_limited(
        g: &Graph,
        demand: &DemandVector,
        group: SymmetryGroup,
        limits: SweepLimits,
    ) -> Result<Self, SweepError> {
        let mut levels: Vec<Vec<Vec<u32>>> = Vec::new();
        let summary = sweep_with(g, demand, &group, limits, &mut |_, level| {
            levels.push(
                (0..level.len())
                    .map(|i| level.member(i).counts().to_vec())
                    .collect(),
            );
        })?;
        let members = levels.iter().map(|l| l.iter().cloned().collect()).collect();
        Ok(UnsolvableAtlas {
            group,
            levels,
            members,
            threshold: summary.threshold,
        })
    }

    /// Smallest size at which everything is solvable, if it was reached.
    pub fn threshold(&self) -> Option<u64> {
        self.threshold
    }

    /// Largest size the atlas answers for.
    pub fn max_size(&self) -> Option<u64> {
        match self.threshold {
            Some(_) => None,
            None => Some(self.levels.len() as u64 - 1),
        }
    }

    pub fn level(&self, size: u64) -> &[Vec<u32>] {
        self.levels
            .get(size as usize)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Panics for sizes above [`UnsolvableAtlas::max_size`].
    pub fn is_unsolvable(&self, counts: &[u32]) -> bool {
        let size: u64 = counts.iter().map(|&c| c as u64).sum();
        if let Some(max) = self.max_size() {
            assert!(size <= max, "atlas only covers sizes up to {max}");
        }
        match self.members.get(size as usize) {
            Some(set) => set.contains(&self.group.canonical(counts)),
            None => false,
        }
    }

    pub fn total_states(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u32]> {
        self.levels.iter().flatten().map(Vec::as_slice)
    }
}
