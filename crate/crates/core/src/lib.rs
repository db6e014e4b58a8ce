//! Exact graph pebbling.
//!
//! A pebbling move takes two pebbles off a vertex and puts one on a
//! neighbor. This crate builds the graph families of interest, decides
//! whether a distribution of pebbles can satisfy a demand vector, computes
//! rooted and global `t`-pebbling numbers exactly, evaluates the known
//! closed forms for trees, cycles, and middle graphs of even cycles, and
//! checks the two-pebbling properties by bounded enumeration.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod distribution;
pub mod enumerate;
pub mod families;
pub mod formulas;
pub mod graph;
pub mod number;
pub mod properties;
pub mod solve;
pub mod sweep;
pub mod symmetry;

pub use distribution::{
    weight_bound, DemandError, DemandVector, Distribution, DistributionStats, MoveError, Weight,
};
pub use enumerate::{enumerate_canonical, stars_and_bars, CanonicalStream, Compositions};
pub use families::{
    build_base, build_mstar_mprime, build_tk, cartesian_product, middle_graph, BaseFamily,
    MiddleVariant,
};
pub use formulas::{
    cycle_formula, max_path_partition, middle_cycle_formula, tree_formula, FormulaError,
    PathPartition,
};
pub use graph::{Distances, Graph, GraphError, Permutation, VertexId};
pub use number::{
    group_for, pebbling_number, pebbling_number_with, rooted_in_group, rooted_number,
    rooted_number_with, verify_pebbling_number, EngineError, EngineOptions, Mode, PebblingNumber,
    RootedNumber,
};
pub use properties::{
    check_herscovici_inequality, check_odd_two_pebbling, check_property_with, check_two_pebbling,
    Property, PropertyError, PropertyReport,
};
pub use solve::{solvable, Certificate, Outcome};
pub use sweep::{SweepError, SweepLimits, SweepSummary, UnsolvableAtlas};
pub use symmetry::SymmetryGroup;

/// Version string stamped on cached results.
pub const ENGINE_VERSION: &str = concat!("pebble-core/", env!("CARGO_PKG_VERSION"));
