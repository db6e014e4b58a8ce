//! Standard-library side of the pebbling workbench: graph expressions,
//! edge-list files, the result cache, exhaustive lemma and product checks,
//! and the command-line front end.

pub mod cache;
pub mod cli;
pub mod expr;
pub mod harness;
