//! Search and exact certification of Ramsey graphs.
//!
//! A graph on `n` vertices with no `p`-clique and no independent `q`-set is
//! an `r(p, q, n)` graph and shows `R(p, q) > n`. This crate provides:
//!
//! * [`graph`], [`format`]: 64-bit bitset graphs, adjacency-list and graph6 I/O.
//! * [`counting`]: exact clique / independent-set counts, the fitness
//!   objective, and a cache of a base graph's independent sets for fast
//!   evaluation of extensions.
//! * [`bounds`]: known Ramsey numbers and the degree band they imply.
//! * [`construct`]: triangle-free inner graphs and random extensions of a base.
//! * [`search`]: an artificial bee colony minimizing the fitness.
//! * [`verify`]: certificates, dataset adjudication, vertex-deletion scans,
//!   and pairwise isomorphism.
//!
//! Internal vertex labels are 0-indexed; files and printed output are
//! 1-indexed.

pub mod bounds;
pub mod construct;
pub mod counting;
pub mod dataset;
pub mod error;
pub mod exec;
pub mod format;
pub mod graph;
pub mod iso;
pub mod search;
pub mod verify;
pub mod vertex_set;

pub use error::{Error, Result};
pub use exec::Exec;
pub use graph::Graph;
pub use vertex_set::VertexSet;
