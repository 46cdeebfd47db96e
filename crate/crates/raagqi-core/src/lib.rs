//! Quasi-isometry and commensurability decisions for right-angled Artin
//! groups, computed directly from their finite defining graphs.
//!
//! The pipeline: classify the defining graph (separating stars, weak type II,
//! type II, weak type I), compute per-vertex prime partitions from
//! swap-isomorphic branches, build the finite halfspace pocset those
//! partitions induce, dualize it to a cube complex whose vertex count is the
//! commensurability index, and read off the prime graph. An independent
//! word-geometry oracle (normal forms, Cayley balls, convex domains, special
//! subgroups) cross-checks the cubulation.

pub mod classify;
pub mod cube;
pub mod error;
pub mod fixtures;
pub mod geom;
pub mod graph;
pub mod iso;
pub mod oracle;
pub mod out_gens;
pub mod pocset;
pub mod prime;
pub mod qi;
pub mod report;
pub mod words;

pub use error::{Error, Result};
pub use graph::{SimplicialGraph, VertexId, VertexSet};
