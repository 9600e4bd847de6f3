//! Maximum-density unit-distance graphs: enumeration, filtering, embedding.
//!
//! A unit-distance graph can be drawn in the plane with every edge at
//! Euclidean length exactly one. This crate bounds the maximum edge count
//! `u(n)` of such graphs on `n` vertices by a three-stage pipeline:
//!
//! 1. [`enumerate`] builds the forbidden-subgraph-free graphs level by
//!    level (vertex count by edge count) with aggressive pruning, giving
//!    the upper bound `u_bar(n)` and the candidate extremal graphs;
//! 2. [`tuud`] discards candidates containing a unit-distance subgraph
//!    whose forced-unit-distance vertex pair is non-adjacent in the host;
//! 3. [`embed`] decides embeddability of the survivors with a branching
//!    solver over complex coordinate kernels, returning coordinates, a
//!    refutation trace, or `Unknown`.
//!
//! [`pipeline`] wires the stages together behind checkpointed, data-parallel
//! batch execution, and [`graph6`]/[`canon`] supply the interchange format
//! and isomorph rejection everything else relies on.

pub mod canon;
pub mod embed;
pub mod enumerate;
pub mod graph;
pub mod graph6;
pub mod par;
pub mod pipeline;
pub mod subgraph;
pub mod tuud;

pub use canon::{canonical_form, canonical_graph, CanonicalCode};
pub use graph::{Anchor, Graph};
pub use graph6::{emit_graph6, parse_graph6, Graph6Error};
pub use subgraph::{contains_subgraph, subgraph_embeddings};
