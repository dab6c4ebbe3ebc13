//! Solvers and instance tooling for Subset Vertex Cover: given a graph
//! `G = (V, E)` and terminals `T ⊆ V`, find a smallest (or lightest) set
//! `S` containing an end-vertex of every edge that touches `T`.
//!
//! The crate provides an exponential-time exact oracle, polynomial-time
//! algorithms for instances where `G[T]` is `sP2`-free or `G` is
//! `(sP1+P2+P3)`-free, a dynamic program over rooted layouts whose running
//! time is governed by mim-width, and reduction-based generators whose
//! outputs carry certified optima.

pub mod bipartite;
pub mod error;
pub mod generators;
pub mod graph;
pub mod instance;
pub mod mimwidth;
pub mod mis;
pub mod oracle;
pub mod poly;
pub mod recognition;
pub mod set;

pub use error::{Error, Result};
pub use graph::{build_named, Graph, NamedGraph};
pub use instance::{
    is_t_vertex_cover, parse_instance, parse_solution, restrict_to_t_incident, serialize_instance,
    Algorithm, Instance, Measure, Provenance, ScaledWeights, SolutionCover, SolutionFile, Stats,
    TableStat, Weight,
};
pub use set::VertexSet;
