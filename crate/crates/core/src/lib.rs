//! Exact and numeric tools for counting cliques in graphs without large
//! clique immersions or subdivisions.
//!
//! - [`graph`], [`io`]: immutable simple graphs, edge-list and graph6 I/O.
//! - [`cliques`]: peeling clique counter, an independent oracle, traces.
//! - [`embed`]: constructive immersion and subdivision embedders, certificate
//!   verifiers, and exhaustive searches.
//! - [`params`]: the parameter `t(G)` and the missing-degree bounds.
//! - [`constructions`]: extremal families and a seeded random generator.
//! - [`bounds`]: log-space evaluators and the exponent optimizer.
//! - [`suite`]: the end-to-end verification suite.

mod bits;
pub mod bounds;
pub mod cliques;
pub mod constructions;
pub mod embed;
pub mod graph;
pub mod guard;
pub mod io;
pub mod par;
pub mod params;
pub mod suite;
pub mod vertex_set;

pub use graph::{Graph, GraphError};
pub use guard::GuardExceeded;
pub use par::Execution;
pub use vertex_set::VertexSet;
