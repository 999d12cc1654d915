//! Minimum leaf spanning trees and network fault costs on small graphs.
//!
//! Everything in this crate works on labelled simple undirected graphs with
//! at most 64 vertices, stored as one adjacency bit mask per vertex. The
//! modules are layered:
//!
//! - [`graph`]: the [`Graph`] type, the graph6 codec and structural queries
//!   (connectivity, separators, girth, bipartiteness, vertex surgery);
//! - [`hamilton`]: hamiltonian cycle/path searches and the 1-hamiltonicity
//!   test;
//! - [`mlst`]: the minimum leaf number and the deduplicated degree sequences
//!   of all minimum-leaf subgraphs;
//! - [`faultcost`]: transition costs between minimum-leaf subgraphs and the
//!   fault cost of a 2-connected graph;
//! - [`classify`]: leaf-guaranteed / leaf-stable / leaf-critical labels,
//!   tfc1 certificates and weak/medium/strong fragment certification;
//! - [`constructions`]: deterministic generators for the named graph
//!   families used as fixtures and regression anchors;
//! - [`oracle`]: independent brute-force reimplementations plus an
//!   isomorph-free generator for small graphs, used to cross-check the fast
//!   paths.

pub mod checks;
pub mod classify;
pub mod constructions;
pub mod deadline;
pub mod faultcost;
pub mod graph;
pub mod graph6;
pub mod hamilton;
pub mod mlst;
pub mod oracle;

pub use deadline::Deadline;
pub use graph::{ConnectivityClass, Graph, VertexSet};
pub use graph6::{parse_graph6, write_graph6};
