//! Oriented Turán numbers at desk scale.
//!
//! The crate covers the full toolchain around `exo(n, F)`, the largest arc
//! count of an `n`-vertex oriented graph with no copy of `F`:
//!
//! * [`digraph`]: oriented graphs, bipartite digraphs and the `.og` text format;
//! * [`canon`]: canonical codes and isomorph-free enumeration;
//! * [`homomorphism`]: homomorphism search and the compressibility `z(F)`;
//! * [`containment`]: subgraph containment and universal containment checks;
//! * [`extremal`]: the exhaustive oracle, closed forms and constructions;
//! * [`regularize`]: bipartite extraction, almost-regular extraction and the
//!   rich-set embedding pipeline for antidirected patterns.

pub mod canon;
pub mod containment;
pub mod digraph;
pub mod error;
pub mod extremal;
pub mod homomorphism;
pub mod regularize;

pub use canon::{canonical_code, CanonicalCode};
pub use digraph::{BipartiteDigraph, Digraph, LargeOrientedGraph, OrientedGraph, UndirectedGraph};
pub use error::{Error, Result};
pub use extremal::{ExtremalRecord, PatternSpec};
pub use homomorphism::{CompressibilityResult, VertexMap};
