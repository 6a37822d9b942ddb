//! Balanced tripartite graphs `G_3(n)` under minimum-degree constraints.
//!
//! The crate builds the extremal families (projective-plane blocks, the
//! `K_3(2)`-free family with `δ = n + t`, gluing, the triangle-minimising
//! regular graphs), detects complete tripartite subgraphs `K_3(s)` exactly,
//! runs the constructive `K_3(s)` finder, extracts `C_6` blow-up structure and
//! searches for triangle-sparse or octahedron-free graphs.
//!
//! Threshold arithmetic is generic over [`Scalar`]; [`Rational`] gives exact
//! comparisons, `f64` the fast path.

pub mod bipartite;
pub mod bits;
pub mod certificate;
pub mod constructions;
pub mod detection;
pub mod error;
pub mod finder;
pub mod graph;
pub mod io;
pub mod scalar;
pub mod search;
pub mod structure;

pub use bipartite::{BipartiteGraph, InducedBipartite};
pub use error::{Error, Result};
pub use graph::{DegreeProfile, Direction, Part, TripartiteGraph, Vertex};
pub use scalar::Scalar;

/// Exact rational scalar used for thresholds given on the command line.
pub type Rational = num_rational::Ratio<i64>;

pub type ExactDTildeSet = detection::DTildeSet<Rational>;
pub type FloatDTildeSet = detection::DTildeSet<f64>;

pub type ExactC6Partition = structure::C6Partition<Rational>;
pub type FloatC6Partition = structure::C6Partition<f64>;
pub type ExactC6CloseInstance = structure::C6CloseInstance<Rational>;
pub type FloatC6CloseInstance = structure::C6CloseInstance<f64>;
