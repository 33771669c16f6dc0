//! Ursell coefficients of dimer overlap graphs, their Tutte-polynomial
//! evaluation, dimer cluster enumeration on the square lattice, and the
//! monomer-dimer entropy series `lambda_d(p)` with a transfer-matrix cross-check.
//!
//! Module map:
//!
//! - [`graph`]: small labeled multigraphs (at most 16 vertices).
//! - [`tutte`]: `T_G(1,0)`, the full Tutte polynomial and the Ursell
//!   coefficient, by brute force, deletion-contraction and the
//!   vertex-exponential subset recursion.
//! - [`cluster`]: dimers, clusters up to translation, overlap graphs.
//! - [`series`]: exact rational coefficient tables and evaluation.
//! - [`strip`]: row transfer operator on width-`W` strips, power iteration,
//!   fixed-density free energy.
//! - [`selfcheck`]: the invariant suite behind `dimerlab selfcheck`.

pub mod cluster;
pub mod error;
pub mod graph;
pub mod selfcheck;
pub mod series;
pub mod strip;
pub mod tutte;

pub use error::{Error, Result};
pub use graph::{SmallGraph, VertexSubset, MAX_VERTICES};
