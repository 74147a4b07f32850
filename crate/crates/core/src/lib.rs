//! Spectral radius of connected irregular bipartite graphs with bounded
//! maximum degree: graph primitives, extremal constructions, tridiagonal
//! eigenvalues, spectral solvers, closed-form bounds and exhaustive search.

pub mod bounds;
pub mod constructions;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod spectral;
pub mod tridiagonal;

pub use error::{Error, Result};
pub use graph::Graph;
