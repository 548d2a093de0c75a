//! Exact linear algebra over a field: dense matrices, row reduction,
//! nullspaces, eigenspaces and canonical subspaces, plus an incremental
//! sparse eliminator for large constraint systems.

mod matrix;
mod sparse;
mod subspace;

pub use matrix::{Matrix, Scalar};
pub use sparse::{SparseEchelon, SparseRow};
pub use subspace::{eigenspace, nullspace, solve_linear, Subspace};
