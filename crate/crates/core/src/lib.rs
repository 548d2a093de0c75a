//! Exact construction, verification, decomposition and classification of
//! finite-dimensional Leibniz bimodules over the Lie algebra sl2.
//!
//! All arithmetic is over the rationals. Vectors are columns and every action
//! matrix multiplies from the left; `rho(x)` is the right action `m ↦ [m, x]`
//! and `lambda(x)` the left action `m ↦ [x, m]`.

pub mod acceptance;
pub mod bimodule;
pub mod classify;
pub mod decomposition;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod rational;
pub mod sl2;

pub use error::{Error, Result};
pub use rational::Rational;

/// Dense rational matrix.
pub type MatrixQ = linalg::Matrix<Rational>;
/// Rational subspace in canonical echelon form.
pub type SubspaceQ = linalg::Subspace<Rational>;
