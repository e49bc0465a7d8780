//! Exact rational linear algebra.
//!
//! Every space is `Q^n` with the standard dot product in its canonical
//! basis. Subspaces are stored by their reduced row-echelon basis, so two
//! subspaces are equal exactly when their bases are equal.

mod matrix;
mod psd;
mod rational;
mod solve;
mod subspace;

pub use matrix::{RatMatrix, Rref};
pub use psd::{is_contraction, psd_certificate, ContractionCertificate, PsdCertificate};
pub use rational::{format_rational, parse_rational, rat, ParseRationalError, Rational};
pub use solve::{solve_linear_system, solve_matrix_equation, LinearSolution, MatrixSolution};
pub use subspace::Subspace;
