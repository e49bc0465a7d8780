//! Finite category theory over exact rationals.
//!
//! The crate computes pointwise Kan extensions, weighted limits and
//! colimits, ends and coends for functors out of finite categories into
//! finite sets or finite-dimensional rational inner-product spaces. Weighted
//! colimits are realized as orthogonal complements of relation subspaces,
//! which gives every apex an inner product and lets contraction bounds be
//! certified exactly. The `induce` module applies this to induced
//! representations of finite groups.

pub mod error;
pub mod cli;
pub mod fincat;
pub mod induce;
pub mod kan;
pub mod limits;
pub mod qlin;
pub mod random;
pub mod setfun;
pub mod vectfun;

pub use error::{Error, Result};
pub use limits::SizeLimits;
