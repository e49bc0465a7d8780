//! Weighted limits and colimits, ends and coends, and pointwise Kan
//! extensions of functors into finite-dimensional rational spaces.

pub mod ends;
mod extension;
mod weighted;

pub use ends::{
    coend_vect, end_set, end_vect, fubini_check, function_bifunctor, hom_bifunctor,
    kan_adjunction_bifunctor, twisted, CoendResult, EndResult, FubiniReport,
};
pub use extension::{
    left_kan, left_kan_via_comma, left_weight, right_kan, right_weight, KanExtensionResult, Provenance, Side,
};
pub use weighted::{
    compare_weighted_colimits, factor_cylinder, weighted_colimit_orthogonal, weighted_colimit_quotient,
    weighted_limit, ColimitComparison, Cylinder, Factorization, QuotientColimit, WeightedColimitResult,
    WeightedLimitResult,
};
