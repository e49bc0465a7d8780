use thiserror::Error;

/// Errors raised by constructions in this crate.
///
/// Axiom violations of user-supplied data are reported as validation
/// reports, not errors; errors are reserved for inputs an operation cannot
/// proceed with.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size guard: {what} would have size {size}, bound is {bound}")]
    SizeGuard {
        what: &'static str,
        size: u128,
        bound: u128,
    },

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("malformed category data: {0}")]
    MalformedCategory(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("functors are defined over different source categories")]
    SourceMismatch,

    #[error("variance mismatch: {0}")]
    VarianceMismatch(String),

    #[error("invalid functor: {0}")]
    InvalidFunctor(String),

    #[error("not a cylinder: {0}")]
    NotACylinder(String),

    #[error("not a cone: {0}")]
    NotACone(String),

    #[error("no factorization: {0}")]
    NoFactorization(String),

    #[error("object {0} is out of range")]
    UnknownObject(usize),

    #[error("invalid subgroup inclusion: {0}")]
    InvalidInclusion(String),
}

pub type Result<T> = std::result::Result<T, Error>;
