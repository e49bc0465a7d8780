//! Finite categories as explicit data, functors between them, and the
//! derived categories that pointwise formulas range over.

mod category;
mod comma;
mod functor;

pub use category::{validate_category, FinCat, MorId, Morphism, ObjId, Violation};
pub use comma::{comma_over, comma_under, elements_category, elements_category_contra, CommaCat};
pub use functor::{Functor, FunctorViolation};

/// Direction of a functor out of a finite category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variance {
    Covariant,
    Contravariant,
}

impl Variance {
    pub fn flip(self) -> Variance {
        match self {
            Variance::Covariant => Variance::Contravariant,
            Variance::Contravariant => Variance::Covariant,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Variance::Covariant => "covariant",
            Variance::Contravariant => "contravariant",
        }
    }
}
