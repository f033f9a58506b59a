//! The Serre subcategory generated by the kernels and cokernels of the
//! marked arrows, the quotient hom-sets as roof classes, and the
//! induced functor onto the localised hull that evaluates them.

mod functor;
mod membership;
mod roofs;
mod verify;

pub use functor::{AddLift, CoordFunctor, FreydLift, InducedFunctor, OpLift};
pub use membership::{
    membership, serre_generators, sigma_contains, small_elements, SerreContext, SerreGenerator,
    SerreGenerators, Verdict,
};
pub use roofs::{
    generators_annihilated, quotient_hom, roof_image, roofs_equivalent, QuotientHom, Roof,
    RoofClass,
};
pub use verify::{
    span_setup, verify_equivalence, EquivalenceReport, SpanSetup, DEFAULT_LENGTH_BOUND,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SerreError {
    #[error("localisation enumeration is incomplete at this length bound")]
    IncompleteLocalisation,
    #[error("functor check failed: {0}")]
    NotFunctorial(String),
    #[error(transparent)]
    Freyd(#[from] crate::freyd::FreydError),
    #[error(transparent)]
    Fincat(#[from] crate::fincat::FincatError),
    #[error(transparent)]
    Zlin(#[from] crate::zlin::ZlinError),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
