//! Cokernel completion and the abelian hull.
//!
//! `Freyd<B>` completes a computable additive base under formal
//! cokernels; applying it to the additive hull, taking the opposite,
//! completing again, and opposing once more yields the abelian hull,
//! where kernels and cokernels are both computable and every
//! universal property can be checked by explicit solving.

pub mod base;
mod category;
mod hull;
mod opposite;

pub use base::{
    add_coords, cofactor_through, factor_through, postcompose_injective, postcompose_matrix,
    precompose_injective, precompose_matrix, scale_coords, sub_coords, two_sided_inverse,
    unit_coords, AdditiveBase, Biproduct, Coords, Mor,
};
pub use category::{Freyd, FreydHomData, FreydObj, FreydParts};
pub use hull::{EObj, HMor, HObj, HullLayer, MidLayer, TopCompletion, Tower};
pub use opposite::Opposite;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum FreydError {
    #[error("endpoint mismatch")]
    EndpointMismatch,
    #[error("base category hom-sets are not certified complete")]
    IncompleteBase,
    #[error("not abelian at this level: kernels need one more completion-and-opposite step")]
    NotAbelianAtThisLevel,
    #[error("component does not satisfy the compatibility condition")]
    InvalidComponent,
    #[error("base category composition table is inconsistent: {0}")]
    BaseInconsistent(&'static str),
}
