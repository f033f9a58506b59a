//! Integer linear algebra and finitely presented abelian groups: the
//! computational substrate for every hom-group in the completed
//! categories.
//!
//! All values are immutable after construction and every operation is
//! a pure function, so everything here can be shared freely across
//! threads.

mod group;
mod matrix;
mod snf;

pub use group::{subquotient, FpAbGroup, GroupElement, Subquotient};
pub use matrix::MatrixZ;
pub use snf::{kernel_lattice, snf, solve_left, SnfDecomposition};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ZlinError {
    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: &'static str },
    #[error("relation vector lies outside the span of the generators")]
    RelationOutsideSpan,
}
