//! Finite quivers, their path categories, and localisation at a marked
//! arrow set via zigzag-word rewriting.

mod localised;
mod path_cat;
pub mod quiver;
pub mod schema;
pub mod word;

pub use localised::LocalisedCategory;
pub use path_cat::PathCategory;
pub use quiver::{compose_paths, hom_paths, span_quiver, Arrow, ArrowId, Path, Quiver, VertexId};
pub use word::{compose_words, localised_hom, reduce_word, Letter, ZigzagWord};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum FincatError {
    #[error("duplicate name: {0}")]
    DuplicateName(String),
    #[error("unknown vertex: {0}")]
    UnknownVertex(String),
    #[error("unknown arrow: {0}")]
    UnknownArrow(String),
    #[error("infinite hom-set: quiver is cyclic")]
    InfiniteHomSet,
    #[error("endpoint mismatch")]
    EndpointMismatch,
    #[error("word enumeration did not stabilize below the length bound")]
    IncompleteEnumeration,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

/// A category with finitely many objects, finite hom-sets, and an
/// explicit composition table on indexed morphisms. Indexing is
/// deterministic so every downstream construction is reproducible.
pub trait FiniteCategory: std::fmt::Debug {
    fn vertex_count(&self) -> usize;
    fn vertex_label(&self, v: VertexId) -> String;
    fn hom_len(&self, a: VertexId, b: VertexId) -> usize;
    fn identity_idx(&self, v: VertexId) -> usize;
    /// Index of g o f in hom(a, c), for f in hom(a, b), g in hom(b, c).
    fn compose_idx(&self, a: VertexId, b: VertexId, c: VertexId, g: usize, f: usize) -> usize;
    fn mor_label(&self, a: VertexId, b: VertexId, idx: usize) -> String;
    /// Whether the hom-sets are certified complete (always true for
    /// path categories; a property of the enumeration bound for
    /// localised categories).
    fn complete(&self) -> bool {
        true
    }
}
