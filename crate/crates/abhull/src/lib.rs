//! Desk-scale computational category theory.
//!
//! The crate builds, from a finite quiver, the chain of completions
//!
//! path category -> additive hull -> cokernel completion -> abelian hull
//!
//! together with the localisation of the path category at a marked set
//! of arrows, the Serre subcategory generated by the kernels and
//! cokernels of the marked arrows, and the quotient's hom-sets realized
//! as roof (fraction) classes. Every hom-group is a finitely presented
//! abelian group computed exactly over the integers, so the growth of
//! quotient hom-groups with the quiver size can be measured directly.

pub mod addhull;
pub mod extensions;
pub mod fincat;
pub mod freyd;
pub mod serre;
pub mod zlin;
