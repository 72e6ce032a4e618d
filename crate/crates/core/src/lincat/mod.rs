//! Finitely presented k-linear categories, their additive closure and their
//! Karoubi envelope.
//!
//! A closure object is a list of base objects plus an idempotent on their
//! direct sum; plain sums carry the identity. Morphisms are sparse block
//! matrices of coefficient vectors absorbed by both idempotents.

mod category;
mod closure;
mod homspace;
mod karoubi;
mod subcategory;

pub use category::{Category, CategoryBuilder};
pub use closure::{Blocks, Mor, Obj};
pub use homspace::{inverse, push_mor, HomFamily, HomSpace};
pub use karoubi::{split_idempotent, RetractSummary, RetractWitness};
pub use subcategory::FullSubcategory;

pub(crate) use closure::same_category;
