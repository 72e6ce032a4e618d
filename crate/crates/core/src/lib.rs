//! Executable separable functors, separable monads and comparison functors.
//!
//! Everything here lives over a finitely presented k-linear category with k
//! either Q or a prime field. Every existence statement ("there is a natural
//! transformation such that ...") is decided by an exact affine solve, and
//! every construction returns a witness that is re-verified before it is
//! handed back.
//!
//! Layers, bottom-up:
//!
//! - [`exactlin`]: scalars, matrices, sparse elimination.
//! - [`lincat`]: presentations, additive closure and Karoubi envelope.
//! - [`functorial`]: functors, natural transformations, adjunctions and
//!   separability witnesses.
//! - [`monadic`]: monads and sections of the multiplication.
//! - [`eilenberg_moore`]: module categories and the comparison functor.
//! - [`equivariant`]: finite group actions and equivariant objects.
//! - [`complexes`]: bounded complexes and homotopy-category hom spaces.
//! - [`cli`]: JSON workspaces, reports and the command surface.

pub mod cli;
pub mod complexes;
pub mod eilenberg_moore;
pub mod equivariant;
pub mod error;
pub mod exactlin;
pub mod fixtures;
pub mod functorial;
pub mod lincat;
pub mod monadic;
pub mod report;

pub use error::{Error, Result};
pub use report::ValidationReport;
