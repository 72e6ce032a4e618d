//! Bounded complexes over the closure, hom spaces in the homotopy category,
//! and monads lifted to complexes term by term.

mod complex;
mod homotopy;
mod lifted;
mod random;

pub use complex::{BoundedComplex, ChainMap, DEFAULT_SUPPORT_CAP};
pub use homotopy::{find_homotopy, is_null_homotopic, kb_hom_basis, KbHom, KbHomSummary};
pub use lifted::{
    derived_comparison_check, lifted_module_hom_dim, module_kb_hom, transported_homotopy, ComplexRetract,
    DerivedReport, LiftedMonad, ModuleComplex, PairDims,
};
pub use random::{random_complex, random_module_complex};
