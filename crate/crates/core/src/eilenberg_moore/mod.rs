//! Modules over a monad, the free/forgetful adjunction and the comparison
//! functor.

mod category;
mod comparison;
mod module;

pub use category::{em_adjunction, ModuleCategory};
pub use comparison::{
    check_equiv_up_to_retracts, essential_preimage, xi_em_from_sigma, Comparison, EquivReport, EquivSummary,
    ModuleRetract, ModuleRetractSummary, Preimage,
};
pub use module::{module_hom_basis, validate_module, MModule, ModuleMor};
