//! Finite groups acting strictly on presentations, equivariant objects, the
//! induction adjunction and its group monad.

mod action;
mod characters;
mod group;
mod induced;

pub use action::{eq_hom_basis, EquivObject, StrictAction};
pub use characters::{character_objects, cyclic_generator, cyclotomic};
pub use group::FiniteGroup;
pub use induced::{equivariant_monad, induce_adjunction, to_equivariant, to_module, xi_forgetful, xi_nat, EquivariantCategory};
