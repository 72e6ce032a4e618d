//! Functors, natural transformations, adjunctions and separability witnesses.

mod adjunction;
mod functor;
mod nat;
mod separable;

pub use adjunction::Adjunction;
pub use functor::Functor;
pub use nat::NatTrans;
pub use separable::{
    check_section, extract_section, fully_faithful_on, separability_solve, transfer_witness, xi_solve, HomMapReport,
    PairMap, SepOutcome, SepWitness, Transfer, WitnessFile,
};
