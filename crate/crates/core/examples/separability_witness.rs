//! Separability of the forgetful functor for a trivial Z/2 action, solved
//! exactly over Q and shown infeasible over F2.

use std::sync::Arc;

use separable::equivariant::{character_objects, induce_adjunction, FiniteGroup};
use separable::exactlin::Field;
use separable::fixtures;
use separable::functorial::{extract_section, separability_solve, transfer_witness, SepOutcome, Transfer};

fn main() -> separable::Result<()> {
    for field in [Field::Rationals, Field::Prime(2)] {
        let act = Arc::new(fixtures::trivial_action(FiniteGroup::cyclic(2), fixtures::c1(field)));
        let samples = character_objects(&act, 0)?;
        let (_, adj) = induce_adjunction(&act, samples)?;
        match separability_solve(adj.right())? {
            SepOutcome::Separable(h) => {
                println!("over {field}: {}", h.verify());
                let xi = extract_section(&adj, &h)?;
                let again = transfer_witness(Transfer::FromXi { adjunction: &adj, xi: &xi })?;
                println!("rebuilt from the counit section: {}", again.verify());
            }
            SepOutcome::Infeasible(i) => {
                println!("over {field}: no retraction exists (rank {}, augmented rank {})", i.rank, i.augmented_rank)
            }
        }
    }
    Ok(())
}
