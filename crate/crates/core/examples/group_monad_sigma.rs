//! The Maschke dichotomy for group monads `M(X) = ⊕_g X`.

use separable::equivariant::{equivariant_monad, FiniteGroup};
use separable::exactlin::Field;
use separable::fixtures;
use separable::monadic::{monad_separability_solve, MonadSepOutcome};

fn main() -> separable::Result<()> {
    let groups = [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric3()];
    let fields = [Field::Rationals, Field::Prime(2), Field::Prime(3), Field::Prime(5)];
    for g in &groups {
        for &f in &fields {
            let act = fixtures::trivial_action(g.clone(), fixtures::c1(f));
            let monad = equivariant_monad(&act)?;
            let verdict = match monad_separability_solve(&monad)? {
                MonadSepOutcome::Separable { witness, kernel } => {
                    let sigma = witness.sigma().component(0).ambient();
                    let nonzero: Vec<String> = sigma.iter().filter(|s| !s.is_zero()).map(|s| s.to_string()).collect();
                    format!("separable, σ has {} nonzero entries, the first {}, {} free directions", nonzero.len(), nonzero[0], kernel.len())
                }
                MonadSepOutcome::Infeasible(i) => format!("not separable (rank {}, augmented rank {})", i.rank, i.augmented_rank),
            };
            println!("{:>3} over {:<3}: {verdict}", g.name(), f.to_string());
        }
    }
    Ok(())
}
