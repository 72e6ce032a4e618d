//! The comparison functor into modules: fully faithful, every module a
//! retract of a free one, and split preimages in the idempotent completion.

use std::sync::Arc;

use separable::eilenberg_moore::{check_equiv_up_to_retracts, essential_preimage, Comparison};
use separable::equivariant::{character_objects, induce_adjunction, to_module, FiniteGroup};
use separable::exactlin::Field;
use separable::fixtures;
use separable::lincat::Obj;
use separable::monadic::{monad_from_adjunction, monad_separability_solve};

fn main() -> separable::Result<()> {
    let act = Arc::new(fixtures::trivial_action(FiniteGroup::cyclic(2), fixtures::c1(Field::Rationals)));
    let chars = character_objects(&act, 0)?;
    let (ecat, adj) = induce_adjunction(&act, chars.clone())?;
    let monad = Arc::new(monad_from_adjunction(&adj)?);
    let sigma = monad_separability_solve(&monad)?.witness().expect("|G| is invertible over Q");
    let modules = chars.iter().map(|z| to_module(&act, &monad, z)).collect::<separable::Result<Vec<_>>>()?;
    let cmp = Comparison::with_monad(&adj, &monad, modules.clone())?;
    println!("{}", cmp.check_factorization());

    let samples: Vec<Obj> = (0..ecat.objects().len()).map(|j| Obj::base(ecat.pres(), j)).collect();
    let rep = check_equiv_up_to_retracts(&cmp, &sigma, &samples)?;
    for h in &rep.fully_faithful {
        println!("K on Hom({}, {}): {} → {}, bijective {}", h.from, h.to, h.source_dim, h.target_dim, h.bijective);
    }
    for r in &rep.retracts {
        let ok = r.witness.as_ref().is_some_and(|w| w.verify().passed());
        println!("{} is a retract of a free module: {ok}", r.module);
    }
    for m in &modules {
        let p = essential_preimage(&cmp, &sigma, m)?;
        println!("preimage of {}: {} ({})", m.name(), p.object, if p.verify(m).passed() { "verified" } else { "failed" });
    }
    Ok(())
}
