//! Hom dimensions in the homotopy category of module complexes, computed
//! directly and through the lifted section.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use separable::complexes::{derived_comparison_check, random_module_complex, ModuleComplex};
use separable::eilenberg_moore::MModule;
use separable::equivariant::{equivariant_monad, to_module, FiniteGroup};
use separable::exactlin::Field;
use separable::fixtures;
use separable::lincat::Obj;

fn main() -> separable::Result<()> {
    let act = fixtures::trivial_action(FiniteGroup::cyclic(2), fixtures::c1(Field::Rationals));
    let monad = Arc::new(equivariant_monad(&act)?);
    let triv = to_module(&act, &monad, &fixtures::character(&act, "triv", 0, &[1, 1]))?;
    let sign = to_module(&act, &monad, &fixtures::character(&act, "sign", 0, &[1, -1]))?;
    let free = MModule::free(&monad, &Obj::base(act.base(), 0))?;

    let mut samples = vec![ModuleComplex::stalk("triv", &triv, 0), ModuleComplex::stalk("sign", &sign, 0)];
    let pool = [triv, sign, free];
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..3 {
        samples.push(random_module_complex(&mut rng, &format!("random{i}"), &pool, 0, 3)?);
    }
    let rep = derived_comparison_check(&monad, &samples)?;
    for p in &rep.pairs {
        println!("Hom({}, {}): d1 = {}, d2 = {}", p.from, p.to, p.d1, p.d2);
    }
    println!("{}", rep.report);
    Ok(())
}
