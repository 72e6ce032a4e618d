//! Equivariant objects versus modules over the group monad.

use std::sync::Arc;

use separable::eilenberg_moore::module_hom_basis;
use separable::equivariant::{character_objects, eq_hom_basis, equivariant_monad, to_equivariant, to_module, FiniteGroup};
use separable::exactlin::Field;
use separable::fixtures;

fn main() -> separable::Result<()> {
    let act = fixtures::trivial_action(FiniteGroup::cyclic(3), fixtures::c1(Field::Rationals));
    let monad = Arc::new(equivariant_monad(&act)?);
    let objs = character_objects(&act, 0)?;
    let modules = objs.iter().map(|z| to_module(&act, &monad, z)).collect::<separable::Result<Vec<_>>>()?;
    for (z, m) in objs.iter().zip(&modules) {
        let back = to_equivariant(&act, m)?;
        println!("{}: carrier {}, round trip exact: {}", z.name(), z.carrier(), back.same_data(z));
    }
    for (i, a) in objs.iter().enumerate() {
        for (j, b) in objs.iter().enumerate() {
            let eq = eq_hom_basis(&act, a, b).dim();
            let md = module_hom_basis(&modules[i], &modules[j])?.dim();
            println!("Hom({}, {}): equivariant {eq}, modules {md}", a.name(), b.name());
        }
    }
    Ok(())
}
