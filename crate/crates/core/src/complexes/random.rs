use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::complex::BoundedComplex;
use super::lifted::ModuleComplex;
use crate::eilenberg_moore::{module_hom_basis, MModule};
use crate::error::Result;
use crate::exactlin::Scalar;
use crate::lincat::{push_mor, Category, HomSpace, Mor, Obj};

fn random_in(rng: &mut ChaCha8Rng, space: &HomSpace) -> Mor {
    let f = space.field();
    let coeffs: Vec<Scalar> = (0..space.dim()).map(|_| f.int(rng.gen_range(-2..=2))).collect();
    space.combine(&coeffs)
}

/// The subspace of `space` killing `prev` on composition.
fn after(space: &HomSpace, prev: Option<&Mor>) -> HomSpace {
    match prev {
        None => space.clone(),
        Some(p) => space.restrict(|d, r| push_mor(r, &d.compose(p).expect("composable"))),
    }
}

/// A complex with the given terms starting in degree `lo` and random
/// differentials satisfying `d∘d = 0`.
pub fn random_complex(rng: &mut ChaCha8Rng, name: &str, cat: &Arc<Category>, lo: i64, terms: Vec<Obj>) -> Result<BoundedComplex> {
    let mut diffs: Vec<Mor> = Vec::new();
    for k in 0..terms.len().saturating_sub(1) {
        let space = after(&HomSpace::new(&terms[k], &terms[k + 1]), diffs.last());
        diffs.push(random_in(rng, &space));
    }
    BoundedComplex::new(name, cat, lo, terms, diffs)
}

/// A module complex whose terms are drawn from `pool` and whose
/// differentials are random module morphisms with `d∘d = 0`.
pub fn random_module_complex(rng: &mut ChaCha8Rng, name: &str, pool: &[MModule], lo: i64, len: usize) -> Result<ModuleComplex> {
    let modules: Vec<MModule> = (0..len).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect();
    let mut diffs: Vec<Mor> = Vec::new();
    for k in 0..len.saturating_sub(1) {
        let space = after(&module_hom_basis(&modules[k], &modules[k + 1])?, diffs.last());
        diffs.push(random_in(rng, &space));
    }
    ModuleComplex::new(name, lo, modules, diffs)
}
