//! Small presentations used by tests, examples and the shipped workspace.

use std::sync::Arc;

use crate::equivariant::{EquivObject, FiniteGroup, StrictAction};
use crate::exactlin::{Field, Matrix};
use crate::lincat::{Category, CategoryBuilder};

/// The field itself: one object `•` with `End(•) = k`.
pub fn c1(field: Field) -> Category {
    let mut b = CategoryBuilder::new("C1", field);
    b.object("•");
    b.unit("•", "id").unwrap();
    b.build().unwrap()
}

/// The A2 quiver: objects 1, 2 and one arrow `a: 1 → 2`.
pub fn c2(field: Field) -> Category {
    let mut b = CategoryBuilder::new("C2", field);
    b.object("1");
    b.object("2");
    b.unit("1", "id_1").unwrap();
    b.unit("2", "id_2").unwrap();
    b.hom("1", "2", &["a"]).unwrap();
    b.build().unwrap()
}

/// `n` objects with `End = k` and no morphisms between distinct objects.
pub fn discrete(name: &str, names: &[&str], field: Field) -> Category {
    let mut b = CategoryBuilder::new(name, field);
    for n in names {
        b.object(n);
    }
    for n in names {
        b.unit(n, &format!("id_{n}")).unwrap();
    }
    b.build().unwrap()
}

/// Two objects `x`, `y`, `End = k`, no cross morphisms.
pub fn c3(field: Field) -> Category {
    discrete("C3", &["x", "y"], field)
}

/// Three objects, used for the rotation action of Z/3.
pub fn c3_rot(field: Field) -> Category {
    discrete("C3rot", &["x", "y", "z"], field)
}

/// Dual numbers: one object with `End = k[ε]/(ε²)`.
pub fn dual_numbers(field: Field) -> Category {
    let mut b = CategoryBuilder::new("D1", field);
    b.object("•");
    b.unit("•", "1").unwrap();
    b.hom("•", "•", &["ε"]).unwrap();
    b.build().unwrap()
}

/// `Z/2` swapping the two objects of [`c3`].
pub fn swap_action(field: Field) -> StrictAction {
    let z2 = Arc::new(FiniteGroup::cyclic(2));
    let c = Arc::new(c3(field));
    StrictAction::permuting("swap", &z2, &c, vec![vec![0, 1], vec![1, 0]], |_, _, _| Matrix::identity(field, 1))
        .expect("swap action")
}

/// `Z/3` rotating the three objects of [`c3_rot`].
pub fn rotation_action(field: Field) -> StrictAction {
    let z3 = Arc::new(FiniteGroup::cyclic(3));
    let c = Arc::new(c3_rot(field));
    let perm = (0..3).map(|g| (0..3).map(|x| (x + g) % 3).collect()).collect();
    StrictAction::permuting("rotation", &z3, &c, perm, |_, _, _| Matrix::identity(field, 1)).expect("rotation action")
}

/// `S_3` permuting the three objects of [`c3_rot`].
pub fn s3_permutation_action(field: Field) -> StrictAction {
    let s3 = Arc::new(FiniteGroup::symmetric3());
    let c = Arc::new(c3_rot(field));
    let perm = FiniteGroup::s3_perms().iter().map(|p| p.to_vec()).collect();
    StrictAction::permuting("permutation", &s3, &c, perm, |_, _, _| Matrix::identity(field, 1)).expect("S3 action")
}

/// `Z/2` on [`c2`] fixing both objects and sending `a ↦ −a`.
pub fn sign_action_c2(field: Field) -> StrictAction {
    let z2 = Arc::new(FiniteGroup::cyclic(2));
    let c = Arc::new(c2(field));
    StrictAction::permuting("sign", &z2, &c, vec![vec![0, 1], vec![0, 1]], |g, x, y| {
        let k = if g == 1 && x != y { -1 } else { 1 };
        Matrix::from_ints(field, &[&[k]])
    })
    .expect("sign action")
}

/// The trivial action of `group` on `cat`.
pub fn trivial_action(group: FiniteGroup, cat: Category) -> StrictAction {
    StrictAction::trivial(&Arc::new(group), &Arc::new(cat))
}

/// The one-dimensional equivariant object on `x` with `α_g = χ(g)` for a
/// trivial action.
pub fn character(action: &StrictAction, name: &str, x: usize, chi: &[i64]) -> EquivObject {
    let f = action.field();
    let values: Vec<_> = chi.iter().map(|&c| f.int(c)).collect();
    EquivObject::character(name, action, x, &values).expect("character")
}
