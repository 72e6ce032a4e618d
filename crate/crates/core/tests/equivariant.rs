use std::sync::Arc;

use separable::eilenberg_moore::{module_hom_basis, validate_module, Comparison};
use separable::equivariant::*;
use separable::exactlin::Field;
use separable::fixtures;
use separable::functorial::{transfer_witness, Transfer};
use separable::lincat::{Mor, Obj};
use separable::monadic::{monad_from_adjunction, monad_separability_solve, sigma_from_xi};
use separable::Error;

fn q() -> Field {
    Field::Rationals
}

fn z2_on_c1(field: Field) -> Arc<StrictAction> {
    Arc::new(fixtures::trivial_action(FiniteGroup::cyclic(2), fixtures::c1(field)))
}

fn actions(field: Field) -> Vec<Arc<StrictAction>> {
    vec![
        z2_on_c1(field),
        Arc::new(fixtures::trivial_action(FiniteGroup::cyclic(3), fixtures::c1(field))),
        Arc::new(fixtures::swap_action(field)),
        Arc::new(fixtures::rotation_action(field)),
        Arc::new(fixtures::s3_permutation_action(field)),
        Arc::new(fixtures::trivial_action(FiniteGroup::symmetric3(), fixtures::c1(field))),
        Arc::new(fixtures::sign_action_c2(field)),
    ]
}

#[test]
fn induced_unit_and_counit_on_c1() {
    let act = z2_on_c1(q());
    let sign = fixtures::character(&act, "sign", 0, &[1, -1]);
    let (cat, adj) = induce_adjunction(&act, vec![sign]).unwrap();
    let c1 = act.base();
    assert_eq!(adj.left().object(0), &Obj::base(cat.pres(), 0));
    assert_eq!(cat.object(0).carrier(), &Obj::plain(c1, vec![0, 0]));
    let eta = adj.unit().component(0);
    assert_eq!(eta.block(0, 0), vec![q().one()]);
    assert!(eta.block(1, 0).iter().all(|s| s.is_zero()));
    // ε at the sign object lifts to [β_e^{-1}, β_g^{-1}] = [1, -1].
    let lifted = cat.sub().lift(adj.counit().component(1)).unwrap();
    assert_eq!(lifted.block(0, 0), vec![q().one()]);
    assert_eq!(lifted.block(0, 1), vec![q().int(-1)]);
}

#[test]
fn delta_multiplication_for_z2() {
    let act = z2_on_c1(q());
    let m = equivariant_monad(&act).unwrap();
    let mu = m.mult().component(0);
    // Columns are (h, k) with h outer; Id sits where k h = r.
    let expect = [[1, 0, 0, 1], [0, 1, 1, 0]];
    for (r, row) in expect.iter().enumerate() {
        for (col, &v) in row.iter().enumerate() {
            let got = mu.block(r, col);
            assert_eq!(got, vec![q().int(v)], "block ({r}, {col})");
        }
    }
}

#[test]
fn monad_matches_adjunction_for_all_fixtures() {
    for act in actions(q()) {
        assert!(act.validate().passed(), "{}", act.name());
        let m = equivariant_monad(&act).unwrap();
        let (_, adj) = induce_adjunction(&act, vec![]).unwrap();
        let from_adj = monad_from_adjunction(&adj).unwrap();
        assert!(m.same_data(&from_adj), "{}", act.name());
    }
}

#[test]
fn s3_multiplication_uses_the_correct_product_order() {
    let act = Arc::new(fixtures::s3_permutation_action(q()));
    let grp = act.group();
    let m = equivariant_monad(&act).unwrap();
    let mu = m.mult().component(0);
    let n = grp.order();
    for h in 0..n {
        for k in 0..n {
            let r = grp.mul(k, h);
            let wrong = grp.mul(h, k);
            assert!(!mu.block(r, h * n + k).is_empty());
            if wrong != r {
                assert!(mu.block(wrong, h * n + k).iter().all(|s| s.is_zero()));
            }
        }
    }
    assert!(m.validate_all().passed());
}

#[test]
fn trivial_group_gives_identity_monad() {
    let act = fixtures::trivial_action(FiniteGroup::trivial(), fixtures::c2(q()));
    let m = equivariant_monad(&act).unwrap();
    for x in 0..2 {
        assert!(m.unit().component(x).is_identity());
        assert!(m.mult().component(x).is_identity());
    }
}

#[test]
fn dictionary_roundtrip_and_hom_dimensions() {
    let act = z2_on_c1(q());
    let monad = Arc::new(equivariant_monad(&act).unwrap());
    let triv = fixtures::character(&act, "triv", 0, &[1, 1]);
    let sign = fixtures::character(&act, "sign", 0, &[1, -1]);
    let free = act.free_object(0).unwrap();
    let objs = [triv, sign, free];
    for z in &objs {
        let m = to_module(&act, &monad, z).unwrap();
        assert!(validate_module(&m).passed(), "{}", z.name());
        let back = to_equivariant(&act, &m).unwrap();
        assert!(back.same_data(z));
    }
    let sign_mod = to_module(&act, &monad, &objs[1]).unwrap();
    assert_eq!(sign_mod.action().block(0, 1), vec![q().int(-1)]);
    for a in &objs {
        for b in &objs {
            let eq = eq_hom_basis(&act, a, b).dim();
            let md = module_hom_basis(&to_module(&act, &monad, a).unwrap(), &to_module(&act, &monad, b).unwrap())
                .unwrap()
                .dim();
            assert_eq!(eq, md, "{} → {}", a.name(), b.name());
        }
    }
}

#[test]
fn dictionary_rejects_singular_module_data() {
    let act = z2_on_c1(q());
    let monad = Arc::new(equivariant_monad(&act).unwrap());
    let x = Obj::base(act.base(), 0);
    let mx = monad.apply_obj(&x).unwrap();
    let lam = Mor::from_ambient(&mx, &x, &[q().one(), q().zero()]).unwrap();
    let m = separable::eilenberg_moore::MModule::new("singular", &monad, x, lam).unwrap();
    assert!(matches!(to_equivariant(&act, &m), Err(Error::NonInvertibleComponent(_))));
}

#[test]
fn comparison_agrees_with_dictionary() {
    for act in actions(q()) {
        let samples = if act.base().num_objects() == 1 && act.phi(1).is_identity() {
            character_objects(&act, 0).unwrap_or_default()
        } else {
            vec![]
        };
        let (cat, adj) = induce_adjunction(&act, samples).unwrap();
        let monad = Arc::new(monad_from_adjunction(&adj).unwrap());
        let cmp = Comparison::with_monad(&adj, &monad, vec![]).unwrap();
        for (j, z) in cat.objects().iter().enumerate() {
            let k = cmp.apply_obj(&Obj::base(cat.pres(), j)).unwrap();
            let d = to_module(&act, &monad, z).unwrap();
            assert!(k.same_data(&d), "{} in {}", z.name(), act.name());
        }
    }
}

#[test]
fn maschke_section_over_q() {
    let act = z2_on_c1(q());
    let sign = fixtures::character(&act, "sign", 0, &[1, -1]);
    let (cat, adj) = induce_adjunction(&act, vec![sign]).unwrap();
    let xi = xi_forgetful(&cat, &adj, 1).unwrap();
    let lifted = cat.sub().lift(&xi).unwrap();
    let half = q().frac(1, 2).unwrap();
    assert_eq!(lifted.block(0, 0), vec![half.clone()]);
    assert_eq!(lifted.block(1, 0), vec![-half]);
    for act in actions(q()) {
        let (cat, adj) = induce_adjunction(&act, vec![]).unwrap();
        let xi = xi_nat(&cat, &adj).unwrap();
        let w = transfer_witness(Transfer::FromXi { adjunction: &adj, xi: &xi }).unwrap();
        assert!(w.verify().passed());
        let sigma = sigma_from_xi(&adj, &xi).unwrap();
        assert!(sigma.verify().passed());
    }
}

#[test]
fn maschke_fails_when_characteristic_divides_order() {
    let f2 = Field::prime(2).unwrap();
    let act = z2_on_c1(f2);
    let (cat, adj) = induce_adjunction(&act, vec![]).unwrap();
    assert!(matches!(xi_forgetful(&cat, &adj, 0), Err(Error::NotInvertible { n: 2, characteristic: 2 })));
    let m = equivariant_monad(&act).unwrap();
    assert!(!monad_separability_solve(&m).unwrap().is_separable());
    let f3 = Field::prime(3).unwrap();
    let m3 = equivariant_monad(&z2_on_c1(f3)).unwrap();
    assert!(monad_separability_solve(&m3).unwrap().is_separable());
}

#[test]
fn trivial_group_section_is_identity() {
    let act = Arc::new(fixtures::trivial_action(FiniteGroup::trivial(), fixtures::c1(q())));
    let (cat, adj) = induce_adjunction(&act, vec![]).unwrap();
    let xi = xi_forgetful(&cat, &adj, 0).unwrap();
    assert!(cat.sub().lift(&xi).unwrap().is_identity());
}

#[test]
fn rational_characters_of_z3() {
    let act = Arc::new(fixtures::trivial_action(FiniteGroup::cyclic(3), fixtures::c1(q())));
    let chars = character_objects(&act, 0).unwrap();
    assert_eq!(chars.iter().map(|z| z.carrier().len()).collect::<Vec<_>>(), vec![1, 2]);
    for z in &chars {
        assert!(z.validate(&act).passed());
        assert_eq!(eq_hom_basis(&act, z, z).dim(), z.carrier().len());
    }
    assert_eq!(eq_hom_basis(&act, &chars[0], &chars[1]).dim(), 0);
}

#[test]
fn swap_action_induces_block_swap() {
    let act = Arc::new(fixtures::swap_action(q()));
    let fx = act.free_object(0).unwrap();
    assert_eq!(fx.carrier().summands(), &[0, 1]);
    let g = fx.alpha(1);
    assert!(g.block(0, 0).iter().all(|s| s.is_zero()));
    assert_eq!(g.block(0, 1), vec![q().one()]);
    assert_eq!(g.block(1, 0), vec![q().one()]);
    assert!(fx.validate(&act).passed());
}

#[test]
fn adjunction_bijection_constraint_matches_block_relation() {
    let act = Arc::new(fixtures::sign_action_c2(q()));
    let (cat, _) = induce_adjunction(&act, vec![]).unwrap();
    let grp = act.group();
    let n = grp.order();
    for x in 0..2 {
        for y in 0..2 {
            let space = cat.sub().space(x, y);
            let fy = cat.object(y);
            for theta in space.basis() {
                for g in 0..n {
                    for h in 0..n {
                        let th = theta.component(&Obj::base(act.base(), act.perm(h, x)), fy.carrier(), 0, h).unwrap();
                        let lhs = act.act_mor(g, &th).unwrap();
                        let gh = grp.mul(g, h);
                        let th_gh = theta.component(&Obj::base(act.base(), act.perm(gh, x)), fy.carrier(), 0, gh).unwrap();
                        let rhs = fy.alpha(g).compose(&th_gh).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}
