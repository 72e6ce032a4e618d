use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use separable::complexes::*;
use separable::eilenberg_moore::MModule;
use separable::equivariant::{equivariant_monad, to_module, FiniteGroup, StrictAction};
use separable::exactlin::Field;
use separable::fixtures;
use separable::lincat::Obj;
use separable::monadic::{monad_separability_solve, Monad};
use separable::Error;

fn setup(field: Field) -> (Arc<StrictAction>, Arc<Monad>) {
    let act = Arc::new(fixtures::trivial_action(FiniteGroup::cyclic(2), fixtures::c1(field)));
    let monad = Arc::new(equivariant_monad(&act).unwrap());
    (act, monad)
}

fn characters(act: &StrictAction, monad: &Arc<Monad>) -> (MModule, MModule) {
    let triv = to_module(act, monad, &fixtures::character(act, "triv", 0, &[1, 1])).unwrap();
    let sign = to_module(act, monad, &fixtures::character(act, "sign", 0, &[1, -1])).unwrap();
    (triv, sign)
}

#[test]
fn stalk_module_dimensions() {
    let (act, monad) = setup(Field::Rationals);
    let (triv, sign) = characters(&act, &monad);
    let a = ModuleComplex::stalk("triv[0]", &triv, 0);
    let b = ModuleComplex::stalk("sign[0]", &sign, 0);
    let rep = derived_comparison_check(&monad, &[a, b]).unwrap();
    assert!(rep.passed(), "{}", rep.report);
    let find = |f: &str, t: &str| rep.pairs.iter().find(|p| p.from == f && p.to == t).unwrap().clone();
    assert_eq!((find("triv[0]", "sign[0]").d1, find("triv[0]", "sign[0]").d2), (0, 0));
    assert_eq!((find("triv[0]", "triv[0]").d1, find("triv[0]", "triv[0]").d2), (1, 1));
    assert!(rep.retracts.iter().all(|r| r.verified));
}

#[test]
fn random_pairs_agree() {
    let (act, monad) = setup(Field::Rationals);
    let (triv, sign) = characters(&act, &monad);
    let free = MModule::free(&monad, &Obj::base(act.base(), 0)).unwrap();
    let pool = [triv, sign, free];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let samples: Vec<ModuleComplex> = (0..3)
        .map(|i| random_module_complex(&mut rng, &format!("r{i}"), &pool, 0, 3).unwrap())
        .collect();
    let rep = derived_comparison_check(&monad, &samples).unwrap();
    assert!(rep.passed(), "{}", rep.report);
    assert_eq!(rep.pairs.len(), 9);
}

#[test]
fn trivial_group_matches_plain_homotopy() {
    let act = Arc::new(fixtures::trivial_action(FiniteGroup::trivial(), fixtures::c2(Field::Rationals)));
    let monad = Arc::new(equivariant_monad(&act).unwrap());
    let mods: Vec<MModule> = (0..2).map(|x| MModule::free(&monad, &Obj::base(act.base(), x)).unwrap()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let samples: Vec<ModuleComplex> =
        (0..3).map(|i| random_module_complex(&mut rng, &format!("t{i}"), &mods, -1, 3).unwrap()).collect();
    let rep = derived_comparison_check(&monad, &samples).unwrap();
    assert!(rep.passed(), "{}", rep.report);
    for (p, (a, b)) in rep.pairs.iter().zip(samples.iter().flat_map(|a| samples.iter().map(move |b| (a, b)))) {
        assert_eq!(p.d1, kb_hom_basis(a.complex(), b.complex()).unwrap().dim);
    }
}

#[test]
fn contractible_summand_does_not_change_dimension() {
    let c2 = Arc::new(fixtures::c2(Field::Rationals));
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let objs = |v: &[usize]| v.iter().map(|&x| Obj::base(&c2, x)).collect::<Vec<_>>();
    let x = random_complex(&mut rng, "x", &c2, 0, objs(&[0, 1, 1])).unwrap();
    let y = random_complex(&mut rng, "y", &c2, 0, objs(&[0, 0, 1])).unwrap();
    let base = kb_hom_basis(&x, &y).unwrap().dim;
    let cone = BoundedComplex::contractible(&Obj::base(&c2, 1), 1);
    let x2 = x.direct_sum(&cone).unwrap();
    let y2 = y.direct_sum(&cone).unwrap();
    assert_eq!(kb_hom_basis(&x2, &y).unwrap().dim, base);
    assert_eq!(kb_hom_basis(&x, &y2).unwrap().dim, base);
    assert_eq!(kb_hom_basis(&x2, &y2).unwrap().dim, base);
}

#[test]
fn null_homotopic_condition_is_stable() {
    let (act, monad) = setup(Field::Rationals);
    let (triv, sign) = characters(&act, &monad);
    let free = MModule::free(&monad, &Obj::base(act.base(), 0)).unwrap();
    let pool = [triv, sign, free];
    let lifted = LiftedMonad::new(&monad);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..4 {
        let a = random_module_complex(&mut rng, &format!("a{i}"), &pool, 0, 3).unwrap();
        let b = random_module_complex(&mut rng, &format!("b{i}"), &pool, 0, 3).unwrap();
        let lo = a.complex().lo().max(b.complex().lo() + 1);
        let hi = a.complex().hi().min(b.complex().hi() + 1);
        let h: Vec<_> = (lo..=hi)
            .map(|n| {
                let s = separable::eilenberg_moore::module_hom_basis(a.module(n).unwrap(), b.module(n - 1).unwrap()).unwrap();
                let coeffs: Vec<_> = (0..s.dim()).map(|k| Field::Rationals.int(k as i64 + 1)).collect();
                s.combine(&coeffs)
            })
            .collect();
        assert!(transported_homotopy(&lifted, &a, &b, &h, lo).unwrap());
    }
}

#[test]
fn lifted_monad_and_sigma_laws() {
    let (act, monad) = setup(Field::Rationals);
    let lifted = LiftedMonad::new(&monad);
    let sigma = monad_separability_solve(&monad).unwrap().witness().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let x = random_complex(&mut rng, "x", act.base(), 0, vec![Obj::base(act.base(), 0); 2]).unwrap();
    let mx = lifted.apply(&x).unwrap();
    assert_eq!(mx.terms()[0].len(), 2);
    assert!(lifted.validate_on(&x).passed());
    assert!(lifted.validate_sigma_on(&sigma, &x).passed());
    let id = Arc::new(Monad::identity(act.base()));
    let l = LiftedMonad::new(&id);
    assert!(l.unit(&x).unwrap().is_identity());
}

#[test]
fn characteristic_two_is_rejected() {
    let (act, monad) = setup(Field::prime(2).unwrap());
    let triv = MModule::free(&monad, &Obj::base(act.base(), 0)).unwrap();
    let a = ModuleComplex::stalk("free[0]", &triv, 0);
    assert!(matches!(derived_comparison_check(&monad, &[a]), Err(Error::MonadNotSeparable)));
}
