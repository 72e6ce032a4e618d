//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line
//! with its wall time and limit; the test fails if any criterion fails or
//! overruns.

use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use separable::cli::{execute, parse_workspace, run_command, Command, Options, Status, Target};
use separable::complexes::{derived_comparison_check, random_module_complex, ModuleComplex};
use separable::eilenberg_moore::{check_equiv_up_to_retracts, essential_preimage, module_hom_basis, Comparison, MModule};
use separable::equivariant::*;
use separable::exactlin::Field;
use separable::fixtures;
use separable::functorial::{extract_section, separability_solve, transfer_witness, xi_solve, Functor, SepOutcome, Transfer};
use separable::lincat::{Category, Mor, Obj};
use separable::monadic::{monad_from_adjunction, monad_separability_solve, sigma_from_xi, MonadSepOutcome};
use separable::Error;

type Outcome = std::result::Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q() -> Field {
    Field::Rationals
}

fn fp(p: u32) -> Field {
    Field::prime(p).unwrap()
}

fn workspace() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/workspace.json")
}

fn trivial(group: FiniteGroup, field: Field) -> Arc<StrictAction> {
    Arc::new(fixtures::trivial_action(group, fixtures::c1(field)))
}

/// The fixture matrix over a field: trivial Z/2, Z/3, S3 on C1, the swap of
/// Z/2 on C3 and the rotation of Z/3 on C3rot.
fn fixture_actions(field: Field) -> Vec<Arc<StrictAction>> {
    vec![
        trivial(FiniteGroup::cyclic(2), field),
        trivial(FiniteGroup::cyclic(3), field),
        Arc::new(fixtures::swap_action(field)),
        Arc::new(fixtures::rotation_action(field)),
        trivial(FiniteGroup::symmetric3(), field),
    ]
}

/// Character objects (when the group is cyclic and acts trivially) together
/// with the sign character of S3.
fn fixture_samples(act: &StrictAction) -> Vec<EquivObject> {
    let mut out = character_objects(act, 0).unwrap_or_default();
    if act.group().order() == 6 {
        out.push(fixtures::character(act, "sign", 0, &[1, -1, -1, -1, 1, 1]));
    }
    out
}

// Independent oracle for criterion 1: a separability idempotent of kG is
// `e = Σ e_{a,b} a⊗b` with `Σ e_{a,b} ab = 1` and `g·e = e·g` for every g.
// Coefficients are indexed by `a * n + b`.

fn oracle_equations(grp: &FiniteGroup) -> (Vec<Vec<i64>>, Vec<i64>) {
    let n = grp.order();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for c in 0..n {
        let mut row = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                if grp.mul(a, b) == c {
                    row[a * n + b] += 1;
                }
            }
        }
        rows.push(row);
        rhs.push(if c == grp.unit() { 1 } else { 0 });
    }
    for g in 0..n {
        for a2 in 0..n {
            for b2 in 0..n {
                let mut row = vec![0; n * n];
                for a in 0..n {
                    for b in 0..n {
                        if grp.mul(g, a) == a2 && b == b2 {
                            row[a * n + b] += 1;
                        }
                        if a == a2 && grp.mul(b, g) == b2 {
                            row[a * n + b] -= 1;
                        }
                    }
                }
                rows.push(row);
                rhs.push(0);
            }
        }
    }
    (rows, rhs)
}

/// Enumerates every coefficient vector over F_p.
fn oracle_feasible_mod_p(grp: &FiniteGroup, p: i64) -> bool {
    let (rows, rhs) = oracle_equations(grp);
    let k = grp.order() * grp.order();
    let total = (p as u64).pow(k as u32);
    let mut x = vec![0i64; k];
    for code in 0..total {
        let mut c = code;
        for v in x.iter_mut() {
            *v = (c % p as u64) as i64;
            c /= p as u64;
        }
        let ok = rows.iter().zip(&rhs).all(|(row, r)| {
            let s: i64 = row.iter().zip(&x).map(|(a, b)| a * b).sum();
            (s - r).rem_euclid(p) == 0
        });
        if ok {
            return true;
        }
    }
    false
}

/// Checks `(1/|G|) Σ g ⊗ g⁻¹` against the oracle equations over Q.
fn oracle_feasible_over_q(grp: &FiniteGroup) -> bool {
    let n = grp.order();
    let (rows, rhs) = oracle_equations(grp);
    let mut x = vec![Rational64::from_integer(0); n * n];
    for g in 0..n {
        x[g * n + grp.inv(g)] = Rational64::new(1, n as i64);
    }
    rows.iter().zip(&rhs).all(|(row, r)| {
        let s: Rational64 = row.iter().zip(&x).map(|(a, b)| b * *a).sum();
        s == Rational64::from_integer(*r)
    })
}

fn criterion_1() -> Outcome {
    let ws = parse_workspace(&workspace()).map_err(|e| e.to_string())?;
    let opts = Options::default();
    let cases = [
        ("grpmonad_z2_q", FiniteGroup::cyclic(2), None, true),
        ("grpmonad_z3_q", FiniteGroup::cyclic(3), None, true),
        ("grpmonad_s3_q", FiniteGroup::symmetric3(), None, true),
        ("grpmonad_z2_f2", FiniteGroup::cyclic(2), Some(2), false),
        ("grpmonad_z3_f3", FiniteGroup::cyclic(3), Some(3), false),
    ];
    for (name, grp, p, expect) in cases {
        let oracle = match p {
            Some(p) => oracle_feasible_mod_p(&grp, p),
            None => oracle_feasible_over_q(&grp),
        };
        ensure(oracle == expect, || format!("{name}: oracle says {oracle}"))?;
        let cmd = Command::Separability { name: name.into(), target: Target::Monad };
        let out = run_command(&ws, &cmd, &opts).map_err(|e| e.to_string())?;
        let rec = &out.checks[0];
        let want = if expect { Status::Pass } else { Status::Infeasible };
        ensure(rec.status == want, || format!("{name}: status {:?}", rec.status))?;
        ensure(expect == !out.witnesses.is_empty(), || format!("{name}: witness file presence"))?;
        let field = p.map_or(q(), |p| fp(p as u32));
        let monad = equivariant_monad(&trivial(grp, field)).map_err(|e| e.to_string())?;
        match monad_separability_solve(&monad).map_err(|e| e.to_string())? {
            MonadSepOutcome::Separable { witness, .. } => {
                ensure(expect && witness.verify().passed(), || format!("{name}: library witness"))?
            }
            MonadSepOutcome::Infeasible(_) => ensure(!expect, || format!("{name}: library says infeasible"))?,
        }
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    for act in fixture_actions(q()) {
        let (_, adj) = induce_adjunction(&act, fixture_samples(&act)).map_err(|e| e.to_string())?;
        let r = adj.validate();
        ensure(r.passed() && r.checked > 0, || format!("{}: {r}", act.name()))?;
        ensure(adj.validate_all().passed(), || format!("{}: functor or naturality laws", act.name()))?;
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    let mut roundtrips = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for act in fixture_actions(q()) {
        let (cat, _) = induce_adjunction(&act, fixture_samples(&act)).map_err(|e| e.to_string())?;
        let monad = Arc::new(equivariant_monad(&act).map_err(|e| e.to_string())?);
        let mut modules = Vec::new();
        for z in cat.objects() {
            let m = to_module(&act, &monad, z).map_err(|e| e.to_string())?;
            let back = to_equivariant(&act, &m).map_err(|e| e.to_string())?;
            ensure(back.same_data(z), || format!("{}: roundtrip of {}", act.name(), z.name()))?;
            roundtrips += 1;
            modules.push(m);
        }
        let n = cat.objects().len();
        for _ in 0..5 {
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let eq = eq_hom_basis(&act, cat.object(i), cat.object(j)).dim();
            let md = module_hom_basis(&modules[i], &modules[j]).map_err(|e| e.to_string())?.dim();
            ensure(eq == md, || format!("{}: dims {eq} vs {md} at ({i}, {j})", act.name()))?;
        }
    }
    ensure(roundtrips >= 10, || format!("only {roundtrips} objects"))
}

fn criterion_4() -> Outcome {
    let fields = [q(), fp(2), fp(3)];
    for field in fields {
        for act in fixture_actions(field) {
            let samples = fixture_samples(&act);
            let (cat, adj) = induce_adjunction(&act, samples).map_err(|e| e.to_string())?;
            let invertible = field.int_invertible(act.group().order() as u64);
            let monad = monad_from_adjunction(&adj).map_err(|e| e.to_string())?;
            let solved = monad_separability_solve(&monad).map_err(|e| e.to_string())?.is_separable();
            let label = format!("{} over {field}", act.name());
            if invertible {
                for j in 0..cat.objects().len() {
                    let xi = xi_forgetful(&cat, &adj, j).map_err(|e| format!("{label}: {e}"))?;
                    let back = adj.counit().component(j).compose(&xi).map_err(|e| e.to_string())?;
                    ensure(back.is_identity(), || format!("{label}: ε∘ξ at {j}"))?;
                }
                let xi = xi_nat(&cat, &adj).map_err(|e| e.to_string())?;
                let w = sigma_from_xi(&adj, &xi).map_err(|e| e.to_string())?;
                ensure(w.verify().passed(), || format!("{label}: σ from the averaged ξ"))?;
            }
            // Free actions admit ξ in every characteristic, so the verdict is
            // compared against the general ξ solver rather than |G|.
            let xi = xi_solve(&adj).map_err(|e| e.to_string())?;
            if let Some(xi) = &xi {
                let w = sigma_from_xi(&adj, xi).map_err(|e| e.to_string())?;
                ensure(w.verify().passed(), || format!("{label}: σ from solved ξ"))?;
            }
            ensure(xi.is_some() == solved, || format!("{label}: ξ feasible {} but σ feasible {solved}", xi.is_some()))?;
            if act.name().contains("trivial") {
                ensure(solved == invertible, || format!("{label}: trivial action verdict"))?;
            }
        }
    }
    Ok(())
}

fn em_setup(n: usize) -> std::result::Result<(Comparison, separable::monadic::MonadSepWitness, Vec<MModule>, Vec<Obj>), String> {
    let act = trivial(FiniteGroup::cyclic(n), q());
    let chars = character_objects(&act, 0).map_err(|e| e.to_string())?;
    let (ecat, adj) = induce_adjunction(&act, chars.clone()).map_err(|e| e.to_string())?;
    let monad = Arc::new(monad_from_adjunction(&adj).map_err(|e| e.to_string())?);
    let sigma = monad_separability_solve(&monad).map_err(|e| e.to_string())?.witness().ok_or("no σ")?;
    let modules = chars.iter().map(|z| to_module(&act, &monad, z)).collect::<separable::Result<Vec<_>>>().map_err(|e| e.to_string())?;
    let cmp = Comparison::with_monad(&adj, &monad, modules.clone()).map_err(|e| e.to_string())?;
    let d_samples = (0..ecat.objects().len()).map(|j| Obj::base(ecat.pres(), j)).collect();
    Ok((cmp, sigma, modules, d_samples))
}

fn criterion_5() -> Outcome {
    for n in [2, 3] {
        let (cmp, sigma, modules, d_samples) = em_setup(n)?;
        ensure(cmp.check_factorization().passed(), || format!("Z/{n}: KF = F_M, G_M K = G"))?;
        let rep = check_equiv_up_to_retracts(&cmp, &sigma, &d_samples).map_err(|e| e.to_string())?;
        ensure(rep.fully_faithful.len() == d_samples.len().pow(2), || "not every pair sampled".into())?;
        ensure(rep.fully_faithful.iter().all(|h| h.bijective), || format!("Z/{n}: K not fully faithful"))?;
        ensure(rep.fully_faithful.iter().any(|h| h.from == "F(•)" && h.to == "F(•)"), || "free pair missing".into())?;
        for m in &modules {
            let r = rep.retracts.iter().find(|r| r.module == m.name()).ok_or_else(|| format!("no retract for {}", m.name()))?;
            let w = r.witness.as_ref().ok_or_else(|| format!("{}: {:?}", m.name(), r.error))?;
            let vu = w.v.compose(&w.u).map_err(|e| e.to_string())?;
            ensure(vu.is_identity(), || format!("Z/{n}: v∘u ≠ Id for {}", m.name()))?;
        }
        ensure(rep.passed(), || format!("Z/{n}: {}", rep.report))?;
    }
    let ws = parse_workspace(&workspace()).map_err(|e| e.to_string())?;
    for adj in ["ind_z2_q", "ind_z3_q"] {
        let out = run_command(&ws, &Command::EmReport(adj.into()), &Options::default()).map_err(|e| e.to_string())?;
        let bad: Vec<_> = out.checks.iter().filter(|c| c.status != Status::Pass).map(|c| c.id.clone()).collect();
        ensure(bad.is_empty(), || format!("em-report {adj}: {bad:?}"))?;
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    for n in [2, 3] {
        let (cmp, sigma, modules, _) = em_setup(n)?;
        ensure(modules.len() >= 2, || format!("Z/{n}: {} character modules", modules.len()))?;
        for m in &modules {
            let p = essential_preimage(&cmp, &sigma, m).map_err(|e| format!("{}: {e}", m.name()))?;
            let a = p.to_module.compose(&p.from_module).map_err(|e| e.to_string())?;
            let b = p.from_module.compose(&p.to_module).map_err(|e| e.to_string())?;
            ensure(a.is_identity() && b.is_identity(), || format!("Z/{n}: composites for {}", m.name()))?;
            ensure(p.verify(m).passed(), || format!("Z/{n}: preimage of {}", m.name()))?;
        }
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    let act = trivial(FiniteGroup::cyclic(2), q());
    let monad = Arc::new(equivariant_monad(&act).map_err(|e| e.to_string())?);
    let triv = to_module(&act, &monad, &fixtures::character(&act, "triv", 0, &[1, 1])).map_err(|e| e.to_string())?;
    let sign = to_module(&act, &monad, &fixtures::character(&act, "sign", 0, &[1, -1])).map_err(|e| e.to_string())?;
    let free = MModule::free(&monad, &Obj::base(act.base(), 0)).map_err(|e| e.to_string())?;
    let mut samples = vec![ModuleComplex::stalk("triv", &triv, 0), ModuleComplex::stalk("sign", &sign, 0)];
    let pool = [triv, sign, free];
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut nonzero = 0;
    while samples.len() < 5 {
        let len = rng.gen_range(2..=4);
        let c = random_module_complex(&mut rng, &format!("r{}", samples.len()), &pool, 0, len).map_err(|e| e.to_string())?;
        if c.complex().diffs().iter().any(|d| !d.is_zero()) {
            nonzero += 1;
            samples.push(c);
        }
    }
    ensure(nonzero >= 3, || "random samples have zero differentials".into())?;
    let rep = derived_comparison_check(&monad, &samples).map_err(|e| e.to_string())?;
    ensure(rep.pairs.len() >= 5, || "too few pairs".into())?;
    ensure(rep.pairs.iter().all(|p| p.agree), || "d₁ ≠ d₂ on some pair".into())?;
    let dim = |a: &str, b: &str| rep.pairs.iter().find(|p| p.from == a && p.to == b).map(|p| (p.d1, p.d2));
    ensure(dim("triv", "sign") == Some((0, 0)), || format!("d(triv, sign) = {:?}", dim("triv", "sign")))?;
    ensure(dim("triv", "triv") == Some((1, 1)), || format!("d(triv, triv) = {:?}", dim("triv", "triv")))?;
    ensure(rep.retracts.len() == samples.len() && rep.retracts.iter().all(|r| r.verified), || "retract witnesses".into())?;
    ensure(rep.passed(), || rep.report.to_string())
}

fn criterion_8() -> Outcome {
    let act = trivial(FiniteGroup::cyclic(2), fp(2));
    let (cat, adj) = induce_adjunction(&act, vec![]).map_err(|e| e.to_string())?;
    match xi_forgetful(&cat, &adj, 0) {
        Err(Error::NotInvertible { n: 2, characteristic: 2 }) => {}
        other => return Err(format!("xi_forgetful over F2 gave {other:?}")),
    }
    let opts = Options::default();
    let (report, _) = execute(&workspace(), &Command::ComplexReport("z2_triv_f2".into()), &opts).map_err(|e| e.to_string())?;
    ensure(report.exit_code() == 1, || "complex-report should exit 1".into())?;
    let hit = report.checks.iter().any(|c| c.details.get("error").and_then(|v| v.as_str()) == Some("MonadNotSeparable"));
    ensure(hit, || "no MonadNotSeparable record".into())
}

/// `X ↦ X ⊕ X` with `f ↦ diag(f, f)`.
fn double(c: &Arc<Category>) -> separable::Result<Functor> {
    let objects = (0..c.num_objects()).map(|x| Obj::plain(c, vec![x, x])).collect();
    Functor::new("double", c, c, objects, |x, y, a| {
        let b = Mor::basis(c, x, y, a);
        Mor::direct_sum(&[b.clone(), b])
    })
}

fn criterion_9() -> Outcome {
    let mut feasible = 0;
    for field in [q(), fp(2), fp(3)] {
        for act in fixture_actions(field) {
            let (_, adj) = induce_adjunction(&act, fixture_samples(&act)).map_err(|e| e.to_string())?;
            let label = format!("{} over {field}", act.name());
            let SepOutcome::Separable(h) = separability_solve(adj.right()).map_err(|e| e.to_string())? else { continue };
            feasible += 1;
            let xi = extract_section(&adj, &h).map_err(|e| format!("{label}: {e}"))?;
            let w = transfer_witness(Transfer::FromXi { adjunction: &adj, xi: &xi }).map_err(|e| format!("{label}: {e}"))?;
            ensure(w.verify().passed(), || format!("{label}: from-xi"))?;

            let dbl = Arc::new(double(act.base()).map_err(|e| e.to_string())?);
            let outer = separability_solve(&dbl).map_err(|e| e.to_string())?.witness().ok_or("double not separable")?;
            let composed = transfer_witness(Transfer::Compose { inner: &h, outer: &outer }).map_err(|e| format!("{label}: {e}"))?;
            ensure(composed.verify().passed(), || format!("{label}: compose"))?;
            let back = transfer_witness(Transfer::LeftFactor { composite: &composed, inner: adj.right(), outer: &dbl })
                .map_err(|e| format!("{label}: {e}"))?;
            ensure(back.verify().passed(), || format!("{label}: left-factor"))?;
        }
    }
    ensure(feasible >= 5, || format!("only {feasible} feasible fixtures"))
}

fn criterion_10() -> Outcome {
    let opts = Options { seed: 42, samples: 5, complete_target: true };
    for cmd in [Command::Suite("smoke".into()), Command::EquivariantReport("z3_triv_q".into())] {
        let (a, wa) = execute(&workspace(), &cmd, &opts).map_err(|e| e.to_string())?;
        let (b, wb) = execute(&workspace(), &cmd, &opts).map_err(|e| e.to_string())?;
        ensure(a.to_json() == b.to_json() && wa == wb, || format!("{}: reports differ", cmd.label()))?;
    }
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    let mut bytes = Vec::new();
    for d in &dirs {
        let status = std::process::Command::new(env!("CARGO_BIN_EXE_separable"))
            .args(["--quiet", "--seed", "42", "--workspace"])
            .arg(workspace())
            .arg("--out")
            .arg(d.path())
            .args(["complex-report", "z2_triv_q"])
            .status()
            .map_err(|e| e.to_string())?;
        ensure(status.success(), || "binary run failed".into())?;
        bytes.push(std::fs::read(d.path().join("report.json")).map_err(|e| e.to_string())?);
    }
    ensure(bytes[0] == bytes[1], || "report.json differs between runs".into())
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Outcome, u64); 10] = [
        ("1 Maschke dichotomy", criterion_1, 5),
        ("2 triangle identities", criterion_2, 2),
        ("3 strict monadicity", criterion_3, 2),
        ("4 ξ and σ = GξF", criterion_4, 2),
        ("5 comparison up to retracts", criterion_5, 5),
        ("6 essential preimages", criterion_6, 2),
        ("7 complexes d₁ = d₂", criterion_7, 10),
        ("8 negative control", criterion_8, 1),
        ("9 witness calculus", criterion_9, 3),
        ("10 determinism", criterion_10, 1),
    ];
    let mut failures = Vec::new();
    for (name, f, limit) in criteria {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let over = took > Duration::from_secs(limit);
        let verdict = match (&outcome, over) {
            (Ok(()), false) => "PASS".to_string(),
            (Ok(()), true) => "FAIL (time limit)".to_string(),
            (Err(e), _) => format!("FAIL: {e}"),
        };
        println!("criterion {name}: {verdict} [{:.3}s, limit {limit}s]", took.as_secs_f64());
        if !verdict.starts_with("PASS") {
            failures.push(name);
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
