//! The command surface: each command turns a workspace into check records
//! and witness files.

use std::path::PathBuf;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::literal::{emit_mor, parse_mor};
use super::output::*;
use super::schema::SCHEMA_VERSION;
use super::workspace::{AdjKind, Workspace};
use crate::complexes::{derived_comparison_check, random_module_complex, ModuleComplex};
use crate::eilenberg_moore::{check_equiv_up_to_retracts, essential_preimage, module_hom_basis, validate_module, Comparison, MModule};
use crate::equivariant::{
    character_objects, eq_hom_basis, equivariant_monad, induce_adjunction, to_equivariant, to_module, xi_forgetful, xi_nat,
    EquivObject, StrictAction,
};
use crate::error::{Error, Result};
use crate::functorial::{separability_solve, Functor, SepOutcome, WitnessFile};
use crate::lincat::Obj;
use crate::monadic::{monad_from_adjunction, monad_separability_solve, sigma_from_xi, Monad, MonadSepOutcome, MonadSepWitness};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Functor,
    Monad,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    AdjunctionCheck(String),
    Separability { name: String, target: Target },
    EmReport(String),
    EquivariantReport(String),
    ComplexReport(String),
    VerifyWitness(PathBuf),
    Suite(String),
}

impl Command {
    pub fn label(&self) -> String {
        match self {
            Command::Validate => "validate".into(),
            Command::AdjunctionCheck(n) => format!("adjunction-check {n}"),
            Command::Separability { name, target } => {
                let t = if *target == Target::Functor { "functor" } else { "monad" };
                format!("separability {name} --target {t}")
            }
            Command::EmReport(n) => format!("em-report {n}"),
            Command::EquivariantReport(n) => format!("equivariant-report {n}"),
            Command::ComplexReport(n) => format!("complex-report {n}"),
            Command::VerifyWitness(p) => {
                format!("verify-witness {}", p.file_name().map_or_else(|| p.display().to_string(), |f| f.to_string_lossy().into()))
            }
            Command::Suite(n) => format!("suite {n}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub seed: u64,
    pub samples: usize,
    pub complete_target: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { seed: 0, samples: 5, complete_target: false }
    }
}

/// Check records plus the witness files to write, as `(file name, contents)`.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub checks: Vec<CheckRecord>,
    pub witnesses: Vec<(String, String)>,
}

impl Outcome {
    fn push(&mut self, c: CheckRecord) {
        self.checks.push(c);
    }

    fn extend(&mut self, other: Outcome) {
        self.checks.extend(other.checks);
        self.witnesses.extend(other.witnesses);
    }
}

/// Runs one command. Errors are input errors (unknown names, unreadable
/// witness files); failures of the mathematics become check records.
pub fn run_command(ws: &Workspace, cmd: &Command, opts: &Options) -> Result<Outcome> {
    match cmd {
        Command::Validate => Ok(validate(ws)),
        Command::AdjunctionCheck(n) => adjunction_check(ws, n),
        Command::Separability { name, target: Target::Functor } => functor_separability(ws, name),
        Command::Separability { name, target: Target::Monad } => monad_separability(ws, name),
        Command::EmReport(n) => em_report(ws, n, opts),
        Command::EquivariantReport(n) => equivariant_report(ws, n, opts),
        Command::ComplexReport(n) => complex_report(ws, n, opts),
        Command::VerifyWitness(p) => verify_witness(ws, p),
        Command::Suite(n) => {
            let mut out = Outcome::default();
            for check in ws.suites.get(n)? {
                let cmd = suite_command(check)?;
                if matches!(cmd, Command::Suite(_)) {
                    return Err(Error::Invalid(format!("suite {n} nests another suite")));
                }
                out.extend(run_command(ws, &cmd, opts)?);
            }
            Ok(out)
        }
    }
}

fn suite_command(c: &super::schema::RawCheck) -> Result<Command> {
    let name = || c.name.clone().ok_or_else(|| Error::Invalid(format!("suite check {} needs a name", c.command)));
    Ok(match c.command.as_str() {
        "validate" => Command::Validate,
        "adjunction-check" => Command::AdjunctionCheck(name()?),
        "separability" => {
            let target = match c.target.as_deref() {
                Some("functor") => Target::Functor,
                Some("monad") | None => Target::Monad,
                Some(t) => return Err(Error::Invalid(format!("unknown separability target {t:?}"))),
            };
            Command::Separability { name: name()?, target }
        }
        "em-report" => Command::EmReport(name()?),
        "equivariant-report" => Command::EquivariantReport(name()?),
        "complex-report" => Command::ComplexReport(name()?),
        other => return Err(Error::Invalid(format!("unknown command {other:?}"))),
    })
}

fn validate(ws: &Workspace) -> Outcome {
    let mut out = Outcome::default();
    for (id, r) in ws.validate() {
        out.push(CheckRecord::from_report(id, &r));
    }
    out
}

fn adjunction_check(ws: &Workspace, name: &str) -> Result<Outcome> {
    let adj = &ws.adjunctions.get(name)?.adjunction;
    let id = |part: &str| format!("adjunction-check/{name}/{part}");
    let mut out = Outcome::default();
    out.push(CheckRecord::from_report(id("left"), &adj.left().validate()));
    out.push(CheckRecord::from_report(id("right"), &adj.right().validate()));
    out.push(CheckRecord::from_report(id("unit"), &adj.unit().validate()));
    out.push(CheckRecord::from_report(id("counit"), &adj.counit().validate()));
    out.push(CheckRecord::from_report(id("triangles"), &adj.validate()));
    Ok(out)
}

/// A declared functor, or the right adjoint of a declared adjunction.
fn functor_named(ws: &Workspace, name: &str) -> Result<Arc<Functor>> {
    if ws.functors.contains(name) {
        return Ok(ws.functors.get(name)?.clone());
    }
    if ws.adjunctions.contains(name) {
        return Ok(ws.adjunctions.get(name)?.adjunction.right().clone());
    }
    Err(Error::Unresolved(format!("functor or adjunction {name:?}")))
}

fn functor_separability(ws: &Workspace, name: &str) -> Result<Outcome> {
    let f = functor_named(ws, name)?;
    let id = format!("separability/{name}/functor");
    let mut out = Outcome::default();
    match separability_solve(&f) {
        Ok(SepOutcome::Separable(w)) => {
            let file = witness_file_name(name);
            let env = WitnessEnvelope { schema_version: SCHEMA_VERSION, kind: WitnessKind::Functor, subject: name.into(), data: to_value(&w.to_json()) };
            out.push(CheckRecord::from_report(&id, &w.verify()).with_witness(&file));
            out.witnesses.push((file, env.to_json()));
        }
        Ok(SepOutcome::Infeasible(i)) => out.push(CheckRecord::new(id, Status::Infeasible, to_value(&i))),
        Err(e) => out.push(CheckRecord::error(id, &e)),
    }
    Ok(out)
}

fn sigma_file(w: &MonadSepWitness) -> SigmaFile {
    let m = w.monad();
    let c = m.category();
    SigmaFile {
        monad: m.name().to_string(),
        field: c.field().to_string(),
        components: (0..c.num_objects())
            .map(|x| SigmaComponent { object: c.object_name(x).to_string(), matrix: emit_mor(w.sigma().component(x)) })
            .collect(),
    }
}

fn monad_separability(ws: &Workspace, name: &str) -> Result<Outcome> {
    let m = &ws.monads.get(name)?.monad;
    let id = format!("separability/{name}/monad");
    let mut out = Outcome::default();
    match monad_separability_solve(m) {
        Ok(MonadSepOutcome::Separable { witness, kernel }) => {
            let file = witness_file_name(name);
            let env = WitnessEnvelope {
                schema_version: SCHEMA_VERSION,
                kind: WitnessKind::Monad,
                subject: name.into(),
                data: to_value(&sigma_file(&witness)),
            };
            let r = witness.verify();
            let status = if r.passed() { Status::Pass } else { Status::Fail };
            let details = json!({ "laws": to_value(&r), "section_space_dim": kernel.len() });
            out.push(CheckRecord::new(id, status, details).with_witness(&file));
            out.witnesses.push((file, env.to_json()));
        }
        Ok(MonadSepOutcome::Infeasible(i)) => out.push(CheckRecord::new(id, Status::Infeasible, to_value(&i))),
        Err(e) => out.push(CheckRecord::error(id, &e)),
    }
    Ok(out)
}

/// Re-reads a witness file and re-verifies it against the workspace.
pub fn verify_witness(ws: &Workspace, path: &std::path::Path) -> Result<Outcome> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let env: WitnessEnvelope =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    if env.schema_version != SCHEMA_VERSION {
        return Err(Error::Parse(format!("unsupported schema_version {}", env.schema_version)));
    }
    let id = format!("verify-witness/{}", env.subject);
    let bad = |e: serde_json::Error| Error::Parse(format!("witness data: {e}"));
    let report = match env.kind {
        WitnessKind::Functor => {
            let f = functor_named(ws, &env.subject)?;
            let data: WitnessFile = serde_json::from_value(env.data).map_err(bad)?;
            data.into_witness(&f).map(|w| w.verify())
        }
        WitnessKind::Monad => {
            let m = ws.monads.get(&env.subject)?.monad.clone();
            let data: SigmaFile = serde_json::from_value(env.data).map_err(bad)?;
            read_sigma(&m, &data).map(|w| w.verify())
        }
    };
    let mut out = Outcome::default();
    out.push(match report {
        Ok(r) => CheckRecord::from_report(id, &r),
        Err(e) => CheckRecord::error(id, &e),
    });
    Ok(out)
}

fn read_sigma(m: &Arc<Monad>, data: &SigmaFile) -> Result<MonadSepWitness> {
    let c = m.category();
    let comps = (0..c.num_objects())
        .map(|x| {
            let name = c.object_name(x);
            let comp = data
                .components
                .iter()
                .find(|s| s.object == name)
                .ok_or_else(|| Error::Unresolved(format!("σ component at {name:?}")))?;
            let mx = m.functor().object(x);
            parse_mor(mx, &m.square().object(x).clone(), &comp.matrix)
        })
        .collect::<Result<Vec<_>>>()?;
    MonadSepWitness::new(m, comps)
}

/// Character objects on every base object fixed by the action, skipping
/// names already taken.
fn extra_characters(action: &StrictAction, taken: &[String]) -> Vec<EquivObject> {
    let mut out: Vec<EquivObject> = Vec::new();
    let c = action.base();
    for x in 0..c.num_objects() {
        let Ok(chars) = character_objects(action, x) else { continue };
        for z in chars {
            let name = if c.num_objects() == 1 { z.name().to_string() } else { format!("{}@{}", z.name(), c.object_name(x)) };
            if taken.contains(&name) || out.iter().any(|o| o.name() == name) {
                continue;
            }
            if let Ok(z) = EquivObject::new(name, action, z.carrier().clone(), z.alphas().to_vec()) {
                out.push(z);
            }
        }
    }
    out
}

fn action_samples(ws: &Workspace, action_name: &str, action: &StrictAction) -> Vec<EquivObject> {
    let mut samples: Vec<EquivObject> = ws
        .equivariant_objects
        .iter()
        .filter(|(_, d)| d.action == action_name)
        .map(|(_, d)| d.object.clone())
        .collect();
    let mut taken: Vec<String> = samples.iter().map(|z| z.name().to_string()).collect();
    taken.extend((0..action.base().num_objects()).map(|x| format!("F({})", action.base().object_name(x))));
    samples.extend(extra_characters(action, &taken));
    samples
}

fn em_report(ws: &Workspace, name: &str, opts: &Options) -> Result<Outcome> {
    let decl = ws.adjunctions.get(name)?;
    let adj = &decl.adjunction;
    let id = |part: &str| format!("em-report/{name}/{part}");
    let mut out = Outcome::default();

    let declared = ws.monads.iter().find(|(_, m)| m.adjunction.as_deref() == Some(name));
    let monad = match declared {
        Some((_, m)) => m.monad.clone(),
        None => match monad_from_adjunction(adj) {
            Ok(m) => Arc::new(m),
            Err(e) => {
                out.push(CheckRecord::error(id("monad"), &e));
                return Ok(out);
            }
        },
    };
    let mut samples: Vec<MModule> = match declared {
        Some((mname, _)) => ws.modules.iter().filter(|(_, d)| d.monad == mname).map(|(_, d)| d.module.clone()).collect(),
        None => Vec::new(),
    };
    if let AdjKind::Equivariant { action, .. } = &decl.kind {
        let act = ws.actions.get(action)?;
        for z in action_samples(ws, action, act) {
            if samples.iter().any(|m| m.name() == z.name()) {
                continue;
            }
            match to_module(act, &monad, &z) {
                Ok(m) => samples.push(m),
                Err(e) => out.push(CheckRecord::error(id(&format!("dictionary/{}", z.name())), &e)),
            }
        }
    }

    let g_separable = match separability_solve(adj.right()) {
        Ok(SepOutcome::Separable(w)) => {
            out.push(CheckRecord::from_report(id("right-adjoint-separable"), &w.verify()));
            true
        }
        Ok(SepOutcome::Infeasible(i)) => {
            out.push(CheckRecord::new(id("right-adjoint-separable"), Status::Infeasible, to_value(&i)));
            false
        }
        Err(e) => {
            out.push(CheckRecord::error(id("right-adjoint-separable"), &e));
            return Ok(out);
        }
    };
    let sigma = match monad_separability_solve(&monad) {
        Ok(MonadSepOutcome::Separable { witness, .. }) => {
            out.push(CheckRecord::from_report(id("monad-separable"), &witness.verify()));
            Some(witness)
        }
        Ok(MonadSepOutcome::Infeasible(i)) => {
            out.push(CheckRecord::new(id("monad-separable"), Status::Infeasible, to_value(&i)));
            None
        }
        Err(e) => {
            out.push(CheckRecord::error(id("monad-separable"), &e));
            return Ok(out);
        }
    };
    let cmp = match Comparison::with_monad(adj, &monad, samples.clone()) {
        Ok(c) => c,
        Err(e) => {
            out.push(CheckRecord::error(id("comparison"), &e));
            return Ok(out);
        }
    };
    out.push(CheckRecord::from_report(id("comparison-factorization"), &cmp.check_factorization()));

    let mut equivalent = false;
    if let Some(sigma) = &sigma {
        let d = adj.left().target();
        let d_samples: Vec<Obj> = (0..d.num_objects()).map(|y| Obj::base(d, y)).collect();
        match check_equiv_up_to_retracts(&cmp, sigma, &d_samples) {
            Ok(rep) => {
                let ff_ok = rep.fully_faithful.iter().all(|h| h.bijective);
                let status = if ff_ok { Status::Pass } else { Status::Fail };
                out.push(CheckRecord::new(id("comparison-fully-faithful"), status, to_value(&rep.fully_faithful)));
                for (r, s) in rep.retracts.iter().zip(rep.summary().retracts) {
                    let ok = r.witness.as_ref().is_some_and(|w| w.verify().passed());
                    let status = if ok { Status::Pass } else { Status::Fail };
                    out.push(CheckRecord::new(id(&format!("retract/{}", r.module)), status, to_value(&s)));
                }
                equivalent = rep.passed();
            }
            Err(e) => out.push(CheckRecord::error(id("equivalence-up-to-retracts"), &e)),
        }
        if opts.complete_target {
            for m in cmp.modcat().modules().iter().skip(cmp.modcat().free_count()) {
                let pid = id(&format!("preimage/{}", m.name()));
                match essential_preimage(&cmp, sigma, m) {
                    Ok(p) => {
                        let r = p.verify(m);
                        let details = json!({ "object": p.object.to_string(), "laws": to_value(&r) });
                        let status = if r.passed() { Status::Pass } else { Status::Fail };
                        out.push(CheckRecord::new(pid, status, details));
                    }
                    Err(e) => out.push(CheckRecord::error(pid, &e)),
                }
            }
        }
    }
    let predicted = sigma.is_some() && equivalent;
    let status = if predicted == g_separable { Status::Pass } else { Status::Fail };
    let details = json!({
        "right_adjoint_separable": g_separable,
        "monad_separable": sigma.is_some(),
        "equivalence_up_to_retracts": equivalent,
        "essential_preimages": if opts.complete_target { "computed" } else { "not computed (pass --complete-target)" },
    });
    out.push(CheckRecord::new(id("characterization"), status, details));
    Ok(out)
}

fn equivariant_report(ws: &Workspace, name: &str, opts: &Options) -> Result<Outcome> {
    let act = ws.actions.get(name)?.clone();
    let id = |part: &str| format!("equivariant-report/{name}/{part}");
    let mut out = Outcome::default();
    out.push(CheckRecord::from_report(id("action"), &act.validate()));
    let samples = action_samples(ws, name, &act);
    let (cat, adj) = match induce_adjunction(&act, samples) {
        Ok(p) => p,
        Err(e) => {
            out.push(CheckRecord::error(id("adjunction"), &e));
            return Ok(out);
        }
    };
    out.push(CheckRecord::from_report(id("adjunction"), &adj.validate_all()));
    let monad = match (equivariant_monad(&act), monad_from_adjunction(&adj)) {
        (Ok(m), Ok(from_adj)) => {
            let same = m.same_data(&from_adj);
            let status = if same { Status::Pass } else { Status::Fail };
            out.push(CheckRecord::new(id("monad-of-adjunction"), status, json!({ "same_data": same })));
            Arc::new(m)
        }
        (Err(e), _) | (_, Err(e)) => {
            out.push(CheckRecord::error(id("monad-of-adjunction"), &e));
            return Ok(out);
        }
    };

    let mut modules = Vec::with_capacity(cat.objects().len());
    for z in cat.objects() {
        let rid = id(&format!("dictionary/{}", z.name()));
        let round = to_module(&act, &monad, z).and_then(|m| {
            let back = to_equivariant(&act, &m)?;
            Ok((m, back))
        });
        match round {
            Ok((m, back)) => {
                let laws = validate_module(&m);
                let same = back.same_data(z);
                let status = if same && laws.passed() { Status::Pass } else { Status::Fail };
                out.push(CheckRecord::new(rid, status, json!({ "roundtrip_identity": same, "module_laws": to_value(&laws) })));
                modules.push(Some(m));
            }
            Err(e) => {
                out.push(CheckRecord::error(rid, &e));
                modules.push(None);
            }
        }
    }

    let n = cat.objects().len();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.samples {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let (a, b) = (cat.object(i), cat.object(j));
        let rid = id(&format!("hom-dims/{},{}", a.name(), b.name()));
        let (Some(ma), Some(mb)) = (&modules[i], &modules[j]) else {
            out.push(CheckRecord::new(rid, Status::Error, json!({ "error": "dictionary failed" })));
            continue;
        };
        let eq = eq_hom_basis(&act, a, b).dim();
        match module_hom_basis(ma, mb) {
            Ok(s) => {
                let status = if s.dim() == eq { Status::Pass } else { Status::Fail };
                out.push(CheckRecord::new(rid, status, json!({ "equivariant": eq, "module": s.dim() })));
            }
            Err(e) => out.push(CheckRecord::error(rid, &e)),
        }
    }

    let mut all_xi = true;
    for j in 0..n {
        let rid = id(&format!("xi/{}", cat.object(j).name()));
        match xi_forgetful(&cat, &adj, j) {
            Ok(_) => out.push(CheckRecord::new(rid, Status::Pass, json!({ "counit_retraction": true }))),
            Err(e @ Error::NotInvertible { .. }) => {
                all_xi = false;
                out.push(CheckRecord::new(rid, Status::Infeasible, json!({ "error": e.to_string() })));
            }
            Err(e) => {
                all_xi = false;
                out.push(CheckRecord::error(rid, &e));
            }
        }
    }
    let solved = monad_separability_solve(&monad).map(|o| o.is_separable());
    let rid = id("sigma-from-xi");
    if all_xi {
        let built = xi_nat(&cat, &adj).and_then(|xi| sigma_from_xi(&adj, &xi));
        match (built, solved) {
            (Ok(w), Ok(solved)) => {
                let r = w.verify();
                let status = if r.passed() && solved { Status::Pass } else { Status::Fail };
                out.push(CheckRecord::new(rid, status, json!({ "laws": to_value(&r), "solver_separable": solved })));
            }
            (Err(e), _) | (_, Err(e)) => out.push(CheckRecord::error(rid, &e)),
        }
    } else {
        match solved {
            Ok(solved) => {
                let status = if solved { Status::Fail } else { Status::Infeasible };
                out.push(CheckRecord::new(rid, status, json!({ "xi": "unavailable", "solver_separable": solved })));
            }
            Err(e) => out.push(CheckRecord::error(rid, &e)),
        }
    }
    Ok(out)
}

fn complex_report(ws: &Workspace, name: &str, opts: &Options) -> Result<Outcome> {
    let act = ws.actions.get(name)?.clone();
    let id = |part: &str| format!("complex-report/{name}/{part}");
    let mut out = Outcome::default();
    let declared = ws.monads.iter().find(|(_, m)| m.action.as_deref() == Some(name));
    let monad = match declared {
        Some((_, m)) => m.monad.clone(),
        None => match equivariant_monad(&act) {
            Ok(m) => Arc::new(m),
            Err(e) => {
                out.push(CheckRecord::error(id("monad"), &e));
                return Ok(out);
            }
        },
    };
    let mut samples: Vec<ModuleComplex> = ws
        .module_complexes
        .iter()
        .filter(|(_, c)| c.monad().same_data(&monad))
        .map(|(_, c)| c.clone())
        .collect();
    let c = act.base();
    let mut pool: Vec<MModule> = Vec::new();
    for x in 0..c.num_objects() {
        match MModule::free(&monad, &Obj::base(c, x)) {
            Ok(m) => pool.push(m),
            Err(e) => out.push(CheckRecord::error(id("pool"), &e)),
        }
    }
    for z in action_samples(ws, name, &act) {
        if let Ok(m) = to_module(&act, &monad, &z) {
            pool.push(m);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for i in 0..opts.samples {
        let len = rng.gen_range(1..=3);
        match random_module_complex(&mut rng, &format!("random{i}"), &pool, 0, len) {
            Ok(cx) => samples.push(cx),
            Err(e) => out.push(CheckRecord::error(id(&format!("random{i}")), &e)),
        }
    }
    match derived_comparison_check(&monad, &samples) {
        Ok(rep) => {
            for p in &rep.pairs {
                let status = if p.agree { Status::Pass } else { Status::Fail };
                out.push(CheckRecord::new(id(&format!("pair/{},{}", p.from, p.to)), status, to_value(p)));
            }
            for r in &rep.retracts {
                let status = if r.verified { Status::Pass } else { Status::Fail };
                out.push(CheckRecord::new(id(&format!("retract/{}", r.sample)), status, to_value(r)));
            }
            out.push(CheckRecord::from_report(id("laws"), &rep.report));
        }
        Err(Error::MonadNotSeparable) => {
            let details = json!({ "error": "MonadNotSeparable", "message": Error::MonadNotSeparable.to_string() });
            out.push(CheckRecord::new(id("monad-separable"), Status::Infeasible, details));
        }
        Err(e) => out.push(CheckRecord::error(id("derived-comparison"), &e)),
    }
    Ok(out)
}
