use std::sync::Arc;

use serde::Serialize;

use super::category::ModuleCategory;
use super::module::{module_hom_basis, validate_module, MModule, ModuleMor};
use crate::error::{Error, Result};
use crate::exactlin::Matrix;
use crate::functorial::{fully_faithful_on, Adjunction, Functor, HomMapReport};
use crate::lincat::{split_idempotent, HomSpace, Mor, Obj, RetractSummary, RetractWitness};
use crate::monadic::{monad_from_adjunction, Monad, MonadSepWitness};
use crate::report::ValidationReport;

/// The comparison functor `K: D → M-Mod`, `K(d) = (G d, G ε_d)`, for the
/// monad `M = GF` of an adjunction, landing in a finite module category
/// that contains the free modules, every `K(d)` for base `d`, and samples.
#[derive(Clone, Debug)]
pub struct Comparison {
    adj: Adjunction,
    monad: Arc<Monad>,
    modcat: ModuleCategory,
    functor: Arc<Functor>,
}

impl Comparison {
    pub fn build(adj: &Adjunction, samples: Vec<MModule>) -> Result<Comparison> {
        let monad = Arc::new(monad_from_adjunction(adj)?);
        Comparison::with_monad(adj, &monad, samples)
    }

    /// As [`Comparison::build`] with the monad supplied; it must agree with
    /// the monad of the adjunction componentwise.
    pub fn with_monad(adj: &Adjunction, monad: &Arc<Monad>, samples: Vec<MModule>) -> Result<Comparison> {
        if !monad.same_data(&monad_from_adjunction(adj)?) {
            return Err(Error::PreconditionFailed(format!("{} is not the monad of {}", monad.name(), adj.name())));
        }
        let d = adj.left().target();
        let mut extra = Vec::with_capacity(d.num_objects() + samples.len());
        for y in 0..d.num_objects() {
            extra.push(k_module(adj, monad, &Obj::base(d, y))?.with_name(format!("K({})", d.object_name(y))));
        }
        extra.extend(samples);
        let modcat = ModuleCategory::build(monad, extra)?;
        let offset = modcat.free_count();
        let p = modcat.pres().clone();
        let g = adj.right();
        let functor = Functor::new(
            "K",
            d,
            &p,
            (0..d.num_objects()).map(|y| Obj::base(&p, offset + y)).collect(),
            |y, z, b| modcat.sub().descend(&Obj::base(&p, offset + y), &Obj::base(&p, offset + z), g.hom(y, z, b)),
        )?;
        Ok(Comparison { adj: adj.clone(), monad: monad.clone(), modcat, functor: Arc::new(functor) })
    }

    pub fn adjunction(&self) -> &Adjunction {
        &self.adj
    }

    pub fn monad(&self) -> &Arc<Monad> {
        &self.monad
    }

    pub fn modcat(&self) -> &ModuleCategory {
        &self.modcat
    }

    /// `K` as a functor into the module category presentation.
    pub fn functor(&self) -> &Arc<Functor> {
        &self.functor
    }

    /// Index of the first user sample in the module category.
    pub fn sample_offset(&self) -> usize {
        self.modcat.free_count() + self.adj.left().target().num_objects()
    }

    /// `K(d)` as module data, for any closure object of D.
    pub fn apply_obj(&self, d: &Obj) -> Result<MModule> {
        let m = k_module(&self.adj, &self.monad, d)?;
        validate_module(&m).into_result()?;
        Ok(m)
    }

    /// `K(f) = G(f)` as a module morphism.
    pub fn apply_mor(&self, f: &Mor) -> Result<ModuleMor> {
        let from = self.apply_obj(f.dom())?;
        let to = self.apply_obj(f.cod())?;
        let m = ModuleMor::new(&from, &to, self.adj.right().apply_mor(f)?)?;
        m.validate().into_result()?;
        Ok(m)
    }

    /// `KF = F_M` and `G_M K = G` on every base object of C and D, at the
    /// level of module data.
    pub fn check_factorization(&self) -> ValidationReport {
        let mut r = ValidationReport::new("comparison");
        let c = self.monad.category();
        for x in 0..c.num_objects() {
            let kf = self.apply_obj(self.adj.left().object(x));
            let free = MModule::free(&self.monad, &Obj::base(c, x));
            let ok = matches!((&kf, &free), (Ok(a), Ok(b)) if a.same_data(b));
            r.check(ok, "KF = F_M", || c.object_name(x).to_string());
        }
        let d = self.adj.left().target();
        for y in 0..d.num_objects() {
            let ok = matches!(self.apply_obj(&Obj::base(d, y)), Ok(m) if m.carrier() == self.adj.right().object(y));
            r.check(ok, "G_M K = G", || d.object_name(y).to_string());
        }
        r
    }
}

fn k_module(adj: &Adjunction, monad: &Arc<Monad>, d: &Obj) -> Result<MModule> {
    let g = adj.right();
    let carrier = g.apply_obj(d)?;
    let action = g.apply_mor(&adj.counit().at(d)?)?;
    MModule::new(format!("K({d})"), monad, carrier, action)
}

/// The section `s = M(λ)∘σ_X∘η_X: (X, λ) → (M X, μ_X)` of `λ`.
pub fn xi_em_from_sigma(sigma: &MonadSepWitness, m: &MModule) -> Result<Mor> {
    let monad = m.monad();
    if !sigma.monad().same_data(monad) {
        return Err(Error::PreconditionFailed("σ and the module belong to different monads".into()));
    }
    let x = m.carrier();
    let s = monad
        .apply_mor(m.action())?
        .compose(&sigma.sigma().at(x)?)?
        .compose(&monad.unit().at(x)?)?;
    if !m.action().compose(&s)?.is_identity() {
        return Err(Error::LawViolation(format!("λ∘s ≠ Id on {}", m.name())));
    }
    let free = MModule::free(monad, x)?;
    let mm = ModuleMor::new(m, &free, s.clone())?;
    if !mm.validate().passed() {
        return Err(Error::LawViolation(format!("s is not a module morphism on {}", m.name())));
    }
    Ok(s)
}

/// One sampled module exhibited as a retract of `K(F(X))`.
#[derive(Clone, Debug)]
pub struct ModuleRetract {
    pub module: String,
    pub witness: Option<RetractWitness>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleRetractSummary {
    pub module: String,
    pub retract: Option<RetractSummary>,
    pub error: Option<String>,
}

/// Outcome of [`check_equiv_up_to_retracts`].
#[derive(Clone, Debug)]
pub struct EquivReport {
    pub fully_faithful: Vec<HomMapReport>,
    pub retracts: Vec<ModuleRetract>,
    pub report: ValidationReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivSummary {
    pub fully_faithful: Vec<HomMapReport>,
    pub retracts: Vec<ModuleRetractSummary>,
    pub report: ValidationReport,
}

impl EquivReport {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }

    pub fn summary(&self) -> EquivSummary {
        EquivSummary {
            fully_faithful: self.fully_faithful.clone(),
            retracts: self
                .retracts
                .iter()
                .map(|r| ModuleRetractSummary {
                    module: r.module.clone(),
                    retract: r.witness.as_ref().map(RetractWitness::summary),
                    error: r.error.clone(),
                })
                .collect(),
            report: self.report.clone(),
        }
    }
}

/// Fully-faithfulness of `K` on all pairs of sampled D-objects, and every
/// module of the category (free, `K(d)` and samples) exhibited as a
/// verified retract of `K(F(X))` through `s` and `λ`.
pub fn check_equiv_up_to_retracts(cmp: &Comparison, sigma: &MonadSepWitness, d_samples: &[Obj]) -> Result<EquivReport> {
    let mut report = ValidationReport::new(format!("equivalence up to retracts for {}", cmp.adj.name()));
    let pairs: Vec<(Obj, Obj)> = d_samples
        .iter()
        .flat_map(|a| d_samples.iter().map(move |b| (a.clone(), b.clone())))
        .collect();
    let ff = fully_faithful_on(&cmp.functor, &pairs)?;
    for h in &ff {
        report.check(h.bijective, "K fully faithful", || format!("{} → {}", h.from, h.to));
    }
    let mut retracts = Vec::new();
    let p = cmp.modcat.pres().clone();
    for (j, m) in cmp.modcat.modules().iter().enumerate() {
        let attempt = module_retract(cmp, sigma, &p, j, m);
        match attempt {
            Ok(w) => {
                let v = w.verify();
                report.check(v.passed(), "module is a retract of K(F(X))", || m.name().to_string());
                retracts.push(ModuleRetract { module: m.name().to_string(), witness: Some(w), error: None });
            }
            Err(e) => {
                report.fail("module is a retract of K(F(X))", format!("{}: {e}", m.name()));
                retracts.push(ModuleRetract { module: m.name().to_string(), witness: None, error: Some(e.to_string()) });
            }
        }
    }
    Ok(EquivReport { fully_faithful: ff, retracts, report })
}

fn module_retract(
    cmp: &Comparison,
    sigma: &MonadSepWitness,
    p: &Arc<crate::lincat::Category>,
    j: usize,
    m: &MModule,
) -> Result<RetractWitness> {
    let s = xi_em_from_sigma(sigma, m)?;
    let small = Obj::base(p, j);
    let big = cmp.functor.apply_obj(&cmp.adj.left().apply_obj(m.carrier())?)?;
    let u = cmp.modcat.sub().descend(&small, &big, &s)?;
    let v = cmp.modcat.sub().descend(&big, &small, m.action())?;
    Ok(RetractWitness { big, small, u, v })
}

/// A closure object `P` of D with `K(P) ≅ m`, and both isomorphisms as
/// module morphisms.
#[derive(Clone, Debug)]
pub struct Preimage {
    pub object: Obj,
    pub module: MModule,
    pub to_module: Mor,
    pub from_module: Mor,
}

impl Preimage {
    /// Both composites are identities and both maps are module morphisms.
    pub fn verify(&self, target: &MModule) -> ValidationReport {
        let mut r = ValidationReport::new(format!("preimage of {}", target.name()));
        let fwd = ModuleMor::new(&self.module, target, self.to_module.clone());
        let bwd = ModuleMor::new(target, &self.module, self.from_module.clone());
        r.check(matches!(&fwd, Ok(f) if f.validate().passed()), "K(P) → m is a module morphism", String::new);
        r.check(matches!(&bwd, Ok(f) if f.validate().passed()), "m → K(P) is a module morphism", String::new);
        let a = self.to_module.compose(&self.from_module);
        r.check(matches!(a, Ok(m) if m.is_identity()), "iso∘inverse = Id", || "on m".into());
        let b = self.from_module.compose(&self.to_module);
        r.check(matches!(b, Ok(m) if m.is_identity()), "inverse∘iso = Id", || "on K(P)".into());
        r
    }
}

/// The Karoubi object of D that `K` sends to `m`, built by pulling the
/// idempotent `s∘λ` of the free module back along `K`'s hom bijection.
pub fn essential_preimage(cmp: &Comparison, sigma: &MonadSepWitness, m: &MModule) -> Result<Preimage> {
    let x = m.carrier();
    let f = cmp.adj.left();
    let g = cmp.adj.right();
    let fx = f.apply_obj(x)?;
    if let Some(base) = m.free_on() {
        if m.same_data(&MModule::free(m.monad(), base)?) {
            let object = f.apply_obj(base)?;
            let module = cmp.apply_obj(&object)?;
            if module.same_data(m) {
                let id = Mor::identity(m.carrier());
                let p = Preimage { object, module, to_module: id.clone(), from_module: id };
                p.verify(m).into_result()?;
                return Ok(p);
            }
        }
    }
    let s = xi_em_from_sigma(sigma, m)?;
    let e = s.compose(m.action())?;
    let free = MModule::free(m.monad(), x)?;
    let src = HomSpace::new(&fx, &fx);
    let tgt = module_hom_basis(&free, &free)?;
    let field = x.field();
    let mut k = Matrix::zeros(field, tgt.dim(), src.dim());
    for (j, b) in src.basis().iter().enumerate() {
        for (i, c) in tgt.coords(&g.apply_mor(b)?)?.into_iter().enumerate() {
            k.set(i, j, c);
        }
    }
    if src.dim() != tgt.dim() || k.rank() != src.dim() {
        return Err(Error::NotFullyFaithful(format!(
            "Hom({fx}, {fx}) has dimension {} but its image under K has rank {} in a space of dimension {}",
            src.dim(),
            k.rank(),
            tgt.dim()
        )));
    }
    let kinv = k.inverse().expect("square of full rank");
    let coords = kinv.mul_vec(&tgt.coords(&e)?)?;
    let e_hat = src.combine(&coords);
    let split = split_idempotent(&fx, &e_hat)?;
    let object = split.small;
    let module = cmp.apply_obj(&object)?;
    let to_module = m.action().retype(module.carrier(), x)?;
    let from_module = s.retype(x, module.carrier())?;
    let p = Preimage { object, module, to_module, from_module };
    let v = p.verify(m);
    if !v.passed() {
        return Err(Error::LawViolation(v.to_string()));
    }
    Ok(p)
}
