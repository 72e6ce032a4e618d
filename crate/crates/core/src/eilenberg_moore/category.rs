use std::sync::Arc;

use super::module::{push_module_constraint, validate_module, MModule};
use crate::error::{Error, Result};
use crate::functorial::{Adjunction, Functor};
use crate::lincat::{Category, FullSubcategory, Mor, Obj};
use crate::monadic::Monad;

/// A finite full subcategory of the modules over a monad: the free modules
/// on base objects (in base order) followed by any further modules.
#[derive(Clone, Debug)]
pub struct ModuleCategory {
    monad: Arc<Monad>,
    modules: Vec<MModule>,
    sub: FullSubcategory,
}

impl ModuleCategory {
    pub fn build(monad: &Arc<Monad>, extra: Vec<MModule>) -> Result<ModuleCategory> {
        let c = monad.category();
        let mut modules = Vec::with_capacity(c.num_objects() + extra.len());
        for x in 0..c.num_objects() {
            modules.push(MModule::free(monad, &Obj::base(c, x))?.with_name(format!("F({})", c.object_name(x))));
        }
        for m in extra {
            validate_module(&m).into_result()?;
            if !Arc::ptr_eq(m.monad(), monad) && !m.monad().same_data(monad) {
                return Err(Error::PreconditionFailed(format!("{} is a module over a different monad", m.name())));
            }
            modules.push(m);
        }
        let mut names: Vec<String> = Vec::with_capacity(modules.len());
        for m in &modules {
            if names.iter().any(|n| n == m.name()) {
                return Err(Error::Invalid(format!("duplicate module name {}", m.name())));
            }
            names.push(m.name().to_string());
        }
        let carriers = modules.iter().map(|m| m.carrier().clone()).collect();
        let sub = FullSubcategory::build(format!("{}-Mod", monad.name()), names, carriers, |x, y, f, r| {
            push_module_constraint(&modules[x], &modules[y], f, r)
        })?;
        Ok(ModuleCategory { monad: monad.clone(), modules, sub })
    }

    pub fn monad(&self) -> &Arc<Monad> {
        &self.monad
    }

    pub fn pres(&self) -> &Arc<Category> {
        self.sub.pres()
    }

    pub fn sub(&self) -> &FullSubcategory {
        &self.sub
    }

    pub fn modules(&self) -> &[MModule] {
        &self.modules
    }

    pub fn module(&self, j: usize) -> &MModule {
        &self.modules[j]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.modules.iter().position(|m| m.name() == name)
    }

    /// Number of free modules on base objects at the front.
    pub fn free_count(&self) -> usize {
        self.monad.category().num_objects()
    }

    /// `F_M`: base object `x` to the free module on `x`.
    pub fn free_functor(&self) -> Result<Functor> {
        let c = self.monad.category();
        let p = self.pres();
        let objects = (0..c.num_objects()).map(|x| Obj::base(p, x)).collect();
        Functor::new("F_M", c, p, objects, |x, y, a| {
            let m = self.monad.functor().hom(x, y, a);
            self.sub.descend(&Obj::base(p, x), &Obj::base(p, y), m)
        })
    }

    /// `G_M`: a module to its carrier.
    pub fn forgetful(&self) -> Result<Functor> {
        let c = self.monad.category();
        let objects = self.sub.carriers().to_vec();
        Functor::new("G_M", self.pres(), c, objects, |j, k, b| Ok(self.sub.space(j, k).basis()[b].clone()))
    }

    /// The module presented by a closure object of the presentation.
    pub fn module_of(&self, x: &Obj) -> Result<MModule> {
        if x.is_plain() && x.len() == 1 {
            return Ok(self.modules[x.summands()[0]].clone());
        }
        let carrier = self.sub.lift_obj(x)?;
        let parts: Vec<Mor> = x.summands().iter().map(|&s| self.modules[s].action().clone()).collect();
        let plain = if parts.is_empty() {
            Mor::zero(&self.monad.apply_obj(&carrier)?, &carrier)
        } else {
            Mor::direct_sum(&parts)?
        };
        let lam = if x.is_plain() {
            plain
        } else {
            let p = carrier.idempotent();
            let mp = self.monad.apply_mor(&p)?;
            let diag = plain.retype(mp.cod(), p.dom())?;
            let blocks = p.compose(&diag)?.compose(&mp)?.blocks().clone();
            Mor::unchecked(&self.monad.apply_obj(&carrier)?, &carrier, blocks)?
        };
        MModule::new(format!("{x}"), &self.monad, carrier, lam)
    }
}

/// The free/forgetful adjunction `F_M ⊣ G_M` on a finite module category,
/// with unit `η` and counit `(ε_M)_{(X, λ)} = λ`.
pub fn em_adjunction(monad: &Arc<Monad>, extra: Vec<MModule>) -> Result<(ModuleCategory, Adjunction)> {
    let cat = ModuleCategory::build(monad, extra)?;
    let adj = cat.adjunction()?;
    Ok((cat, adj))
}

impl ModuleCategory {
    pub fn adjunction(&self) -> Result<Adjunction> {
        let f = Arc::new(self.free_functor()?);
        let g = Arc::new(self.forgetful()?);
        let p = self.pres().clone();
        let mut counit = Vec::with_capacity(self.modules.len());
        for (j, m) in self.modules.iter().enumerate() {
            let dom = f.apply_obj(m.carrier())?;
            counit.push(self.sub.descend(&dom, &Obj::base(&p, j), m.action())?);
        }
        let adj = Adjunction::new(
            format!("F_M ⊣ G_M for {}", self.monad.name()),
            &f,
            &g,
            self.monad.unit().components().to_vec(),
            counit,
        )?;
        adj.validate_all().into_result()?;
        Ok(adj)
    }
}
