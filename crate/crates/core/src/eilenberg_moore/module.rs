use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::Residual;
use crate::lincat::{push_mor, HomSpace, Mor, Obj};
use crate::monadic::Monad;
use crate::report::ValidationReport;

/// A module `(X, λ)` over a monad, `λ: M X → X`.
#[derive(Clone, Debug)]
pub struct MModule {
    name: String,
    monad: Arc<Monad>,
    carrier: Obj,
    action: Mor,
    free_on: Option<Obj>,
}

impl MModule {
    pub fn new(name: impl Into<String>, monad: &Arc<Monad>, carrier: Obj, action: Mor) -> Result<MModule> {
        let mx = monad.apply_obj(&carrier)?;
        if action.dom() != &mx || action.cod() != &carrier {
            return Err(Error::ObjectMismatch(format!(
                "action is {} → {}, expected {} → {}",
                action.dom(),
                action.cod(),
                mx,
                carrier
            )));
        }
        Ok(MModule { name: name.into(), monad: monad.clone(), carrier, action, free_on: None })
    }

    /// The free module `(M X, μ_X)`.
    pub fn free(monad: &Arc<Monad>, x: &Obj) -> Result<MModule> {
        let carrier = monad.apply_obj(x)?;
        let action = monad.mult().at(x)?;
        let mut m = MModule::new(format!("free({x})"), monad, carrier, action)?;
        m.free_on = Some(x.clone());
        Ok(m)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> MModule {
        self.name = name.into();
        self
    }

    pub fn monad(&self) -> &Arc<Monad> {
        &self.monad
    }

    pub fn carrier(&self) -> &Obj {
        &self.carrier
    }

    pub fn action(&self) -> &Mor {
        &self.action
    }

    /// The object this module was built free on, if any.
    pub fn free_on(&self) -> Option<&Obj> {
        self.free_on.as_ref()
    }

    /// Equality of carriers and actions.
    pub fn same_data(&self, other: &MModule) -> bool {
        self.carrier == other.carrier && self.action == other.action
    }

    fn check_monad(&self, other: &MModule) -> Result<()> {
        if Arc::ptr_eq(&self.monad, &other.monad) || self.monad.same_data(&other.monad) {
            Ok(())
        } else {
            Err(Error::PreconditionFailed(format!(
                "{} and {} are modules over different monads",
                self.name, other.name
            )))
        }
    }
}

/// Both module axioms: `λ∘Mλ = λ∘μ_X` and `λ∘η_X = Id`.
pub fn validate_module(m: &MModule) -> ValidationReport {
    let mut r = ValidationReport::new(format!("module {}", m.name));
    let x = &m.carrier;
    let lam = &m.action;
    let assoc = m
        .monad
        .apply_mor(lam)
        .and_then(|ml| lam.compose(&ml))
        .and_then(|lhs| Ok(lhs == lam.compose(&m.monad.mult().at(x)?)?));
    r.check(assoc.unwrap_or(false), "λ∘Mλ = λ∘μ", || x.to_string());
    let unit = m.monad.unit().at(x).and_then(|eta| lam.compose(&eta));
    r.check(unit.map(|u| u.is_identity()).unwrap_or(false), "λ∘η = Id", || x.to_string());
    r
}

/// A morphism of modules `f: X → X'` with `f∘λ = λ'∘M(f)`.
#[derive(Clone, Debug)]
pub struct ModuleMor {
    pub from: MModule,
    pub to: MModule,
    pub f: Mor,
}

impl ModuleMor {
    pub fn new(from: &MModule, to: &MModule, f: Mor) -> Result<ModuleMor> {
        from.check_monad(to)?;
        if f.dom() != from.carrier() || f.cod() != to.carrier() {
            return Err(Error::ObjectMismatch(format!("{} → {} is not between the carriers", f.dom(), f.cod())));
        }
        Ok(ModuleMor { from: from.clone(), to: to.clone(), f })
    }

    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::new(format!("module morphism {} → {}", self.from.name, self.to.name));
        let ok = module_residual(&self.from, &self.to, &self.f).map(|m| m.is_zero()).unwrap_or(false);
        r.check(ok, "f∘λ = λ'∘M(f)", || self.f.dom().to_string());
        r
    }
}

fn module_residual(a: &MModule, b: &MModule, f: &Mor) -> Result<Mor> {
    let lhs = f.compose(&a.action)?;
    let rhs = b.action.compose(&a.monad.apply_mor(f)?)?;
    lhs.sub(&rhs)
}

pub(crate) fn push_module_constraint(a: &MModule, b: &MModule, f: &Mor, r: &mut Residual) {
    push_mor(r, &module_residual(a, b, f).expect("module shapes"));
}

/// The module morphisms `a → b` as a subspace of `Hom(X, X')`.
pub fn module_hom_basis(a: &MModule, b: &MModule) -> Result<HomSpace> {
    a.check_monad(b)?;
    Ok(HomSpace::constrained(a.carrier(), b.carrier(), |f, r| push_module_constraint(a, b, f, r)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Field;
    use crate::fixtures;

    #[test]
    fn free_modules_of_identity_monad() {
        let c2 = Arc::new(fixtures::c2(Field::Rationals));
        let m = Arc::new(Monad::identity(&c2));
        let a = MModule::free(&m, &Obj::base(&c2, 0)).unwrap();
        let b = MModule::free(&m, &Obj::base(&c2, 1)).unwrap();
        assert!(validate_module(&a).passed());
        assert_eq!(module_hom_basis(&a, &b).unwrap().dim(), 1);
        assert_eq!(module_hom_basis(&b, &a).unwrap().dim(), 0);
    }

    #[test]
    fn non_unital_action_fails() {
        let c1 = Arc::new(fixtures::c1(Field::Rationals));
        let m = Arc::new(Monad::identity(&c1));
        let x = Obj::base(&c1, 0);
        let two = Mor::identity(&x).scale(&Field::Rationals.int(2));
        let bad = MModule::new("bad", &m, x, two).unwrap();
        let r = validate_module(&bad);
        assert!(r.violations.iter().any(|v| v.law == "λ∘η = Id"));
    }
}
