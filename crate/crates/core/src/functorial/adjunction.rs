use std::sync::Arc;

use super::functor::Functor;
use super::nat::NatTrans;
use crate::error::{Error, Result};
use crate::lincat::{Category, Mor};
use crate::report::ValidationReport;

/// An adjunction `F ⊣ G` with `F: C → D`, unit `η: Id_C → GF` and counit
/// `ε: FG → Id_D`.
#[derive(Clone, Debug)]
pub struct Adjunction {
    name: String,
    left: Arc<Functor>,
    right: Arc<Functor>,
    unit: NatTrans,
    counit: NatTrans,
}

impl Adjunction {
    /// Unit components are `x → G F x` for base `x` of C, counit components
    /// `F G y → y` for base `y` of D.
    pub fn new(
        name: impl Into<String>,
        left: &Arc<Functor>,
        right: &Arc<Functor>,
        unit: Vec<Mor>,
        counit: Vec<Mor>,
    ) -> Result<Adjunction> {
        if !crate::lincat::same_category(left.target(), right.source())
            || !crate::lincat::same_category(left.source(), right.target())
        {
            return Err(Error::CategoryMismatch(format!("{} and {} are not opposite", left.name(), right.name())));
        }
        let id_c = Arc::new(Functor::identity(left.source()));
        let id_d = Arc::new(Functor::identity(left.target()));
        let gf = Arc::new(Functor::compose(right, left)?);
        let fg = Arc::new(Functor::compose(left, right)?);
        let unit = NatTrans::new("η", &id_c, &gf, unit)?;
        let counit = NatTrans::new("ε", &fg, &id_d, counit)?;
        Ok(Adjunction { name: name.into(), left: left.clone(), right: right.clone(), unit, counit })
    }

    pub fn identity(cat: &Arc<Category>) -> Adjunction {
        let id = Arc::new(Functor::identity(cat));
        let comps: Vec<Mor> = id.objects().iter().map(Mor::identity).collect();
        Adjunction::new(format!("id:{}", cat.name()), &id, &id, comps.clone(), comps).expect("identity adjunction")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Adjunction {
        self.name = name.into();
        self
    }

    pub fn left(&self) -> &Arc<Functor> {
        &self.left
    }

    pub fn right(&self) -> &Arc<Functor> {
        &self.right
    }

    pub fn unit(&self) -> &NatTrans {
        &self.unit
    }

    pub fn counit(&self) -> &NatTrans {
        &self.counit
    }

    /// The same data with the counit replaced; used to exhibit failures.
    pub fn with_counit(&self, counit: NatTrans) -> Result<Adjunction> {
        let comps = counit.components().to_vec();
        Adjunction::new(self.name.clone(), &self.left, &self.right, self.unit.components().to_vec(), comps)
    }

    /// The two triangle identities at every base object.
    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::new(format!("adjunction {}", self.name));
        let c = self.left.source();
        for x in 0..c.num_objects() {
            let fx = self.left.object(x);
            let f_eta = self.left.apply_mor(self.unit.component(x)).expect("functor applies");
            let eps_f = self.counit.at(fx).expect("component");
            let ok = eps_f.compose(&f_eta).map(|m| m.is_identity()).unwrap_or(false);
            r.check(ok, "εF∘Fη = Id", || c.object_name(x).to_string());
        }
        let d = self.left.target();
        for y in 0..d.num_objects() {
            let gy = self.right.object(y);
            let g_eps = self.right.apply_mor(self.counit.component(y)).expect("functor applies");
            let eta_g = self.unit.at(gy).expect("component");
            let ok = g_eps.compose(&eta_g).map(|m| m.is_identity()).unwrap_or(false);
            r.check(ok, "Gε∘ηG = Id", || d.object_name(y).to_string());
        }
        r
    }

    /// Functor laws, naturality and the triangle identities.
    pub fn validate_all(&self) -> ValidationReport {
        let mut r = ValidationReport::new(format!("adjunction {}", self.name));
        r.merge(self.left.validate());
        r.merge(self.right.validate());
        r.merge(self.unit.validate());
        r.merge(self.counit.validate());
        r.merge(self.validate());
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Field;
    use crate::fixtures;

    #[test]
    fn identity_adjunction_passes() {
        let c2 = Arc::new(fixtures::c2(Field::Rationals));
        assert!(Adjunction::identity(&c2).validate_all().passed());
    }

    #[test]
    fn scaled_counit_fails() {
        let q = Field::Rationals;
        let c1 = Arc::new(fixtures::c1(q));
        let adj = Adjunction::identity(&c1);
        let bad = adj.with_counit(adj.counit().scale(&q.int(2))).unwrap();
        let r = bad.validate();
        assert!(!r.passed());
        assert_eq!(r.violations.len(), 2);
    }
}
