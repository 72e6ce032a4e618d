use std::sync::Arc;

use super::functor::Functor;
use crate::error::{Error, Result};
use crate::lincat::{Mor, Obj};
use crate::report::ValidationReport;

/// A natural transformation `τ: F → F'`, given by its components at base
/// objects.
///
/// At a closure object `(X, e)` the component is `F'(e) ∘ diag(τ) ∘ F(e)`.
#[derive(Clone, Debug)]
pub struct NatTrans {
    name: String,
    from: Arc<Functor>,
    to: Arc<Functor>,
    components: Vec<Mor>,
}

impl NatTrans {
    pub fn new(name: impl Into<String>, from: &Arc<Functor>, to: &Arc<Functor>, components: Vec<Mor>) -> Result<NatTrans> {
        let n = from.source().num_objects();
        if components.len() != n {
            return Err(Error::DimensionMismatch(format!("{} components for {n} objects", components.len())));
        }
        if !crate::lincat::same_category(from.source(), to.source()) || !crate::lincat::same_category(from.target(), to.target()) {
            return Err(Error::CategoryMismatch(format!("{} and {} are not parallel", from.name(), to.name())));
        }
        for (x, c) in components.iter().enumerate() {
            if c.dom() != from.object(x) || c.cod() != to.object(x) {
                return Err(Error::ObjectMismatch(format!(
                    "component at {} is {} → {}, expected {} → {}",
                    from.source().object_name(x),
                    c.dom(),
                    c.cod(),
                    from.object(x),
                    to.object(x)
                )));
            }
        }
        Ok(NatTrans { name: name.into(), from: from.clone(), to: to.clone(), components })
    }

    pub fn identity(f: &Arc<Functor>) -> NatTrans {
        let components = f.objects().iter().map(Mor::identity).collect();
        NatTrans { name: format!("1_{}", f.name()), from: f.clone(), to: f.clone(), components }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> NatTrans {
        self.name = name.into();
        self
    }

    pub fn from(&self) -> &Arc<Functor> {
        &self.from
    }

    pub fn to(&self) -> &Arc<Functor> {
        &self.to
    }

    pub fn component(&self, x: usize) -> &Mor {
        &self.components[x]
    }

    pub fn components(&self) -> &[Mor] {
        &self.components
    }

    /// Component at an arbitrary closure object.
    pub fn at(&self, x: &Obj) -> Result<Mor> {
        let fx = self.from.apply_obj(x)?;
        let gx = self.to.apply_obj(x)?;
        if x.len() == 1 && x.is_plain() {
            return Ok(self.components[x.summands()[0]].clone());
        }
        let parts: Vec<Mor> = x.summands().iter().map(|&s| self.components[s].clone()).collect();
        let diag = if parts.is_empty() { Mor::zero(&fx.plain_part(), &gx.plain_part()) } else { Mor::direct_sum(&parts)? };
        if x.is_plain() {
            return Ok(diag);
        }
        let e = x.idempotent();
        let fe = self.from.apply_mor(&e)?;
        let ge = self.to.apply_mor(&e)?;
        let m = ge.compose(&diag)?.compose(&fe)?;
        Mor::unchecked(&fx, &gx, m.blocks().clone())
    }

    /// Naturality squares on every basis morphism.
    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::new(format!("natural transformation {}", self.name));
        let c = self.from.source();
        let n = c.num_objects();
        for x in 0..n {
            for y in 0..n {
                for a in 0..c.dim(x, y) {
                    let lhs = self.components[y].compose(self.from.hom(x, y, a)).expect("composable");
                    let rhs = self.to.hom(x, y, a).compose(&self.components[x]).expect("composable");
                    r.check(lhs == rhs, "naturality", || c.basis_names(x, y)[a].clone());
                }
            }
        }
        r
    }

    /// `self ∘ other` (vertical composition).
    pub fn vcompose(&self, other: &NatTrans) -> Result<NatTrans> {
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.compose(b))
            .collect::<Result<Vec<_>>>()?;
        NatTrans::new(format!("{}∘{}", self.name, other.name), &other.from, &self.to, components)
    }

    /// `τ H`: components `τ_{H x}` for `τ: F → F'` and `H` landing in the
    /// source of `F`.
    pub fn whisker_right(&self, h: &Arc<Functor>) -> Result<NatTrans> {
        let from = Arc::new(Functor::compose(&self.from, h)?);
        let to = Arc::new(Functor::compose(&self.to, h)?);
        let components = h.objects().iter().map(|o| self.at(o)).collect::<Result<Vec<_>>>()?;
        NatTrans::new(format!("{}{}", self.name, h.name()), &from, &to, components)
    }

    /// `H τ`: components `H(τ_x)`.
    pub fn whisker_left(&self, h: &Arc<Functor>) -> Result<NatTrans> {
        let from = Arc::new(Functor::compose(h, &self.from)?);
        let to = Arc::new(Functor::compose(h, &self.to)?);
        let components = self.components.iter().map(|c| h.apply_mor(c)).collect::<Result<Vec<_>>>()?;
        NatTrans::new(format!("{}{}", h.name(), self.name), &from, &to, components)
    }

    pub fn scale(&self, s: &crate::exactlin::Scalar) -> NatTrans {
        NatTrans {
            name: format!("{s}·{}", self.name),
            from: self.from.clone(),
            to: self.to.clone(),
            components: self.components.iter().map(|c| c.scale(s)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Field;
    use crate::fixtures;

    #[test]
    fn identity_is_natural() {
        let c2 = Arc::new(fixtures::c2(Field::Rationals));
        let id = Arc::new(Functor::identity(&c2));
        assert!(NatTrans::identity(&id).validate().passed());
    }

    #[test]
    fn non_natural_family_detected() {
        let q = Field::Rationals;
        let c2 = Arc::new(fixtures::c2(q));
        let id = Arc::new(Functor::identity(&c2));
        let comps = vec![Mor::identity(&Obj::base(&c2, 0)), Mor::identity(&Obj::base(&c2, 1)).scale(&q.int(2))];
        let t = NatTrans::new("bad", &id, &id, comps).unwrap();
        let r = t.validate();
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].location, "a");
    }

    #[test]
    fn karoubi_component_is_absorbed() {
        let q = Field::Rationals;
        let c1 = Arc::new(fixtures::c1(q));
        let id = Arc::new(Functor::identity(&c1));
        let t = NatTrans::identity(&id).scale(&q.int(3));
        let x = Obj::plain(&c1, vec![0, 0]);
        let e = Mor::from_ambient(&x, &x, &[q.zero(), q.zero(), q.zero(), q.one()]).unwrap();
        let small = Obj::image(&e).unwrap();
        let c = t.at(&small).unwrap();
        assert_eq!(c, Mor::identity(&small).scale(&q.int(3)));
    }
}
