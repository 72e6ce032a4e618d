//! Monads on closures of presentations and sections of their multiplication.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::Infeasible;
use crate::functorial::{check_section, Adjunction, Functor, NatTrans};
use crate::lincat::{push_mor, Category, HomFamily, HomSpace, Mor, Obj};
use crate::report::ValidationReport;

/// A monad `(M, η, μ)` on the closure of a presentation.
#[derive(Clone, Debug)]
pub struct Monad {
    name: String,
    functor: Arc<Functor>,
    square: Arc<Functor>,
    unit: NatTrans,
    mult: NatTrans,
}

impl Monad {
    /// `unit[x]: x → M x`, `mult[x]: M M x → M x`.
    pub fn new(name: impl Into<String>, functor: &Arc<Functor>, unit: Vec<Mor>, mult: Vec<Mor>) -> Result<Monad> {
        if !crate::lincat::same_category(functor.source(), functor.target()) {
            return Err(Error::CategoryMismatch(format!("{} is not an endofunctor", functor.name())));
        }
        let id = Arc::new(Functor::identity(functor.source()));
        let square = Arc::new(Functor::compose(functor, functor)?);
        let unit = NatTrans::new("η", &id, functor, unit)?;
        let mult = NatTrans::new("μ", &square, functor, mult)?;
        Ok(Monad { name: name.into(), functor: functor.clone(), square, unit, mult })
    }

    pub fn identity(cat: &Arc<Category>) -> Monad {
        let id = Arc::new(Functor::identity(cat));
        let comps: Vec<Mor> = id.objects().iter().map(Mor::identity).collect();
        Monad::new(format!("id:{}", cat.name()), &id, comps.clone(), comps).expect("identity monad")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Monad {
        self.name = name.into();
        self
    }

    pub fn category(&self) -> &Arc<Category> {
        self.functor.source()
    }

    pub fn functor(&self) -> &Arc<Functor> {
        &self.functor
    }

    /// `M ∘ M`.
    pub fn square(&self) -> &Arc<Functor> {
        &self.square
    }

    pub fn unit(&self) -> &NatTrans {
        &self.unit
    }

    pub fn mult(&self) -> &NatTrans {
        &self.mult
    }

    pub fn apply_obj(&self, x: &Obj) -> Result<Obj> {
        self.functor.apply_obj(x)
    }

    pub fn apply_mor(&self, f: &Mor) -> Result<Mor> {
        self.functor.apply_mor(f)
    }

    /// Associativity and both unit laws at every base object.
    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::new(format!("monad {}", self.name));
        let c = self.category();
        for x in 0..c.num_objects() {
            let name = c.object_name(x);
            let mx = self.functor.object(x);
            let mu = self.mult.component(x);
            let lhs = self.functor.apply_mor(mu).and_then(|m| mu.compose(&m));
            let rhs = self.mult.at(mx).and_then(|m| mu.compose(&m));
            r.check(matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b), "μ∘Mμ = μ∘μM", || name.to_string());
            let left = self.functor.apply_mor(self.unit.component(x)).and_then(|m| mu.compose(&m));
            r.check(left.map(|m| m.is_identity()).unwrap_or(false), "μ∘Mη = Id", || name.to_string());
            let right = self.unit.at(mx).and_then(|m| mu.compose(&m));
            r.check(right.map(|m| m.is_identity()).unwrap_or(false), "μ∘ηM = Id", || name.to_string());
        }
        r
    }

    /// Functor laws, naturality of η and μ, and the monad laws.
    pub fn validate_all(&self) -> ValidationReport {
        let mut r = ValidationReport::new(format!("monad {}", self.name));
        r.merge(self.functor.validate());
        r.merge(self.unit.validate());
        r.merge(self.mult.validate());
        r.merge(self.validate());
        r
    }

    /// Componentwise equality of `(M, η, μ)` on base objects.
    pub fn same_data(&self, other: &Monad) -> bool {
        self.functor.objects() == other.functor.objects()
            && self.unit.components() == other.unit.components()
            && self.mult.components() == other.mult.components()
    }
}

/// The monad `(GF, η, GεF)` of an adjunction.
pub fn monad_from_adjunction(adj: &Adjunction) -> Result<Monad> {
    let f = adj.left();
    let g = adj.right();
    let m = Arc::new(Functor::compose(g, f)?.with_name(format!("{}{}", g.name(), f.name())));
    let c = f.source();
    let mut mult = Vec::with_capacity(c.num_objects());
    for x in 0..c.num_objects() {
        mult.push(g.apply_mor(&adj.counit().at(f.object(x))?)?);
    }
    let monad = Monad::new(format!("monad of {}", adj.name()), &m, adj.unit().components().to_vec(), mult)?;
    monad.validate().into_result()?;
    Ok(monad)
}

/// A section `σ: M → M²` of the multiplication satisfying the bimodule laws.
#[derive(Clone, Debug)]
pub struct MonadSepWitness {
    monad: Monad,
    sigma: NatTrans,
}

impl MonadSepWitness {
    pub fn new(monad: &Monad, components: Vec<Mor>) -> Result<MonadSepWitness> {
        let sigma = NatTrans::new("σ", monad.functor(), monad.square(), components)?;
        Ok(MonadSepWitness { monad: monad.clone(), sigma })
    }

    pub fn monad(&self) -> &Monad {
        &self.monad
    }

    pub fn sigma(&self) -> &NatTrans {
        &self.sigma
    }

    /// Naturality of σ, `μ∘σ = Id` and `Mμ∘σM = σ∘μ = μM∘Mσ` at every base object.
    pub fn verify(&self) -> ValidationReport {
        let mut r = ValidationReport::new(format!("σ for {}", self.monad.name));
        r.merge(self.sigma.validate());
        let m = &self.monad;
        let c = m.category();
        for x in 0..c.num_objects() {
            let name = c.object_name(x);
            for (law, ok) in sigma_laws(m, &self.sigma, x) {
                r.check(ok, law, || name.to_string());
            }
        }
        r
    }
}

fn sigma_laws(m: &Monad, sigma: &NatTrans, x: usize) -> [(&'static str, bool); 3] {
    let mx = m.functor().object(x);
    let mu = m.mult().component(x);
    let s = sigma.component(x);
    let section = mu.compose(s).map(|v| v.is_identity()).unwrap_or(false);
    let mid = s.compose(mu).ok();
    let left = sigma.at(mx).and_then(|sm| m.apply_mor(mu)?.compose(&sm)).ok();
    let right = m.apply_mor(s).and_then(|ms| m.mult().at(mx)?.compose(&ms)).ok();
    [
        ("μ∘σ = Id", section),
        ("Mμ∘σM = σ∘μ", mid.is_some() && left == mid),
        ("σ∘μ = μM∘Mσ", mid.is_some() && right == mid),
    ]
}

/// Outcome of [`monad_separability_solve`].
#[derive(Clone, Debug)]
pub enum MonadSepOutcome {
    Separable { witness: MonadSepWitness, kernel: Vec<Vec<Mor>> },
    Infeasible(Infeasible),
}

impl MonadSepOutcome {
    pub fn is_separable(&self) -> bool {
        matches!(self, MonadSepOutcome::Separable { .. })
    }

    pub fn witness(self) -> Option<MonadSepWitness> {
        match self {
            MonadSepOutcome::Separable { witness, .. } => Some(witness),
            MonadSepOutcome::Infeasible(_) => None,
        }
    }
}

/// Decides whether the monad is separable by solving for the components of
/// σ in `Hom(M x, M² x)`.
pub fn monad_separability_solve(m: &Monad) -> Result<MonadSepOutcome> {
    let c = m.category().clone();
    let n = c.num_objects();
    let family =
        HomFamily::new((0..n).map(|x| HomSpace::new(m.functor().object(x), m.square().object(x))).collect());
    let sol = family.solve(c.field(), |comps, r| {
        let sigma = NatTrans::new("σ", m.functor(), m.square(), comps.to_vec()).expect("shapes");
        for x in 0..n {
            for y in 0..n {
                for a in 0..c.dim(x, y) {
                    let lhs = comps[y].compose(m.functor().hom(x, y, a)).expect("composable");
                    let rhs = m.square().hom(x, y, a).compose(&comps[x]).expect("composable");
                    push_mor(r, &lhs.sub(&rhs).expect("parallel"));
                }
            }
        }
        for x in 0..n {
            let mx = m.functor().object(x);
            let mu = m.mult().component(x);
            let s = &comps[x];
            push_mor(r, &mu.compose(s).unwrap().sub(&Mor::identity(mx)).unwrap());
            let mid = s.compose(mu).unwrap();
            let left = m.apply_mor(mu).unwrap().compose(&sigma.at(mx).unwrap()).unwrap();
            push_mor(r, &left.sub(&mid).unwrap());
            let right = m.mult().at(mx).unwrap().compose(&m.apply_mor(s).unwrap()).unwrap();
            push_mor(r, &right.sub(&mid).unwrap());
        }
    });
    match sol {
        crate::exactlin::Feasibility::Infeasible(i) => Ok(MonadSepOutcome::Infeasible(i)),
        crate::exactlin::Feasibility::Feasible((comps, kernel)) => {
            let witness = MonadSepWitness::new(m, comps)?;
            witness.verify().into_result()?;
            Ok(MonadSepOutcome::Separable { witness, kernel })
        }
    }
}

/// `σ = G ξ F` from a section `ξ: Id → FG` of the counit.
pub fn sigma_from_xi(adj: &Adjunction, xi: &NatTrans) -> Result<MonadSepWitness> {
    check_section(adj, xi).map_err(|e| Error::PreconditionFailed(e.to_string()))?;
    let monad = monad_from_adjunction(adj)?;
    let f = adj.left();
    let g = adj.right();
    let comps = (0..f.source().num_objects())
        .map(|x| g.apply_mor(&xi.at(f.object(x))?))
        .collect::<Result<Vec<_>>>()?;
    let w = MonadSepWitness::new(&monad, comps)?;
    w.verify().into_result()?;
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Field;
    use crate::fixtures;

    #[test]
    fn identity_monad_is_separable_with_identity_section() {
        let c2 = Arc::new(fixtures::c2(Field::Rationals));
        let m = Monad::identity(&c2);
        assert!(m.validate_all().passed());
        let w = monad_separability_solve(&m).unwrap().witness().unwrap();
        assert!(w.sigma().components().iter().all(Mor::is_identity));
    }

    #[test]
    fn identity_adjunction_gives_identity_monad() {
        let c2 = Arc::new(fixtures::c2(Field::Rationals));
        let adj = Adjunction::identity(&c2);
        let m = monad_from_adjunction(&adj).unwrap();
        assert!(m.same_data(&Monad::identity(&c2)));
        let xi = NatTrans::identity(adj.counit().to());
        let xi = NatTrans::new("ξ", &xi.from().clone(), adj.counit().from(), xi.components().to_vec()).unwrap();
        let w = sigma_from_xi(&adj, &xi).unwrap();
        assert!(w.sigma().components().iter().all(Mor::is_identity));
    }
}
