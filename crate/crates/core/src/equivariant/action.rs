use std::sync::Arc;

use super::group::FiniteGroup;
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Scalar};
use crate::functorial::Functor;
use crate::lincat::{inverse, push_mor, Category, HomSpace, Mor, Obj};
use crate::report::ValidationReport;

/// A strict action of a finite group on a presentation: one automorphism
/// `Φ_g` per element, with `Φ_e = Id` and `Φ_g Φ_h = Φ_{gh}` on the nose.
#[derive(Clone, Debug)]
pub struct StrictAction {
    name: String,
    group: Arc<FiniteGroup>,
    base: Arc<Category>,
    phis: Vec<Arc<Functor>>,
}

impl StrictAction {
    pub fn new(name: impl Into<String>, group: &Arc<FiniteGroup>, base: &Arc<Category>, phis: Vec<Functor>) -> Result<StrictAction> {
        if phis.len() != group.order() {
            return Err(Error::DimensionMismatch(format!("{} automorphisms for a group of order {}", phis.len(), group.order())));
        }
        for p in &phis {
            if !crate::lincat::same_category(p.source(), base) || !crate::lincat::same_category(p.target(), base) {
                return Err(Error::CategoryMismatch(format!("{} is not an endofunctor of {}", p.name(), base.name())));
            }
        }
        Ok(StrictAction { name: name.into(), group: group.clone(), base: base.clone(), phis: phis.into_iter().map(Arc::new).collect() })
    }

    pub fn trivial(group: &Arc<FiniteGroup>, base: &Arc<Category>) -> StrictAction {
        let id = Arc::new(Functor::identity(base));
        StrictAction {
            name: format!("{} trivial on {}", group.name(), base.name()),
            group: group.clone(),
            base: base.clone(),
            phis: vec![id; group.order()],
        }
    }

    /// An action permuting base objects (`perm[g][x]` is the image of `x`)
    /// and acting on each hom basis by the given matrices; `homs(g, x, y)`
    /// returns the matrix of `Φ_g` from the basis of `Hom(x, y)` to that of
    /// `Hom(gx, gy)` (columns are images).
    pub fn permuting(
        name: impl Into<String>,
        group: &Arc<FiniteGroup>,
        base: &Arc<Category>,
        perm: Vec<Vec<usize>>,
        homs: impl Fn(usize, usize, usize) -> Matrix,
    ) -> Result<StrictAction> {
        let mut phis = Vec::with_capacity(group.order());
        for g in 0..group.order() {
            let objects: Vec<Obj> = perm[g].iter().map(|&x| Obj::base(base, x)).collect();
            let phi = Functor::new(format!("Φ_{}", group.element_name(g)), base, base, objects, |x, y, a| {
                let m = homs(g, x, y);
                Mor::from_vec(base, perm[g][x], perm[g][y], m.column(a))
            })?;
            phis.push(phi);
        }
        StrictAction::new(name, group, base, phis)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> StrictAction {
        self.name = name.into();
        self
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn base(&self) -> &Arc<Category> {
        &self.base
    }

    pub fn field(&self) -> Field {
        self.base.field()
    }

    pub fn phi(&self, g: usize) -> &Arc<Functor> {
        &self.phis[g]
    }

    /// `^g X`.
    pub fn act_obj(&self, g: usize, x: &Obj) -> Result<Obj> {
        self.phis[g].apply_obj(x)
    }

    /// `^g f`.
    pub fn act_mor(&self, g: usize, f: &Mor) -> Result<Mor> {
        self.phis[g].apply_mor(f)
    }

    /// Strictness: `Φ_e = Id`, `Φ_g Φ_h = Φ_{gh}` on objects and basis
    /// morphisms, each `Φ_g` a functor permuting base objects.
    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::new(format!("action {}", self.name));
        r.merge(self.group.validate());
        let c = &self.base;
        let n = c.num_objects();
        let grp = &self.group;
        for g in 0..grp.order() {
            r.merge(self.phis[g].validate());
            let mut seen = vec![false; n];
            let permutes = self.phis[g].objects().iter().all(|o| {
                if o.is_plain() && o.len() == 1 && !seen[o.summands()[0]] {
                    seen[o.summands()[0]] = true;
                    true
                } else {
                    false
                }
            });
            r.check(permutes, "permutes base objects", || grp.element_name(g).to_string());
        }
        let e = grp.unit();
        for x in 0..n {
            r.check(self.phis[e].object(x) == &Obj::base(c, x), "Φ_e = Id", || c.object_name(x).to_string());
            for y in 0..n {
                for a in 0..c.dim(x, y) {
                    r.check(self.phis[e].hom(x, y, a) == &Mor::basis(c, x, y, a), "Φ_e = Id", || c.basis_names(x, y)[a].clone());
                }
            }
        }
        for g in 0..grp.order() {
            for h in 0..grp.order() {
                let gh = grp.mul(g, h);
                let loc = || format!("({}, {})", grp.element_name(g), grp.element_name(h));
                let comp = match Functor::compose(&self.phis[g], &self.phis[h]) {
                    Ok(f) => f,
                    Err(_) => {
                        r.fail("Φ_g Φ_h = Φ_gh", loc());
                        continue;
                    }
                };
                let same = comp.objects() == self.phis[gh].objects()
                    && (0..n).all(|x| (0..n).all(|y| (0..c.dim(x, y)).all(|a| comp.hom(x, y, a) == self.phis[gh].hom(x, y, a))));
                r.check(same, "Φ_g Φ_h = Φ_gh", loc);
            }
        }
        r
    }
}

/// An equivariant object `(X, α)`, `α_g: X → ^g X`.
#[derive(Clone, Debug)]
pub struct EquivObject {
    name: String,
    carrier: Obj,
    alpha: Vec<Mor>,
}

impl EquivObject {
    pub fn new(name: impl Into<String>, action: &StrictAction, carrier: Obj, alpha: Vec<Mor>) -> Result<EquivObject> {
        if alpha.len() != action.group().order() {
            return Err(Error::DimensionMismatch(format!("{} structure maps for a group of order {}", alpha.len(), action.group().order())));
        }
        for (g, a) in alpha.iter().enumerate() {
            let target = action.act_obj(g, &carrier)?;
            if a.dom() != &carrier || a.cod() != &target {
                return Err(Error::ObjectMismatch(format!(
                    "α_{} is {} → {}, expected {} → {}",
                    action.group().element_name(g),
                    a.dom(),
                    a.cod(),
                    carrier,
                    target
                )));
            }
        }
        Ok(EquivObject { name: name.into(), carrier, alpha })
    }

    /// `n` copies of a base object fixed by the action, with `α_g` given by
    /// matrices `ρ(g)` (`α_g` has block `(i, j)` equal to `ρ(g)_{ij}·id`).
    pub fn from_matrices(name: impl Into<String>, action: &StrictAction, x: usize, rho: &[Matrix]) -> Result<EquivObject> {
        let c = action.base();
        let d = rho.first().map(Matrix::rows).unwrap_or(0);
        let carrier = Obj::plain(c, vec![x; d]);
        let mut alpha = Vec::with_capacity(rho.len());
        for (g, m) in rho.iter().enumerate() {
            let target = action.act_obj(g, &carrier)?;
            let mut blocks = crate::lincat::Blocks::zero(d, d);
            for i in 0..d {
                for j in 0..d {
                    let s = m.get(i, j);
                    if !s.is_zero() {
                        let id = c.identity_vec(x);
                        blocks.set(i, j, id.iter().map(|v| v * s).collect());
                    }
                }
            }
            alpha.push(Mor::new(&carrier, &target, blocks)?);
        }
        EquivObject::new(name, action, carrier, alpha)
    }

    /// A one-dimensional object on a fixed base object with scalar structure maps.
    pub fn character(name: impl Into<String>, action: &StrictAction, x: usize, chi: &[Scalar]) -> Result<EquivObject> {
        let f = action.field();
        let rho: Vec<Matrix> = chi.iter().map(|s| Matrix::new(f, 1, 1, vec![s.clone()]).unwrap()).collect();
        EquivObject::from_matrices(name, action, x, &rho)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn carrier(&self) -> &Obj {
        &self.carrier
    }

    pub fn alpha(&self, g: usize) -> &Mor {
        &self.alpha[g]
    }

    pub fn alphas(&self) -> &[Mor] {
        &self.alpha
    }

    /// `α_g^{-1} = ^g(α_{g^{-1}})`, valid whenever the cocycle holds.
    pub fn alpha_inv(&self, action: &StrictAction, g: usize) -> Result<Mor> {
        let gi = action.group().inv(g);
        action.act_mor(g, &self.alpha[gi])
    }

    /// Cocycle `^g(α_{g'}) ∘ α_g = α_{gg'}`, `α_e = Id`, and invertibility
    /// of every `α_g`.
    pub fn validate(&self, action: &StrictAction) -> ValidationReport {
        let mut r = ValidationReport::new(format!("equivariant object {}", self.name));
        let grp = action.group();
        r.check(self.alpha[grp.unit()].is_identity(), "α_e = Id", String::new);
        for g in 0..grp.order() {
            for h in 0..grp.order() {
                let lhs = action.act_mor(g, &self.alpha[h]).and_then(|m| m.compose(&self.alpha[g]));
                let ok = matches!(lhs, Ok(m) if m == self.alpha[grp.mul(g, h)]);
                r.check(ok, "cocycle", || format!("({}, {})", grp.element_name(g), grp.element_name(h)));
            }
            r.check(inverse(&self.alpha[g]).is_some(), "α_g invertible", || grp.element_name(g).to_string());
        }
        r
    }

    pub fn same_data(&self, other: &EquivObject) -> bool {
        self.carrier == other.carrier && self.alpha == other.alpha
    }
}

/// The equivariant morphisms `θ: X → Y` with `β_g ∘ θ = ^gθ ∘ α_g`.
pub fn eq_hom_basis(action: &StrictAction, a: &EquivObject, b: &EquivObject) -> HomSpace {
    HomSpace::constrained(a.carrier(), b.carrier(), |theta, r| push_equivariance(action, a, b, theta, r))
}

pub(crate) fn push_equivariance(action: &StrictAction, a: &EquivObject, b: &EquivObject, theta: &Mor, r: &mut crate::exactlin::Residual) {
    for g in 0..action.group().order() {
        let lhs = b.alpha(g).compose(theta).expect("composable");
        let rhs = action.act_mor(g, theta).expect("applies").compose(a.alpha(g)).expect("composable");
        push_mor(r, &lhs.sub(&rhs).expect("parallel"));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn trivial_and_swap_actions_validate() {
        let q = Field::Rationals;
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let c1 = Arc::new(fixtures::c1(q));
        assert!(StrictAction::trivial(&z2, &c1).validate().passed());
        let swap = fixtures::swap_action(q);
        let r = swap.validate();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn non_involution_fails_strictness() {
        let q = Field::Rationals;
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let c2 = Arc::new(fixtures::c2(q));
        let action = StrictAction::permuting("doubling", &z2, &c2, vec![vec![0, 1], vec![0, 1]], |g, x, y| {
            let k = if g == 1 && x != y { 2 } else { 1 };
            Matrix::from_ints(q, &[&[k]])
        })
        .unwrap();
        let r = action.validate();
        assert!(r.violations.iter().any(|v| v.law == "Φ_g Φ_h = Φ_gh"));
    }

    #[test]
    fn character_hom_dimensions() {
        let q = Field::Rationals;
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let c1 = Arc::new(fixtures::c1(q));
        let act = StrictAction::trivial(&z2, &c1);
        let triv = EquivObject::character("triv", &act, 0, &[q.one(), q.one()]).unwrap();
        let sign = EquivObject::character("sign", &act, 0, &[q.one(), q.int(-1)]).unwrap();
        assert!(triv.validate(&act).passed() && sign.validate(&act).passed());
        assert_eq!(eq_hom_basis(&act, &triv, &triv).dim(), 1);
        assert_eq!(eq_hom_basis(&act, &triv, &sign).dim(), 0);
        assert!(eq_hom_basis(&act, &sign, &sign).contains(&Mor::identity(sign.carrier())));
    }

    #[test]
    fn bad_cocycle_detected() {
        let q = Field::Rationals;
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let c1 = Arc::new(fixtures::c1(q));
        let act = StrictAction::trivial(&z2, &c1);
        let bad = EquivObject::character("bad", &act, 0, &[q.one(), q.int(2)]).unwrap();
        assert!(bad.validate(&act).violations.iter().any(|v| v.law == "cocycle"));
    }
}
