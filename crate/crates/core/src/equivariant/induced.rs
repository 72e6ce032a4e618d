use std::sync::Arc;

use super::action::{push_equivariance, EquivObject, StrictAction};
use crate::eilenberg_moore::MModule;
use crate::error::{Error, Result};
use crate::exactlin::div_by_int;
use crate::functorial::{Adjunction, Functor, NatTrans};
use crate::lincat::{inverse, Blocks, Category, FullSubcategory, Mor, Obj};
use crate::monadic::Monad;

impl StrictAction {
    /// Index of `^g x` for a base object `x`.
    pub fn perm(&self, g: usize, x: usize) -> usize {
        self.phi(g).object(x).summands()[0]
    }

    /// `⊕_h ^h X` in group order, with each summand `s` of `X` expanded in
    /// place to `⊕_h ^h s`.
    pub fn induced_obj(&self, x: &Obj) -> Result<Obj> {
        let n = self.group().order();
        let summands = x.summands().iter().flat_map(|&s| (0..n).map(move |h| (s, h))).map(|(s, h)| self.perm(h, s)).collect();
        let plain = Obj::plain(self.base(), summands);
        if x.is_plain() {
            return Ok(plain);
        }
        let e = self.induced_mor(&x.idempotent())?;
        Obj::image(&e.retype(&plain, &plain)?)
    }

    /// `⊕_h ^h f` in the ordering of [`StrictAction::induced_obj`].
    pub fn induced_mor(&self, f: &Mor) -> Result<Mor> {
        let n = self.group().order();
        let dom = self.induced_obj(f.dom())?;
        let cod = self.induced_obj(f.cod())?;
        let mut blocks = Blocks::zero(cod.len(), dom.len());
        for h in 0..n {
            let hf = self.act_mor(h, f)?;
            for (i, j, v) in hf.blocks().iter() {
                blocks.set(i * n + h, j * n + h, v.clone());
            }
        }
        Mor::unchecked(&dom, &cod, blocks)
    }

    /// `F(x)` for a base object: carrier `⊕_h ^h x`, `α_g` the permutation
    /// with identity blocks at `(h', k)` whenever `g h' = k`.
    pub fn free_object(&self, x: usize) -> Result<EquivObject> {
        let grp = self.group();
        let n = grp.order();
        let carrier = self.induced_obj(&Obj::base(self.base(), x))?;
        let mut alpha = Vec::with_capacity(n);
        for g in 0..n {
            let target = self.act_obj(g, &carrier)?;
            let mut blocks = Blocks::zero(n, n);
            for h in 0..n {
                let k = grp.mul(g, h);
                blocks.set(h, k, self.base().identity_vec(self.perm(k, x)).to_vec());
            }
            alpha.push(Mor::new(&carrier, &target, blocks)?);
        }
        EquivObject::new(format!("F({})", self.base().object_name(x)), self, carrier, alpha)
    }
}

/// A finite full subcategory of equivariant objects: `F(x)` for every base
/// object (in base order) followed by samples.
#[derive(Clone, Debug)]
pub struct EquivariantCategory {
    action: Arc<StrictAction>,
    objects: Vec<EquivObject>,
    sub: FullSubcategory,
}

impl EquivariantCategory {
    pub fn build(action: &Arc<StrictAction>, samples: Vec<EquivObject>) -> Result<EquivariantCategory> {
        let c = action.base();
        let mut objects = Vec::with_capacity(c.num_objects() + samples.len());
        for x in 0..c.num_objects() {
            objects.push(action.free_object(x)?);
        }
        for z in samples {
            z.validate(action).into_result()?;
            objects.push(z);
        }
        let mut names: Vec<String> = Vec::with_capacity(objects.len());
        for z in &objects {
            if names.iter().any(|n| n == z.name()) {
                return Err(Error::Invalid(format!("duplicate equivariant object name {}", z.name())));
            }
            names.push(z.name().to_string());
        }
        let carriers = objects.iter().map(|z| z.carrier().clone()).collect();
        let sub = FullSubcategory::build(format!("{}^{}", c.name(), action.group().name()), names, carriers, |x, y, f, r| {
            push_equivariance(action, &objects[x], &objects[y], f, r)
        })?;
        Ok(EquivariantCategory { action: action.clone(), objects, sub })
    }

    pub fn action(&self) -> &Arc<StrictAction> {
        &self.action
    }

    pub fn pres(&self) -> &Arc<Category> {
        self.sub.pres()
    }

    pub fn sub(&self) -> &FullSubcategory {
        &self.sub
    }

    pub fn objects(&self) -> &[EquivObject] {
        &self.objects
    }

    pub fn object(&self, j: usize) -> &EquivObject {
        &self.objects[j]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|z| z.name() == name)
    }

    /// Number of induced objects `F(x)` at the front.
    pub fn free_count(&self) -> usize {
        self.action.base().num_objects()
    }

    /// The induction functor `F: A → A^G`.
    pub fn induction(&self) -> Result<Functor> {
        let c = self.action.base();
        let p = self.pres();
        let objects = (0..c.num_objects()).map(|x| Obj::base(p, x)).collect();
        Functor::new("F", c, p, objects, |x, y, a| {
            let m = self.action.induced_mor(&Mor::basis(c, x, y, a))?;
            self.sub.descend(&Obj::base(p, x), &Obj::base(p, y), &m)
        })
    }

    /// The forgetful functor `U: A^G → A`.
    pub fn forgetful(&self) -> Result<Functor> {
        let objects = self.sub.carriers().to_vec();
        Functor::new("U", self.pres(), self.action.base(), objects, |j, k, b| Ok(self.sub.space(j, k).basis()[b].clone()))
    }

    /// `η_x = (Id, 0, …, 0)^t: x → ⊕_h ^h x`.
    pub fn unit_component(&self, x: usize) -> Result<Mor> {
        let c = self.action.base();
        let xo = Obj::base(c, x);
        let cod = self.action.induced_obj(&xo)?;
        let mut blocks = Blocks::zero(cod.len(), 1);
        blocks.set(self.action.group().unit(), 0, c.identity_vec(x).to_vec());
        Mor::new(&xo, &cod, blocks)
    }

    /// `Σ_h β_h^{-1}` as an ambient morphism `⊕_i ⊕_h ^h y_i → Y`.
    fn counit_ambient(&self, z: &EquivObject, dom: &Obj) -> Result<Mor> {
        let n = self.action.group().order();
        let y = z.carrier();
        let mut blocks = Blocks::zero(y.len(), dom.len());
        for h in 0..n {
            let inv = z.alpha_inv(&self.action, h)?;
            for (r, i, v) in inv.blocks().iter() {
                blocks.set(r, i * n + h, v.clone());
            }
        }
        Mor::new(dom, y, blocks)
    }

    pub fn counit_component(&self, f: &Functor, j: usize) -> Result<Mor> {
        let z = &self.objects[j];
        let fu = f.apply_obj(z.carrier())?;
        let amb = self.counit_ambient(z, &self.sub.lift_obj(&fu)?)?;
        self.sub.descend(&fu, &Obj::base(self.pres(), j), &amb)
    }

    /// The component `ξ_z = (1/|G|)·(α_h)_h: X → ⊕_i ⊕_h ^h x_i`, lifted.
    pub fn xi_ambient(&self, z: &EquivObject) -> Result<Mor> {
        let grp = self.action.group();
        let n = grp.order();
        let field = self.action.field();
        if !field.int_invertible(n as u64) {
            return Err(Error::NotInvertible { n: n as u64, characteristic: field.characteristic() });
        }
        let x = z.carrier();
        let cod = self.sub.lift_obj(&self.induction()?.apply_obj(x)?)?;
        let mut blocks = Blocks::zero(cod.len(), x.len());
        for h in 0..n {
            for (i, r, v) in z.alpha(h).blocks().iter() {
                let scaled = v.iter().map(|s| div_by_int(s, n as u64)).collect::<Result<Vec<_>>>()?;
                blocks.set(i * n + h, r, scaled);
            }
        }
        Mor::new(x, &cod, blocks)
    }
}

/// The induction/forgetful adjunction `F ⊣ U` on a finite equivariant
/// category, with `η_x = (Id, 0, …, 0)^t` and `ε_{(Y, β)} = Σ_h β_h^{-1}`.
pub fn induce_adjunction(action: &Arc<StrictAction>, samples: Vec<EquivObject>) -> Result<(EquivariantCategory, Adjunction)> {
    let cat = EquivariantCategory::build(action, samples)?;
    let f = Arc::new(cat.induction()?);
    let u = Arc::new(cat.forgetful()?);
    let c = action.base();
    let unit = (0..c.num_objects()).map(|x| cat.unit_component(x)).collect::<Result<Vec<_>>>()?;
    let counit = (0..cat.objects.len()).map(|j| cat.counit_component(&f, j)).collect::<Result<Vec<_>>>()?;
    let adj = Adjunction::new(format!("F ⊣ U for {}", action.name()), &f, &u, unit, counit)?;
    adj.validate_all().into_result()?;
    Ok((cat, adj))
}

/// The group monad `M(X) = ⊕_h ^h X` with `μ` given by Kronecker deltas:
/// the block of `μ_x` at `(r, (h, k))` is `Id` exactly when `k h = r`.
pub fn equivariant_monad(action: &StrictAction) -> Result<Monad> {
    let c = action.base();
    let grp = action.group();
    let n = grp.order();
    let objects = (0..c.num_objects()).map(|x| action.induced_obj(&Obj::base(c, x))).collect::<Result<Vec<_>>>()?;
    let m = Arc::new(Functor::new("M", c, c, objects, |x, y, a| action.induced_mor(&Mor::basis(c, x, y, a)))?);
    let mut unit = Vec::with_capacity(c.num_objects());
    let mut mult = Vec::with_capacity(c.num_objects());
    for x in 0..c.num_objects() {
        let xo = Obj::base(c, x);
        let mx = m.object(x).clone();
        let mut eta = Blocks::zero(n, 1);
        eta.set(grp.unit(), 0, c.identity_vec(x).to_vec());
        unit.push(Mor::new(&xo, &mx, eta)?);
        let mmx = m.apply_obj(&mx)?;
        let mut mu = Blocks::zero(n, n * n);
        for h in 0..n {
            for k in 0..n {
                let r = grp.mul(k, h);
                mu.set(r, h * n + k, c.identity_vec(action.perm(r, x)).to_vec());
            }
        }
        mult.push(Mor::new(&mmx, &mx, mu)?);
    }
    let monad = Monad::new(format!("{} monad of {}", grp.name(), action.name()), &m, unit, mult)?;
    monad.validate_all().into_result()?;
    Ok(monad)
}

/// `(X, α) ↦ (X, λ)` with `λ_h = α_h^{-1}`, placed on the summand `^h X` of
/// `M(X)`.
pub fn to_module(action: &StrictAction, monad: &Arc<Monad>, z: &EquivObject) -> Result<MModule> {
    let n = action.group().order();
    let x = z.carrier();
    let mx = monad.apply_obj(x)?;
    let mut blocks = Blocks::zero(x.len(), mx.len());
    for h in 0..n {
        let inv = z.alpha_inv(action, h)?;
        for (r, i, v) in inv.blocks().iter() {
            blocks.set(r, i * n + h, v.clone());
        }
    }
    MModule::new(z.name(), monad, x.clone(), Mor::new(&mx, x, blocks)?)
}

/// `(X, λ) ↦ (X, α)` with `α_h = λ_h^{-1}`.
pub fn to_equivariant(action: &StrictAction, m: &MModule) -> Result<EquivObject> {
    let grp = action.group();
    let n = grp.order();
    let x = m.carrier();
    let mut alpha = Vec::with_capacity(n);
    for h in 0..n {
        let hx = action.act_obj(h, x)?;
        let mut blocks = Blocks::zero(x.len(), hx.len());
        for i in 0..x.len() {
            for r in 0..x.len() {
                let v = m.action().block(r, i * n + h);
                if v.iter().any(|s| !s.is_zero()) {
                    blocks.set(r, i, v);
                }
            }
        }
        let lam_h = Mor::new(&hx, x, blocks)?;
        let a = inverse(&lam_h).ok_or_else(|| Error::NonInvertibleComponent(format!("λ_{} of {}", grp.element_name(h), m.name())))?;
        alpha.push(a);
    }
    EquivObject::new(m.name(), action, x.clone(), alpha)
}

/// `ξ_z` for the object `j` of the equivariant category, as a morphism
/// `z → FU(z)` of its presentation.
pub fn xi_forgetful(cat: &EquivariantCategory, adj: &Adjunction, j: usize) -> Result<Mor> {
    let z = &cat.objects[j];
    let amb = cat.xi_ambient(z)?;
    let fu = adj.left().apply_obj(z.carrier())?;
    let xi = cat.sub.descend(&Obj::base(cat.pres(), j), &fu, &amb)?;
    let eps = adj.counit().component(j);
    if !eps.compose(&xi)?.is_identity() {
        return Err(Error::LawViolation(format!("ε∘ξ ≠ Id at {}", z.name())));
    }
    Ok(xi)
}

/// `ξ: Id → FU` assembled from [`xi_forgetful`] and checked natural.
pub fn xi_nat(cat: &EquivariantCategory, adj: &Adjunction) -> Result<NatTrans> {
    let comps = (0..cat.objects.len()).map(|j| xi_forgetful(cat, adj, j)).collect::<Result<Vec<_>>>()?;
    let id = Arc::new(Functor::identity(cat.pres()));
    let xi = NatTrans::new("ξ", &id, adj.counit().from(), comps)?;
    xi.validate().into_result()?;
    Ok(xi)
}
