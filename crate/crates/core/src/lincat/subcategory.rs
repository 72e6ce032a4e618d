use std::sync::Arc;

use super::category::Category;
use super::closure::{Blocks, Mor, Obj};
use super::homspace::HomSpace;
use crate::error::{Error, Result};
use crate::exactlin::Residual;

/// A finitely presented category whose objects are chosen objects of some
/// closure and whose hom spaces are subspaces of the ambient hom spaces cut
/// out by a linear constraint.
///
/// Categories of equivariant objects and of modules over a monad are
/// presented this way, so the whole closure calculus applies to them.
#[derive(Clone, Debug)]
pub struct FullSubcategory {
    pres: Arc<Category>,
    carriers: Vec<Obj>,
    spaces: Vec<HomSpace>,
}

impl FullSubcategory {
    /// `constraint(x, y, f, r)` pushes the linear conditions a morphism
    /// `f: carriers[x] → carriers[y]` must satisfy.
    pub fn build(
        name: impl Into<String>,
        names: Vec<String>,
        carriers: Vec<Obj>,
        constraint: impl Fn(usize, usize, &Mor, &mut Residual),
    ) -> Result<FullSubcategory> {
        let n = carriers.len();
        if names.len() != n {
            return Err(Error::DimensionMismatch(format!("{} names for {n} objects", names.len())));
        }
        let field = carriers
            .first()
            .map(Obj::field)
            .ok_or_else(|| Error::Invalid("subcategory needs at least one object".into()))?;
        let mut spaces = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                spaces.push(HomSpace::constrained(&carriers[x], &carriers[y], |f, r| constraint(x, y, f, r)));
            }
        }
        let basis_names: Vec<Vec<String>> = (0..n * n)
            .map(|k| {
                let (x, y) = (k / n, k % n);
                (0..spaces[k].dim()).map(|i| format!("{}→{}#{i}", names[x], names[y])).collect()
            })
            .collect();
        let mut identities = Vec::with_capacity(n);
        for x in 0..n {
            identities.push(spaces[x * n + x].coords(&Mor::identity(&carriers[x])).map_err(|_| {
                Error::PreconditionFailed(format!("identity of {} violates the defining constraint", names[x]))
            })?);
        }
        let mut failure = None;
        let pres = Category::from_structure(name, field, names.clone(), basis_names, identities, |x, y, z, b, a| {
            let g = &spaces[y * n + z].basis()[b];
            let f = &spaces[x * n + y].basis()[a];
            let gf = g.compose(f).expect("composable");
            match spaces[x * n + z].coords(&gf) {
                Ok(c) => c,
                Err(_) => {
                    failure.get_or_insert_with(|| format!("{} → {} → {}", names[x], names[y], names[z]));
                    vec![field.zero(); spaces[x * n + z].dim()]
                }
            }
        })?;
        if let Some(loc) = failure {
            return Err(Error::PreconditionFailed(format!("constraint not closed under composition at {loc}")));
        }
        Ok(FullSubcategory { pres: Arc::new(pres), carriers, spaces })
    }

    pub fn pres(&self) -> &Arc<Category> {
        &self.pres
    }

    pub fn carrier(&self, x: usize) -> &Obj {
        &self.carriers[x]
    }

    pub fn carriers(&self) -> &[Obj] {
        &self.carriers
    }

    pub fn space(&self, x: usize, y: usize) -> &HomSpace {
        &self.spaces[x * self.carriers.len() + y]
    }

    /// The ambient object underlying a closure object of the subcategory.
    pub fn lift_obj(&self, x: &Obj) -> Result<Obj> {
        let parts: Vec<Obj> = x.summands().iter().map(|&s| self.carriers[s].clone()).collect();
        let plain = if parts.is_empty() {
            Obj::zero(self.carriers[0].cat())
        } else {
            Obj::direct_sum(&parts)?
        };
        if x.is_plain() {
            return Ok(plain);
        }
        let e = self.lift_blocks(x.summands(), x.summands(), x.idempotent_blocks(), &plain, &plain)?;
        Obj::image(&e)
    }

    fn lift_blocks(&self, src: &[usize], tgt: &[usize], b: &Blocks, dom: &Obj, cod: &Obj) -> Result<Mor> {
        let doms: Vec<Obj> = src.iter().map(|&s| self.carriers[s].clone()).collect();
        let cods: Vec<Obj> = tgt.iter().map(|&t| self.carriers[t].clone()).collect();
        let (co, ro) = (Obj::offsets(&doms), Obj::offsets(&cods));
        let mut blocks = Blocks::zero(cod.len(), dom.len());
        for (i, j, v) in b.iter() {
            let m = self.space(src[j], tgt[i]).combine(v);
            blocks.paste(ro[i], co[j], m.blocks());
        }
        Mor::unchecked(dom, cod, blocks)
    }

    /// The ambient morphism underlying a morphism of the subcategory closure.
    pub fn lift(&self, f: &Mor) -> Result<Mor> {
        let dom = self.lift_obj(f.dom())?;
        let cod = self.lift_obj(f.cod())?;
        let m = self.lift_blocks(f.dom().summands(), f.cod().summands(), f.blocks(), &dom.plain_part(), &cod.plain_part())?;
        Mor::new(&dom, &cod, m.blocks().clone())
    }

    /// The subcategory morphism `dom → cod` whose lift is `f`.
    pub fn descend(&self, dom: &Obj, cod: &Obj, f: &Mor) -> Result<Mor> {
        let amb_dom = self.lift_obj(dom)?;
        let amb_cod = self.lift_obj(cod)?;
        if f.dom() != &amb_dom || f.cod() != &amb_cod {
            return Err(Error::ObjectMismatch(format!("{} → {} does not lie over {} → {}", f.dom(), f.cod(), dom, cod)));
        }
        let doms: Vec<Obj> = dom.summands().iter().map(|&s| self.carriers[s].clone()).collect();
        let cods: Vec<Obj> = cod.summands().iter().map(|&t| self.carriers[t].clone()).collect();
        let (co, ro) = (Obj::offsets(&doms), Obj::offsets(&cods));
        let mut blocks = Blocks::zero(cod.len(), dom.len());
        for (i, t) in cod.summands().iter().enumerate() {
            for (j, s) in dom.summands().iter().enumerate() {
                let part = Mor::unchecked(&doms[j], &cods[i], f.blocks().slice(ro[i], cods[i].len(), co[j], doms[j].len()))?;
                blocks.set(i, j, self.space(*s, *t).coords(&part)?);
            }
        }
        Mor::new(dom, cod, blocks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Field;
    use crate::fixtures;

    #[test]
    fn unconstrained_subcategory_matches_ambient() {
        let q = Field::Rationals;
        let c2 = Arc::new(fixtures::c2(q));
        let carriers = vec![Obj::base(&c2, 0), Obj::plain(&c2, vec![0, 1])];
        let sub = FullSubcategory::build("S", vec!["p".into(), "q".into()], carriers, |_, _, _, _| {}).unwrap();
        assert!(sub.pres().validate().passed());
        assert_eq!(sub.pres().dim(0, 1), 2);
        assert_eq!(sub.pres().dim(1, 0), 1);
        let f = Mor::basis(sub.pres(), 0, 1, 1);
        let lifted = sub.lift(&f).unwrap();
        assert_eq!(sub.descend(f.dom(), f.cod(), &lifted).unwrap(), f);
    }
}
