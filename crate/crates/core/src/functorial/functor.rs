use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::Scalar;
use crate::lincat::{Blocks, Category, Mor, Obj};
use crate::report::ValidationReport;

/// A k-linear functor between presentations, given on base objects and basis
/// morphisms and extended blockwise to the closure.
///
/// On a Karoubi object `(X, e)` the image is `(F(X), F(e))`.
#[derive(Clone)]
pub struct Functor {
    name: String,
    source: Arc<Category>,
    target: Arc<Category>,
    objects: Vec<Obj>,
    homs: Vec<Vec<Mor>>,
    identity: bool,
}

impl fmt::Debug for Functor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Functor({}: {} → {})", self.name, self.source.name(), self.target.name())
    }
}

impl Functor {
    /// `homs(x, y, a)` is the image of basis morphism `a ∈ Hom(x, y)`.
    pub fn new(
        name: impl Into<String>,
        source: &Arc<Category>,
        target: &Arc<Category>,
        objects: Vec<Obj>,
        mut homs: impl FnMut(usize, usize, usize) -> Result<Mor>,
    ) -> Result<Functor> {
        let n = source.num_objects();
        if objects.len() != n {
            return Err(Error::DimensionMismatch(format!("{} object images for {n} objects", objects.len())));
        }
        for o in &objects {
            if !crate::lincat::same_category(o.cat(), target) {
                return Err(Error::CategoryMismatch(format!("object image {o} is not over {}", target.name())));
            }
        }
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let mut row = Vec::with_capacity(source.dim(x, y));
                for a in 0..source.dim(x, y) {
                    let m = homs(x, y, a)?;
                    if m.dom() != &objects[x] || m.cod() != &objects[y] {
                        return Err(Error::ObjectMismatch(format!(
                            "image of {} is {} → {}, expected {} → {}",
                            source.basis_names(x, y)[a],
                            m.dom(),
                            m.cod(),
                            objects[x],
                            objects[y]
                        )));
                    }
                    row.push(m);
                }
                table.push(row);
            }
        }
        Ok(Functor {
            name: name.into(),
            source: source.clone(),
            target: target.clone(),
            objects,
            homs: table,
            identity: false,
        })
    }

    pub fn identity(cat: &Arc<Category>) -> Functor {
        let n = cat.num_objects();
        let objects = (0..n).map(|x| Obj::base(cat, x)).collect();
        let homs = (0..n * n)
            .map(|k| (0..cat.dim(k / n, k % n)).map(|a| Mor::basis(cat, k / n, k % n, a)).collect())
            .collect();
        Functor {
            name: format!("id:{}", cat.name()),
            source: cat.clone(),
            target: cat.clone(),
            objects,
            homs,
            identity: true,
        }
    }

    /// `outer ∘ inner`.
    pub fn compose(outer: &Functor, inner: &Functor) -> Result<Functor> {
        if !crate::lincat::same_category(&inner.target, &outer.source) {
            return Err(Error::CategoryMismatch(format!(
                "{} lands in {} but {} starts at {}",
                inner.name,
                inner.target.name(),
                outer.name,
                outer.source.name()
            )));
        }
        if inner.identity {
            return Ok(outer.clone());
        }
        if outer.identity {
            return Ok(inner.clone());
        }
        let objects: Vec<Obj> = inner.objects.iter().map(|o| outer.apply_obj(o)).collect::<Result<_>>()?;
        let homs = inner
            .homs
            .iter()
            .map(|row| row.iter().map(|m| outer.apply_mor(m)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Functor {
            name: format!("{}*{}", outer.name, inner.name),
            source: inner.source.clone(),
            target: outer.target.clone(),
            objects,
            homs,
            identity: false,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Functor {
        self.name = name.into();
        self
    }

    pub fn source(&self) -> &Arc<Category> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Category> {
        &self.target
    }

    pub fn is_identity(&self) -> bool {
        self.identity
    }

    /// Image of a base object.
    pub fn object(&self, x: usize) -> &Obj {
        &self.objects[x]
    }

    pub fn objects(&self) -> &[Obj] {
        &self.objects
    }

    /// Image of basis morphism `a ∈ Hom(x, y)`.
    pub fn hom(&self, x: usize, y: usize, a: usize) -> &Mor {
        &self.homs[x * self.source.num_objects() + y][a]
    }

    /// Image of a base morphism given by its coefficient vector.
    pub fn apply_vec(&self, x: usize, y: usize, v: &[Scalar]) -> Mor {
        let mut out = Mor::zero(&self.objects[x], &self.objects[y]);
        for (a, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.hom(x, y, a).scale(c)).expect("parallel");
            }
        }
        out
    }

    fn apply_plain(&self, summands: &[usize]) -> Result<Obj> {
        if summands.is_empty() {
            return Ok(Obj::zero(&self.target));
        }
        let parts: Vec<Obj> = summands.iter().map(|&s| self.objects[s].clone()).collect();
        Obj::direct_sum(&parts)
    }

    fn check_source(&self, x: &Obj) -> Result<()> {
        if !crate::lincat::same_category(x.cat(), &self.source) {
            return Err(Error::CategoryMismatch(format!("{x} is not over {}", self.source.name())));
        }
        Ok(())
    }

    pub fn apply_obj(&self, x: &Obj) -> Result<Obj> {
        self.check_source(x)?;
        if self.identity {
            return Ok(x.clone());
        }
        let plain = self.apply_plain(x.summands())?;
        if x.is_plain() {
            return Ok(plain);
        }
        let e = self.apply_blocks(x.summands(), x.summands(), x.idempotent_blocks(), &plain, &plain)?;
        Obj::image(&e)
    }

    fn apply_blocks(&self, src: &[usize], tgt: &[usize], b: &Blocks, dom: &Obj, cod: &Obj) -> Result<Mor> {
        let doms: Vec<Obj> = src.iter().map(|&s| self.objects[s].clone()).collect();
        let cods: Vec<Obj> = tgt.iter().map(|&t| self.objects[t].clone()).collect();
        let (co, ro) = (Obj::offsets(&doms), Obj::offsets(&cods));
        let mut blocks = Blocks::zero(cod.len(), dom.len());
        for (i, j, v) in b.iter() {
            let m = self.apply_vec(src[j], tgt[i], v);
            blocks.paste(ro[i], co[j], m.blocks());
        }
        Mor::unchecked(dom, cod, blocks)
    }

    /// Blockwise image of a closure morphism.
    pub fn apply_mor(&self, f: &Mor) -> Result<Mor> {
        self.check_source(f.dom())?;
        if self.identity {
            return Ok(f.clone());
        }
        let dom = self.apply_obj(f.dom())?;
        let cod = self.apply_obj(f.cod())?;
        self.apply_blocks(f.dom().summands(), f.cod().summands(), f.blocks(), &dom, &cod)
    }

    /// Identity and composition preservation on all basis data.
    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::new(format!("functor {}", self.name));
        let c = &self.source;
        let n = c.num_objects();
        for x in 0..n {
            let fid = self.apply_vec(x, x, c.identity_vec(x));
            r.check(fid.is_identity(), "identity preservation", || {
                format!("F(id_{}) ≠ Id_{}", c.object_name(x), self.objects[x])
            });
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for a in 0..c.dim(x, y) {
                        for b in 0..c.dim(y, z) {
                            let lhs = self.apply_vec(x, z, c.structure_constant(x, y, z, b, a));
                            let rhs = self.hom(y, z, b).compose(self.hom(x, y, a)).expect("composable");
                            r.check(lhs == rhs, "composition preservation", || {
                                format!("({}, {})", c.basis_names(y, z)[b], c.basis_names(x, y)[a])
                            });
                        }
                    }
                }
            }
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Field;
    use crate::fixtures;

    #[test]
    fn identity_functor_validates() {
        let c2 = Arc::new(fixtures::c2(Field::Rationals));
        assert!(Functor::identity(&c2).validate().passed());
    }

    #[test]
    fn swap_validates() {
        let c3 = Arc::new(fixtures::c3(Field::Rationals));
        let objects = vec![Obj::base(&c3, 1), Obj::base(&c3, 0)];
        let f = Functor::new("swap", &c3, &c3, objects, |x, _, a| Ok(Mor::basis(&c3, 1 - x, 1 - x, a))).unwrap();
        assert!(f.validate().passed());
        let twice = Functor::compose(&f, &f).unwrap();
        assert_eq!(twice.object(0), &Obj::base(&c3, 0));
    }

    #[test]
    fn killing_the_arrow_is_still_a_functor() {
        let c2 = Arc::new(fixtures::c2(Field::Rationals));
        let objects = vec![Obj::base(&c2, 0), Obj::base(&c2, 1)];
        let f = Functor::new("kill-a", &c2, &c2, objects, |x, y, a| {
            if x == y {
                Ok(Mor::basis(&c2, x, y, a))
            } else {
                Ok(Mor::zero(&Obj::base(&c2, x), &Obj::base(&c2, y)))
            }
        })
        .unwrap();
        assert!(f.validate().passed());
    }

    #[test]
    fn zero_on_homs_is_rejected() {
        let c1 = Arc::new(fixtures::c1(Field::Rationals));
        let x = Obj::base(&c1, 0);
        let f = Functor::new("zero", &c1, &c1, vec![x.clone()], |_, _, _| Ok(Mor::zero(&x, &x))).unwrap();
        let r = f.validate();
        assert!(r.violations.iter().any(|v| v.law == "identity preservation"));
    }

    #[test]
    fn karoubi_extension_applies_to_idempotent() {
        let q = Field::Rationals;
        let c1 = Arc::new(fixtures::c1(q));
        let double = Functor::new("double", &c1, &c1, vec![Obj::plain(&c1, vec![0, 0])], |_, _, _| {
            Ok(Mor::identity(&Obj::plain(&c1, vec![0, 0])))
        })
        .unwrap();
        let x = Obj::plain(&c1, vec![0, 0]);
        let e = Mor::from_ambient(&x, &x, &[q.one(), q.zero(), q.zero(), q.zero()]).unwrap();
        let small = Obj::image(&e).unwrap();
        let fx = double.apply_obj(&small).unwrap();
        assert_eq!(fx.len(), 4);
        assert!(double.apply_mor(&Mor::identity(&small)).unwrap().is_identity());
    }
}
