use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::category::Category;
use crate::error::{Error, Result};
use crate::exactlin::{Field, Scalar};

/// Sparse block matrix over a presentation.
///
/// Block `(i, j)` is a coefficient vector in `Hom(src[j], tgt[i])`; absent
/// blocks are zero. Zero blocks are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blocks {
    rows: Vec<BTreeMap<usize, Vec<Scalar>>>,
    ncols: usize,
}

impl Blocks {
    pub fn zero(nrows: usize, ncols: usize) -> Blocks {
        Blocks { rows: vec![BTreeMap::new(); nrows], ncols }
    }

    pub fn identity(cat: &Category, summands: &[usize]) -> Blocks {
        let mut b = Blocks::zero(summands.len(), summands.len());
        for (i, &x) in summands.iter().enumerate() {
            b.set(i, i, cat.identity_vec(x).to_vec());
        }
        b
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&Vec<Scalar>> {
        self.rows[i].get(&j)
    }

    /// Replaces block `(i, j)`.
    pub fn set(&mut self, i: usize, j: usize, v: Vec<Scalar>) {
        if v.iter().all(Scalar::is_zero) {
            self.rows[i].remove(&j);
        } else {
            self.rows[i].insert(j, v);
        }
    }

    /// Adds `v` to block `(i, j)`.
    pub fn accumulate(&mut self, i: usize, j: usize, v: &[Scalar]) {
        if v.iter().all(Scalar::is_zero) {
            return;
        }
        match self.rows[i].get_mut(&j) {
            Some(acc) => {
                for (a, b) in acc.iter_mut().zip(v) {
                    if !b.is_zero() {
                        *a = &*a + b;
                    }
                }
                if acc.iter().all(Scalar::is_zero) {
                    self.rows[i].remove(&j);
                }
            }
            None => {
                self.rows[i].insert(j, v.to_vec());
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Vec<Scalar>)> {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BTreeMap::is_empty)
    }

    pub fn scale(&self, s: &Scalar) -> Blocks {
        if s.is_zero() {
            return Blocks::zero(self.nrows(), self.ncols);
        }
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|(j, v)| (*j, v.iter().map(|c| c * s).collect())).collect())
            .collect();
        Blocks { rows, ncols: self.ncols }
    }

    pub fn add(&self, other: &Blocks) -> Blocks {
        let mut out = self.clone();
        for (i, j, v) in other.iter() {
            out.accumulate(i, j, v);
        }
        out
    }

    /// `g ∘ f` where `f: src → mid` is `self`-shaped on the right and `g: mid → tgt`.
    pub fn compose(cat: &Category, g: &Blocks, f: &Blocks, src: &[usize], mid: &[usize], tgt: &[usize]) -> Blocks {
        let mut out = Blocks::zero(tgt.len(), src.len());
        for (i, grow) in g.rows.iter().enumerate() {
            let mut acc: BTreeMap<usize, Vec<Scalar>> = BTreeMap::new();
            for (j, gv) in grow {
                for (k, fv) in &f.rows[*j] {
                    let v = cat.compose_vec(src[*k], mid[*j], tgt[i], gv, fv);
                    match acc.get_mut(k) {
                        Some(a) => {
                            for (x, y) in a.iter_mut().zip(&v) {
                                if !y.is_zero() {
                                    *x = &*x + y;
                                }
                            }
                        }
                        None => {
                            acc.insert(*k, v);
                        }
                    }
                }
            }
            acc.retain(|_, v| !v.iter().all(Scalar::is_zero));
            out.rows[i] = acc;
        }
        out
    }

    /// Sub-block with rows `r0..r0+nr` and columns `c0..c0+nc`.
    pub fn slice(&self, r0: usize, nr: usize, c0: usize, nc: usize) -> Blocks {
        let mut out = Blocks::zero(nr, nc);
        for i in 0..nr {
            for (j, v) in self.rows[r0 + i].range(c0..c0 + nc) {
                out.rows[i].insert(j - c0, v.clone());
            }
        }
        out
    }

    /// Writes `b` with its top-left corner at `(r0, c0)`, adding to what is there.
    pub fn paste(&mut self, r0: usize, c0: usize, b: &Blocks) {
        for (i, j, v) in b.iter() {
            self.accumulate(r0 + i, c0 + j, v);
        }
    }
}

struct ObjInner {
    cat: Arc<Category>,
    summands: Vec<usize>,
    idem: Blocks,
    plain: bool,
}

/// An object of the Karoubi envelope of the additive closure: a finite list
/// of base objects together with an idempotent endomorphism of their sum.
///
/// Plain direct sums carry the identity idempotent; they are the same kind
/// of value as split idempotent images, so every operation handles both.
#[derive(Clone)]
pub struct Obj(Arc<ObjInner>);

impl PartialEq for Obj {
    fn eq(&self, other: &Obj) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (same_category(&self.0.cat, &other.0.cat)
                && self.0.summands == other.0.summands
                && self.0.idem == other.0.idem)
    }
}

impl Eq for Obj {}

pub(crate) fn same_category(a: &Arc<Category>, b: &Arc<Category>) -> bool {
    Arc::ptr_eq(a, b) || (a.name() == b.name() && a.object_names() == b.object_names() && a.field() == b.field())
}

impl fmt::Debug for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.0.summands.iter().map(|&x| self.0.cat.object_name(x)).collect();
        let sum = if names.is_empty() { "0".to_string() } else { names.join(" ⊕ ") };
        if self.0.plain {
            write!(f, "{sum}")
        } else {
            write!(f, "({sum}, e)")
        }
    }
}

impl Obj {
    /// The direct sum of the listed base objects.
    pub fn plain(cat: &Arc<Category>, summands: Vec<usize>) -> Obj {
        let idem = Blocks::identity(cat, &summands);
        Obj(Arc::new(ObjInner { cat: cat.clone(), summands, idem, plain: true }))
    }

    pub fn base(cat: &Arc<Category>, x: usize) -> Obj {
        Obj::plain(cat, vec![x])
    }

    pub fn zero(cat: &Arc<Category>) -> Obj {
        Obj::plain(cat, Vec::new())
    }

    /// The image of an idempotent endomorphism `e` of any object.
    ///
    /// Fails with [`Error::NotIdempotent`] unless `e ∘ e = e`.
    pub fn image(e: &Mor) -> Result<Obj> {
        if e.dom() != e.cod() {
            return Err(Error::ObjectMismatch(format!("idempotent must be an endomorphism, got {} → {}", e.dom(), e.cod())));
        }
        if e.compose(e)? != *e {
            return Err(Error::NotIdempotent);
        }
        let x = e.dom();
        if e.blocks == Blocks::identity(x.cat(), x.summands()) {
            return Ok(Obj::plain(x.cat(), x.summands().to_vec()));
        }
        Ok(Obj(Arc::new(ObjInner {
            cat: x.cat().clone(),
            summands: x.summands().to_vec(),
            idem: e.blocks.clone(),
            plain: false,
        })))
    }

    pub fn cat(&self) -> &Arc<Category> {
        &self.0.cat
    }

    pub fn field(&self) -> Field {
        self.0.cat.field()
    }

    pub fn summands(&self) -> &[usize] {
        &self.0.summands
    }

    pub fn len(&self) -> usize {
        self.0.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.summands.is_empty()
    }

    pub fn is_plain(&self) -> bool {
        self.0.plain
    }

    pub fn idempotent_blocks(&self) -> &Blocks {
        &self.0.idem
    }

    /// The underlying plain direct sum.
    pub fn plain_part(&self) -> Obj {
        if self.0.plain {
            self.clone()
        } else {
            Obj::plain(&self.0.cat, self.0.summands.clone())
        }
    }

    /// The idempotent as an endomorphism of [`Obj::plain_part`].
    pub fn idempotent(&self) -> Mor {
        let p = self.plain_part();
        Mor { dom: p.clone(), cod: p, blocks: self.0.idem.clone() }
    }

    /// Direct sum; idempotents are combined block-diagonally.
    pub fn direct_sum(objs: &[Obj]) -> Result<Obj> {
        let cat = objs.first().map(|o| o.cat().clone()).ok_or_else(|| Error::Invalid("empty direct sum".into()))?;
        let mut summands = Vec::new();
        for o in objs {
            if !same_category(o.cat(), &cat) {
                return Err(Error::CategoryMismatch(format!("{} vs {}", o.cat().name(), cat.name())));
            }
            summands.extend_from_slice(o.summands());
        }
        if objs.iter().all(Obj::is_plain) {
            return Ok(Obj::plain(&cat, summands));
        }
        let mut idem = Blocks::zero(summands.len(), summands.len());
        let mut off = 0;
        for o in objs {
            idem.paste(off, off, o.idempotent_blocks());
            off += o.len();
        }
        Ok(Obj(Arc::new(ObjInner { cat, summands, idem, plain: false })))
    }

    /// Offsets of each factor in [`Obj::direct_sum`] of `objs`.
    pub fn offsets(objs: &[Obj]) -> Vec<usize> {
        let mut out = Vec::with_capacity(objs.len() + 1);
        let mut off = 0;
        out.push(0);
        for o in objs {
            off += o.len();
            out.push(off);
        }
        out
    }

    /// Total dimension of the ambient block space `Hom(plain(self), plain(other))`.
    pub fn ambient_dim(&self, other: &Obj) -> usize {
        let cat = self.cat();
        other
            .summands()
            .iter()
            .map(|&t| self.summands().iter().map(|&s| cat.dim(s, t)).sum::<usize>())
            .sum()
    }
}

/// A morphism between closure objects, stored as blocks on the underlying
/// plain sums and absorbed by both idempotents (`f = e' ∘ f ∘ e`).
#[derive(Clone, PartialEq, Eq)]
pub struct Mor {
    dom: Obj,
    cod: Obj,
    blocks: Blocks,
}

impl fmt::Debug for Mor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mor({} → {}", self.dom, self.cod)?;
        for (i, j, v) in self.blocks.iter() {
            let s: Vec<String> = v.iter().map(|c| c.to_string()).collect();
            write!(f, "; [{i},{j}]=({})", s.join(","))?;
        }
        write!(f, ")")
    }
}

impl Mor {
    /// Checks shapes, fields and absorption.
    pub fn new(dom: &Obj, cod: &Obj, blocks: Blocks) -> Result<Mor> {
        let m = Mor::unchecked(dom, cod, blocks)?;
        if !(dom.is_plain() && cod.is_plain()) && m.absorb() != m {
            return Err(Error::NotAbsorbed);
        }
        Ok(m)
    }

    /// Checks shapes and fields only; the caller guarantees absorption.
    pub fn unchecked(dom: &Obj, cod: &Obj, blocks: Blocks) -> Result<Mor> {
        if !same_category(dom.cat(), cod.cat()) {
            return Err(Error::CategoryMismatch(format!("{} vs {}", dom.cat().name(), cod.cat().name())));
        }
        if blocks.nrows() != cod.len() || blocks.ncols() != dom.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}×{} blocks for {} → {}",
                blocks.nrows(),
                blocks.ncols(),
                dom,
                cod
            )));
        }
        let cat = dom.cat();
        for (i, j, v) in blocks.iter() {
            let d = cat.dim(dom.summands()[j], cod.summands()[i]);
            if v.len() != d {
                return Err(Error::DimensionMismatch(format!("block ({i},{j}) has length {} not {d}", v.len())));
            }
            if let Some(s) = v.iter().find(|s| s.field() != cat.field()) {
                return Err(Error::FieldMismatch(cat.field().to_string(), s.field().to_string()));
            }
        }
        Ok(Mor { dom: dom.clone(), cod: cod.clone(), blocks })
    }

    /// Sandwiches arbitrary blocks between the idempotents: `e' ∘ f ∘ e`.
    pub fn absorbed(dom: &Obj, cod: &Obj, blocks: Blocks) -> Result<Mor> {
        Ok(Mor::unchecked(dom, cod, blocks)?.absorb())
    }

    fn absorb(&self) -> Mor {
        let cat = self.dom.cat();
        let mut b = self.blocks.clone();
        if !self.dom.is_plain() {
            b = Blocks::compose(cat, &b, self.dom.idempotent_blocks(), self.dom.summands(), self.dom.summands(), self.cod.summands());
        }
        if !self.cod.is_plain() {
            b = Blocks::compose(cat, self.cod.idempotent_blocks(), &b, self.dom.summands(), self.cod.summands(), self.cod.summands());
        }
        Mor { dom: self.dom.clone(), cod: self.cod.clone(), blocks: b }
    }

    pub fn identity(x: &Obj) -> Mor {
        Mor { dom: x.clone(), cod: x.clone(), blocks: x.idempotent_blocks().clone() }
    }

    pub fn zero(dom: &Obj, cod: &Obj) -> Mor {
        Mor { dom: dom.clone(), cod: cod.clone(), blocks: Blocks::zero(cod.len(), dom.len()) }
    }

    /// A single basis morphism `Hom(x, y)[i]` between base objects.
    pub fn basis(cat: &Arc<Category>, x: usize, y: usize, i: usize) -> Mor {
        let mut b = Blocks::zero(1, 1);
        b.set(0, 0, cat.unit_vec(x, y, i));
        Mor { dom: Obj::base(cat, x), cod: Obj::base(cat, y), blocks: b }
    }

    /// A base morphism given by a coefficient vector.
    pub fn from_vec(cat: &Arc<Category>, x: usize, y: usize, v: Vec<Scalar>) -> Result<Mor> {
        let mut b = Blocks::zero(1, 1);
        b.set(0, 0, v);
        Mor::unchecked(&Obj::base(cat, x), &Obj::base(cat, y), b)
    }

    /// The named basis morphism.
    pub fn named(cat: &Arc<Category>, name: &str) -> Result<Mor> {
        let (x, y, i) = cat.basis_lookup(name).ok_or_else(|| Error::Unresolved(format!("basis morphism {name:?}")))?;
        Ok(Mor::basis(cat, x, y, i))
    }

    pub fn dom(&self) -> &Obj {
        &self.dom
    }

    pub fn cod(&self) -> &Obj {
        &self.cod
    }

    pub fn blocks(&self) -> &Blocks {
        &self.blocks
    }

    pub fn field(&self) -> Field {
        self.dom.field()
    }

    /// The same blocks viewed between other objects with the same summands.
    pub fn retype(&self, dom: &Obj, cod: &Obj) -> Result<Mor> {
        Mor::new(dom, cod, self.blocks.clone())
    }

    /// Single block as a coefficient vector (zero if absent).
    pub fn block(&self, i: usize, j: usize) -> Vec<Scalar> {
        match self.blocks.get(i, j) {
            Some(v) => v.clone(),
            None => vec![self.field().zero(); self.dom.cat().dim(self.dom.summands()[j], self.cod.summands()[i])],
        }
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &Mor) -> Result<Mor> {
        if f.cod != self.dom {
            return Err(Error::ObjectMismatch(format!("cannot compose {} → {} after {} → {}", self.dom, self.cod, f.dom, f.cod)));
        }
        let blocks = Blocks::compose(
            self.dom.cat(),
            &self.blocks,
            &f.blocks,
            f.dom.summands(),
            self.dom.summands(),
            self.cod.summands(),
        );
        Ok(Mor { dom: f.dom.clone(), cod: self.cod.clone(), blocks })
    }

    fn check_parallel(&self, other: &Mor) -> Result<()> {
        if self.dom != other.dom || self.cod != other.cod {
            return Err(Error::ObjectMismatch(format!(
                "{} → {} vs {} → {}",
                self.dom, self.cod, other.dom, other.cod
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Mor) -> Result<Mor> {
        self.check_parallel(other)?;
        Ok(Mor { dom: self.dom.clone(), cod: self.cod.clone(), blocks: self.blocks.add(&other.blocks) })
    }

    pub fn sub(&self, other: &Mor) -> Result<Mor> {
        self.check_parallel(other)?;
        let neg = other.blocks.scale(&-self.field().one());
        Ok(Mor { dom: self.dom.clone(), cod: self.cod.clone(), blocks: self.blocks.add(&neg) })
    }

    pub fn scale(&self, s: &Scalar) -> Mor {
        Mor { dom: self.dom.clone(), cod: self.cod.clone(), blocks: self.blocks.scale(s) }
    }

    pub fn neg(&self) -> Mor {
        self.scale(&-self.field().one())
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_zero()
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.blocks == *self.dom.idempotent_blocks()
    }

    /// Flattened coefficients, in the order of [`Mor::from_ambient`].
    pub fn ambient(&self) -> Vec<Scalar> {
        let cat = self.dom.cat();
        let mut out = Vec::with_capacity(self.dom.ambient_dim(&self.cod));
        for (i, &t) in self.cod.summands().iter().enumerate() {
            for (j, &s) in self.dom.summands().iter().enumerate() {
                match self.blocks.get(i, j) {
                    Some(v) => out.extend_from_slice(v),
                    None => out.extend(std::iter::repeat(self.field().zero()).take(cat.dim(s, t))),
                }
            }
        }
        out
    }

    /// Inverse of [`Mor::ambient`]; does not absorb.
    pub fn from_ambient(dom: &Obj, cod: &Obj, v: &[Scalar]) -> Result<Mor> {
        if v.len() != dom.ambient_dim(cod) {
            return Err(Error::DimensionMismatch(format!("{} coefficients for {} → {}", v.len(), dom, cod)));
        }
        let cat = dom.cat();
        let mut blocks = Blocks::zero(cod.len(), dom.len());
        let mut off = 0;
        for (i, &t) in cod.summands().iter().enumerate() {
            for (j, &s) in dom.summands().iter().enumerate() {
                let d = cat.dim(s, t);
                blocks.set(i, j, v[off..off + d].to_vec());
                off += d;
            }
        }
        Ok(Mor { dom: dom.clone(), cod: cod.clone(), blocks })
    }

    /// Block-diagonal sum `f₁ ⊕ … ⊕ fₙ`.
    pub fn direct_sum(mors: &[Mor]) -> Result<Mor> {
        let doms: Vec<Obj> = mors.iter().map(|m| m.dom.clone()).collect();
        let cods: Vec<Obj> = mors.iter().map(|m| m.cod.clone()).collect();
        let dom = Obj::direct_sum(&doms)?;
        let cod = Obj::direct_sum(&cods)?;
        let (ro, co) = (Obj::offsets(&cods), Obj::offsets(&doms));
        let mut blocks = Blocks::zero(cod.len(), dom.len());
        for (k, m) in mors.iter().enumerate() {
            blocks.paste(ro[k], co[k], &m.blocks);
        }
        Ok(Mor { dom, cod, blocks })
    }

    /// The morphism `dom → ⊕ cods` with components `mors`.
    pub fn column(dom: &Obj, cod: &Obj, parts: &[Mor]) -> Result<Mor> {
        let mut blocks = Blocks::zero(cod.len(), dom.len());
        let mut off = 0;
        for m in parts {
            if m.dom != *dom {
                return Err(Error::ObjectMismatch(format!("column part from {} not {}", m.dom, dom)));
            }
            blocks.paste(off, 0, &m.blocks);
            off += m.cod.len();
        }
        if off != cod.len() {
            return Err(Error::DimensionMismatch(format!("column parts cover {off} of {} summands", cod.len())));
        }
        Mor::new(dom, cod, blocks)
    }

    /// The morphism `⊕ doms → cod` with components `parts`.
    pub fn row(dom: &Obj, cod: &Obj, parts: &[Mor]) -> Result<Mor> {
        let mut blocks = Blocks::zero(cod.len(), dom.len());
        let mut off = 0;
        for m in parts {
            if m.cod != *cod {
                return Err(Error::ObjectMismatch(format!("row part into {} not {}", m.cod, cod)));
            }
            blocks.paste(0, off, &m.blocks);
            off += m.dom.len();
        }
        if off != dom.len() {
            return Err(Error::DimensionMismatch(format!("row parts cover {off} of {} summands", dom.len())));
        }
        Mor::new(dom, cod, blocks)
    }

    /// The sub-block from summand range `cols` of the domain to summand range
    /// `rows` of the codomain, between the given objects.
    pub fn component(&self, dom: &Obj, cod: &Obj, row0: usize, col0: usize) -> Result<Mor> {
        Mor::absorbed(dom, cod, self.blocks.slice(row0, cod.len(), col0, dom.len()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn identity_is_neutral() {
        let c2 = Arc::new(fixtures::c2(Field::Rationals));
        let a = Mor::named(&c2, "a").unwrap();
        let id1 = Mor::identity(a.dom());
        let id2 = Mor::identity(a.cod());
        assert_eq!(a.compose(&id1).unwrap(), a);
        assert_eq!(id2.compose(&a).unwrap(), a);
    }

    #[test]
    fn composition_type_checks() {
        let c2 = Arc::new(fixtures::c2(Field::Rationals));
        let a = Mor::named(&c2, "a").unwrap();
        assert!(matches!(a.compose(&a), Err(Error::ObjectMismatch(_))));
    }

    #[test]
    fn non_idempotent_rejected() {
        let c1 = Arc::new(fixtures::c1(Field::Rationals));
        let x = Obj::base(&c1, 0);
        let two = Mor::identity(&x).scale(&Field::Rationals.int(2));
        assert!(matches!(Obj::image(&two), Err(Error::NotIdempotent)));
    }

    #[test]
    fn ambient_roundtrip() {
        let c2 = Arc::new(fixtures::c2(Field::Rationals));
        let s = Obj::plain(&c2, vec![0, 1, 0]);
        let t = Obj::plain(&c2, vec![1, 1]);
        let v: Vec<Scalar> = (0..s.ambient_dim(&t)).map(|i| Field::Rationals.int(i as i64 + 1)).collect();
        let m = Mor::from_ambient(&s, &t, &v).unwrap();
        assert_eq!(m.ambient(), v);
    }
}
