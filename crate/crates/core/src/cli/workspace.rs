//! Resolution of raw declarations into a typed, validated workspace.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::sync::Arc;

use super::literal::{parse_block, parse_mor, parse_obj, scalar};
use super::schema::*;
use crate::complexes::{BoundedComplex, ModuleComplex};
use crate::eilenberg_moore::{em_adjunction, validate_module, MModule, ModuleCategory};
use crate::equivariant::{equivariant_monad, induce_adjunction, to_module, EquivObject, EquivariantCategory, FiniteGroup, StrictAction};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix};
use crate::functorial::{Adjunction, Functor, NatTrans};
use crate::lincat::{Category, CategoryBuilder, Mor, Obj};
use crate::monadic::{monad_from_adjunction, Monad};
use crate::report::ValidationReport;

/// Declarations of one kind, in file order.
#[derive(Clone, Debug)]
pub struct Decls<T> {
    kind: &'static str,
    items: Vec<(String, T)>,
}

impl<T> Decls<T> {
    fn new(kind: &'static str) -> Self {
        Decls { kind, items: Vec::new() }
    }

    fn insert(&mut self, name: &str, value: T) {
        self.items.push((name.to_string(), value));
    }

    pub fn kind(&self) -> &'static str {
        self.kind
    }

    pub fn get(&self, name: &str) -> Result<&T> {
        self.items
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v)
            .ok_or_else(|| Error::Unresolved(format!("{} {name:?}", self.kind)))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.items.iter().any(|(n, _)| n == name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &T)> {
        self.items.iter().map(|(n, v)| (n.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct EquivDecl {
    pub action: String,
    pub object: EquivObject,
}

#[derive(Clone, Debug)]
pub enum AdjKind {
    Explicit,
    Identity,
    Equivariant { action: String, cat: Arc<EquivariantCategory> },
    EilenbergMoore { monad: String, cat: Arc<ModuleCategory> },
}

#[derive(Clone, Debug)]
pub struct AdjDecl {
    pub adjunction: Adjunction,
    pub kind: AdjKind,
}

#[derive(Clone, Debug)]
pub struct MonadDecl {
    pub monad: Arc<Monad>,
    /// The group action when the monad is a group monad, directly or
    /// through an equivariant adjunction.
    pub action: Option<String>,
    pub adjunction: Option<String>,
}

#[derive(Clone, Debug)]
pub struct ModuleDecl {
    pub monad: String,
    pub module: MModule,
}

#[derive(Clone)]
pub struct Workspace {
    pub fields: Decls<Field>,
    pub categories: Decls<Arc<Category>>,
    pub groups: Decls<Arc<FiniteGroup>>,
    pub actions: Decls<Arc<StrictAction>>,
    pub functors: Decls<Arc<Functor>>,
    pub nats: Decls<NatTrans>,
    pub equivariant_objects: Decls<EquivDecl>,
    pub adjunctions: Decls<AdjDecl>,
    pub monads: Decls<MonadDecl>,
    pub modules: Decls<ModuleDecl>,
    pub complexes: Decls<BoundedComplex>,
    pub module_complexes: Decls<ModuleComplex>,
    pub suites: Decls<Vec<RawCheck>>,
}

/// Reads, resolves and validates a workspace file.
pub fn parse_workspace(path: &Path) -> Result<Workspace> {
    let ws = load_workspace(path)?;
    for (id, r) in ws.validate() {
        if !r.passed() {
            return Err(Error::LawViolation(format!("{id}: {r}")));
        }
    }
    Ok(ws)
}

/// Reads and resolves a workspace file without running the law suites.
pub fn load_workspace(path: &Path) -> Result<Workspace> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Workspace::from_json(&text)
}

impl Workspace {
    pub fn from_json(text: &str) -> Result<Workspace> {
        let raw: RawWorkspace = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
        if raw.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse(format!("unsupported schema_version {} (expected {SCHEMA_VERSION})", raw.schema_version)));
        }
        Workspace::resolve(&raw)
    }

    pub fn resolve(raw: &RawWorkspace) -> Result<Workspace> {
        check_unique_names(raw)?;
        let mut ws = Workspace {
            fields: Decls::new("field"),
            categories: Decls::new("category"),
            groups: Decls::new("group"),
            actions: Decls::new("action"),
            functors: Decls::new("functor"),
            nats: Decls::new("natural transformation"),
            equivariant_objects: Decls::new("equivariant object"),
            adjunctions: Decls::new("adjunction"),
            monads: Decls::new("monad"),
            modules: Decls::new("module"),
            complexes: Decls::new("complex"),
            module_complexes: Decls::new("module complex"),
            suites: Decls::new("suite"),
        };
        for f in &raw.fields {
            ws.fields.insert(&f.name, f.spec.parse()?);
        }
        for c in &raw.categories {
            let cat = ws.category(c)?;
            ws.categories.insert(&c.name, cat);
        }
        for g in &raw.groups {
            ws.groups.insert(&g.name, Arc::new(group(g)?));
        }
        for a in &raw.actions {
            let act = ws.action(a)?;
            ws.actions.insert(&a.name, Arc::new(act));
        }
        for f in &raw.functors {
            let func = ws.functor(f)?;
            ws.functors.insert(&f.name, Arc::new(func));
        }
        for n in &raw.natural_transformations {
            let nat = ws.nat(n)?;
            ws.nats.insert(&n.name, nat);
        }
        for z in &raw.equivariant_objects {
            let obj = ws.equiv_object(z)?;
            ws.equivariant_objects.insert(&z.name, EquivDecl { action: z.action.clone(), object: obj });
        }
        ws.resolve_linked(raw)?;
        for c in &raw.complexes {
            let cx = ws.complex(c)?;
            ws.complexes.insert(&c.name, cx);
        }
        for c in &raw.module_complexes {
            let cx = ws.module_complex(c)?;
            ws.module_complexes.insert(&c.name, cx);
        }
        for s in &raw.suites {
            ws.suites.insert(&s.name, s.checks.clone());
        }
        Ok(ws)
    }

    /// Adjunctions, monads and modules may refer to each other in any order;
    /// they are resolved in rounds until nothing more can be built.
    fn resolve_linked(&mut self, raw: &RawWorkspace) -> Result<()> {
        #[derive(Clone, Copy)]
        enum Item {
            Adj(usize),
            Monad(usize),
            Module(usize),
        }
        let mut pending: Vec<Item> = (0..raw.adjunctions.len())
            .map(Item::Adj)
            .chain((0..raw.monads.len()).map(Item::Monad))
            .chain((0..raw.modules.len()).map(Item::Module))
            .collect();
        loop {
            let mut waiting = Vec::new();
            let mut first_err = None;
            for item in &pending {
                let attempt = match *item {
                    Item::Adj(i) => self.adjunction(&raw.adjunctions[i]).map(|d| self.adjunctions.insert(&raw.adjunctions[i].name, d)),
                    Item::Monad(i) => self.monad(&raw.monads[i]).map(|d| self.monads.insert(&raw.monads[i].name, d)),
                    Item::Module(i) => self.module(&raw.modules[i]).map(|d| self.modules.insert(&raw.modules[i].name, d)),
                };
                match attempt {
                    Ok(()) => {}
                    Err(e @ Error::Unresolved(_)) => {
                        first_err.get_or_insert(e);
                        waiting.push(*item);
                    }
                    Err(e) => return Err(e),
                }
            }
            if waiting.is_empty() {
                return Ok(());
            }
            if waiting.len() == pending.len() {
                return Err(first_err.expect("a waiting item recorded its error"));
            }
            pending = waiting;
        }
    }

    fn category(&self, raw: &RawCategory) -> Result<Arc<Category>> {
        let field = *self.fields.get(&raw.field)?;
        let mut b = CategoryBuilder::new(&raw.name, field);
        let mut seen = BTreeSet::new();
        for o in &raw.objects {
            if !seen.insert(o) {
                return Err(Error::Invalid(format!("object {o:?} declared twice in {}", raw.name)));
            }
            b.object(o);
        }
        let mut basis: BTreeMap<(String, String), Vec<String>> = BTreeMap::new();
        for (o, u) in &raw.units {
            b.unit(o, u)?;
            basis.entry((o.clone(), o.clone())).or_default().push(u.clone());
        }
        for h in &raw.homs {
            let names: Vec<&str> = h.basis.iter().map(String::as_str).collect();
            b.hom(&h.from, &h.to, &names)?;
            basis.entry((h.from.clone(), h.to.clone())).or_default().extend(h.basis.iter().cloned());
        }
        let mut owner: BTreeMap<&str, (&str, &str)> = BTreeMap::new();
        for ((x, y), names) in &basis {
            for n in names {
                if owner.insert(n, (x, y)).is_some() {
                    return Err(Error::Invalid(format!("basis name {n:?} used twice in {}", raw.name)));
                }
            }
        }
        let coeffs = |x: &str, y: &str, entries: &BTreeMap<String, String>| -> Result<Vec<_>> {
            let names = basis.get(&(x.to_string(), y.to_string())).cloned().unwrap_or_default();
            let mut v = vec![field.zero(); names.len()];
            for (n, c) in entries {
                let i = names.iter().position(|b| b == n).ok_or_else(|| {
                    Error::Unresolved(format!("basis morphism {n:?} in Hom({x}, {y}) of {}", raw.name))
                })?;
                v[i] = scalar(field, c)?;
            }
            Ok(v)
        };
        for (o, entries) in &raw.identities {
            b.identity(o, coeffs(o, o, entries)?)?;
        }
        for comp in &raw.composition {
            let (y, z) = *owner
                .get(comp.outer.as_str())
                .ok_or_else(|| Error::Unresolved(format!("basis morphism {:?} of {}", comp.outer, raw.name)))?;
            let (x, y2) = *owner
                .get(comp.inner.as_str())
                .ok_or_else(|| Error::Unresolved(format!("basis morphism {:?} of {}", comp.inner, raw.name)))?;
            if y != y2 {
                return Err(Error::ObjectMismatch(format!("{} ∘ {} is not composable", comp.outer, comp.inner)));
            }
            b.compose(&comp.outer, &comp.inner, coeffs(x, z, &comp.result)?);
        }
        b.build_arc()
    }

    fn action(&self, raw: &RawAction) -> Result<StrictAction> {
        let grp = self.groups.get(&raw.group)?.clone();
        let cat = self.categories.get(&raw.category)?.clone();
        if raw.trivial {
            if !raw.objects.is_empty() || !raw.homs.is_empty() {
                return Err(Error::Invalid(format!("trivial action {} also lists images", raw.name)));
            }
            return Ok(StrictAction::trivial(&grp, &cat).with_name(&raw.name));
        }
        let elem = |g: &str| grp.index(g).ok_or_else(|| Error::Unresolved(format!("element {g:?} of {}", raw.group)));
        let obj = |x: &str| cat.object_index(x).ok_or_else(|| Error::Unresolved(format!("object {x:?} of {}", cat.name())));
        let (n, m) = (grp.order(), cat.num_objects());
        let mut perm: Vec<Vec<usize>> = vec![(0..m).collect(); n];
        for (g, map) in &raw.objects {
            let gi = elem(g)?;
            for (x, y) in map {
                perm[gi][obj(x)?] = obj(y)?;
            }
        }
        let mut images: Vec<BTreeMap<&str, &BTreeMap<String, String>>> = vec![BTreeMap::new(); n];
        for (g, map) in &raw.homs {
            let gi = elem(g)?;
            for (b, img) in map {
                if cat.basis_lookup(b).is_none() {
                    return Err(Error::Unresolved(format!("basis morphism {b:?} of {}", cat.name())));
                }
                images[gi].insert(b, img);
            }
        }
        let field = cat.field();
        let mut mats = BTreeMap::new();
        for g in 0..n {
            for x in 0..m {
                for y in 0..m {
                    let (gx, gy) = (perm[g][x], perm[g][y]);
                    let (src, tgt) = (cat.dim(x, y), cat.dim(gx, gy));
                    let mut mat = Matrix::zeros(field, tgt, src);
                    for a in 0..src {
                        let b = &cat.basis_names(x, y)[a];
                        match images[g].get(b.as_str()) {
                            Some(img) => {
                                for (i, s) in parse_block(&cat, gx, gy, img)?.into_iter().enumerate() {
                                    mat.set(i, a, s);
                                }
                            }
                            None if src == tgt => mat.set(a, a, field.one()),
                            None => {
                                return Err(Error::Invalid(format!(
                                    "image of {b:?} under {} is required",
                                    grp.element_name(g)
                                )))
                            }
                        }
                    }
                    mats.insert((g, x, y), mat);
                }
            }
        }
        StrictAction::permuting(&raw.name, &grp, &cat, perm, |g, x, y| mats[&(g, x, y)].clone())
    }

    fn functor(&self, raw: &RawFunctor) -> Result<Functor> {
        let s = self.categories.get(&raw.source)?;
        let t = self.categories.get(&raw.target)?;
        for o in raw.objects.keys() {
            if s.object_index(o).is_none() {
                return Err(Error::Unresolved(format!("object {o:?} of {}", s.name())));
            }
        }
        for b in raw.homs.keys() {
            if s.basis_lookup(b).is_none() {
                return Err(Error::Unresolved(format!("basis morphism {b:?} of {}", s.name())));
            }
        }
        let objects = s
            .object_names()
            .iter()
            .map(|o| {
                let lit = raw
                    .objects
                    .get(o)
                    .ok_or_else(|| Error::Invalid(format!("{} gives no image for object {o:?}", raw.name)))?;
                parse_obj(t, lit)
            })
            .collect::<Result<Vec<_>>>()?;
        Functor::new(&raw.name, s, t, objects.clone(), |x, y, a| {
            let b = &s.basis_names(x, y)[a];
            match raw.homs.get(b) {
                Some(lit) => parse_mor(&objects[x], &objects[y], lit),
                None if x == y && s.identity_vec(x) == s.unit_vec(x, x, a).as_slice() => Ok(Mor::identity(&objects[x])),
                None => Err(Error::Invalid(format!("{} gives no image for {b:?}", raw.name))),
            }
        })
    }

    fn nat(&self, raw: &RawNat) -> Result<NatTrans> {
        let f = self.functors.get(&raw.from)?;
        let g = self.functors.get(&raw.to)?;
        let comps = components(f.source(), &raw.components, &raw.name, |x| (f.object(x).clone(), g.object(x).clone()))?;
        NatTrans::new(&raw.name, f, g, comps)
    }

    fn equiv_object(&self, raw: &RawEquivObject) -> Result<EquivObject> {
        let act = self.actions.get(&raw.action)?;
        let grp = act.group();
        let field = act.field();
        for g in raw.alpha.keys().chain(raw.character.iter().flat_map(|c| c.keys())) {
            if grp.index(g).is_none() {
                return Err(Error::Unresolved(format!("element {g:?} of {}", grp.name())));
            }
        }
        if let Some(chi) = &raw.character {
            let ObjLit::Base(x) = &raw.carrier else {
                return Err(Error::Invalid(format!("character {} needs a single base object as carrier", raw.name)));
            };
            let xi = act.base().object_index(x).ok_or_else(|| Error::Unresolved(format!("object {x:?}")))?;
            let values = grp
                .elements()
                .iter()
                .enumerate()
                .map(|(g, e)| match chi.get(e) {
                    Some(s) => scalar(field, s),
                    None if g == grp.unit() => Ok(field.one()),
                    None => Err(Error::Invalid(format!("character {} has no value at {e}", raw.name))),
                })
                .collect::<Result<Vec<_>>>()?;
            return EquivObject::character(&raw.name, act, xi, &values);
        }
        let carrier = parse_obj(act.base(), &raw.carrier)?;
        let mut alpha = Vec::with_capacity(grp.order());
        for g in 0..grp.order() {
            let target = act.act_obj(g, &carrier)?;
            alpha.push(match raw.alpha.get(grp.element_name(g)) {
                Some(lit) => parse_mor(&carrier, &target, lit)?,
                None if g == grp.unit() => Mor::identity(&carrier),
                None => return Err(Error::Invalid(format!("{} has no α at {}", raw.name, grp.element_name(g)))),
            });
        }
        EquivObject::new(&raw.name, act, carrier, alpha)
    }

    fn equiv_samples(&self, action: &str, names: &[String]) -> Result<Vec<EquivObject>> {
        names
            .iter()
            .map(|n| {
                let d = self.equivariant_objects.get(n)?;
                if d.action != action {
                    return Err(Error::Invalid(format!("{n} is over action {}, not {action}", d.action)));
                }
                Ok(d.object.clone())
            })
            .collect()
    }

    fn adjunction(&self, raw: &RawAdjunction) -> Result<AdjDecl> {
        let (adjunction, kind) = match &raw.kind {
            RawAdjunctionKind::Explicit { left, right, unit, counit } => {
                let f = self.functors.get(left)?;
                let g = self.functors.get(right)?;
                let gf = Functor::compose(g, f)?;
                let fg = Functor::compose(f, g)?;
                let unit = components(f.source(), unit, &raw.name, |x| (Obj::base(f.source(), x), gf.object(x).clone()))?;
                let counit =
                    components(f.target(), counit, &raw.name, |y| (fg.object(y).clone(), Obj::base(f.target(), y)))?;
                (Adjunction::new(&raw.name, f, g, unit, counit)?, AdjKind::Explicit)
            }
            RawAdjunctionKind::Identity { category } => {
                (Adjunction::identity(self.categories.get(category)?).with_name(&raw.name), AdjKind::Identity)
            }
            RawAdjunctionKind::Equivariant { action, samples } => {
                let act = self.actions.get(action)?;
                let (cat, adj) = induce_adjunction(act, self.equiv_samples(action, samples)?)?;
                (adj.with_name(&raw.name), AdjKind::Equivariant { action: action.clone(), cat: Arc::new(cat) })
            }
            RawAdjunctionKind::EilenbergMoore { monad, modules } => {
                let m = self.monads.get(monad)?;
                let mods = modules
                    .iter()
                    .map(|n| {
                        let d = self.modules.get(n)?;
                        if &d.monad != monad {
                            return Err(Error::Invalid(format!("{n} is a module over {}, not {monad}", d.monad)));
                        }
                        Ok(d.module.clone())
                    })
                    .collect::<Result<Vec<_>>>()?;
                let (cat, adj) = em_adjunction(&m.monad, mods)?;
                (adj.with_name(&raw.name), AdjKind::EilenbergMoore { monad: monad.clone(), cat: Arc::new(cat) })
            }
        };
        Ok(AdjDecl { adjunction, kind })
    }

    fn monad(&self, raw: &RawMonad) -> Result<MonadDecl> {
        let (monad, action, adjunction) = match &raw.kind {
            RawMonadKind::Group { action } => {
                let act = self.actions.get(action)?;
                (equivariant_monad(act)?, Some(action.clone()), None)
            }
            RawMonadKind::FromAdjunction { adjunction } => {
                let d = self.adjunctions.get(adjunction)?;
                let action = match &d.kind {
                    AdjKind::Equivariant { action, .. } => Some(action.clone()),
                    _ => None,
                };
                (monad_from_adjunction(&d.adjunction)?, action, Some(adjunction.clone()))
            }
            RawMonadKind::Identity { category } => (Monad::identity(self.categories.get(category)?), None, None),
            RawMonadKind::Explicit { functor, unit, mult } => {
                let f = self.functors.get(functor)?;
                let c = f.source();
                let unit = components(c, unit, &raw.name, |x| (Obj::base(c, x), f.object(x).clone()))?;
                let square = Functor::compose(f, f)?;
                let mult = components(c, mult, &raw.name, |x| (square.object(x).clone(), f.object(x).clone()))?;
                (Monad::new(&raw.name, f, unit, mult)?, None, None)
            }
        };
        Ok(MonadDecl { monad: Arc::new(monad.with_name(&raw.name)), action, adjunction })
    }

    fn module(&self, raw: &RawModule) -> Result<ModuleDecl> {
        let d = self.monads.get(&raw.monad)?;
        let m = &d.monad;
        let module = match (&raw.carrier, &raw.action, &raw.free_on, &raw.from_equivariant) {
            (Some(carrier), Some(action), None, None) => {
                let x = parse_obj(m.category(), carrier)?;
                let lam = parse_mor(&m.apply_obj(&x)?, &x, action)?;
                MModule::new(&raw.name, m, x, lam)?
            }
            (None, None, Some(base), None) => MModule::free(m, &parse_obj(m.category(), base)?)?.with_name(&raw.name),
            (None, None, None, Some(z)) => {
                let action = d
                    .action
                    .as_ref()
                    .ok_or_else(|| Error::Invalid(format!("{} is not a group monad", raw.monad)))?;
                let obj = self.equiv_samples(action, std::slice::from_ref(z))?.remove(0);
                to_module(self.actions.get(action)?, m, &obj)?.with_name(&raw.name)
            }
            _ => {
                return Err(Error::Invalid(format!(
                    "module {} needs exactly one of carrier+action, free_on or from_equivariant",
                    raw.name
                )))
            }
        };
        Ok(ModuleDecl { monad: raw.monad.clone(), module })
    }

    fn complex(&self, raw: &RawComplex) -> Result<BoundedComplex> {
        let cat = self.categories.get(&raw.category)?;
        let terms = raw.terms.iter().map(|t| parse_obj(cat, t)).collect::<Result<Vec<_>>>()?;
        let diffs = diffs(&terms, &raw.diffs, &raw.name)?;
        BoundedComplex::new(&raw.name, cat, raw.lo, terms, diffs)
    }

    fn module_complex(&self, raw: &RawModuleComplex) -> Result<ModuleComplex> {
        let mods = raw
            .modules
            .iter()
            .map(|n| Ok(self.modules.get(n)?.module.clone()))
            .collect::<Result<Vec<_>>>()?;
        let terms: Vec<Obj> = mods.iter().map(|m| m.carrier().clone()).collect();
        let diffs = diffs(&terms, &raw.diffs, &raw.name)?;
        ModuleComplex::new(&raw.name, raw.lo, mods, diffs)
    }

    /// The law suites of every declaration, keyed `validate/<kind>/<name>`.
    pub fn validate(&self) -> Vec<(String, ValidationReport)> {
        let mut out = Vec::new();
        let id = |kind: &str, name: &str| format!("validate/{kind}/{name}");
        for (n, g) in self.groups.iter() {
            out.push((id("group", n), g.validate()));
        }
        for (n, c) in self.categories.iter() {
            out.push((id("category", n), c.validate()));
        }
        for (n, a) in self.actions.iter() {
            out.push((id("action", n), a.validate()));
        }
        for (n, f) in self.functors.iter() {
            out.push((id("functor", n), f.validate()));
        }
        for (n, t) in self.nats.iter() {
            out.push((id("natural-transformation", n), t.validate()));
        }
        for (n, z) in self.equivariant_objects.iter() {
            let act = self.actions.get(&z.action).expect("resolved");
            out.push((id("equivariant-object", n), z.object.validate(act)));
        }
        for (n, a) in self.adjunctions.iter() {
            out.push((id("adjunction", n), a.adjunction.validate_all()));
        }
        for (n, m) in self.monads.iter() {
            out.push((id("monad", n), m.monad.validate_all()));
        }
        for (n, m) in self.modules.iter() {
            out.push((id("module", n), validate_module(&m.module)));
        }
        for (n, c) in self.complexes.iter() {
            out.push((id("complex", n), c.validate()));
        }
        for (n, c) in self.module_complexes.iter() {
            out.push((id("module-complex", n), c.validate()));
        }
        out
    }
}

fn group(raw: &RawGroup) -> Result<FiniteGroup> {
    match (raw.cyclic, raw.symmetric, &raw.elements, &raw.table) {
        (Some(n), None, None, None) if n > 0 => Ok(FiniteGroup::cyclic(n)),
        (None, Some(3), None, None) => Ok(FiniteGroup::symmetric3()),
        (None, Some(n), None, None) => Err(Error::Invalid(format!("symmetric group S{n} is not built in (only S3)"))),
        (None, None, Some(elements), Some(table)) => {
            let idx = |e: &str| {
                elements
                    .iter()
                    .position(|x| x == e)
                    .ok_or_else(|| Error::Unresolved(format!("element {e:?} of {}", raw.name)))
            };
            let table = table
                .iter()
                .map(|row| row.iter().map(|e| idx(e)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let unit = match &raw.unit {
                Some(u) => idx(u)?,
                None => 0,
            };
            FiniteGroup::from_table(&raw.name, elements.clone(), table, unit)
        }
        _ => Err(Error::Invalid(format!("group {} needs one of cyclic, symmetric or elements+table", raw.name))),
    }
}

/// One morphism per base object of `c`, read from a map keyed by object name.
fn components(
    c: &Arc<Category>,
    lits: &BTreeMap<String, MorLit>,
    owner: &str,
    ends: impl Fn(usize) -> (Obj, Obj),
) -> Result<Vec<Mor>> {
    for k in lits.keys() {
        if c.object_index(k).is_none() {
            return Err(Error::Unresolved(format!("object {k:?} of {}", c.name())));
        }
    }
    (0..c.num_objects())
        .map(|x| {
            let name = c.object_name(x);
            let lit = lits.get(name).ok_or_else(|| Error::Invalid(format!("{owner} has no component at {name:?}")))?;
            let (d, e) = ends(x);
            parse_mor(&d, &e, lit)
        })
        .collect()
}

fn diffs(terms: &[Obj], lits: &[MorLit], owner: &str) -> Result<Vec<Mor>> {
    if lits.len() + 1 != terms.len().max(1) {
        return Err(Error::DimensionMismatch(format!("{owner}: {} differentials for {} terms", lits.len(), terms.len())));
    }
    lits.iter().enumerate().map(|(k, lit)| parse_mor(&terms[k], &terms[k + 1], lit)).collect()
}

fn check_unique_names(raw: &RawWorkspace) -> Result<()> {
    let mut seen: BTreeMap<&str, &str> = BTreeMap::new();
    let groups: [(&str, Vec<&str>); 13] = [
        ("field", raw.fields.iter().map(|d| d.name.as_str()).collect()),
        ("category", raw.categories.iter().map(|d| d.name.as_str()).collect()),
        ("group", raw.groups.iter().map(|d| d.name.as_str()).collect()),
        ("action", raw.actions.iter().map(|d| d.name.as_str()).collect()),
        ("functor", raw.functors.iter().map(|d| d.name.as_str()).collect()),
        ("natural transformation", raw.natural_transformations.iter().map(|d| d.name.as_str()).collect()),
        ("adjunction", raw.adjunctions.iter().map(|d| d.name.as_str()).collect()),
        ("monad", raw.monads.iter().map(|d| d.name.as_str()).collect()),
        ("equivariant object", raw.equivariant_objects.iter().map(|d| d.name.as_str()).collect()),
        ("module", raw.modules.iter().map(|d| d.name.as_str()).collect()),
        ("complex", raw.complexes.iter().map(|d| d.name.as_str()).collect()),
        ("module complex", raw.module_complexes.iter().map(|d| d.name.as_str()).collect()),
        ("suite", raw.suites.iter().map(|d| d.name.as_str()).collect()),
    ];
    for (kind, names) in &groups {
        for n in names {
            if let Some(prev) = seen.insert(n, kind) {
                return Err(Error::Invalid(format!("duplicate name {n:?} (declared as {prev} and {kind})")));
            }
        }
    }
    Ok(())
}
