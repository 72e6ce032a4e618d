use std::sync::Arc;

use serde::Serialize;

use super::adjunction::Adjunction;
use super::functor::Functor;
use super::nat::NatTrans;
use crate::error::{Error, Result};
use crate::exactlin::{solve_residual, Feasibility, Field, Infeasible, Matrix, Scalar};
use crate::lincat::{push_mor, Blocks, HomFamily, HomSpace, Mor, Obj};
use crate::report::ValidationReport;

/// Retraction data `H_{X,Y}: Hom_D(F X, F Y) → Hom_C(X, Y)` for a functor
/// `F: C → D`, one matrix per pair of base objects.
///
/// Columns are indexed by the basis of `Hom_D(F X, F Y)` (a [`HomSpace`]),
/// rows by the basis of `Hom_C(X, Y)`.
#[derive(Clone, Debug)]
pub struct SepWitness {
    functor: Arc<Functor>,
    spaces: Vec<HomSpace>,
    maps: Vec<Matrix>,
}

fn image_spaces(f: &Functor) -> Vec<HomSpace> {
    let n = f.source().num_objects();
    (0..n * n).map(|k| HomSpace::new(f.object(k / n), f.object(k % n))).collect()
}

impl SepWitness {
    /// Wraps raw matrices without checking the laws.
    pub fn from_matrices(functor: &Arc<Functor>, maps: Vec<Matrix>) -> Result<SepWitness> {
        let spaces = image_spaces(functor);
        let c = functor.source();
        let n = c.num_objects();
        if maps.len() != n * n {
            return Err(Error::DimensionMismatch(format!("{} maps for {} pairs", maps.len(), n * n)));
        }
        for (k, m) in maps.iter().enumerate() {
            if m.rows() != c.dim(k / n, k % n) || m.cols() != spaces[k].dim() {
                return Err(Error::DimensionMismatch(format!(
                    "H at ({}, {}) is {}×{}, expected {}×{}",
                    c.object_name(k / n),
                    c.object_name(k % n),
                    m.rows(),
                    m.cols(),
                    c.dim(k / n, k % n),
                    spaces[k].dim()
                )));
            }
        }
        Ok(SepWitness { functor: functor.clone(), spaces, maps })
    }

    fn from_fn(functor: &Arc<Functor>, mut h: impl FnMut(usize, usize, &Mor) -> Result<Vec<Scalar>>) -> Result<SepWitness> {
        let spaces = image_spaces(functor);
        let c = functor.source();
        let field = c.field();
        let n = c.num_objects();
        let mut maps = Vec::with_capacity(n * n);
        for (k, space) in spaces.iter().enumerate() {
            let (x, y) = (k / n, k % n);
            let mut m = Matrix::zeros(field, c.dim(x, y), space.dim());
            for (col, g) in space.basis().iter().enumerate() {
                let v = h(x, y, g)?;
                for (row, s) in v.into_iter().enumerate() {
                    m.set(row, col, s);
                }
            }
            maps.push(m);
        }
        Ok(SepWitness { functor: functor.clone(), spaces, maps })
    }

    pub fn functor(&self) -> &Arc<Functor> {
        &self.functor
    }

    pub fn matrix(&self, x: usize, y: usize) -> &Matrix {
        &self.maps[x * self.functor.source().num_objects() + y]
    }

    pub fn space(&self, x: usize, y: usize) -> &HomSpace {
        &self.spaces[x * self.functor.source().num_objects() + y]
    }

    /// `H_{x,y}(g)` for base objects, as a coefficient vector of `Hom_C(x, y)`.
    pub fn apply(&self, x: usize, y: usize, g: &Mor) -> Result<Vec<Scalar>> {
        let coords = self.space(x, y).coords(g)?;
        self.matrix(x, y).mul_vec(&coords)
    }

    /// `H_{X,Y}(g)` for closure objects `X`, `Y` of the source, extended
    /// blockwise and absorbed by the idempotents of `X` and `Y`.
    pub fn apply_closure(&self, dom: &Obj, cod: &Obj, g: &Mor) -> Result<Mor> {
        let f = &self.functor;
        let fdom = f.apply_obj(dom)?;
        let fcod = f.apply_obj(cod)?;
        if g.dom() != &fdom || g.cod() != &fcod {
            return Err(Error::ObjectMismatch(format!("{} → {} is not F({dom}) → F({cod})", g.dom(), g.cod())));
        }
        let doms: Vec<Obj> = dom.summands().iter().map(|&s| f.object(s).clone()).collect();
        let cods: Vec<Obj> = cod.summands().iter().map(|&t| f.object(t).clone()).collect();
        let (co, ro) = (Obj::offsets(&doms), Obj::offsets(&cods));
        let mut blocks = Blocks::zero(cod.len(), dom.len());
        for (i, &t) in cod.summands().iter().enumerate() {
            for (j, &s) in dom.summands().iter().enumerate() {
                let part = g.blocks().slice(ro[i], cods[i].len(), co[j], doms[j].len());
                let part = Mor::unchecked(&doms[j], &cods[i], part)?;
                blocks.set(i, j, self.apply(s, t, &part)?);
            }
        }
        Mor::absorbed(dom, cod, blocks)
    }

    /// Retraction law on every basis morphism and both halves of
    /// binaturality on every basis morphism and basis element of the image
    /// hom spaces.
    pub fn verify(&self) -> ValidationReport {
        let f = &self.functor;
        let c = f.source();
        let n = c.num_objects();
        let mut r = ValidationReport::new(format!("separability witness for {}", f.name()));
        for x in 0..n {
            for y in 0..n {
                for a in 0..c.dim(x, y) {
                    let ok = self.apply(x, y, f.hom(x, y, a)).map(|v| v == c.unit_vec(x, y, a)).unwrap_or(false);
                    r.check(ok, "H(F(f)) = f", || c.basis_names(x, y)[a].clone());
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for (k, g) in self.space(x, y).basis().iter().enumerate() {
                    let hg = match self.apply(x, y, g) {
                        Ok(v) => v,
                        Err(_) => {
                            r.fail("H defined", format!("({}, {}) basis {k}", c.object_name(x), c.object_name(y)));
                            continue;
                        }
                    };
                    for z in 0..n {
                        for v in 0..c.dim(y, z) {
                            let lhs = f.hom(y, z, v).compose(g).ok().and_then(|m| self.apply(x, z, &m).ok());
                            let rhs = c.compose_vec(x, y, z, &c.unit_vec(y, z, v), &hg);
                            r.check(lhs.as_ref() == Some(&rhs), "H(F(v)∘g) = v∘H(g)", || {
                                format!("v = {}, g = basis {k} of ({}, {})", c.basis_names(y, z)[v], c.object_name(x), c.object_name(y))
                            });
                        }
                        for u in 0..c.dim(z, x) {
                            let lhs = g.compose(f.hom(z, x, u)).ok().and_then(|m| self.apply(z, y, &m).ok());
                            let rhs = c.compose_vec(z, x, y, &hg, &c.unit_vec(z, x, u));
                            r.check(lhs.as_ref() == Some(&rhs), "H(g∘F(u)) = H(g)∘u", || {
                                format!("u = {}, g = basis {k} of ({}, {})", c.basis_names(z, x)[u], c.object_name(x), c.object_name(y))
                            });
                        }
                    }
                }
            }
        }
        r
    }

    pub fn to_json(&self) -> WitnessFile {
        let c = self.functor.source();
        let n = c.num_objects();
        let pairs = (0..n * n)
            .map(|k| PairMap {
                from: c.object_name(k / n).to_string(),
                to: c.object_name(k % n).to_string(),
                source_dim: self.spaces[k].dim(),
                matrix: (0..self.maps[k].rows())
                    .map(|i| self.maps[k].row(i).iter().map(|s| s.to_string()).collect())
                    .collect(),
            })
            .collect();
        WitnessFile { functor: self.functor.name().to_string(), field: c.field().to_string(), pairs }
    }
}

/// Serialized form of a [`SepWitness`].
#[derive(Clone, Debug, Serialize, serde::Deserialize)]
pub struct WitnessFile {
    pub functor: String,
    pub field: String,
    pub pairs: Vec<PairMap>,
}

#[derive(Clone, Debug, Serialize, serde::Deserialize)]
pub struct PairMap {
    pub from: String,
    pub to: String,
    pub source_dim: usize,
    pub matrix: Vec<Vec<String>>,
}

impl WitnessFile {
    pub fn into_witness(&self, functor: &Arc<Functor>) -> Result<SepWitness> {
        let c = functor.source();
        let field = c.field();
        let n = c.num_objects();
        let spaces = image_spaces(functor);
        let mut maps = Vec::with_capacity(n * n);
        for k in 0..n * n {
            let (x, y) = (c.object_name(k / n), c.object_name(k % n));
            let p = self
                .pairs
                .iter()
                .find(|p| p.from == x && p.to == y)
                .ok_or_else(|| Error::Unresolved(format!("witness entry for ({x}, {y})")))?;
            let rows = p
                .matrix
                .iter()
                .map(|row| row.iter().map(|s| field.parse_scalar(s)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let m = if rows.is_empty() { Matrix::zeros(field, 0, spaces[k].dim()) } else { Matrix::from_rows(field, rows)? };
            maps.push(m);
        }
        SepWitness::from_matrices(functor, maps)
    }
}

/// Result of [`separability_solve`].
#[derive(Clone, Debug)]
pub enum SepOutcome {
    Separable(SepWitness),
    Infeasible(Infeasible),
}

impl SepOutcome {
    pub fn witness(self) -> Option<SepWitness> {
        match self {
            SepOutcome::Separable(w) => Some(w),
            SepOutcome::Infeasible(_) => None,
        }
    }

    pub fn is_separable(&self) -> bool {
        matches!(self, SepOutcome::Separable(_))
    }
}

/// Decides whether `F` is separable by solving for `H` directly.
///
/// Unknowns are the entries of all `H_{X,Y}` ordered by (pair, row, column);
/// constraints are the retraction law and both halves of binaturality on
/// basis data. The returned witness is re-verified.
pub fn separability_solve(f: &Arc<Functor>) -> Result<SepOutcome> {
    let c = f.source();
    let field = c.field();
    let n = c.num_objects();
    let spaces = image_spaces(f);
    let sp = |x: usize, y: usize| &spaces[x * n + y];
    let mut offsets = vec![0];
    for k in 0..n * n {
        offsets.push(offsets[k] + c.dim(k / n, k % n) * spaces[k].dim());
    }
    let unknowns = offsets[n * n];
    // Precomputed coordinates of F(a), F(v)∘g and g∘F(u).
    let mut ret: Vec<(usize, usize, usize, Vec<Scalar>)> = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for a in 0..c.dim(x, y) {
                ret.push((x, y, a, sp(x, y).coords(f.hom(x, y, a))?));
            }
        }
    }
    let mut left: Vec<(usize, usize, usize, usize, usize, Vec<Scalar>)> = Vec::new();
    let mut right: Vec<(usize, usize, usize, usize, usize, Vec<Scalar>)> = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for (k, g) in sp(x, y).basis().iter().enumerate() {
                for z in 0..n {
                    for v in 0..c.dim(y, z) {
                        left.push((x, y, z, k, v, sp(x, z).coords(&f.hom(y, z, v).compose(g)?)?));
                    }
                    for u in 0..c.dim(z, x) {
                        right.push((x, y, z, k, u, sp(z, y).coords(&g.compose(f.hom(z, x, u))?)?));
                    }
                }
            }
        }
    }
    let h_apply = |h: &[Scalar], x: usize, y: usize, coords: &[Scalar]| -> Vec<Scalar> {
        let k = x * n + y;
        let cols = spaces[k].dim();
        let base = offsets[k];
        (0..c.dim(x, y))
            .map(|row| {
                let mut acc = field.zero();
                for (col, s) in coords.iter().enumerate() {
                    if !s.is_zero() {
                        let e = &h[base + row * cols + col];
                        if !e.is_zero() {
                            acc = &acc + &(e * s);
                        }
                    }
                }
                acc
            })
            .collect()
    };
    let h_col = |h: &[Scalar], x: usize, y: usize, col: usize| -> Vec<Scalar> {
        let k = x * n + y;
        let cols = spaces[k].dim();
        (0..c.dim(x, y)).map(|row| h[offsets[k] + row * cols + col].clone()).collect()
    };
    let sol = solve_residual(field, unknowns, |h| {
        let mut r = crate::exactlin::Residual::new();
        for (x, y, a, coords) in &ret {
            let mut v = h_apply(h, *x, *y, coords);
            v[*a] = &v[*a] - &field.one();
            r.push_vec(&v);
        }
        for (x, y, z, k, v, coords) in &left {
            let lhs = h_apply(h, *x, *z, coords);
            let rhs = c.compose_vec(*x, *y, *z, &c.unit_vec(*y, *z, *v), &h_col(h, *x, *y, *k));
            let d: Vec<Scalar> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
            r.push_vec(&d);
        }
        for (x, y, z, k, u, coords) in &right {
            let lhs = h_apply(h, *z, *y, coords);
            let rhs = c.compose_vec(*z, *x, *y, &h_col(h, *x, *y, *k), &c.unit_vec(*z, *x, *u));
            let d: Vec<Scalar> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
            r.push_vec(&d);
        }
        r
    });
    match sol {
        Feasibility::Infeasible(i) => Ok(SepOutcome::Infeasible(i)),
        Feasibility::Feasible(sol) => {
            let mut maps = Vec::with_capacity(n * n);
            for k in 0..n * n {
                let (rows, cols) = (c.dim(k / n, k % n), spaces[k].dim());
                let data = sol.particular[offsets[k]..offsets[k + 1]].to_vec();
                maps.push(Matrix::new(field, rows, cols, data)?);
            }
            let w = SepWitness { functor: f.clone(), spaces, maps };
            w.verify().into_result()?;
            Ok(SepOutcome::Separable(w))
        }
    }
}

/// Constructions producing new witnesses from old ones.
pub enum Transfer<'a> {
    /// `H^{GF} = H^F ∘ H^G(F−, F−)` from witnesses for `F` and `G`.
    Compose { inner: &'a SepWitness, outer: &'a SepWitness },
    /// `H^F(g) = H^{GF}(G(g))` from a witness for `G ∘ F`.
    LeftFactor { composite: &'a SepWitness, inner: &'a Arc<Functor>, outer: &'a Arc<Functor> },
    /// `H^F = H^{F'} ∘ Δ`, `Δ(g) = ψ_Y ∘ g ∘ φ_X`, for `φ: F' → F`,
    /// `ψ: F → F'` with `ψ ∘ φ = Id_{F'}`.
    Retract { witness: &'a SepWitness, functor: &'a Arc<Functor>, phi: &'a NatTrans, psi: &'a NatTrans },
    /// Inverse hom bijections of a fully faithful functor.
    FullyFaithful { functor: &'a Arc<Functor> },
    /// `H^G(g) = ε_Y ∘ F(g) ∘ ξ_X` for the right adjoint `G`, given
    /// `ξ: Id → FG` with `ε ∘ ξ = Id`.
    FromXi { adjunction: &'a Adjunction, xi: &'a NatTrans },
}

impl Transfer<'_> {
    pub fn rule(&self) -> &'static str {
        match self {
            Transfer::Compose { .. } => "compose",
            Transfer::LeftFactor { .. } => "left-factor",
            Transfer::Retract { .. } => "retract",
            Transfer::FullyFaithful { .. } => "fully-faithful",
            Transfer::FromXi { .. } => "from-xi",
        }
    }
}

/// Builds a witness by one of the transfer rules and re-verifies it.
pub fn transfer_witness(t: Transfer<'_>) -> Result<SepWitness> {
    let w = match &t {
        Transfer::Compose { inner, outer } => {
            let f = inner.functor();
            let g = outer.functor();
            let gf = Arc::new(Functor::compose(g, f)?);
            SepWitness::from_fn(&gf, |x, y, h| {
                let mid = outer.apply_closure(f.object(x), f.object(y), h)?;
                inner.apply(x, y, &mid)
            })?
        }
        Transfer::LeftFactor { composite, inner, outer } => {
            let gf = Functor::compose(outer, inner)?;
            if gf.objects() != composite.functor().objects() {
                return Err(Error::PreconditionFailed(format!(
                    "witness is for {}, not {}∘{}",
                    composite.functor().name(),
                    outer.name(),
                    inner.name()
                )));
            }
            SepWitness::from_fn(inner, |x, y, g| composite.apply(x, y, &outer.apply_mor(g)?))?
        }
        Transfer::Retract { witness, functor, phi, psi } => {
            let psiphi = psi.vcompose(phi)?;
            if psiphi.components().iter().any(|c| !c.is_identity()) {
                return Err(Error::PreconditionFailed("ψ∘φ ≠ Id".into()));
            }
            SepWitness::from_fn(functor, |x, y, g| {
                let delta = psi.component(y).compose(g)?.compose(phi.component(x))?;
                witness.apply(x, y, &delta)
            })?
        }
        Transfer::FullyFaithful { functor } => {
            let c = functor.source();
            let n = c.num_objects();
            let spaces = image_spaces(functor);
            let mut maps = Vec::with_capacity(n * n);
            for (k, space) in spaces.iter().enumerate() {
                let (x, y) = (k / n, k % n);
                let cols: Vec<Vec<Scalar>> =
                    (0..c.dim(x, y)).map(|a| space.coords(functor.hom(x, y, a))).collect::<Result<_>>()?;
                let d = c.dim(x, y);
                if d != space.dim() {
                    return Err(Error::PreconditionFailed(format!(
                        "hom map at ({}, {}) is {}-dimensional into {}",
                        c.object_name(x),
                        c.object_name(y),
                        d,
                        space.dim()
                    )));
                }
                let mut m = Matrix::zeros(c.field(), d, d);
                for (a, col) in cols.iter().enumerate() {
                    for (i, s) in col.iter().enumerate() {
                        m.set(i, a, s.clone());
                    }
                }
                let inv = m.inverse().ok_or_else(|| {
                    Error::PreconditionFailed(format!("hom map at ({}, {}) is not bijective", c.object_name(x), c.object_name(y)))
                })?;
                maps.push(inv);
            }
            SepWitness { functor: (*functor).clone(), spaces, maps }
        }
        Transfer::FromXi { adjunction, xi } => {
            let ok = xi.components().iter().enumerate().all(|(y, c)| {
                adjunction.counit().component(y).compose(c).map(|m| m.is_identity()).unwrap_or(false)
            });
            if !ok {
                return Err(Error::PreconditionFailed("ε∘ξ ≠ Id".into()));
            }
            let f = adjunction.left();
            SepWitness::from_fn(adjunction.right(), |x, y, g| {
                let m = adjunction.counit().component(y).compose(&f.apply_mor(g)?)?.compose(xi.component(x))?;
                Ok(m.block(0, 0))
            })?
        }
    };
    let report = w.verify();
    if !report.passed() {
        return Err(Error::LawViolation(format!("{} rule: {report}", t.rule())));
    }
    Ok(w)
}

/// `ξ_Y = H_{Y, FGY}(η_{GY})` for a witness `H` of the right adjoint.
pub fn extract_section(adj: &Adjunction, h: &SepWitness) -> Result<NatTrans> {
    let f = adj.left();
    let g = adj.right();
    let d = f.target();
    let mut comps = Vec::with_capacity(d.num_objects());
    for y in 0..d.num_objects() {
        let gy = g.object(y);
        let fgy = f.apply_obj(gy)?;
        let eta = adj.unit().at(gy)?;
        comps.push(h.apply_closure(&Obj::base(d, y), &fgy, &eta)?);
    }
    let id = Arc::new(Functor::identity(d));
    let fg = adj.counit().from().clone();
    let xi = NatTrans::new("ξ", &id, &fg, comps)?;
    check_section(adj, &xi)?;
    Ok(xi)
}

/// `ε ∘ ξ = Id` at every base object, as an error.
pub fn check_section(adj: &Adjunction, xi: &NatTrans) -> Result<()> {
    for (y, c) in xi.components().iter().enumerate() {
        let ok = adj.counit().component(y).compose(c).map(|m| m.is_identity()).unwrap_or(false);
        if !ok {
            return Err(Error::LawViolation(format!("ε∘ξ ≠ Id at {}", adj.left().target().object_name(y))));
        }
    }
    Ok(())
}

/// Solves directly for a natural `ξ: Id → FG` with `ε ∘ ξ = Id`,
/// independently of any witness for `G`.
pub fn xi_solve(adj: &Adjunction) -> Result<Option<NatTrans>> {
    let d = adj.left().target().clone();
    let fg = adj.counit().from().clone();
    let n = d.num_objects();
    let family = HomFamily::new((0..n).map(|y| HomSpace::new(&Obj::base(&d, y), fg.object(y))).collect());
    let sol = family.solve(d.field(), |xi, r| {
        for y in 0..n {
            let e = adj.counit().component(y).compose(&xi[y]).expect("composable");
            push_mor(r, &e.sub(&Mor::identity(&Obj::base(&d, y))).expect("parallel"));
        }
        for y in 0..n {
            for z in 0..n {
                for b in 0..d.dim(y, z) {
                    let lhs = xi[z].compose(&Mor::basis(&d, y, z, b)).expect("composable");
                    let rhs = fg.hom(y, z, b).compose(&xi[y]).expect("composable");
                    push_mor(r, &lhs.sub(&rhs).expect("parallel"));
                }
            }
        }
    });
    match sol {
        Feasibility::Infeasible(_) => Ok(None),
        Feasibility::Feasible((comps, _)) => {
            let id = Arc::new(Functor::identity(&d));
            let xi = NatTrans::new("ξ", &id, &fg, comps)?;
            xi.validate().into_result()?;
            check_section(adj, &xi)?;
            Ok(Some(xi))
        }
    }
}

/// Bijectivity of the hom map of `F` on one pair of closure objects.
#[derive(Clone, Debug, Serialize)]
pub struct HomMapReport {
    pub from: String,
    pub to: String,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub bijective: bool,
}

/// Rank of `Hom(X, Y) → Hom(F X, F Y)` on each given pair.
pub fn fully_faithful_on(f: &Functor, pairs: &[(Obj, Obj)]) -> Result<Vec<HomMapReport>> {
    let field: Field = f.source().field();
    let mut out = Vec::with_capacity(pairs.len());
    for (x, y) in pairs {
        let src = HomSpace::new(x, y);
        let tgt = HomSpace::new(&f.apply_obj(x)?, &f.apply_obj(y)?);
        let mut m = Matrix::zeros(field, tgt.dim(), src.dim());
        for (j, b) in src.basis().iter().enumerate() {
            for (i, s) in tgt.coords(&f.apply_mor(b)?)?.into_iter().enumerate() {
                m.set(i, j, s);
            }
        }
        let rank = m.rank();
        out.push(HomMapReport {
            from: x.to_string(),
            to: y.to_string(),
            source_dim: src.dim(),
            target_dim: tgt.dim(),
            rank,
            bijective: rank == src.dim() && rank == tgt.dim(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn identity_functor_is_separable_with_identity_witness() {
        let c1 = Arc::new(fixtures::c1(Field::Rationals));
        let id = Arc::new(Functor::identity(&c1));
        let w = separability_solve(&id).unwrap().witness().unwrap();
        assert_eq!(w.matrix(0, 0), &Matrix::identity(Field::Rationals, 1));
        let ff = transfer_witness(Transfer::FullyFaithful { functor: &id }).unwrap();
        assert!(ff.verify().passed());
    }

    #[test]
    fn compose_of_identity_witnesses() {
        let c2 = Arc::new(fixtures::c2(Field::Rationals));
        let id = Arc::new(Functor::identity(&c2));
        let w = separability_solve(&id).unwrap().witness().unwrap();
        let both = transfer_witness(Transfer::Compose { inner: &w, outer: &w }).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(both.matrix(x, y), w.matrix(x, y));
            }
        }
    }

    #[test]
    fn trivial_retract_returns_same_witness() {
        let c2 = Arc::new(fixtures::c2(Field::Rationals));
        let id = Arc::new(Functor::identity(&c2));
        let w = separability_solve(&id).unwrap().witness().unwrap();
        let one = NatTrans::identity(&id);
        let r = transfer_witness(Transfer::Retract { witness: &w, functor: &id, phi: &one, psi: &one }).unwrap();
        assert_eq!(r.maps, w.maps);
    }

    #[test]
    fn identity_adjunction_section() {
        let c2 = Arc::new(fixtures::c2(Field::Rationals));
        let adj = Adjunction::identity(&c2);
        let w = separability_solve(adj.right()).unwrap().witness().unwrap();
        let xi = extract_section(&adj, &w).unwrap();
        assert!(xi.components().iter().all(Mor::is_identity));
        assert!(xi_solve(&adj).unwrap().is_some());
    }

    #[test]
    fn collapse_functor_has_rank_one() {
        let q = Field::Rationals;
        let d1 = Arc::new(fixtures::dual_numbers(q));
        let c1 = Arc::new(fixtures::c1(q));
        let x = Obj::base(&c1, 0);
        let collapse = Functor::new("collapse", &d1, &c1, vec![x.clone()], |_, _, a| {
            Ok(if a == 0 { Mor::identity(&x) } else { Mor::zero(&x, &x) })
        })
        .unwrap();
        assert!(collapse.validate().passed());
        let rep = fully_faithful_on(&collapse, &[(Obj::base(&d1, 0), Obj::base(&d1, 0))]).unwrap();
        assert_eq!((rep[0].rank, rep[0].source_dim, rep[0].bijective), (1, 2, false));
    }

    #[test]
    fn witness_json_roundtrip() {
        let c2 = Arc::new(fixtures::c2(Field::Rationals));
        let id = Arc::new(Functor::identity(&c2));
        let w = separability_solve(&id).unwrap().witness().unwrap();
        let text = serde_json::to_string(&w.to_json()).unwrap();
        let back: WitnessFile = serde_json::from_str(&text).unwrap();
        assert!(back.into_witness(&id).unwrap().verify().passed());
    }
}
