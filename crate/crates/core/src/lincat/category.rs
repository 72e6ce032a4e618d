use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::{Field, Scalar};
use crate::report::ValidationReport;

/// A finitely presented k-linear category.
///
/// Hom spaces carry chosen bases; composition is given by structure
/// constants `c(b, a) ∈ Hom(x, z)` for basis elements `b ∈ Hom(y, z)` and
/// `a ∈ Hom(x, y)`, extended bilinearly. Construction does not enforce the
/// category axioms; [`Category::validate`] reports every violation.
#[derive(Clone)]
pub struct Category {
    name: String,
    field: Field,
    objects: Vec<String>,
    dims: Vec<usize>,
    basis_names: Vec<Vec<String>>,
    // ((x * n + y) * n + z) -> entry (b * dim(x, y) + a) -> vector in Hom(x, z)
    comp: Vec<Vec<Vec<Scalar>>>,
    identities: Vec<Vec<Scalar>>,
    basis_lookup: HashMap<String, (usize, usize, usize)>,
}

impl fmt::Debug for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Category")
            .field("name", &self.name)
            .field("field", &self.field)
            .field("objects", &self.objects)
            .finish()
    }
}

impl Category {
    /// Builds a presentation from raw structure data.
    ///
    /// `compose(x, y, z, b, a)` returns the coefficient vector of `b ∘ a` in
    /// `Hom(x, z)`, for basis indices `b` of `Hom(y, z)` and `a` of `Hom(x, y)`.
    pub fn from_structure(
        name: impl Into<String>,
        field: Field,
        objects: Vec<String>,
        basis_names: Vec<Vec<String>>,
        identities: Vec<Vec<Scalar>>,
        mut compose: impl FnMut(usize, usize, usize, usize, usize) -> Vec<Scalar>,
    ) -> Result<Category> {
        let n = objects.len();
        if basis_names.len() != n * n {
            return Err(Error::DimensionMismatch(format!("{} hom spaces for {n} objects", basis_names.len())));
        }
        if identities.len() != n {
            return Err(Error::DimensionMismatch(format!("{} identities for {n} objects", identities.len())));
        }
        let dims: Vec<usize> = basis_names.iter().map(Vec::len).collect();
        for (x, id) in identities.iter().enumerate() {
            if id.len() != dims[x * n + x] {
                return Err(Error::DimensionMismatch(format!(
                    "identity of {} has length {} but End has dimension {}",
                    objects[x],
                    id.len(),
                    dims[x * n + x]
                )));
            }
            if let Some(s) = id.iter().find(|s| s.field() != field) {
                return Err(Error::FieldMismatch(field.to_string(), s.field().to_string()));
            }
        }
        let mut comp = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (dxy, dyz, dxz) = (dims[x * n + y], dims[y * n + z], dims[x * n + z]);
                    let mut table = Vec::with_capacity(dxy * dyz);
                    for b in 0..dyz {
                        for a in 0..dxy {
                            let v = compose(x, y, z, b, a);
                            if v.len() != dxz {
                                return Err(Error::DimensionMismatch(format!(
                                    "composite {} ∘ {} has {} coefficients, expected {dxz}",
                                    basis_names[y * n + z][b],
                                    basis_names[x * n + y][a],
                                    v.len()
                                )));
                            }
                            if let Some(s) = v.iter().find(|s| s.field() != field) {
                                return Err(Error::FieldMismatch(field.to_string(), s.field().to_string()));
                            }
                            table.push(v);
                        }
                    }
                    comp.push(table);
                }
            }
        }
        let mut basis_lookup = HashMap::new();
        for x in 0..n {
            for y in 0..n {
                for (i, name) in basis_names[x * n + y].iter().enumerate() {
                    if basis_lookup.insert(name.clone(), (x, y, i)).is_some() {
                        return Err(Error::Invalid(format!("duplicate basis name {name:?}")));
                    }
                }
            }
        }
        Ok(Category { name: name.into(), field, objects, dims, basis_names, comp, identities, basis_lookup })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn object_name(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn dim(&self, x: usize, y: usize) -> usize {
        self.dims[x * self.objects.len() + y]
    }

    pub fn basis_names(&self, x: usize, y: usize) -> &[String] {
        &self.basis_names[x * self.objects.len() + y]
    }

    /// `(source, target, index)` of a named basis morphism.
    pub fn basis_lookup(&self, name: &str) -> Option<(usize, usize, usize)> {
        self.basis_lookup.get(name).copied()
    }

    pub fn identity_vec(&self, x: usize) -> &[Scalar] {
        &self.identities[x]
    }

    pub fn unit_vec(&self, x: usize, y: usize, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim(x, y)];
        v[i] = self.field.one();
        v
    }

    /// Structure constant `c(b, a)` for `b ∈ Hom(y, z)`, `a ∈ Hom(x, y)`.
    pub fn structure_constant(&self, x: usize, y: usize, z: usize, b: usize, a: usize) -> &[Scalar] {
        let n = self.objects.len();
        &self.comp[(x * n + y) * n + z][b * self.dim(x, y) + a]
    }

    /// Bilinear composite `g ∘ f` of coefficient vectors, `f ∈ Hom(x, y)`,
    /// `g ∈ Hom(y, z)`.
    pub fn compose_vec(&self, x: usize, y: usize, z: usize, g: &[Scalar], f: &[Scalar]) -> Vec<Scalar> {
        let n = self.objects.len();
        let dxy = self.dim(x, y);
        let table = &self.comp[(x * n + y) * n + z];
        let mut out = vec![self.field.zero(); self.dim(x, z)];
        for (b, gb) in g.iter().enumerate() {
            if gb.is_zero() {
                continue;
            }
            for (a, fa) in f.iter().enumerate() {
                if fa.is_zero() {
                    continue;
                }
                let coeff = gb * fa;
                for (k, c) in table[b * dxy + a].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = &out[k] + &(&coeff * c);
                    }
                }
            }
        }
        out
    }

    fn describe(&self, x: usize, y: usize, v: &[Scalar]) -> String {
        let names = self.basis_names(x, y);
        let terms: Vec<String> = v
            .iter()
            .zip(names)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, n)| if c.is_one() { n.clone() } else { format!("{c}·{n}") })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// Checks associativity on every composable basis triple and the two unit
    /// laws on every basis element.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new(format!("category {}", self.name));
        let n = self.objects.len();
        for x in 0..n {
            for y in 0..n {
                for a in 0..self.dim(x, y) {
                    let av = self.unit_vec(x, y, a);
                    let left = self.compose_vec(x, y, y, self.identity_vec(y), &av);
                    report.check(left == av, "left unit", || {
                        format!(
                            "({}, {}): got {}",
                            self.describe(y, y, self.identity_vec(y)),
                            self.basis_names(x, y)[a],
                            self.describe(x, y, &left)
                        )
                    });
                    let right = self.compose_vec(x, x, y, &av, self.identity_vec(x));
                    report.check(right == av, "right unit", || {
                        format!(
                            "({}, {}): got {}",
                            self.basis_names(x, y)[a],
                            self.describe(x, x, self.identity_vec(x)),
                            self.describe(x, y, &right)
                        )
                    });
                }
            }
        }
        for w in 0..n {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        for a in 0..self.dim(w, x) {
                            let av = self.unit_vec(w, x, a);
                            for b in 0..self.dim(x, y) {
                                let bv = self.unit_vec(x, y, b);
                                let ba = self.compose_vec(w, x, y, &bv, &av);
                                for c in 0..self.dim(y, z) {
                                    let cv = self.unit_vec(y, z, c);
                                    let lhs = self.compose_vec(w, y, z, &cv, &ba);
                                    let cb = self.compose_vec(x, y, z, &cv, &bv);
                                    let rhs = self.compose_vec(w, x, z, &cb, &av);
                                    report.check(lhs == rhs, "associativity", || {
                                        format!(
                                            "({}, {}, {})",
                                            self.basis_names(y, z)[c],
                                            self.basis_names(x, y)[b],
                                            self.basis_names(w, x)[a]
                                        )
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        report
    }

    /// Whether the integer `n` is invertible in this category: the
    /// characteristic of the base field does not divide `n`.
    pub fn int_invertible(&self, n: u64) -> bool {
        self.field.int_invertible(n)
    }
}

/// Incremental construction of a [`Category`] from named data.
///
/// Basis elements registered with [`CategoryBuilder::unit`] are identities:
/// composites with them default to the other factor unless set explicitly.
/// Every other composite not set explicitly is zero.
#[derive(Debug, Clone)]
pub struct CategoryBuilder {
    name: String,
    field: Field,
    objects: Vec<String>,
    homs: BTreeMap<(usize, usize), Vec<String>>,
    identities: BTreeMap<usize, Vec<Scalar>>,
    units: BTreeMap<usize, String>,
    composites: HashMap<(String, String), Vec<Scalar>>,
}

impl CategoryBuilder {
    pub fn new(name: impl Into<String>, field: Field) -> Self {
        CategoryBuilder {
            name: name.into(),
            field,
            objects: Vec::new(),
            homs: BTreeMap::new(),
            identities: BTreeMap::new(),
            units: BTreeMap::new(),
            composites: HashMap::new(),
        }
    }

    pub fn object(&mut self, name: &str) -> usize {
        self.objects.push(name.to_string());
        self.objects.len() - 1
    }

    fn index(&self, name: &str) -> Result<usize> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| Error::Unresolved(format!("object {name:?}")))
    }

    /// Declares the basis of `Hom(x, y)`.
    pub fn hom(&mut self, x: &str, y: &str, basis: &[&str]) -> Result<&mut Self> {
        let (x, y) = (self.index(x)?, self.index(y)?);
        self.homs.entry((x, y)).or_default().extend(basis.iter().map(|s| s.to_string()));
        Ok(self)
    }

    /// Declares `name` as an identity basis element of `End(x)`.
    pub fn unit(&mut self, x: &str, name: &str) -> Result<&mut Self> {
        let xi = self.index(x)?;
        self.homs.entry((xi, xi)).or_default().push(name.to_string());
        self.units.insert(xi, name.to_string());
        Ok(self)
    }

    /// Sets the identity of `x` as an explicit coefficient vector.
    pub fn identity(&mut self, x: &str, coeffs: Vec<Scalar>) -> Result<&mut Self> {
        let xi = self.index(x)?;
        self.identities.insert(xi, coeffs);
        Ok(self)
    }

    /// Sets the composite `outer ∘ inner` of two basis elements.
    pub fn compose(&mut self, outer: &str, inner: &str, coeffs: Vec<Scalar>) -> &mut Self {
        self.composites.insert((outer.to_string(), inner.to_string()), coeffs);
        self
    }

    pub fn build(&self) -> Result<Category> {
        let n = self.objects.len();
        let mut basis_names = vec![Vec::new(); n * n];
        for ((x, y), names) in &self.homs {
            basis_names[x * n + y] = names.clone();
        }
        let pos = |x: usize, y: usize, name: &str| basis_names[x * n + y].iter().position(|b| b == name);
        let mut identities = Vec::with_capacity(n);
        for x in 0..n {
            let dim = basis_names[x * n + x].len();
            let id = if let Some(v) = self.identities.get(&x) {
                v.clone()
            } else if let Some(u) = self.units.get(&x) {
                let mut v = vec![self.field.zero(); dim];
                v[pos(x, x, u).unwrap()] = self.field.one();
                v
            } else if dim == 0 {
                Vec::new()
            } else {
                return Err(Error::Invalid(format!("object {:?} has no identity", self.objects[x])));
            };
            identities.push(id);
        }
        for key in self.composites.keys() {
            for name in [&key.0, &key.1] {
                if !basis_names.iter().flatten().any(|b| b == name) {
                    return Err(Error::Unresolved(format!("basis morphism {name:?}")));
                }
            }
        }
        let field = self.field;
        let units = &self.units;
        let composites = &self.composites;
        let names = basis_names.clone();
        Category::from_structure(
            self.name.clone(),
            field,
            self.objects.clone(),
            basis_names,
            identities,
            |x, y, z, b, a| {
                let bn = &names[y * n + z][b];
                let an = &names[x * n + y][a];
                if let Some(v) = composites.get(&(bn.clone(), an.clone())) {
                    return v.clone();
                }
                let mut v = vec![field.zero(); names[x * n + z].len()];
                if y == z && units.get(&y) == Some(bn) {
                    v[a] = field.one();
                    return v;
                }
                if x == y && units.get(&x) == Some(an) {
                    v[b] = field.one();
                }
                v
            },
        )
    }

    pub fn build_arc(&self) -> Result<Arc<Category>> {
        self.build().map(Arc::new)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn field_as_category_validates() {
        let c1 = fixtures::c1(Field::Rationals);
        assert!(c1.validate().passed());
        assert_eq!(c1.dim(0, 0), 1);
    }

    #[test]
    fn a2_quiver_validates() {
        let c2 = fixtures::c2(Field::Rationals);
        let r = c2.validate();
        assert!(r.passed(), "{r}");
        assert_eq!(c2.dim(0, 1), 1);
        assert_eq!(c2.dim(1, 0), 0);
    }

    #[test]
    fn broken_unit_is_reported_at_the_pair() {
        let q = Field::Rationals;
        let mut b = CategoryBuilder::new("C2-broken", q);
        b.object("1");
        b.object("2");
        b.unit("1", "id_1").unwrap();
        b.unit("2", "id_2").unwrap();
        b.hom("1", "2", &["a"]).unwrap();
        b.compose("id_2", "a", vec![q.zero()]);
        let c = b.build().unwrap();
        let r = c.validate();
        assert!(!r.passed());
        assert!(r
            .violations
            .iter()
            .any(|v| v.law == "left unit" && v.location.starts_with("(id_2, a)")));
    }

    #[test]
    fn int_invertible_examples() {
        assert!(fixtures::c1(Field::Rationals).int_invertible(6));
        assert!(!fixtures::c1(Field::Prime(2)).int_invertible(2));
        assert!(fixtures::c1(Field::Prime(3)).int_invertible(2));
    }

    #[test]
    fn duplicate_basis_names_rejected() {
        let q = Field::Rationals;
        let mut b = CategoryBuilder::new("dup", q);
        b.object("x");
        b.object("y");
        b.unit("x", "f").unwrap();
        b.unit("y", "f").unwrap();
        assert!(b.build().is_err());
    }
}
