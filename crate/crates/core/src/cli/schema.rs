//! Serialized workspace declarations, exactly as they appear on disk.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// A matrix of basis-coefficient maps: `rows × cols` entries, each mapping
/// basis names of the relevant hom space to scalar strings. `{}` is zero.
pub type MorLit = Vec<Vec<BTreeMap<String, String>>>;

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum ObjLit {
    Base(String),
    Sum(Vec<String>),
    Karoubi { summands: Vec<String>, idempotent: MorLit },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawWorkspace {
    pub schema_version: u32,
    #[serde(default)]
    pub fields: Vec<RawField>,
    #[serde(default)]
    pub categories: Vec<RawCategory>,
    #[serde(default)]
    pub groups: Vec<RawGroup>,
    #[serde(default)]
    pub actions: Vec<RawAction>,
    #[serde(default)]
    pub functors: Vec<RawFunctor>,
    #[serde(default)]
    pub natural_transformations: Vec<RawNat>,
    #[serde(default)]
    pub adjunctions: Vec<RawAdjunction>,
    #[serde(default)]
    pub monads: Vec<RawMonad>,
    #[serde(default)]
    pub equivariant_objects: Vec<RawEquivObject>,
    #[serde(default)]
    pub modules: Vec<RawModule>,
    #[serde(default)]
    pub complexes: Vec<RawComplex>,
    #[serde(default)]
    pub module_complexes: Vec<RawModuleComplex>,
    #[serde(default)]
    pub suites: Vec<RawSuite>,
}

/// `spec` is `"Q"` or `"F<p>"`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawField {
    pub name: String,
    pub spec: String,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawHom {
    pub from: String,
    pub to: String,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawComposite {
    pub outer: String,
    pub inner: String,
    pub result: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCategory {
    pub name: String,
    pub field: String,
    pub objects: Vec<String>,
    /// Object name to the basis name of its identity.
    #[serde(default)]
    pub units: BTreeMap<String, String>,
    #[serde(default)]
    pub homs: Vec<RawHom>,
    /// Identities that are not a single basis element.
    #[serde(default)]
    pub identities: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default)]
    pub composition: Vec<RawComposite>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGroup {
    pub name: String,
    #[serde(default)]
    pub cyclic: Option<usize>,
    #[serde(default)]
    pub symmetric: Option<usize>,
    #[serde(default)]
    pub elements: Option<Vec<String>>,
    #[serde(default)]
    pub unit: Option<String>,
    /// `table[g][h]` names `gh`.
    #[serde(default)]
    pub table: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawAction {
    pub name: String,
    pub group: String,
    pub category: String,
    #[serde(default)]
    pub trivial: bool,
    /// Element name to object permutation (unlisted objects are fixed).
    #[serde(default)]
    pub objects: BTreeMap<String, BTreeMap<String, String>>,
    /// Element name to basis images (unlisted basis elements go to the
    /// basis element of the same index in the image hom space).
    #[serde(default)]
    pub homs: BTreeMap<String, BTreeMap<String, BTreeMap<String, String>>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawFunctor {
    pub name: String,
    pub source: String,
    pub target: String,
    pub objects: BTreeMap<String, ObjLit>,
    pub homs: BTreeMap<String, MorLit>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawNat {
    pub name: String,
    pub from: String,
    pub to: String,
    pub components: BTreeMap<String, MorLit>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RawAdjunctionKind {
    Explicit {
        left: String,
        right: String,
        unit: BTreeMap<String, MorLit>,
        counit: BTreeMap<String, MorLit>,
    },
    Equivariant {
        action: String,
        #[serde(default)]
        samples: Vec<String>,
    },
    Identity {
        category: String,
    },
    EilenbergMoore {
        monad: String,
        #[serde(default)]
        modules: Vec<String>,
    },
}

#[derive(Clone, Debug, Deserialize)]
pub struct RawAdjunction {
    pub name: String,
    #[serde(flatten)]
    pub kind: RawAdjunctionKind,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RawMonadKind {
    Group { action: String },
    FromAdjunction { adjunction: String },
    Identity { category: String },
    Explicit { functor: String, unit: BTreeMap<String, MorLit>, mult: BTreeMap<String, MorLit> },
}

#[derive(Clone, Debug, Deserialize)]
pub struct RawMonad {
    pub name: String,
    #[serde(flatten)]
    pub kind: RawMonadKind,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawEquivObject {
    pub name: String,
    pub action: String,
    pub carrier: ObjLit,
    /// Element name to `α_g: X → ^g X`; the unit may be omitted.
    #[serde(default)]
    pub alpha: BTreeMap<String, MorLit>,
    /// Shorthand for a one-dimensional carrier: element name to scalar.
    #[serde(default)]
    pub character: Option<BTreeMap<String, String>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawModule {
    pub name: String,
    pub monad: String,
    #[serde(default)]
    pub carrier: Option<ObjLit>,
    #[serde(default)]
    pub action: Option<MorLit>,
    #[serde(default)]
    pub free_on: Option<ObjLit>,
    /// Name of an equivariant object, translated through the dictionary.
    #[serde(default)]
    pub from_equivariant: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawComplex {
    pub name: String,
    pub category: String,
    #[serde(default)]
    pub lo: i64,
    pub terms: Vec<ObjLit>,
    #[serde(default)]
    pub diffs: Vec<MorLit>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawModuleComplex {
    pub name: String,
    #[serde(default)]
    pub lo: i64,
    pub modules: Vec<String>,
    #[serde(default)]
    pub diffs: Vec<MorLit>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawCheck {
    pub command: String,
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub target: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSuite {
    pub name: String,
    pub checks: Vec<RawCheck>,
}
