use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lincat::{Category, Mor, Obj};
use crate::report::ValidationReport;

/// Longest support accepted unless a larger cap is asked for.
pub const DEFAULT_SUPPORT_CAP: usize = 8;

/// A bounded cochain complex `X^lo → … → X^hi` over the closure of a
/// presentation; zero outside the support.
#[derive(Clone, Debug)]
pub struct BoundedComplex {
    name: String,
    cat: Arc<Category>,
    lo: i64,
    terms: Vec<Obj>,
    diffs: Vec<Mor>,
}

impl BoundedComplex {
    /// `diffs[k]: terms[k] → terms[k + 1]`.
    pub fn new(name: impl Into<String>, cat: &Arc<Category>, lo: i64, terms: Vec<Obj>, diffs: Vec<Mor>) -> Result<BoundedComplex> {
        BoundedComplex::with_cap(name, cat, lo, terms, diffs, DEFAULT_SUPPORT_CAP)
    }

    pub fn with_cap(
        name: impl Into<String>,
        cat: &Arc<Category>,
        lo: i64,
        terms: Vec<Obj>,
        diffs: Vec<Mor>,
        cap: usize,
    ) -> Result<BoundedComplex> {
        let name = name.into();
        if terms.len() > cap {
            return Err(Error::PreconditionFailed(format!("{name} has support length {} above the cap {cap}", terms.len())));
        }
        if diffs.len() + 1 != terms.len().max(1) {
            return Err(Error::DimensionMismatch(format!("{} differentials for {} terms", diffs.len(), terms.len())));
        }
        for t in &terms {
            if !crate::lincat::same_category(t.cat(), cat) {
                return Err(Error::CategoryMismatch(format!("term {t} is not over {}", cat.name())));
            }
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.dom() != &terms[k] || d.cod() != &terms[k + 1] {
                return Err(Error::ObjectMismatch(format!("differential in degree {} is {} → {}", lo + k as i64, d.dom(), d.cod())));
            }
        }
        Ok(BoundedComplex { name, cat: cat.clone(), lo, terms, diffs })
    }

    /// `x` concentrated in degree `n`.
    pub fn stalk(name: impl Into<String>, x: &Obj, n: i64) -> BoundedComplex {
        BoundedComplex { name: name.into(), cat: x.cat().clone(), lo: n, terms: vec![x.clone()], diffs: vec![] }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> BoundedComplex {
        self.name = name.into();
        self
    }

    pub fn cat(&self) -> &Arc<Category> {
        &self.cat
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest degree of the support.
    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn terms(&self) -> &[Obj] {
        &self.terms
    }

    pub fn diffs(&self) -> &[Mor] {
        &self.diffs
    }

    pub fn term(&self, n: i64) -> Obj {
        if n < self.lo || n > self.hi() {
            Obj::zero(&self.cat)
        } else {
            self.terms[(n - self.lo) as usize].clone()
        }
    }

    /// `d^n: X^n → X^{n+1}`.
    pub fn diff(&self, n: i64) -> Mor {
        if n < self.lo || n >= self.hi() {
            Mor::zero(&self.term(n), &self.term(n + 1))
        } else {
            self.diffs[(n - self.lo) as usize].clone()
        }
    }

    /// `d^{n+1}∘d^n = 0` in every degree.
    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::new(format!("complex {}", self.name));
        for n in self.lo..self.hi() - 1 {
            let dd = self.diff(n + 1).compose(&self.diff(n)).expect("composable");
            r.check(dd.is_zero(), "d∘d = 0", || format!("degree {n}"));
        }
        r
    }

    /// Degreewise direct sum.
    pub fn direct_sum(&self, other: &BoundedComplex) -> Result<BoundedComplex> {
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let terms = (lo..=hi).map(|n| Obj::direct_sum(&[self.term(n), other.term(n)])).collect::<Result<Vec<_>>>()?;
        let diffs = (lo..hi).map(|n| Mor::direct_sum(&[self.diff(n), other.diff(n)])).collect::<Result<Vec<_>>>()?;
        BoundedComplex::with_cap(format!("{} ⊕ {}", self.name, other.name), &self.cat, lo, terms, diffs, usize::MAX)
    }

    /// `x →^{Id} x` in degrees `n, n + 1`.
    pub fn contractible(x: &Obj, n: i64) -> BoundedComplex {
        BoundedComplex {
            name: format!("cone(Id_{x})"),
            cat: x.cat().clone(),
            lo: n,
            terms: vec![x.clone(), x.clone()],
            diffs: vec![Mor::identity(x)],
        }
    }
}

/// A degreewise family `f^n: X^n → Y^n`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub from: BoundedComplex,
    pub to: BoundedComplex,
    lo: i64,
    comps: Vec<Mor>,
}

impl ChainMap {
    /// Components for degrees `lo, lo + 1, …` of the common range of the
    /// supports; missing degrees are zero.
    pub fn new(from: &BoundedComplex, to: &BoundedComplex, comps: Vec<Mor>) -> Result<ChainMap> {
        let (lo, hi) = common_range(from, to);
        let want = (hi - lo + 1).max(0) as usize;
        if comps.len() != want {
            return Err(Error::DimensionMismatch(format!("{} components for {want} degrees", comps.len())));
        }
        for (k, f) in comps.iter().enumerate() {
            let n = lo + k as i64;
            if f.dom() != &from.term(n) || f.cod() != &to.term(n) {
                return Err(Error::ObjectMismatch(format!("component in degree {n} is {} → {}", f.dom(), f.cod())));
            }
        }
        Ok(ChainMap { from: from.clone(), to: to.clone(), lo, comps })
    }

    /// Applies `f` to every term, `f(X^n): X^n → Y^n`.
    pub fn from_fn(from: &BoundedComplex, to: &BoundedComplex, mut f: impl FnMut(i64) -> Result<Mor>) -> Result<ChainMap> {
        let (lo, hi) = common_range(from, to);
        let comps = (lo..=hi).map(&mut f).collect::<Result<Vec<_>>>()?;
        ChainMap::new(from, to, comps)
    }

    pub fn identity(x: &BoundedComplex) -> ChainMap {
        ChainMap { from: x.clone(), to: x.clone(), lo: x.lo, comps: x.terms.iter().map(Mor::identity).collect() }
    }

    pub fn at(&self, n: i64) -> Mor {
        if n < self.lo || n >= self.lo + self.comps.len() as i64 {
            Mor::zero(&self.from.term(n), &self.to.term(n))
        } else {
            self.comps[(n - self.lo) as usize].clone()
        }
    }

    pub fn components(&self) -> &[Mor] {
        &self.comps
    }

    /// `d_Y∘f = f∘d_X` in every degree.
    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::new(format!("chain map {} → {}", self.from.name, self.to.name));
        let lo = self.from.lo.min(self.to.lo) - 1;
        let hi = self.from.hi().max(self.to.hi());
        for n in lo..=hi {
            let lhs = self.to.diff(n).compose(&self.at(n)).expect("composable");
            let rhs = self.at(n + 1).compose(&self.from.diff(n)).expect("composable");
            r.check(lhs == rhs, "d∘f = f∘d", || format!("degree {n}"));
        }
        r
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &ChainMap) -> Result<ChainMap> {
        ChainMap::from_fn(&f.from, &self.to, |n| self.at(n).compose(&f.at(n)))
    }

    pub fn sub(&self, other: &ChainMap) -> Result<ChainMap> {
        ChainMap::from_fn(&self.from, &self.to, |n| self.at(n).sub(&other.at(n)))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Mor::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.from.lo == self.to.lo
            && self.from.terms.len() == self.to.terms.len()
            && self.comps.len() == self.from.terms.len()
            && self.comps.iter().all(Mor::is_identity)
    }
}

pub(crate) fn common_range(x: &BoundedComplex, y: &BoundedComplex) -> (i64, i64) {
    (x.lo.max(y.lo), x.hi().min(y.hi()))
}
