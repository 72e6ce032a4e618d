use std::sync::Arc;

use serde::Serialize;

use super::complex::{BoundedComplex, ChainMap};
use super::homotopy::{check_same_base, hom_in_homotopy, homotopy_image, htpy_range, Families, KbHom};
use crate::eilenberg_moore::{module_hom_basis, validate_module, xi_em_from_sigma, MModule, ModuleMor};
use crate::error::{Error, Result};
use crate::exactlin::Feasibility;
use crate::lincat::{push_mor, HomFamily, HomSpace, Mor};
use crate::monadic::{monad_separability_solve, Monad, MonadSepOutcome, MonadSepWitness};
use crate::report::ValidationReport;

/// A monad applied to complexes term by term.
#[derive(Clone, Debug)]
pub struct LiftedMonad {
    monad: Arc<Monad>,
}

impl LiftedMonad {
    pub fn new(monad: &Arc<Monad>) -> LiftedMonad {
        LiftedMonad { monad: monad.clone() }
    }

    pub fn monad(&self) -> &Arc<Monad> {
        &self.monad
    }

    /// `M(X)^n = M(X^n)` with differentials `M(d^n)`.
    pub fn apply(&self, x: &BoundedComplex) -> Result<BoundedComplex> {
        let terms = x.terms().iter().map(|t| self.monad.apply_obj(t)).collect::<Result<Vec<_>>>()?;
        let diffs = x.diffs().iter().map(|d| self.monad.apply_mor(d)).collect::<Result<Vec<_>>>()?;
        BoundedComplex::with_cap(format!("M({})", x.name()), x.cat(), x.lo(), terms, diffs, usize::MAX)
    }

    pub fn apply_map(&self, f: &ChainMap) -> Result<ChainMap> {
        let from = self.apply(&f.from)?;
        let to = self.apply(&f.to)?;
        ChainMap::from_fn(&from, &to, |n| self.monad.apply_mor(&f.at(n)))
    }

    pub fn unit(&self, x: &BoundedComplex) -> Result<ChainMap> {
        ChainMap::from_fn(x, &self.apply(x)?, |n| self.monad.unit().at(&x.term(n)))
    }

    pub fn mult(&self, x: &BoundedComplex) -> Result<ChainMap> {
        let mx = self.apply(x)?;
        ChainMap::from_fn(&self.apply(&mx)?, &mx, |n| self.monad.mult().at(&x.term(n)))
    }

    pub fn sigma(&self, sigma: &MonadSepWitness, x: &BoundedComplex) -> Result<ChainMap> {
        let mx = self.apply(x)?;
        ChainMap::from_fn(&mx, &self.apply(&mx)?, |n| sigma.sigma().at(&x.term(n)))
    }

    /// `η`, `μ` are chain maps and the monad laws hold degreewise on `x`.
    pub fn validate_on(&self, x: &BoundedComplex) -> ValidationReport {
        let mut r = ValidationReport::new(format!("lifted monad on {}", x.name()));
        let run = || -> Result<Vec<(&'static str, bool)>> {
            let eta = self.unit(x)?;
            let mu = self.mult(x)?;
            let mx = self.apply(x)?;
            let eta_m = self.unit(&mx)?;
            let mu_m = self.mult(&mx)?;
            let m_eta = self.apply_map(&eta)?;
            let m_mu = self.apply_map(&mu)?;
            Ok(vec![
                ("η chain map", eta.validate().passed()),
                ("μ chain map", mu.validate().passed()),
                ("μ∘Mμ = μ∘μM", mu.compose(&m_mu)?.sub(&mu.compose(&mu_m)?)?.is_zero()),
                ("μ∘Mη = Id", mu.compose(&m_eta)?.is_identity()),
                ("μ∘ηM = Id", mu.compose(&eta_m)?.is_identity()),
            ])
        };
        match run() {
            Ok(checks) => {
                for (law, ok) in checks {
                    r.check(ok, law, || x.name().to_string());
                }
            }
            Err(e) => r.fail("lifted monad", e.to_string()),
        }
        r
    }

    /// The componentwise σ is a chain map and satisfies the separable-monad
    /// laws degreewise on `x`.
    pub fn validate_sigma_on(&self, sigma: &MonadSepWitness, x: &BoundedComplex) -> ValidationReport {
        let mut r = ValidationReport::new(format!("lifted σ on {}", x.name()));
        let run = || -> Result<Vec<(&'static str, bool)>> {
            let s = self.sigma(sigma, x)?;
            let mu = self.mult(x)?;
            let mx = self.apply(x)?;
            let s_m = self.sigma(sigma, &mx)?;
            let m_mu = self.apply_map(&mu)?;
            let mu_m = self.mult(&mx)?;
            let m_s = self.apply_map(&s)?;
            let mid = s.compose(&mu)?;
            Ok(vec![
                ("σ chain map", s.validate().passed()),
                ("μ∘σ = Id", mu.compose(&s)?.is_identity()),
                ("Mμ∘σM = σ∘μ", m_mu.compose(&s_m)?.sub(&mid)?.is_zero()),
                ("σ∘μ = μM∘Mσ", mu_m.compose(&m_s)?.sub(&mid)?.is_zero()),
            ])
        };
        match run() {
            Ok(checks) => {
                for (law, ok) in checks {
                    r.check(ok, law, || x.name().to_string());
                }
            }
            Err(e) => r.fail("lifted σ", e.to_string()),
        }
        r
    }
}

/// A bounded complex of modules: terms are modules and differentials are
/// module morphisms.
#[derive(Clone, Debug)]
pub struct ModuleComplex {
    complex: BoundedComplex,
    modules: Vec<MModule>,
}

impl ModuleComplex {
    pub fn new(name: impl Into<String>, lo: i64, modules: Vec<MModule>, diffs: Vec<Mor>) -> Result<ModuleComplex> {
        let first = modules.first().ok_or_else(|| Error::Invalid("a module complex needs at least one term".into()))?;
        let cat = first.monad().category().clone();
        let terms = modules.iter().map(|m| m.carrier().clone()).collect();
        let complex = BoundedComplex::new(name, &cat, lo, terms, diffs)?;
        Ok(ModuleComplex { complex, modules })
    }

    pub fn stalk(name: impl Into<String>, m: &MModule, n: i64) -> ModuleComplex {
        ModuleComplex { complex: BoundedComplex::stalk(name, m.carrier(), n), modules: vec![m.clone()] }
    }

    pub fn name(&self) -> &str {
        self.complex.name()
    }

    pub fn complex(&self) -> &BoundedComplex {
        &self.complex
    }

    pub fn modules(&self) -> &[MModule] {
        &self.modules
    }

    pub fn module(&self, n: i64) -> Option<&MModule> {
        if n < self.complex.lo() || n > self.complex.hi() {
            None
        } else {
            Some(&self.modules[(n - self.complex.lo()) as usize])
        }
    }

    pub fn monad(&self) -> &Arc<Monad> {
        self.modules[0].monad()
    }

    /// `λ•: M(X•) → X•`.
    pub fn action(&self, lifted: &LiftedMonad) -> Result<ChainMap> {
        let x = &self.complex;
        ChainMap::from_fn(&lifted.apply(x)?, x, |n| Ok(self.module(n).expect("in support").action().clone()))
    }

    /// `d∘d = 0`, module axioms on every term, differentials are module
    /// morphisms.
    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::new(format!("module complex {}", self.name()));
        r.merge(self.complex.validate());
        for m in &self.modules {
            r.merge(validate_module(m));
        }
        for (k, d) in self.complex.diffs().iter().enumerate() {
            let ok = ModuleMor::new(&self.modules[k], &self.modules[k + 1], d.clone()).map(|m| m.validate().passed());
            r.check(ok.unwrap_or(false), "differential is a module morphism", || {
                format!("degree {}", self.complex.lo() + k as i64)
            });
        }
        r
    }
}

fn zero_module_space(a: &ModuleComplex, b: &ModuleComplex, n: i64, m: i64) -> Result<HomSpace> {
    match (a.module(n), b.module(m)) {
        (Some(x), Some(y)) => module_hom_basis(x, y),
        _ => Ok(HomSpace::new(&a.complex.term(n), &b.complex.term(m))),
    }
}

/// `d₁`: chain maps that are degreewise module morphisms, modulo homotopies
/// that are degreewise module morphisms.
pub fn module_kb_hom(a: &ModuleComplex, b: &ModuleComplex) -> Result<KbHom> {
    hom_in_homotopy(&a.complex, &b.complex, |n| zero_module_space(a, b, n, n), |n| zero_module_space(a, b, n, n - 1))
}

/// `d₂`: chain maps `f` with `f∘λ − λ'∘M(f)` null-homotopic, modulo
/// null-homotopic chain maps.
pub fn lifted_module_hom_dim(lifted: &LiftedMonad, a: &ModuleComplex, b: &ModuleComplex) -> Result<usize> {
    let (x, y) = (&a.complex, &b.complex);
    check_same_base(x, y)?;
    let mx = lifted.apply(x)?;
    let lam_a = a.action(lifted)?;
    let lam_b = b.action(lifted)?;
    let fam = Families::new(x, y, |n| Ok(HomSpace::new(&x.term(n), &y.term(n))), |n| {
        Ok(HomSpace::new(&x.term(n), &y.term(n - 1)))
    })?;
    let (klo, khi) = htpy_range(&mx, y);
    let kspaces: Vec<HomSpace> = if khi < klo {
        vec![]
    } else {
        (klo..=khi).map(|n| HomSpace::new(&mx.term(n), &y.term(n - 1))).collect()
    };
    let nf = fam.maps.spaces().len();
    let mut joint = fam.maps.spaces().to_vec();
    joint.extend(kspaces);
    let joint = HomFamily::new(joint);
    let field = x.cat().field();
    let monad = lifted.monad().clone();
    let sol = joint.solve(field, |u, r| {
        let (f, k) = u.split_at(nf);
        let fmap = ChainMap::new(x, y, f.to_vec()).expect("shapes");
        let (a0, b0) = (x.lo().min(y.lo()) - 1, x.hi().max(y.hi()));
        for n in a0..=b0 {
            let lhs = y.diff(n).compose(&fmap.at(n)).expect("composable");
            let rhs = fmap.at(n + 1).compose(&x.diff(n)).expect("composable");
            push_mor(r, &lhs.sub(&rhs).expect("parallel"));
        }
        let (lo, hi) = (fam.map_lo, fam.map_lo + nf as i64 - 1);
        for n in lo..=hi {
            let f_lam = fmap.at(n).compose(&lam_a.at(n)).expect("composable");
            let lam_mf = lam_b.at(n).compose(&monad.apply_mor(&fmap.at(n)).expect("applies")).expect("composable");
            let hk = homotopy_image(&mx, y, k, klo, n).expect("composable");
            push_mor(r, &f_lam.sub(&lam_mf).and_then(|m| m.sub(&hk)).expect("parallel"));
        }
    });
    let kernel = match sol {
        Feasibility::Feasible((_, kernel)) => kernel,
        Feasibility::Infeasible(_) => unreachable!("homogeneous system"),
    };
    let f_parts: Vec<Vec<Mor>> = kernel.into_iter().map(|mut v| {
        v.truncate(nf);
        v
    }).collect();
    let valid = hom_quotient_rank(x, y, &fam, &f_parts)?;
    Ok(valid)
}

fn hom_quotient_rank(x: &BoundedComplex, y: &BoundedComplex, fam: &Families, maps: &[Vec<Mor>]) -> Result<usize> {
    let htpy_only = hom_in_homotopy(x, y, |n| Ok(HomSpace::new(&x.term(n), &y.term(n))), |n| {
        Ok(HomSpace::new(&x.term(n), &y.term(n - 1)))
    })?;
    let field = x.cat().field();
    let rows = fam.maps.unknowns();
    let cols = maps.iter().map(|f| fam.maps.coords(f)).collect::<Result<Vec<_>>>()?;
    let mut m = crate::exactlin::Matrix::zeros(field, rows, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, s) in c.iter().enumerate() {
            m.set(i, j, s.clone());
        }
    }
    Ok(m.rank() - htpy_only.null_rank)
}

/// Hom dimensions of one sample pair on both sides of the comparison.
#[derive(Clone, Debug, Serialize)]
pub struct PairDims {
    pub from: String,
    pub to: String,
    pub d1: usize,
    pub d2: usize,
    pub agree: bool,
}

/// A module complex exhibited as a retract of the free complex `M(X•)`.
#[derive(Clone, Debug, Serialize)]
pub struct ComplexRetract {
    pub sample: String,
    pub verified: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DerivedReport {
    pub pairs: Vec<PairDims>,
    pub retracts: Vec<ComplexRetract>,
    pub report: ValidationReport,
}

impl DerivedReport {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

/// `s•` and `λ•` exhibit `a` as a retract of the free module complex.
fn complex_retract(lifted: &LiftedMonad, sigma: &MonadSepWitness, a: &ModuleComplex) -> Result<bool> {
    let x = &a.complex;
    let mx = lifted.apply(x)?;
    let s = ChainMap::from_fn(x, &mx, |n| xi_em_from_sigma(sigma, a.module(n).expect("in support")))?;
    let lam = a.action(lifted)?;
    let mu = lifted.mult(x)?;
    let free_ok = (x.lo()..=x.hi()).all(|n| {
        let m = a.module(n).expect("in support");
        let free = MModule::free(m.monad(), m.carrier());
        matches!(free.and_then(|fr| ModuleMor::new(m, &fr, s.at(n))), Ok(mm) if mm.validate().passed())
    });
    let lam_mod = lam.compose(&lifted.apply_map(&lam)?)?.sub(&lam.compose(&mu)?)?.is_zero();
    Ok(s.validate().passed() && lam.validate().passed() && lam.compose(&s)?.is_identity() && free_ok && lam_mod)
}

/// The homotopy-level comparison: for every ordered pair of samples, `d₁`
/// (module complexes up to module homotopy) equals `d₂` (modules over the
/// lifted monad in the homotopy category), and every sample is a retract of
/// its free complex through the lifted σ.
pub fn derived_comparison_check(monad: &Arc<Monad>, samples: &[ModuleComplex]) -> Result<DerivedReport> {
    let sigma = match monad_separability_solve(monad)? {
        MonadSepOutcome::Separable { witness, .. } => witness,
        MonadSepOutcome::Infeasible(_) => return Err(Error::MonadNotSeparable),
    };
    let lifted = LiftedMonad::new(monad);
    let mut report = ValidationReport::new(format!("homotopy comparison for {}", monad.name()));
    for a in samples {
        report.merge(a.validate());
        report.merge(lifted.validate_on(&a.complex));
        report.merge(lifted.validate_sigma_on(&sigma, &a.complex));
    }
    let mut pairs = Vec::new();
    for a in samples {
        for b in samples {
            let d1 = module_kb_hom(a, b)?.dim;
            let d2 = lifted_module_hom_dim(&lifted, a, b)?;
            report.check(d1 == d2, "d₁ = d₂", || format!("{} → {}", a.name(), b.name()));
            pairs.push(PairDims { from: a.name().to_string(), to: b.name().to_string(), d1, d2, agree: d1 == d2 });
        }
    }
    let mut retracts = Vec::new();
    for a in samples {
        let (verified, error) = match complex_retract(&lifted, &sigma, a) {
            Ok(v) => (v, None),
            Err(e) => (false, Some(e.to_string())),
        };
        report.check(verified, "retract of free complex", || a.name().to_string());
        retracts.push(ComplexRetract { sample: a.name().to_string(), verified, error });
    }
    Ok(DerivedReport { pairs, retracts, report })
}

/// The homotopy class of `f∘λ − λ'∘M(f)` vanishes, using the homotopy
/// `hλ − λ'M(h)` when `f = dh + hd`.
pub fn transported_homotopy(lifted: &LiftedMonad, a: &ModuleComplex, b: &ModuleComplex, h: &[Mor], hlo: i64) -> Result<bool> {
    let (x, y) = (&a.complex, &b.complex);
    let mx = lifted.apply(x)?;
    let lam_a = a.action(lifted)?;
    let lam_b = b.action(lifted)?;
    let (lo, hi) = super::complex::common_range(x, y);
    let f = ChainMap::from_fn(x, y, |n| homotopy_image(x, y, h, hlo, n))?;
    let (klo, khi) = htpy_range(&mx, y);
    let hmap = |n: i64| -> Result<Mor> {
        if n < hlo || n >= hlo + h.len() as i64 {
            Ok(Mor::zero(&x.term(n), &y.term(n - 1)))
        } else {
            Ok(h[(n - hlo) as usize].clone())
        }
    };
    let mut k = Vec::new();
    if khi >= klo {
        for n in klo..=khi {
            let hn = hmap(n)?;
            let left = hn.compose(&lam_a.at(n))?;
            let lam_prev = b.module(n - 1).map(|m| m.action().clone()).unwrap_or_else(|| Mor::zero(&lifted.monad().apply_obj(&y.term(n - 1)).expect("applies"), &y.term(n - 1)));
            let right = lam_prev.compose(&lifted.monad().apply_mor(&hn)?)?;
            k.push(left.sub(&right)?);
        }
    }
    for n in lo..=hi {
        let lhs = f.at(n).compose(&lam_a.at(n))?.sub(&lam_b.at(n).compose(&lifted.monad().apply_mor(&f.at(n))?)?)?;
        if lhs != homotopy_image(&mx, y, &k, klo, n)? {
            return Ok(false);
        }
    }
    Ok(true)
}
