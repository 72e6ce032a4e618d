use serde::Serialize;

use super::complex::{common_range, BoundedComplex, ChainMap};
use crate::error::{Error, Result};
use crate::exactlin::{Feasibility, Field, Matrix, Scalar};
use crate::lincat::{push_mor, same_category, HomFamily, HomSpace, Mor};

/// A hom space of the homotopy category: chain maps modulo null-homotopic
/// ones, with representatives of a complement.
#[derive(Clone, Debug)]
pub struct KbHom {
    pub chain_dim: usize,
    pub null_rank: usize,
    pub dim: usize,
    pub reps: Vec<ChainMap>,
}

#[derive(Clone, Debug, Serialize)]
pub struct KbHomSummary {
    pub chain_dim: usize,
    pub null_rank: usize,
    pub dim: usize,
}

impl KbHom {
    pub fn summary(&self) -> KbHomSummary {
        KbHomSummary { chain_dim: self.chain_dim, null_rank: self.null_rank, dim: self.dim }
    }
}

/// Degrees `n` where a homotopy component `X^n → Y^{n-1}` can be nonzero.
pub(crate) fn htpy_range(x: &BoundedComplex, y: &BoundedComplex) -> (i64, i64) {
    (x.lo().max(y.lo() + 1), x.hi().min(y.hi() + 1))
}

fn range(lo: i64, hi: i64) -> Vec<i64> {
    if hi < lo {
        vec![]
    } else {
        (lo..=hi).collect()
    }
}

pub(crate) struct Families {
    pub maps: HomFamily,
    pub map_lo: i64,
    pub htpy: HomFamily,
    pub htpy_lo: i64,
}

impl Families {
    pub fn new(
        x: &BoundedComplex,
        y: &BoundedComplex,
        map_space: impl Fn(i64) -> Result<HomSpace>,
        htpy_space: impl Fn(i64) -> Result<HomSpace>,
    ) -> Result<Families> {
        let (lo, hi) = common_range(x, y);
        let (hlo, hhi) = htpy_range(x, y);
        let maps = HomFamily::new(range(lo, hi).into_iter().map(map_space).collect::<Result<Vec<_>>>()?);
        let htpy = HomFamily::new(range(hlo, hhi).into_iter().map(htpy_space).collect::<Result<Vec<_>>>()?);
        Ok(Families { maps, map_lo: lo, htpy, htpy_lo: hlo })
    }
}

fn comp_at(comps: &[Mor], lo: i64, n: i64, dom: impl FnOnce() -> Mor) -> Mor {
    if n >= lo && ((n - lo) as usize) < comps.len() {
        comps[(n - lo) as usize].clone()
    } else {
        dom()
    }
}

/// `d_Y h + h d_X` in degree `n`.
pub(crate) fn homotopy_image(x: &BoundedComplex, y: &BoundedComplex, h: &[Mor], hlo: i64, n: i64) -> Result<Mor> {
    let hn = comp_at(h, hlo, n, || Mor::zero(&x.term(n), &y.term(n - 1)));
    let hn1 = comp_at(h, hlo, n + 1, || Mor::zero(&x.term(n + 1), &y.term(n)));
    y.diff(n - 1).compose(&hn)?.add(&hn1.compose(&x.diff(n))?)
}

fn chain_residual(x: &BoundedComplex, y: &BoundedComplex, f: &[Mor], lo: i64, r: &mut crate::exactlin::Residual) {
    let (a, b) = (x.lo().min(y.lo()) - 1, x.hi().max(y.hi()));
    for n in a..=b {
        let fn0 = comp_at(f, lo, n, || Mor::zero(&x.term(n), &y.term(n)));
        let fn1 = comp_at(f, lo, n + 1, || Mor::zero(&x.term(n + 1), &y.term(n + 1)));
        let lhs = y.diff(n).compose(&fn0).expect("composable");
        let rhs = fn1.compose(&x.diff(n)).expect("composable");
        push_mor(r, &lhs.sub(&rhs).expect("parallel"));
    }
}

fn unit_vec(field: Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

fn columns_matrix(field: Field, rows: usize, cols: &[Vec<Scalar>]) -> Matrix {
    let mut m = Matrix::zeros(field, rows, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, s) in c.iter().enumerate() {
            m.set(i, j, s.clone());
        }
    }
    m
}

/// Coordinates of all null-homotopic maps `dh + hd` over the homotopy basis.
fn null_columns(x: &BoundedComplex, y: &BoundedComplex, fam: &Families) -> Result<Vec<Vec<Scalar>>> {
    let field = x.cat().field();
    let (lo, hi) = common_range(x, y);
    let mut cols = Vec::with_capacity(fam.htpy.unknowns());
    for i in 0..fam.htpy.unknowns() {
        let h = fam.htpy.split(&unit_vec(field, fam.htpy.unknowns(), i));
        let f = range(lo, hi).into_iter().map(|n| homotopy_image(x, y, &h, fam.htpy_lo, n)).collect::<Result<Vec<_>>>()?;
        cols.push(fam.maps.coords(&f)?);
    }
    Ok(cols)
}

fn quotient(x: &BoundedComplex, y: &BoundedComplex, fam: &Families, chain: Vec<Vec<Mor>>) -> Result<KbHom> {
    let field = x.cat().field();
    let rows = fam.maps.unknowns();
    let null = null_columns(x, y, fam)?;
    let null_rank = columns_matrix(field, rows, &null).rank();
    let mut cols = null;
    let mut rank = null_rank;
    let mut reps = Vec::new();
    for f in &chain {
        cols.push(fam.maps.coords(f)?);
        let r = columns_matrix(field, rows, &cols).rank();
        if r > rank {
            rank = r;
            reps.push(ChainMap::new(x, y, f.clone())?);
        } else {
            cols.pop();
        }
    }
    Ok(KbHom { chain_dim: chain.len(), null_rank, dim: reps.len(), reps })
}

pub(crate) fn check_same_base(x: &BoundedComplex, y: &BoundedComplex) -> Result<()> {
    if same_category(x.cat(), y.cat()) {
        Ok(())
    } else {
        Err(Error::CategoryMismatch(format!("{} and {} live over different presentations", x.name(), y.name())))
    }
}

/// Chain maps from `x` to `y` with components in the given spaces, modulo
/// `dh + hd` for homotopies with components in the given spaces.
pub(crate) fn hom_in_homotopy(
    x: &BoundedComplex,
    y: &BoundedComplex,
    map_space: impl Fn(i64) -> Result<HomSpace>,
    htpy_space: impl Fn(i64) -> Result<HomSpace>,
) -> Result<KbHom> {
    check_same_base(x, y)?;
    let fam = Families::new(x, y, map_space, htpy_space)?;
    let chain = match fam.maps.solve(x.cat().field(), |f, r| chain_residual(x, y, f, fam.map_lo, r)) {
        Feasibility::Feasible((_, kernel)) => kernel,
        Feasibility::Infeasible(_) => unreachable!("homogeneous system"),
    };
    quotient(x, y, &fam, chain)
}

/// `Hom(x, y)` in the homotopy category of the closure.
pub fn kb_hom_basis(x: &BoundedComplex, y: &BoundedComplex) -> Result<KbHom> {
    hom_in_homotopy(x, y, |n| Ok(HomSpace::new(&x.term(n), &y.term(n))), |n| Ok(HomSpace::new(&x.term(n), &y.term(n - 1))))
}

/// Whether a chain map is `dh + hd` for some homotopy `h`.
pub fn is_null_homotopic(f: &ChainMap) -> Result<bool> {
    let (x, y) = (&f.from, &f.to);
    let fam = Families::new(x, y, |n| Ok(HomSpace::new(&x.term(n), &y.term(n))), |n| {
        Ok(HomSpace::new(&x.term(n), &y.term(n - 1)))
    })?;
    let field = x.cat().field();
    let rows = fam.maps.unknowns();
    let mut cols = null_columns(x, y, &fam)?;
    let base = columns_matrix(field, rows, &cols).rank();
    cols.push(fam.maps.coords(f.components())?);
    Ok(columns_matrix(field, rows, &cols).rank() == base)
}

/// A homotopy `h` with `f = dh + hd`, if one exists.
pub fn find_homotopy(f: &ChainMap) -> Result<Option<Vec<Mor>>> {
    let (x, y) = (&f.from, &f.to);
    let fam = Families::new(x, y, |n| Ok(HomSpace::new(&x.term(n), &y.term(n))), |n| {
        Ok(HomSpace::new(&x.term(n), &y.term(n - 1)))
    })?;
    let (lo, hi) = common_range(x, y);
    let sol = fam.htpy.solve(x.cat().field(), |h, r| {
        for n in range(lo, hi) {
            let g = homotopy_image(x, y, h, fam.htpy_lo, n).expect("composable");
            push_mor(r, &g.sub(&f.at(n)).expect("parallel"));
        }
    });
    Ok(sol.feasible().map(|(h, _)| h))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fixtures;
    use crate::lincat::Obj;

    #[test]
    fn stalk_and_cone_dimensions() {
        let c1 = Arc::new(fixtures::c1(Field::Rationals));
        let x = Obj::base(&c1, 0);
        let s0 = BoundedComplex::stalk("x[0]", &x, 0);
        let s1 = BoundedComplex::stalk("x[1]", &x, 1);
        let cone = BoundedComplex::contractible(&x, 0);
        assert_eq!(kb_hom_basis(&s0, &s0).unwrap().dim, 1);
        assert_eq!(kb_hom_basis(&s0, &s1).unwrap().dim, 0);
        let h = kb_hom_basis(&cone, &s0).unwrap();
        assert_eq!((h.chain_dim, h.dim), (1, 0));
        let id = ChainMap::identity(&cone);
        assert!(is_null_homotopic(&id).unwrap());
        assert!(find_homotopy(&id).unwrap().is_some());
        assert!(!is_null_homotopic(&ChainMap::identity(&s0)).unwrap());
    }
}
