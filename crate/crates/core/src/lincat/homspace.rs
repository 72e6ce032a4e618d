use crate::error::{Error, Result};
use crate::exactlin::{eliminate_affine, solve_residual, Feasibility, Field, Residual, Scalar};

use super::closure::{Mor, Obj};

/// Appends all blocks of a morphism to a residual as one section.
pub fn push_mor(r: &mut Residual, m: &Mor) {
    r.push_blocks(m.blocks().iter().map(|(i, j, v)| (i, j, v.as_slice())));
}

/// A hom space `Hom(X, Y)` in the closure, possibly cut down by extra linear
/// constraints, with an explicit basis.
///
/// The basis is in reduced form: each basis element has coefficient 1 at its
/// own pivot position of the ambient coefficient vector and 0 at the pivots
/// of the other basis elements, so coordinates are read off directly.
#[derive(Clone, Debug)]
pub struct HomSpace {
    dom: Obj,
    cod: Obj,
    basis: Vec<Mor>,
    pivots: Vec<usize>,
}

impl HomSpace {
    pub fn new(dom: &Obj, cod: &Obj) -> HomSpace {
        let n = dom.ambient_dim(cod);
        let field = dom.field();
        if dom.is_plain() && cod.is_plain() {
            let basis = (0..n)
                .map(|k| {
                    let mut v = vec![field.zero(); n];
                    v[k] = field.one();
                    Mor::from_ambient(dom, cod, &v).expect("ambient shape")
                })
                .collect();
            return HomSpace { dom: dom.clone(), cod: cod.clone(), basis, pivots: (0..n).collect() };
        }
        let (kernel, free) = kernel_with_free(field, n, |x| {
            let f = Mor::from_ambient(dom, cod, x).expect("ambient shape");
            let g = Mor::absorbed(dom, cod, f.blocks().clone()).expect("shape");
            let mut r = Residual::new();
            push_mor(&mut r, &f.sub(&g).expect("parallel"));
            r
        });
        let basis = kernel.iter().map(|v| Mor::from_ambient(dom, cod, v).expect("ambient shape")).collect();
        HomSpace { dom: dom.clone(), cod: cod.clone(), basis, pivots: free }
    }

    /// The subspace of `Hom(dom, cod)` on which the linear `constraint`
    /// residual vanishes.
    pub fn constrained(dom: &Obj, cod: &Obj, constraint: impl Fn(&Mor, &mut Residual)) -> HomSpace {
        HomSpace::new(dom, cod).restrict(constraint)
    }

    /// Restriction of this space by further linear constraints.
    pub fn restrict(&self, constraint: impl Fn(&Mor, &mut Residual)) -> HomSpace {
        let field = self.field();
        let (kernel, free) = kernel_with_free(field, self.dim(), |c| {
            let mut r = Residual::new();
            constraint(&self.combine(c), &mut r);
            r
        });
        let basis = kernel.iter().map(|k| self.combine(k)).collect();
        let pivots = free.iter().map(|&c| self.pivots[c]).collect();
        HomSpace { dom: self.dom.clone(), cod: self.cod.clone(), basis, pivots }
    }

    pub fn dom(&self) -> &Obj {
        &self.dom
    }

    pub fn cod(&self) -> &Obj {
        &self.cod
    }

    pub fn field(&self) -> Field {
        self.dom.field()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Mor] {
        &self.basis
    }

    pub fn combine(&self, coeffs: &[Scalar]) -> Mor {
        let mut out = Mor::zero(&self.dom, &self.cod);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                out = out.add(&b.scale(c)).expect("parallel");
            }
        }
        out
    }

    /// Coordinates of `f` in the basis; fails if `f` is not in the space.
    pub fn coords(&self, f: &Mor) -> Result<Vec<Scalar>> {
        if f.dom() != &self.dom || f.cod() != &self.cod {
            return Err(Error::ObjectMismatch(format!(
                "{} → {} is not in Hom({}, {})",
                f.dom(),
                f.cod(),
                self.dom,
                self.cod
            )));
        }
        let amb = f.ambient();
        let c: Vec<Scalar> = self.pivots.iter().map(|&p| amb[p].clone()).collect();
        if self.combine(&c) != *f {
            return Err(Error::NotInHomSpace(format!("{f:?}")));
        }
        Ok(c)
    }

    pub fn contains(&self, f: &Mor) -> bool {
        self.coords(f).is_ok()
    }

    /// Solves an affine condition on one unknown morphism of this space:
    /// returns a particular solution and a kernel basis.
    pub fn solve(&self, residual: impl Fn(&Mor, &mut Residual)) -> Feasibility<(Mor, Vec<Mor>)> {
        solve_residual(self.field(), self.dim(), |c| {
            let mut r = Residual::new();
            residual(&self.combine(c), &mut r);
            r
        })
        .map(|sol| (self.combine(&sol.particular), sol.kernel.iter().map(|k| self.combine(k)).collect()))
    }
}

fn kernel_with_free(field: Field, n: usize, residual: impl Fn(&[Scalar]) -> Residual) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let elim = eliminate_affine(field, n, residual);
    let free = elim.free_columns();
    match elim.solve() {
        Feasibility::Feasible(sol) => (sol.kernel, free),
        Feasibility::Infeasible(_) => panic!("linear residual function is not homogeneous"),
    }
}

/// A finite family of hom spaces whose bases are concatenated into one
/// unknown vector; used when several morphisms are solved for jointly.
#[derive(Clone, Debug)]
pub struct HomFamily {
    spaces: Vec<HomSpace>,
    offsets: Vec<usize>,
}

impl HomFamily {
    pub fn new(spaces: Vec<HomSpace>) -> HomFamily {
        let mut offsets = vec![0];
        for s in &spaces {
            offsets.push(offsets.last().unwrap() + s.dim());
        }
        HomFamily { spaces, offsets }
    }

    pub fn spaces(&self) -> &[HomSpace] {
        &self.spaces
    }

    pub fn unknowns(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn split(&self, x: &[Scalar]) -> Vec<Mor> {
        self.spaces
            .iter()
            .enumerate()
            .map(|(i, s)| s.combine(&x[self.offsets[i]..self.offsets[i + 1]]))
            .collect()
    }

    pub fn coords(&self, mors: &[Mor]) -> Result<Vec<Scalar>> {
        let mut out = Vec::with_capacity(self.unknowns());
        for (s, m) in self.spaces.iter().zip(mors) {
            out.extend(s.coords(m)?);
        }
        Ok(out)
    }

    /// Solves an affine condition on the whole family.
    pub fn solve(&self, field: Field, residual: impl Fn(&[Mor], &mut Residual)) -> Feasibility<(Vec<Mor>, Vec<Vec<Mor>>)> {
        solve_residual(field, self.unknowns(), |x| {
            let mut r = Residual::new();
            residual(&self.split(x), &mut r);
            r
        })
        .map(|sol| (self.split(&sol.particular), sol.kernel.iter().map(|k| self.split(k)).collect()))
    }
}

/// Two-sided inverse, if one exists.
pub fn inverse(f: &Mor) -> Option<Mor> {
    let space = HomSpace::new(f.cod(), f.dom());
    let id_dom = Mor::identity(f.dom());
    let id_cod = Mor::identity(f.cod());
    space
        .solve(|g, r| {
            push_mor(r, &g.compose(f).expect("composable").sub(&id_dom).expect("parallel"));
            push_mor(r, &f.compose(g).expect("composable").sub(&id_cod).expect("parallel"));
        })
        .feasible()
        .map(|(g, _)| g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use std::sync::Arc;

    #[test]
    fn karoubi_hom_dimension() {
        let q = Field::Rationals;
        let c1 = Arc::new(fixtures::c1(q));
        let x = Obj::plain(&c1, vec![0, 0]);
        let half = q.frac(1, 2).unwrap();
        let e = Mor::from_ambient(&x, &x, &[half.clone(), half.clone(), half.clone(), half]).unwrap();
        let small = Obj::image(&e).unwrap();
        assert_eq!(HomSpace::new(&small, &small).dim(), 1);
        assert_eq!(HomSpace::new(&x, &small).dim(), 2);
        assert_eq!(HomSpace::new(&x, &x).dim(), 4);
    }

    #[test]
    fn coords_roundtrip_and_reject() {
        let q = Field::Rationals;
        let c1 = Arc::new(fixtures::c1(q));
        let x = Obj::plain(&c1, vec![0, 0]);
        let e = Mor::from_ambient(&x, &x, &[q.one(), q.zero(), q.zero(), q.zero()]).unwrap();
        let small = Obj::image(&e).unwrap();
        let hs = HomSpace::new(&x, &x);
        let coords = hs.coords(&e).unwrap();
        assert_eq!(hs.combine(&coords), e);
        let sub = HomSpace::new(&small, &small);
        assert!(sub.coords(&Mor::identity(&small)).is_ok());
    }

    #[test]
    fn inverse_of_invertible_matrix() {
        let q = Field::Rationals;
        let c1 = Arc::new(fixtures::c1(q));
        let x = Obj::plain(&c1, vec![0, 0]);
        let f = Mor::from_ambient(&x, &x, &[q.int(1), q.int(2), q.int(3), q.int(4)]).unwrap();
        let g = inverse(&f).unwrap();
        assert!(g.compose(&f).unwrap().is_identity());
        let sing = Mor::from_ambient(&x, &x, &[q.int(1), q.int(2), q.int(2), q.int(4)]).unwrap();
        assert!(inverse(&sing).is_none());
    }
}
