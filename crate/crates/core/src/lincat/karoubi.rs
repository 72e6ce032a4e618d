use serde::Serialize;

use super::closure::{Mor, Obj};
use crate::error::{Error, Result};
use crate::report::ValidationReport;

/// `small` is a retract of `big`: `v ∘ u = Id_small`.
#[derive(Clone, Debug)]
pub struct RetractWitness {
    pub big: Obj,
    pub small: Obj,
    pub u: Mor,
    pub v: Mor,
}

#[derive(Clone, Debug, Serialize)]
pub struct RetractSummary {
    pub big: String,
    pub small: String,
    pub verified: bool,
}

impl RetractWitness {
    pub fn verify(&self) -> ValidationReport {
        let mut r = ValidationReport::new(format!("retract {} ◁ {}", self.small, self.big));
        let ok_shape = self.u.dom() == &self.small
            && self.u.cod() == &self.big
            && self.v.dom() == &self.big
            && self.v.cod() == &self.small;
        r.check(ok_shape, "retract shape", || "u: small → big, v: big → small".into());
        if !ok_shape {
            return r;
        }
        let vu = self.v.compose(&self.u).expect("composable");
        r.check(vu.is_identity(), "v∘u = Id", || format!("{vu:?}"));
        let uv = self.u.compose(&self.v).expect("composable");
        r.check(uv.compose(&uv).expect("composable") == uv, "u∘v idempotent", || format!("{uv:?}"));
        r
    }

    pub fn summary(&self) -> RetractSummary {
        RetractSummary { big: self.big.to_string(), small: self.small.to_string(), verified: self.verify().passed() }
    }

    /// Composite retract: `a ◁ b ◁ c` gives `a ◁ c`.
    pub fn then(&self, outer: &RetractWitness) -> Result<RetractWitness> {
        if self.big != outer.small {
            return Err(Error::ObjectMismatch(format!("{} is not {}", self.big, outer.small)));
        }
        Ok(RetractWitness {
            big: outer.big.clone(),
            small: self.small.clone(),
            u: outer.u.compose(&self.u)?,
            v: self.v.compose(&outer.v)?,
        })
    }
}

/// Splits an idempotent endomorphism `e` of `x` through its image.
///
/// The image is the Karoubi object on the summands of `x` with idempotent `e`;
/// `u` and `v` are both carried by the blocks of `e`, so `v ∘ u = Id` and
/// `u ∘ v = e`.
pub fn split_idempotent(x: &Obj, e: &Mor) -> Result<RetractWitness> {
    if e.dom() != x || e.cod() != x {
        return Err(Error::ObjectMismatch(format!("idempotent must be an endomorphism of {x}")));
    }
    if e.compose(e)? != *e {
        return Err(Error::NotIdempotent);
    }
    let small = Obj::image(&e.retype(&x.plain_part(), &x.plain_part())?)?;
    let u = Mor::unchecked(&small, x, e.blocks().clone())?;
    let v = Mor::unchecked(x, &small, e.blocks().clone())?;
    Ok(RetractWitness { big: x.clone(), small, u, v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Field;
    use crate::fixtures;
    use std::sync::Arc;

    #[test]
    fn identity_idempotent_splits_trivially() {
        let c1 = Arc::new(fixtures::c1(Field::Rationals));
        let x = Obj::plain(&c1, vec![0, 0]);
        let w = split_idempotent(&x, &Mor::identity(&x)).unwrap();
        assert_eq!(w.small, x);
        assert!(w.u.is_identity() && w.v.is_identity());
    }

    #[test]
    fn averaging_projector_splits() {
        let q = Field::Rationals;
        let c1 = Arc::new(fixtures::c1(q));
        let x = Obj::plain(&c1, vec![0, 0]);
        let h = q.frac(1, 2).unwrap();
        let e = Mor::from_ambient(&x, &x, &[h.clone(), h.clone(), h.clone(), h]).unwrap();
        let w = split_idempotent(&x, &e).unwrap();
        assert!(w.verify().passed());
        assert_eq!(w.u.compose(&w.v).unwrap(), e);
    }

    #[test]
    fn nested_idempotent_splits() {
        let q = Field::Rationals;
        let c1 = Arc::new(fixtures::c1(q));
        let x = Obj::plain(&c1, vec![0, 0, 0]);
        let (o, z) = (q.one(), q.zero());
        let e = Mor::from_ambient(&x, &x, &[o.clone(), z.clone(), z.clone(), z.clone(), o.clone(), z.clone(), z.clone(), z.clone(), z.clone()]).unwrap();
        let first = split_idempotent(&x, &e).unwrap();
        let y = first.small.clone();
        let f = Mor::from_ambient(&x, &x, &[o.clone(), z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), z]).unwrap();
        let f = Mor::new(&y, &y, f.blocks().clone()).unwrap();
        let second = split_idempotent(&y, &f).unwrap();
        assert!(second.verify().passed());
        let both = second.then(&first).unwrap();
        assert!(both.verify().passed());
    }

    #[test]
    fn rejects_non_idempotent() {
        let q = Field::Rationals;
        let c1 = Arc::new(fixtures::c1(q));
        let x = Obj::base(&c1, 0);
        let two = Mor::identity(&x).scale(&q.int(2));
        assert!(matches!(split_idempotent(&x, &two), Err(Error::NotIdempotent)));
    }
}
