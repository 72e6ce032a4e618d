//! Splitting an idempotent on `• ⊕ •` through its image.

use std::sync::Arc;

use separable::exactlin::Field;
use separable::fixtures;
use separable::lincat::{split_idempotent, Mor, Obj};

fn main() -> separable::Result<()> {
    let q = Field::Rationals;
    let c1 = Arc::new(fixtures::c1(q));
    let x = Obj::plain(&c1, vec![0, 0]);
    // [[1, 1], [0, 0]] is idempotent of rank one.
    let e = Mor::from_ambient(&x, &x, &[q.int(1), q.int(1), q.int(0), q.int(0)])?;
    let w = split_idempotent(&x, &e)?;
    println!("image object: {}", w.small);
    println!("{}", w.verify());
    println!("u∘v = e: {}", w.u.compose(&w.v)? == e);
    Ok(())
}
