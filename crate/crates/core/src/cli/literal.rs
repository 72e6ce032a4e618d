//! Object and morphism literals, read and written by basis name.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::schema::{MorLit, ObjLit};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Scalar};
use crate::lincat::{Blocks, Category, Mor, Obj};

/// Accepts `"n"`, `"p/q"` and, over `F_p`, any signed integer or fraction.
pub fn scalar(field: Field, s: &str) -> Result<Scalar> {
    let t = s.trim();
    if let Field::Prime(_) = field {
        if let Some((n, d)) = t.split_once('/') {
            if let (Ok(n), Ok(d)) = (n.trim().parse::<i64>(), d.trim().parse::<i64>()) {
                return field.frac(n, d).ok_or_else(|| Error::Parse(format!("{s:?} has a denominator divisible by {field}")));
            }
        } else if let Ok(n) = t.parse::<i64>() {
            return Ok(field.int(n));
        }
    }
    field.parse_scalar(t)
}

fn object(cat: &Arc<Category>, name: &str) -> Result<usize> {
    cat.object_index(name).ok_or_else(|| Error::Unresolved(format!("object {name:?} of {}", cat.name())))
}

pub fn parse_obj(cat: &Arc<Category>, lit: &ObjLit) -> Result<Obj> {
    match lit {
        ObjLit::Base(n) => Ok(Obj::base(cat, object(cat, n)?)),
        ObjLit::Sum(ns) => Ok(Obj::plain(cat, ns.iter().map(|n| object(cat, n)).collect::<Result<_>>()?)),
        ObjLit::Karoubi { summands, idempotent } => {
            let plain = Obj::plain(cat, summands.iter().map(|n| object(cat, n)).collect::<Result<_>>()?);
            let e = parse_mor(&plain, &plain, idempotent)?;
            Obj::image(&e)
        }
    }
}

/// A coefficient map over the basis of `Hom(x, y)`.
pub(crate) fn parse_block(cat: &Category, x: usize, y: usize, entries: &BTreeMap<String, String>) -> Result<Vec<Scalar>> {
    let names = cat.basis_names(x, y);
    let mut v = vec![cat.field().zero(); names.len()];
    for (name, coef) in entries {
        let i = names.iter().position(|b| b == name).ok_or_else(|| {
            Error::Unresolved(format!(
                "basis morphism {name:?} in Hom({}, {}) of {}",
                cat.object_name(x),
                cat.object_name(y),
                cat.name()
            ))
        })?;
        v[i] = scalar(cat.field(), coef)?;
    }
    Ok(v)
}

/// Reads a block matrix `dom → cod`; row `i` lists the blocks into the
/// `i`-th summand of `cod`. An empty literal is the zero morphism.
pub fn parse_mor(dom: &Obj, cod: &Obj, lit: &MorLit) -> Result<Mor> {
    let (d, c) = (dom.plain_part(), cod.plain_part());
    if lit.is_empty() {
        return Ok(Mor::zero(dom, cod));
    }
    if lit.len() != c.len() || lit.iter().any(|row| row.len() != d.len()) {
        return Err(Error::DimensionMismatch(format!(
            "morphism literal is {}×{}, expected {}×{} for {dom} → {cod}",
            lit.len(),
            lit.first().map_or(0, Vec::len),
            c.len(),
            d.len()
        )));
    }
    let cat = dom.cat();
    let mut blocks = Blocks::zero(c.len(), d.len());
    for (i, row) in lit.iter().enumerate() {
        for (j, entries) in row.iter().enumerate() {
            if !entries.is_empty() {
                blocks.set(i, j, parse_block(cat, d.summands()[j], c.summands()[i], entries)?);
            }
        }
    }
    Mor::new(dom, cod, blocks)
}

/// The inverse of [`parse_mor`]; zero coefficients are omitted.
pub fn emit_mor(f: &Mor) -> MorLit {
    let cat = f.dom().cat();
    let (d, c) = (f.dom().summands(), f.cod().summands());
    (0..c.len())
        .map(|i| {
            (0..d.len())
                .map(|j| {
                    let names = cat.basis_names(d[j], c[i]);
                    f.block(i, j)
                        .iter()
                        .enumerate()
                        .filter(|(_, s)| !s.is_zero())
                        .map(|(k, s)| (names[k].clone(), s.to_string()))
                        .collect()
                })
                .collect()
        })
        .collect()
}

pub fn emit_obj(x: &Obj) -> ObjLit {
    let cat = x.cat();
    let names: Vec<String> = x.summands().iter().map(|&s| cat.object_name(s).to_string()).collect();
    if !x.is_plain() {
        return ObjLit::Karoubi { summands: names, idempotent: emit_mor(&x.idempotent()) };
    }
    match names.as_slice() {
        [one] => ObjLit::Base(one.clone()),
        _ => ObjLit::Sum(names),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn roundtrip_on_c2() {
        let q = Field::Rationals;
        let c2 = Arc::new(fixtures::c2(q));
        let x = Obj::plain(&c2, vec![0, 1]);
        let y = Obj::plain(&c2, vec![1]);
        let lit: MorLit = serde_json::from_str(r#"[[{"a": "2"}, {"id_2": "-1/3"}]]"#).unwrap();
        let f = parse_mor(&x, &y, &lit).unwrap();
        assert_eq!(f.block(0, 1), vec![q.frac(-1, 3).unwrap()]);
        assert_eq!(emit_mor(&f), lit);
        assert!(parse_mor(&y, &x, &lit).is_err());
    }

    #[test]
    fn signed_residues() {
        let f3 = Field::prime(3).unwrap();
        assert_eq!(scalar(f3, "-1").unwrap(), f3.int(2));
        assert_eq!(scalar(f3, "1/2").unwrap(), f3.int(2));
        assert!(scalar(f3, "1/3").is_err());
    }
}
