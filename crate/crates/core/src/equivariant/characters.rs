use super::action::{EquivObject, StrictAction};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix};

/// An element generating the whole group, if the group is cyclic.
pub fn cyclic_generator(action: &StrictAction) -> Option<usize> {
    let grp = action.group();
    let n = grp.order();
    (0..n).find(|&g| {
        let mut x = g;
        let mut k = 1;
        while x != grp.unit() {
            x = grp.mul(x, g);
            k += 1;
        }
        k == n
    })
}

/// Integer coefficients of the cyclotomic polynomial `Φ_d`, constant term first.
pub fn cyclotomic(d: usize) -> Vec<i64> {
    let mut p = vec![0i64; d + 1];
    p[0] = -1;
    p[d] = 1;
    for e in 1..d {
        if d % e == 0 {
            p = divide_monic(&p, &cyclotomic(e));
        }
    }
    p
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; rem.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd];
        q[i] = c;
        for (j, &b) in den.iter().enumerate() {
            rem[i + j] -= c * b;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

fn companion(field: Field, p: &[i64]) -> Matrix {
    let m = p.len() - 1;
    let mut c = Matrix::zeros(field, m, m);
    for i in 1..m {
        c.set(i, i - 1, field.one());
    }
    for (i, &a) in p[..m].iter().enumerate() {
        c.set(i, m - 1, field.int(-a));
    }
    c
}

/// The irreducible representations `ρ` of a cyclic group acting trivially
/// on the base object `x`, as equivariant objects with `α_g = ρ(g)^{-1}`.
///
/// Over Q these are the companion matrices of `Φ_d` for `d | n`; over F_p
/// the one-dimensional characters given by the `n`-th roots of unity in F_p.
pub fn character_objects(action: &StrictAction, x: usize) -> Result<Vec<EquivObject>> {
    let grp = action.group();
    let n = grp.order();
    let g = cyclic_generator(action).ok_or_else(|| Error::PreconditionFailed(format!("{} is not cyclic", grp.name())))?;
    if (0..n).any(|h| action.perm(h, x) != x) {
        return Err(Error::PreconditionFailed(format!("{} is not fixed by the action", action.base().object_name(x))));
    }
    let mut power = vec![0usize; n];
    let mut e = grp.unit();
    for k in 0..n {
        power[e] = k;
        e = grp.mul(e, g);
    }
    let field = action.field();
    let generators: Vec<(String, Matrix)> = match field {
        Field::Rationals => (1..=n)
            .filter(|d| n % d == 0)
            .map(|d| (format!("χ{d}"), companion(field, &cyclotomic(d))))
            .collect(),
        Field::Prime(p) => (1..p as i64)
            .filter(|a| mod_pow(*a, n as u64, p as i64) == 1)
            .map(|a| (format!("χ[{a}]"), Matrix::from_ints(field, &[&[a]])))
            .collect(),
    };
    let mut out = Vec::with_capacity(generators.len());
    for (name, rho_g) in generators {
        let inv = rho_g.inverse().expect("companion of a cyclotomic factor is invertible");
        let mut alphas = Vec::with_capacity(n);
        for h in 0..n {
            let mut m = Matrix::identity(field, inv.rows());
            for _ in 0..power[h] {
                m = m.mul(&inv)?;
            }
            alphas.push(m);
        }
        out.push(EquivObject::from_matrices(name, action, x, &alphas)?);
    }
    Ok(out)
}

fn mod_pow(a: i64, mut e: u64, p: i64) -> i64 {
    let mut r = 1i64;
    let mut b = a % p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}
