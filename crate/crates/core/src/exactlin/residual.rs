use std::collections::BTreeMap;

use super::elim::{AffineSolution, Eliminator, Feasibility, SparseVec};
use super::scalar::{Field, Scalar};

/// Key of one scalar residual entry: `(section, a, b, c)`.
///
/// A section is one pushed quantity (a scalar, a vector or a block matrix);
/// `a, b, c` locate the entry inside it. Keys only need to be stable across
/// evaluations of the same residual function.
pub type ResidualKey = (u32, u32, u32, u32);

/// Sparse residual of a family of linear identities.
///
/// Built by evaluating "left side minus right side" of every identity for a
/// candidate value of the unknowns; the candidate is a solution exactly when
/// the residual vanishes.
#[derive(Debug, Clone, Default)]
pub struct Residual {
    section: u32,
    entries: Vec<(ResidualKey, Scalar)>,
}

impl Residual {
    pub fn new() -> Self {
        Residual::default()
    }

    /// Pushes an entry inside a fresh section.
    pub fn push_scalar(&mut self, s: &Scalar) {
        if !s.is_zero() {
            self.entries.push(((self.section, 0, 0, 0), s.clone()));
        }
        self.section += 1;
    }

    pub fn push_vec(&mut self, v: &[Scalar]) {
        for (i, s) in v.iter().enumerate() {
            if !s.is_zero() {
                self.entries.push(((self.section, 0, 0, i as u32), s.clone()));
            }
        }
        self.section += 1;
    }

    /// Pushes a block matrix given as `(row, col, entries)` triples.
    pub fn push_blocks<'a>(&mut self, blocks: impl IntoIterator<Item = (usize, usize, &'a [Scalar])>) {
        for (i, j, v) in blocks {
            for (k, s) in v.iter().enumerate() {
                if !s.is_zero() {
                    self.entries.push(((self.section, i as u32, j as u32, k as u32), s.clone()));
                }
            }
        }
        self.section += 1;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nonzero_entries(&self) -> usize {
        self.entries.len()
    }

    fn into_map(self) -> BTreeMap<ResidualKey, Scalar> {
        let mut m: BTreeMap<ResidualKey, Scalar> = BTreeMap::new();
        for (k, v) in self.entries {
            match m.get_mut(&k) {
                Some(acc) => *acc = &*acc + &v,
                None => {
                    m.insert(k, v);
                }
            }
        }
        m.retain(|_, v| !v.is_zero());
        m
    }
}

/// Extracts the affine system `A·x + r0 = 0` of an affine residual function
/// by evaluating it at zero and at every unit vector, and feeds it to an
/// [`Eliminator`].
///
/// `residual` must be affine in its argument; every identity assembled by
/// this crate (naturality squares, module conditions, witness laws) is.
pub fn eliminate_affine<F>(field: Field, unknowns: usize, residual: F) -> Eliminator
where
    F: Fn(&[Scalar]) -> Residual,
{
    let zero = field.zero();
    let mut x = vec![zero.clone(); unknowns];
    let r0 = residual(&x).into_map();
    let mut rows: BTreeMap<ResidualKey, SparseVec> = BTreeMap::new();
    for j in 0..unknowns {
        x[j] = field.one();
        let rj = residual(&x).into_map();
        x[j] = zero.clone();
        let mut keys: Vec<&ResidualKey> = rj.keys().chain(r0.keys()).collect();
        keys.sort_unstable();
        keys.dedup();
        for k in keys {
            let v = match (rj.get(k), r0.get(k)) {
                (Some(a), Some(b)) => a - b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => -b,
                (None, None) => unreachable!(),
            };
            if !v.is_zero() {
                rows.entry(*k).or_default().push((j, v));
            }
        }
    }
    let mut elim = Eliminator::new(field, unknowns);
    let mut keys: Vec<ResidualKey> = rows.keys().chain(r0.keys()).copied().collect();
    keys.sort_unstable();
    keys.dedup();
    for k in keys {
        let coeffs = rows.remove(&k).unwrap_or_default();
        let rhs = r0.get(&k).map(|v| -v).unwrap_or_else(|| zero.clone());
        elim.add(coeffs, rhs);
    }
    elim
}

/// Solves the affine residual system.
pub fn solve_residual<F>(field: Field, unknowns: usize, residual: F) -> Feasibility<AffineSolution>
where
    F: Fn(&[Scalar]) -> Residual,
{
    eliminate_affine(field, unknowns, residual).solve()
}

/// Kernel of a linear residual function (one that vanishes at zero).
pub fn kernel_of<F>(field: Field, unknowns: usize, residual: F) -> Vec<Vec<Scalar>>
where
    F: Fn(&[Scalar]) -> Residual,
{
    match solve_residual(field, unknowns, residual) {
        Feasibility::Feasible(sol) => sol.kernel,
        Feasibility::Infeasible(_) => panic!("linear residual function is not homogeneous"),
    }
}
