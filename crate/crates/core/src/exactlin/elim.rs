use std::collections::BTreeMap;

use super::scalar::{Field, Scalar};

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

/// Certified infeasibility of an affine system `A·x = b`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Infeasible {
    pub unknowns: usize,
    pub equations: usize,
    /// rank of `A`
    pub rank: usize,
    /// rank of `[A | b]`, always `rank + 1` for an infeasible system
    pub augmented_rank: usize,
}

/// A particular solution together with a basis of the homogeneous solutions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<Scalar>,
    pub kernel: Vec<Vec<Scalar>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility<T> {
    Feasible(T),
    Infeasible(Infeasible),
}

impl<T> Feasibility<T> {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn feasible(self) -> Option<T> {
        match self {
            Feasibility::Feasible(t) => Some(t),
            Feasibility::Infeasible(_) => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Feasibility<U> {
        match self {
            Feasibility::Feasible(t) => Feasibility::Feasible(f(t)),
            Feasibility::Infeasible(i) => Feasibility::Infeasible(i),
        }
    }
}

/// Adds `factor * src` to `dst`, dropping cancelled entries.
pub fn axpy(dst: &SparseVec, factor: &Scalar, src: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        let take_dst = j >= src.len() || (i < dst.len() && dst[i].0 < src[j].0);
        let take_src = i >= dst.len() || (j < src.len() && src[j].0 < dst[i].0);
        if take_dst {
            out.push(dst[i].clone());
            i += 1;
        } else if take_src {
            out.push((src[j].0, factor * &src[j].1));
            j += 1;
        } else {
            let v = &dst[i].1 + &(factor * &src[j].1);
            if !v.is_zero() {
                out.push((dst[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn lookup<'a>(v: &'a SparseVec, idx: usize) -> Option<&'a Scalar> {
    v.binary_search_by_key(&idx, |(i, _)| *i).ok().map(|k| &v[k].1)
}

/// Incremental Gauss–Jordan elimination over sparse rows.
///
/// Rows are kept in reduced row echelon form: every stored row has leading
/// coefficient 1 at its pivot column, and no other stored row has a nonzero
/// entry in that column. The pivot of a new row is its first nonzero column
/// after reduction, so results depend only on the order of equations.
#[derive(Debug, Clone)]
pub struct Eliminator {
    field: Field,
    unknowns: usize,
    equations: usize,
    rows: BTreeMap<usize, (SparseVec, Scalar)>,
    inconsistent: bool,
}

impl Eliminator {
    pub fn new(field: Field, unknowns: usize) -> Self {
        Eliminator { field, unknowns, equations: 0, rows: BTreeMap::new(), inconsistent: false }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_consistent(&self) -> bool {
        !self.inconsistent
    }

    fn reduce(&self, mut coeffs: SparseVec, mut rhs: Scalar) -> (SparseVec, Scalar) {
        let hits: Vec<(usize, Scalar)> = coeffs
            .iter()
            .filter(|(c, _)| self.rows.contains_key(c))
            .cloned()
            .collect();
        for (col, c) in hits {
            let (row, row_rhs) = &self.rows[&col];
            let neg = -&c;
            coeffs = axpy(&coeffs, &neg, row);
            rhs = &rhs + &(&neg * row_rhs);
        }
        (coeffs, rhs)
    }

    /// Adds the equation `Σ coeffs[j]·x_j = rhs`. Returns `true` when the
    /// equation increased the rank.
    pub fn add(&mut self, coeffs: SparseVec, rhs: Scalar) -> bool {
        self.equations += 1;
        debug_assert!(coeffs.windows(2).all(|w| w[0].0 < w[1].0));
        let (coeffs, rhs) = self.reduce(coeffs, rhs);
        if coeffs.is_empty() {
            if !rhs.is_zero() {
                self.inconsistent = true;
            }
            return false;
        }
        let pivot = coeffs[0].0;
        let inv = coeffs[0].1.inv().expect("nonzero leading coefficient");
        let row: SparseVec = coeffs.into_iter().map(|(j, v)| (j, &v * &inv)).collect();
        let rhs = &rhs * &inv;
        let stale: Vec<usize> = self
            .rows
            .iter()
            .filter(|(_, (r, _))| lookup(r, pivot).is_some())
            .map(|(k, _)| *k)
            .collect();
        for k in stale {
            let (r, r_rhs) = self.rows.remove(&k).unwrap();
            let c = -lookup(&r, pivot).unwrap();
            let r2 = axpy(&r, &c, &row);
            let rhs2 = &r_rhs + &(&c * &rhs);
            self.rows.insert(k, (r2, rhs2));
        }
        self.rows.insert(pivot, (row, rhs));
        true
    }

    pub fn infeasibility(&self) -> Infeasible {
        Infeasible {
            unknowns: self.unknowns,
            equations: self.equations,
            rank: self.rank(),
            augmented_rank: self.rank() + usize::from(self.inconsistent),
        }
    }

    /// Particular solution (free variables set to zero) and kernel basis.
    ///
    /// The kernel vector attached to free column `f` has a 1 at `f` and zeros
    /// at every other free column.
    pub fn solve(&self) -> Feasibility<AffineSolution> {
        if self.inconsistent {
            return Feasibility::Infeasible(self.infeasibility());
        }
        let zero = self.field.zero();
        let mut particular = vec![zero.clone(); self.unknowns];
        for (p, (_, rhs)) in &self.rows {
            particular[*p] = rhs.clone();
        }
        let free: Vec<usize> = (0..self.unknowns).filter(|c| !self.rows.contains_key(c)).collect();
        let mut kernel = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![zero.clone(); self.unknowns];
            v[f] = self.field.one();
            for (p, (row, _)) in &self.rows {
                if let Some(c) = lookup(row, f) {
                    v[*p] = -c;
                }
            }
            kernel.push(v);
        }
        Feasibility::Feasible(AffineSolution { particular, kernel })
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.unknowns).filter(|c| !self.rows.contains_key(c)).collect()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }
}
