use std::fmt;

use super::elim::{AffineSolution, Feasibility, Infeasible};
use super::scalar::{div_by_int, Field, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over a [`Field`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch(field.to_string(), bad.field().to_string()));
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Matrix::new(field, r, c, rows.into_iter().flatten().collect())
    }

    /// Builds a matrix from small integers.
    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Self {
        let data = rows.iter().flat_map(|r| r.iter().map(|&x| field.int(x))).collect();
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::new(field, rows.len(), cols, data).expect("rectangular integer rows")
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "field mismatch in Matrix::set");
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix { field: self.field, rows: self.cols, cols: self.rows, data }
    }

    fn same_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("{} columns vs vector of length {}", self.cols, v.len())));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch("matrix sum of different shapes".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Matrix { field: self.field, rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    /// Returns `y` with `n·y = self`, entrywise.
    pub fn div_by_int(&self, n: u64) -> Result<Matrix> {
        let data = self.data.iter().map(|a| div_by_int(a, n)).collect::<Result<Vec<_>>>()?;
        if self.data.is_empty() && !self.field.int_invertible(n) {
            return Err(Error::NotInvertible { n, characteristic: self.field.characteristic() });
        }
        Ok(Matrix { field: self.field, rows: self.rows, cols: self.cols, data })
    }

    /// Reduced row echelon form and pivot columns. Pivots are the first
    /// nonzero entry scanning columns left to right.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv().unwrap();
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.data[r * m.cols + j] = v;
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = m.get(i, j) - &(&factor * m.get(r, j));
                    m.data[i * m.cols + j] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : A·x = 0}`; the vector for free column `f` is 1 at `f`
    /// and 0 at the other free columns.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(row, f);
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Solves `A·x = b` exactly by dense row reduction.
pub fn solve_affine(a: &Matrix, b: &[Scalar]) -> Result<Feasibility<AffineSolution>> {
    if b.len() != a.rows {
        return Err(Error::DimensionMismatch(format!("{} rows vs right-hand side of length {}", a.rows, b.len())));
    }
    if let Some(bad) = b.iter().find(|s| s.field() != a.field) {
        return Err(Error::FieldMismatch(a.field.to_string(), bad.field().to_string()));
    }
    let mut aug = Matrix::zeros(a.field, a.rows, a.cols + 1);
    for i in 0..a.rows {
        for j in 0..a.cols {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, a.cols, b[i].clone());
    }
    let (r, pivots) = aug.rref();
    if pivots.last() == Some(&a.cols) {
        let rank = pivots.len() - 1;
        return Ok(Feasibility::Infeasible(Infeasible {
            unknowns: a.cols,
            equations: a.rows,
            rank,
            augmented_rank: rank + 1,
        }));
    }
    let mut particular = vec![a.field.zero(); a.cols];
    for (row, &p) in pivots.iter().enumerate() {
        particular[p] = r.get(row, a.cols).clone();
    }
    Ok(Feasibility::Feasible(AffineSolution { particular, kernel: a.kernel() }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_affine_examples() {
        let q = Field::Rationals;
        let sol = solve_affine(&Matrix::from_ints(q, &[&[2]]), &[q.int(1)]).unwrap().feasible().unwrap();
        assert_eq!(sol.particular, vec![q.frac(1, 2).unwrap()]);
        assert!(sol.kernel.is_empty());

        let f2 = Field::Prime(2);
        let res = solve_affine(&Matrix::from_ints(f2, &[&[0]]), &[f2.int(1)]).unwrap();
        assert!(!res.is_feasible());

        let sol = solve_affine(&Matrix::from_ints(q, &[&[1, 1]]), &[q.int(0)]).unwrap().feasible().unwrap();
        assert_eq!(sol.particular, vec![q.int(0), q.int(0)]);
        assert_eq!(sol.kernel.len(), 1);
    }

    #[test]
    fn solve_affine_rejects_bad_input() {
        let q = Field::Rationals;
        let a = Matrix::from_ints(q, &[&[1, 2]]);
        assert!(matches!(solve_affine(&a, &[q.int(1), q.int(2)]), Err(Error::DimensionMismatch(_))));
        assert!(matches!(solve_affine(&a, &[Field::Prime(3).int(1)]), Err(Error::FieldMismatch(..))));
        assert!(Matrix::new(q, 2, 2, vec![q.int(1)]).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let q = Field::Rationals;
        let a = Matrix::from_ints(q, &[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(q, 2));
        assert!(Matrix::from_ints(q, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn matrix_div_by_int() {
        let f2 = Field::Prime(2);
        assert!(Matrix::identity(f2, 2).div_by_int(2).is_err());
        let q = Field::Rationals;
        let m = Matrix::from_ints(q, &[&[3, 6]]).div_by_int(3).unwrap();
        assert_eq!(m, Matrix::from_ints(q, &[&[1, 2]]));
    }
}
