//! Matrix helpers shared by the realization, representation and oscillator
//! modules: commutators, masked norms, polynomial evaluation on matrices, a
//! column-sparse product path for the large Fock-space checks, and a tiny
//! exact rational matrix type.

use nalgebra::DMatrix;
use num_traits::Zero;

use crate::rational::Rational;

pub type Matrix = DMatrix<f64>;

pub fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
    a * b - b * a
}

pub fn max_abs(m: &Matrix) -> f64 {
    m.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
}

/// Largest entry over the columns flagged in `mask`, all rows included.
pub fn max_abs_cols(m: &Matrix, mask: &[bool]) -> f64 {
    let mut out = 0.0_f64;
    for (j, keep) in mask.iter().enumerate() {
        if *keep {
            for v in m.column(j).iter() {
                out = out.max(v.abs());
            }
        }
    }
    out
}

/// `p(m)` by Horner's rule, coefficients lowest degree first.
pub fn poly_of_matrix(coeffs: &[f64], m: &Matrix) -> Matrix {
    let n = m.nrows();
    let mut acc = Matrix::zeros(n, n);
    for c in coeffs.iter().rev() {
        acc = &acc * m + Matrix::identity(n, n) * *c;
    }
    acc
}

pub fn check_square(ms: &[(&str, &Matrix)]) -> Result<usize, String> {
    let n = ms.first().map(|(_, m)| m.nrows()).unwrap_or(0);
    for (name, m) in ms {
        if m.nrows() != n || m.ncols() != n {
            return Err(format!("{name} is {}x{}, expected {n}x{n}", m.nrows(), m.ncols()));
        }
    }
    Ok(n)
}

/// Column-major sparse matrix. Monomials in ladder operators have at most one
/// entry per column, so products stay cheap even at ~10^3 states.
#[derive(Clone, Debug, PartialEq)]
pub struct ColumnSparse {
    n: usize,
    cols: Vec<Vec<(usize, f64)>>,
}

impl ColumnSparse {
    pub fn zeros(n: usize) -> Self {
        ColumnSparse { n, cols: vec![Vec::new(); n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![1.0; n])
    }

    pub fn diagonal(d: &[f64]) -> Self {
        ColumnSparse {
            n: d.len(),
            cols: d.iter().enumerate().map(|(i, &v)| if v != 0.0 { vec![(i, v)] } else { Vec::new() }).collect(),
        }
    }

    pub fn from_triplets(n: usize, entries: impl IntoIterator<Item = (usize, usize, f64)>) -> Self {
        let mut out = Self::zeros(n);
        for (r, c, v) in entries {
            if v != 0.0 {
                out.cols[c].push((r, v));
            }
        }
        out.normalize();
        out
    }

    pub fn from_dense(m: &Matrix) -> Self {
        let n = m.nrows();
        let mut out = Self::zeros(n);
        for j in 0..m.ncols() {
            for i in 0..n {
                let v = m[(i, j)];
                if v != 0.0 {
                    out.cols[j].push((i, v));
                }
            }
        }
        out
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.n, self.n);
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                m[(i, j)] += v;
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn column(&self, j: usize) -> &[(usize, f64)] {
        &self.cols[j]
    }

    fn normalize(&mut self) {
        for col in &mut self.cols {
            col.sort_by_key(|&(i, _)| i);
            let mut merged: Vec<(usize, f64)> = Vec::with_capacity(col.len());
            for &(i, v) in col.iter() {
                match merged.last_mut() {
                    Some((li, lv)) if *li == i => *lv += v,
                    _ => merged.push((i, v)),
                }
            }
            merged.retain(|&(_, v)| v != 0.0);
            *col = merged;
        }
    }

    pub fn mul(&self, rhs: &ColumnSparse) -> ColumnSparse {
        let mut out = Self::zeros(self.n);
        for (j, col) in rhs.cols.iter().enumerate() {
            let target = &mut out.cols[j];
            for &(k, b) in col {
                for &(i, a) in &self.cols[k] {
                    target.push((i, a * b));
                }
            }
        }
        out.normalize();
        out
    }

    pub fn add(&self, rhs: &ColumnSparse) -> ColumnSparse {
        self.axpy(1.0, rhs)
    }

    pub fn sub(&self, rhs: &ColumnSparse) -> ColumnSparse {
        self.axpy(-1.0, rhs)
    }

    /// `self + s * rhs`
    pub fn axpy(&self, s: f64, rhs: &ColumnSparse) -> ColumnSparse {
        let mut out = self.clone();
        for (j, col) in rhs.cols.iter().enumerate() {
            out.cols[j].extend(col.iter().map(|&(i, v)| (i, s * v)));
        }
        out.normalize();
        out
    }

    pub fn scale(&self, s: f64) -> ColumnSparse {
        ColumnSparse {
            n: self.n,
            cols: self.cols.iter().map(|col| col.iter().map(|&(i, v)| (i, s * v)).collect()).collect(),
        }
    }

    pub fn commutator(&self, rhs: &ColumnSparse) -> ColumnSparse {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    pub fn transpose(&self) -> ColumnSparse {
        let mut out = Self::zeros(self.n);
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                out.cols[i].push((j, v));
            }
        }
        out.normalize();
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.cols.iter().flatten().fold(0.0_f64, |acc, &(_, v)| acc.max(v.abs()))
    }

    pub fn max_abs_cols(&self, mask: &[bool]) -> f64 {
        self.cols
            .iter()
            .zip(mask)
            .filter(|(_, keep)| **keep)
            .flat_map(|(col, _)| col.iter())
            .fold(0.0_f64, |acc, &(_, v)| acc.max(v.abs()))
    }
}

/// Small dense matrix over the rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    n: usize,
    data: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zeros(n: usize) -> Self {
        ExactMatrix { n, data: vec![Rational::zero(); n * n] }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "rows must form a square matrix");
        ExactMatrix { n, data: rows.into_iter().flatten().collect() }
    }

    pub fn diagonal(d: &[Rational]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, v) in d.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.n + j] = v;
    }

    pub fn mul(&self, rhs: &ExactMatrix) -> ExactMatrix {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, rhs: &ExactMatrix) -> ExactMatrix {
        ExactMatrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }

    pub fn commutator(&self, rhs: &ExactMatrix) -> ExactMatrix {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sparse_products_match_dense() {
        let a = Matrix::from_row_slice(3, 3, &[0.0, 1.0, 0.0, 0.0, 0.0, 2.0, 3.0, 0.0, 0.0]);
        let b = Matrix::from_row_slice(3, 3, &[1.0, 0.0, 0.0, 0.0, 0.0, -1.0, 0.0, 4.0, 0.0]);
        let sa = ColumnSparse::from_dense(&a);
        let sb = ColumnSparse::from_dense(&b);
        assert_eq!(sa.mul(&sb).to_dense(), &a * &b);
        assert_eq!(sa.commutator(&sb).to_dense(), commutator(&a, &b));
        assert_eq!(sa.transpose().to_dense(), a.transpose());
    }

    #[test]
    fn masked_norm_ignores_columns() {
        let m = Matrix::from_row_slice(2, 2, &[0.0, 5.0, 1.0, 0.0]);
        assert_eq!(max_abs_cols(&m, &[true, false]), 1.0);
        assert_eq!(ColumnSparse::from_dense(&m).max_abs_cols(&[false, true]), 5.0);
    }

    #[test]
    fn horner_on_matrices() {
        let m = Matrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 2.0]));
        let p = poly_of_matrix(&[1.0, 0.0, 3.0], &m);
        assert_eq!(p, Matrix::from_diagonal(&nalgebra::DVector::from_vec(vec![4.0, 13.0])));
    }
}
