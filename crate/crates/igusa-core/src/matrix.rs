//! Exact linear algebra over Q and its quadratic extensions, plus
//! determinants of polynomial matrices.

use crate::poly::{exact_div, MultiPoly};
use crate::quadext::Scalar;
use crate::rational::Rational;
use crate::{Error, Result};

/// Dense row-major matrix over an exact scalar field.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<S: Scalar> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<S>,
}

pub type RationalMatrix = Matrix<Rational>;

impl<S: Scalar> Matrix<S> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = S::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: r, cols: c, data }
    }

    pub fn at(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut S {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_vec(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    pub fn stack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for j in 0..self.cols {
                    acc = acc.add_ref(&self.at(i, j).mul_ref(&v[j]));
                }
                acc
            })
            .collect()
    }

    /// In-place reduction to reduced row echelon form. Returns the pivot
    /// columns. Pivoting is deterministic: first nonzero entry scanning down.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.at(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    let a = self.at(p, j).clone();
                    let b = self.at(r, j).clone();
                    *self.at_mut(p, j) = b;
                    *self.at_mut(r, j) = a;
                }
            }
            let inv = self.at(r, c).inv().expect("pivot nonzero");
            for j in 0..self.cols {
                *self.at_mut(r, j) = self.at(r, j).mul_ref(&inv);
            }
            for i in 0..self.rows {
                if i != r && !self.at(i, c).is_zero() {
                    let f = self.at(i, c).clone();
                    for j in 0..self.cols {
                        let v = self.at(i, j).sub_ref(&f.mul_ref(self.at(r, j)));
                        *self.at_mut(i, j) = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel `{v : M v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<S>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = Some(row);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut v = vec![S::zero(); self.cols];
            v[free] = S::one();
            for (col, &rowopt) in pivot_set.iter().enumerate() {
                if let Some(row) = rowopt {
                    v[col] = m.at(row, free).neg_ref();
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Determinant by exact Gaussian elimination.
    pub fn det(&self) -> Result<S> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "determinant of {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut m = self.clone();
        let n = m.rows;
        let mut det = S::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.at(i, c).is_zero()) else {
                return Ok(S::zero());
            };
            if p != c {
                det = det.neg_ref();
                for j in 0..n {
                    let a = m.at(p, j).clone();
                    let b = m.at(c, j).clone();
                    *m.at_mut(p, j) = b;
                    *m.at_mut(c, j) = a;
                }
            }
            let pivot = m.at(c, c).clone();
            det = det.mul_ref(&pivot);
            let inv = pivot.inv().expect("pivot nonzero");
            for i in (c + 1)..n {
                if !m.at(i, c).is_zero() {
                    let f = m.at(i, c).mul_ref(&inv);
                    for j in c..n {
                        let v = m.at(i, j).sub_ref(&f.mul_ref(m.at(c, j)));
                        *m.at_mut(i, j) = v;
                    }
                }
            }
        }
        Ok(det)
    }
}

/// Determinant of a square matrix of polynomials, by fraction-free
/// Bareiss elimination over the polynomial ring.
pub fn poly_det(entries: &[Vec<MultiPoly>]) -> Result<MultiPoly> {
    let n = entries.len();
    if n == 0 {
        return Err(Error::DimensionMismatch("empty matrix".into()));
    }
    let ring = entries[0][0].ring().clone();
    for row in entries {
        if row.len() != n {
            return Err(Error::DimensionMismatch("non-square matrix".into()));
        }
    }
    let mut m: Vec<Vec<MultiPoly>> = entries.to_vec();
    let mut prev = MultiPoly::one(&ring);
    let mut sign_flip = false;
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = ((k + 1)..n).find(|&i| !m[i][k].is_zero()) else {
                return Ok(MultiPoly::zero(&ring));
            };
            m.swap(k, p);
            sign_flip = !sign_flip;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = exact_div(&num, &prev).expect("Bareiss division is exact");
            }
        }
        for i in (k + 1)..n {
            m[i][k] = MultiPoly::zero(&ring);
        }
        prev = m[k][k].clone();
    }
    let mut det = m[n - 1][n - 1].clone();
    if sign_flip {
        det = det.neg();
    }
    Ok(det)
}
