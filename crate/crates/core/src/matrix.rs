//! Dense matrices over a [`Scalar`] ring.
//!
//! Linear operators use the column convention: entry `(i, j)` is the
//! `e_i`-coefficient of `A(e_j)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, PartialEq)]
pub struct Matrix<S = Rational> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: fmt::Display> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{} ", self.data[r * self.cols + c])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, S::one())
    }

    pub fn scalar(n: usize, value: S) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = value.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Input("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a square matrix whose column `j` is `columns[j]`.
    pub fn from_columns(columns: &[Vec<S>]) -> Result<Self> {
        let n = columns.len();
        let r = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != r) {
            return Err(Error::Input("ragged matrix columns".into()));
        }
        Ok(Self::from_fn(r, n, |i, j| columns[j][i].clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entry_mut(&mut self, r: usize, c: usize) -> &mut S {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<S> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(S::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn apply(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = S::zero();
                for (a, x) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += a.mul_ref(x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        *out.entry_mut(i, j) += a.mul_ref(b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix<S>) -> Matrix<S> {
        self.zip(other, |a, b| a.clone() + b)
    }

    pub fn sub(&self, other: &Matrix<S>) -> Matrix<S> {
        self.zip(other, |a, b| a.clone() - b)
    }

    pub fn scale(&self, s: &S) -> Matrix<S> {
        self.map(|a| a.mul_ref(s))
    }

    fn zip(&self, other: &Matrix<S>, f: impl Fn(&S, &S) -> S) -> Matrix<S> {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "matrix shape mismatch"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Matrix<S> {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Commutator `AB - BA`.
    pub fn commutator(&self, other: &Matrix<S>) -> Matrix<S> {
        self.mul(other).sub(&other.mul(self))
    }
}

/// Shorthand for a rational matrix from integer rows.
pub fn int_matrix(rows: &[&[i64]]) -> Matrix<Rational> {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| Rational::from_int(x)).collect())
            .collect(),
    )
    .expect("rectangular literal")
}
