//! Exact linear algebra over the rationals.
//!
//! Rows are scaled to integers and reduced by fraction-free Gauss-Jordan
//! elimination (Bareiss update, every division exact), so no intermediate
//! rational ever needs normalizing.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Rational, Scalar};

fn rational_rows<S: Scalar>(m: &Matrix<S>) -> Result<Vec<Vec<Rational>>> {
    (0..m.rows())
        .map(|r| {
            m.row(r)
                .iter()
                .map(|x| x.to_rational().ok_or(Error::UnsupportedRing(S::RING)))
                .collect()
        })
        .collect()
}

/// Clears denominators of one row; returns the integer row and the multiplier.
fn integer_row(row: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let l = row
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints = row
        .iter()
        .map(|q| q.numer() * (&l / q.denom()))
        .collect();
    (ints, l)
}

/// Reduced echelon data: integer rows, pivot columns, and the sign of the row
/// permutation used.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    swap_sign: i8,
}

/// Fraction-free Gauss-Jordan; pivots are searched only in `0..pivot_cols`.
fn echelon(mut rows: Vec<Vec<BigInt>>, pivot_cols: usize) -> Echelon {
    let nrows = rows.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut swap_sign = 1i8;
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            rows.swap(p, r);
            swap_sign = -swap_sign;
        }
        let piv = rows[r][c].clone();
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let a = row[c].clone();
            for (x, pr) in row.iter_mut().zip(&pivot_row) {
                let v = &piv * &*x - &a * pr;
                *x = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    Echelon {
        rows,
        pivots,
        swap_sign,
    }
}

fn reduce<S: Scalar>(m: &Matrix<S>) -> Result<Echelon> {
    let rows = rational_rows(m)?
        .iter()
        .map(|r| integer_row(r).0)
        .collect();
    Ok(echelon(rows, m.cols()))
}

/// Exact rank over the rationals.
pub fn rank<S: Scalar>(m: &Matrix<S>) -> Result<usize> {
    Ok(reduce(m)?.pivots.len())
}

/// A basis of `{v : M v = 0}`, one vector per free column, in column order.
pub fn nullspace_basis<S: Scalar>(m: &Matrix<S>) -> Result<Vec<Vec<Rational>>> {
    let e = reduce(m)?;
    let n = m.cols();
    let mut is_pivot = vec![false; n];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rational::zero(); n];
        v[free] = Rational::one();
        for (r, &p) in e.pivots.iter().enumerate() {
            let a = &e.rows[r][free];
            if !a.is_zero() {
                v[p] = -Rational::new(a.clone(), e.rows[r][p].clone());
            }
        }
        basis.push(v);
    }
    Ok(basis)
}

/// Any exact solution of `M x = b`, or `None` if the system is inconsistent.
pub fn solve_linear<S: Scalar>(m: &Matrix<S>, b: &[S]) -> Result<Option<Vec<Rational>>> {
    if b.len() != m.rows() {
        return Err(Error::Input(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            m.rows()
        )));
    }
    let mut rows = rational_rows(m)?;
    for (row, x) in rows.iter_mut().zip(b) {
        row.push(x.to_rational().ok_or(Error::UnsupportedRing(S::RING))?);
    }
    let ints = rows.iter().map(|r| integer_row(r).0).collect();
    let n = m.cols();
    let e = echelon(ints, n);
    let rank = e.pivots.len();
    if e.rows[rank..].iter().any(|r| !r[n].is_zero()) {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); n];
    for (r, &p) in e.pivots.iter().enumerate() {
        x[p] = Rational::new(e.rows[r][n].clone(), e.rows[r][p].clone());
    }
    Ok(Some(x))
}

/// Exact determinant of a square matrix.
pub fn determinant<S: Scalar>(m: &Matrix<S>) -> Result<Rational> {
    if !m.is_square() {
        return Err(Error::Input("determinant of a non-square matrix".into()));
    }
    if m.rows() == 0 {
        return Ok(Rational::one());
    }
    let mut scale = BigInt::one();
    let mut rows = Vec::with_capacity(m.rows());
    for r in rational_rows(m)? {
        let (ints, l) = integer_row(&r);
        scale *= l;
        rows.push(ints);
    }
    let n = m.rows();
    let e = echelon(rows, n);
    if e.pivots.len() < n {
        return Ok(Rational::zero());
    }
    // after full elimination every diagonal entry equals det of the integer matrix
    let mut det = Rational::new(e.rows[n - 1][n - 1].clone(), scale);
    if e.swap_sign < 0 {
        det = -det;
    }
    Ok(det)
}

/// Exact inverse; `what` names the operator in the error.
pub fn inverse<S: Scalar>(m: &Matrix<S>, what: &str) -> Result<Matrix<Rational>> {
    if !m.is_square() {
        return Err(Error::Input(format!("{what} is not square")));
    }
    let n = m.rows();
    let mut rows = rational_rows(m)?;
    for (i, row) in rows.iter_mut().enumerate() {
        for j in 0..n {
            row.push(if i == j { Rational::one() } else { Rational::zero() });
        }
    }
    let ints = rows.iter().map(|r| integer_row(r).0).collect();
    let e = echelon(ints, n);
    if e.pivots.len() < n {
        return Err(Error::NotInvertible(what.to_string()));
    }
    Ok(Matrix::from_fn(n, n, |i, j| {
        Rational::new(e.rows[i][n + j].clone(), e.rows[i][i].clone())
    }))
}
