//! Small named algebras and operators used as fixtures and examples.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::algebra::{NAryAlgebra, Symmetry};
use crate::error::{Error, Result};
use crate::matrix::{int_matrix, Matrix};
use crate::scalar::{int, Rational};
use crate::vector;

fn lie(dim: usize, entries: &[(usize, usize, &[(usize, i64)])]) -> NAryAlgebra {
    let mut a = NAryAlgebra::abelian(2, dim).expect("valid shape");
    for &(i, j, val) in entries {
        let mut v = vector::zeros(dim);
        for &(k, c) in val {
            v[k] = int(c);
        }
        a.set(&[i, j], v).expect("valid entry");
    }
    a
}

/// `[e1, e2] = e2` on a 3-dimensional space.
pub fn worked_example() -> NAryAlgebra {
    lie(3, &[(0, 1, &[(1, 1)])])
}

/// The functional `f = (1, 0, 1)` that vanishes on brackets of the worked example.
pub fn worked_functional() -> Vec<Rational> {
    vec![int(1), int(0), int(1)]
}

/// Reynolds operators of the first family on the worked example, with
/// `a13 = a11 a23 / a21`.
pub fn family_one(a11: Rational, a21: Rational, a23: Rational, a31: Rational, a33: Rational) -> Result<Matrix> {
    if a21.is_zero() {
        return Err(Error::Input("family one needs a21 != 0".into()));
    }
    let a13 = &a11 * &a23 / &a21;
    let z = Rational::zero();
    Matrix::from_rows(vec![
        vec![a11, z.clone(), a13],
        vec![a21, z.clone(), a23],
        vec![a31, z, a33],
    ])
}

/// Reynolds operators of the second family, with `a11 = -a22` and
/// `a21 = -a22^2 / a12`.
pub fn family_two(a22: Rational, a12: Rational, a31: Rational, a32: Rational, a33: Rational) -> Result<Matrix> {
    if a12.is_zero() {
        return Err(Error::Input("family two needs a12 != 0".into()));
    }
    let a21 = -(&a22 * &a22) / &a12;
    let z = Rational::zero();
    Matrix::from_rows(vec![
        vec![-a22.clone(), a12, z.clone()],
        vec![a21, a22, z.clone()],
        vec![a31, a32, a33],
    ])
}

/// `[[1,0,1],[1,0,1],[0,0,1]]`.
pub fn instance_one() -> Matrix {
    int_matrix(&[&[1, 0, 1], &[1, 0, 1], &[0, 0, 1]])
}

/// `[[-1,1,0],[-1,1,0],[0,0,1]]`.
pub fn instance_two() -> Matrix {
    int_matrix(&[&[-1, 1, 0], &[-1, 1, 0], &[0, 0, 1]])
}

/// `[e1,e2] = e1, [e1,e3] = e2`: fails the Jacobi identity.
pub fn non_lie_example() -> NAryAlgebra {
    lie(3, &[(0, 1, &[(0, 1)]), (0, 2, &[(1, 1)])])
}

/// `sl(2)` in the basis `h, e, f`: `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
pub fn sl2() -> NAryAlgebra {
    let mut a = lie(3, &[(0, 1, &[(1, 2)]), (0, 2, &[(2, -2)]), (1, 2, &[(0, 1)])]);
    a.set_basis_names(vec!["h".into(), "e".into(), "f".into()]).unwrap();
    a
}

/// Heisenberg algebra `[e1, e2] = e3`.
pub fn heisenberg() -> NAryAlgebra {
    lie(3, &[(0, 1, &[(2, 1)])])
}

/// The 4-dimensional Lie algebra `[e1,e2] = e2, [e1,e3] = e3 + e4, [e1,e4] = e4`.
pub fn solvable4() -> NAryAlgebra {
    lie(4, &[(0, 1, &[(1, 1)]), (0, 2, &[(2, 1), (3, 1)]), (0, 3, &[(3, 1)])])
}

/// The simple `n`-Lie algebra of dimension `n + 1`: the bracket of all basis
/// vectors except `e_i` is `±e_i`, the sign making the bracket a volume form.
pub fn simple_n_lie(n: usize) -> NAryAlgebra {
    let d = n + 1;
    NAryAlgebra::from_basis_fn(n, d, Symmetry::Alternating, |t| {
        let missing = (0..d).find(|i| !t.contains(i)).unwrap();
        let mut v = vector::zeros(d);
        // moving e_missing from the end to its place takes d-1-missing swaps
        v[missing] = vector::sign(d - 1 - missing);
        v
    })
    .expect("valid shape")
}

/// The 4-dimensional 3-Lie algebra `[e2,e3,e4] = e1`.
pub fn nilpotent_3lie() -> NAryAlgebra {
    let mut a = NAryAlgebra::abelian(3, 4).unwrap();
    a.set(&[1, 2, 3], vector::unit(4, 0)).unwrap();
    a
}

/// The 4-dimensional 3-Lie algebra `[e1,e2,e3] = e1`.
pub fn solvable_3lie() -> NAryAlgebra {
    let mut a = NAryAlgebra::abelian(3, 4).unwrap();
    a.set(&[0, 1, 2], vector::unit(4, 0)).unwrap();
    a
}

/// Commutative associative algebra `Q[x_1..x_k]/I` where the monomials
/// outside the monomial ideal `I` form a downward-closed set.
#[derive(Clone, Debug)]
pub struct TruncatedPolynomials {
    vars: usize,
    monomials: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl TruncatedPolynomials {
    /// All monomials of total degree below `bound`: `Q[x..]/(x..)^bound`.
    pub fn total_degree(vars: usize, bound: u32) -> Self {
        Self::with_filter(vars, bound, |e| e.iter().sum::<u32>() < bound)
    }

    /// Exponent of `x_i` below `caps[i]`: `Q[x..]/(x_1^{c_1}, ...)`.
    pub fn boxed(caps: &[u32]) -> Self {
        let bound = caps.iter().copied().max().unwrap_or(1);
        let caps = caps.to_vec();
        Self::with_filter(caps.len(), bound, move |e| e.iter().zip(&caps).all(|(a, c)| a < c))
    }

    fn with_filter(vars: usize, bound: u32, keep: impl Fn(&[u32]) -> bool) -> Self {
        let mut monomials = vec![Vec::new()];
        for _ in 0..vars {
            monomials = monomials
                .into_iter()
                .flat_map(|m| {
                    (0..bound).map(move |k| {
                        let mut m = m.clone();
                        m.push(k);
                        m
                    })
                })
                .collect();
        }
        monomials.retain(|m| keep(m));
        monomials.sort_by(|a, b| {
            let (da, db) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        TruncatedPolynomials {
            vars,
            monomials,
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomials(&self) -> &[Vec<u32>] {
        &self.monomials
    }

    pub fn position(&self, exponents: &[u32]) -> Option<usize> {
        self.index.get(exponents).copied()
    }

    fn name(&self, m: &[u32]) -> String {
        let letters = ["x", "y", "z", "w", "u", "v"];
        let parts: Vec<String> = m
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                let l = letters.get(i).map_or_else(|| format!("x{i}"), |s| s.to_string());
                if e == 1 {
                    l
                } else {
                    format!("{l}^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("")
        }
    }

    /// The multiplication as a symmetric binary algebra.
    pub fn algebra(&self) -> NAryAlgebra {
        let d = self.dim();
        let mut a = NAryAlgebra::from_basis_fn(2, d, Symmetry::Symmetric, |t| {
            let prod: Vec<u32> = self.monomials[t[0]]
                .iter()
                .zip(&self.monomials[t[1]])
                .map(|(a, b)| a + b)
                .collect();
            match self.position(&prod) {
                Some(k) => vector::unit(d, k),
                None => vector::zeros(d),
            }
        })
        .expect("valid shape");
        a.set_basis_names(self.monomials.iter().map(|m| self.name(m)).collect())
            .unwrap();
        a
    }

    /// `c * x^shift * d/dx_var` as a matrix; `shift` may be the zero monomial.
    pub fn vector_field(&self, shift: &[u32], var: usize, c: i64) -> Matrix {
        let d = self.dim();
        let cols: Vec<Vec<Rational>> = self
            .monomials
            .iter()
            .map(|m| {
                let mut v = vector::zeros(d);
                if m[var] > 0 {
                    let mut t: Vec<u32> = m.iter().zip(shift).map(|(a, b)| a + b).collect();
                    t[var] -= 1;
                    if let Some(k) = self.position(&t) {
                        v[k] = int(c * i64::from(m[var]));
                    }
                }
                v
            })
            .collect();
        Matrix::from_columns(&cols).unwrap()
    }

    /// `x_var * d/dx_var`.
    pub fn euler(&self, var: usize) -> Matrix {
        let mut shift = vec![0; self.vars];
        shift[var] = 1;
        self.vector_field(&shift, var, 1)
    }

    /// Total degree operator `sum_i x_i d/dx_i`.
    pub fn total_euler(&self) -> Matrix {
        (0..self.vars).fold(Matrix::zeros(self.dim(), self.dim()), |acc, v| acc.add(&self.euler(v)))
    }

    /// The functional picking the coefficient of one monomial.
    pub fn coefficient(&self, exponents: &[u32]) -> Vec<Rational> {
        let mut f = vector::zeros(self.dim());
        if let Some(k) = self.position(exponents) {
            f[k] = Rational::one();
        }
        f
    }
}
