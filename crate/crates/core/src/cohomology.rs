//! Cochain complexes of n-Lie algebras with coefficients in a representation,
//! and the cohomology of a Reynolds operator.
//!
//! An m-cochain (m ≥ 1) is a map `(Λ^{n-1} g)^{⊗(m-1)} ⊗ g → V`. Its
//! coefficient of `f(e_{I_1}, ..., e_{I_{m-1}}, e_j)` in coordinate `v` sits at
//! `((I_1·B + I_2)·B + ... + I_{m-1})·d·dimV + j·dimV + v`, where `I_k` is the
//! position of an increasing tuple and `B = C(d, n-1)`. A 0-cochain is an
//! element of `Λ^{n-1} g`.

use rayon::prelude::*;

use crate::algebra::{ad_basis, columns, fundamental_action_basis, NAryAlgebra};
use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::matrix::Matrix;
use crate::representation::RepresentationTable;
use crate::reynolds::{bracket_of_images, induced_bracket_unchecked, require_reynolds};
use crate::scalar::Scalar;
use crate::vector;
use crate::wedge::{binomial, WedgeBasis};

pub const DEFAULT_SIZE_GUARD: usize = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CochainShape {
    pub algebra_dim: usize,
    pub arity: usize,
    pub module_dim: usize,
}

impl CochainShape {
    pub fn new(algebra_dim: usize, arity: usize, module_dim: usize) -> Self {
        CochainShape {
            algebra_dim,
            arity,
            module_dim,
        }
    }

    /// Number of increasing `(n-1)`-tuples.
    pub fn wedge_len(&self) -> usize {
        binomial(self.algebra_dim, self.arity - 1)
    }

    /// Number of argument points `(I_1, ..., I_{m-1}, j)` of an m-cochain.
    pub fn points(&self, degree: usize) -> Option<usize> {
        let b = self.wedge_len();
        (1..degree).try_fold(self.algebra_dim, |acc, _| acc.checked_mul(b))
    }

    pub fn dim(&self, degree: usize) -> Option<usize> {
        if degree == 0 {
            Some(self.wedge_len())
        } else {
            self.points(degree)?.checked_mul(self.module_dim)
        }
    }

    pub fn point_index(&self, blocks: &[usize], j: usize) -> usize {
        blocks.iter().fold(0, |acc, &b| acc * self.wedge_len() + b) * self.algebra_dim + j
    }

    /// Inverse of [`point_index`](Self::point_index) for an m-cochain.
    pub fn point(&self, degree: usize, mut index: usize) -> (Vec<usize>, usize) {
        let j = index % self.algebra_dim;
        index /= self.algebra_dim;
        let b = self.wedge_len();
        let mut blocks = vec![0; degree.saturating_sub(1)];
        for slot in blocks.iter_mut().rev() {
            *slot = index % b;
            index /= b;
        }
        (blocks, j)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cochain<S: Scalar = crate::scalar::Rational> {
    shape: CochainShape,
    degree: usize,
    coeffs: Vec<S>,
}

impl<S: Scalar> Cochain<S> {
    pub fn new(shape: CochainShape, degree: usize, coeffs: Vec<S>) -> Result<Self> {
        let expected = shape
            .dim(degree)
            .ok_or_else(|| Error::Input("cochain dimension overflows".into()))?;
        if coeffs.len() != expected {
            return Err(Error::Input(format!(
                "a {degree}-cochain has {expected} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(Cochain { shape, degree, coeffs })
    }

    pub fn zero(shape: CochainShape, degree: usize) -> Result<Self> {
        let n = shape
            .dim(degree)
            .ok_or_else(|| Error::Input("cochain dimension overflows".into()))?;
        Self::new(shape, degree, vector::zeros(n))
    }

    /// The 1-cochain of a linear map `g → V` given as a `dimV × d` matrix.
    pub fn from_operator(shape: CochainShape, m: &Matrix<S>) -> Result<Self> {
        if m.rows() != shape.module_dim || m.cols() != shape.algebra_dim {
            return Err(Error::Input(format!(
                "a 1-cochain needs a {}x{} matrix",
                shape.module_dim, shape.algebra_dim
            )));
        }
        let coeffs = (0..shape.algebra_dim)
            .flat_map(|j| (0..shape.module_dim).map(move |v| (j, v)))
            .map(|(j, v)| m.get(v, j).clone())
            .collect();
        Self::new(shape, 1, coeffs)
    }

    pub fn to_operator(&self) -> Result<Matrix<S>> {
        if self.degree != 1 {
            return Err(Error::Input("only 1-cochains are linear maps".into()));
        }
        let dv = self.shape.module_dim;
        Ok(Matrix::from_fn(dv, self.shape.algebra_dim, |v, j| self.coeffs[j * dv + v].clone()))
    }

    pub fn shape(&self) -> CochainShape {
        self.shape
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        vector::is_zero(&self.coeffs)
    }

    /// `f(e_{I_1}, ..., e_{I_{m-1}}, e_j)` by point index.
    pub fn value_at(&self, point: usize) -> &[S] {
        let dv = self.shape.module_dim;
        &self.coeffs[point * dv..(point + 1) * dv]
    }
}

/// One summand `coeff · [ρ(e_{wedge})] f(point)` of a cochain value.
struct Term<S> {
    coeff: S,
    rho: Option<usize>,
    point: usize,
}

fn push<S: Scalar>(terms: &mut Vec<Term<S>>, coeff: S, rho: Option<usize>, point: usize) {
    if !coeff.is_zero() {
        terms.push(Term { coeff, rho, point });
    }
}

fn signed<S: Scalar>(c: &S, odd: bool) -> S {
    if odd {
        -c.clone()
    } else {
        c.clone()
    }
}

/// The summands of `(∂f)(e_{J_1}, ..., e_{J_m}, e_z)` for an m-cochain `f`.
fn coboundary_terms<S: Scalar>(
    a: &NAryAlgebra<S>,
    basis: &WedgeBasis,
    shape: &CochainShape,
    blocks: &[usize],
    z: usize,
) -> Vec<Term<S>> {
    let m = blocks.len();
    let n = a.arity();
    let mut terms = Vec::new();
    let without = |j: usize| -> Vec<usize> {
        blocks.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &b)| b).collect()
    };
    for j in 0..m {
        let xj = basis.tuple(blocks[j]);
        // X_j acting on a later block
        for k in j + 1..m {
            let action = fundamental_action_basis(a, basis, xj, basis.tuple(blocks[k]));
            for (pos, c) in vector::support(&action) {
                let mut bs = blocks.to_vec();
                bs[k] = pos;
                bs.remove(j);
                push(&mut terms, signed(&c, j % 2 == 0), None, shape.point_index(&bs, z));
            }
        }
        let rest = without(j);
        // X_j acting on the last argument
        let mut t = xj.to_vec();
        t.push(z);
        for (k, c) in vector::support(&a.bracket_basis(&t)) {
            push(&mut terms, signed(&c, j % 2 == 0), None, shape.point_index(&rest, k));
        }
        push(&mut terms, signed(&S::one(), j % 2 == 1), Some(blocks[j]), shape.point_index(&rest, z));
    }
    let last = basis.tuple(blocks[m - 1]);
    for i in 0..n - 1 {
        let mut t: Vec<usize> = last.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &x)| x).collect();
        t.push(z);
        if let Some((pos, sign)) = basis.locate(&t) {
            // (-1)^{n+m-i+1} with i counted from 1
            let odd = (n + m + i) % 2 == 1;
            let c = signed(&S::one(), odd != (sign < 0));
            push(&mut terms, c, Some(pos), shape.point_index(&blocks[..m - 1], last[i]));
        }
    }
    terms
}

fn check_pair<S: Scalar>(a: &NAryAlgebra<S>, rho: &RepresentationTable<S>) -> Result<()> {
    a.require_alternating("the coboundary operator")?;
    if rho.arity() != a.arity() || rho.algebra_dim() != a.dim() {
        return Err(Error::Input("representation does not match the algebra".into()));
    }
    Ok(())
}

fn evaluate<S: Scalar>(
    terms: &[Term<S>],
    rho: &RepresentationTable<S>,
    f: &Cochain<S>,
) -> Vec<S> {
    let mut out = vector::zeros(rho.module_dim());
    for t in terms {
        let value = f.value_at(t.point);
        match t.rho {
            None => vector::axpy(&mut out, &t.coeff, value),
            Some(pos) => vector::axpy(&mut out, &t.coeff, &rho.get(pos).apply(value)),
        }
    }
    out
}

/// `∂_ρ f` for an m-cochain with `m ≥ 1`. The representation is not
/// re-validated here.
pub fn coboundary<S: Scalar>(
    a: &NAryAlgebra<S>,
    rho: &RepresentationTable<S>,
    f: &Cochain<S>,
) -> Result<Cochain<S>> {
    check_pair(a, rho)?;
    let shape = CochainShape::new(a.dim(), a.arity(), rho.module_dim());
    if f.shape != shape {
        return Err(Error::Input("cochain shape does not match the algebra and module".into()));
    }
    if f.degree == 0 {
        return Err(Error::Input("the coboundary starts in degree 1; use delta_r in degree 0".into()));
    }
    let m = f.degree + 1;
    let points = shape
        .points(m)
        .ok_or_else(|| Error::Input("cochain dimension overflows".into()))?;
    let basis = WedgeBasis::new(a.dim(), a.arity() - 1);
    let values: Vec<Vec<S>> = (0..points)
        .into_par_iter()
        .map(|p| {
            let (blocks, z) = shape.point(m, p);
            evaluate(&coboundary_terms(a, &basis, &shape, &blocks, z), rho, f)
        })
        .collect();
    Cochain::new(shape, m, values.concat())
}

fn guard(rows: usize, cols: usize, limit: usize, what: String) -> Result<()> {
    let needed = rows.checked_mul(cols).unwrap_or(usize::MAX);
    if needed > limit {
        return Err(Error::Resource { what, needed, limit });
    }
    Ok(())
}

/// The matrix of `∂_ρ : C^m → C^{m+1}` (m ≥ 1) in the flattened bases.
pub fn coboundary_matrix<S: Scalar>(
    a: &NAryAlgebra<S>,
    rho: &RepresentationTable<S>,
    degree: usize,
    size_guard: usize,
) -> Result<Matrix<S>> {
    check_pair(a, rho)?;
    if degree == 0 {
        return Err(Error::Input("the coboundary starts in degree 1".into()));
    }
    let shape = CochainShape::new(a.dim(), a.arity(), rho.module_dim());
    let overflow = || Error::Resource {
        what: format!("cochains of degree {}", degree + 1),
        needed: usize::MAX,
        limit: size_guard,
    };
    let cols = shape.dim(degree).ok_or_else(overflow)?;
    let rows = shape.dim(degree + 1).ok_or_else(overflow)?;
    guard(rows, cols, size_guard, format!("matrix of the degree-{degree} differential ({rows}x{cols})"))?;
    let dv = rho.module_dim();
    let basis = WedgeBasis::new(a.dim(), a.arity() - 1);
    let blocks_of_rows: Vec<Vec<S>> = (0..rows / dv)
        .into_par_iter()
        .map(|p| {
            let (blocks, z) = shape.point(degree + 1, p);
            let mut chunk = vector::zeros::<S>(dv * cols);
            for t in coboundary_terms(a, &basis, &shape, &blocks, z) {
                for v in 0..dv {
                    let row = &mut chunk[v * cols..(v + 1) * cols];
                    match t.rho {
                        None => row[t.point * dv + v] += &t.coeff,
                        Some(pos) => {
                            let r = rho.get(pos);
                            for w in 0..dv {
                                let e = r.get(v, w);
                                if !e.is_zero() {
                                    row[t.point * dv + w] += t.coeff.mul_ref(e);
                                }
                            }
                        }
                    }
                }
            }
            chunk
        })
        .collect();
    let data = blocks_of_rows.concat();
    Ok(Matrix::from_fn(rows, cols, |r, c| data[r * cols + c].clone()))
}

/// `ϱ_R(x_1..x_{n-1}) x = [Rx_1..Rx_{n-1}, x] + R[Rx_1..Rx_{n-1}, x]
///   - sum_i R[Rx_1..x_i..Rx_{n-1}, x]`.
pub fn reynolds_representation<S: Scalar>(a: &NAryAlgebra<S>, r: &Matrix<S>) -> Result<RepresentationTable<S>> {
    require_reynolds(a, r)?;
    Ok(reynolds_representation_unchecked(a, r))
}

pub(crate) fn reynolds_representation_unchecked<S: Scalar>(a: &NAryAlgebra<S>, r: &Matrix<S>) -> RepresentationTable<S> {
    let n = a.arity();
    let rcols = columns(r);
    RepresentationTable::from_fn(n, a.dim(), a.dim(), |t| {
        let cols: Vec<Vec<S>> = (0..a.dim())
            .map(|x| {
                let mut tt = t.to_vec();
                tt.push(x);
                let first = bracket_of_images(a, &rcols, &tt, &[n - 1]);
                let mut inner = first.clone();
                for i in 0..n - 1 {
                    vector::sub_assign(&mut inner, &bracket_of_images(a, &rcols, &tt, &[i, n - 1]));
                }
                let mut v = r.apply(&inner);
                vector::add_assign(&mut v, &first);
                v
            })
            .collect();
        Matrix::from_columns(&cols).expect("square by construction")
    })
    .expect("shape matches the algebra")
}

/// `δ_R(e_I) = R ad_I - ad_I R - R ad_I R` for one basis wedge.
fn delta_basis<S: Scalar>(a: &NAryAlgebra<S>, r: &Matrix<S>, wedge: &[usize]) -> Matrix<S> {
    let ad = ad_basis(a, wedge);
    let ad_r = ad.mul(r);
    r.mul(&ad).sub(&ad_r).sub(&r.mul(&ad_r))
}

/// `δ_R(X) x = R[X, x] - [X, Rx] - R[X, Rx]` as a 1-cochain.
pub fn delta_r<S: Scalar>(a: &NAryAlgebra<S>, r: &Matrix<S>, x: &Cochain<S>) -> Result<Cochain<S>> {
    require_reynolds(a, r)?;
    let shape = CochainShape::new(a.dim(), a.arity(), a.dim());
    if x.degree != 0 || x.shape != shape {
        return Err(Error::Input("delta_r takes a 0-cochain of the same algebra".into()));
    }
    let basis = WedgeBasis::new(a.dim(), a.arity() - 1);
    let mut out = Matrix::zeros(a.dim(), a.dim());
    for (pos, c) in vector::support(&x.coeffs) {
        out = out.add(&delta_basis(a, r, basis.tuple(pos)).scale(&c));
    }
    Cochain::from_operator(shape, &out)
}

/// The matrix of `δ_R : Λ^{n-1} g → C^1`.
pub fn delta_r_matrix<S: Scalar>(a: &NAryAlgebra<S>, r: &Matrix<S>) -> Matrix<S> {
    let shape = CochainShape::new(a.dim(), a.arity(), a.dim());
    let basis = WedgeBasis::new(a.dim(), a.arity() - 1);
    let cols: Vec<Vec<S>> = basis
        .tuples()
        .par_iter()
        .map(|t| {
            Cochain::from_operator(shape, &delta_basis(a, r, t))
                .expect("shape matches")
                .coeffs
        })
        .collect();
    Matrix::from_columns(&cols).unwrap_or_else(|_| Matrix::zeros(shape.dim(1).unwrap(), 0))
}

/// `d_R f = ∂_{ϱ_R} f` on the induced algebra `(g, [·]_R)`.
pub fn reynolds_differential<S: Scalar>(a: &NAryAlgebra<S>, r: &Matrix<S>, f: &Cochain<S>) -> Result<Cochain<S>> {
    require_reynolds(a, r)?;
    let induced = induced_bracket_unchecked(a, r)?;
    let rho = reynolds_representation_unchecked(a, r);
    coboundary(&induced, &rho, f)
}

/// Ranks and dimensions in one degree of the Reynolds complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub m: usize,
    pub dim_cochains: usize,
    /// Rank of the differential leaving degree `m`.
    pub rank_d: usize,
    pub dim_z: usize,
    pub dim_b: usize,
    pub dim_h: usize,
}

/// Dimensions of `H^m_R` for `m = 0..=m_max`, with `H^0_R = ker δ_R`.
pub fn reynolds_complex_dimensions<S: Scalar>(
    a: &NAryAlgebra<S>,
    r: &Matrix<S>,
    m_max: usize,
    size_guard: usize,
) -> Result<Vec<DegreeReport>> {
    require_reynolds(a, r)?;
    let shape = CochainShape::new(a.dim(), a.arity(), a.dim());
    let c0 = shape.wedge_len();
    let c1 = shape.dim(1).expect("small");
    guard(c1, c0, size_guard, format!("matrix of the degree-0 differential ({c1}x{c0})"))?;
    let induced = induced_bracket_unchecked(a, r)?;
    let rho = reynolds_representation_unchecked(a, r);

    let mut differentials = vec![delta_r_matrix(a, r)];
    for m in 1..=m_max {
        let next = coboundary_matrix(&induced, &rho, m, size_guard)?;
        let prev = differentials.last().unwrap();
        if prev.cols() > 0 && prev.rows() > 0 && !next.mul(prev).is_zero() {
            return Err(Error::Internal(format!(
                "the differentials in degrees {} and {m} do not compose to zero",
                m - 1
            )));
        }
        differentials.push(next);
    }
    let ranks: Vec<usize> = differentials.iter().map(rank).collect::<Result<_>>()?;
    Ok((0..=m_max)
        .map(|m| {
            let dim = differentials[m].cols();
            let dim_z = dim - ranks[m];
            let dim_b = if m == 0 { 0 } else { ranks[m - 1] };
            DegreeReport {
                m,
                dim_cochains: dim,
                rank_d: ranks[m],
                dim_z,
                dim_b,
                dim_h: dim_z - dim_b,
            }
        })
        .collect())
}
