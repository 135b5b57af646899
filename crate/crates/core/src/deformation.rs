//! First-order deformations `R + tℜ` (`t² = 0`) of a Reynolds operator.

use crate::algebra::{ad, columns, NAryAlgebra};
use crate::cohomology::{delta_r, delta_r_matrix, Cochain, CochainShape};
use crate::error::{Error, Result};
use crate::linalg::solve_linear;
use crate::matrix::Matrix;
use crate::reynolds::{check_hom_pair, check_reynolds, require_reynolds};
use crate::scalar::{Dual, Rational};
use crate::vector;
use crate::verdict::{compare, first_failure, ArgGroup, Verdict};
use crate::wedge::{increasing_tuples, WedgeBasis};

/// `base + ε·eps_part` entrywise.
pub fn dual_operator(base: &Matrix, eps_part: &Matrix) -> Matrix<Dual> {
    Matrix::from_fn(base.rows(), base.cols(), |i, j| {
        Dual::new(base.get(i, j).clone(), eps_part.get(i, j).clone())
    })
}

fn mixed(a: &NAryAlgebra, t: &[usize], slot: impl Fn(usize) -> Vec<Rational>) -> Vec<Rational> {
    let args: Vec<Vec<Rational>> = (0..t.len()).map(slot).collect();
    let refs: Vec<&[Rational]> = args.iter().map(|v| v.as_slice()).collect();
    a.eval(&refs)
}

/// The t-linear part of the Reynolds identity for `R + tℜ` on one tuple.
fn linearized_sides(a: &NAryAlgebra, r: &Matrix, dir: &Matrix, t: &[usize]) -> (Vec<Rational>, Vec<Rational>) {
    let n = t.len();
    let (rc, dc) = (columns(r), columns(dir));
    let unit = |k: usize| vector::unit::<Rational>(a.dim(), t[k]);
    let images = || mixed(a, t, |k| rc[t[k]].clone());
    let mut lhs = vector::zeros(a.dim());
    let mut inner_dir = vector::zeros(a.dim());
    let mut inner_r = vector::zeros(a.dim());
    let mut outer = vector::zeros(a.dim());
    for i in 0..n {
        vector::add_assign(&mut lhs, &mixed(a, t, |k| if k == i { dc[t[k]].clone() } else { rc[t[k]].clone() }));
        vector::add_assign(&mut inner_dir, &mixed(a, t, |k| if k == i { unit(k) } else { rc[t[k]].clone() }));
        vector::sub_assign(&mut inner_r, &mixed(a, t, |k| if k == i { dc[t[k]].clone() } else { rc[t[k]].clone() }));
        for j in (0..n).filter(|&j| j != i) {
            vector::add_assign(
                &mut outer,
                &mixed(a, t, |k| {
                    if k == i {
                        unit(k)
                    } else if k == j {
                        dc[t[k]].clone()
                    } else {
                        rc[t[k]].clone()
                    }
                }),
            );
        }
    }
    vector::sub_assign(&mut inner_dir, &images());
    let mut rhs = dir.apply(&inner_dir);
    vector::add_assign(&mut inner_r, &outer);
    vector::add_assign(&mut rhs, &r.apply(&inner_r));
    (lhs, rhs)
}

/// Whether `ℜ` generates an infinitesimal deformation of `R`: the t-linear
/// identity on basis tuples, cross-checked against the Reynolds identity for
/// `R + εℜ` over the dual numbers.
pub fn is_infinitesimal_deformation(a: &NAryAlgebra, r: &Matrix, dir: &Matrix) -> Result<Verdict> {
    require_reynolds(a, r)?;
    a.require_operator(dir, "direction")?;
    let tuples = increasing_tuples(a.dim(), a.arity());
    let linear = first_failure(&tuples, |t| {
        let (lhs, rhs) = linearized_sides(a, r, dir, t);
        compare("infinitesimal-deformation", || vec![ArgGroup::new("x", t)], lhs, rhs)
    });
    let dual = check_reynolds(&a.lift::<Dual>(), &dual_operator(r, dir))?;
    if linear.is_pass() != dual.is_pass() {
        return Err(Error::Internal(format!(
            "linearized identity says {}, dual-number check says {}",
            linear, dual
        )));
    }
    Ok(linear)
}

fn require_deformation(a: &NAryAlgebra, r: &Matrix, dir: &Matrix, what: &str) -> Result<()> {
    match is_infinitesimal_deformation(a, r, dir)? {
        Verdict::Pass => Ok(()),
        Verdict::Fail(c) => Err(Error::Precondition {
            check: format!("{what} is an infinitesimal deformation"),
            detail: c.to_string(),
        }),
    }
}

/// `φ = Id + ε ad_X` and `ψ = Id + ε(ad_X - ad_X R)`.
pub fn witness_pair(a: &NAryAlgebra, r: &Matrix, x: &[Rational]) -> Result<(Matrix<Dual>, Matrix<Dual>)> {
    let adx = ad(a, x)?;
    let id = Matrix::identity(a.dim());
    Ok((dual_operator(&id, &adx), dual_operator(&id, &adx.sub(&adx.mul(r)))))
}

/// Whether `X` makes `(φ, ψ)` a homomorphism from `R + εℜ₁` to `R + εℜ₂`.
pub fn check_equivalence_witness(
    a: &NAryAlgebra,
    r: &Matrix,
    dir1: &Matrix,
    dir2: &Matrix,
    x: &[Rational],
) -> Result<Verdict<Dual>> {
    require_deformation(a, r, dir1, "the first direction")?;
    require_deformation(a, r, dir2, "the second direction")?;
    let (phi, psi) = witness_pair(a, r, x)?;
    let lifted = a.lift::<Dual>();
    let verdict = check_hom_pair(&lifted, &lifted, &dual_operator(r, dir1), &dual_operator(r, dir2), &phi, &psi)?;
    if verdict.is_pass() {
        let shape = CochainShape::new(a.dim(), a.arity(), a.dim());
        let dx = delta_r(a, r, &Cochain::new(shape, 0, x.to_vec())?)?.to_operator()?;
        if dir1.sub(dir2) != dx {
            return Err(Error::Internal("equivalent deformations differ by more than δ_R(X)".into()));
        }
    }
    Ok(verdict)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Triviality {
    /// `ℜ = δ_R(X)` and the pair built from `X` is a homomorphism to `R`.
    Trivial(Vec<Rational>),
    Nontrivial,
    /// `ℜ = δ_R(X)` is solvable but the pair check failed.
    Unknown(String),
}

/// Decides whether the deformation `R + tℜ` is equivalent to `R`.
pub fn is_trivial_deformation(a: &NAryAlgebra, r: &Matrix, dir: &Matrix) -> Result<Triviality> {
    require_deformation(a, r, dir, "the direction")?;
    let shape = CochainShape::new(a.dim(), a.arity(), a.dim());
    let target = Cochain::from_operator(shape, dir)?;
    let Some(x) = solve_linear(&delta_r_matrix(a, r), target.coeffs())? else {
        return Ok(Triviality::Nontrivial);
    };
    let zero = Matrix::zeros(a.dim(), a.dim());
    Ok(match check_equivalence_witness(a, r, dir, &zero, &x)? {
        Verdict::Pass => Triviality::Trivial(x),
        Verdict::Fail(c) => Triviality::Unknown(format!("δ_R(X) = ℜ is solvable, but {c}")),
    })
}

/// The wedge basis used for witnesses `X`.
pub fn witness_basis(a: &NAryAlgebra) -> WedgeBasis {
    WedgeBasis::new(a.dim(), a.arity() - 1)
}
