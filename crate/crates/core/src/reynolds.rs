//! Reynolds operators on n-Lie algebras.

use crate::algebra::{columns, is_derivation, NAryAlgebra, Symmetry};
use crate::error::{Error, Result};
use crate::linalg::inverse;
use crate::matrix::Matrix;
use crate::scalar::{Rational, Scalar};
use crate::vector;
use crate::verdict::{compare, compare_columns, first_failure, ArgGroup, Verdict};
use crate::wedge::increasing_tuples;

/// `[v_1, ..., v_n]` where `v_k` is `R e_{t_k}`, except in the slots listed in
/// `plain`, which keep `e_{t_k}`.
pub(crate) fn bracket_of_images<S: Scalar>(
    a: &NAryAlgebra<S>,
    rcols: &[Vec<S>],
    t: &[usize],
    plain: &[usize],
) -> Vec<S> {
    let units: Vec<Vec<S>> = plain.iter().map(|&p| vector::unit(a.dim(), t[p])).collect();
    let mut args: Vec<&[S]> = t.iter().map(|&i| rcols[i].as_slice()).collect();
    for (u, &p) in units.iter().zip(plain) {
        args[p] = u;
    }
    a.eval(&args)
}

/// `sum_i (-1)^{n-i} [R x_1..^i..R x_n, x_i] - [R x_1, ..., R x_n]` on a basis tuple.
pub(crate) fn induced_on_basis<S: Scalar>(a: &NAryAlgebra<S>, rcols: &[Vec<S>], t: &[usize]) -> Vec<S> {
    let n = t.len();
    let mut acc = vector::neg(&bracket_of_images(a, rcols, t, &[]));
    for i in 0..n {
        // x_i moved to the last slot, the others keep their order
        let mut order: Vec<usize> = (0..n).filter(|&k| k != i).collect();
        order.push(i);
        let tt: Vec<usize> = order.iter().map(|&k| t[k]).collect();
        let v = bracket_of_images(a, rcols, &tt, &[n - 1]);
        if (n - 1 - i) % 2 == 0 {
            vector::add_assign(&mut acc, &v);
        } else {
            vector::sub_assign(&mut acc, &v);
        }
    }
    acc
}

/// The Reynolds identity
/// `[Rx_1..Rx_n] = sum_i (-1)^{n-i} R[Rx_1..^i..Rx_n, x_i] - R[Rx_1..Rx_n]`
/// on all increasing basis tuples, over the scalar ring of the inputs.
pub fn check_reynolds<S: Scalar>(a: &NAryAlgebra<S>, r: &Matrix<S>) -> Result<Verdict<S>> {
    a.require_alternating("the Reynolds identity")?;
    a.require_operator(r, "Reynolds operator")?;
    let rcols = columns(r);
    let tuples = increasing_tuples(a.dim(), a.arity());
    Ok(first_failure(&tuples, |t| {
        let lhs = bracket_of_images(a, &rcols, t, &[]);
        let rhs = r.apply(&induced_on_basis(a, &rcols, t));
        compare("reynolds", || vec![ArgGroup::new("x", t)], lhs, rhs)
    }))
}

pub(crate) fn require_reynolds<S: Scalar>(a: &NAryAlgebra<S>, r: &Matrix<S>) -> Result<()> {
    match check_reynolds(a, r)? {
        Verdict::Pass => Ok(()),
        Verdict::Fail(c) => Err(Error::Precondition {
            check: "reynolds".into(),
            detail: c.to_string(),
        }),
    }
}

/// The bracket `[·]_R` without re-checking the Reynolds identity.
pub(crate) fn induced_bracket_unchecked<S: Scalar>(a: &NAryAlgebra<S>, r: &Matrix<S>) -> Result<NAryAlgebra<S>> {
    let rcols = columns(r);
    let mut out = NAryAlgebra::from_basis_fn(a.arity(), a.dim(), Symmetry::Alternating, |t| {
        induced_on_basis(a, &rcols, t)
    })?;
    out.set_basis_names(a.basis_names().to_vec())?;
    Ok(out)
}

/// The induced n-Lie bracket `[·]_R` of a Reynolds operator.
pub fn induced_bracket<S: Scalar>(a: &NAryAlgebra<S>, r: &Matrix<S>) -> Result<NAryAlgebra<S>> {
    require_reynolds(a, r)?;
    induced_bracket_unchecked(a, r)
}

/// `(φ, ψ)` from `(src, R)` to `(tgt, R')`: `φ R = R' ψ` and `φ` is a bracket
/// homomorphism from `src` to `tgt`.
pub fn check_hom_pair<S: Scalar>(
    src: &NAryAlgebra<S>,
    tgt: &NAryAlgebra<S>,
    r: &Matrix<S>,
    r_prime: &Matrix<S>,
    phi: &Matrix<S>,
    psi: &Matrix<S>,
) -> Result<Verdict<S>> {
    if src.arity() != tgt.arity() || src.dim() != tgt.dim() {
        return Err(Error::Input("source and target algebras differ in shape".into()));
    }
    for (m, what) in [(r, "R"), (r_prime, "R'"), (phi, "phi"), (psi, "psi")] {
        src.require_operator(m, what)?;
    }
    let square = compare_columns("hom-pair-square", &phi.mul(r), &r_prime.mul(psi));
    if !square.is_pass() {
        return Ok(square);
    }
    let pcols = columns(phi);
    let tuples = increasing_tuples(src.dim(), src.arity());
    Ok(first_failure(&tuples, |t| {
        let lhs = phi.apply(&src.bracket_basis(t));
        let rhs = bracket_of_images(tgt, &pcols, t, &[]);
        compare("hom-pair-bracket", || vec![ArgGroup::new("x", t)], lhs, rhs)
    }))
}

fn frac(n: usize) -> Rational {
    Rational::new(1.into(), ((n - 1) as i64).into())
}

/// `R^{-1} - Id/(n-1)` for an invertible Reynolds operator.
pub fn reynolds_to_derivation(a: &NAryAlgebra, r: &Matrix) -> Result<Matrix> {
    require_reynolds(a, r)?;
    let inv = inverse(r, "Reynolds operator")?;
    Ok(inv.sub(&Matrix::scalar(a.dim(), frac(a.arity()))))
}

fn require_derivation(a: &NAryAlgebra, d: &Matrix) -> Result<()> {
    match is_derivation(a, d)? {
        Verdict::Pass => Ok(()),
        Verdict::Fail(c) => Err(Error::Precondition {
            check: "derivation".into(),
            detail: c.to_string(),
        }),
    }
}

/// `(D + Id/(n-1))^{-1}` for a derivation `D`.
pub fn derivation_to_reynolds(a: &NAryAlgebra, d: &Matrix) -> Result<Matrix> {
    a.require_operator(d, "derivation")?;
    require_derivation(a, d)?;
    let p = d.add(&Matrix::scalar(a.dim(), frac(a.arity())));
    inverse(&p, "D + Id/(n-1)")
}

pub fn is_nilpotent<S: Scalar>(d: &Matrix<S>) -> bool {
    d.pow(d.rows() as u32).is_zero()
}

/// `sum_{m < dim} (-1)^m (n-1)^{m+1} D^m` for a nilpotent derivation.
pub fn reynolds_from_nilpotent_derivation(a: &NAryAlgebra, d: &Matrix) -> Result<Matrix> {
    a.require_operator(d, "derivation")?;
    require_derivation(a, d)?;
    if !is_nilpotent(d) {
        return Err(Error::Precondition {
            check: "nilpotent".into(),
            detail: "D^dim is nonzero, so the series does not terminate".into(),
        });
    }
    let k = Rational::from_int((a.arity() - 1) as i64);
    let mut sum = Matrix::zeros(a.dim(), a.dim());
    let mut power = Matrix::identity(a.dim());
    let mut coeff = k.clone();
    for _ in 0..a.dim() {
        sum = sum.add(&power.scale(&coeff));
        power = power.mul(d);
        coeff = -(coeff * &k);
    }
    Ok(sum)
}
