//! The (n+1)-Lie algebra `g_f` built from an n-Lie algebra and a functional
//! that kills brackets, and Reynolds operators on it.

use crate::algebra::{columns, NAryAlgebra, Symmetry};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::reynolds::{bracket_of_images, check_reynolds, require_reynolds};
use crate::scalar::Scalar;
use crate::vector;
use crate::verdict::{compare, first_failure, ArgGroup, Verdict};
use crate::wedge::increasing_tuples;

fn require_functional<S: Scalar>(a: &NAryAlgebra<S>, f: &[S]) -> Result<()> {
    if f.len() != a.dim() {
        return Err(Error::Input(format!(
            "functional has {} coefficients, algebra has dimension {}",
            f.len(),
            a.dim()
        )));
    }
    Ok(())
}

/// `f([x_1, ..., x_n]) = 0` on increasing basis tuples.
pub fn functional_kills_brackets<S: Scalar>(a: &NAryAlgebra<S>, f: &[S]) -> Result<Verdict<S>> {
    require_functional(a, f)?;
    let tuples = increasing_tuples(a.dim(), a.arity());
    Ok(first_failure(&tuples, |t| {
        let value = vector::dot(f, &a.bracket_basis(t));
        compare("functional-on-brackets", || vec![ArgGroup::new("x", t)], vec![value], vec![S::zero()])
    }))
}

/// `{x_1, ..., x_{n+1}} = sum_i (-1)^{i-1} f(x_i) [x_1..^i..x_{n+1}]`.
pub fn extend_by_functional<S: Scalar>(a: &NAryAlgebra<S>, f: &[S]) -> Result<NAryAlgebra<S>> {
    a.require_alternating("the functional extension")?;
    if let Verdict::Fail(c) = functional_kills_brackets(a, f)? {
        return Err(Error::Precondition {
            check: "functional-on-brackets".into(),
            detail: c.to_string(),
        });
    }
    let n = a.arity();
    let mut out = NAryAlgebra::from_basis_fn(n + 1, a.dim(), Symmetry::Alternating, |t| {
        let mut acc = vector::zeros(a.dim());
        for i in 0..=n {
            if f[t[i]].is_zero() {
                continue;
            }
            let rest: Vec<usize> = t.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &x)| x).collect();
            let c = if i % 2 == 0 { f[t[i]].clone() } else { -f[t[i]].clone() };
            vector::axpy(&mut acc, &c, &a.bracket_basis(&rest));
        }
        acc
    })?;
    out.set_basis_names(a.basis_names().to_vec())?;
    Ok(out)
}

/// `sum_i (-1)^{n+1-i} f(x_i) R[Rx_1..^i..Rx_{n+1}] = 0` on increasing
/// `(n+1)`-tuples. On PASS the Reynolds identity on `g_f` is re-checked and a
/// disagreement is reported as an internal error.
pub fn reynolds_lift_criterion<S: Scalar>(a: &NAryAlgebra<S>, r: &Matrix<S>, f: &[S]) -> Result<Verdict<S>> {
    require_reynolds(a, r)?;
    let gf = extend_by_functional(a, f)?;
    let n = a.arity();
    let rcols = columns(r);
    let tuples = increasing_tuples(a.dim(), n + 1);
    let verdict = first_failure(&tuples, |t| {
        let mut inner = vector::zeros(a.dim());
        for i in 0..=n {
            if f[t[i]].is_zero() {
                continue;
            }
            let rest: Vec<usize> = t.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &x)| x).collect();
            let c = if (n + 1 - (i + 1)) % 2 == 0 { f[t[i]].clone() } else { -f[t[i]].clone() };
            vector::axpy(&mut inner, &c, &bracket_of_images(a, &rcols, &rest, &[]));
        }
        compare("lift-criterion", || vec![ArgGroup::new("x", t)], r.apply(&inner), vector::zeros(a.dim()))
    });
    if verdict.is_pass() && !check_reynolds(&gf, r)?.is_pass() {
        return Err(Error::Internal("lift criterion holds but R is not Reynolds on g_f".into()));
    }
    Ok(verdict)
}

/// Closed form of the induced bracket `{·}_R` of `R` on `g_f`:
///
/// `sum_i sum_{j≠i} ε_ij f(Rx_j)[Rx..^i..^j.., x_i] + sum_i (-1)^{i+1} f(x_i)[Rx..^i..]
///  - sum_j (-1)^{j-1} f(Rx_j)[Rx..^j..]`
///
/// with `ε_ij = (-1)^{n-i+j}` for `j < i` and `(-1)^{n+1-i+j}` for `j > i`.
pub fn corollary_bracket<S: Scalar>(a: &NAryAlgebra<S>, r: &Matrix<S>, f: &[S]) -> Result<NAryAlgebra<S>> {
    if let Verdict::Fail(c) = reynolds_lift_criterion(a, r, f)? {
        return Err(Error::Precondition {
            check: "lift-criterion".into(),
            detail: c.to_string(),
        });
    }
    let n = a.arity();
    let rcols = columns(r);
    let fr: Vec<S> = (0..a.dim()).map(|j| vector::dot(f, &rcols[j])).collect();
    let mut out = NAryAlgebra::from_basis_fn(n + 1, a.dim(), Symmetry::Alternating, |t| {
        let mut acc = vector::zeros(a.dim());
        // 1-based i, j as in the formula
        for i in 1..=n + 1 {
            let without_i: Vec<usize> = (1..=n + 1).filter(|&k| k != i).collect();
            for j in (1..=n + 1).filter(|&j| j != i) {
                let c = &fr[t[j - 1]];
                if c.is_zero() {
                    continue;
                }
                let mut idx: Vec<usize> = without_i.iter().filter(|&&k| k != j).map(|&k| t[k - 1]).collect();
                idx.push(t[i - 1]);
                let v = bracket_of_images(a, &rcols, &idx, &[n - 1]);
                let odd = if j < i { (n + j - i) % 2 == 1 } else { (n + 1 + j - i) % 2 == 1 };
                vector::axpy(&mut acc, &if odd { -c.clone() } else { c.clone() }, &v);
            }
            let rest: Vec<usize> = without_i.iter().map(|&k| t[k - 1]).collect();
            let images = bracket_of_images(a, &rcols, &rest, &[]);
            let sign_odd = (i + 1) % 2 == 1;
            let fx = &f[t[i - 1]];
            vector::axpy(&mut acc, &if sign_odd { -fx.clone() } else { fx.clone() }, &images);
            let frx = &fr[t[i - 1]];
            vector::axpy(&mut acc, &if (i - 1) % 2 == 1 { frx.clone() } else { -frx.clone() }, &images);
        }
        acc
    })?;
    out.set_basis_names(a.basis_names().to_vec())?;
    Ok(out)
}
