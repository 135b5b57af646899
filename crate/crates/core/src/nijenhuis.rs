//! Nijenhuis operators and the deformed brackets they define.

use crate::algebra::{columns, NAryAlgebra, Symmetry};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::representation::RepresentationTable;
use crate::scalar::Scalar;
use crate::vector;
use crate::verdict::{compare, first_failure, ArgGroup, Verdict};
use crate::wedge::increasing_tuples;

/// The brackets `[·]^0_N = [·]_g, [·]^1_N, ..., [·]^{n-1}_N`.
#[derive(Clone, Debug)]
pub struct DeformedBracketLadder<S: Scalar = crate::scalar::Rational> {
    levels: Vec<NAryAlgebra<S>>,
}

impl<S: Scalar> DeformedBracketLadder<S> {
    pub fn levels(&self) -> &[NAryAlgebra<S>] {
        &self.levels
    }

    pub fn level(&self, j: usize) -> &NAryAlgebra<S> {
        &self.levels[j]
    }

    /// `[·]^{n-1}_N`.
    pub fn top(&self) -> &NAryAlgebra<S> {
        self.levels.last().expect("level 0 always exists")
    }
}

/// `sum_{|I| = j} [.., N x_i (i in I), ..]` on a basis tuple.
fn subset_sum<S: Scalar>(a: &NAryAlgebra<S>, ncols: &[Vec<S>], t: &[usize], j: usize) -> Vec<S> {
    let n = t.len();
    let mut acc = vector::zeros(a.dim());
    let units: Vec<Vec<S>> = t.iter().map(|&i| vector::unit(a.dim(), i)).collect();
    for subset in increasing_tuples(n, j) {
        let args: Vec<&[S]> = (0..n)
            .map(|k| if subset.contains(&k) { ncols[t[k]].as_slice() } else { units[k].as_slice() })
            .collect();
        vector::add_assign(&mut acc, &a.eval(&args));
    }
    acc
}

pub fn deformed_bracket_ladder<S: Scalar>(a: &NAryAlgebra<S>, n_op: &Matrix<S>) -> Result<DeformedBracketLadder<S>> {
    a.require_alternating("the deformed brackets")?;
    a.require_operator(n_op, "Nijenhuis operator")?;
    let ncols = columns(n_op);
    let mut levels = vec![a.clone()];
    for j in 1..a.arity() {
        let prev = levels.last().unwrap();
        let mut next = NAryAlgebra::from_basis_fn(a.arity(), a.dim(), Symmetry::Alternating, |t| {
            vector::sub(&subset_sum(a, &ncols, t, j), &n_op.apply(&prev.bracket_basis(t)))
        })?;
        next.set_basis_names(a.basis_names().to_vec())?;
        levels.push(next);
    }
    Ok(DeformedBracketLadder { levels })
}

/// `[N x_1, ..., N x_n] = N [x_1, ..., x_n]^{n-1}_N` on increasing basis tuples.
pub fn check_nijenhuis<S: Scalar>(a: &NAryAlgebra<S>, n_op: &Matrix<S>) -> Result<Verdict<S>> {
    let ladder = deformed_bracket_ladder(a, n_op)?;
    Ok(check_with_ladder(a, n_op, &ladder))
}

fn check_with_ladder<S: Scalar>(a: &NAryAlgebra<S>, n_op: &Matrix<S>, ladder: &DeformedBracketLadder<S>) -> Verdict<S> {
    let ncols = columns(n_op);
    let top = ladder.top();
    let tuples = increasing_tuples(a.dim(), a.arity());
    first_failure(&tuples, |t| {
        let args: Vec<&[S]> = t.iter().map(|&i| ncols[i].as_slice()).collect();
        let lhs = a.eval(&args);
        let rhs = n_op.apply(&top.bracket_basis(t));
        compare("nijenhuis", || vec![ArgGroup::new("x", t)], lhs, rhs)
    })
}

pub(crate) fn require_nijenhuis<S: Scalar>(a: &NAryAlgebra<S>, n_op: &Matrix<S>) -> Result<DeformedBracketLadder<S>> {
    let ladder = deformed_bracket_ladder(a, n_op)?;
    match check_with_ladder(a, n_op, &ladder) {
        Verdict::Pass => Ok(ladder),
        Verdict::Fail(c) => Err(Error::Precondition {
            check: "nijenhuis".into(),
            detail: c.to_string(),
        }),
    }
}

/// The deformed algebra `g_N = (g, [·]^{n-1}_N)`.
pub fn deformed_algebra<S: Scalar>(a: &NAryAlgebra<S>, n_op: &Matrix<S>) -> Result<NAryAlgebra<S>> {
    Ok(require_nijenhuis(a, n_op)?.top().clone())
}

/// `ρ_N(x_1, ..., x_{n-1}) x = [N x_1, ..., N x_{n-1}, x]`.
pub fn nijenhuis_representation<S: Scalar>(a: &NAryAlgebra<S>, n_op: &Matrix<S>) -> Result<RepresentationTable<S>> {
    require_nijenhuis(a, n_op)?;
    let ncols = columns(n_op);
    RepresentationTable::from_fn(a.arity(), a.dim(), a.dim(), |t| {
        let cols: Vec<Vec<S>> = (0..a.dim())
            .map(|x| {
                let unit = vector::unit(a.dim(), x);
                let mut args: Vec<&[S]> = t.iter().map(|&i| ncols[i].as_slice()).collect();
                args.push(&unit);
                a.eval(&args)
            })
            .collect();
        Matrix::from_columns(&cols).expect("square by construction")
    })
}
