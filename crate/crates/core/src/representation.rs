//! Representations of n-Lie algebras stored per increasing `(n-1)`-tuple.

use crate::algebra::{columns, fundamental_action_basis, wedge_coordinates, NAryAlgebra, Symmetry};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Rational, Scalar};
use crate::vector;
use crate::verdict::{compare, first_failure, ArgGroup, Counterexample, Verdict};
use crate::wedge::{increasing_tuples, WedgeBasis};

#[derive(Clone, PartialEq)]
pub struct RepresentationTable<S = Rational> {
    arity: usize,
    algebra_dim: usize,
    module_dim: usize,
    basis: WedgeBasis,
    maps: Vec<Matrix<S>>,
}

impl<S: Scalar> std::fmt::Debug for RepresentationTable<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RepresentationTable")
            .field("arity", &self.arity)
            .field("algebra_dim", &self.algebra_dim)
            .field("module_dim", &self.module_dim)
            .field("maps", &self.maps)
            .finish()
    }
}

impl<S: Scalar> RepresentationTable<S> {
    pub fn zero(arity: usize, algebra_dim: usize, module_dim: usize) -> Result<Self> {
        if arity < 2 {
            return Err(Error::Input("representations need arity at least 2".into()));
        }
        let basis = WedgeBasis::new(algebra_dim, arity - 1);
        let maps = vec![Matrix::zeros(module_dim, module_dim); basis.len()];
        Ok(RepresentationTable {
            arity,
            algebra_dim,
            module_dim,
            basis,
            maps,
        })
    }

    /// Builds the table from the operator of every increasing `(n-1)`-tuple.
    pub fn from_fn(
        arity: usize,
        algebra_dim: usize,
        module_dim: usize,
        f: impl Fn(&[usize]) -> Matrix<S>,
    ) -> Result<Self> {
        let mut t = Self::zero(arity, algebra_dim, module_dim)?;
        for pos in 0..t.basis.len() {
            let m = f(t.basis.tuple(pos));
            t.check_shape(&m)?;
            t.maps[pos] = m;
        }
        Ok(t)
    }

    fn check_shape(&self, m: &Matrix<S>) -> Result<()> {
        if m.rows() != self.module_dim || m.cols() != self.module_dim {
            return Err(Error::Input(format!(
                "action matrix is {}x{}, module has dimension {}",
                m.rows(),
                m.cols(),
                self.module_dim
            )));
        }
        Ok(())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    pub fn wedge_basis(&self) -> &WedgeBasis {
        &self.basis
    }

    /// Operator of the `pos`-th basis wedge.
    pub fn get(&self, pos: usize) -> &Matrix<S> {
        &self.maps[pos]
    }

    /// Sets the action of `e_{t_1} ∧ ... ∧ e_{t_{n-1}}` for any order of `t`.
    pub fn set(&mut self, tuple: &[usize], m: Matrix<S>) -> Result<()> {
        self.check_shape(&m)?;
        if tuple.len() != self.arity - 1 || tuple.iter().any(|&i| i >= self.algebra_dim) {
            return Err(Error::Input(format!("invalid wedge tuple {tuple:?}")));
        }
        match self.basis.locate(tuple) {
            None if m.is_zero() => Ok(()),
            None => Err(Error::Input("repeated wedge index must act by zero".into())),
            Some((pos, sign)) => {
                self.maps[pos] = if sign > 0 { m } else { m.scale(&-S::one()) };
                Ok(())
            }
        }
    }

    /// `ρ(X)` for `X` in increasing-tuple coordinates.
    pub fn act_wedge(&self, x: &[S]) -> Matrix<S> {
        let mut out = Matrix::zeros(self.module_dim, self.module_dim);
        for (c, m) in x.iter().zip(&self.maps) {
            if !c.is_zero() {
                out = out.add(&m.scale(c));
            }
        }
        out
    }

    /// `ρ(x_1, ..., x_{n-1})` on arbitrary vectors.
    pub fn act(&self, args: &[&[S]]) -> Matrix<S> {
        self.act_wedge(&wedge_coordinates(args, &self.basis))
    }

    /// `ρ(e_{t_1}, ..., e_{t_{n-1}})` for any order; `None` on a repeated index.
    pub fn act_basis(&self, tuple: &[usize]) -> Option<(i8, &Matrix<S>)> {
        self.basis.locate(tuple).map(|(pos, s)| (s, &self.maps[pos]))
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> RepresentationTable<T> {
        RepresentationTable {
            arity: self.arity,
            algebra_dim: self.algebra_dim,
            module_dim: self.module_dim,
            basis: self.basis.clone(),
            maps: self.maps.iter().map(|m| m.map(&f)).collect(),
        }
    }
}

impl RepresentationTable<Rational> {
    pub fn lift<T: Scalar>(&self) -> RepresentationTable<T> {
        self.map_scalars(T::from_rational)
    }
}

/// `ρ(X) = ad_X` on the algebra itself.
pub fn adjoint<S: Scalar>(a: &NAryAlgebra<S>) -> Result<RepresentationTable<S>> {
    a.require_alternating("the adjoint representation")?;
    RepresentationTable::from_fn(a.arity(), a.dim(), a.dim(), |t| {
        crate::algebra::ad_basis(a, t)
    })
}

fn matrix_mismatch<S: Scalar>(
    identity: &str,
    groups: Vec<ArgGroup>,
    lhs: &Matrix<S>,
    rhs: &Matrix<S>,
) -> Option<Counterexample<S>> {
    (0..lhs.cols()).find_map(|v| {
        let mut g = groups.clone();
        g.push(ArgGroup::new("v", &[v]));
        compare(identity, || g, lhs.column(v), rhs.column(v))
    })
}

/// Both representation identities on basis tuples: the commutator identity
/// `[ρ(X), ρ(Y)] = ρ(X∘Y)` and the bracket identity
/// `ρ(x_1..x_{n-2}, [y_1..y_n]) = sum_i (-1)^{n-i} ρ(y without y_i) ρ(x_1..x_{n-2}, y_i)`.
pub fn check_representation<S: Scalar>(
    a: &NAryAlgebra<S>,
    rho: &RepresentationTable<S>,
) -> Result<Verdict<S>> {
    a.require_alternating("representation checks")?;
    if rho.arity() != a.arity() || rho.algebra_dim() != a.dim() {
        return Err(Error::Input(
            "representation does not match the algebra's arity or dimension".into(),
        ));
    }
    let n = a.arity();
    let basis = rho.wedge_basis();
    let b = basis.len();
    let pairs: Vec<(usize, usize)> = (0..b).flat_map(|i| (0..b).map(move |j| (i, j))).collect();
    let first = first_failure(&pairs, |&(p, q)| {
        let (i, j) = (basis.tuple(p), basis.tuple(q));
        let (ri, rj) = (rho.get(p), rho.get(q));
        let lhs = ri.commutator(rj);
        let rhs = rho.act_wedge(&fundamental_action_basis(a, basis, i, j));
        matrix_mismatch(
            "representation-commutator",
            vec![ArgGroup::new("X", i), ArgGroup::new("Y", j)],
            &lhs,
            &rhs,
        )
    });
    if !first.is_pass() {
        return Ok(first);
    }
    let xs = increasing_tuples(a.dim(), n - 2);
    let ys = increasing_tuples(a.dim(), n);
    let cases: Vec<(usize, usize)> = (0..xs.len())
        .flat_map(|i| (0..ys.len()).map(move |j| (i, j)))
        .collect();
    let m = rho.module_dim();
    Ok(first_failure(&cases, |&(i, j)| {
        let (x, y) = (&xs[i], &ys[j]);
        let inner = a.bracket_basis(y);
        let mut lhs = Matrix::zeros(m, m);
        let mut xk = x.clone();
        xk.push(0);
        for (k, c) in inner.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            xk[n - 2] = k;
            if let Some((s, op)) = rho.act_basis(&xk) {
                let c = if s > 0 { c.clone() } else { -c.clone() };
                lhs = lhs.add(&op.scale(&c));
            }
        }
        let mut rhs = Matrix::zeros(m, m);
        for slot in 0..n {
            let rest: Vec<usize> = y.iter().enumerate().filter(|&(k, _)| k != slot).map(|(_, &v)| v).collect();
            xk[n - 2] = y[slot];
            let (Some((s1, r1)), Some((s2, r2))) = (rho.act_basis(&rest), rho.act_basis(&xk)) else {
                continue;
            };
            let mut term = r1.mul(r2);
            // (-1)^{n-i} with 1-based i = slot + 1
            if (s1 * s2 > 0) != ((n - slot - 1) % 2 == 0) {
                term = term.scale(&-S::one());
            }
            rhs = rhs.add(&term);
        }
        matrix_mismatch(
            "representation-bracket",
            vec![ArgGroup::new("x", x), ArgGroup::new("y", y)],
            &lhs,
            &rhs,
        )
    }))
}

/// The semidirect product on `g ⊕ V`; basis `e_1..e_d` of `g` then `V`.
pub fn semidirect_product<S: Scalar>(
    a: &NAryAlgebra<S>,
    rho: &RepresentationTable<S>,
) -> Result<NAryAlgebra<S>> {
    if let Verdict::Fail(c) = check_representation(a, rho)? {
        return Err(Error::Precondition {
            check: "representation".into(),
            detail: c.to_string(),
        });
    }
    let (d, m, n) = (a.dim(), rho.module_dim(), a.arity());
    let maps: Vec<Vec<Vec<S>>> = (0..rho.wedge_basis().len()).map(|p| columns(rho.get(p))).collect();
    let mut out = NAryAlgebra::from_basis_fn(n, d + m, Symmetry::Alternating, |t| {
        let mut v = vector::zeros(d + m);
        let in_v = t.iter().filter(|&&i| i >= d).count();
        if in_v == 0 {
            v[..d].clone_from_slice(&a.bracket_basis(t));
        } else if in_v == 1 {
            // increasing order puts the module index last, so the sign is +1
            let pos = rho.wedge_basis().position(&t[..n - 1]).expect("increasing");
            v[d..].clone_from_slice(&maps[pos][t[n - 1] - d]);
        }
        v
    })?;
    let mut names = a.basis_names().to_vec();
    names.extend((1..=m).map(|i| format!("v{i}")));
    out.set_basis_names(names)?;
    Ok(out)
}
