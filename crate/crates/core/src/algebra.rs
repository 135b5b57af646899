//! n-ary algebras given by structure constants, and the basic n-Lie checks.
//!
//! Indices are 0-based throughout the Rust API.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Rational, Scalar};
use crate::vector::{self, axpy};
use crate::verdict::{compare, first_failure, ArgGroup, Verdict};
use crate::wedge::{increasing_tuples, nondecreasing_tuples, sort_in_place, WedgeBasis};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    /// Fully skew n-ary bracket, stored on strictly increasing tuples.
    Alternating,
    /// Commutative binary product, stored on non-decreasing pairs.
    Symmetric,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NAryAlgebra<S = Rational> {
    arity: usize,
    dim: usize,
    basis: Vec<String>,
    symmetry: Symmetry,
    table: BTreeMap<Vec<usize>, Vec<S>>,
}

fn default_names(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("e{i}")).collect()
}

impl<S: Scalar> NAryAlgebra<S> {
    pub fn new(arity: usize, dim: usize, symmetry: Symmetry) -> Result<Self> {
        if arity < 2 {
            return Err(Error::Input(format!("arity must be at least 2, got {arity}")));
        }
        if dim == 0 {
            return Err(Error::Input("dimension must be at least 1".into()));
        }
        if symmetry == Symmetry::Symmetric && arity != 2 {
            return Err(Error::Input("symmetric products must be binary".into()));
        }
        Ok(NAryAlgebra {
            arity,
            dim,
            basis: default_names(dim),
            symmetry,
            table: BTreeMap::new(),
        })
    }

    /// The alternating algebra with every bracket zero.
    pub fn abelian(arity: usize, dim: usize) -> Result<Self> {
        Self::new(arity, dim, Symmetry::Alternating)
    }

    /// Builds the table by evaluating `f` on every canonical basis tuple.
    pub fn from_basis_fn<F>(arity: usize, dim: usize, symmetry: Symmetry, f: F) -> Result<Self>
    where
        F: Fn(&[usize]) -> Vec<S> + Sync,
    {
        let mut alg = Self::new(arity, dim, symmetry)?;
        let tuples = match symmetry {
            Symmetry::Alternating => increasing_tuples(dim, arity),
            Symmetry::Symmetric => nondecreasing_tuples(dim, arity),
        };
        let values: Vec<Vec<S>> = tuples.par_iter().map(|t| f(t)).collect();
        for (t, v) in tuples.into_iter().zip(values) {
            if v.len() != dim {
                return Err(Error::Internal("bracket value of wrong length".into()));
            }
            if !vector::is_zero(&v) {
                alg.table.insert(t, v);
            }
        }
        Ok(alg)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn set_basis_names(&mut self, names: Vec<String>) -> Result<()> {
        if names.len() != self.dim {
            return Err(Error::Input(format!(
                "{} basis names given for dimension {}",
                names.len(),
                self.dim
            )));
        }
        self.basis = names;
        Ok(())
    }

    /// Sets the value on an arbitrary-order basis tuple; signs and repeats are
    /// resolved through canonicalization.
    pub fn set(&mut self, tuple: &[usize], value: Vec<S>) -> Result<()> {
        if tuple.len() != self.arity {
            return Err(Error::Input(format!(
                "tuple of length {} for an algebra of arity {}",
                tuple.len(),
                self.arity
            )));
        }
        if let Some(&bad) = tuple.iter().find(|&&i| i >= self.dim) {
            return Err(Error::Input(format!("basis index {bad} out of range")));
        }
        if value.len() != self.dim {
            return Err(Error::Input(format!(
                "bracket value has length {}, expected {}",
                value.len(),
                self.dim
            )));
        }
        let mut key = tuple.to_vec();
        let value = match self.symmetry {
            Symmetry::Symmetric => {
                key.sort_unstable();
                value
            }
            Symmetry::Alternating => match sort_in_place(&mut key) {
                0 if vector::is_zero(&value) => return Ok(()),
                0 => {
                    return Err(Error::Input(
                        "alternating bracket with a repeated index must vanish".into(),
                    ))
                }
                1 => value,
                _ => vector::neg(&value),
            },
        };
        if vector::is_zero(&value) {
            self.table.remove(&key);
        } else {
            self.table.insert(key, value);
        }
        Ok(())
    }

    /// Nonzero structure constants in canonical tuple order.
    pub fn entries(&self) -> impl Iterator<Item = (&[usize], &[S])> {
        self.table.iter().map(|(k, v)| (k.as_slice(), v.as_slice()))
    }

    pub fn is_abelian(&self) -> bool {
        self.table.is_empty()
    }

    /// Stored value on a canonical tuple.
    pub fn structure(&self, canonical: &[usize]) -> Option<&[S]> {
        self.table.get(canonical).map(Vec::as_slice)
    }

    /// `acc += coeff * [e_{idx_1}, ..., e_{idx_n}]` for any index order.
    pub fn add_basis_bracket(&self, idx: &[usize], coeff: &S, acc: &mut [S]) {
        if coeff.is_zero() || self.table.is_empty() {
            return;
        }
        let mut key = idx.to_vec();
        let sign = match self.symmetry {
            Symmetry::Symmetric => {
                key.sort_unstable();
                1
            }
            Symmetry::Alternating => sort_in_place(&mut key),
        };
        if sign == 0 {
            return;
        }
        if let Some(v) = self.table.get(&key) {
            if sign > 0 {
                axpy(acc, coeff, v);
            } else {
                axpy(acc, &-coeff.clone(), v);
            }
        }
    }

    /// Bracket of basis vectors in any index order.
    pub fn bracket_basis(&self, idx: &[usize]) -> Vec<S> {
        let mut acc = vector::zeros(self.dim);
        self.add_basis_bracket(idx, &S::one(), &mut acc);
        acc
    }

    /// `[e_{idx}]` with slot `slot` replaced by the vector `v`.
    pub fn bracket_basis_with(&self, idx: &[usize], slot: usize, v: &[S]) -> Vec<S> {
        let mut acc = vector::zeros(self.dim);
        let mut t = idx.to_vec();
        for (k, c) in v.iter().enumerate() {
            if !c.is_zero() {
                t[slot] = k;
                self.add_basis_bracket(&t, c, &mut acc);
            }
        }
        acc
    }

    /// Multilinear bracket of arbitrary vectors, without validation.
    pub fn eval(&self, args: &[&[S]]) -> Vec<S> {
        let mut acc = vector::zeros(self.dim);
        if self.table.is_empty() {
            return acc;
        }
        let supports: Vec<Vec<(usize, S)>> = args.iter().map(|a| vector::support(a)).collect();
        let expansion: f64 = supports.iter().map(|s| s.len() as f64).product();
        let per_entry = factorial(self.arity) as f64;
        if self.symmetry == Symmetry::Alternating
            && (self.table.len() as f64) * per_entry < expansion
        {
            self.eval_by_minors(args, &mut acc);
        } else {
            let mut idx = Vec::with_capacity(self.arity);
            self.expand(&supports, &mut idx, S::one(), &mut acc);
        }
        acc
    }

    fn expand(&self, supports: &[Vec<(usize, S)>], idx: &mut Vec<usize>, coeff: S, acc: &mut [S]) {
        let depth = idx.len();
        if depth == supports.len() {
            self.add_basis_bracket(idx, &coeff, acc);
            return;
        }
        for (i, c) in &supports[depth] {
            if self.symmetry == Symmetry::Alternating && idx.contains(i) {
                continue;
            }
            idx.push(*i);
            self.expand(supports, idx, coeff.mul_ref(c), acc);
            idx.pop();
        }
    }

    fn eval_by_minors(&self, args: &[&[S]], acc: &mut [S]) {
        let perms = signed_permutations(self.arity);
        for (t, v) in &self.table {
            let mut det = S::zero();
            for (perm, sgn) in &perms {
                let mut term = S::one();
                for (row, &col) in perm.iter().enumerate() {
                    let x = &args[row][t[col]];
                    if x.is_zero() {
                        term = S::zero();
                        break;
                    }
                    term = term.mul_ref(x);
                }
                if !term.is_zero() {
                    if *sgn > 0 {
                        det += term;
                    } else {
                        det -= term;
                    }
                }
            }
            axpy(acc, &det, v);
        }
    }

    /// Checked bracket of `n` vectors of length `d`.
    pub fn bracket(&self, args: &[Vec<S>]) -> Result<Vec<S>> {
        if args.len() != self.arity {
            return Err(Error::Input(format!(
                "{} arguments for an algebra of arity {}",
                args.len(),
                self.arity
            )));
        }
        if args.iter().any(|a| a.len() != self.dim) {
            return Err(Error::Input(format!(
                "bracket arguments must have length {}",
                self.dim
            )));
        }
        let refs: Vec<&[S]> = args.iter().map(Vec::as_slice).collect();
        Ok(self.eval(&refs))
    }

    /// Same arity, dimension, symmetry and structure constants.
    pub fn same_table(&self, other: &Self) -> bool {
        self.arity == other.arity
            && self.dim == other.dim
            && self.symmetry == other.symmetry
            && self.table == other.table
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> NAryAlgebra<T> {
        NAryAlgebra {
            arity: self.arity,
            dim: self.dim,
            basis: self.basis.clone(),
            symmetry: self.symmetry,
            table: self
                .table
                .iter()
                .map(|(k, v)| (k.clone(), v.iter().map(&f).collect::<Vec<T>>()))
                .filter(|(_, v)| !vector::is_zero(v))
                .collect(),
        }
    }

    pub fn require_alternating(&self, what: &str) -> Result<()> {
        if self.symmetry != Symmetry::Alternating {
            return Err(Error::Input(format!("{what} needs an alternating bracket")));
        }
        Ok(())
    }

    pub fn require_operator(&self, m: &Matrix<S>, what: &str) -> Result<()> {
        if m.rows() != self.dim || m.cols() != self.dim {
            return Err(Error::Input(format!(
                "{what} is {}x{}, algebra has dimension {}",
                m.rows(),
                m.cols(),
                self.dim
            )));
        }
        Ok(())
    }
}

impl NAryAlgebra<Rational> {
    /// The same algebra over a larger coefficient ring.
    pub fn lift<T: Scalar>(&self) -> NAryAlgebra<T> {
        self.map_scalars(T::from_rational)
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// All permutations of `0..n` with their signs.
pub fn signed_permutations(n: usize) -> Vec<(Vec<usize>, i8)> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, i8)>) {
        let n = used.len();
        if cur.len() == n {
            let mut t = cur.clone();
            out.push((cur.clone(), sort_in_place(&mut t)));
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Columns `R e_j` of an operator, for repeated use.
pub fn columns<S: Scalar>(m: &Matrix<S>) -> Vec<Vec<S>> {
    (0..m.cols()).map(|j| m.column(j)).collect()
}

/// Filippov identity on all basis tuples `x` (increasing, length `n-1`) and
/// `y` (increasing, length `n`).
pub fn check_filippov<S: Scalar>(a: &NAryAlgebra<S>) -> Result<Verdict<S>> {
    a.require_alternating("the Filippov identity")?;
    let n = a.arity();
    let d = a.dim();
    let xs = increasing_tuples(d, n - 1);
    let ys = increasing_tuples(d, n);
    let cases: Vec<(usize, usize)> = (0..xs.len())
        .flat_map(|i| (0..ys.len()).map(move |j| (i, j)))
        .collect();
    Ok(first_failure(&cases, |&(i, j)| {
        let (x, y) = (&xs[i], &ys[j]);
        let mut xk = x.clone();
        xk.push(0);
        let inner = a.bracket_basis(y);
        let lhs = a.bracket_basis_with(&xk, n - 1, &inner);
        let mut rhs = vector::zeros(d);
        for (slot, &yi) in y.iter().enumerate() {
            xk[n - 1] = yi;
            let w = a.bracket_basis(&xk);
            vector::add_assign(&mut rhs, &a.bracket_basis_with(y, slot, &w));
        }
        compare(
            "filippov",
            || vec![ArgGroup::new("x", x), ArgGroup::new("y", y)],
            lhs,
            rhs,
        )
    }))
}

/// Leibniz rule `D[x_1..x_n] = sum_i [x_1..Dx_i..x_n]` on increasing basis tuples.
pub fn is_derivation<S: Scalar>(a: &NAryAlgebra<S>, dmat: &Matrix<S>) -> Result<Verdict<S>> {
    a.require_operator(dmat, "derivation")?;
    let dcols = columns(dmat);
    let tuples = match a.symmetry() {
        Symmetry::Alternating => increasing_tuples(a.dim(), a.arity()),
        Symmetry::Symmetric => nondecreasing_tuples(a.dim(), a.arity()),
    };
    Ok(first_failure(&tuples, |t| {
        let lhs = dmat.apply(&a.bracket_basis(t));
        let mut rhs = vector::zeros(a.dim());
        for (slot, &ti) in t.iter().enumerate() {
            vector::add_assign(&mut rhs, &a.bracket_basis_with(t, slot, &dcols[ti]));
        }
        compare("derivation", || vec![ArgGroup::new("x", t)], lhs, rhs)
    }))
}

/// A basis of the derivations `D` with `D_ij = 0` wherever `allowed(i, j)`
/// is false.
pub fn derivation_space_with(a: &NAryAlgebra, allowed: impl Fn(usize, usize) -> bool) -> Result<Vec<Matrix>> {
    let d = a.dim();
    let free: Vec<(usize, usize)> = (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).filter(|&(i, j)| allowed(i, j)).collect();
    let tuples = match a.symmetry() {
        Symmetry::Alternating => increasing_tuples(d, a.arity()),
        Symmetry::Symmetric => nondecreasing_tuples(d, a.arity()),
    };
    // one column per free entry: the Leibniz defect of the elementary matrix
    let cols: Vec<Vec<Rational>> = free
        .iter()
        .map(|&(i, j)| {
            let mut e = Matrix::zeros(d, d);
            e.set(i, j, Rational::from_int(1));
            let mut col = Vec::with_capacity(tuples.len() * d);
            for t in &tuples {
                let mut v = e.apply(&a.bracket_basis(t));
                for (slot, &ti) in t.iter().enumerate() {
                    if ti == j {
                        vector::sub_assign(&mut v, &a.bracket_basis_with(t, slot, &vector::unit(d, i)));
                    }
                }
                col.extend(v);
            }
            col
        })
        .collect();
    if cols.is_empty() {
        return Ok(Vec::new());
    }
    let system = Matrix::from_columns(&cols)?;
    Ok(crate::linalg::nullspace_basis(&system)?
        .into_iter()
        .map(|v| {
            let mut m = Matrix::zeros(d, d);
            for (k, &(i, j)) in free.iter().enumerate() {
                m.set(i, j, v[k].clone());
            }
            m
        })
        .collect())
}

pub fn derivation_space(a: &NAryAlgebra) -> Result<Vec<Matrix>> {
    derivation_space_with(a, |_, _| true)
}

/// Coordinates of `x_1 ∧ ... ∧ x_k` in the increasing-tuple basis.
pub fn wedge_coordinates<S: Scalar>(args: &[&[S]], basis: &WedgeBasis) -> Vec<S> {
    let mut out = vector::zeros(basis.len());
    let supports: Vec<Vec<(usize, S)>> = args.iter().map(|a| vector::support(a)).collect();
    fn rec<S: Scalar>(
        supports: &[Vec<(usize, S)>],
        idx: &mut Vec<usize>,
        coeff: S,
        basis: &WedgeBasis,
        out: &mut [S],
    ) {
        if idx.len() == supports.len() {
            if let Some((pos, sign)) = basis.locate(idx) {
                if sign > 0 {
                    out[pos] += coeff;
                } else {
                    out[pos] -= coeff;
                }
            }
            return;
        }
        for (i, c) in &supports[idx.len()] {
            if idx.contains(i) {
                continue;
            }
            idx.push(*i);
            rec(supports, idx, coeff.mul_ref(c), basis, out);
            idx.pop();
        }
    }
    rec(&supports, &mut Vec::new(), S::one(), basis, &mut out);
    out
}

/// `ad_X` for a basis wedge `X = e_I`.
pub fn ad_basis<S: Scalar>(a: &NAryAlgebra<S>, wedge: &[usize]) -> Matrix<S> {
    let d = a.dim();
    let mut t = wedge.to_vec();
    t.push(0);
    let cols: Vec<Vec<S>> = (0..d)
        .map(|y| {
            *t.last_mut().unwrap() = y;
            a.bracket_basis(&t)
        })
        .collect();
    Matrix::from_columns(&cols).expect("square by construction")
}

/// `ad_X : y -> [X, y]` for `X` given in increasing-tuple coordinates.
pub fn ad<S: Scalar>(a: &NAryAlgebra<S>, x: &[S]) -> Result<Matrix<S>> {
    a.require_alternating("ad")?;
    let basis = WedgeBasis::new(a.dim(), a.arity() - 1);
    if x.len() != basis.len() {
        return Err(Error::Input(format!(
            "wedge element has {} coordinates, expected {}",
            x.len(),
            basis.len()
        )));
    }
    let mut m = Matrix::zeros(a.dim(), a.dim());
    for (pos, c) in x.iter().enumerate() {
        if !c.is_zero() {
            m = m.add(&ad_basis(a, basis.tuple(pos)).scale(c));
        }
    }
    Ok(m)
}

/// `e_I ∘ e_J = sum_i e_{J_1} ∧ .. ∧ [e_I, e_{J_i}] ∧ .. ∧ e_{J_{n-1}}`.
pub fn fundamental_action_basis<S: Scalar>(
    a: &NAryAlgebra<S>,
    basis: &WedgeBasis,
    i: &[usize],
    j: &[usize],
) -> Vec<S> {
    let mut out = vector::zeros(basis.len());
    let mut it = i.to_vec();
    it.push(0);
    let mut jt = j.to_vec();
    for slot in 0..j.len() {
        *it.last_mut().unwrap() = j[slot];
        let v = a.bracket_basis(&it);
        for (k, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            jt[slot] = k;
            if let Some((pos, sign)) = basis.locate(&jt) {
                if sign > 0 {
                    out[pos] += c;
                } else {
                    out[pos] -= c;
                }
            }
        }
        jt[slot] = j[slot];
    }
    out
}

/// Fundamental action of two elements of `Λ^{n-1} g`.
pub fn fundamental_action<S: Scalar>(a: &NAryAlgebra<S>, x: &[S], y: &[S]) -> Result<Vec<S>> {
    a.require_alternating("the fundamental action")?;
    let basis = WedgeBasis::new(a.dim(), a.arity() - 1);
    if x.len() != basis.len() || y.len() != basis.len() {
        return Err(Error::Input(format!(
            "wedge elements must have {} coordinates",
            basis.len()
        )));
    }
    let mut out = vector::zeros(basis.len());
    for (p, cx) in x.iter().enumerate() {
        if cx.is_zero() {
            continue;
        }
        for (q, cy) in y.iter().enumerate() {
            if cy.is_zero() {
                continue;
            }
            let term = fundamental_action_basis(a, &basis, basis.tuple(p), basis.tuple(q));
            axpy(&mut out, &cx.mul_ref(cy), &term);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::{int, rat};
    use proptest::prelude::*;

    fn e(d: usize, i: usize) -> Vec<Rational> {
        vector::unit(d, i)
    }

    #[test]
    fn derivation_spaces() {
        for (a, dim) in [
            (catalog::sl2(), 3),
            (catalog::heisenberg(), 6),
            (NAryAlgebra::abelian(3, 3).unwrap(), 9),
            (catalog::simple_n_lie(3), 6),
        ] {
            let basis = derivation_space(&a).unwrap();
            assert_eq!(basis.len(), dim);
            assert!(basis.iter().all(|d| is_derivation(&a, d).unwrap().is_pass()));
        }
        let strict = derivation_space_with(&catalog::heisenberg(), |i, j| i > j).unwrap();
        assert!(strict.iter().all(|d| d.pow(3).is_zero()) && !strict.is_empty());
    }

    #[test]
    fn worked_example_brackets() {
        let g = catalog::worked_example();
        assert_eq!(g.bracket(&[e(3, 0), e(3, 1)]).unwrap(), e(3, 1));
        assert_eq!(g.bracket(&[e(3, 1), e(3, 0)]).unwrap(), vector::neg(&e(3, 1)));
        let two_e1 = vector::scale(&int(2), &e(3, 0));
        assert_eq!(g.bracket(&[two_e1, e(3, 1)]).unwrap(), vector::scale(&int(2), &e(3, 1)));
        let x = vec![int(1), rat(2, 3), int(-1)];
        assert!(vector::is_zero(&g.bracket(&[x.clone(), x]).unwrap()));
        assert!(g.bracket(&[e(3, 0)]).is_err());
    }

    #[test]
    fn repeated_argument_in_ternary_vanishes() {
        let s = catalog::simple_n_lie(3);
        let x = vec![int(1), int(2), int(0), int(-1)];
        let out = s.bracket(&[x.clone(), x, e(4, 2)]).unwrap();
        assert!(vector::is_zero(&out));
    }

    #[test]
    fn filippov_examples() {
        assert!(check_filippov(&NAryAlgebra::<Rational>::abelian(3, 4).unwrap()).unwrap().is_pass());
        assert!(check_filippov(&catalog::worked_example()).unwrap().is_pass());
        let bad = catalog::non_lie_example();
        let v = check_filippov(&bad).unwrap();
        let c = v.counterexample().expect("Jacobi fails");
        // the only increasing triple for d = 3 is (1,2,3)
        let mut all: Vec<usize> = c.arguments.iter().flat_map(|g| g.indices.clone()).collect();
        all.sort_unstable();
        all.dedup();
        assert_eq!(all, vec![0, 1, 2]);
        assert!(!vector::is_zero(&c.difference()));
    }

    #[test]
    fn filippov_detects_non_lie_by_jacobiator() {
        // independent Jacobiator on the triple (e1, e2, e3)
        let bad = catalog::non_lie_example();
        let b = |x: &[Rational], y: &[Rational]| bad.bracket(&[x.to_vec(), y.to_vec()]).unwrap();
        let (e1, e2, e3) = (e(3, 0), e(3, 1), e(3, 2));
        let mut j = b(&e1, &b(&e2, &e3));
        vector::add_assign(&mut j, &b(&e2, &b(&e3, &e1)));
        vector::add_assign(&mut j, &b(&e3, &b(&e1, &e2)));
        assert!(!vector::is_zero(&j));
    }

    #[test]
    fn derivation_examples() {
        let g = catalog::worked_example();
        assert!(is_derivation(&g, &Matrix::zeros(3, 3)).unwrap().is_pass());
        let ad_e2 = ad_basis(&g, &[1]);
        assert_eq!(ad_e2.column(0), vector::neg(&e(3, 1)));
        assert!(is_derivation(&g, &ad_e2).unwrap().is_pass());
        assert!(!is_derivation(&g, &Matrix::identity(3)).unwrap().is_pass());
    }

    #[test]
    fn ad_examples() {
        let g = catalog::worked_example();
        let m = ad(&g, &[int(1), int(0), int(0)]).unwrap();
        assert_eq!(m.column(1), e(3, 1));
        assert!(vector::is_zero(&m.column(0)));
        let ab = NAryAlgebra::<Rational>::abelian(3, 4).unwrap();
        let x = vector::unit(6, 0);
        assert!(ad(&ab, &x).unwrap().is_zero());
    }

    #[test]
    fn fundamental_action_for_lie_is_bracket() {
        let g = catalog::sl2();
        let x = vec![int(1), int(-2), rat(1, 2)];
        let y = vec![int(3), int(0), int(1)];
        let lhs = fundamental_action(&g, &x, &y).unwrap();
        assert_eq!(lhs, g.bracket(&[x, y]).unwrap());
    }

    /// Direct expansion of X∘Y with X, Y given as tuples of vectors.
    fn action_oracle(a: &NAryAlgebra, xs: &[Vec<Rational>], ys: &[Vec<Rational>]) -> Vec<Rational> {
        let basis = WedgeBasis::new(a.dim(), a.arity() - 1);
        let mut out = vector::zeros(basis.len());
        for i in 0..ys.len() {
            let mut args: Vec<Vec<Rational>> = xs.to_vec();
            args.push(ys[i].clone());
            let w = a.bracket(&args).unwrap();
            let mut slots: Vec<Vec<Rational>> = ys.to_vec();
            slots[i] = w;
            let refs: Vec<&[Rational]> = slots.iter().map(Vec::as_slice).collect();
            vector::add_assign(&mut out, &wedge_coordinates(&refs, &basis));
        }
        out
    }

    fn dense_oracle(a: &NAryAlgebra, args: &[Vec<Rational>]) -> Vec<Rational> {
        // every index tuple in 0..d, no pruning, no minors
        let d = a.dim();
        let n = a.arity();
        let mut out = vector::zeros(d);
        let total = d.pow(n as u32);
        for code in 0..total {
            let mut idx = Vec::with_capacity(n);
            let mut c = code;
            for _ in 0..n {
                idx.push(c % d);
                c /= d;
            }
            let mut coeff = Rational::from_int(1);
            for (k, &i) in idx.iter().enumerate() {
                coeff *= &args[k][i];
            }
            a.add_basis_bracket(&idx, &coeff, &mut out);
        }
        out
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-4i64..=4, 1i64..=3).prop_map(|(p, q)| rat(p, q))
    }

    proptest! {
        #[test]
        fn bracket_matches_dense_oracle(
            which in 0usize..4,
            raw in proptest::collection::vec(small_rational(), 25),
        ) {
            let a = match which {
                0 => catalog::sl2(),
                1 => catalog::simple_n_lie(3),
                2 => catalog::simple_n_lie(4),
                _ => catalog::heisenberg(),
            };
            let (n, d) = (a.arity(), a.dim());
            let args: Vec<Vec<Rational>> = (0..n).map(|k| raw[k * d..(k + 1) * d].to_vec()).collect();
            prop_assert_eq!(a.bracket(&args).unwrap(), dense_oracle(&a, &args));
            let mut minors = vector::zeros(d);
            let refs: Vec<&[Rational]> = args.iter().map(Vec::as_slice).collect();
            a.eval_by_minors(&refs, &mut minors);
            prop_assert_eq!(minors, dense_oracle(&a, &args));
        }

        #[test]
        fn ad_is_a_derivation(which in 0usize..3, raw in proptest::collection::vec(-3i64..=3, 10)) {
            let a = match which {
                0 => catalog::sl2(),
                1 => catalog::simple_n_lie(3),
                _ => catalog::simple_n_lie(4),
            };
            let b = WedgeBasis::new(a.dim(), a.arity() - 1);
            let x: Vec<Rational> = (0..b.len()).map(|i| int(raw[i % raw.len()])).collect();
            prop_assert!(is_derivation(&a, &ad(&a, &x).unwrap()).unwrap().is_pass());
        }

        #[test]
        fn fundamental_action_matches_expansion(raw in proptest::collection::vec(-2i64..=2, 16)) {
            let a = catalog::simple_n_lie(3);
            let v = |k: usize| -> Vec<Rational> { (0..4).map(|i| int(raw[k * 4 + i])).collect() };
            let xs = vec![v(0), v(1)];
            let ys = vec![v(2), v(3)];
            let basis = WedgeBasis::new(4, 2);
            let xr: Vec<&[Rational]> = xs.iter().map(Vec::as_slice).collect();
            let yr: Vec<&[Rational]> = ys.iter().map(Vec::as_slice).collect();
            let xw = wedge_coordinates(&xr, &basis);
            let yw = wedge_coordinates(&yr, &basis);
            prop_assert_eq!(fundamental_action(&a, &xw, &yw).unwrap(), action_oracle(&a, &xs, &ys));
        }
    }

    #[test]
    fn set_canonicalizes_and_validates() {
        let mut a = NAryAlgebra::<Rational>::abelian(2, 3).unwrap();
        a.set(&[1, 0], vec![int(0), int(0), int(1)]).unwrap();
        assert_eq!(a.structure(&[0, 1]).unwrap(), &[int(0), int(0), int(-1)]);
        assert!(a.set(&[1, 1], e(3, 0)).is_err());
        assert!(a.set(&[0, 3], e(3, 0)).is_err());
        assert!(a.set(&[0, 1], vec![int(1)]).is_err());
        a.set(&[0, 1], vector::zeros(3)).unwrap();
        assert!(a.is_abelian());
    }
}
