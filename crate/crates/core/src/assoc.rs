//! Commutative associative algebras, their Reynolds operators, and the
//! determinant 3-Lie brackets built from derivations.
//!
//! A commutative associative algebra is a symmetric binary [`NAryAlgebra`];
//! associativity is checked, not assumed.

use crate::algebra::{columns, is_derivation, NAryAlgebra, Symmetry};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::reynolds::check_reynolds;
use crate::scalar::Scalar;
use crate::vector;
use crate::verdict::{compare, compare_columns, first_failure, ArgGroup, Verdict};
use crate::wedge::{increasing_tuples, nondecreasing_tuples};

fn require_product<S: Scalar>(a: &NAryAlgebra<S>) -> Result<()> {
    if a.arity() != 2 || a.symmetry() != Symmetry::Symmetric {
        return Err(Error::Input("expected a commutative (symmetric binary) product".into()));
    }
    Ok(())
}

fn mul<S: Scalar>(a: &NAryAlgebra<S>, x: &[S], y: &[S]) -> Vec<S> {
    a.eval(&[x, y])
}

pub fn check_associativity<S: Scalar>(a: &NAryAlgebra<S>) -> Result<Verdict<S>> {
    require_product(a)?;
    let d = a.dim();
    let cases: Vec<[usize; 3]> = (0..d)
        .flat_map(|i| (0..d).flat_map(move |j| (0..d).map(move |k| [i, j, k])))
        .collect();
    Ok(first_failure(&cases, |t| {
        let lhs = mul(a, &a.bracket_basis(&[t[0], t[1]]), &vector::unit(d, t[2]));
        let rhs = mul(a, &vector::unit(d, t[0]), &a.bracket_basis(&[t[1], t[2]]));
        compare("associativity", || vec![ArgGroup::new("x", t)], lhs, rhs)
    }))
}

fn require_pass<S: Scalar>(v: Verdict<S>, check: &str) -> Result<()> {
    match v {
        Verdict::Pass => Ok(()),
        Verdict::Fail(c) => Err(Error::Precondition {
            check: check.into(),
            detail: c.to_string(),
        }),
    }
}

/// `Rx·Ry = R(Rx·y + x·Ry - Rx·Ry)` on basis pairs.
pub fn check_assoc_reynolds<S: Scalar>(a: &NAryAlgebra<S>, r: &Matrix<S>) -> Result<Verdict<S>> {
    require_pass(check_associativity(a)?, "associativity")?;
    a.require_operator(r, "Reynolds operator")?;
    let rc = columns(r);
    let d = a.dim();
    let pairs = nondecreasing_tuples(d, 2);
    Ok(first_failure(&pairs, |t| {
        let (x, y) = (vector::unit::<S>(d, t[0]), vector::unit::<S>(d, t[1]));
        let (rx, ry) = (&rc[t[0]], &rc[t[1]]);
        let lhs = mul(a, rx, ry);
        let mut inner = mul(a, rx, &y);
        vector::add_assign(&mut inner, &mul(a, &x, ry));
        vector::sub_assign(&mut inner, &lhs);
        compare("assoc-reynolds", || vec![ArgGroup::new("x", t)], lhs, r.apply(&inner))
    }))
}

/// `f(D(x)·y) = f(x·D(y))` on basis pairs.
pub fn functional_compatibility<S: Scalar>(a: &NAryAlgebra<S>, f: &[S], dmat: &Matrix<S>) -> Result<Verdict<S>> {
    require_product(a)?;
    a.require_operator(dmat, "derivation")?;
    if f.len() != a.dim() {
        return Err(Error::Input("functional has the wrong length".into()));
    }
    let dc = columns(dmat);
    let d = a.dim();
    let pairs = increasing_tuples(d, 2);
    Ok(first_failure(&pairs, |t| {
        let lhs = vector::dot(f, &mul(a, &dc[t[0]], &vector::unit(d, t[1])));
        let rhs = vector::dot(f, &mul(a, &vector::unit(d, t[0]), &dc[t[1]]));
        compare("functional-compatibility", || vec![ArgGroup::new("x", t)], vec![lhs], vec![rhs])
    }))
}

fn require_derivation<S: Scalar>(a: &NAryAlgebra<S>, dmat: &Matrix<S>, name: &str) -> Result<()> {
    a.require_operator(dmat, name)?;
    require_pass(is_derivation(a, dmat)?, &format!("{name} is a derivation"))
}

fn require_commuting<S: Scalar>(p: &Matrix<S>, q: &Matrix<S>, what: &str) -> Result<()> {
    require_pass(compare_columns(what, &p.mul(q), &q.mul(p)), what)
}

/// `[x, y]_D = D(x)·y - D(y)·x`.
pub fn lie_from_derivation<S: Scalar>(a: &NAryAlgebra<S>, dmat: &Matrix<S>) -> Result<NAryAlgebra<S>> {
    require_product(a)?;
    require_derivation(a, dmat, "D")?;
    let dc = columns(dmat);
    let d = a.dim();
    let mut out = NAryAlgebra::from_basis_fn(2, d, Symmetry::Alternating, |t| {
        vector::sub(&mul(a, &dc[t[0]], &vector::unit(d, t[1])), &mul(a, &dc[t[1]], &vector::unit(d, t[0])))
    })?;
    out.set_basis_names(a.basis_names().to_vec())?;
    Ok(out)
}

/// `|c_1 c_2 c_3|` for columns of three algebra elements, expanded along the
/// first row with the commutative product.
pub fn det3<S: Scalar>(a: &NAryAlgebra<S>, c: [&[Vec<S>; 3]; 3]) -> Vec<S> {
    let minor = |p: usize, q: usize, i: usize, j: usize| {
        vector::sub(&mul(a, &c[p][i], &c[q][j]), &mul(a, &c[p][j], &c[q][i]))
    };
    let mut out = mul(a, &c[0][0], &minor(1, 2, 1, 2));
    vector::sub_assign(&mut out, &mul(a, &c[0][1], &minor(1, 2, 0, 2)));
    vector::add_assign(&mut out, &mul(a, &c[0][2], &minor(1, 2, 0, 1)));
    out
}

/// `f(x)(Dy·z - Dz·y) + f(y)(Dz·x - Dx·z) + f(z)(Dx·y - Dy·x)`, the
/// determinant with rows `(f(·), D(·), ·)` evaluated on `(x, y, z)`.
fn f_d_det<S: Scalar>(a: &NAryAlgebra<S>, fv: [&S; 3], dv: [&[S]; 3], v: [&[S]; 3]) -> Vec<S> {
    let mut out = vector::zeros(a.dim());
    for k in 0..3 {
        let (p, q) = ((k + 1) % 3, (k + 2) % 3);
        if fv[k].is_zero() {
            continue;
        }
        let term = vector::sub(&mul(a, dv[p], v[q]), &mul(a, dv[q], v[p]));
        vector::axpy(&mut out, fv[k], &term);
    }
    out
}

fn ternary<S: Scalar>(d: usize, names: &[String], f: impl Fn(&[usize]) -> Vec<S> + Sync) -> Result<NAryAlgebra<S>> {
    let mut out = NAryAlgebra::from_basis_fn(3, d, Symmetry::Alternating, f)?;
    out.set_basis_names(names.to_vec())?;
    Ok(out)
}

/// `{x, y, z}_{f,D}` for a derivation `D` with `f(Dx·y) = f(x·Dy)`.
pub fn three_lie_from_f_d<S: Scalar>(a: &NAryAlgebra<S>, f: &[S], dmat: &Matrix<S>) -> Result<NAryAlgebra<S>> {
    require_product(a)?;
    require_derivation(a, dmat, "D")?;
    require_pass(functional_compatibility(a, f, dmat)?, "functional-compatibility")?;
    let d = a.dim();
    let dc = columns(dmat);
    ternary(d, a.basis_names(), |t| {
        let units: Vec<Vec<S>> = t.iter().map(|&i| vector::unit(d, i)).collect();
        f_d_det(
            a,
            [&f[t[0]], &f[t[1]], &f[t[2]]],
            [&dc[t[0]], &dc[t[1]], &dc[t[2]]],
            [&units[0], &units[1], &units[2]],
        )
    })
}

/// Determinant with rows `(x, D_1 x, D_2 x)`.
pub fn three_lie_from_two_derivations<S: Scalar>(a: &NAryAlgebra<S>, d1: &Matrix<S>, d2: &Matrix<S>) -> Result<NAryAlgebra<S>> {
    require_product(a)?;
    require_derivation(a, d1, "D1")?;
    require_derivation(a, d2, "D2")?;
    require_commuting(d1, d2, "D1 D2 = D2 D1")?;
    let d = a.dim();
    let (c1, c2) = (columns(d1), columns(d2));
    ternary(d, a.basis_names(), |t| {
        let cols: Vec<[Vec<S>; 3]> = t.iter().map(|&i| [vector::unit(d, i), c1[i].clone(), c2[i].clone()]).collect();
        det3(a, [&cols[0], &cols[1], &cols[2]])
    })
}

/// Determinant with rows `(D_1 x, D_2 x, D_3 x)`.
pub fn three_lie_from_three_derivations<S: Scalar>(
    a: &NAryAlgebra<S>,
    d1: &Matrix<S>,
    d2: &Matrix<S>,
    d3: &Matrix<S>,
) -> Result<NAryAlgebra<S>> {
    require_product(a)?;
    for (m, name) in [(d1, "D1"), (d2, "D2"), (d3, "D3")] {
        require_derivation(a, m, name)?;
    }
    require_commuting(d1, d2, "D1 D2 = D2 D1")?;
    require_commuting(d1, d3, "D1 D3 = D3 D1")?;
    require_commuting(d2, d3, "D2 D3 = D3 D2")?;
    let d = a.dim();
    let cs = [columns(d1), columns(d2), columns(d3)];
    ternary(d, a.basis_names(), |t| {
        let cols: Vec<[Vec<S>; 3]> = t.iter().map(|&i| [cs[0][i].clone(), cs[1][i].clone(), cs[2][i].clone()]).collect();
        det3(a, [&cols[0], &cols[1], &cols[2]])
    })
}

pub type Column<S> = [Vec<S>; 3];

fn apply_col<S: Scalar>(r: &Matrix<S>, c: &Column<S>) -> Column<S> {
    [r.apply(&c[0]), r.apply(&c[1]), r.apply(&c[2])]
}

/// The two sides of `|Rx Ry Rz| = R(|Rx Ry z| + c.p.) - k R(|Rx Ry Rz|)`
/// on one triple of columns.
pub fn determinant_identity_sides<S: Scalar>(
    a: &NAryAlgebra<S>,
    r: &Matrix<S>,
    cols: &[Column<S>; 3],
    k: i64,
) -> (Vec<S>, Vec<S>) {
    let [x, y, z] = cols;
    let (rx, ry, rz) = (apply_col(r, x), apply_col(r, y), apply_col(r, z));
    let full = det3(a, [&rx, &ry, &rz]);
    let mut mixed = det3(a, [&rx, &ry, z]);
    vector::add_assign(&mut mixed, &det3(a, [&ry, &rz, x]));
    vector::add_assign(&mut mixed, &det3(a, [&rz, &rx, y]));
    let mut rhs = r.apply(&mixed);
    vector::axpy(&mut rhs, &-S::from_int(k), &r.apply(&full));
    (full, rhs)
}

/// `|Rx Ry Rz| = R(|Rx Ry z| + c.p.) - R(|Rx Ry Rz|)` on each triple.
pub fn check_determinant_lemma<S: Scalar>(a: &NAryAlgebra<S>, r: &Matrix<S>, triples: &[[Column<S>; 3]]) -> Result<Verdict<S>> {
    require_product(a)?;
    a.require_operator(r, "Reynolds operator")?;
    let idx: Vec<usize> = (0..triples.len()).collect();
    Ok(first_failure(&idx, |&k| {
        let (lhs, rhs) = determinant_identity_sides(a, r, &triples[k], 1);
        compare("determinant-lemma", || vec![ArgGroup::new("triple", &[k])], lhs, rhs)
    }))
}

/// As [`check_determinant_lemma`] with the last term doubled, which is what a
/// Reynolds operator actually satisfies.
pub fn check_determinant_identity<S: Scalar>(a: &NAryAlgebra<S>, r: &Matrix<S>, triples: &[[Column<S>; 3]]) -> Result<Verdict<S>> {
    require_product(a)?;
    a.require_operator(r, "Reynolds operator")?;
    let idx: Vec<usize> = (0..triples.len()).collect();
    Ok(first_failure(&idx, |&k| {
        let (lhs, rhs) = determinant_identity_sides(a, r, &triples[k], 2);
        compare("determinant-identity", || vec![ArgGroup::new("triple", &[k])], lhs, rhs)
    }))
}

/// Data for one of the determinant brackets.
#[derive(Clone, Debug)]
pub enum DetConstruction<S: Scalar = crate::scalar::Rational> {
    FD { f: Vec<S>, d: Matrix<S> },
    DD { d1: Matrix<S>, d2: Matrix<S> },
    DDD { d1: Matrix<S>, d2: Matrix<S>, d3: Matrix<S> },
}

impl<S: Scalar> DetConstruction<S> {
    pub fn name(&self) -> &'static str {
        match self {
            DetConstruction::FD { .. } => "fd",
            DetConstruction::DD { .. } => "dd",
            DetConstruction::DDD { .. } => "ddd",
        }
    }

    pub fn build(&self, a: &NAryAlgebra<S>) -> Result<NAryAlgebra<S>> {
        match self {
            DetConstruction::FD { f, d } => three_lie_from_f_d(a, f, d),
            DetConstruction::DD { d1, d2 } => three_lie_from_two_derivations(a, d1, d2),
            DetConstruction::DDD { d1, d2, d3 } => three_lie_from_three_derivations(a, d1, d2, d3),
        }
    }

    fn derivations(&self) -> Vec<&Matrix<S>> {
        match self {
            DetConstruction::FD { d, .. } => vec![d],
            DetConstruction::DD { d1, d2 } => vec![d1, d2],
            DetConstruction::DDD { d1, d2, d3 } => vec![d1, d2, d3],
        }
    }
}

#[derive(Clone, Debug)]
pub struct DetReynoldsReport<S: Scalar = crate::scalar::Rational> {
    /// The determinant criterion, for the `f, D` bracket only.
    pub criterion: Option<Verdict<S>>,
    /// The Reynolds identity checked directly on the 3-Lie algebra.
    pub direct: Verdict<S>,
}

impl<S: Scalar> DetReynoldsReport<S> {
    pub fn is_pass(&self) -> bool {
        self.direct.is_pass() && self.criterion.as_ref().is_none_or(Verdict::is_pass)
    }
}

/// `|f(x) f(y) f(z); D(Rx) D(Ry) D(Rz); Rx Ry Rz| = 0` on basis triples.
pub fn f_d_criterion<S: Scalar>(a: &NAryAlgebra<S>, r: &Matrix<S>, f: &[S], dmat: &Matrix<S>) -> Result<Verdict<S>> {
    require_product(a)?;
    let rc = columns(r);
    let drc = columns(&dmat.mul(r));
    let tuples = increasing_tuples(a.dim(), 3);
    Ok(first_failure(&tuples, |t| {
        let v = f_d_det(
            a,
            [&f[t[0]], &f[t[1]], &f[t[2]]],
            [&drc[t[0]], &drc[t[1]], &drc[t[2]]],
            [&rc[t[0]], &rc[t[1]], &rc[t[2]]],
        );
        compare("fd-criterion", || vec![ArgGroup::new("x", t)], v, vector::zeros(a.dim()))
    }))
}

/// Whether an associative Reynolds operator commuting with the derivations is
/// a Reynolds operator on the determinant 3-Lie algebra.
pub fn check_reynolds_on_det_3lie<S: Scalar>(
    a: &NAryAlgebra<S>,
    r: &Matrix<S>,
    construction: &DetConstruction<S>,
) -> Result<DetReynoldsReport<S>> {
    require_pass(check_assoc_reynolds(a, r)?, "assoc-reynolds")?;
    for (i, d) in construction.derivations().into_iter().enumerate() {
        a.require_operator(d, "derivation")?;
        require_commuting(r, d, &format!("R D{} = D{} R", i + 1, i + 1))?;
    }
    let bracket = construction.build(a)?;
    let criterion = match construction {
        DetConstruction::FD { f, d } => Some(f_d_criterion(a, r, f, d)?),
        _ => None,
    };
    Ok(DetReynoldsReport {
        criterion,
        direct: check_reynolds(&bracket, r)?,
    })
}
