//! NS-n-Lie algebras: a bracket `{x_1, ..., x_{n-1}, x_n}` skew in its first
//! `n-1` slots together with an alternating n-bracket `[·]`.

use crate::algebra::{columns, NAryAlgebra, Symmetry};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::nijenhuis::require_nijenhuis;
use crate::representation::RepresentationTable;
use crate::reynolds::{bracket_of_images, require_reynolds};
use crate::scalar::Scalar;
use crate::vector;
use crate::verdict::{compare, first_failure, ArgGroup, Verdict};
use crate::wedge::increasing_tuples;

/// The curly bracket is stored as the operators `L(e_I) = {e_I, ·}`.
#[derive(Clone, Debug, PartialEq)]
pub struct NSAlgebra<S: Scalar = crate::scalar::Rational> {
    curly: RepresentationTable<S>,
    square: NAryAlgebra<S>,
}

impl<S: Scalar> NSAlgebra<S> {
    pub fn new(curly: RepresentationTable<S>, square: NAryAlgebra<S>) -> Result<Self> {
        square.require_alternating("the square bracket of an NS algebra")?;
        if curly.arity() != square.arity()
            || curly.algebra_dim() != square.dim()
            || curly.module_dim() != square.dim()
        {
            return Err(Error::Input("curly and square brackets differ in shape".into()));
        }
        Ok(NSAlgebra { curly, square })
    }

    pub fn arity(&self) -> usize {
        self.square.arity()
    }

    pub fn dim(&self) -> usize {
        self.square.dim()
    }

    pub fn curly(&self) -> &RepresentationTable<S> {
        &self.curly
    }

    pub fn square(&self) -> &NAryAlgebra<S> {
        &self.square
    }

    /// `{x_1, ..., x_n}` on arbitrary vectors.
    pub fn curly_eval(&self, args: &[&[S]]) -> Vec<S> {
        let n = args.len();
        self.curly.act(&args[..n - 1]).apply(args[n - 1])
    }

    /// `⟪·⟫` as an alternating algebra.
    pub fn angle_algebra(&self) -> NAryAlgebra<S> {
        let n = self.arity();
        let mut out = NAryAlgebra::from_basis_fn(n, self.dim(), Symmetry::Alternating, |t| {
            let mut acc = self.square.bracket_basis(t);
            for i in 0..n {
                let rest: Vec<usize> = t.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &x)| x).collect();
                if let Some((sign, m)) = self.curly.act_basis(&rest) {
                    let v = m.column(t[i]);
                    if (sign < 0) != ((n - 1 - i) % 2 == 1) {
                        vector::sub_assign(&mut acc, &v);
                    } else {
                        vector::add_assign(&mut acc, &v);
                    }
                }
            }
            acc
        })
        .expect("shape is valid");
        out.set_basis_names(self.square.basis_names().to_vec()).expect("same dimension");
        out
    }

    /// `⟪y_1, ..., y_n⟫ = sum_i (-1)^{n-i} {y_1..^i..y_n, y_i} + [y_1, ..., y_n]`.
    pub fn angle_bracket(&self, args: &[Vec<S>]) -> Result<Vec<S>> {
        self.angle_algebra().bracket(args)
    }
}

fn without<T: Clone>(v: &[T], i: usize) -> Vec<T> {
    v.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, x)| x.clone()).collect()
}

fn accumulate<S: Scalar>(acc: &mut [S], v: &[S], odd: bool) {
    if odd {
        vector::sub_assign(acc, v);
    } else {
        vector::add_assign(acc, v);
    }
}

/// The three NS identities on basis elements.
pub fn check_ns<S: Scalar>(s: &NSAlgebra<S>) -> Result<Verdict<S>> {
    let n = s.arity();
    let d = s.dim();
    let angle = s.angle_algebra();
    let units: Vec<Vec<S>> = (0..d).map(|i| vector::unit(d, i)).collect();
    let u = |idx: &[usize]| -> Vec<&[S]> { idx.iter().map(|&i| units[i].as_slice()).collect() };
    let lower = increasing_tuples(d, n - 1);
    let full = increasing_tuples(d, n);

    // {x, {y, y_n}} = {y, {x, y_n}} + sum_j {y_1..⟪x, y_j⟫..y_{n-1}, y_n}
    let cases1: Vec<(usize, usize, usize)> = (0..lower.len())
        .flat_map(|a| (0..lower.len()).flat_map(move |b| (0..d).map(move |k| (a, b, k))))
        .collect();
    let first = first_failure(&cases1, |&(a, b, k)| {
        let (x, y) = (&lower[a], &lower[b]);
        let lx = s.curly.act(&u(x));
        let ly = s.curly.act(&u(y));
        let lhs = lx.apply(&ly.column(k));
        let mut rhs = ly.apply(&lx.column(k));
        for j in 0..n - 1 {
            let mut xt = x.clone();
            xt.push(y[j]);
            let v = angle.bracket_basis(&xt);
            let mut args = u(y);
            args[j] = &v;
            vector::add_assign(&mut rhs, &s.curly.act(&args).column(k));
        }
        compare(
            "ns-1",
            || {
                let mut yy = y.clone();
                yy.push(k);
                vec![ArgGroup::new("x", x), ArgGroup::new("y", &yy)]
            },
            lhs,
            rhs,
        )
    });
    if !first.is_pass() {
        return Ok(first);
    }

    // {⟪y⟫, x_1..x_{n-1}} = sum_j (-1)^{n-j} {y^j, {y_j, x_1..x_{n-1}}}
    let heads = increasing_tuples(d, n - 2);
    let cases2: Vec<(usize, usize, usize)> = (0..full.len())
        .flat_map(|a| (0..heads.len()).flat_map(move |b| (0..d).map(move |k| (a, b, k))))
        .collect();
    let second = first_failure(&cases2, |&(a, b, k)| {
        let (y, x) = (&full[a], &heads[b]);
        let bracket = angle.bracket_basis(y);
        let mut args: Vec<&[S]> = vec![&bracket];
        args.extend(u(x));
        let lhs = s.curly.act(&args).column(k);
        let mut rhs = vector::zeros(d);
        for j in 0..n {
            let mut inner_idx = vec![y[j]];
            inner_idx.extend(x);
            let inner = s.curly.act(&u(&inner_idx)).column(k);
            let outer = s.curly.act(&u(&without(y, j))).apply(&inner);
            accumulate(&mut rhs, &outer, (n - 1 - j) % 2 == 1);
        }
        compare(
            "ns-2",
            || {
                let mut xx = x.clone();
                xx.push(k);
                vec![ArgGroup::new("y", y), ArgGroup::new("x", &xx)]
            },
            lhs,
            rhs,
        )
    });
    if !second.is_pass() {
        return Ok(second);
    }

    // [x, ⟪y⟫] = sum_j (-1)^{n-j} ([y^j, ⟪x, y_j⟫] + {y^j, [x, y_j]}) - {x, [y]}
    let cases3: Vec<(usize, usize)> = (0..lower.len())
        .flat_map(|a| (0..full.len()).map(move |b| (a, b)))
        .collect();
    Ok(first_failure(&cases3, |&(a, b)| {
        let (x, y) = (&lower[a], &full[b]);
        let ay = angle.bracket_basis(y);
        let mut args = u(x);
        args.push(&ay);
        let lhs = s.square.eval(&args);
        let mut rhs = vector::neg(&s.curly.act(&u(x)).apply(&s.square.bracket_basis(y)));
        for j in 0..n {
            let mut xt = x.clone();
            xt.push(y[j]);
            let rest = without(y, j);
            let ang = angle.bracket_basis(&xt);
            let mut args = u(&rest);
            args.push(&ang);
            let mut term = s.square.eval(&args);
            vector::add_assign(&mut term, &s.curly.act(&u(&rest)).apply(&s.square.bracket_basis(&xt)));
            accumulate(&mut rhs, &term, (n - 1 - j) % 2 == 1);
        }
        compare("ns-3", || vec![ArgGroup::new("x", x), ArgGroup::new("y", y)], lhs, rhs)
    }))
}

/// The sub-adjacent algebra `(A, ⟪·⟫)` and its representation `L`.
pub fn subadjacent<S: Scalar>(s: &NSAlgebra<S>) -> Result<(NAryAlgebra<S>, RepresentationTable<S>)> {
    if let Verdict::Fail(c) = check_ns(s)? {
        return Err(Error::Precondition {
            check: "ns".into(),
            detail: c.to_string(),
        });
    }
    Ok((s.angle_algebra(), s.curly.clone()))
}

/// `{x} = [T x_1, ..., T x_{n-1}, x_n]` as operators.
fn curly_from<S: Scalar>(a: &NAryAlgebra<S>, op: &Matrix<S>) -> Result<RepresentationTable<S>> {
    let cols = columns(op);
    let n = a.arity();
    RepresentationTable::from_fn(n, a.dim(), a.dim(), |t| {
        let images: Vec<Vec<S>> = (0..a.dim())
            .map(|x| {
                let mut tt = t.to_vec();
                tt.push(x);
                bracket_of_images(a, &cols, &tt, &[n - 1])
            })
            .collect();
        Matrix::from_columns(&images).expect("square by construction")
    })
}

fn with_names<S: Scalar>(mut alg: NAryAlgebra<S>, like: &NAryAlgebra<S>) -> NAryAlgebra<S> {
    alg.set_basis_names(like.basis_names().to_vec()).expect("same dimension");
    alg
}

/// `{x} = [Rx_1..Rx_{n-1}, x_n]`, `[x] = -[Rx_1..Rx_n]`.
pub fn ns_from_reynolds<S: Scalar>(a: &NAryAlgebra<S>, r: &Matrix<S>) -> Result<NSAlgebra<S>> {
    require_reynolds(a, r)?;
    let cols = columns(r);
    let square = NAryAlgebra::from_basis_fn(a.arity(), a.dim(), Symmetry::Alternating, |t| {
        vector::neg(&bracket_of_images(a, &cols, t, &[]))
    })?;
    NSAlgebra::new(curly_from(a, r)?, with_names(square, a))
}

/// `{x} = [Nx_1..Nx_{n-1}, x_n]`, `[x] = -N [x]^{n-2}_N`.
pub fn ns_from_nijenhuis<S: Scalar>(a: &NAryAlgebra<S>, n_op: &Matrix<S>) -> Result<NSAlgebra<S>> {
    let ladder = require_nijenhuis(a, n_op)?;
    let level = ladder.level(a.arity() - 2);
    let square = NAryAlgebra::from_basis_fn(a.arity(), a.dim(), Symmetry::Alternating, |t| {
        vector::neg(&n_op.apply(&level.bracket_basis(t)))
    })?;
    NSAlgebra::new(curly_from(a, n_op)?, with_names(square, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_filippov;
    use crate::catalog;
    use crate::nijenhuis::{check_nijenhuis, deformed_algebra};
    use crate::representation::check_representation;
    use crate::reynolds::{check_reynolds, derivation_to_reynolds, induced_bracket};
    use crate::scalar::{int, rat, Rational};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn zero_curly(a: &NAryAlgebra) -> RepresentationTable {
        RepresentationTable::zero(a.arity(), a.dim(), a.dim()).unwrap()
    }

    #[test]
    fn zero_curly_reduces_to_the_square_bracket() {
        for a in [catalog::sl2(), catalog::simple_n_lie(3), catalog::solvable_3lie()] {
            let s = NSAlgebra::new(zero_curly(&a), a.clone()).unwrap();
            assert!(s.angle_algebra().same_table(&a));
            assert!(check_ns(&s).unwrap().is_pass());
            let (sub, l) = subadjacent(&s).unwrap();
            assert!(sub.same_table(&a));
            assert!((0..l.wedge_basis().len()).all(|p| l.get(p).is_zero()));
        }
        // a non-Lie square bracket breaks the third identity
        let s = NSAlgebra::new(zero_curly(&catalog::non_lie_example()), catalog::non_lie_example()).unwrap();
        assert_eq!(check_ns(&s).unwrap().counterexample().unwrap().identity, "ns-3");
    }

    #[test]
    fn binary_angle_without_square() {
        let g = catalog::worked_example();
        let r = catalog::instance_one();
        let s = ns_from_reynolds(&g, &r).unwrap();
        let pre = NSAlgebra::new(s.curly().clone(), NAryAlgebra::abelian(2, 3).unwrap()).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                let (ex, ey) = (vector::unit(3, x), vector::unit(3, y));
                let expected = vector::sub(&pre.curly_eval(&[&ex, &ey]), &pre.curly_eval(&[&ey, &ex]));
                assert_eq!(pre.angle_bracket(&[ex, ey]).unwrap(), expected);
            }
        }
    }

    #[test]
    fn worked_instance_values() {
        let g = catalog::worked_example();
        let s = ns_from_reynolds(&g, &catalog::instance_one()).unwrap();
        let (e1, e2) = (vector::unit::<Rational>(3, 0), vector::unit::<Rational>(3, 1));
        assert_eq!(s.curly_eval(&[&e1, &e2]), e2);
        assert!(vector::is_zero(&s.curly_eval(&[&e2, &e1])));
        assert!(vector::is_zero(&s.square().bracket_basis(&[0, 1])));
        assert!(check_ns(&s).unwrap().is_pass());
    }

    fn reynolds_consequences(a: &NAryAlgebra, r: &Matrix) {
        let s = ns_from_reynolds(a, r).unwrap();
        assert!(check_ns(&s).unwrap().is_pass());
        let (sub, l) = subadjacent(&s).unwrap();
        assert!(sub.same_table(&induced_bracket(a, r).unwrap()));
        assert!(check_filippov(&sub).unwrap().is_pass());
        assert!(check_representation(&sub, &l).unwrap().is_pass());
    }

    #[test]
    fn from_reynolds() {
        let g = catalog::worked_example();
        let zero = ns_from_reynolds(&g, &Matrix::zeros(3, 3)).unwrap();
        assert!(zero.square().is_abelian());
        assert!((0..zero.curly().wedge_basis().len()).all(|p| zero.curly().get(p).is_zero()));
        for r in [catalog::instance_one(), catalog::instance_two()] {
            reynolds_consequences(&g, &r);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..6 {
            let p = [(); 5].map(|_| int(rng.gen_range(-3..=3)));
            let [a11, a21, a23, a31, a33] = p;
            let a21 = if a21 == int(0) { int(2) } else { a21 };
            let r = catalog::family_one(a11, a21, a23, a31, a33).unwrap();
            reynolds_consequences(&g, &r);
        }
        let a = catalog::nilpotent_3lie();
        let mut d = Matrix::zeros(4, 4);
        d.set(0, 3, int(1));
        reynolds_consequences(&a, &derivation_to_reynolds(&a, &d).unwrap());
        let b = catalog::solvable_3lie();
        let dd = crate::matrix::int_matrix(&[&[0, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, -1, 0], &[0, 0, 0, 2]]);
        let r = derivation_to_reynolds(&b, &dd).unwrap();
        assert!(check_reynolds(&b, &r).unwrap().is_pass());
        reynolds_consequences(&b, &r);
    }

    #[test]
    fn from_nijenhuis() {
        for n in 2..=4 {
            let a = catalog::simple_n_lie(n);
            for lambda in [int(0), int(1), int(-1), rat(1, 2), int(2)] {
                let op = Matrix::scalar(a.dim(), lambda.clone());
                let s = ns_from_nijenhuis(&a, &op).unwrap();
                assert!(check_ns(&s).unwrap().is_pass());
                let mut pow = Rational::from_int(1);
                for _ in 0..n - 1 {
                    pow *= &lambda;
                }
                let t: Vec<usize> = (0..n).collect();
                let base = a.bracket_basis(&t);
                let scale = -pow.clone() * Rational::from_int((n - 1) as i64);
                assert_eq!(s.square().bracket_basis(&t), vector::scale(&scale, &base));
                let (sub, _) = subadjacent(&s).unwrap();
                assert_eq!(sub.bracket_basis(&t), vector::scale(&pow, &base));
                assert!(sub.same_table(&deformed_algebra(&a, &op).unwrap()));
            }
        }
    }

    #[test]
    fn from_found_nijenhuis_operators() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let mut found = 0;
        for a in [catalog::worked_example(), catalog::sl2(), catalog::nilpotent_3lie(), catalog::solvable_3lie()] {
            let d = a.dim();
            for _ in 0..300 {
                let op = Matrix::from_fn(d, d, |_, _| if rng.gen_bool(0.3) { int(rng.gen_range(-1..=1)) } else { int(0) });
                if !check_nijenhuis(&a, &op).unwrap().is_pass() {
                    continue;
                }
                found += 1;
                let s = ns_from_nijenhuis(&a, &op).unwrap();
                assert!(check_ns(&s).unwrap().is_pass());
                let (sub, l) = subadjacent(&s).unwrap();
                assert!(sub.same_table(&deformed_algebra(&a, &op).unwrap()));
                assert!(check_representation(&sub, &l).unwrap().is_pass());
            }
        }
        assert!(found > 10);
    }

    #[test]
    fn random_tables_fail() {
        let mut rng = ChaCha8Rng::seed_from_u64(30);
        let a = catalog::simple_n_lie(3);
        let mut curly = zero_curly(&a);
        let tuples = increasing_tuples(4, 2);
        for t in &tuples {
            let m = Matrix::from_fn(4, 4, |_, _| int(rng.gen_range(-2..=2)));
            curly.set(t, m).unwrap();
        }
        let s = NSAlgebra::new(curly, a).unwrap();
        let v = check_ns(&s).unwrap();
        assert!(!v.is_pass());
        assert!(subadjacent(&s).is_err());
    }
}
