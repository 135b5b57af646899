//! Seeded families of small algebras with verified operators, used by the
//! test suites and the `corpus` CLI command.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{columns, derivation_space, derivation_space_with, NAryAlgebra, Symmetry};
use crate::catalog;
use crate::constructions::extend_by_functional;
use crate::error::Result;
use crate::linalg::inverse;
use crate::matrix::Matrix;
use crate::nijenhuis::check_nijenhuis;
use crate::reynolds::{check_reynolds, derivation_to_reynolds, is_nilpotent, reynolds_from_nilpotent_derivation};
use crate::scalar::{int, Rational, Scalar};

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub algebra: NAryAlgebra,
    pub operator: Matrix,
}

/// Named n-Lie algebras of dimension at most 4 and arity 2 or 3.
pub fn base_algebras() -> Vec<(String, NAryAlgebra)> {
    vec![
        ("worked".into(), catalog::worked_example()),
        ("sl2".into(), catalog::sl2()),
        ("heisenberg".into(), catalog::heisenberg()),
        ("solvable4".into(), catalog::solvable4()),
        ("abelian-2-3".into(), NAryAlgebra::abelian(2, 3).unwrap()),
        ("simple-3".into(), catalog::simple_n_lie(3)),
        ("nilpotent-3".into(), catalog::nilpotent_3lie()),
        ("solvable-3".into(), catalog::solvable_3lie()),
        ("abelian-3-3".into(), NAryAlgebra::abelian(3, 3).unwrap()),
    ]
}

/// A product of random integer shears: unimodular, so its inverse is integral.
pub fn random_unimodular(d: usize, rng: &mut impl Rng) -> Matrix {
    let mut p = Matrix::identity(d);
    if d < 2 {
        return p;
    }
    for _ in 0..2 * d {
        let i = rng.gen_range(0..d);
        let j = (i + rng.gen_range(1..d)) % d;
        let mut e = Matrix::identity(d);
        e.set(i, j, int(rng.gen_range(-1..=1)));
        p = p.mul(&e);
    }
    p
}

/// The bracket `P^{-1}[P x_1, ..., P x_n]`, isomorphic to the input via `P`.
pub fn conjugate(a: &NAryAlgebra, p: &Matrix) -> Result<NAryAlgebra> {
    a.require_operator(p, "change of basis")?;
    let inv = inverse(p, "change of basis")?;
    let pc = columns(p);
    NAryAlgebra::from_basis_fn(a.arity(), a.dim(), a.symmetry(), |t| {
        let args: Vec<&[Rational]> = t.iter().map(|&i| pc[i].as_slice()).collect();
        inv.apply(&a.eval(&args))
    })
}

/// `P^{-1} M P`, the operator matching [`conjugate`].
pub fn conjugate_operator(m: &Matrix, p: &Matrix) -> Result<Matrix> {
    Ok(inverse(p, "change of basis")?.mul(m).mul(p))
}

fn combination(basis: &[Matrix], d: usize, rng: &mut impl Rng) -> Matrix {
    basis.iter().fold(Matrix::zeros(d, d), |acc, b| acc.add(&b.scale(&int(rng.gen_range(-2..=2)))))
}

/// Each base algebra together with `copies` random conjugates.
pub fn algebra_family(seed: u64, copies: usize) -> Result<Vec<(String, NAryAlgebra)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (name, a) in base_algebras() {
        for c in 0..=copies {
            if c == 0 {
                out.push((name.clone(), a.clone()));
            } else {
                let p = random_unimodular(a.dim(), &mut rng);
                out.push((format!("{name}~{c}"), conjugate(&a, &p)?));
            }
        }
    }
    Ok(out)
}

/// Nilpotent derivations: combinations of strictly triangular derivations,
/// transported along random changes of basis.
pub fn nilpotent_derivations(seed: u64) -> Result<Vec<Instance>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x11);
    let mut out = Vec::new();
    for (name, a) in base_algebras() {
        let d = a.dim();
        for (tag, lower) in [("lower", true), ("upper", false)] {
            let basis = derivation_space_with(&a, |i, j| if lower { i > j } else { i < j })?;
            if basis.is_empty() {
                continue;
            }
            for k in 0..3 {
                let dmat = combination(&basis, d, &mut rng);
                if dmat.is_zero() {
                    continue;
                }
                let p = random_unimodular(d, &mut rng);
                let conj = conjugate(&a, &p)?;
                let dc = conjugate_operator(&dmat, &p)?;
                debug_assert!(is_nilpotent(&dc));
                out.push(Instance {
                    name: format!("{name}/{tag}/{k}"),
                    algebra: conj,
                    operator: dc,
                });
            }
        }
    }
    Ok(out)
}

/// Verified Reynolds operators on small algebras.
pub fn reynolds_instances(seed: u64) -> Result<Vec<Instance>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x22);
    let mut candidates: Vec<Instance> = Vec::new();
    let g = catalog::worked_example();
    let gf = extend_by_functional(&g, &catalog::worked_functional())?;
    for (k, r) in [catalog::instance_one(), catalog::instance_two()].into_iter().enumerate() {
        candidates.push(Instance { name: format!("worked/instance-{}", k + 1), algebra: g.clone(), operator: r.clone() });
        candidates.push(Instance { name: format!("worked-gf/instance-{}", k + 1), algebra: gf.clone(), operator: r });
    }
    for (name, a) in algebra_family(seed, 1)? {
        let d = a.dim();
        candidates.push(Instance { name: format!("{name}/zero"), algebra: a.clone(), operator: Matrix::zeros(d, d) });
        if a.is_abelian() {
            let r = Matrix::from_fn(d, d, |_, _| int(rng.gen_range(-2..=2)));
            candidates.push(Instance { name: format!("{name}/any"), algebra: a.clone(), operator: r });
            continue;
        }
        let ders = derivation_space(&a)?;
        for k in 0..2 {
            let dmat = combination(&ders, d, &mut rng);
            if let Ok(r) = derivation_to_reynolds(&a, &dmat) {
                candidates.push(Instance { name: format!("{name}/derivation-{k}"), algebra: a.clone(), operator: r });
            }
        }
    }
    for inst in nilpotent_derivations(seed)? {
        let r = reynolds_from_nilpotent_derivation(&inst.algebra, &inst.operator)?;
        candidates.push(Instance { name: format!("{}/series", inst.name), algebra: inst.algebra, operator: r });
    }
    let mut out = Vec::new();
    for c in candidates {
        if check_reynolds(&c.algebra, &c.operator)?.is_pass() {
            out.push(c);
        }
    }
    Ok(out)
}

/// Nijenhuis operators found by a seeded sparse search, plus scalar ones.
pub fn nijenhuis_instances(seed: u64) -> Result<Vec<Instance>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x33);
    let mut out = Vec::new();
    for (name, a) in base_algebras() {
        if a.symmetry() != Symmetry::Alternating {
            continue;
        }
        let d = a.dim();
        out.push(Instance { name: format!("{name}/scalar"), algebra: a.clone(), operator: Matrix::scalar(d, int(2)) });
        let mut found = 0;
        for _ in 0..300 {
            if found == 3 {
                break;
            }
            let n = Matrix::from_fn(d, d, |_, _| if rng.gen_bool(0.25) { int(rng.gen_range(-1..=1)) } else { int(0) });
            if n.is_zero() || n == Matrix::identity(d) {
                continue;
            }
            if check_nijenhuis(&a, &n)?.is_pass() {
                found += 1;
                out.push(Instance { name: format!("{name}/search-{found}"), algebra: a.clone(), operator: n });
            }
        }
    }
    Ok(out)
}

/// Random integer matrix with entries in `-bound..=bound`.
pub fn random_matrix(d: usize, bound: i64, rng: &mut impl Rng) -> Matrix {
    Matrix::from_fn(d, d, |_, _| Rational::from_int(rng.gen_range(-bound..=bound)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_filippov, is_derivation};

    #[test]
    fn conjugates_are_lie() {
        for (name, a) in algebra_family(1, 2).unwrap() {
            assert!(check_filippov(&a).unwrap().is_pass(), "{name}");
        }
    }

    #[test]
    fn conjugation_transports_derivations() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = catalog::solvable4();
        let d = derivation_space(&a).unwrap()[0].clone();
        let p = random_unimodular(4, &mut rng);
        let b = conjugate(&a, &p).unwrap();
        assert!(is_derivation(&b, &conjugate_operator(&d, &p).unwrap()).unwrap().is_pass());
    }

    #[test]
    fn corpus_sizes_and_determinism() {
        let nil = nilpotent_derivations(DEFAULT_SEED).unwrap();
        assert!(nil.len() >= 20, "{}", nil.len());
        assert!(nil.iter().all(|i| i.algebra.dim() <= 4 && is_nilpotent(&i.operator)));
        assert!(nil.iter().all(|i| is_derivation(&i.algebra, &i.operator).unwrap().is_pass()));
        let r1 = reynolds_instances(DEFAULT_SEED).unwrap();
        let r2 = reynolds_instances(DEFAULT_SEED).unwrap();
        assert!(r1.len() >= 40, "{}", r1.len());
        assert!(r1.iter().zip(&r2).all(|(x, y)| x.name == y.name && x.operator == y.operator));
        let n = nijenhuis_instances(DEFAULT_SEED).unwrap();
        assert!(n.len() >= 15, "{}", n.len());
    }
}
