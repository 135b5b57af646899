use nlie_core::algebra::{check_filippov, columns};
use nlie_core::cohomology::{delta_r, reynolds_differential, Cochain, CochainShape};
use nlie_core::corpus::{self, DEFAULT_SEED};
use nlie_core::deformation::{is_infinitesimal_deformation, is_trivial_deformation, Triviality};
use nlie_core::nijenhuis::{deformed_algebra, nijenhuis_representation};
use nlie_core::ns::{check_ns, ns_from_nijenhuis, ns_from_reynolds, subadjacent};
use nlie_core::representation::check_representation;
use nlie_core::reynolds::{
    check_reynolds, derivation_to_reynolds, induced_bracket, reynolds_from_nilpotent_derivation, reynolds_to_derivation,
};
use nlie_core::wedge::increasing_tuples;
use nlie_core::scalar::int;
use nlie_core::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn induced_brackets_of_the_reynolds_corpus() {
    for inst in corpus::reynolds_instances(DEFAULT_SEED).unwrap() {
        let (a, r) = (&inst.algebra, &inst.operator);
        let ind = induced_bracket(a, r).unwrap();
        assert!(check_filippov(&ind).unwrap().is_pass(), "{}", inst.name);
        assert!(check_reynolds(&ind, r).unwrap().is_pass(), "{}", inst.name);
        let rc = columns(r);
        for t in increasing_tuples(a.dim(), a.arity()) {
            let args: Vec<&[Rational]> = t.iter().map(|&i| rc[i].as_slice()).collect();
            assert_eq!(r.apply(&ind.bracket_basis(&t)), a.eval(&args), "{}", inst.name);
        }
    }
}

#[test]
fn derivation_correspondence() {
    for inst in corpus::nilpotent_derivations(DEFAULT_SEED).unwrap() {
        let (a, d) = (&inst.algebra, &inst.operator);
        let series = reynolds_from_nilpotent_derivation(a, d).unwrap();
        assert_eq!(series, derivation_to_reynolds(a, d).unwrap(), "{}", inst.name);
        assert!(check_reynolds(a, &series).unwrap().is_pass());
        assert_eq!(&reynolds_to_derivation(a, &series).unwrap(), d);
    }
}

#[test]
fn ns_structures_from_operators() {
    for inst in corpus::reynolds_instances(DEFAULT_SEED).unwrap() {
        let ns = ns_from_reynolds(&inst.algebra, &inst.operator).unwrap();
        assert!(check_ns(&ns).unwrap().is_pass(), "{}", inst.name);
        let (angle, _) = subadjacent(&ns).unwrap();
        assert!(angle.same_table(&induced_bracket(&inst.algebra, &inst.operator).unwrap()));
    }
    for inst in corpus::nijenhuis_instances(DEFAULT_SEED).unwrap() {
        let ns = ns_from_nijenhuis(&inst.algebra, &inst.operator).unwrap();
        assert!(check_ns(&ns).unwrap().is_pass(), "{}", inst.name);
        let (angle, _) = subadjacent(&ns).unwrap();
        let gn = deformed_algebra(&inst.algebra, &inst.operator).unwrap();
        assert!(angle.same_table(&gn));
        let rho = nijenhuis_representation(&inst.algebra, &inst.operator).unwrap();
        assert!(check_representation(&gn, &rho).unwrap().is_pass());
    }
}

#[test]
fn coboundaries_are_trivial_deformations() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for inst in corpus::reynolds_instances(DEFAULT_SEED).unwrap().iter().step_by(4) {
        let (a, r) = (&inst.algebra, &inst.operator);
        let shape = CochainShape::new(a.dim(), a.arity(), a.dim());
        let x = Cochain::new(shape.clone(), 0, (0..shape.dim(0).unwrap()).map(|_| int(rng.gen_range(-2..=2))).collect())
            .unwrap();
        let dx = delta_r(a, r, &x).unwrap();
        assert!(reynolds_differential(a, r, &dx).unwrap().is_zero(), "{}", inst.name);
        let dir = dx.to_operator().unwrap();
        assert!(is_infinitesimal_deformation(a, r, &dir).unwrap().is_pass(), "{}", inst.name);
        assert!(matches!(is_trivial_deformation(a, r, &dir).unwrap(), Triviality::Trivial(_)), "{}", inst.name);
    }
}
