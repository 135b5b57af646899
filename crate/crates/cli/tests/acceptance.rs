//! End-to-end acceptance checks. Each test writes one `criterion N: PASS|FAIL`
//! line to stderr (uncaptured) and then asserts the same outcome.

use std::io::Write;
use std::time::{Duration, Instant};

use nlie_cli::doc::{document_from_json, to_text, Document};
use nlie_cli::run_command;
use nlie_core::algebra::{check_filippov, columns};
use nlie_core::assoc::{
    check_determinant_identity, check_determinant_lemma, check_reynolds_on_det_3lie, Column, DetConstruction,
};
use nlie_core::catalog::{self, TruncatedPolynomials};
use nlie_core::cohomology::{
    coboundary, delta_r, reynolds_complex_dimensions, reynolds_differential, Cochain, CochainShape, DEFAULT_SIZE_GUARD,
};
use nlie_core::constructions::extend_by_functional;
use nlie_core::corpus::{self, Instance, DEFAULT_SEED};
use nlie_core::deformation::{dual_operator, is_infinitesimal_deformation, is_trivial_deformation, Triviality};
use nlie_core::nijenhuis::{check_nijenhuis, deformed_algebra, deformed_bracket_ladder};
use nlie_core::ns::{check_ns, ns_from_nijenhuis, ns_from_reynolds, subadjacent};
use nlie_core::representation::adjoint;
use nlie_core::reynolds::{
    check_reynolds, derivation_to_reynolds, induced_bracket, reynolds_from_nilpotent_derivation, reynolds_to_derivation,
};
use nlie_core::scalar::{int, rat};
use nlie_core::wedge::increasing_tuples;
use nlie_core::{vector, Dual, Matrix, NAryAlgebra, Rational};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn verdict_line(n: u32, ok: bool, elapsed: Duration, limit: Duration, detail: &str) -> bool {
    let fast = elapsed < limit;
    let pass = ok && fast;
    let status = if pass { "PASS" } else { "FAIL" };
    let timing = format!("{:.2}s of {:.0}s", elapsed.as_secs_f64(), limit.as_secs_f64());
    let why = detail;
    let mut err = std::io::stderr().lock();
    writeln!(err, "criterion {n}: {status} ({timing}){}{why}", if why.is_empty() { "" } else { ": " }).unwrap();
    pass
}

fn nlie(args: &[&str]) -> nlie_cli::Outcome {
    run_command(std::iter::once("nlie").chain(args.iter().copied()))
}

fn write_tmp(dir: &std::path::Path, name: &str, v: &serde_json::Value) -> String {
    let p = dir.join(name);
    std::fs::write(&p, to_text(v)).unwrap();
    p.display().to_string()
}

fn random_cochain(shape: &CochainShape, degree: usize, rng: &mut ChaCha8Rng) -> Cochain {
    let len = shape.dim(degree).unwrap();
    let coeffs = (0..len).map(|_| if rng.gen_bool(0.3) { int(rng.gen_range(-3..=3)) } else { int(0) }).collect();
    Cochain::new(shape.clone(), degree, coeffs).unwrap()
}

#[test]
fn criterion_01_worked_example() {
    let dir = tempfile::tempdir().unwrap();
    let g = "tests/fixtures/g.json";
    let mut ok = true;
    let mut notes = Vec::new();
    let mut slowest = Duration::ZERO;

    let start = Instant::now();
    let out = nlie(&["construct", "gf", "--algebra", g, "--functional", "tests/fixtures/f.json", "--json"]);
    slowest = slowest.max(start.elapsed());
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let Document::Algebra(gf) = document_from_json(&v["artifacts"][0]).unwrap() else { panic!() };
    let entries: Vec<(Vec<usize>, Vec<Rational>)> = gf.entries().map(|(t, v)| (t.to_vec(), v.to_vec())).collect();
    let expected = vec![(vec![0, 1, 2], vec![int(0), int(1), int(0)])];
    if out.code != 0 || entries != expected {
        ok = false;
        notes.push("g_f is not exactly {e1,e2,e3} = e2".to_string());
    }
    let gf_path = write_tmp(dir.path(), "gf.json", &v["artifacts"][0]);
    for (name, r) in [("family-1", "tests/fixtures/R1.json"), ("family-2", "tests/fixtures/R2.json")] {
        for (on, alg) in [("g", g), ("g_f", gf_path.as_str())] {
            let start = Instant::now();
            let out = nlie(&["check", "reynolds", "--algebra", alg, "--operator", r]);
            slowest = slowest.max(start.elapsed());
            if out.code != 0 {
                ok = false;
                notes.push(format!("{name} on {on}: {}", out.stdout.trim()));
            }
        }
    }
    let pass = verdict_line(1, ok, slowest, Duration::from_secs(1), &notes.join("; "));
    assert!(pass);
}

#[test]
fn criterion_02_perturbation_sensitivity() {
    let start = Instant::now();
    let g = catalog::worked_example();
    let gf = extend_by_functional(&g, &catalog::worked_functional()).unwrap();
    let mut survivors = Vec::new();
    let mut total = 0;
    for (name, base) in [("family-1", catalog::instance_one()), ("family-2", catalog::instance_two())] {
        for i in 0..3 {
            for j in 0..3 {
                if base.get(i, j).is_zero() {
                    continue;
                }
                total += 1;
                let mut r = base.clone();
                r.set(i, j, base.get(i, j) + int(1));
                let on_g = check_reynolds(&g, &r).unwrap();
                let on_gf = check_reynolds(&gf, &r).unwrap();
                let concrete = [&on_g, &on_gf].iter().any(|v| v.counterexample().is_some_and(|c| !vector::is_zero(&c.difference())));
                if !concrete {
                    survivors.push(format!("{name} entry ({},{})", i + 1, j + 1));
                }
            }
        }
    }
    let detail = if survivors.is_empty() {
        format!("all {total} perturbations rejected")
    } else {
        format!("{} of {total} perturbations still pass both checks: {}", survivors.len(), survivors.join(", "))
    };
    let pass = verdict_line(2, survivors.is_empty(), start.elapsed(), Duration::from_secs(1), &detail);
    assert!(pass);
}

/// Reynolds instances with `d <= 4`, arity 2 or 3, drawn from several seeds.
fn complex_instances(min: usize) -> Vec<Instance> {
    let mut out = Vec::new();
    let mut seed = DEFAULT_SEED;
    while out.len() < min {
        out.extend(
            corpus::reynolds_instances(seed).unwrap().into_iter().filter(|i| i.algebra.dim() <= 4 && i.algebra.arity() <= 3),
        );
        seed += 1;
    }
    out
}

#[test]
fn criterion_03_square_zero() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let instances = complex_instances(50);
    let mut failures = Vec::new();
    let mut compositions = 0;
    for inst in &instances {
        let (a, r) = (&inst.algebra, &inst.operator);
        let shape = CochainShape::new(a.dim(), a.arity(), a.dim());
        let ad = adjoint(a).unwrap();
        // δ_R then d_R
        let x = random_cochain(&shape, 0, &mut rng);
        let dx = delta_r(a, r, &x).unwrap();
        compositions += 1;
        if !reynolds_differential(a, r, &dx).unwrap().is_zero() {
            failures.push(format!("{}: d_R δ_R", inst.name));
        }
        // the differentials of degree 1..=3 compose to zero
        for m in 1..=2 {
            let f = random_cochain(&shape, m, &mut rng);
            compositions += 2;
            let once = coboundary(a, &ad, &f).unwrap();
            if !coboundary(a, &ad, &once).unwrap().is_zero() {
                failures.push(format!("{}: ∂∂ on C^{m}", inst.name));
            }
            let once = reynolds_differential(a, r, &f).unwrap();
            if !reynolds_differential(a, r, &once).unwrap().is_zero() {
                failures.push(format!("{}: d_R d_R on C^{m}", inst.name));
            }
        }
    }
    let ok = failures.is_empty() && instances.len() >= 50;
    let detail = format!("{} instances, {compositions} compositions; {}", instances.len(), if ok { "all zero".into() } else { failures.join(", ") });
    let pass = verdict_line(3, ok, start.elapsed(), Duration::from_secs(60), &detail);
    assert!(pass);
}

#[test]
fn criterion_04_induced_bracket_suite() {
    let start = Instant::now();
    let instances = corpus::reynolds_instances(DEFAULT_SEED).unwrap();
    let mut failures = Vec::new();
    for inst in &instances {
        let (a, r) = (&inst.algebra, &inst.operator);
        let ind = induced_bracket(a, r).unwrap();
        if !check_filippov(&ind).unwrap().is_pass() {
            failures.push(format!("{}: filippov", inst.name));
        }
        let rc = columns(r);
        let hom = increasing_tuples(a.dim(), a.arity()).iter().all(|t| {
            let args: Vec<&[Rational]> = t.iter().map(|&i| rc[i].as_slice()).collect();
            r.apply(&ind.bracket_basis(t)) == a.eval(&args)
        });
        if !hom {
            failures.push(format!("{}: homomorphism", inst.name));
        }
        if !check_reynolds(&ind, r).unwrap().is_pass() {
            failures.push(format!("{}: reynolds on the induced algebra", inst.name));
        }
    }
    let detail = format!("{} instances; {}", instances.len(), if failures.is_empty() { "all hold".into() } else { failures.join(", ") });
    let pass = verdict_line(4, failures.is_empty(), start.elapsed(), Duration::from_secs(30), &detail);
    assert!(pass);
}

#[test]
fn criterion_05_derivation_correspondence() {
    let start = Instant::now();
    let ders = corpus::nilpotent_derivations(DEFAULT_SEED).unwrap();
    let mut failures = Vec::new();
    for inst in &ders {
        let (a, d) = (&inst.algebra, &inst.operator);
        let series = reynolds_from_nilpotent_derivation(a, d).unwrap();
        if series != derivation_to_reynolds(a, d).unwrap() {
            failures.push(format!("{}: series differs from the inverse", inst.name));
        }
        if !check_reynolds(a, &series).unwrap().is_pass() {
            failures.push(format!("{}: not Reynolds", inst.name));
        }
        if &reynolds_to_derivation(a, &series).unwrap() != d {
            failures.push(format!("{}: round trip", inst.name));
        }
    }
    let small = ders.iter().all(|i| i.algebra.dim() <= 4);
    let ok = failures.is_empty() && ders.len() >= 20 && small;
    let detail = format!("{} nilpotent derivations; {}", ders.len(), if failures.is_empty() { "all exact".into() } else { failures.join(", ") });
    let pass = verdict_line(5, ok, start.elapsed(), Duration::from_secs(10), &detail);
    assert!(pass);
}

/// `[·]^j_N` on explicit vectors by unrolling the recursion.
fn ladder_brute(a: &NAryAlgebra, n_op: &Matrix, j: usize, args: &[Vec<Rational>]) -> Vec<Rational> {
    let n = args.len();
    if j == 0 {
        let refs: Vec<&[Rational]> = args.iter().map(Vec::as_slice).collect();
        return a.eval(&refs);
    }
    let mut acc = vec![Rational::zero(); a.dim()];
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != j {
            continue;
        }
        let moved: Vec<Vec<Rational>> =
            (0..n).map(|k| if mask & (1 << k) != 0 { n_op.apply(&args[k]) } else { args[k].clone() }).collect();
        let refs: Vec<&[Rational]> = moved.iter().map(Vec::as_slice).collect();
        vector::add_assign(&mut acc, &a.eval(&refs));
    }
    vector::sub(&acc, &n_op.apply(&ladder_brute(a, n_op, j - 1, args)))
}

#[test]
fn criterion_06_nijenhuis_suite() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 2..=4 {
        for a in [catalog::simple_n_lie(n), if n == 2 { catalog::solvable4() } else { catalog::solvable_3lie() }] {
            if a.arity() != n {
                continue;
            }
            for lambda in [int(0), int(1), int(-1), int(2), rat(1, 2)] {
                let op = Matrix::scalar(a.dim(), lambda.clone());
                if !check_nijenhuis(&a, &op).unwrap().is_pass() {
                    failures.push(format!("n={n} λ={lambda}: not Nijenhuis"));
                    continue;
                }
                let mut c = int(1);
                for _ in 0..n - 1 {
                    c *= &lambda;
                }
                let gn = deformed_algebra(&a, &op).unwrap();
                let same = increasing_tuples(a.dim(), n).iter().all(|t| gn.bracket_basis(t) == vector::scale(&c, &a.bracket_basis(t)));
                if !same {
                    failures.push(format!("n={n} λ={lambda}: deformed bracket"));
                }
            }
        }
    }
    // random operators against the unrolled recursion, d <= 3 and n = 3
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let three_dim: Vec<NAryAlgebra> = [0usize, 2]
        .iter()
        .map(|&k| {
            let mut a = NAryAlgebra::abelian(3, 3).unwrap();
            a.set(&[0, 1, 2], vector::unit(3, k)).unwrap();
            a
        })
        .chain([NAryAlgebra::abelian(3, 3).unwrap()])
        .collect();
    let mut compared = 0;
    for a in &three_dim {
        for _ in 0..10 {
            let op = Matrix::from_fn(3, 3, |_, _| int(rng.gen_range(-3..=3)));
            let ladder = deformed_bracket_ladder(a, &op).unwrap();
            for t in increasing_tuples(3, 3) {
                let units: Vec<Vec<Rational>> = t.iter().map(|&i| vector::unit(3, i)).collect();
                for j in 0..3 {
                    compared += 1;
                    if ladder.level(j).bracket_basis(&t) != ladder_brute(a, &op, j, &units) {
                        failures.push(format!("ladder level {j}"));
                    }
                }
            }
        }
    }
    let detail = format!("{compared} ladder values compared; {}", if failures.is_empty() { "all exact".into() } else { failures.join(", ") });
    let pass = verdict_line(6, failures.is_empty(), start.elapsed(), Duration::from_secs(30), &detail);
    assert!(pass);
}

#[test]
fn criterion_07_ns_suite() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let reynolds = corpus::reynolds_instances(DEFAULT_SEED).unwrap();
    let nijenhuis = corpus::nijenhuis_instances(DEFAULT_SEED).unwrap();
    for inst in &reynolds {
        let ns = ns_from_reynolds(&inst.algebra, &inst.operator).unwrap();
        if !check_ns(&ns).unwrap().is_pass() {
            failures.push(format!("{}: ns axioms", inst.name));
        }
        if !subadjacent(&ns).unwrap().0.same_table(&induced_bracket(&inst.algebra, &inst.operator).unwrap()) {
            failures.push(format!("{}: sub-adjacent differs from induced", inst.name));
        }
    }
    for inst in &nijenhuis {
        let ns = ns_from_nijenhuis(&inst.algebra, &inst.operator).unwrap();
        if !check_ns(&ns).unwrap().is_pass() {
            failures.push(format!("{}: ns axioms", inst.name));
        }
        if !subadjacent(&ns).unwrap().0.same_table(&deformed_algebra(&inst.algebra, &inst.operator).unwrap()) {
            failures.push(format!("{}: sub-adjacent differs from deformed", inst.name));
        }
    }
    let detail = format!(
        "{} Reynolds and {} Nijenhuis operators; {}",
        reynolds.len(),
        nijenhuis.len(),
        if failures.is_empty() { "all hold".into() } else { failures.join(", ") }
    );
    let pass = verdict_line(7, failures.is_empty(), start.elapsed(), Duration::from_secs(30), &detail);
    assert!(pass);
}

#[test]
fn criterion_08_deformation_consistency() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let instances = corpus::reynolds_instances(DEFAULT_SEED).unwrap();
    let mut pairs = 0;
    let mut disagreements = Vec::new();
    let mut coboundary_failures = Vec::new();
    let mut accepted = 0;
    while pairs < 120 {
        let inst = &instances[pairs % instances.len()];
        let (a, r) = (&inst.algebra, &inst.operator);
        let d = a.dim();
        let shape = CochainShape::new(d, a.arity(), d);
        let x = random_cochain(&shape, 0, &mut rng);
        let coboundary_dir = delta_r(a, r, &x).unwrap().to_operator().unwrap();
        let random_dir = corpus::random_matrix(d, 2, &mut rng);
        for dir in [&random_dir, &coboundary_dir] {
            pairs += 1;
            let linear = is_infinitesimal_deformation(a, r, dir).unwrap().is_pass();
            let dual = check_reynolds(&a.lift::<Dual>(), &dual_operator(r, dir)).unwrap().is_pass();
            if linear != dual {
                disagreements.push(inst.name.clone());
            }
            accepted += usize::from(linear);
        }
        let cocycle = reynolds_differential(a, r, &Cochain::from_operator(shape.clone(), &coboundary_dir).unwrap()).unwrap().is_zero();
        let deformation = is_infinitesimal_deformation(a, r, &coboundary_dir).unwrap().is_pass();
        let trivial = matches!(is_trivial_deformation(a, r, &coboundary_dir).unwrap(), Triviality::Trivial(_));
        if !(cocycle && deformation && trivial) {
            coboundary_failures.push(inst.name.clone());
        }
    }
    let ok = disagreements.is_empty() && coboundary_failures.is_empty();
    let detail = format!(
        "{pairs} pairs ({accepted} deformations), {} disagreements, {} coboundaries not accepted as trivial",
        disagreements.len(),
        coboundary_failures.len()
    );
    let pass = verdict_line(8, ok, start.elapsed(), Duration::from_secs(30), &detail);
    assert!(pass);
}

fn series(d: &Matrix) -> Matrix {
    let n = d.rows();
    let mut sum = Matrix::zeros(n, n);
    let mut p = Matrix::identity(n);
    for m in 0..n {
        sum = sum.add(&p.scale(&if m % 2 == 0 { int(1) } else { int(-1) }));
        p = p.mul(d);
    }
    sum
}

#[test]
fn criterion_09_determinant_brackets() {
    let start = Instant::now();
    let mut notes = Vec::new();
    let mut ok = true;

    let p1 = TruncatedPolynomials::total_degree(1, 4);
    let p2 = TruncatedPolynomials::total_degree(2, 3);
    let p3 = TruncatedPolynomials::total_degree(3, 4);
    let d_fd = p1.vector_field(&[2], 0, 1);
    let xdy2 = p2.vector_field(&[1, 0, 0][..2], 1, 1);
    let (xdy3, xdz3) = (p3.vector_field(&[1, 0, 0], 1, 1), p3.vector_field(&[1, 0, 0], 2, 1));
    let cases: Vec<(&str, NAryAlgebra, DetConstruction, Matrix)> = vec![
        ("fd", p1.algebra(), DetConstruction::FD { f: p1.coefficient(&[1]), d: d_fd.clone() }, series(&d_fd)),
        ("dd", p2.algebra(), DetConstruction::DD { d1: p2.total_euler(), d2: xdy2.clone() }, series(&xdy2)),
        ("ddd", p3.algebra(), DetConstruction::DDD { d1: p3.total_euler(), d2: xdy3.clone(), d3: xdz3 }, series(&xdy3)),
    ];
    for (name, alg, construction, r) in &cases {
        let bracket = construction.build(alg).unwrap();
        let filippov = check_filippov(&bracket).unwrap().is_pass() && !bracket.is_abelian();
        if !filippov {
            ok = false;
        }
        notes.push(format!("{name} bracket filippov {}", if filippov { "PASS" } else { "FAIL" }));
        for (rname, op) in [("Id", Matrix::identity(alg.dim())), ("series", r.clone())] {
            let rep = check_reynolds_on_det_3lie(alg, &op, construction).unwrap();
            if !rep.is_pass() {
                ok = false;
                let c = rep.direct.counterexample().map(|c| c.to_string()).unwrap_or_default();
                let crit = match &rep.criterion {
                    Some(v) => format!(" [criterion {}]", if v.is_pass() { "PASS" } else { "FAIL" }),
                    None => String::new(),
                };
                notes.push(format!("{name} R={rname} FAIL{crit}: {c}"));
            } else {
                notes.push(format!("{name} R={rname} PASS"));
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let alg = p2.algebra();
    let r = series(&xdy2);
    let mut vec3 = || -> Column<Rational> {
        let mut v = || (0..alg.dim()).map(|_| int(rng.gen_range(-2..=2))).collect::<Vec<_>>();
        [v(), v(), v()]
    };
    let triples: Vec<[Column<Rational>; 3]> = (0..50).map(|_| [vec3(), vec3(), vec3()]).collect();
    let lemma = check_determinant_lemma(&alg, &r, &triples).unwrap();
    if !lemma.is_pass() {
        ok = false;
    }
    let corrected = check_determinant_identity(&alg, &r, &triples).unwrap();
    notes.push(format!(
        "determinant lemma on 50 triples {}; with the last term doubled {}",
        if lemma.is_pass() { "PASS" } else { "FAIL" },
        if corrected.is_pass() { "PASS" } else { "FAIL" }
    ));
    let pass = verdict_line(9, ok, start.elapsed(), Duration::from_secs(30), &notes.join("; "));
    assert!(pass);
}

#[test]
fn criterion_10_cohomology_numbers() {
    let start = Instant::now();
    let mut notes = Vec::new();
    let mut ok = true;
    let abelian = NAryAlgebra::abelian(3, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for r in [Matrix::zeros(3, 3), Matrix::identity(3), corpus::random_matrix(3, 3, &mut rng)] {
        let ds = reynolds_complex_dimensions(&abelian, &r, 1, DEFAULT_SIZE_GUARD).unwrap();
        let h: Vec<usize> = ds.iter().map(|d| d.dim_h).collect();
        if h != [3, 9] {
            ok = false;
            notes.push(format!("abelian H = {h:?}"));
        }
    }
    let out = nlie(&["cohomology", "--algebra", "tests/fixtures/abelian33.json", "--reynolds", "tests/fixtures/zero.json", "--max-degree", "1"]);
    if out.code != 0 {
        ok = false;
    }
    for r in ["R1", "R2"] {
        let out = nlie(&[
            "cohomology",
            "--algebra",
            "tests/fixtures/g.json",
            "--reynolds",
            &format!("tests/fixtures/{r}.json"),
            "--max-degree",
            "1",
            "--json",
        ]);
        let frozen = std::fs::read_to_string(format!("tests/fixtures/worked_cohomology_{r}.json")).unwrap();
        if out.stdout != frozen {
            ok = false;
            notes.push(format!("{r} report differs from its fixture"));
        } else {
            let v: serde_json::Value = serde_json::from_str(&frozen).unwrap();
            let h: Vec<u64> = v["degrees"].as_array().unwrap().iter().map(|d| d["dim_H"].as_u64().unwrap()).collect();
            notes.push(format!("{r}: H0 = {}, H1 = {}", h[0], h[1]));
        }
    }
    let pass = verdict_line(10, ok, start.elapsed(), Duration::from_secs(30), &notes.join("; "));
    assert!(pass);
}
