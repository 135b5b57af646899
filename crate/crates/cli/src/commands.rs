//! Argument parsing and dispatch.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nlie_core::algebra::{check_filippov, is_derivation};
use nlie_core::assoc::{check_assoc_reynolds, check_reynolds_on_det_3lie, DetConstruction};
use nlie_core::cohomology::{reynolds_complex_dimensions, DEFAULT_SIZE_GUARD};
use nlie_core::constructions::{corollary_bracket, extend_by_functional, reynolds_lift_criterion};
use nlie_core::deformation::{check_equivalence_witness, is_infinitesimal_deformation, is_trivial_deformation, Triviality};
use nlie_core::nijenhuis::{check_nijenhuis, deformed_algebra, deformed_bracket_ladder};
use nlie_core::ns::{check_ns, ns_from_nijenhuis, ns_from_reynolds, NSAlgebra};
use nlie_core::representation::{check_representation, semidirect_product, RepresentationTable};
use nlie_core::reynolds::{check_reynolds, derivation_to_reynolds, induced_bracket, reynolds_from_nilpotent_derivation, reynolds_to_derivation};
use nlie_core::{Error, Matrix, NAryAlgebra, Rational};
use serde_json::{json, Value};

use crate::doc::{algebra_json, ns_json, operator_json, parse_document, to_text, wedge_json, DocError, Document, WedgeElement};
use crate::report::Report;

#[derive(Parser, Debug)]
#[command(name = "nlie", version, about = "Exact checks and constructions for n-Lie algebras and their operators")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Include wall-clock timings (makes output run-dependent).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify an identity.
    Check {
        #[command(subcommand)]
        what: CheckCmd,
    },
    /// Build a new structure from verified inputs.
    Construct {
        #[command(subcommand)]
        what: ConstructCmd,
    },
    /// Dimensions of the Reynolds cohomology.
    Cohomology(Inputs),
    /// Infinitesimal deformations of a Reynolds operator.
    Deform(Inputs),
    /// Convert between derivations and Reynolds operators.
    Operator {
        #[command(subcommand)]
        what: OperatorCmd,
    },
}

#[derive(Subcommand, Debug)]
enum CheckCmd {
    Filippov(Inputs),
    Derivation(Inputs),
    Representation(Inputs),
    Reynolds(Inputs),
    Nijenhuis(Inputs),
    Ns(Inputs),
    AssocReynolds(Inputs),
    Lift(Inputs),
}

#[derive(Subcommand, Debug)]
enum ConstructCmd {
    Induced(Inputs),
    Gf(Inputs),
    Corollary(Inputs),
    NsFromReynolds(Inputs),
    NsFromNijenhuis(Inputs),
    Deformed(Inputs),
    Det3(Inputs),
    Semidirect(Inputs),
    /// All deformed brackets of a linear operator, level 0 first.
    Ladder(Inputs),
}

#[derive(Subcommand, Debug)]
enum OperatorCmd {
    FromDerivation(Inputs),
    Series(Inputs),
    ToDerivation(Inputs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Variant {
    Fd,
    Dd,
    Ddd,
}

#[derive(Args, Debug)]
struct Inputs {
    #[arg(long)]
    algebra: Option<PathBuf>,
    #[arg(long)]
    operator: Option<PathBuf>,
    /// The Reynolds operator; defaults to --operator.
    #[arg(long)]
    reynolds: Option<PathBuf>,
    #[arg(long)]
    functional: Option<PathBuf>,
    #[arg(long)]
    representation: Option<PathBuf>,
    /// Repeatable; order matters for `construct det3`.
    #[arg(long)]
    derivation: Vec<PathBuf>,
    #[arg(long)]
    direction: Option<PathBuf>,
    /// Second deformation direction for `deform`; defaults to zero.
    #[arg(long)]
    against: Option<PathBuf>,
    #[arg(long)]
    witness: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    max_degree: usize,
    #[arg(long, default_value_t = DEFAULT_SIZE_GUARD)]
    size_guard: usize,
    #[arg(long, default_value_t = 64)]
    max_dim: usize,
    #[arg(long, value_enum)]
    variant: Option<Variant>,
    /// Also write the first constructed document to this file.
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Why a command stopped before producing a report.
pub enum Abort {
    Usage(String),
    Document(String, DocError),
    Core(Error),
}

impl From<Error> for Abort {
    fn from(e: Error) -> Self {
        Abort::Core(e)
    }
}

impl std::fmt::Display for Abort {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Abort::Usage(m) => write!(f, "usage error: {m}"),
            Abort::Document(p, e) => write!(f, "{p}: {e}"),
            Abort::Core(e) => write!(f, "{e}"),
        }
    }
}

type Run<T> = Result<T, Abort>;

pub struct Settings {
    pub json: bool,
    pub timing: bool,
}

pub fn parse(argv: &[String]) -> Result<(Cli, Settings), clap::Error> {
    let cli = Cli::try_parse_from(argv)?;
    let s = Settings { json: cli.json, timing: cli.timing };
    Ok((cli, s))
}

struct Ctx<'a> {
    inputs: &'a Inputs,
    report: Report,
}

impl<'a> Ctx<'a> {
    fn load(&self, path: &Path) -> Run<Document> {
        let shown = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|e| Abort::Usage(format!("cannot read {shown}: {e}")))?;
        parse_document(&text).map_err(|e| Abort::Document(shown, e))
    }

    fn need<'p>(&self, p: &'p Option<PathBuf>, flag: &str) -> Run<&'p PathBuf> {
        p.as_ref().ok_or_else(|| Abort::Usage(format!("--{flag} is required")))
    }

    fn wrong_kind(path: &Path, expected: &str, found: &Document) -> Abort {
        Abort::Document(
            path.display().to_string(),
            DocError { pointer: "/kind".into(), message: format!("expected a {expected} document, found {}", found.kind()) },
        )
    }

    fn algebra(&self) -> Run<NAryAlgebra> {
        let path = self.need(&self.inputs.algebra, "algebra")?;
        match self.load(path)? {
            Document::Algebra(a) if a.dim() > self.inputs.max_dim => {
                Err(Abort::Usage(format!("dimension {} exceeds --max-dim {}", a.dim(), self.inputs.max_dim)))
            }
            Document::Algebra(a) => Ok(a),
            other => Err(Self::wrong_kind(path, "n_lie_algebra", &other)),
        }
    }

    fn ns(&self) -> Run<NSAlgebra> {
        let path = self.need(&self.inputs.algebra, "algebra")?;
        match self.load(path)? {
            Document::Ns(s) => Ok(s),
            other => Err(Self::wrong_kind(path, "ns_algebra", &other)),
        }
    }

    fn matrix_at(&self, path: &Path) -> Run<Matrix> {
        match self.load(path)? {
            Document::Operator(m) => Ok(m),
            other => Err(Self::wrong_kind(path, "linear_operator", &other)),
        }
    }

    fn operator(&self) -> Run<Matrix> {
        self.matrix_at(self.need(&self.inputs.operator, "operator")?)
    }

    fn reynolds(&self) -> Run<Matrix> {
        match &self.inputs.reynolds {
            Some(p) => self.matrix_at(p),
            None => self.matrix_at(self.need(&self.inputs.operator, "reynolds")?),
        }
    }

    /// `--derivation`, falling back to `--operator`.
    fn derivation(&self) -> Run<Matrix> {
        match self.inputs.derivation.first() {
            Some(p) => self.matrix_at(p),
            None => self.matrix_at(self.need(&self.inputs.operator, "derivation")?),
        }
    }

    fn functional(&self) -> Run<Vec<Rational>> {
        let path = self.need(&self.inputs.functional, "functional")?;
        match self.load(path)? {
            Document::Functional(f) => Ok(f),
            other => Err(Self::wrong_kind(path, "functional", &other)),
        }
    }

    fn representation(&self) -> Run<RepresentationTable> {
        let path = self.need(&self.inputs.representation, "representation")?;
        match self.load(path)? {
            Document::Representation(r) => Ok(r),
            other => Err(Self::wrong_kind(path, "representation", &other)),
        }
    }

    fn wedge(&self, path: &Path) -> Run<WedgeElement> {
        match self.load(path)? {
            Document::Wedge(w) => Ok(w),
            other => Err(Self::wrong_kind(path, "wedge", &other)),
        }
    }

    fn timed<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.report.timing.push((name.to_string(), start.elapsed()));
        out
    }

    /// Runs a check; precondition failures become failed verdicts.
    fn check<S: crate::doc::JsonScalar>(&mut self, name: &str, f: impl FnOnce() -> nlie_core::Result<nlie_core::Verdict<S>>) -> Run<bool> {
        match self.timed(name, f) {
            Ok(v) => {
                self.report.push(name, &v);
                Ok(v.is_pass())
            }
            Err(e) => self.soft(e).map(|_| false),
        }
    }

    /// Mathematical failures are reported; anything else aborts.
    fn soft(&mut self, e: Error) -> Run<()> {
        match e {
            Error::Precondition { check, detail } => {
                self.report.push_failure(&check, detail);
                Ok(())
            }
            Error::NotInvertible(what) => {
                self.report.push_failure("invertible", format!("{what} is not invertible"));
                Ok(())
            }
            other => Err(Abort::Core(other)),
        }
    }

    /// Runs a construction; on success records the artifact.
    fn construct<T>(&mut self, f: impl FnOnce() -> nlie_core::Result<T>) -> Run<Option<T>> {
        match self.timed("construct", f) {
            Ok(t) => Ok(Some(t)),
            Err(e) => self.soft(e).map(|_| None),
        }
    }

    fn artifact(&mut self, v: Value) {
        self.report.artifacts.push(v);
    }

    fn emit_algebra(&mut self, a: NAryAlgebra) -> Run<()> {
        self.check("filippov", || check_filippov(&a))?;
        self.artifact(algebra_json(&a));
        Ok(())
    }
}

pub fn execute(cli: &Cli, echo: Vec<String>) -> Run<Report> {
    let inputs = match &cli.command {
        Command::Check { what } => match what {
            CheckCmd::Filippov(i)
            | CheckCmd::Derivation(i)
            | CheckCmd::Representation(i)
            | CheckCmd::Reynolds(i)
            | CheckCmd::Nijenhuis(i)
            | CheckCmd::Ns(i)
            | CheckCmd::AssocReynolds(i)
            | CheckCmd::Lift(i) => i,
        },
        Command::Construct { what } => match what {
            ConstructCmd::Induced(i)
            | ConstructCmd::Gf(i)
            | ConstructCmd::Corollary(i)
            | ConstructCmd::NsFromReynolds(i)
            | ConstructCmd::NsFromNijenhuis(i)
            | ConstructCmd::Deformed(i)
            | ConstructCmd::Det3(i)
            | ConstructCmd::Semidirect(i)
            | ConstructCmd::Ladder(i) => i,
        },
        Command::Cohomology(i) | Command::Deform(i) => i,
        Command::Operator { what } => match what {
            OperatorCmd::FromDerivation(i) | OperatorCmd::Series(i) | OperatorCmd::ToDerivation(i) => i,
        },
    };
    let mut cx = Ctx { inputs, report: Report::new(echo) };
    match &cli.command {
        Command::Check { what } => check(&mut cx, what)?,
        Command::Construct { what } => construct(&mut cx, what)?,
        Command::Cohomology(_) => cohomology(&mut cx)?,
        Command::Deform(_) => deform(&mut cx)?,
        Command::Operator { what } => operator(&mut cx, what)?,
    }
    if let (Some(path), Some(first)) = (&inputs.output, cx.report.artifacts.first()) {
        std::fs::write(path, to_text(first)).map_err(|e| Abort::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(cx.report)
}

fn check(cx: &mut Ctx, what: &CheckCmd) -> Run<()> {
    match what {
        CheckCmd::Filippov(_) => {
            let a = cx.algebra()?;
            cx.check("filippov", || check_filippov(&a))?;
        }
        CheckCmd::Derivation(_) => {
            let (a, d) = (cx.algebra()?, cx.derivation()?);
            cx.check("derivation", || is_derivation(&a, &d))?;
        }
        CheckCmd::Representation(_) => {
            let (a, rho) = (cx.algebra()?, cx.representation()?);
            cx.check("representation", || check_representation(&a, &rho))?;
        }
        CheckCmd::Reynolds(_) => {
            let (a, r) = (cx.algebra()?, cx.reynolds()?);
            cx.check("reynolds", || check_reynolds(&a, &r))?;
        }
        CheckCmd::Nijenhuis(_) => {
            let (a, n) = (cx.algebra()?, cx.operator()?);
            cx.check("nijenhuis", || check_nijenhuis(&a, &n))?;
        }
        CheckCmd::Ns(_) => {
            let s = cx.ns()?;
            cx.check("ns", || check_ns(&s))?;
        }
        CheckCmd::AssocReynolds(_) => {
            let (a, r) = (cx.algebra()?, cx.reynolds()?);
            cx.check("assoc-reynolds", || check_assoc_reynolds(&a, &r))?;
        }
        CheckCmd::Lift(_) => {
            let (a, r, f) = (cx.algebra()?, cx.reynolds()?, cx.functional()?);
            cx.check("lift-criterion", || reynolds_lift_criterion(&a, &r, &f))?;
        }
    }
    Ok(())
}

fn construct(cx: &mut Ctx, what: &ConstructCmd) -> Run<()> {
    match what {
        ConstructCmd::Induced(_) => {
            let (a, r) = (cx.algebra()?, cx.reynolds()?);
            if let Some(b) = cx.construct(|| induced_bracket(&a, &r))? {
                cx.emit_algebra(b)?;
            }
        }
        ConstructCmd::Gf(_) => {
            let (a, f) = (cx.algebra()?, cx.functional()?);
            if let Some(b) = cx.construct(|| extend_by_functional(&a, &f))? {
                cx.emit_algebra(b)?;
            }
        }
        ConstructCmd::Corollary(_) => {
            let (a, r, f) = (cx.algebra()?, cx.reynolds()?, cx.functional()?);
            if let Some(b) = cx.construct(|| corollary_bracket(&a, &r, &f))? {
                cx.emit_algebra(b)?;
            }
        }
        ConstructCmd::NsFromReynolds(_) | ConstructCmd::NsFromNijenhuis(_) => {
            let a = cx.algebra()?;
            let from_reynolds = matches!(what, ConstructCmd::NsFromReynolds(_));
            let op = if from_reynolds { cx.reynolds()? } else { cx.operator()? };
            let built = cx.construct(|| if from_reynolds { ns_from_reynolds(&a, &op) } else { ns_from_nijenhuis(&a, &op) })?;
            if let Some(s) = built {
                cx.check("ns", || check_ns(&s))?;
                cx.artifact(ns_json(&s));
            }
        }
        ConstructCmd::Deformed(_) => {
            let (a, n) = (cx.algebra()?, cx.operator()?);
            if let Some(b) = cx.construct(|| deformed_algebra(&a, &n))? {
                cx.emit_algebra(b)?;
            }
        }
        ConstructCmd::Ladder(_) => {
            let (a, n) = (cx.algebra()?, cx.operator()?);
            if let Some(ladder) = cx.construct(|| deformed_bracket_ladder(&a, &n))? {
                for level in ladder.levels() {
                    cx.artifact(algebra_json(level));
                }
            }
        }
        ConstructCmd::Semidirect(_) => {
            let (a, rho) = (cx.algebra()?, cx.representation()?);
            if let Some(b) = cx.construct(|| semidirect_product(&a, &rho))? {
                cx.emit_algebra(b)?;
            }
        }
        ConstructCmd::Det3(_) => det3(cx)?,
    }
    Ok(())
}

fn det3(cx: &mut Ctx) -> Run<()> {
    let a = cx.algebra()?;
    let variant = cx.inputs.variant.ok_or_else(|| Abort::Usage("--variant fd|dd|ddd is required".into()))?;
    let wanted = match variant {
        Variant::Fd => 1,
        Variant::Dd => 2,
        Variant::Ddd => 3,
    };
    if cx.inputs.derivation.len() != wanted {
        return Err(Abort::Usage(format!("this variant takes {wanted} --derivation documents")));
    }
    let ds: Vec<Matrix> = cx.inputs.derivation.iter().map(|p| cx.matrix_at(p)).collect::<Run<_>>()?;
    let construction = match variant {
        Variant::Fd => DetConstruction::FD { f: cx.functional()?, d: ds[0].clone() },
        Variant::Dd => DetConstruction::DD { d1: ds[0].clone(), d2: ds[1].clone() },
        Variant::Ddd => DetConstruction::DDD { d1: ds[0].clone(), d2: ds[1].clone(), d3: ds[2].clone() },
    };
    let Some(b) = cx.construct(|| construction.build(&a))? else {
        return Ok(());
    };
    cx.emit_algebra(b)?;
    let r = match (&cx.inputs.reynolds, &cx.inputs.operator) {
        (None, None) => return Ok(()),
        _ => cx.reynolds()?,
    };
    if let Some(rep) = cx.construct(|| check_reynolds_on_det_3lie(&a, &r, &construction))? {
        if let Some(c) = &rep.criterion {
            cx.report.push("fd-criterion", c);
        }
        cx.report.push("reynolds", &rep.direct);
    }
    Ok(())
}

fn cohomology(cx: &mut Ctx) -> Run<()> {
    let (a, r) = (cx.algebra()?, cx.reynolds()?);
    let (m, guard) = (cx.inputs.max_degree, cx.inputs.size_guard);
    if let Some(ds) = cx.construct(|| reynolds_complex_dimensions(&a, &r, m, guard))? {
        cx.report.degrees = Some(ds);
    }
    Ok(())
}

fn deform(cx: &mut Ctx) -> Run<()> {
    let (a, r) = (cx.algebra()?, cx.reynolds()?);
    let dir = cx.matrix_at(cx.need(&cx.inputs.direction, "direction")?)?;
    let against = cx.inputs.against.as_ref().map(|p| cx.matrix_at(p)).transpose()?;
    let mut ok = cx.check("infinitesimal-deformation", || is_infinitesimal_deformation(&a, &r, &dir))?;
    if let Some(other) = &against {
        ok &= cx.check("infinitesimal-deformation:against", || is_infinitesimal_deformation(&a, &r, other))?;
    }
    if !ok {
        return Ok(());
    }
    if let Some(wp) = &cx.inputs.witness {
        let w = cx.wedge(wp)?;
        if w.dim != a.dim() || w.degree + 1 != a.arity() {
            return Err(Abort::Usage(format!("the witness must lie in the {}-th exterior power of a {}-dimensional space", a.arity() - 1, a.dim())));
        }
        let zero = Matrix::zeros(a.dim(), a.dim());
        let target = against.clone().unwrap_or(zero);
        cx.check("equivalence-witness", || check_equivalence_witness(&a, &r, &dir, &target, &w.coeffs))?;
        return Ok(());
    }
    if against.is_some() {
        return Ok(());
    }
    let Some(t) = cx.construct(|| is_trivial_deformation(&a, &r, &dir))? else {
        return Ok(());
    };
    cx.report.triviality = Some(match t {
        Triviality::Trivial(x) => {
            let w = WedgeElement { dim: a.dim(), degree: a.arity() - 1, coeffs: x };
            json!({ "status": "trivial", "witness": wedge_json(&w) })
        }
        Triviality::Nontrivial => json!({ "status": "nontrivial" }),
        Triviality::Unknown(detail) => {
            cx.report.push_failure("triviality", detail.clone());
            json!({ "status": "unknown", "detail": detail })
        }
    });
    Ok(())
}

fn operator(cx: &mut Ctx, what: &OperatorCmd) -> Run<()> {
    let a = cx.algebra()?;
    match what {
        OperatorCmd::FromDerivation(_) | OperatorCmd::Series(_) => {
            let d = cx.derivation()?;
            let series = matches!(what, OperatorCmd::Series(_));
            let built = cx.construct(|| if series { reynolds_from_nilpotent_derivation(&a, &d) } else { derivation_to_reynolds(&a, &d) })?;
            if let Some(r) = built {
                cx.check("reynolds", || check_reynolds(&a, &r))?;
                cx.artifact(operator_json(&r));
            }
        }
        OperatorCmd::ToDerivation(_) => {
            let r = cx.reynolds()?;
            if let Some(d) = cx.construct(|| reynolds_to_derivation(&a, &r))? {
                cx.check("derivation", || is_derivation(&a, &d))?;
                cx.artifact(operator_json(&d));
            }
        }
    }
    Ok(())
}
