//! Outcomes of identity checks.

use std::fmt;

use rayon::prelude::*;

use crate::scalar::{Rational, Scalar};

/// A named group of 0-based basis indices fed into an identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArgGroup {
    pub name: String,
    pub indices: Vec<usize>,
}

impl ArgGroup {
    pub fn new(name: &str, indices: &[usize]) -> Self {
        ArgGroup {
            name: name.to_string(),
            indices: indices.to_vec(),
        }
    }
}

/// A basis instance on which an identity fails, with both sides.
#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample<S = Rational> {
    pub identity: String,
    pub arguments: Vec<ArgGroup>,
    pub lhs: Vec<S>,
    pub rhs: Vec<S>,
}

impl<S: Scalar> Counterexample<S> {
    pub fn new(identity: &str, arguments: Vec<ArgGroup>, lhs: Vec<S>, rhs: Vec<S>) -> Self {
        Counterexample {
            identity: identity.to_string(),
            arguments,
            lhs,
            rhs,
        }
    }

    /// `lhs - rhs`, coordinate by coordinate.
    pub fn difference(&self) -> Vec<S> {
        self.lhs
            .iter()
            .zip(&self.rhs)
            .map(|(a, b)| a.clone() - b)
            .collect()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Counterexample<T> {
        Counterexample {
            identity: self.identity.clone(),
            arguments: self.arguments.clone(),
            lhs: self.lhs.iter().map(&f).collect(),
            rhs: self.rhs.iter().map(&f).collect(),
        }
    }
}

impl<S: Scalar> fmt::Display for Counterexample<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at", self.identity)?;
        for g in &self.arguments {
            let one_based: Vec<String> = g.indices.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, " {}=({})", g.name, one_based.join(","))?;
        }
        let show = |v: &[S]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        write!(
            f,
            ": lhs [{}], rhs [{}], difference [{}]",
            show(&self.lhs),
            show(&self.rhs),
            show(&self.difference())
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict<S = Rational> {
    Pass,
    Fail(Box<Counterexample<S>>),
}

impl<S: Scalar> Verdict<S> {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn counterexample(&self) -> Option<&Counterexample<S>> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(c) => Some(c),
        }
    }

    /// The first failure of `self`, then of `next`.
    pub fn and_then(self, next: impl FnOnce() -> Verdict<S>) -> Verdict<S> {
        match self {
            Verdict::Pass => next(),
            fail => fail,
        }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Verdict<T> {
        match self {
            Verdict::Pass => Verdict::Pass,
            Verdict::Fail(c) => Verdict::Fail(Box::new(c.map(f))),
        }
    }
}

impl<S: Scalar> fmt::Display for Verdict<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => f.write_str("PASS"),
            Verdict::Fail(c) => write!(f, "FAIL: {c}"),
        }
    }
}

/// Compares both sides and builds the counterexample on mismatch.
pub fn compare<S: Scalar>(
    identity: &str,
    arguments: impl FnOnce() -> Vec<ArgGroup>,
    lhs: Vec<S>,
    rhs: Vec<S>,
) -> Option<Counterexample<S>> {
    if lhs == rhs {
        None
    } else {
        Some(Counterexample::new(identity, arguments(), lhs, rhs))
    }
}

/// Runs `check` over `cases` and reports the failure with the smallest case
/// index, so the result does not depend on thread scheduling.
pub fn first_failure<T, S, F>(cases: &[T], check: F) -> Verdict<S>
where
    T: Sync,
    S: Scalar,
    F: Fn(&T) -> Option<Counterexample<S>> + Sync + Send,
{
    match cases.par_iter().find_map_first(check) {
        None => Verdict::Pass,
        Some(c) => Verdict::Fail(Box::new(c)),
    }
}

/// Columnwise comparison of two matrices given as column lists.
pub fn compare_columns<S: Scalar>(
    identity: &str,
    lhs: &crate::matrix::Matrix<S>,
    rhs: &crate::matrix::Matrix<S>,
) -> Verdict<S> {
    for j in 0..lhs.cols() {
        let (a, b) = (lhs.column(j), rhs.column(j));
        if a != b {
            return Verdict::Fail(Box::new(Counterexample::new(
                identity,
                vec![ArgGroup::new("column", &[j])],
                a,
                b,
            )));
        }
    }
    Verdict::Pass
}
