//! Reports: ordered verdicts, embedded artifacts, and their rendering.

use std::fmt::Write as _;
use std::time::Duration;

use nlie_core::cohomology::DegreeReport;
use nlie_core::Verdict;
use serde_json::{json, Map, Value};

use crate::doc::{counterexample_json, to_text, JsonScalar};

#[derive(Clone, Debug, PartialEq)]
pub struct VerdictEntry {
    pub check: String,
    pub passed: bool,
    pub counterexample: Option<Value>,
    /// Rendered failure for humans; for precondition failures the only record.
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub command: Vec<String>,
    pub verdicts: Vec<VerdictEntry>,
    pub artifacts: Vec<Value>,
    pub degrees: Option<Vec<DegreeReport>>,
    pub triviality: Option<Value>,
    pub timing: Vec<(String, Duration)>,
}

impl Report {
    pub fn new(command: Vec<String>) -> Self {
        Report { command, ..Report::default() }
    }

    pub fn push<S: JsonScalar>(&mut self, check: &str, v: &Verdict<S>) {
        self.verdicts.push(VerdictEntry {
            check: check.to_string(),
            passed: v.is_pass(),
            counterexample: v.counterexample().map(counterexample_json),
            detail: v.counterexample().map(|c| c.to_string()),
        });
    }

    pub fn push_failure(&mut self, check: &str, detail: String) {
        self.verdicts.push(VerdictEntry { check: check.to_string(), passed: false, counterexample: None, detail: Some(detail) });
    }

    pub fn all_passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn to_json(&self, with_timing: bool) -> Value {
        let verdicts: Vec<Value> = self
            .verdicts
            .iter()
            .map(|v| {
                let mut m = Map::new();
                m.insert("check".into(), v.check.clone().into());
                m.insert("passed".into(), v.passed.into());
                if let Some(c) = &v.counterexample {
                    m.insert("counterexample".into(), c.clone());
                } else if let Some(d) = &v.detail {
                    m.insert("detail".into(), d.clone().into());
                }
                Value::Object(m)
            })
            .collect();
        let mut out = Map::new();
        out.insert("kind".into(), "report".into());
        out.insert("command".into(), self.command.clone().into());
        out.insert("verdicts".into(), verdicts.into());
        if !self.artifacts.is_empty() {
            out.insert("artifacts".into(), self.artifacts.clone().into());
        }
        if let Some(ds) = &self.degrees {
            let rows: Vec<Value> = ds
                .iter()
                .map(|d| {
                    json!({
                        "m": d.m,
                        "dim_cochains": d.dim_cochains,
                        "rank_d": d.rank_d,
                        "dim_Z": d.dim_z,
                        "dim_B": d.dim_b,
                        "dim_H": d.dim_h,
                    })
                })
                .collect();
            out.insert("degrees".into(), rows.into());
        }
        if let Some(t) = &self.triviality {
            out.insert("triviality".into(), t.clone());
        }
        if with_timing {
            let mut t = Map::new();
            for (name, d) in &self.timing {
                t.insert(name.clone(), json!(d.as_secs_f64()));
            }
            out.insert("timing".into(), Value::Object(t));
        }
        Value::Object(out)
    }

    pub fn to_human(&self, with_timing: bool) -> String {
        let mut s = String::new();
        for v in &self.verdicts {
            let status = if v.passed { "PASS" } else { "FAIL" };
            match &v.detail {
                Some(d) => writeln!(s, "{}: {status}: {d}", v.check),
                None => writeln!(s, "{}: {status}", v.check),
            }
            .unwrap();
        }
        if let Some(ds) = &self.degrees {
            writeln!(s, "{:>3} {:>10} {:>8} {:>8} {:>8} {:>8}", "m", "cochains", "rank d", "dim Z", "dim B", "dim H").unwrap();
            for d in ds {
                writeln!(s, "{:>3} {:>10} {:>8} {:>8} {:>8} {:>8}", d.m, d.dim_cochains, d.rank_d, d.dim_z, d.dim_b, d.dim_h).unwrap();
            }
        }
        if let Some(t) = &self.triviality {
            writeln!(s, "triviality: {}", t["status"].as_str().unwrap_or("?")).unwrap();
            if let Some(w) = t.get("witness") {
                s.push_str(&to_text(w));
            }
        }
        for a in &self.artifacts {
            s.push_str(&to_text(a));
        }
        if with_timing {
            for (name, d) in &self.timing {
                writeln!(s, "time {name}: {:.3}s", d.as_secs_f64()).unwrap();
            }
        }
        s
    }
}
