//! The `nlie` command line: JSON documents in, verdict reports out.
//!
//! Exit codes: 0 when every requested check passes, 1 when one fails, 2 on
//! usage or input errors.

pub mod commands;
pub mod doc;
pub mod report;

use clap::error::ErrorKind;

use crate::commands::Abort;
use crate::doc::to_text;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let (cli, settings) = match commands::parse(&argv) {
        Ok(p) => p,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome { stdout: text, stderr: String::new(), code: 0 },
                _ => Outcome { stdout: String::new(), stderr: text, code: 2 },
            };
        }
    };
    let echo = argv.iter().skip(1).cloned().collect();
    match commands::execute(&cli, echo) {
        Ok(report) => {
            let stdout = if settings.json { to_text(&report.to_json(settings.timing)) } else { report.to_human(settings.timing) };
            Outcome { stdout, stderr: String::new(), code: if report.all_passed() { 0 } else { 1 } }
        }
        Err(e) => {
            let stderr = format!("error: {e}\n");
            let stdout = match (&e, settings.json) {
                (Abort::Document(path, d), true) => {
                    to_text(&serde_json::json!({ "kind": "error", "file": path, "pointer": d.pointer, "message": d.message }))
                }
                (_, true) => to_text(&serde_json::json!({ "kind": "error", "message": e.to_string() })),
                _ => String::new(),
            };
            Outcome { stdout, stderr, code: 2 }
        }
    }
}
