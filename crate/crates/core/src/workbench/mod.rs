//! The command layer behind the `vcwb` binary.
//!
//! Each command is a plain function returning a [`RunReport`] and an optional
//! output document, so its verdict can be reproduced from a test without the binary.

mod commands;
mod inputs;
mod search;

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Error;
use crate::report::{Check, Report, Status, Witness};

pub use commands::{
    cmd_check_tensored, cmd_classify, cmd_complete, cmd_export, cmd_search_tensoring, cmd_validate, CompleteOptions,
    ExportKind, ValidateKind,
};
pub use inputs::{parse_window, Source};
pub use search::{search_tensoring, SearchOptions, SearchOutcome};

/// Exit code for a run whose checks all pass.
pub const EXIT_PASS: i32 = 0;
/// Exit code for a law failure, an undetermined verdict or a coverage gap.
pub const EXIT_FAIL: i32 = 1;
/// Exit code for unreadable, malformed or ill-shaped input.
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub verdict: Status,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl RunReport {
    pub fn new(command: impl Into<String>, report: Report) -> Self {
        let verdict = report.verdict();
        RunReport { command: command.into(), verdict, checks: report.checks, timing_ms: None, notes: Vec::new() }
    }

    /// A report for a command that stopped on a structural error such as a coverage gap.
    pub fn from_error(command: impl Into<String>, err: &Error) -> Self {
        let command = command.into();
        let mut check = Check::new(format!("{command}.input"), "inputs are well formed and cover the request");
        let witness = match err {
            Error::CoverageGap { missing } => Witness::tuple(missing).note(err.to_string()),
            _ => Witness::default().note(err.to_string()),
        };
        check.count();
        check.fail(witness);
        RunReport::new(command, Report { checks: vec![check] })
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
        self.verdict = Report { checks: self.checks.clone() }.verdict();
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn exit_code(&self) -> i32 {
        if self.verdict == Status::Pass {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self, Error> {
        serde_json::from_str(s).map_err(|e| json_error(&e))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}: {}", self.command, status_word(self.verdict));
        for c in &self.checks {
            let _ = writeln!(out, "  {:<5} {} [{} instances] {}", status_word(c.status), c.law, c.instances, c.anchor);
            if let Some(w) = &c.witness {
                if !w.tuple.is_empty() {
                    let _ = writeln!(out, "        at ({})", w.tuple.join(", "));
                }
                if let Some(n) = &w.note {
                    let _ = writeln!(out, "        {n}");
                }
                if let (Some(l), Some(r)) = (&w.lhs, &w.rhs) {
                    let _ = writeln!(out, "        lhs {l}");
                    let _ = writeln!(out, "        rhs {r}");
                }
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        if let Some(ms) = self.timing_ms {
            let _ = writeln!(out, "  time: {ms} ms");
        }
        out
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Undetermined => "UNDET",
    }
}

/// Exit code for an error that stopped a command before any report was produced.
pub fn error_exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse { .. } | Error::ShapeMismatch(_) | Error::UnknownObject(_) | Error::Scalar(_) => EXIT_INPUT,
        _ => EXIT_FAIL,
    }
}

/// A command's result: the report and, for producing commands, the document to write.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: RunReport,
    pub output: Option<Value>,
}

impl Outcome {
    pub fn report_only(report: RunReport) -> Self {
        Outcome { report, output: None }
    }

    /// The output document rendered the way it is written to disk.
    pub fn output_text(&self) -> Option<String> {
        self.output.as_ref().map(render_json)
    }
}

/// Pretty JSON with a trailing newline; keys are sorted, so equal values render to equal bytes.
pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("value serializes");
    s.push('\n');
    s
}

/// Compares `text` with a golden file, or rewrites the file when `bless` is set.
pub fn golden_check(text: &str, path: &Path, bless: bool) -> Result<Check, Error> {
    let mut check = Check::new("golden.match", "output is byte-identical to the golden file");
    check.count();
    if bless {
        write_atomic(path, text)?;
        return Ok(check);
    }
    let want = std::fs::read_to_string(path).map_err(|e| Error::parse(path.display().to_string(), e.to_string()))?;
    if want != text {
        let line = want.lines().zip(text.lines()).position(|(a, b)| a != b).unwrap_or(want.lines().count().min(text.lines().count()));
        check.fail(Witness::tuple([path.display().to_string()]).note(format!("first difference at line {}", line + 1)));
    }
    Ok(check)
}

/// Writes through a temporary sibling and a rename, so readers never see a partial file.
pub fn write_atomic(path: &Path, text: &str) -> Result<(), Error> {
    let io = |e: std::io::Error| Error::parse(path.display().to_string(), e.to_string());
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    std::fs::write(&tmp, text).map_err(io)?;
    std::fs::rename(&tmp, path).map_err(io)
}

pub(crate) fn json_error(e: &serde_json::Error) -> Error {
    Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_round_trips_through_json() {
        let mut bad = Check::new("vcat.unit_left", "(j_a⊗1);comp = 1");
        bad.count();
        bad.fail(Witness::tuple(["a", "b"]).note("differs"));
        let mut r = RunReport::new("validate", Report { checks: vec![bad] });
        r.note("example");
        r.timing_ms = Some(3);
        assert_eq!(r.verdict, Status::Fail);
        assert_eq!(RunReport::from_json(&r.to_json()).unwrap(), r);
        assert_eq!(r.exit_code(), EXIT_FAIL);
        assert!(r.to_text().contains("at (a, b)"));
    }

    #[test]
    fn coverage_gap_lists_missing_items() {
        let r = RunReport::from_error("complete", &Error::CoverageGap { missing: vec!["x".into(), "y".into()] });
        assert_eq!(r.checks[0].witness.as_ref().unwrap().tuple, vec!["x", "y"]);
        assert_eq!(r.exit_code(), EXIT_FAIL);
        assert_eq!(error_exit_code(&Error::parse("a", "b")), EXIT_INPUT);
    }
}
