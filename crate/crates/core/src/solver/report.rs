use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};

use super::config::ReportFormat;

/// One row of a report. Keys keep their insertion order.
pub type Record = Map<String, Value>;

/// Outcome of a pipeline stage, mapped onto the process exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Violation,
    PrecisionFailure,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Violation => 1,
            Verdict::PrecisionFailure => 2,
        }
    }

    /// The more severe of the two.
    pub fn combine(self, other: Verdict) -> Verdict {
        if other.exit_code() > self.exit_code() {
            other
        } else {
            self
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Violation => "violation",
            Verdict::PrecisionFailure => "precision-failure",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub stage: String,
    pub inputs: Record,
    pub records: Vec<Record>,
    pub summary: Record,
    /// Wall-clock milliseconds, only when timing is enabled.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
    pub verdict: Verdict,
}

impl RunReport {
    pub fn new(stage: impl Into<String>, inputs: &[(String, String)]) -> Self {
        RunReport {
            stage: stage.into(),
            inputs: inputs
                .iter()
                .map(|(k, v)| (k.clone(), Value::String(v.clone())))
                .collect(),
            records: Vec::new(),
            summary: Record::new(),
            timing_ms: None,
            verdict: Verdict::Pass,
        }
    }

    pub fn summarize(&mut self, key: &str, value: impl Into<Value>) {
        self.summary.insert(key.to_string(), value.into());
    }

    pub fn exit_code(&self) -> i32 {
        self.verdict.exit_code()
    }
}

/// Builds a record from `(key, value)` pairs.
#[macro_export]
macro_rules! record {
    ($($k:expr => $v:expr),* $(,)?) => {{
        let mut r = $crate::solver::Record::new();
        $( r.insert(($k).to_string(), ::serde_json::Value::from($v)); )*
        r
    }};
}

/// A big integer (or anything displayable) as a JSON string.
pub fn dec(v: impl fmt::Display) -> Value {
    Value::String(v.to_string())
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn csv_error(e: impl std::error::Error + Send + Sync + 'static) -> Error {
    Error::Serialize {
        path: "<csv>".into(),
        source: Box::new(e),
    }
}

/// The report as text. JSON keeps the full structure; CSV has one row per
/// record under the union of their keys, in first-seen order, and is empty
/// when there are no records.
pub fn render_report(report: &RunReport, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).map_err(|e| Error::Serialize {
                path: "<json>".into(),
                source: Box::new(e),
            })?;
            s.push('\n');
            Ok(s)
        }
        ReportFormat::Csv => {
            let mut header: Vec<&String> = Vec::new();
            for r in &report.records {
                for k in r.keys() {
                    if !header.contains(&k) {
                        header.push(k);
                    }
                }
            }
            let mut w = csv::Writer::from_writer(Vec::new());
            if !header.is_empty() {
                w.write_record(header.iter().map(|h| h.as_str()))
                    .map_err(csv_error)?;
                for r in &report.records {
                    w.write_record(header.iter().map(|h| r.get(*h).map(cell).unwrap_or_default()))
                        .map_err(csv_error)?;
                }
            }
            let bytes = w.into_inner().map_err(|e| csv_error(e.into_error()))?;
            String::from_utf8(bytes).map_err(csv_error)
        }
    }
}

/// Writes the report to `path`.
pub fn emit_report(report: &RunReport, format: ReportFormat, path: &Path) -> Result<()> {
    let text = render_report(report, format).map_err(|e| match e {
        Error::Serialize { source, .. } => Error::Serialize {
            path: path.to_path_buf(),
            source,
        },
        other => other,
    })?;
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> RunReport {
        let mut r = RunReport::new("search", &[("k_max".into(), "5".into())]);
        r.records.push(crate::record! {"k" => 2, "n" => 4, "value" => dec(12)});
        r.records.push(crate::record! {"k" => 3, "n" => 6, "value" => dec(84), "note" => "x,y"});
        r.summarize("hits", 2);
        r
    }

    #[test]
    fn json_keeps_key_order_and_round_trips() {
        let r = sample();
        let text = render_report(&r, ReportFormat::Json).unwrap();
        let stage = text.find("\"stage\"").unwrap();
        let records = text.find("\"records\"").unwrap();
        let verdict = text.find("\"verdict\"").unwrap();
        assert!(stage < records && records < verdict);
        assert!(text.contains("\"value\": \"84\""));
        assert!(!text.contains("timing_ms"));
        let back: RunReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        let keys: Vec<_> = back.records[1].keys().cloned().collect();
        assert_eq!(keys, ["k", "n", "value", "note"]);
    }

    #[test]
    fn csv_uses_union_header() {
        let text = render_report(&sample(), ReportFormat::Csv).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines, ["k,n,value,note", "2,4,12,", "3,6,84,\"x,y\""]);
    }

    #[test]
    fn empty_reports_are_valid() {
        let r = RunReport::new("search", &[]);
        assert_eq!(render_report(&r, ReportFormat::Csv).unwrap(), "");
        let text = render_report(&r, ReportFormat::Json).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["records"], Value::Array(vec![]));
    }

    #[test]
    fn verdicts_map_to_exit_codes() {
        assert_eq!(Verdict::Pass.exit_code(), 0);
        assert_eq!(Verdict::Pass.combine(Verdict::Violation), Verdict::Violation);
        assert_eq!(
            Verdict::PrecisionFailure.combine(Verdict::Violation),
            Verdict::PrecisionFailure
        );
    }

    #[test]
    fn emit_reports_io_errors_with_path() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("missing").join("r.json");
        let err = emit_report(&sample(), ReportFormat::Json, &path).unwrap_err();
        assert!(err.to_string().contains("missing"));
        let ok = dir.path().join("r.csv");
        emit_report(&sample(), ReportFormat::Csv, &ok).unwrap();
        assert!(std::fs::read_to_string(ok).unwrap().starts_with("k,n,"));
    }
}
