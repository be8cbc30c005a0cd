//! Verification reports and their serializations.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The claim's hypotheses do not hold for this instance.
    Na,
    /// Not evaluated: a budget or the configured range cut it off.
    Clipped,
    /// Results differ between the characteristics that were compared.
    Indeterminate,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Na => "na",
            Status::Clipped => "clipped",
            Status::Indeterminate => "indeterminate",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub graph: String,
    pub s: u32,
    pub claim: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub witness: Value,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub values: Value,
    pub ms: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub na: usize,
    pub clipped: usize,
    pub indeterminate: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub char: u64,
    pub instances: Vec<Instance>,
    pub summary: Summary,
}

impl Report {
    pub fn new(suite: &str, seed: u64, char: u64, mut instances: Vec<Instance>) -> Self {
        instances.sort_by(|a, b| (&a.graph, a.s, &a.claim).cmp(&(&b.graph, b.s, &b.claim)));
        let mut summary = Summary::default();
        for i in &instances {
            match i.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Na => summary.na += 1,
                Status::Clipped => summary.clipped += 1,
                Status::Indeterminate => summary.indeterminate += 1,
            }
        }
        Report {
            suite: suite.to_string(),
            seed,
            char,
            instances,
            summary,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Instance> {
        self.instances.iter().filter(|i| i.status == Status::Fail)
    }

    pub fn count(&self, claim: &str, status: Status) -> usize {
        self.instances.iter().filter(|i| i.claim == claim && i.status == status).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for Format {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            _ => Err(crate::error::Error::invalid(format!("unknown report format {s:?}"))),
        }
    }
}

/// Canonical bytes for a report: JSON objects have sorted keys and instances
/// are sorted by graph, power and claim.
pub fn emit_report(report: &Report, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            // Round-trip through Value so every object has sorted keys.
            let v = serde_json::to_value(report).expect("report serializes");
            let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
            s.push('\n');
            s.into_bytes()
        }
        Format::Csv => {
            let mut s = String::from("suite,graph,s,claim,status,ms,witness\n");
            for i in &report.instances {
                let witness = if i.witness.is_null() { String::new() } else { i.witness.to_string() };
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{}",
                    csv_field(&report.suite),
                    csv_field(&i.graph),
                    i.s,
                    csv_field(&i.claim),
                    i.status.as_str(),
                    i.ms,
                    csv_field(&witness)
                );
            }
            s.into_bytes()
        }
        Format::Text => {
            let mut s = format!("suite {} (seed {}, char {})\n", report.suite, report.seed, report.char);
            for i in &report.instances {
                let _ = write!(s, "{:<13} {} s={} {}", i.status.as_str().to_uppercase(), i.graph, i.s, i.claim);
                if !i.values.is_null() {
                    let _ = write!(s, " {}", i.values);
                }
                if !i.witness.is_null() {
                    let _ = write!(s, " witness={}", i.witness);
                }
                s.push('\n');
            }
            let m = &report.summary;
            let _ = writeln!(
                s,
                "summary: {} pass, {} fail, {} na, {} clipped, {} indeterminate",
                m.pass, m.fail, m.na, m.clipped, m.indeterminate
            );
            s.into_bytes()
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn inst(graph: &str, s: u32, status: Status) -> Instance {
        Instance {
            graph: graph.into(),
            s,
            claim: "c".into(),
            status,
            witness: if status == Status::Fail { json!({"monomial": "x1*x2"}) } else { Value::Null },
            values: Value::Null,
            ms: 0,
        }
    }

    #[test]
    fn empty_report() {
        let r = Report::new("symbolic", 1, 32003, vec![]);
        assert_eq!(r.summary, Summary::default());
        assert!(r.all_passed());
        let v: Value = serde_json::from_slice(&emit_report(&r, Format::Json)).unwrap();
        assert_eq!(v["summary"]["pass"], 0);
        assert_eq!(v["instances"], json!([]));
    }

    #[test]
    fn failing_instance_carries_witness() {
        let r = Report::new("x", 0, 2, vec![inst("b", 1, Status::Pass), inst("a", 2, Status::Fail)]);
        assert!(!r.all_passed());
        assert_eq!(r.instances[0].graph, "a");
        let text = String::from_utf8(emit_report(&r, Format::Text)).unwrap();
        assert!(text.contains("FAIL"));
        assert!(text.contains("witness="));
        let csv = String::from_utf8(emit_report(&r, Format::Csv)).unwrap();
        assert_eq!(csv.lines().count(), 3);
        assert!(csv.contains("\"{\"\"monomial\"\":\"\"x1*x2\"\"}\""));
    }

    #[test]
    fn json_round_trip() {
        let r = Report::new("x", 5, 32003, vec![inst("g", 1, Status::Fail), inst("g", 1, Status::Na)]);
        let bytes = emit_report(&r, Format::Json);
        let back: Report = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(back, r);
        assert_eq!(emit_report(&back, Format::Json), bytes);
        let v: Value = serde_json::from_slice(&bytes).unwrap();
        for key in ["suite", "seed", "char", "instances", "summary"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        for key in ["graph", "s", "claim", "status", "ms"] {
            assert!(v["instances"][0].get(key).is_some(), "{key}");
        }
    }
}
