//! Verification reports: JSON, CSV and Markdown renderings of check records.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use unionfam::bounds::Verdict;
use unionfam::FamilyRecord;

pub const SCHEMA_VERSION: u32 = 1;

/// A parameter value: integers sort numerically, before text.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Param {
    Int(i64),
    Text(String),
}

impl std::fmt::Display for Param {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Param::Int(v) => write!(f, "{v}"),
            Param::Text(s) => write!(f, "{s}"),
        }
    }
}

/// One check: what was tested, against which statement, and how it went.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub check: String,
    pub anchor: String,
    pub params: BTreeMap<String, Param>,
    pub expected: String,
    pub actual: String,
    #[serde(flatten)]
    pub verdict: Verdict,
}

impl Record {
    pub fn new(check: &str, anchor: &str, params: &[(&str, i64)], expected: impl ToString, actual: impl ToString, verdict: Verdict) -> Self {
        Record {
            check: check.to_string(),
            anchor: anchor.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), Param::Int(*v))).collect(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            verdict,
        }
    }

    /// Pass iff `expected == actual` as strings.
    pub fn compare(check: &str, anchor: &str, params: &[(&str, i64)], expected: impl ToString, actual: impl ToString) -> Self {
        let (e, a) = (expected.to_string(), actual.to_string());
        let v = Verdict::from_bool(e == a);
        Record::new(check, anchor, params, e, a, v)
    }

    pub fn skipped(check: &str, anchor: &str, params: &[(&str, i64)], expected: impl ToString, reason: impl ToString) -> Self {
        Record::new(check, anchor, params, expected, "-", Verdict::Skipped(reason.to_string()))
    }

    pub fn with_text(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), Param::Text(value.to_string()));
        self
    }

    pub fn params_string(&self) -> String {
        self.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
    }
}

/// A family attached to a report: a witness, an extremal example or a counterexample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelledFamily {
    pub label: String,
    pub family: FamilyRecord,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool: String,
    pub tool_version: String,
    pub config: serde_json::Value,
    pub records: Vec<Record>,
    pub summary: Summary,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub families: Vec<LabelledFamily>,
}

impl Report {
    pub fn new(config: serde_json::Value, mut records: Vec<Record>, mut families: Vec<LabelledFamily>) -> Self {
        records.sort_by(|a, b| (&a.check, &a.params, &a.expected, &a.actual).cmp(&(&b.check, &b.params, &b.expected, &b.actual)));
        families.sort_by(|a, b| a.label.cmp(&b.label));
        let mut summary = Summary { total: records.len(), ..Default::default() };
        for r in &records {
            match r.verdict {
                Verdict::Pass => summary.pass += 1,
                Verdict::Fail => summary.fail += 1,
                Verdict::Skipped(_) => summary.skipped += 1,
            }
        }
        Report {
            schema_version: SCHEMA_VERSION,
            tool: "unionfam".into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            config,
            records,
            summary,
            families,
        }
    }

    pub fn failed(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["check", "anchor", "params", "expected", "actual", "verdict", "reason"]).expect("in-memory write");
        for r in &self.records {
            let (v, reason) = verdict_parts(&r.verdict);
            w.write_record([&r.check, &r.anchor, &r.params_string(), &r.expected, &r.actual, v, reason])
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# unionfam report (schema {}, version {})\n", self.schema_version, self.tool_version);
        let m = &self.summary;
        let _ = writeln!(s, "{} checks: {} pass, {} fail, {} skipped\n", m.total, m.pass, m.fail, m.skipped);
        let _ = writeln!(s, "| check | anchor | params | expected | actual | verdict |");
        let _ = writeln!(s, "|---|---|---|---|---|---|");
        for r in &self.records {
            let (v, reason) = verdict_parts(&r.verdict);
            let v = if reason.is_empty() { v.to_string() } else { format!("{v} ({reason})") };
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | {} | {} |",
                r.check,
                md_escape(&r.anchor),
                r.params_string(),
                md_escape(&r.expected),
                md_escape(&r.actual),
                md_escape(&v)
            );
        }
        s
    }
}

fn verdict_parts(v: &Verdict) -> (&'static str, &str) {
    match v {
        Verdict::Pass => ("pass", ""),
        Verdict::Fail => ("fail", ""),
        Verdict::Skipped(r) => ("skipped", r),
    }
}

fn md_escape(s: &str) -> String {
    s.replace('|', "\\|")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_and_counted() {
        let recs = vec![
            Record::compare("b", "x", &[("n", 2)], 1, 1),
            Record::compare("a", "x", &[("n", 10)], 1, 2),
            Record::skipped("a", "x", &[("n", 9)], 1, "no"),
        ];
        let r = Report::new(serde_json::json!({}), recs, vec![]);
        assert_eq!(r.records[0].params["n"], Param::Int(9));
        assert_eq!(r.records[2].check, "b");
        assert_eq!(r.summary, Summary { total: 3, pass: 1, fail: 1, skipped: 1 });
        assert!(r.failed());
        let json = r.to_json();
        assert!(json.contains("\"verdict\": \"skipped\""));
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert_eq!(r.to_csv().lines().count(), 4);
        assert!(r.to_markdown().contains("| a | x | n=9 | 1 | - | skipped (no) |"));
    }
}
