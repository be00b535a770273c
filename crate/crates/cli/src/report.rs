//! Report documents: a header, the check records and a summary, written as
//! JSON or as a flat CSV table.

use std::collections::BTreeMap;
use std::io::Write;

use normexp_core::check::{CheckRecord, Status};
use serde::{Deserialize, Serialize};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Header {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub group: Option<String>,
    pub n: Option<usize>,
    pub class_count: Option<usize>,
    pub seed: u64,
    pub tolerances: BTreeMap<String, f64>,
    /// RFC 3339; the only field that differs between identical runs.
    pub timestamp: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub status: Status,
    pub pass_count: usize,
    pub fail_count: usize,
    pub skipped_count: usize,
    pub info_count: usize,
    pub min_margin: Option<f64>,
}

impl Summary {
    pub fn of(records: &[CheckRecord]) -> Self {
        let count = |s: Status| records.iter().filter(|r| r.status == s).count();
        let fail_count = count(Status::Fail);
        Summary {
            status: if fail_count == 0 { Status::Pass } else { Status::Fail },
            pass_count: count(Status::Pass),
            fail_count,
            skipped_count: count(Status::Skipped),
            info_count: count(Status::Info),
            min_margin: records
                .iter()
                .filter(|r| matches!(r.status, Status::Pass | Status::Fail))
                .map(|r| r.margin)
                .reduce(f64::min),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub header: Header,
    pub records: Vec<CheckRecord>,
    /// Command-specific payload (tables, spectra, census data).
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub data: serde_json::Value,
    pub summary: Summary,
}

impl ReportDocument {
    pub fn new(header: Header, records: Vec<CheckRecord>, data: serde_json::Value) -> Self {
        let summary = Summary::of(&records);
        ReportDocument {
            header,
            records,
            data,
            summary,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.fail_count == 0
    }

    /// Everything except the header, serialized; identical across runs with
    /// the same configuration.
    pub fn body_json(&self) -> String {
        serde_json::to_string(&(&self.records, &self.data, &self.summary)).expect("serializable")
    }

    pub fn write_json<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        serde_json::to_writer_pretty(&mut out, self)?;
        writeln!(out)
    }

    /// One row per record: `check, group, n, inputs, lhs, rhs, margin, pass`.
    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["check", "group", "n", "inputs", "lhs", "rhs", "margin", "pass"])?;
        for r in &self.records {
            let status = serde_json::to_value(r.status).expect("serializable");
            w.write_record([
                r.check.clone(),
                r.group.clone(),
                r.n.to_string(),
                r.inputs.clone(),
                r.lhs.to_string(),
                r.rhs.to_string(),
                r.margin.to_string(),
                status.as_str().unwrap_or_default().to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn header() -> Header {
        Header {
            tool: "normexp".into(),
            version: TOOL_VERSION.into(),
            command: "test".into(),
            group: Some("A5".into()),
            n: Some(60),
            class_count: Some(5),
            seed: 1,
            tolerances: BTreeMap::new(),
            timestamp: "t".into(),
        }
    }

    #[test]
    fn summary_status_tracks_failures() {
        let ok = CheckRecord::at_least("c", "A5", 60, "x".into(), 2.0, 1.0, 0.0);
        let bad = CheckRecord::at_least("c", "A5", 60, "y".into(), 0.0, 1.0, 0.0);
        let doc = ReportDocument::new(header(), vec![ok.clone()], serde_json::Value::Null);
        assert!(doc.passed());
        assert_eq!(doc.summary.status, Status::Pass);
        let doc = ReportDocument::new(header(), vec![ok, bad], serde_json::Value::Null);
        assert_eq!(doc.summary.status, Status::Fail);
        assert_eq!(doc.summary.min_margin, Some(-1.0));
    }

    #[test]
    fn csv_and_json_shapes() {
        let rec = CheckRecord::at_most("mix", "A5", 60, "a,b".into(), 0.5, 1.0, 0.0);
        let doc = ReportDocument::new(header(), vec![rec], serde_json::json!({"k": 1}));
        let mut buf = Vec::new();
        doc.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), "check,group,n,inputs,lhs,rhs,margin,pass");
        assert_eq!(text.lines().nth(1).unwrap(), "mix,A5,60,\"a,b\",0.5,1,0.5,PASS");
        let mut buf = Vec::new();
        doc.write_json(&mut buf).unwrap();
        let back: ReportDocument = serde_json::from_slice(&buf).unwrap();
        assert_eq!(back, doc);
    }
}
