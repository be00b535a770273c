//! Check records shared by every inequality checker.

use serde::{Deserialize, Serialize};

/// Default additive slack for inequality checks.
pub const SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    /// Hypothesis of the statement not met; nothing asserted.
    Skipped,
    /// Measurement only.
    Info,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
            Status::Info => "INFO",
        })
    }
}

/// One evaluated inequality. `margin` is positive when the inequality holds
/// with room to spare, whichever direction it points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: String,
    pub group: String,
    pub n: usize,
    pub inputs: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckRecord {
    #[allow(clippy::too_many_arguments)]
    fn new(check: &str, group: &str, n: usize, inputs: String, lhs: f64, rhs: f64, margin: f64, status: Status) -> Self {
        CheckRecord {
            check: check.to_string(),
            group: group.to_string(),
            n,
            inputs,
            lhs,
            rhs,
            margin,
            status,
            note: None,
        }
    }

    /// Passes iff `lhs ≥ rhs − slack`.
    pub fn at_least(check: &str, group: &str, n: usize, inputs: String, lhs: f64, rhs: f64, slack: f64) -> Self {
        let status = if lhs >= rhs - slack { Status::Pass } else { Status::Fail };
        Self::new(check, group, n, inputs, lhs, rhs, lhs - rhs, status)
    }

    /// Passes iff `lhs ≤ rhs + slack`.
    pub fn at_most(check: &str, group: &str, n: usize, inputs: String, lhs: f64, rhs: f64, slack: f64) -> Self {
        let status = if lhs <= rhs + slack { Status::Pass } else { Status::Fail };
        Self::new(check, group, n, inputs, lhs, rhs, rhs - lhs, status)
    }

    /// Passes iff `lhs < rhs + slack`.
    pub fn below(check: &str, group: &str, n: usize, inputs: String, lhs: f64, rhs: f64, slack: f64) -> Self {
        let status = if lhs < rhs + slack { Status::Pass } else { Status::Fail };
        Self::new(check, group, n, inputs, lhs, rhs, rhs - lhs, status)
    }

    /// Passes iff `lhs > rhs − slack`.
    pub fn above(check: &str, group: &str, n: usize, inputs: String, lhs: f64, rhs: f64, slack: f64) -> Self {
        let status = if lhs > rhs - slack { Status::Pass } else { Status::Fail };
        Self::new(check, group, n, inputs, lhs, rhs, lhs - rhs, status)
    }

    pub fn with_status(check: &str, group: &str, n: usize, inputs: String, lhs: f64, rhs: f64, status: Status) -> Self {
        Self::new(check, group, n, inputs, lhs, rhs, lhs - rhs, status)
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Demotes to `Fail` unless `ok`.
    pub fn and(mut self, ok: bool, why: &str) -> Self {
        if !ok && self.status != Status::Fail {
            self.status = Status::Fail;
            self.note = Some(why.to_string());
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// Records plus aggregate statistics; failures are copied out as
/// counterexamples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthReport {
    pub records: Vec<CheckRecord>,
    pub pass_count: usize,
    pub fail_count: usize,
    pub skipped_count: usize,
    /// Smallest margin among asserted (PASS/FAIL) records.
    pub min_margin: Option<f64>,
    pub counterexamples: Vec<CheckRecord>,
}

impl GrowthReport {
    pub fn from_records(records: Vec<CheckRecord>) -> Self {
        let count = |s: Status| records.iter().filter(|r| r.status == s).count();
        let min_margin = records
            .iter()
            .filter(|r| matches!(r.status, Status::Pass | Status::Fail))
            .map(|r| r.margin)
            .reduce(f64::min);
        GrowthReport {
            pass_count: count(Status::Pass),
            fail_count: count(Status::Fail),
            skipped_count: count(Status::Skipped),
            min_margin,
            counterexamples: records.iter().filter(|r| r.status == Status::Fail).cloned().collect(),
            records,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.fail_count == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn directions() {
        assert_eq!(CheckRecord::at_least("c", "G", 1, String::new(), 2.0, 1.0, 0.0).status, Status::Pass);
        assert_eq!(CheckRecord::at_least("c", "G", 1, String::new(), 1.0, 2.0, 0.0).status, Status::Fail);
        assert_eq!(CheckRecord::at_most("c", "G", 1, String::new(), 1.0, 1.0, 0.0).status, Status::Pass);
        assert_eq!(CheckRecord::below("c", "G", 1, String::new(), 1.0, 1.0, 0.0).status, Status::Fail);
        assert_eq!(CheckRecord::above("c", "G", 1, String::new(), 1.0, 1.0, 1e-12).status, Status::Pass);
        let r = CheckRecord::at_most("c", "G", 1, String::new(), 3.0, 1.0, 0.0);
        assert_eq!(r.margin, -2.0);
    }

    #[test]
    fn report_aggregates() {
        let recs = vec![
            CheckRecord::at_least("c", "G", 1, "a".into(), 2.0, 1.0, 0.0),
            CheckRecord::at_least("c", "G", 1, "b".into(), 0.5, 1.0, 0.0),
            CheckRecord::with_status("c", "G", 1, "c".into(), 0.0, 0.0, Status::Skipped),
        ];
        let rep = GrowthReport::from_records(recs);
        assert_eq!((rep.pass_count, rep.fail_count, rep.skipped_count), (1, 1, 1));
        assert_eq!(rep.min_margin, Some(-0.5));
        assert_eq!(rep.counterexamples.len(), 1);
        assert!(!rep.all_passed());
    }
}
