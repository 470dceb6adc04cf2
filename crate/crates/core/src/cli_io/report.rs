use std::io::Write;

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::augdual::AugDualReport;
use crate::cone::Point;
use crate::scalarizers::{ExtReal, MonotoneCheck, ScalarizerSpec};
use crate::separation::{ConditionReport, SeparationCertificate};
use crate::vopt::{SolutionSet, Theorem, TheoremReport};

/// Ordered by severity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Success,
    HypothesisFailed,
    VerificationFailed,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Success => 0,
            Outcome::HypothesisFailed => 2,
            Outcome::VerificationFailed => 3,
        }
    }

    /// The worse of the two outcomes.
    pub fn worst(self, other: Outcome) -> Outcome {
        self.max(other)
    }
}

/// One flat per-label record; the CSV view of a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabelRow {
    pub label: String,
    pub f: Point,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<ExtReal>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub in_eff: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub in_weff: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub in_peff: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalarSummary {
    pub scalarizer: ScalarizerSpec,
    pub a: Point,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<Point>,
    pub optimum: ExtReal,
    pub minimizers: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum TheoremOutcome {
    Certified {
        report: TheoremReport,
    },
    Refuted {
        report: TheoremReport,
    },
    HypothesisFailed {
        theorem: Theorem,
        xbar: String,
        condition: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        witness: Option<Point>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotoneSummary {
    pub mode: crate::scalarizers::MonotoneMode,
    pub check: MonotoneCheck,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub seed: u64,
    pub outcome: Outcome,
    pub rows: Vec<LabelRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub solution_sets: Vec<SolutionSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scalar: Option<ScalarSummary>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub aug_dual: Vec<AugDualReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub monotonicity: Vec<MonotoneSummary>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub conditions: Vec<ConditionReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<SeparationCertificate>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub theorems: Vec<TheoremOutcome>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// Wall-clock milliseconds; only present when requested, since it breaks
    /// byte-for-byte reproducibility.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl RunReport {
    pub fn new(command: &str, seed: u64) -> RunReport {
        RunReport {
            command: command.to_string(),
            seed,
            outcome: Outcome::Success,
            rows: Vec::new(),
            solution_sets: Vec::new(),
            scalar: None,
            aug_dual: Vec::new(),
            monotonicity: Vec::new(),
            conditions: Vec::new(),
            certificate: None,
            theorems: Vec::new(),
            notes: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<RunReport, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Schema {
            path: String::new(),
            message: e.to_string(),
        })
    }

    /// Plot-ready table: `label, f1..fn, value, in_eff, in_weff, in_peff`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), CliError> {
        let n = self.rows.first().map_or(0, |r| r.f.dim());
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["label".to_string()];
        header.extend((1..=n).map(|i| format!("f{i}")));
        header.extend(["value", "in_eff", "in_weff", "in_peff"].map(String::from));
        w.write_record(&header).map_err(csv_err)?;
        let flag = |b: Option<bool>| b.map_or(String::new(), |b| b.to_string());
        for r in &self.rows {
            let mut rec = vec![r.label.clone()];
            rec.extend(r.f.coords().iter().map(|v| format!("{v:?}")));
            rec.push(r.value.map_or(String::new(), |v| match v {
                ExtReal::Finite(x) => format!("{x:?}"),
                ExtReal::PosInf => "inf".into(),
            }));
            rec.extend([flag(r.in_eff), flag(r.in_weff), flag(r.in_peff)]);
            w.write_record(&rec).map_err(csv_err)?;
        }
        w.flush().map_err(|e| CliError::Io {
            path: "<output>".into(),
            source: e,
        })
    }

    /// Inverse of [`RunReport::write_csv`] for the row table.
    pub fn rows_from_csv(text: &str) -> Result<Vec<LabelRow>, CliError> {
        let mut rd = csv::Reader::from_reader(text.as_bytes());
        let n = rd.headers().map_err(csv_err)?.len().saturating_sub(5);
        let flag = |s: &str| -> Result<Option<bool>, CliError> {
            match s {
                "" => Ok(None),
                "true" => Ok(Some(true)),
                "false" => Ok(Some(false)),
                _ => Err(CliError::Schema {
                    path: String::new(),
                    message: format!("bad flag {s:?}"),
                }),
            }
        };
        let num = |s: &str| -> Result<f64, CliError> {
            s.parse().map_err(|_| CliError::Schema {
                path: String::new(),
                message: format!("bad number {s:?}"),
            })
        };
        let mut rows = Vec::new();
        for rec in rd.records() {
            let rec = rec.map_err(csv_err)?;
            let f = (1..=n).map(|i| num(&rec[i])).collect::<Result<Vec<_>, _>>()?;
            let value = match &rec[n + 1] {
                "" => None,
                "inf" => Some(ExtReal::PosInf),
                s => Some(ExtReal::Finite(num(s)?)),
            };
            rows.push(LabelRow {
                label: rec[0].to_string(),
                f: Point::new(f).map_err(CliError::Core)?,
                value,
                in_eff: flag(&rec[n + 2])?,
                in_weff: flag(&rec[n + 3])?,
                in_peff: flag(&rec[n + 4])?,
            });
        }
        Ok(rows)
    }
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Schema {
        path: String::new(),
        message: e.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> RunReport {
        let mut r = RunReport::new("report", 7);
        r.rows = vec![
            LabelRow {
                label: "a,b".into(),
                f: Point::from([0.1, 2.0 / 3.0]),
                value: Some(ExtReal::Finite(-1.5e-7)),
                in_eff: Some(true),
                in_weff: Some(true),
                in_peff: None,
            },
            LabelRow {
                label: "c".into(),
                f: Point::from([1.0, -3.0]),
                value: Some(ExtReal::PosInf),
                in_eff: Some(false),
                in_weff: None,
                in_peff: Some(false),
            },
        ];
        r
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        assert_eq!(RunReport::from_json(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn csv_round_trip() {
        let r = sample();
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("label,f1,f2,value,in_eff,in_weff,in_peff\n"));
        assert_eq!(RunReport::rows_from_csv(&text).unwrap(), r.rows);
    }

    #[test]
    fn outcome_ordering() {
        assert_eq!(
            Outcome::Success.worst(Outcome::HypothesisFailed),
            Outcome::HypothesisFailed
        );
        assert_eq!(
            Outcome::VerificationFailed.worst(Outcome::HypothesisFailed),
            Outcome::VerificationFailed
        );
    }
}
