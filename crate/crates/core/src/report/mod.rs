//! Machine-readable reports and the experiment runners that fill them.

mod config;
mod example;
mod run;

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::MetricSpace;
use crate::scalar::{NumberRecord, Scalar};
use crate::verdict::{CheckVerdict, Condition, EpsDeltaProfile, Witness};

pub use config::RunConfig;
pub use example::run_reproduce_example;
pub use run::{run_axioms, run_classify, run_seq, run_solve};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntryRecord {
    pub eps: f64,
    pub best_delta: Option<f64>,
    pub delta_unbounded: bool,
    pub shift: Option<usize>,
    pub lag: Option<usize>,
    pub eta: Option<f64>,
    pub verdict: String,
    pub witness_id: Option<String>,
    pub evaluated: usize,
    pub indeterminate: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileRecord {
    pub condition: String,
    pub entries: Vec<EntryRecord>,
}

/// A single pass/fail style outcome outside any profile.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub name: String,
    pub verdict: String,
    pub witness_id: Option<String>,
    #[serde(default)]
    pub values: Vec<MeasuredRecord>,
    #[serde(default)]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasuredRecord {
    pub label: String,
    pub value: NumberRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub id: String,
    pub condition: Condition,
    pub points: Vec<String>,
    pub indices: Vec<usize>,
    pub measured: Vec<MeasuredRecord>,
}

/// A named table of series values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<serde_json::Value>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub started_unix_ms: u128,
    pub wall_clock_ms: u128,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool: String,
    pub command: String,
    pub config: RunConfig,
    pub profiles: Vec<ProfileRecord>,
    pub verdicts: Vec<VerdictRecord>,
    pub witnesses: Vec<WitnessRecord>,
    pub diagnostics: Vec<Diagnostic>,
    #[serde(default)]
    pub timing: Option<Timing>,
}

impl Report {
    pub fn new(command: &str, config: RunConfig) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            tool: format!("contraction-lab {}", env!("CARGO_PKG_VERSION")),
            command: command.to_string(),
            config,
            profiles: Vec::new(),
            verdicts: Vec::new(),
            witnesses: Vec::new(),
            diagnostics: Vec::new(),
            timing: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    /// Flattened profile rows, one per entry, followed by one row per
    /// standalone verdict.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "condition",
            "eps",
            "delta",
            "N",
            "nu",
            "eta",
            "verdict",
            "witness_id",
        ])?;
        let opt = |v: Option<String>| v.unwrap_or_default();
        for p in &self.profiles {
            for e in &p.entries {
                w.write_record([
                    p.condition.clone(),
                    e.eps.to_string(),
                    if e.delta_unbounded {
                        "unbounded".to_string()
                    } else {
                        opt(e.best_delta.map(|d| d.to_string()))
                    },
                    opt(e.shift.map(|n| n.to_string())),
                    opt(e.lag.map(|n| n.to_string())),
                    opt(e.eta.map(|n| n.to_string())),
                    e.verdict.clone(),
                    opt(e.witness_id.clone()),
                ])?;
            }
        }
        for v in &self.verdicts {
            w.write_record([
                &v.name,
                "",
                "",
                "",
                "",
                "",
                &v.verdict,
                v.witness_id.as_deref().unwrap_or(""),
            ])?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::io("csv buffer", e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn witness(&self, id: &str) -> Option<&WitnessRecord> {
        self.witnesses.iter().find(|w| w.id == id)
    }

    pub fn diagnostic(&self, name: &str) -> Option<&Diagnostic> {
        self.diagnostics.iter().find(|d| d.name == name)
    }

    pub fn profile(&self, condition: &str) -> Option<&ProfileRecord> {
        self.profiles.iter().find(|p| p.condition == condition)
    }

    pub fn verdict(&self, name: &str) -> Option<&VerdictRecord> {
        self.verdicts.iter().find(|v| v.name == name)
    }

    /// 0 when every outcome is consistent, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        let bad = |v: &str| v != "consistent" && v != "converged";
        let any = self
            .profiles
            .iter()
            .flat_map(|p| &p.entries)
            .any(|e| bad(&e.verdict))
            || self.verdicts.iter().any(|v| bad(&v.verdict));
        if any {
            2
        } else {
            0
        }
    }

    pub(crate) fn add_diagnostic(
        &mut self,
        name: &str,
        columns: &[&str],
        rows: Vec<Vec<serde_json::Value>>,
    ) {
        self.diagnostics.push(Diagnostic {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows,
        });
    }

    pub(crate) fn add_witness<S: MetricSpace>(
        &mut self,
        space: &S,
        w: &Witness<S::Point, S::Dist>,
    ) -> String {
        let id = format!("w{}", self.witnesses.len() + 1);
        self.witnesses.push(WitnessRecord {
            id: id.clone(),
            condition: w.condition.clone(),
            points: w.points.iter().map(|p| space.format_point(p)).collect(),
            indices: w.indices.clone(),
            measured: w
                .measured
                .iter()
                .map(|m| measured(&m.label, &m.value))
                .collect(),
        });
        id
    }

    pub(crate) fn add_verdict<S: MetricSpace>(
        &mut self,
        space: &S,
        name: &str,
        verdict: &CheckVerdict<S::Point, S::Dist>,
        values: Vec<MeasuredRecord>,
    ) {
        let witness_id = verdict.witness().map(|w| self.add_witness(space, w));
        let notes = verdict.stats().map(|s| s.notes.clone()).unwrap_or_default();
        self.verdicts.push(VerdictRecord {
            name: name.to_string(),
            verdict: verdict.label().to_string(),
            witness_id,
            values,
            notes,
        });
    }

    pub(crate) fn add_profile<S: MetricSpace>(
        &mut self,
        space: &S,
        profile: &EpsDeltaProfile<S::Point, S::Dist>,
    ) {
        let mut entries = Vec::with_capacity(profile.entries.len());
        for e in &profile.entries {
            let witness_id = e.verdict.witness().map(|w| self.add_witness(space, w));
            let (evaluated, indeterminate) = e
                .verdict
                .stats()
                .map(|s| (s.evaluated, s.indeterminate))
                .unwrap_or((0, 0));
            entries.push(EntryRecord {
                eps: e.eps,
                best_delta: e.best_delta,
                delta_unbounded: e.delta_unbounded,
                shift: e.shift,
                lag: e.lag,
                eta: e.eta,
                verdict: e.verdict.label().to_string(),
                witness_id,
                evaluated,
                indeterminate,
            });
        }
        self.profiles.push(ProfileRecord {
            condition: profile.condition.clone(),
            entries,
        });
    }
}

pub(crate) fn measured<D: Scalar>(label: &str, value: &D) -> MeasuredRecord {
    MeasuredRecord {
        label: label.to_string(),
        value: value.to_record(),
    }
}

/// JSON cell for a distance value.
pub(crate) fn cell<D: Scalar>(value: &D) -> serde_json::Value {
    serde_json::to_value(value.to_record()).expect("number records serialize")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::parse(s, "expected json or csv")),
        }
    }
}

/// Writes the report to `out`, or to standard output when `out` is `None`.
pub fn emit_report(report: &Report, format: Format, out: Option<&Path>) -> Result<()> {
    let text = match format {
        Format::Json => report.to_json()?,
        Format::Csv => report.to_csv()?,
    };
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Error::io(path.display().to_string(), e))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Error::io("stdout", e))
        }
    }
}
