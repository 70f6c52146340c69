//! JSON report types. Every float is rounded to 12 significant digits when
//! the report is built, so `parse(emit(r)) == r`.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::analysis::ExactnessReport;
use crate::basis::BasisSummary;
use crate::moment::TemplateExport;
use crate::sdp::{Sense, Status, ThetaSolution};

use super::input::Instance;

pub const SCHEMA: u32 = 1;

pub fn sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

pub trait Report: Serialize + DeserializeOwned {
    fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// `key: value` lines for the top-level fields.
    fn to_text(&self) -> String {
        let value = serde_json::to_value(self).expect("reports serialize");
        let mut lines = Vec::new();
        if let serde_json::Value::Object(map) = value {
            for (k, v) in map {
                if k == "schema" {
                    continue;
                }
                let shown = match v {
                    serde_json::Value::String(s) => s,
                    other => other.to_string(),
                };
                lines.push(format!("{k}: {shown}"));
            }
        }
        lines.join("\n")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceInfo {
    pub name: String,
    /// `graph` or `matroid`.
    pub kind: String,
    pub elements: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<usize>,
    pub cycle_rank: usize,
    pub cocycle_rank: usize,
}

impl InstanceInfo {
    pub fn of(inst: &Instance) -> InstanceInfo {
        let m = inst.matroid();
        InstanceInfo {
            name: inst.name.clone(),
            kind: if inst.graph().is_some() { "graph" } else { "matroid" }.into(),
            elements: m.m(),
            vertices: inst.graph().map(|g| g.n()),
            cycle_rank: m.cycle_rank(),
            cocycle_rank: m.cocycle_rank(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub schema: u32,
    pub command: String,
    pub instance: InstanceInfo,
    /// `maxcut` for graphs, `linear` for matroids.
    pub objective: String,
    pub k: usize,
    pub sense: Sense,
    pub bound: f64,
    pub value: f64,
    pub status: Status,
    pub iterations: usize,
    pub side: usize,
    pub x: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub brute: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gap: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gw: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

impl BoundReport {
    pub(super) fn new(instance: InstanceInfo, k: usize, sense: Sense, timestamp: Option<u64>) -> BoundReport {
        BoundReport {
            schema: SCHEMA,
            command: "bound".into(),
            instance,
            objective: "linear".into(),
            k,
            sense,
            bound: 0.0,
            value: 0.0,
            status: Status::Optimal,
            iterations: 0,
            side: 0,
            x: Vec::new(),
            brute: None,
            gap: None,
            gw: None,
            q2: None,
            timestamp,
        }
    }

    pub(super) fn set_solution(&mut self, s: &ThetaSolution) {
        self.bound = sig12(s.bound);
        self.value = sig12(s.value);
        self.status = s.status;
        self.iterations = s.iterations;
        self.side = s.side;
        self.x = s.x.iter().map(|&v| sig12(v)).collect();
    }

    /// Records the exact optimum and the gap `|bound - brute|` (the bound is on the loose side).
    pub(super) fn set_brute(&mut self, brute: f64) {
        self.brute = Some(sig12(brute));
        let gap = match self.sense {
            Sense::Max => self.bound - brute,
            Sense::Min => brute - self.bound,
        };
        self.gap = Some(sig12(gap));
    }
}

impl Report for BoundReport {}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactReport {
    pub schema: u32,
    pub command: String,
    pub instance: InstanceInfo,
    #[serde(flatten)]
    pub report: ExactnessReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

impl Report for ExactReport {}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisReport {
    pub schema: u32,
    pub command: String,
    pub instance: InstanceInfo,
    pub basis: BasisSummary,
    /// Elements left after removing coloops and merging coparallel pairs.
    pub reduced_elements: usize,
    pub side: usize,
    pub nvars: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub template: Option<TemplateExport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

impl Report for BasisReport {}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub schema: u32,
    pub command: String,
    pub instance: InstanceInfo,
    pub k: usize,
    pub theta: f64,
    pub gw: f64,
    /// Absent when the graph is too large for the complete-graph lift.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q2: Option<f64>,
    pub brute: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

impl Report for CompareReport {}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RowResult {
    pub name: String,
    pub expected: String,
    pub measured: String,
    pub pass: bool,
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReproReport {
    pub schema: u32,
    pub command: String,
    pub all_pass: bool,
    pub rows: Vec<RowResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

impl Report for ReproReport {
    fn to_text(&self) -> String {
        let width = self.rows.iter().map(|r| r.name.len()).max().unwrap_or(4).max(4);
        let mut lines = vec![format!("{:<width$}  {:<4}  {:>7}  expected | measured", "row", "", "time")];
        for r in &self.rows {
            lines.push(format!(
                "{:<width$}  {:<4}  {:>6.1}s  {} | {}",
                r.name,
                if r.pass { "PASS" } else { "FAIL" },
                r.seconds,
                r.expected,
                r.measured
            ));
        }
        lines.push(if self.all_pass { "all rows pass" } else { "some rows FAIL" }.to_string());
        lines.join("\n")
    }
}
