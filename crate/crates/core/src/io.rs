//! Instance and solution files.
//!
//! Both are JSON documents tagged with `"version": "slc-1"`. An instance:
//!
//! ```json
//! {
//!   "version": "slc-1",
//!   "machines": 2,
//!   "jobs": 3,
//!   "constraints": [
//!     { "coeffs": [1.0, 2.0, 1.0], "sense": ">=", "rhs": 4.0 },
//!     { "coeffs": [1.0, 0.0, 0.0], "sense": "<=", "rhs": 3.0 }
//!   ],
//!   "job_names": ["a", "b", "c"]
//! }
//! ```
//!
//! `sense` is one of `">="`, `"<="`, `"="`. `job_names` is optional. Floats are
//! written in shortest round-trip form, so reading a file back yields the same
//! bits.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SlcError};
use crate::model::{
    ConstraintSystem, Instance, ProcessingTimes, Row, Schedule, Sense, Solution, SolveReport,
    Status,
};

pub const FORMAT_VERSION: &str = "slc-1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RowFile {
    pub coeffs: Vec<f64>,
    pub sense: Sense,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub version: String,
    pub machines: usize,
    pub jobs: usize,
    pub constraints: Vec<RowFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub job_names: Option<Vec<String>>,
}

impl InstanceFile {
    pub fn from_instance(inst: &Instance) -> Self {
        InstanceFile {
            version: FORMAT_VERSION.to_string(),
            machines: inst.machines(),
            jobs: inst.n_jobs(),
            constraints: inst
                .constraints()
                .rows()
                .iter()
                .map(|r| RowFile {
                    coeffs: r.coeffs.clone(),
                    sense: r.sense,
                    rhs: r.rhs,
                })
                .collect(),
            job_names: None,
        }
    }

    pub fn to_instance(&self) -> Result<Instance> {
        check_version(&self.version)?;
        if self.machines == 0 {
            return Err(parse_error("machines", "must be at least 1"));
        }
        if self.jobs == 0 {
            return Err(parse_error("jobs", "must be at least 1"));
        }
        if let Some(names) = &self.job_names {
            if names.len() != self.jobs {
                return Err(parse_error(
                    "job_names",
                    format!("expected {} names, found {}", self.jobs, names.len()),
                ));
            }
        }
        let mut rows = Vec::with_capacity(self.constraints.len());
        for (i, r) in self.constraints.iter().enumerate() {
            if r.coeffs.len() != self.jobs {
                return Err(parse_error(
                    format!("constraints[{i}].coeffs"),
                    format!(
                        "row {i}: expected {} coefficients, found {}",
                        self.jobs,
                        r.coeffs.len()
                    ),
                ));
            }
            if let Some(j) = r.coeffs.iter().position(|c| !c.is_finite()) {
                return Err(parse_error(
                    format!("constraints[{i}].coeffs[{j}]"),
                    "number is not finite",
                ));
            }
            if !r.rhs.is_finite() {
                return Err(parse_error(
                    format!("constraints[{i}].rhs"),
                    "number is not finite",
                ));
            }
            rows.push(Row::new(r.coeffs.clone(), r.sense, r.rhs));
        }
        Instance::new(self.machines, ConstraintSystem::new(self.jobs, rows)?)
    }
}

/// A solver report in file form. Arrays are empty when no schedule exists.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionFile {
    pub version: String,
    pub algorithm: String,
    pub status: Status,
    pub makespan: Option<f64>,
    pub ratio_guarantee: Option<f64>,
    pub lower_bound: Option<f64>,
    pub processing_times: Vec<f64>,
    pub assignment: Vec<usize>,
    pub machine_loads: Vec<f64>,
}

impl SolutionFile {
    pub fn from_report(report: &SolveReport) -> Self {
        let (times, assignment, loads) = match &report.solution {
            Some(s) => (
                s.times.values().to_vec(),
                s.schedule.assignment().to_vec(),
                s.schedule.loads().to_vec(),
            ),
            None => (Vec::new(), Vec::new(), Vec::new()),
        };
        SolutionFile {
            version: FORMAT_VERSION.to_string(),
            algorithm: report.algorithm.clone(),
            status: report.status,
            makespan: report.makespan(),
            ratio_guarantee: report.ratio_guarantee,
            lower_bound: report.lower_bound,
            processing_times: times,
            assignment,
            machine_loads: loads,
        }
    }

    /// Rebuilds the report exactly as written. Loads and makespan are taken
    /// from the file, not recomputed, so that verification can catch edits.
    pub fn to_report(&self) -> Result<SolveReport> {
        check_version(&self.version)?;
        let solution = match self.makespan {
            None => None,
            Some(makespan) => {
                let times = ProcessingTimes::new(self.processing_times.clone())
                    .map_err(|e| parse_error("processing_times", e.to_string()))?;
                let schedule = Schedule::from_parts(
                    self.assignment.clone(),
                    self.machine_loads.clone(),
                    makespan,
                );
                Some(Solution { times, schedule })
            }
        };
        Ok(SolveReport {
            algorithm: self.algorithm.clone(),
            status: self.status,
            solution,
            lower_bound: self.lower_bound,
            ratio_guarantee: self.ratio_guarantee,
        })
    }
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    parse_instance_file(text)?.to_instance()
}

pub fn parse_instance_file(text: &str) -> Result<InstanceFile> {
    serde_json::from_str(text).map_err(json_error)
}

pub fn serialize_instance(inst: &Instance) -> String {
    to_json(&InstanceFile::from_instance(inst))
}

pub fn parse_solution(text: &str) -> Result<SolutionFile> {
    serde_json::from_str(text).map_err(json_error)
}

pub fn serialize_solution(report: &SolveReport) -> String {
    to_json(&SolutionFile::from_report(report))
}

pub fn read_instance(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path)?;
    parse_instance(&text).map_err(|e| in_file(path, e))
}

pub fn read_solution(path: &Path) -> Result<SolutionFile> {
    let text = std::fs::read_to_string(path)?;
    parse_solution(&text).map_err(|e| in_file(path, e))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data always serializes");
    s.push('\n');
    s
}

fn check_version(version: &str) -> Result<()> {
    if version == FORMAT_VERSION {
        Ok(())
    } else {
        Err(parse_error(
            "version",
            format!("unsupported version {version:?}, expected {FORMAT_VERSION:?}"),
        ))
    }
}

fn parse_error(path: impl Into<String>, message: impl Into<String>) -> SlcError {
    SlcError::Parse {
        path: path.into(),
        message: message.into(),
    }
}

fn json_error(e: serde_json::Error) -> SlcError {
    parse_error(
        format!("line {} column {}", e.line(), e.column()),
        e.to_string(),
    )
}

fn in_file(path: &Path, e: SlcError) -> SlcError {
    match e {
        SlcError::Parse {
            path: inner,
            message,
        } => SlcError::Parse {
            path: format!("{}: {inner}", path.display()),
            message,
        },
        other => other,
    }
}
