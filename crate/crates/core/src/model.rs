//! Problem data, schedules, solver reports and solution verification.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SlcError};
use crate::tolerance::{approx_eq, feas_slack, EPS_FEAS};

/// Direction of a linear row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sense {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
}

impl fmt::Display for Sense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sense::Ge => ">=",
            Sense::Le => "<=",
            Sense::Eq => "=",
        })
    }
}

/// One linear row `coeffs · x (sense) rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub coeffs: Vec<f64>,
    pub sense: Sense,
    pub rhs: f64,
}

impl Row {
    pub fn new(coeffs: Vec<f64>, sense: Sense, rhs: f64) -> Self {
        Row { coeffs, sense, rhs }
    }

    pub fn ge(coeffs: Vec<f64>, rhs: f64) -> Self {
        Row::new(coeffs, Sense::Ge, rhs)
    }

    pub fn le(coeffs: Vec<f64>, rhs: f64) -> Self {
        Row::new(coeffs, Sense::Le, rhs)
    }

    pub fn eq(coeffs: Vec<f64>, rhs: f64) -> Self {
        Row::new(coeffs, Sense::Eq, rhs)
    }

    pub fn lhs(&self, x: &[f64]) -> f64 {
        self.coeffs.iter().zip(x).map(|(a, v)| a * v).sum()
    }

    /// Row check with the relative slack `EPS_FEAS * (1 + |rhs|)`.
    pub fn is_satisfied(&self, x: &[f64]) -> bool {
        let lhs = self.lhs(x);
        let slack = feas_slack(self.rhs);
        match self.sense {
            Sense::Ge => lhs >= self.rhs - slack,
            Sense::Le => lhs <= self.rhs + slack,
            Sense::Eq => (lhs - self.rhs).abs() <= slack,
        }
    }
}

/// The linear system `A x (>=,<=,=) b` over `n_jobs` nonnegative processing times.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintSystem {
    n_jobs: usize,
    rows: Vec<Row>,
}

impl ConstraintSystem {
    pub fn new(n_jobs: usize, rows: Vec<Row>) -> Result<Self> {
        if n_jobs == 0 {
            return Err(SlcError::Structural("at least one job is required".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.coeffs.len() != n_jobs {
                return Err(SlcError::Structural(format!(
                    "row {i}: expected {n_jobs} coefficients, found {}",
                    row.coeffs.len()
                )));
            }
            if !row.rhs.is_finite() || row.coeffs.iter().any(|a| !a.is_finite()) {
                return Err(SlcError::Structural(format!("row {i}: non-finite number")));
            }
        }
        Ok(ConstraintSystem { n_jobs, rows })
    }

    /// `x >= p` componentwise: the classical makespan problem with fixed times `p`.
    pub fn identity(p: &[f64]) -> Result<Self> {
        let n = p.len();
        let rows = (0..n)
            .map(|i| {
                let mut coeffs = vec![0.0; n];
                coeffs[i] = 1.0;
                Row::ge(coeffs, p[i])
            })
            .collect();
        ConstraintSystem::new(n, rows)
    }

    pub fn n_jobs(&self) -> usize {
        self.n_jobs
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    /// Rewrites every row as `>=`: `<=` rows are negated and `=` rows are split
    /// into a `>=` pair. Row order is preserved.
    pub fn normalize(&self) -> ConstraintSystem {
        let mut rows = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            match row.sense {
                Sense::Ge => rows.push(row.clone()),
                Sense::Le => rows.push(negated(row)),
                Sense::Eq => {
                    rows.push(Row::ge(row.coeffs.clone(), row.rhs));
                    rows.push(negated(row));
                }
            }
        }
        ConstraintSystem {
            n_jobs: self.n_jobs,
            rows,
        }
    }

    /// Row count `k` of the normalized system.
    pub fn normalized_len(&self) -> usize {
        self.rows
            .iter()
            .map(|r| if r.sense == Sense::Eq { 2 } else { 1 })
            .sum()
    }

    pub fn is_feasible_point(&self, x: &[f64]) -> bool {
        x.len() == self.n_jobs
            && x.iter().all(|&v| v >= -EPS_FEAS)
            && self.rows.iter().all(|r| r.is_satisfied(x))
    }
}

fn negated(row: &Row) -> Row {
    // `0.0 - a` keeps a zero coefficient as +0.0 so normalization is idempotent bit-for-bit.
    Row::ge(row.coeffs.iter().map(|a| 0.0 - a).collect(), 0.0 - row.rhs)
}

/// `m` identical machines and a constraint system over `n` jobs.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    machines: usize,
    constraints: ConstraintSystem,
}

impl Instance {
    pub fn new(machines: usize, constraints: ConstraintSystem) -> Result<Self> {
        if machines == 0 {
            return Err(SlcError::Structural(
                "at least one machine is required".into(),
            ));
        }
        Ok(Instance {
            machines,
            constraints,
        })
    }

    pub fn machines(&self) -> usize {
        self.machines
    }

    pub fn constraints(&self) -> &ConstraintSystem {
        &self.constraints
    }

    pub fn n_jobs(&self) -> usize {
        self.constraints.n_jobs()
    }

    /// Normalized constraint count.
    pub fn k(&self) -> usize {
        self.constraints.normalized_len()
    }
}

/// A chosen processing-time vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ProcessingTimes(Vec<f64>);

impl ProcessingTimes {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(SlcError::Structural(format!(
                "job {i}: non-finite processing time"
            )));
        }
        if let Some(i) = values.iter().position(|&v| v < -EPS_FEAS) {
            return Err(SlcError::Structural(format!(
                "job {i}: negative processing time {}",
                values[i]
            )));
        }
        Ok(ProcessingTimes(values))
    }

    /// Zero out tiny negative round-off before wrapping.
    pub(crate) fn from_lp(mut values: Vec<f64>) -> Self {
        for v in &mut values {
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        ProcessingTimes(values)
    }

    pub fn zeros(n: usize) -> Self {
        ProcessingTimes(vec![0.0; n])
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

/// Job-to-machine assignment with its per-machine loads.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    assignment: Vec<usize>,
    loads: Vec<f64>,
    makespan: f64,
}

impl Schedule {
    /// Derives loads and makespan from `assignment`. Loads are summed in job order.
    pub fn build(times: &[f64], machines: usize, assignment: Vec<usize>) -> Result<Self> {
        if times.len() != assignment.len() {
            return Err(SlcError::Structural(format!(
                "assignment covers {} jobs, expected {}",
                assignment.len(),
                times.len()
            )));
        }
        if let Some(j) = assignment.iter().position(|&a| a >= machines) {
            return Err(SlcError::Structural(format!(
                "job {j}: machine index {} out of range",
                assignment[j]
            )));
        }
        let loads = compute_loads(times, machines, &assignment);
        let makespan = max_load(&loads);
        Ok(Schedule {
            assignment,
            loads,
            makespan,
        })
    }

    /// Wraps stored values without recomputation; use [`verify_solution`] to check them.
    pub fn from_parts(assignment: Vec<usize>, loads: Vec<f64>, makespan: f64) -> Self {
        Schedule {
            assignment,
            loads,
            makespan,
        }
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn loads(&self) -> &[f64] {
        &self.loads
    }

    pub fn makespan(&self) -> f64 {
        self.makespan
    }

    pub fn machines(&self) -> usize {
        self.loads.len()
    }
}

pub(crate) fn compute_loads(times: &[f64], machines: usize, assignment: &[usize]) -> Vec<f64> {
    let mut loads = vec![0.0; machines];
    for (&t, &a) in times.iter().zip(assignment) {
        loads[a] += t;
    }
    loads
}

pub(crate) fn max_load(loads: &[f64]) -> f64 {
    loads.iter().copied().fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Optimal,
    Approx,
    Infeasible,
    UnboundedDegenerate,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Optimal => "OPTIMAL",
            Status::Approx => "APPROX",
            Status::Infeasible => "INFEASIBLE",
            Status::UnboundedDegenerate => "UNBOUNDED_DEGENERATE",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub times: ProcessingTimes,
    pub schedule: Schedule,
}

/// What a solver returns.
///
/// `solution` is present exactly when `status` is `Optimal` or `Approx`. For
/// `Approx`, `ratio_guarantee` bounds `makespan / optimum`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub algorithm: String,
    pub status: Status,
    pub solution: Option<Solution>,
    pub lower_bound: Option<f64>,
    pub ratio_guarantee: Option<f64>,
}

impl SolveReport {
    pub(crate) fn solved(
        algorithm: &str,
        status: Status,
        times: ProcessingTimes,
        schedule: Schedule,
        lower_bound: f64,
        ratio_guarantee: f64,
    ) -> Self {
        // Optimal reports certify their own bound.
        let lower_bound = if status == Status::Optimal {
            schedule.makespan()
        } else {
            lower_bound.min(schedule.makespan())
        };
        SolveReport {
            algorithm: algorithm.to_string(),
            status,
            solution: Some(Solution { times, schedule }),
            lower_bound: Some(lower_bound),
            ratio_guarantee: Some(ratio_guarantee),
        }
    }

    pub(crate) fn infeasible(algorithm: &str) -> Self {
        SolveReport {
            algorithm: algorithm.to_string(),
            status: Status::Infeasible,
            solution: None,
            lower_bound: None,
            ratio_guarantee: None,
        }
    }

    /// All-zero processing times on machine 0.
    pub(crate) fn zero(algorithm: &str, n: usize, machines: usize) -> Self {
        let times = ProcessingTimes::zeros(n);
        let schedule =
            Schedule::build(times.values(), machines, vec![0; n]).expect("machine 0 always exists");
        SolveReport::solved(algorithm, Status::Optimal, times, schedule, 0.0, 1.0)
    }

    pub fn makespan(&self) -> Option<f64> {
        self.solution.as_ref().map(|s| s.schedule.makespan())
    }

    pub fn times(&self) -> Option<&ProcessingTimes> {
        self.solution.as_ref().map(|s| &s.times)
    }

    pub fn schedule(&self) -> Option<&Schedule> {
        self.solution.as_ref().map(|s| &s.schedule)
    }

    pub fn is_solved(&self) -> bool {
        matches!(self.status, Status::Optimal | Status::Approx)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    LengthMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    NegativeTime {
        job: usize,
        value: f64,
    },
    RowInfeasible {
        row: usize,
        lhs: f64,
    },
    MachineOutOfRange {
        job: usize,
        machine: usize,
    },
    LoadMismatch {
        machine: usize,
        stored: f64,
        recomputed: f64,
    },
    MakespanMismatch {
        stored: f64,
        recomputed: f64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LengthMismatch {
                what,
                expected,
                found,
            } => write!(
                f,
                "{what} length mismatch: expected {expected}, found {found}"
            ),
            Violation::NegativeTime { job, value } => {
                write!(f, "job {job} has negative processing time {value}")
            }
            Violation::RowInfeasible { row, lhs } => {
                write!(f, "row {row} infeasible (lhs = {lhs})")
            }
            Violation::MachineOutOfRange { job, machine } => {
                write!(
                    f,
                    "machine index out of range: job {job} on machine {machine}"
                )
            }
            Violation::LoadMismatch {
                machine,
                stored,
                recomputed,
            } => write!(
                f,
                "load mismatch on machine {machine}: stored {stored}, recomputed {recomputed}"
            ),
            Violation::MakespanMismatch { stored, recomputed } => {
                write!(
                    f,
                    "makespan mismatch: stored {stored}, recomputed {recomputed}"
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Verdict {
    pub violations: Vec<Violation>,
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks feasibility of `times`, the machine indices, and the stored loads and
/// makespan against a from-scratch recomputation.
pub fn verify_solution(inst: &Instance, times: &ProcessingTimes, sched: &Schedule) -> Verdict {
    let mut violations = Vec::new();
    let n = inst.n_jobs();
    let m = inst.machines();
    let x = times.values();

    if x.len() != n {
        violations.push(Violation::LengthMismatch {
            what: "processing times",
            expected: n,
            found: x.len(),
        });
    }
    if sched.assignment().len() != n {
        violations.push(Violation::LengthMismatch {
            what: "assignment",
            expected: n,
            found: sched.assignment().len(),
        });
    }
    if sched.loads().len() != m {
        violations.push(Violation::LengthMismatch {
            what: "machine loads",
            expected: m,
            found: sched.loads().len(),
        });
    }
    if !violations.is_empty() {
        return Verdict { violations };
    }

    for (job, &v) in x.iter().enumerate() {
        if v < -EPS_FEAS {
            violations.push(Violation::NegativeTime { job, value: v });
        }
    }
    for (i, row) in inst.constraints().rows().iter().enumerate() {
        if !row.is_satisfied(x) {
            violations.push(Violation::RowInfeasible {
                row: i,
                lhs: row.lhs(x),
            });
        }
    }

    let mut out_of_range = false;
    for (job, &machine) in sched.assignment().iter().enumerate() {
        if machine >= m {
            out_of_range = true;
            violations.push(Violation::MachineOutOfRange { job, machine });
        }
    }
    if out_of_range {
        return Verdict { violations };
    }

    let loads = compute_loads(x, m, sched.assignment());
    for (machine, (&stored, &recomputed)) in sched.loads().iter().zip(&loads).enumerate() {
        if !approx_eq(stored, recomputed) {
            violations.push(Violation::LoadMismatch {
                machine,
                stored,
                recomputed,
            });
        }
    }
    let recomputed = max_load(&loads);
    if !approx_eq(sched.makespan(), recomputed) {
        violations.push(Violation::MakespanMismatch {
            stored: sched.makespan(),
            recomputed,
        });
    }
    Verdict { violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn le_row_is_negated() {
        let cs = ConstraintSystem::new(2, vec![Row::le(vec![1.0, 2.0], 5.0)]).unwrap();
        let norm = cs.normalize();
        assert_eq!(norm.rows(), &[Row::ge(vec![-1.0, -2.0], -5.0)]);
    }

    #[test]
    fn eq_row_is_split() {
        let cs = ConstraintSystem::new(2, vec![Row::eq(vec![1.0, 1.0], 3.0)]).unwrap();
        let norm = cs.normalize();
        assert_eq!(
            norm.rows(),
            &[
                Row::ge(vec![1.0, 1.0], 3.0),
                Row::ge(vec![-1.0, -1.0], -3.0)
            ]
        );
        assert_eq!(cs.normalized_len(), 2);
    }

    #[test]
    fn ge_system_is_unchanged() {
        let cs = ConstraintSystem::new(
            2,
            vec![Row::ge(vec![1.0, 0.0], 1.0), Row::ge(vec![0.0, 3.0], -2.0)],
        )
        .unwrap();
        assert_eq!(cs.normalize(), cs);
    }

    #[test]
    fn row_count_after_normalization() {
        let cs = ConstraintSystem::new(
            1,
            vec![
                Row::ge(vec![1.0], 1.0),
                Row::le(vec![1.0], 4.0),
                Row::eq(vec![2.0], 4.0),
            ],
        )
        .unwrap();
        assert_eq!(cs.normalize().rows().len(), 4);
        assert!(cs.normalize().rows().iter().all(|r| r.sense == Sense::Ge));
    }

    #[test]
    fn structural_errors() {
        let err = ConstraintSystem::new(4, vec![Row::ge(vec![1.0, 1.0, 1.0], 1.0)]).unwrap_err();
        assert!(err.to_string().contains("row 0: expected 4 coefficients"));
        assert!(ConstraintSystem::new(0, vec![]).is_err());
        assert!(ConstraintSystem::new(1, vec![Row::ge(vec![f64::NAN], 1.0)]).is_err());
        let cs = ConstraintSystem::new(1, vec![]).unwrap();
        assert!(Instance::new(0, cs).is_err());
    }

    fn identity_instance() -> Instance {
        Instance::new(2, ConstraintSystem::identity(&[2.0, 3.0]).unwrap()).unwrap()
    }

    #[test]
    fn verify_accepts_forced_solution() {
        let inst = identity_instance();
        let times = ProcessingTimes::new(vec![2.0, 3.0]).unwrap();
        let sched = Schedule::build(times.values(), 2, vec![0, 1]).unwrap();
        assert_eq!(sched.makespan(), 3.0);
        assert!(verify_solution(&inst, &times, &sched).is_ok());
    }

    #[test]
    fn verify_flags_makespan_mismatch() {
        let inst = identity_instance();
        let times = ProcessingTimes::new(vec![2.0, 3.0]).unwrap();
        let sched = Schedule::from_parts(vec![0, 1], vec![2.0, 3.0], 2.5);
        let verdict = verify_solution(&inst, &times, &sched);
        assert_eq!(verdict.violations.len(), 1);
        assert!(verdict.violations[0]
            .to_string()
            .starts_with("makespan mismatch"));
    }

    #[test]
    fn verify_flags_infeasible_row() {
        let inst = identity_instance();
        let times = ProcessingTimes::new(vec![1.0, 3.0]).unwrap();
        let sched = Schedule::build(times.values(), 2, vec![0, 1]).unwrap();
        let verdict = verify_solution(&inst, &times, &sched);
        assert_eq!(verdict.violations.len(), 1);
        assert!(verdict.violations[0]
            .to_string()
            .starts_with("row 0 infeasible"));
    }

    #[test]
    fn verify_flags_machine_out_of_range() {
        let inst = identity_instance();
        let times = ProcessingTimes::new(vec![2.0, 3.0]).unwrap();
        let sched = Schedule::from_parts(vec![0, 2], vec![2.0, 3.0], 3.0);
        let verdict = verify_solution(&inst, &times, &sched);
        assert!(verdict.violations[0]
            .to_string()
            .starts_with("machine index out of range"));
    }

    #[test]
    fn processing_times_reject_negative() {
        assert!(ProcessingTimes::new(vec![1.0, -0.5]).is_err());
        assert!(ProcessingTimes::new(vec![1.0, -1e-12]).is_ok());
    }
}
