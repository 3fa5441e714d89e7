//! Vertex-returning linear programming over nonnegative variables.
//!
//! Every optimal answer is a basic feasible solution, which is what the
//! rounding algorithms need: their fractional-count arguments only hold at
//! vertices.

mod simplex;

use crate::error::{Result, SlcError};
use crate::model::Row;
use crate::tolerance::EPS_SNAP;

/// `min objective·x` subject to `rows`, `x >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LpProblem {
    pub objective: Vec<f64>,
    pub rows: Vec<Row>,
}

impl LpProblem {
    pub fn new(objective: Vec<f64>, rows: Vec<Row>) -> Result<Self> {
        let n = objective.len();
        if let Some(i) = rows.iter().position(|r| r.coeffs.len() != n) {
            return Err(SlcError::Structural(format!(
                "LP row {i}: expected {n} coefficients, found {}",
                rows[i].coeffs.len()
            )));
        }
        Ok(LpProblem { objective, rows })
    }

    pub fn n_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn is_feasible_point(&self, x: &[f64]) -> bool {
        x.iter().all(|&v| v >= 0.0) && self.rows.iter().all(|r| r.is_satisfied(x))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Structural variable values; empty unless `Optimal`.
    pub values: Vec<f64>,
    /// Slack of each row (zero for equality rows); empty unless `Optimal`.
    pub slacks: Vec<f64>,
    pub objective_value: f64,
    /// Sorted basic column indices: `[0, n)` structural, `[n, n + rows)` row
    /// slacks, anything above is an artificial kept on a redundant row.
    pub basis: Vec<usize>,
}

impl LpSolution {
    fn without_point(status: LpStatus) -> Self {
        LpSolution {
            status,
            values: Vec::new(),
            slacks: Vec::new(),
            objective_value: f64::NAN,
            basis: Vec::new(),
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    /// Number of structural plus slack entries above `tol`.
    pub fn positive_count(&self, tol: f64) -> usize {
        self.values
            .iter()
            .chain(&self.slacks)
            .filter(|&&v| v > tol)
            .count()
    }
}

/// Solves `p` with the primal simplex method. Deterministic for identical input.
pub fn solve_vertex(p: &LpProblem) -> Result<LpSolution> {
    simplex::solve(p)
}

/// Reads near-`t` coordinates as exactly `t` and near-zero ones as exactly `0`.
///
/// `t_index` names the makespan variable; every other structural variable is
/// a candidate. A snap that breaks feasibility of `p` is undone.
pub fn snap_vertex(p: &LpProblem, sol: &LpSolution, t_index: usize) -> LpSolution {
    if !sol.is_optimal() {
        return sol.clone();
    }
    let mut out = sol.clone();
    let t = out.values[t_index];
    for i in 0..out.values.len() {
        if i == t_index {
            continue;
        }
        let v = out.values[i];
        let target = if (v - t).abs() <= EPS_SNAP * (1.0 + t) {
            t
        } else if v.abs() <= EPS_SNAP {
            0.0
        } else {
            continue;
        };
        if target == v {
            continue;
        }
        out.values[i] = target;
        if !p.is_feasible_point(&out.values) {
            out.values[i] = v;
        }
    }
    out.objective_value = p
        .objective
        .iter()
        .zip(&out.values)
        .map(|(c, x)| c * x)
        .sum();
    out
}
