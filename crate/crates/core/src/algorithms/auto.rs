use crate::error::Result;
use crate::model::{Instance, SolveReport, Status};

use super::enumeration::{solve_enumeration_with_budget, DEFAULT_ENUMERATION_BUDGET};
use super::mls::solve_modified_list_scheduling;
use super::ptas::solve_ptas_with_budget;
use super::rounding::{compute_k_parameter, solve_lp_rounding_general, solve_lp_rounding_k2};
use super::single::{solve_single_constraint, solve_single_machine};

#[derive(Debug, Clone, PartialEq)]
pub struct AutoConfig {
    pub epsilon: Option<f64>,
    /// Largest estimated LP count for which exact enumeration is attempted.
    pub enumeration_budget: u128,
    /// The PTAS is only considered up to this many machines.
    pub max_ptas_machines: usize,
}

impl Default for AutoConfig {
    fn default() -> Self {
        AutoConfig {
            epsilon: None,
            enumeration_budget: DEFAULT_ENUMERATION_BUDGET,
            max_ptas_machines: 3,
        }
    }
}

pub fn solve_auto(inst: &Instance, epsilon: Option<f64>) -> Result<SolveReport> {
    solve_auto_with(
        inst,
        &AutoConfig {
            epsilon,
            ..AutoConfig::default()
        },
    )
}

/// Picks the strongest applicable solver:
/// one machine, one row, two rows, exact enumeration within budget, the PTAS
/// when an epsilon is given and `m` is small, and otherwise the better of the
/// two general approximations.
pub fn solve_auto_with(inst: &Instance, config: &AutoConfig) -> Result<SolveReport> {
    let n = inst.n_jobs();
    let m = inst.machines();
    let k = inst.k();
    if m == 1 {
        return solve_single_machine(inst);
    }
    if k == 1 {
        return solve_single_constraint(inst);
    }
    if k <= 2 {
        return solve_lp_rounding_k2(inst);
    }
    if enumeration_estimate(n, m, k) <= config.enumeration_budget as f64 {
        return solve_enumeration_with_budget(inst, config.enumeration_budget);
    }
    if let Some(eps) = config.epsilon {
        if m <= config.max_ptas_machines {
            return solve_ptas_with_budget(inst, eps, config.enumeration_budget);
        }
    }
    combined(inst)
}

/// `n^(m+k-1) * m^min(n, m+k-1)`.
fn enumeration_estimate(n: usize, m: usize, k: usize) -> f64 {
    let size = m + k - 1;
    (n as f64).powi(size as i32) * (m as f64).powi(n.min(size) as i32)
}

fn combined(inst: &Instance) -> Result<SolveReport> {
    let mls = solve_modified_list_scheduling(inst)?;
    let lp = solve_lp_rounding_general(inst)?;
    if !mls.is_solved() || !lp.is_solved() {
        return Ok(SolveReport {
            algorithm: "combined".into(),
            ..lp
        });
    }
    let m = inst.machines() as f64;
    let k_ratio = compute_k_parameter(inst.k(), inst.machines())?.ratio();
    let ratio = k_ratio.min(2.0 - 1.0 / m);
    let lower = mls
        .lower_bound
        .unwrap_or(0.0)
        .max(lp.lower_bound.unwrap_or(0.0));
    let winner = if mls.makespan() < lp.makespan() {
        mls
    } else {
        lp
    };
    let status = if winner.status == Status::Optimal {
        Status::Optimal
    } else {
        Status::Approx
    };
    Ok(SolveReport {
        algorithm: "combined".into(),
        status,
        lower_bound: Some(lower.min(winner.makespan().unwrap_or(lower))),
        ratio_guarantee: Some(if status == Status::Optimal {
            1.0
        } else {
            ratio
        }),
        solution: winner.solution,
    })
}
