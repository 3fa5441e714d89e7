//! Solvers for scheduling under linear constraints.
//!
//! | case                     | solver                              | guarantee        |
//! |--------------------------|-------------------------------------|------------------|
//! | `m = 1`                  | [`solve_single_machine`]            | exact            |
//! | `k = 1`                  | [`solve_single_constraint`]         | exact            |
//! | `k <= 2`                 | [`solve_lp_rounding_k2`]            | exact            |
//! | fixed `m`, fixed `k`     | [`solve_enumeration`]               | exact            |
//! | fixed `m`                | [`solve_ptas`]                      | `1 + eps`        |
//! | general                  | [`solve_modified_list_scheduling`]  | `2 - 1/m`        |
//! | general                  | [`solve_lp_rounding_general`]       | `m / (m - K)`    |
//!
//! `k` always means the row count after normalization to `>=` form.

mod auto;
mod enumeration;
mod list;
mod mls;
mod ptas;
mod rounding;
mod single;

pub use auto::{solve_auto, solve_auto_with, AutoConfig};
pub(crate) use enumeration::lp3 as enumeration_lp3;
pub use enumeration::{
    solve_enumeration, solve_enumeration_with_budget, solve_lp3_for_assignment,
    DEFAULT_ENUMERATION_BUDGET,
};
pub use list::{list_schedule, ListOrder};
pub use mls::{solve_modified_list_scheduling, solve_modified_list_scheduling_with};
pub use ptas::{build_lp4_pair_constraints, solve_ptas, solve_ptas_with_budget, PtasConfig};
pub use rounding::{
    compute_k_parameter, lp5_vertex, lp7_vertex, solve_lp_rounding_general, solve_lp_rounding_k2,
    CapacityVertex, KParameter,
};
pub use single::{
    solve_single_constraint, solve_single_machine, verify_dual_certificate_k1, DualCertificate,
};

use std::cmp::Ordering;

use crate::error::{Result, SlcError};
use crate::lp::{solve_vertex, LpProblem, LpStatus};
use crate::model::{ConstraintSystem, Instance, Row, Sense};

/// Normalized rows of `cs` widened with zero coefficients to `total_vars` columns.
pub(crate) fn lifted_rows(cs: &ConstraintSystem, total_vars: usize) -> Vec<Row> {
    cs.rows()
        .iter()
        .map(|r| {
            let mut coeffs = r.coeffs.clone();
            coeffs.resize(total_vars, 0.0);
            Row::new(coeffs, r.sense, r.rhs)
        })
        .collect()
}

/// `x_i - var <= 0` for every job `i`, where `var` is column `n`.
pub(crate) fn cap_rows(n: usize, var: usize, total_vars: usize) -> Vec<Row> {
    (0..n)
        .map(|i| {
            let mut coeffs = vec![0.0; total_vars];
            coeffs[i] = 1.0;
            coeffs[var] = -1.0;
            Row::new(coeffs, Sense::Le, 0.0)
        })
        .collect()
}

/// Optimal value `P` of `min sum(x)` over the constraint system.
///
/// `P` bounds the optimal makespan from above and `P / m` from below.
pub fn compute_lower_bound_p(inst: &Instance) -> Result<f64> {
    let n = inst.n_jobs();
    let norm = inst.constraints().normalize();
    let p = LpProblem::new(vec![1.0; n], lifted_rows(&norm, n))?;
    let sol = solve_vertex(&p)?;
    match sol.status {
        LpStatus::Optimal => Ok(sol.objective_value),
        LpStatus::Infeasible => Err(SlcError::Infeasible),
        LpStatus::Unbounded => Err(SlcError::SolverFailure(
            "total-time LP reported unbounded with a nonnegative objective".into(),
        )),
    }
}

/// Smallest achievable largest processing time, `min z` s.t. `A x >= b`, `x_i <= z`.
pub(crate) fn min_max_time(inst: &Instance) -> Result<f64> {
    let n = inst.n_jobs();
    let norm = inst.constraints().normalize();
    let mut rows = lifted_rows(&norm, n + 1);
    rows.extend(cap_rows(n, n, n + 1));
    let mut objective = vec![0.0; n + 1];
    objective[n] = 1.0;
    let sol = solve_vertex(&LpProblem::new(objective, rows)?)?;
    match sol.status {
        LpStatus::Optimal => Ok(sol.objective_value),
        LpStatus::Infeasible => Err(SlcError::Infeasible),
        LpStatus::Unbounded => Err(SlcError::SolverFailure("max-time LP unbounded".into())),
    }
}

/// Candidate produced by an enumeration loop; ordered by makespan, then by
/// iteration index so parallel reductions are deterministic.
#[derive(Debug, Clone)]
pub(crate) struct Candidate {
    pub makespan: f64,
    pub index: u128,
    pub times: Vec<f64>,
    pub assignment: Vec<usize>,
}

impl Candidate {
    pub(crate) fn cmp_key(&self, other: &Self) -> Ordering {
        self.makespan
            .total_cmp(&other.makespan)
            .then(self.index.cmp(&other.index))
    }
}

pub(crate) fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Writes the base-`m` digits of `index` into `digits` (least significant first).
pub(crate) fn decode_digits(mut index: u128, m: usize, digits: &mut [usize]) {
    for d in digits.iter_mut() {
        *d = (index % m as u128) as usize;
        index /= m as u128;
    }
}
