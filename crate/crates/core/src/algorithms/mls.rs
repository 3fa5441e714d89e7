use crate::error::{Result, SlcError};
use crate::lp::{solve_vertex, LpProblem, LpStatus};
use crate::model::{Instance, ProcessingTimes, Schedule, SolveReport, Status};

use super::list::{assign_in_order, ListOrder};
use super::{cap_rows, compute_lower_bound_p, lifted_rows, min_max_time};

const MLS: &str = "mls";

/// `(2 - 1/m)`-approximation: fix times by minimizing the list-scheduling bound
/// `sum(x)/m + (1 - 1/m) max(x)`, then list-schedule in input order.
pub fn solve_modified_list_scheduling(inst: &Instance) -> Result<SolveReport> {
    solve_modified_list_scheduling_with(inst, ListOrder::Input)
}

/// As [`solve_modified_list_scheduling`] with a chosen list order. The ratio
/// bound holds for any order.
pub fn solve_modified_list_scheduling_with(
    inst: &Instance,
    order: ListOrder,
) -> Result<SolveReport> {
    let n = inst.n_jobs();
    let m = inst.machines();
    let mf = m as f64;
    let norm = inst.constraints().normalize();

    let vars = n + 1;
    let mut rows = lifted_rows(&norm, vars);
    rows.extend(cap_rows(n, n, vars));
    let mut objective = vec![1.0 / mf; vars];
    objective[n] = 1.0 - 1.0 / mf;
    let sol = solve_vertex(&LpProblem::new(objective, rows)?)?;
    match sol.status {
        LpStatus::Infeasible => return Ok(SolveReport::infeasible(MLS)),
        LpStatus::Unbounded => {
            return Err(SlcError::SolverFailure(
                "list-scheduling LP reported unbounded".into(),
            ))
        }
        LpStatus::Optimal => {}
    }
    let mut x = sol.values;
    x.truncate(n);
    let times = ProcessingTimes::from_lp(x);

    let mut loads = vec![0.0; m];
    let mut assignment = vec![0; n];
    assign_in_order(
        times.values(),
        &mut loads,
        order.order(times.values()),
        &mut assignment,
    );
    let schedule = Schedule::build(times.values(), m, assignment)?;

    let lower_bound = (compute_lower_bound_p(inst)? / mf).max(min_max_time(inst)?);
    Ok(SolveReport::solved(
        MLS,
        Status::Approx,
        times,
        schedule,
        lower_bound,
        2.0 - 1.0 / mf,
    ))
}
