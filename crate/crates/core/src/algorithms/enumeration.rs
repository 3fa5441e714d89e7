use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Result, SlcError};
use crate::lp::{solve_vertex, LpProblem, LpSolution, LpStatus};
use crate::model::{
    ConstraintSystem, Instance, ProcessingTimes, Row, Schedule, SolveReport, Status,
};

use super::{binomial, decode_digits, Candidate};

/// Default cap on the number of LPs an enumeration may solve.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 1_000_000;

const ENUMERATION: &str = "enumeration";

/// LP over a fixed assignment: `min t` s.t. the normalized rows hold and every
/// machine's load is at most `t`. Jobs mapped to `None` are fixed at zero.
///
/// Returns `(x, t)` with `x` in full job indexing, or `None` if infeasible.
pub(crate) fn lp3(
    norm: &ConstraintSystem,
    machines: usize,
    assignment: &[Option<usize>],
) -> Result<Option<(Vec<f64>, f64)>> {
    let sol = lp3_solution(norm, machines, assignment)?;
    if !sol.is_optimal() {
        return Ok(None);
    }
    let n = norm.n_jobs();
    let t = sol.values[n];
    let mut x = sol.values;
    x.truncate(n);
    Ok(Some((x, t)))
}

fn lp3_solution(
    norm: &ConstraintSystem,
    machines: usize,
    assignment: &[Option<usize>],
) -> Result<LpSolution> {
    let n = norm.n_jobs();
    let free: Vec<usize> = (0..n).filter(|&i| assignment[i].is_some()).collect();
    let vars = free.len() + 1;
    let t_col = free.len();

    let mut rows: Vec<Row> = norm
        .rows()
        .iter()
        .map(|r| {
            let mut coeffs: Vec<f64> = free.iter().map(|&i| r.coeffs[i]).collect();
            coeffs.push(0.0);
            Row::new(coeffs, r.sense, r.rhs)
        })
        .collect();
    for machine in 0..machines {
        let mut coeffs = vec![0.0; vars];
        let mut used = false;
        for (col, &job) in free.iter().enumerate() {
            if assignment[job] == Some(machine) {
                coeffs[col] = 1.0;
                used = true;
            }
        }
        if used {
            coeffs[t_col] = -1.0;
            rows.push(Row::le(coeffs, 0.0));
        }
    }
    let mut objective = vec![0.0; vars];
    objective[t_col] = 1.0;
    let compact = solve_vertex(&LpProblem::new(objective, rows)?)?;
    if !compact.is_optimal() {
        return Ok(compact);
    }

    // Re-express in full indexing: x_0..x_{n-1}, t, then the compact slacks.
    let mut values = vec![0.0; n + 1];
    for (col, &job) in free.iter().enumerate() {
        values[job] = compact.values[col];
    }
    values[n] = compact.values[t_col];
    let basis = compact
        .basis
        .iter()
        .map(|&b| match b {
            b if b < t_col => free[b],
            b if b == t_col => n,
            b => b - vars + n + 1,
        })
        .sorted_unstable()
        .collect();
    Ok(LpSolution {
        status: LpStatus::Optimal,
        values,
        slacks: compact.slacks,
        objective_value: compact.objective_value,
        basis,
    })
}

/// Solves the assignment LP for a partial assignment over a job subset.
///
/// `assignment[i] = Some(machine)` marks job `i` as free and placed on
/// `machine`; `None` puts the job in the zero set. Values of the returned
/// solution are `x_0 .. x_{n-1}` followed by `t`.
pub fn solve_lp3_for_assignment(
    inst: &Instance,
    assignment: &[Option<usize>],
) -> Result<LpSolution> {
    if assignment.len() != inst.n_jobs() {
        return Err(SlcError::InvalidArgument(format!(
            "assignment covers {} jobs, expected {}",
            assignment.len(),
            inst.n_jobs()
        )));
    }
    if assignment.iter().flatten().any(|&a| a >= inst.machines()) {
        return Err(SlcError::InvalidArgument(
            "machine index out of range".into(),
        ));
    }
    lp3_solution(&inst.constraints().normalize(), inst.machines(), assignment)
}

/// Exact solver for fixed `m` and `k`.
///
/// Some optimal solution has at most `m + k - 1` nonzero times, so it suffices
/// to try every subset of that size with every assignment of it to the
/// machines and solve the assignment LP with the other jobs at zero.
pub fn solve_enumeration(inst: &Instance) -> Result<SolveReport> {
    solve_enumeration_with_budget(inst, DEFAULT_ENUMERATION_BUDGET)
}

pub fn solve_enumeration_with_budget(inst: &Instance, budget: u128) -> Result<SolveReport> {
    let n = inst.n_jobs();
    let size = n.min((inst.machines() + inst.k()).saturating_sub(1));
    enumerate_subsets(inst, size, budget, ENUMERATION)
}

/// Tries every `size`-subset of jobs and every assignment of it to machines.
pub(crate) fn enumerate_subsets(
    inst: &Instance,
    size: usize,
    budget: u128,
    algorithm: &str,
) -> Result<SolveReport> {
    let n = inst.n_jobs();
    let m = inst.machines();
    let per_subset = (m as u128).saturating_pow(size as u32);
    let total = binomial(n, size).saturating_mul(per_subset);
    if total > budget {
        return Err(SlcError::BudgetExceeded {
            required: total,
            budget,
        });
    }
    let norm = inst.constraints().normalize();
    let subsets: Vec<Vec<usize>> = (0..n).combinations(size).collect();

    let best = (0..total)
        .into_par_iter()
        .map(|index| -> Result<Option<Candidate>> {
            let subset = &subsets[(index / per_subset) as usize];
            let mut digits = vec![0; size];
            decode_digits(index % per_subset, m, &mut digits);
            let mut partial = vec![None; n];
            for (&job, &machine) in subset.iter().zip(&digits) {
                partial[job] = Some(machine);
            }
            Ok(lp3(&norm, m, &partial)?.map(|(times, t)| Candidate {
                makespan: t,
                index,
                times,
                assignment: partial.iter().map(|a| a.unwrap_or(0)).collect(),
            }))
        })
        .try_fold(
            || None,
            |acc: Option<Candidate>, item| item.map(|c| pick(acc, c)),
        )
        .try_reduce(|| None, |a, b| Ok(pick(a, b)))?;

    match best {
        None => Ok(SolveReport::infeasible(algorithm)),
        Some(c) => {
            let times = ProcessingTimes::from_lp(c.times);
            let schedule = Schedule::build(times.values(), m, c.assignment)?;
            Ok(SolveReport::solved(
                algorithm,
                Status::Optimal,
                times,
                schedule,
                0.0,
                1.0,
            ))
        }
    }
}

pub(crate) fn pick(acc: Option<Candidate>, c: Option<Candidate>) -> Option<Candidate> {
    match (acc, c) {
        (a, None) => a,
        (None, c) => c,
        (Some(a), Some(c)) => Some(if c.cmp_key(&a).is_lt() { c } else { a }),
    }
}
