//! LP rounding for an arbitrary machine count.
//!
//! Both solvers read a vertex `(x, t)` of
//!
//! ```text
//! min t  s.t.  A x >= b,  sum(x) <= (m - K) t,  x_i <= t,  x >= 0
//! ```
//!
//! and place jobs with `x_i = t` alone, then pack the few fractional jobs
//! (`0 < x_i < t`) so that no machine exceeds `t`. With `K = 0` the LP is a
//! relaxation of the scheduling problem and the rounding is exact for `k <= 2`.

use crate::error::{Result, SlcError};
use crate::lp::{snap_vertex, solve_vertex, LpProblem, LpStatus};
use crate::model::{Instance, ProcessingTimes, Row, Schedule, Sense, SolveReport, Status};
use crate::tolerance::EPS_FEAS;

use super::{cap_rows, lifted_rows};

const LP_K2: &str = "lp_k2";
const LP_GENERAL: &str = "lp_general";

/// Capacity shrink `K(k, m)` and the ratio `m / (m - K)` it buys.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KParameter {
    pub k: usize,
    pub m: usize,
    /// `k + 1 - sqrt(k)`, the maximizer of `x - k / (k + 1 - x)`.
    pub k_tilde: f64,
    pub value: f64,
}

impl KParameter {
    pub fn ratio(&self) -> f64 {
        self.m as f64 / (self.m as f64 - self.value)
    }
}

/// `K = m - k/(k+1-m)` when `k~ > m`, otherwise the larger of `f(ceil k~)` and
/// `f(floor k~)` with `f(x) = x - k/(k+1-x)`. `K = 0` for `k <= 2`.
pub fn compute_k_parameter(k: usize, m: usize) -> Result<KParameter> {
    if k == 0 || m == 0 {
        return Err(SlcError::InvalidArgument(format!(
            "K needs k >= 1 and m >= 1, got k = {k}, m = {m}"
        )));
    }
    let kf = k as f64;
    let mf = m as f64;
    let k_tilde = kf + 1.0 - kf.sqrt();
    let f = |x: f64| x - kf / (kf + 1.0 - x);
    let value = if k <= 2 {
        0.0
    } else if k_tilde > mf {
        f(mf)
    } else {
        f(k_tilde.ceil()).max(f(k_tilde.floor()))
    };
    Ok(KParameter {
        k,
        m,
        k_tilde,
        value,
    })
}

/// Snapped vertex of the capacity LP with its job classification.
#[derive(Debug, Clone, PartialEq)]
pub struct CapacityVertex {
    pub times: Vec<f64>,
    pub t: f64,
    /// Jobs with `x_i = t` (empty when `t = 0`).
    pub at_t: Vec<usize>,
    /// Jobs with `0 < x_i < t`.
    pub fractional: Vec<usize>,
}

fn capacity_vertex(inst: &Instance, shrink: f64) -> Result<Option<CapacityVertex>> {
    let n = inst.n_jobs();
    let m = inst.machines() as f64;
    let norm = inst.constraints().normalize();
    let vars = n + 1;
    let mut rows = lifted_rows(&norm, vars);
    let mut total = vec![1.0; vars];
    total[n] = -(m - shrink);
    rows.push(Row::new(total, Sense::Le, 0.0));
    rows.extend(cap_rows(n, n, vars));
    let mut objective = vec![0.0; vars];
    objective[n] = 1.0;

    let problem = LpProblem::new(objective, rows)?;
    let raw = solve_vertex(&problem)?;
    match raw.status {
        LpStatus::Infeasible => return Ok(None),
        LpStatus::Unbounded => {
            return Err(SlcError::SolverFailure(
                "capacity LP reported unbounded".into(),
            ))
        }
        LpStatus::Optimal => {}
    }
    let snapped = snap_vertex(&problem, &raw, n);
    let t = snapped.values[n];
    let mut times = snapped.values;
    times.truncate(n);
    let (mut at_t, mut fractional) = (Vec::new(), Vec::new());
    if t > 0.0 {
        for (i, &x) in times.iter().enumerate() {
            if x == t {
                at_t.push(i);
            } else if x > 0.0 {
                fractional.push(i);
            }
        }
    }
    Ok(Some(CapacityVertex {
        times,
        t,
        at_t,
        fractional,
    }))
}

/// Vertex of the plain relaxation (`K = 0`); `None` if the system is infeasible.
pub fn lp5_vertex(inst: &Instance) -> Result<Option<CapacityVertex>> {
    capacity_vertex(inst, 0.0)
}

/// Vertex of the shrunk LP with `K = K(k, m)`; `None` if infeasible.
pub fn lp7_vertex(inst: &Instance) -> Result<Option<CapacityVertex>> {
    capacity_vertex(inst, shrink_for(inst)?)
}

fn shrink_for(inst: &Instance) -> Result<f64> {
    match inst.k() {
        0 => Ok(0.0),
        k => Ok(compute_k_parameter(k, inst.machines())?.value),
    }
}

/// Builds an assignment of makespan at most `t` from a snapped vertex.
///
/// With `l` jobs at `t` and `f` fractional jobs, the `f + 1 - m + l` smallest
/// fractional jobs share one machine (if that count is at least two) and the
/// rest run alone. This is the smallest-group rule over the `k` sub-`t` jobs
/// padded with zero-time jobs; the padding never enters the group when
/// `f + 1 - m + l` is small.
fn round_vertex(v: &CapacityVertex, machines: usize, max_fractional: usize) -> Result<Vec<usize>> {
    let n = v.times.len();
    let mut assignment = vec![0; n];
    let l = v.at_t.len();
    let f = v.fractional.len();
    if l > machines {
        return Err(SlcError::InvariantViolation(format!(
            "{l} jobs at t exceed {machines} machines"
        )));
    }
    if f > max_fractional {
        return Err(SlcError::InvariantViolation(format!(
            "vertex has {f} fractional jobs, at most {max_fractional} allowed"
        )));
    }
    if f > 0 && l == machines {
        return Err(SlcError::InvariantViolation(
            "fractional jobs left with no idle machine".into(),
        ));
    }
    for (machine, &job) in v.at_t.iter().enumerate() {
        assignment[job] = machine;
    }
    let mut frac = v.fractional.clone();
    frac.sort_by(|&a, &b| v.times[a].total_cmp(&v.times[b]).then(a.cmp(&b)));
    let group = (f + l + 1).saturating_sub(machines);
    let mut next = l;
    let solo = if group >= 2 {
        let sum: f64 = frac[..group].iter().map(|&j| v.times[j]).sum();
        if sum > v.t * (1.0 + EPS_FEAS) {
            return Err(SlcError::InvariantViolation(format!(
                "smallest {group} fractional jobs sum to {sum} > t = {}",
                v.t
            )));
        }
        for &job in &frac[..group] {
            assignment[job] = next;
        }
        next += 1;
        &frac[group..]
    } else {
        &frac[..]
    };
    for &job in solo {
        assignment[job] = next;
        next += 1;
    }
    debug_assert!(next <= machines.max(1));
    Ok(assignment)
}

fn finish(
    inst: &Instance,
    v: CapacityVertex,
    assignment: Vec<usize>,
    algorithm: &str,
    status: Status,
    lower_bound: f64,
    ratio: f64,
) -> Result<SolveReport> {
    let times = ProcessingTimes::from_lp(v.times);
    let schedule = Schedule::build(times.values(), inst.machines(), assignment)?;
    Ok(SolveReport::solved(
        algorithm,
        status,
        times,
        schedule,
        lower_bound,
        ratio,
    ))
}

/// Exact for at most two normalized rows and any machine count.
pub fn solve_lp_rounding_k2(inst: &Instance) -> Result<SolveReport> {
    if inst.k() > 2 {
        return Err(SlcError::InvalidArgument(format!(
            "two-row rounding needs k <= 2, got k = {}",
            inst.k()
        )));
    }
    let Some(v) = lp5_vertex(inst)? else {
        return Ok(SolveReport::infeasible(LP_K2));
    };
    let assignment = round_vertex(&v, inst.machines(), 2)?;
    finish(inst, v, assignment, LP_K2, Status::Optimal, 0.0, 1.0)
}

/// `m / (m - K)`-approximation for any `k` and `m`.
pub fn solve_lp_rounding_general(inst: &Instance) -> Result<SolveReport> {
    let k = inst.k();
    let shrink = shrink_for(inst)?;
    let Some(v) = capacity_vertex(inst, shrink)? else {
        return Ok(SolveReport::infeasible(LP_GENERAL));
    };
    let assignment = round_vertex(&v, inst.machines(), k)?;
    if shrink == 0.0 {
        // Without shrinking the LP is a relaxation, so reaching t is optimal.
        return finish(inst, v, assignment, LP_GENERAL, Status::Optimal, 0.0, 1.0);
    }
    let m = inst.machines() as f64;
    let relaxed = lp5_vertex(inst)?.map_or(0.0, |r| r.t);
    finish(
        inst,
        v,
        assignment,
        LP_GENERAL,
        Status::Approx,
        relaxed,
        m / (m - shrink),
    )
}
