use crate::error::{Result, SlcError};
use crate::lp::{solve_vertex, LpProblem, LpStatus};
use crate::model::{Instance, ProcessingTimes, Schedule, SolveReport, Status};
use crate::tolerance::{approx_eq, EPS_CMP, EPS_FEAS};

use super::lifted_rows;

const SINGLE_MACHINE: &str = "single_machine";
const SINGLE_CONSTRAINT: &str = "single_constraint";

/// One machine: the makespan is the total time, so the problem is `min sum(x)`.
pub fn solve_single_machine(inst: &Instance) -> Result<SolveReport> {
    if inst.machines() != 1 {
        return Err(SlcError::InvalidArgument(format!(
            "single-machine solver needs m = 1, got m = {}",
            inst.machines()
        )));
    }
    let n = inst.n_jobs();
    let norm = inst.constraints().normalize();
    let sol = solve_vertex(&LpProblem::new(vec![1.0; n], lifted_rows(&norm, n))?)?;
    match sol.status {
        LpStatus::Optimal => {
            let times = ProcessingTimes::from_lp(sol.values);
            let schedule = Schedule::build(times.values(), 1, vec![0; n])?;
            Ok(SolveReport::solved(
                SINGLE_MACHINE,
                Status::Optimal,
                times,
                schedule,
                0.0,
                1.0,
            ))
        }
        LpStatus::Infeasible => Ok(SolveReport::infeasible(SINGLE_MACHINE)),
        LpStatus::Unbounded => Err(SlcError::SolverFailure(
            "total-time LP reported unbounded".into(),
        )),
    }
}

/// The single `>=` row `(a, b)` of a one-constraint instance.
fn single_row(inst: &Instance) -> Result<(Vec<f64>, f64)> {
    let norm = inst.constraints().normalize();
    match norm.rows() {
        [row] => Ok((row.coeffs.clone(), row.rhs)),
        rows => Err(SlcError::InvalidArgument(format!(
            "single-constraint solver needs exactly one normalized row, got {}",
            rows.len()
        ))),
    }
}

/// Indices of the `count` largest coefficients, largest first, ties by index.
/// Uses selection, so only the selected prefix is sorted.
fn top_coefficients(a: &[f64], count: usize) -> Vec<usize> {
    let by_rank = |&i: &usize, &j: &usize| a[j].total_cmp(&a[i]).then(i.cmp(&j));
    let mut idx: Vec<usize> = (0..a.len()).collect();
    if count < idx.len() && count > 0 {
        idx.select_nth_unstable_by(count - 1, by_rank);
    }
    idx.truncate(count);
    idx.sort_unstable_by(by_rank);
    idx
}

struct SingleRowPlan {
    chosen: Vec<usize>,
    sigma: f64,
}

/// `None` when no coefficient is positive.
fn plan(a: &[f64], machines: usize) -> Option<SingleRowPlan> {
    let positive = a.iter().filter(|&&v| v > 0.0).count();
    if positive == 0 {
        return None;
    }
    let chosen = top_coefficients(a, positive.min(machines));
    let sigma = chosen.iter().map(|&i| a[i]).sum();
    Some(SingleRowPlan { chosen, sigma })
}

/// Closed form for one constraint `a·x >= b`.
///
/// The `n'` jobs with the largest coefficients, `n' = min(#positive, m)`, each
/// get time `b / sigma` on their own machine, where `sigma` is the sum of those
/// coefficients. A nonpositive `b` is met by `x = 0`.
pub fn solve_single_constraint(inst: &Instance) -> Result<SolveReport> {
    let (a, b) = single_row(inst)?;
    let n = inst.n_jobs();
    let m = inst.machines();
    if b <= 0.0 {
        return Ok(SolveReport::zero(SINGLE_CONSTRAINT, n, m));
    }
    let Some(plan) = plan(&a, m) else {
        return Ok(SolveReport::infeasible(SINGLE_CONSTRAINT));
    };
    let value = b / plan.sigma;
    let mut times = vec![0.0; n];
    let mut assignment = vec![0; n];
    for (machine, &job) in plan.chosen.iter().enumerate() {
        times[job] = value;
        assignment[job] = machine;
    }
    let schedule = Schedule::build(&times, m, assignment)?;
    Ok(SolveReport::solved(
        SINGLE_CONSTRAINT,
        Status::Optimal,
        ProcessingTimes::new(times)?,
        schedule,
        value,
        1.0,
    ))
}

/// Dual solution `(u, v, y)` certifying optimality of a one-constraint answer.
#[derive(Debug, Clone, PartialEq)]
pub struct DualCertificate {
    pub u: f64,
    pub v: f64,
    pub y: Vec<f64>,
}

impl DualCertificate {
    pub fn objective(&self, b: f64) -> f64 {
        b * self.u
    }
}

/// Builds the dual of the relaxation
/// `min t : a·x >= b, sum(x) <= m t, x_i <= t` at the closed-form point and
/// checks dual feasibility, primal feasibility of the report, and equal
/// objectives.
pub fn verify_dual_certificate_k1(
    inst: &Instance,
    report: &SolveReport,
) -> Result<DualCertificate> {
    let (a, b) = single_row(inst)?;
    let m = inst.machines();
    let mismatch = |msg: String| Err(SlcError::CertificateMismatch(msg));
    let Some(solution) = report.solution.as_ref() else {
        return mismatch("report carries no solution".into());
    };
    let t = solution.schedule.makespan();
    if t <= 0.0 {
        return mismatch(format!("makespan {t} is not positive"));
    }
    let Some(plan) = plan(&a, m) else {
        return mismatch("no positive coefficient".into());
    };

    let sigma = plan.sigma;
    let u = 1.0 / sigma;
    let mut y = vec![0.0; a.len()];
    let v = if plan.chosen.len() < m {
        for &i in &plan.chosen {
            y[i] = a[i] / sigma;
        }
        0.0
    } else {
        let a_m = a[*plan.chosen.last().expect("n' >= 1")];
        for &i in &plan.chosen {
            y[i] = (a[i] - a_m) / sigma;
        }
        a_m / sigma
    };
    let cert = DualCertificate { u, v, y };

    if cert.u < -EPS_CMP || cert.v < -EPS_CMP || cert.y.iter().any(|&yi| yi < -EPS_CMP) {
        return mismatch("negative dual variable".into());
    }
    for (i, (&ai, &yi)) in a.iter().zip(&cert.y).enumerate() {
        if ai * cert.u - yi - cert.v > EPS_CMP {
            return mismatch(format!("dual row {i} violated"));
        }
    }
    let budget: f64 = cert.y.iter().sum::<f64>() + m as f64 * cert.v;
    if budget > 1.0 + EPS_CMP {
        return mismatch(format!("sum(y) + m v = {budget} exceeds 1"));
    }

    let x = solution.times.values();
    let lhs: f64 = a.iter().zip(x).map(|(p, q)| p * q).sum();
    let total: f64 = x.iter().sum();
    let slack = EPS_FEAS * (1.0 + t);
    if lhs < b - EPS_FEAS * (1.0 + b.abs())
        || total > m as f64 * t + slack
        || x.iter().any(|&xi| xi > t + slack)
    {
        return mismatch("reported point is not feasible for the relaxation".into());
    }
    let dual_value = cert.objective(b);
    if !approx_eq(dual_value, t) {
        return mismatch(format!(
            "dual objective {dual_value} differs from makespan {t}"
        ));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ConstraintSystem, Row};

    fn one_row(a: &[f64], b: f64, m: usize) -> Instance {
        let cs = ConstraintSystem::new(a.len(), vec![Row::ge(a.to_vec(), b)]).unwrap();
        Instance::new(m, cs).unwrap()
    }

    #[test]
    fn single_machine_binding_bounds() {
        let inst = Instance::new(1, ConstraintSystem::identity(&[1.0, 2.0, 3.0]).unwrap()).unwrap();
        let r = solve_single_machine(&inst).unwrap();
        assert_eq!(r.status, Status::Optimal);
        assert_eq!(r.makespan(), Some(6.0));
        assert_eq!(r.times().unwrap().values(), &[1.0, 2.0, 3.0]);
    }

    #[test]
    fn single_machine_one_row() {
        let r = solve_single_machine(&one_row(&[1.0, 1.0], 4.0, 1)).unwrap();
        assert_eq!(r.makespan(), Some(4.0));
        let x = r.times().unwrap().values();
        assert!(x == [4.0, 0.0] || x == [0.0, 4.0]);
    }

    #[test]
    fn single_machine_zero_feasible() {
        let r = solve_single_machine(&one_row(&[1.0, -1.0], 0.0, 1)).unwrap();
        assert_eq!(r.makespan(), Some(0.0));
        assert_eq!(r.times().unwrap().values(), &[0.0, 0.0]);
    }

    #[test]
    fn single_machine_requires_one_machine() {
        assert!(solve_single_machine(&one_row(&[1.0], 1.0, 2)).is_err());
    }

    #[test]
    fn alloy_row() {
        let r = solve_single_constraint(&one_row(&[24.0, 8.0, 3.0, 2.0], 56.0, 2)).unwrap();
        assert_eq!(r.status, Status::Optimal);
        assert_eq!(r.makespan(), Some(1.75));
        assert_eq!(r.times().unwrap().values(), &[1.75, 1.75, 0.0, 0.0]);
    }

    #[test]
    fn symmetric_row() {
        let r = solve_single_constraint(&one_row(&[1.0, 1.0, 1.0], 6.0, 3)).unwrap();
        assert_eq!(r.makespan(), Some(2.0));
        assert_eq!(r.times().unwrap().values(), &[2.0, 2.0, 2.0]);
    }

    #[test]
    fn nonpositive_coefficients_infeasible() {
        let r = solve_single_constraint(&one_row(&[-1.0, -2.0], 3.0, 2)).unwrap();
        assert_eq!(r.status, Status::Infeasible);
        let r = solve_single_constraint(&one_row(&[-1.0, -2.0], 0.0, 2)).unwrap();
        assert_eq!(r.makespan(), Some(0.0));
    }

    #[test]
    fn uneven_pair() {
        let r = solve_single_constraint(&one_row(&[5.0, 1.0], 10.0, 2)).unwrap();
        assert!((r.makespan().unwrap() - 10.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn negative_rhs_gives_zero() {
        let r = solve_single_constraint(&one_row(&[1.0, 2.0], -3.0, 2)).unwrap();
        assert_eq!(r.makespan(), Some(0.0));
    }

    #[test]
    fn le_row_is_accepted() {
        // -x1 - x2 <= -4 is x1 + x2 >= 4.
        let cs = ConstraintSystem::new(2, vec![Row::le(vec![-1.0, -1.0], -4.0)]).unwrap();
        let r = solve_single_constraint(&Instance::new(2, cs).unwrap()).unwrap();
        assert_eq!(r.makespan(), Some(2.0));
    }

    #[test]
    fn rejects_multiple_rows() {
        let cs = ConstraintSystem::new(1, vec![Row::eq(vec![1.0], 1.0)]).unwrap();
        assert!(solve_single_constraint(&Instance::new(2, cs).unwrap()).is_err());
    }

    #[test]
    fn top_selection_is_ordered() {
        assert_eq!(
            top_coefficients(&[1.0, 5.0, 3.0, 5.0, 0.0], 3),
            vec![1, 3, 2]
        );
        assert_eq!(top_coefficients(&[2.0], 1), vec![0]);
    }

    #[test]
    fn certificate_tight_case() {
        let inst = one_row(&[1.0, 1.0, 1.0], 6.0, 3);
        let r = solve_single_constraint(&inst).unwrap();
        let c = verify_dual_certificate_k1(&inst, &r).unwrap();
        assert!((c.u - 1.0 / 3.0).abs() < 1e-15);
        assert!((c.v - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(c.y, vec![0.0, 0.0, 0.0]);
        assert!((c.objective(6.0) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn certificate_spare_machine_case() {
        let inst = one_row(&[5.0, 1.0], 10.0, 3);
        let r = solve_single_constraint(&inst).unwrap();
        let c = verify_dual_certificate_k1(&inst, &r).unwrap();
        assert!((c.u - 1.0 / 6.0).abs() < 1e-15);
        assert_eq!(c.v, 0.0);
        assert!((c.y[0] - 5.0 / 6.0).abs() < 1e-15);
        assert!((c.y[1] - 1.0 / 6.0).abs() < 1e-15);
        assert!((c.objective(10.0) - 10.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn certificate_rejects_tampered_makespan() {
        let inst = one_row(&[5.0, 1.0], 10.0, 3);
        let mut r = solve_single_constraint(&inst).unwrap();
        let sol = r.solution.as_mut().unwrap();
        let s = &sol.schedule;
        sol.schedule = Schedule::from_parts(s.assignment().to_vec(), s.loads().to_vec(), 1.0);
        assert!(matches!(
            verify_dual_certificate_k1(&inst, &r),
            Err(SlcError::CertificateMismatch(_))
        ));
    }
}
