//! Polynomial-time approximation scheme for a fixed number of machines.
//!
//! Guess the `h` largest jobs and a geometric interval for each of their
//! times, solve `min sum(x)` under those guesses, enumerate placements of the
//! guessed jobs that are not tiny, and list-schedule everything else.

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Result, SlcError};
use crate::lp::{solve_vertex, LpProblem};
use crate::model::{Instance, ProcessingTimes, Row, Schedule, Sense, SolveReport, Status};
use crate::tolerance::EPS_CMP;

use super::enumeration::{enumerate_subsets, pick, DEFAULT_ENUMERATION_BUDGET};
use super::list::assign_in_order;
use super::{binomial, compute_lower_bound_p, decode_digits, lifted_rows, Candidate};

const PTAS: &str = "ptas";

/// Accuracy parameter, guessed-set size and the time grid `T_0 .. T_l`.
#[derive(Debug, Clone, PartialEq)]
pub struct PtasConfig {
    pub epsilon: f64,
    /// `ceil((m - 1) / epsilon)`.
    pub h: usize,
    /// `T_0 = 0`, `T_1 = epsilon P / m`, `T_{i+1} = (1 + epsilon) T_i`, `T_l = P`.
    pub grid: Vec<f64>,
}

impl PtasConfig {
    pub fn new(epsilon: f64, machines: usize, total: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(SlcError::InvalidArgument(format!(
                "epsilon must lie in (0, 1), got {epsilon}"
            )));
        }
        if machines < 2 {
            return Err(SlcError::InvalidArgument("the PTAS needs m >= 2".into()));
        }
        if !(total > 0.0 && total.is_finite()) {
            return Err(SlcError::InvalidArgument(format!(
                "grid needs a positive total time, got {total}"
            )));
        }
        let h = (((machines - 1) as f64 / epsilon) - 1e-9).ceil() as usize;
        let first = epsilon * total / machines as f64;
        let mut grid = vec![0.0, first];
        let mut current = first;
        loop {
            let next = current * (1.0 + epsilon);
            if next >= total {
                grid.push(total);
                break;
            }
            grid.push(next);
            current = next;
        }
        Ok(PtasConfig { epsilon, h, grid })
    }

    /// Index `l` of the last breakpoint.
    pub fn levels(&self) -> usize {
        self.grid.len() - 1
    }
}

/// Rows forcing every job of `j_r` to be no longer than every job of `j_h`.
///
/// Uses one auxiliary variable `w` at column `n_jobs`: `x_j <= w` for `j` in
/// `j_r` and `w <= x_i` for `i` in `j_h`, which projects onto the pairwise
/// system with `|j_h| + |j_r|` rows instead of `|j_h| * |j_r|`.
pub fn build_lp4_pair_constraints(j_h: &[usize], j_r: &[usize], n_jobs: usize) -> Vec<Row> {
    if j_h.is_empty() {
        return Vec::new();
    }
    let vars = n_jobs + 1;
    let below = |job: usize, sign: f64| {
        let mut coeffs = vec![0.0; vars];
        coeffs[job] = sign;
        coeffs[n_jobs] = -sign;
        Row::new(coeffs, Sense::Le, 0.0)
    };
    j_r.iter()
        .map(|&j| below(j, 1.0))
        .chain(j_h.iter().map(|&i| below(i, -1.0)))
        .collect()
}

pub fn solve_ptas(inst: &Instance, epsilon: f64) -> Result<SolveReport> {
    solve_ptas_with_budget(inst, epsilon, DEFAULT_ENUMERATION_BUDGET)
}

/// `budget` caps the number of guessed LPs (or assignment LPs when the
/// instance is small enough to enumerate outright).
pub fn solve_ptas_with_budget(inst: &Instance, epsilon: f64, budget: u128) -> Result<SolveReport> {
    let n = inst.n_jobs();
    let m = inst.machines();
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(SlcError::InvalidArgument(format!(
            "epsilon must lie in (0, 1), got {epsilon}"
        )));
    }
    if m < 2 {
        return Err(SlcError::InvalidArgument("the PTAS needs m >= 2".into()));
    }
    let total = match compute_lower_bound_p(inst) {
        Ok(p) => p,
        Err(SlcError::Infeasible) => return Ok(SolveReport::infeasible(PTAS)),
        Err(e) => return Err(e),
    };
    if total <= EPS_CMP && inst.constraints().is_feasible_point(&vec![0.0; n]) {
        return Ok(SolveReport::zero(PTAS, n, m));
    }
    let config = PtasConfig::new(epsilon, m, total)?;
    if n <= config.h {
        return enumerate_subsets(inst, n, budget, PTAS);
    }

    let h = config.h;
    let l = config.levels();
    let per_subset = (l as u128).saturating_pow(h as u32);
    let lp_count = binomial(n, h).saturating_mul(per_subset);
    if lp_count > budget {
        return Err(SlcError::BudgetExceeded {
            required: lp_count,
            budget,
        });
    }
    let per_lp = (m as u128).saturating_pow(h as u32);
    let norm = inst.constraints().normalize();
    let base_rows = lifted_rows(&norm, n + 1);
    let subsets: Vec<Vec<usize>> = (0..n).combinations(h).collect();
    let grid = &config.grid;

    let best = (0..lp_count)
        .into_par_iter()
        .map(|index| -> Result<Option<Candidate>> {
            let guessed = &subsets[(index / per_subset) as usize];
            let mut in_guess = vec![false; n];
            for &i in guessed {
                in_guess[i] = true;
            }
            let rest: Vec<usize> = (0..n).filter(|&j| !in_guess[j]).collect();
            let mut level = vec![0; h];
            decode_digits(index % per_subset, l, &mut level);

            let mut rows = base_rows.clone();
            rows.extend(build_lp4_pair_constraints(guessed, &rest, n));
            for (&job, &digit) in guessed.iter().zip(&level) {
                let upper = grid[digit + 1];
                let lower = grid[digit];
                let mut coeffs = vec![0.0; n + 1];
                coeffs[job] = 1.0;
                if lower > 0.0 {
                    rows.push(Row::new(coeffs.clone(), Sense::Ge, lower));
                }
                rows.push(Row::new(coeffs, Sense::Le, upper));
            }
            let mut objective = vec![1.0; n + 1];
            objective[n] = 0.0;
            let sol = solve_vertex(&LpProblem::new(objective, rows)?)?;
            if !sol.is_optimal() {
                return Ok(None);
            }
            let mut x = sol.values;
            x.truncate(n);
            for v in &mut x {
                *v = v.max(0.0);
            }

            let small_cut = grid[1];
            let (big, tiny): (Vec<usize>, Vec<usize>) =
                guessed.iter().partition(|&&i| x[i] > small_cut);
            let mut listed: Vec<usize> = tiny.into_iter().chain(rest).collect();
            listed.sort_unstable();

            let placements = (m as u128).pow(big.len() as u32);
            let mut digits = vec![0; big.len()];
            let mut assignment = vec![0; n];
            let mut loads = vec![0.0; m];
            let mut best: Option<(f64, u128, Vec<usize>)> = None;
            for a in 0..placements {
                decode_digits(a, m, &mut digits);
                loads.iter_mut().for_each(|v| *v = 0.0);
                for (&job, &machine) in big.iter().zip(&digits) {
                    assignment[job] = machine;
                    loads[machine] += x[job];
                }
                assign_in_order(&x, &mut loads, listed.iter().copied(), &mut assignment);
                let makespan = loads.iter().copied().fold(0.0, f64::max);
                if best.as_ref().is_none_or(|(b, _, _)| makespan < *b) {
                    best = Some((makespan, a, assignment.clone()));
                }
            }
            Ok(best.map(|(makespan, a, assignment)| Candidate {
                makespan,
                index: index * per_lp + a,
                times: x,
                assignment,
            }))
        })
        .try_fold(
            || None,
            |acc: Option<Candidate>, item| item.map(|c| pick(acc, c)),
        )
        .try_reduce(|| None, |a, b| Ok(pick(a, b)))?;

    match best {
        None => Ok(SolveReport::infeasible(PTAS)),
        Some(c) => {
            let times = ProcessingTimes::from_lp(c.times);
            let schedule = Schedule::build(times.values(), m, c.assignment)?;
            Ok(SolveReport::solved(
                PTAS,
                Status::Approx,
                times,
                schedule,
                total / m as f64,
                1.0 + epsilon,
            ))
        }
    }
}
