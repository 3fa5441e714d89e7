//! Exponential-time exact solver used as ground truth in tests and benchmarks.
//!
//! Machines are identical, so it suffices to try each partition of the jobs
//! into at most `m` unlabeled groups once, solving the assignment LP for each.

use rayon::iter::{ParallelBridge, ParallelIterator};

use crate::algorithms::enumeration_lp3;
use crate::error::{Result, SlcError};
use crate::model::{Instance, ProcessingTimes, Schedule, SolveReport, Status};

/// `(t, partition index, times, groups)`.
type Best = Option<(f64, usize, Vec<f64>, Vec<usize>)>;

const ORACLE: &str = "oracle";

/// Restricted-growth strings of length `n` with values below `m`.
///
/// Each string is an assignment `job -> group` in canonical form: job 0 is in
/// group 0 and every job joins an existing group or opens the next one. This
/// visits each partition into at most `m` groups exactly once.
#[derive(Debug, Clone)]
pub struct PartitionIterator {
    n: usize,
    m: usize,
    current: Vec<usize>,
    /// `prefix_max[i] = max(current[..=i])`.
    prefix_max: Vec<usize>,
    started: bool,
    done: bool,
}

impl PartitionIterator {
    pub fn new(n: usize, m: usize) -> Self {
        PartitionIterator {
            n,
            m,
            current: vec![0; n],
            prefix_max: vec![0; n],
            started: false,
            done: n == 0 || m == 0,
        }
    }
}

impl Iterator for PartitionIterator {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.current.clone());
        }
        let mut i = self.n;
        while i > 1 {
            i -= 1;
            let cap = (self.prefix_max[i - 1] + 1).min(self.m - 1);
            if self.current[i] < cap {
                self.current[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.current[i]);
                for j in i + 1..self.n {
                    self.current[j] = 0;
                    self.prefix_max[j] = self.prefix_max[i];
                }
                return Some(self.current.clone());
            }
        }
        self.done = true;
        None
    }
}

/// Partitions of `n` labeled jobs into at most `m` groups: `sum_{j<=m} S(n, j)`.
/// Saturates at `u128::MAX`.
pub fn count_partitions(n: usize, m: usize) -> u128 {
    // stirling[j] = S(i, j) for the current row i.
    let mut stirling = vec![0u128; m + 1];
    stirling[0] = 1;
    for _ in 0..n {
        for j in (1..=m).rev() {
            stirling[j] = (j as u128)
                .saturating_mul(stirling[j])
                .saturating_add(stirling[j - 1]);
        }
        stirling[0] = 0;
    }
    stirling[1..]
        .iter()
        .fold(0u128, |acc, &s| acc.saturating_add(s))
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleConfig {
    pub max_jobs: usize,
    pub max_partitions: u128,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_jobs: 12,
            max_partitions: 5_000_000,
        }
    }
}

pub fn solve_exact(inst: &Instance) -> Result<SolveReport> {
    solve_exact_with(inst, &OracleConfig::default())
}

pub fn solve_exact_with(inst: &Instance, config: &OracleConfig) -> Result<SolveReport> {
    let n = inst.n_jobs();
    let m = inst.machines();
    if n > config.max_jobs {
        return Err(SlcError::BudgetExceeded {
            required: n as u128,
            budget: config.max_jobs as u128,
        });
    }
    let count = count_partitions(n, m);
    if count > config.max_partitions {
        return Err(SlcError::BudgetExceeded {
            required: count,
            budget: config.max_partitions,
        });
    }
    let norm = inst.constraints().normalize();

    let best = PartitionIterator::new(n, m)
        .enumerate()
        .par_bridge()
        .map(|(index, groups)| -> Result<Best> {
            let partial: Vec<Option<usize>> = groups.iter().map(|&g| Some(g)).collect();
            Ok(enumeration_lp3(&norm, m, &partial)?.map(|(x, t)| (t, index, x, groups)))
        })
        .try_reduce(
            || None,
            |a, b| {
                Ok(match (a, b) {
                    (None, x) | (x, None) => x,
                    (Some(a), Some(b)) => {
                        let a_first = a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).is_le();
                        Some(if a_first { a } else { b })
                    }
                })
            },
        )?;

    match best {
        None => Ok(SolveReport::infeasible(ORACLE)),
        Some((_, _, x, groups)) => {
            let times = ProcessingTimes::from_lp(x);
            let schedule = Schedule::build(times.values(), m, groups)?;
            Ok(SolveReport::solved(
                ORACLE,
                Status::Optimal,
                times,
                schedule,
                0.0,
                1.0,
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ConstraintSystem, Row};

    #[test]
    fn partition_counts() {
        assert_eq!(count_partitions(3, 2), 4);
        assert_eq!(count_partitions(4, 4), 15);
        assert_eq!(count_partitions(1, 5), 1);
        assert_eq!(count_partitions(12, 12), 4_213_597);
        assert_eq!(count_partitions(8, 3), 1 + 127 + 966);
    }

    #[test]
    fn iterator_matches_count() {
        for n in 1..=7 {
            for m in 1..=5 {
                let all: Vec<Vec<usize>> = PartitionIterator::new(n, m).collect();
                assert_eq!(all.len() as u128, count_partitions(n, m), "n={n} m={m}");
                let mut sorted = all.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(sorted.len(), all.len());
                assert!(all.iter().all(|g| g.iter().all(|&v| v < m) && g[0] == 0));
            }
        }
    }

    #[test]
    fn classical_instance() {
        let inst = Instance::new(
            2,
            ConstraintSystem::identity(&[3.0, 3.0, 2.0, 2.0, 2.0]).unwrap(),
        )
        .unwrap();
        let r = solve_exact(&inst).unwrap();
        assert!((r.makespan().unwrap() - 6.0).abs() < 1e-9);
    }

    #[test]
    fn shared_job_system() {
        let cs = ConstraintSystem::new(
            4,
            vec![
                Row::eq(vec![1.0, 1.0, 0.0, 0.0], 5.0),
                Row::eq(vec![1.0, 0.0, 1.0, 0.0], 5.0),
                Row::eq(vec![1.0, 0.0, 0.0, 1.0], 5.0),
            ],
        )
        .unwrap();
        let r = solve_exact(&Instance::new(3, cs).unwrap()).unwrap();
        assert!((r.makespan().unwrap() - 10.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn single_job_takes_its_minimum() {
        let cs = ConstraintSystem::new(1, vec![Row::ge(vec![2.0], 3.0), Row::le(vec![1.0], 9.0)])
            .unwrap();
        for m in 1..4 {
            let r = solve_exact(&Instance::new(m, cs.clone()).unwrap()).unwrap();
            assert!((r.makespan().unwrap() - 1.5).abs() < 1e-9);
        }
    }

    #[test]
    fn job_cap_enforced() {
        let inst = Instance::new(2, ConstraintSystem::identity(&[1.0; 13]).unwrap()).unwrap();
        assert!(matches!(
            solve_exact(&inst),
            Err(SlcError::BudgetExceeded { .. })
        ));
    }
}
