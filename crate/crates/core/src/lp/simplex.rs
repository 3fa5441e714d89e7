//! Dense two-phase tableau simplex with Bland's anti-cycling rule.
//!
//! Column layout of the internal standard form: `[0, n)` structural variables,
//! `[n, n + r)` one slack slot per row (unused for equality rows), then one
//! artificial column per row that lacks a unit slack.

use crate::error::{Result, SlcError};
use crate::model::Sense;
use crate::tolerance::{EPS_FEAS, EPS_OPT, EPS_PIVOT};

use super::{LpProblem, LpSolution, LpStatus};

struct Tableau {
    rows: usize,
    cols: usize,
    /// Row-major, `cols + 1` entries per row; the last entry is the rhs.
    data: Vec<f64>,
    basis: Vec<usize>,
    reduced: Vec<f64>,
    enterable: Vec<bool>,
}

impl Tableau {
    #[inline]
    fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * (self.cols + 1) + j]
    }

    #[inline]
    fn rhs(&self, i: usize) -> f64 {
        self.data[i * (self.cols + 1) + self.cols]
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let width = self.cols + 1;
        let p = self.at(pr, pc);
        let (before, rest) = self.data.split_at_mut(pr * width);
        let (prow, after) = rest.split_at_mut(width);
        for v in prow.iter_mut() {
            *v /= p;
        }
        prow[pc] = 1.0;
        for row in before
            .chunks_exact_mut(width)
            .chain(after.chunks_exact_mut(width))
        {
            let f = row[pc];
            if f != 0.0 {
                for (v, &pv) in row.iter_mut().zip(prow.iter()) {
                    *v -= f * pv;
                }
                row[pc] = 0.0;
            }
        }
        let f = self.reduced[pc];
        if f != 0.0 {
            for (d, &pv) in self.reduced.iter_mut().zip(prow.iter()) {
                *d -= f * pv;
            }
            self.reduced[pc] = 0.0;
        }
        self.basis[pr] = pc;
    }

    /// Reduced costs `c_j - c_B B^-1 A_j` for the current basis.
    fn price(&mut self, cost: &[f64]) {
        self.reduced = cost.to_vec();
        for i in 0..self.rows {
            let cb = cost[self.basis[i]];
            if cb != 0.0 {
                for j in 0..self.cols {
                    self.reduced[j] -= cb * self.at(i, j);
                }
            }
        }
        for &b in &self.basis {
            self.reduced[b] = 0.0;
        }
    }

    fn run(&mut self, max_iter: usize) -> Result<Option<()>> {
        for _ in 0..max_iter {
            // Bland: lowest-index improving column.
            let Some(pc) =
                (0..self.cols).find(|&j| self.enterable[j] && self.reduced[j] < -EPS_OPT)
            else {
                return Ok(Some(()));
            };
            let mut best: Option<(f64, usize)> = None;
            for i in 0..self.rows {
                let a = self.at(i, pc);
                if a > EPS_PIVOT {
                    let ratio = self.rhs(i).max(0.0) / a;
                    best = match best {
                        None => Some((ratio, i)),
                        Some((r, bi)) => {
                            let tie = (ratio - r).abs() <= 1e-12 * (1.0 + r.abs());
                            if (tie && self.basis[i] < self.basis[bi]) || (!tie && ratio < r) {
                                Some((ratio, i))
                            } else {
                                Some((r, bi))
                            }
                        }
                    };
                }
            }
            match best {
                None => return Ok(None),
                Some((_, pr)) => self.pivot(pr, pc),
            }
        }
        Err(SlcError::SolverFailure(format!(
            "simplex did not terminate within {max_iter} pivots"
        )))
    }
}

pub(super) fn solve(problem: &LpProblem) -> Result<LpSolution> {
    let n = problem.n_vars();
    let r = problem.rows.len();

    // Orient each row so its rhs is nonnegative, then pick an initial basic column.
    let mut slack_sign = vec![0.0; r];
    let mut flip = vec![false; r];
    let mut needs_artificial = Vec::new();
    for (i, row) in problem.rows.iter().enumerate() {
        let s = match row.sense {
            Sense::Ge => -1.0,
            Sense::Le => 1.0,
            Sense::Eq => 0.0,
        };
        flip[i] = row.rhs < 0.0;
        slack_sign[i] = if flip[i] { -s } else { s };
        if slack_sign[i] != 1.0 {
            needs_artificial.push(i);
        }
    }
    let n_art = needs_artificial.len();
    let cols = n + r + n_art;
    let width = cols + 1;

    let mut data = vec![0.0; r * width];
    let mut basis = vec![0; r];
    for (i, row) in problem.rows.iter().enumerate() {
        let sign = if flip[i] { -1.0 } else { 1.0 };
        let line = &mut data[i * width..(i + 1) * width];
        for (j, &a) in row.coeffs.iter().enumerate() {
            line[j] = sign * a;
        }
        line[n + i] = slack_sign[i];
        line[cols] = sign * row.rhs;
        basis[i] = n + i;
    }
    for (a, &i) in needs_artificial.iter().enumerate() {
        data[i * width + n + r + a] = 1.0;
        basis[i] = n + r + a;
    }

    let mut enterable = vec![true; cols];
    for (i, row) in problem.rows.iter().enumerate() {
        if row.sense == Sense::Eq {
            enterable[n + i] = false;
        }
    }

    let mut tab = Tableau {
        rows: r,
        cols,
        data,
        basis,
        reduced: vec![0.0; cols],
        enterable,
    };
    let max_iter = 50 * (r + cols) + 1000;

    if n_art > 0 {
        let mut cost = vec![0.0; cols];
        for c in &mut cost[n + r..] {
            *c = 1.0;
        }
        tab.price(&cost);
        if tab.run(max_iter)?.is_none() {
            return Err(SlcError::SolverFailure(
                "phase one reported an unbounded ray".into(),
            ));
        }
        let scale = problem
            .rows
            .iter()
            .fold(0.0_f64, |acc, row| acc.max(row.rhs.abs()));
        let residual: f64 = (0..r)
            .filter(|&i| tab.basis[i] >= n + r)
            .map(|i| tab.rhs(i).max(0.0))
            .sum();
        if residual > EPS_FEAS * (1.0 + scale) {
            return Ok(LpSolution::without_point(LpStatus::Infeasible));
        }
        // Drive zero-level artificials out of the basis; rows where that is
        // impossible are redundant and keep their artificial at zero.
        for i in 0..r {
            if tab.basis[i] < n + r {
                continue;
            }
            let mut best: Option<(f64, usize)> = None;
            for j in 0..n + r {
                let a = tab.at(i, j).abs();
                if tab.enterable[j] && a > EPS_PIVOT && best.is_none_or(|(b, _)| a > b) {
                    best = Some((a, j));
                }
            }
            if let Some((_, j)) = best {
                tab.data[i * width + cols] = 0.0;
                tab.pivot(i, j);
            }
        }
        for e in &mut tab.enterable[n + r..] {
            *e = false;
        }
    }

    let mut cost = vec![0.0; cols];
    cost[..n].copy_from_slice(&problem.objective);
    tab.price(&cost);
    if tab.run(max_iter)?.is_none() {
        return Ok(LpSolution::without_point(LpStatus::Unbounded));
    }

    let mut values = vec![0.0; n];
    let mut slacks = vec![0.0; r];
    for i in 0..r {
        let b = tab.basis[i];
        let v = tab.rhs(i).max(0.0);
        if b < n {
            values[b] = v;
        } else if b < n + r {
            slacks[b - n] = v;
        }
    }
    let objective_value = problem
        .objective
        .iter()
        .zip(&values)
        .map(|(c, x)| c * x)
        .sum();
    let mut basis = tab.basis;
    basis.sort_unstable();
    Ok(LpSolution {
        status: LpStatus::Optimal,
        values,
        slacks,
        objective_value,
        basis,
    })
}
