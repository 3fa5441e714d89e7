//! Benchmark suites that write CSV.
//!
//! `table4` tabulates the LP-rounding shrink factor `K` and its ratio
//! `m/(m-K)`. `ratios` runs the approximation solvers against the exact oracle
//! on small generated instances.

use std::io::Write;

use serde::Serialize;

use crate::algorithms::{
    compute_k_parameter, solve_auto, solve_lp_rounding_general, solve_modified_list_scheduling,
};
use crate::error::{Result, SlcError};
use crate::generate::{generate, Family, GenerateConfig};
use crate::oracle::solve_exact;

pub const TABLE4_K: [usize; 9] = [1, 2, 3, 4, 5, 10, 20, 50, 100];
pub const TABLE4_M: [usize; 2] = [10, 100];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table4Row {
    pub k: usize,
    pub m: usize,
    pub k_tilde: f64,
    #[serde(rename = "K")]
    pub big_k: f64,
    pub ratio: f64,
}

/// Rows ordered by `m`, then `k`.
pub fn table4() -> Result<Vec<Table4Row>> {
    let mut rows = Vec::new();
    for m in TABLE4_M {
        for k in TABLE4_K {
            let p = compute_k_parameter(k, m)?;
            rows.push(Table4Row {
                k,
                m,
                k_tilde: p.k_tilde,
                big_k: p.value,
                ratio: p.ratio(),
            });
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioRow {
    pub family: String,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub oracle: f64,
    pub mls: f64,
    pub mls_ratio: f64,
    pub mls_bound: f64,
    pub lp_general: f64,
    pub lp_general_ratio: f64,
    pub lp_general_bound: f64,
    pub auto: f64,
    pub auto_ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatiosConfig {
    pub seeds: u64,
    pub n: usize,
    pub machines: Vec<usize>,
    pub k: usize,
}

impl Default for RatiosConfig {
    fn default() -> Self {
        RatiosConfig {
            seeds: 5,
            n: 6,
            machines: vec![2, 3],
            k: 4,
        }
    }
}

/// One row per (family, machines, seed), in that nesting order.
pub fn ratios(config: &RatiosConfig) -> Result<Vec<RatioRow>> {
    let mut rows = Vec::new();
    for family in Family::ALL {
        for &m in &config.machines {
            for seed in 0..config.seeds {
                let inst = generate(&GenerateConfig {
                    n: config.n,
                    m,
                    k: config.k,
                    family,
                    seed,
                })?;
                let exact = makespan(&solve_exact(&inst)?)?;
                let mls = makespan(&solve_modified_list_scheduling(&inst)?)?;
                let lp = solve_lp_rounding_general(&inst)?;
                let lp_bound = lp.ratio_guarantee.unwrap_or(1.0);
                let lp = makespan(&lp)?;
                let auto = makespan(&solve_auto(&inst, None)?)?;
                rows.push(RatioRow {
                    family: family.name().to_string(),
                    seed,
                    n: inst.n_jobs(),
                    m,
                    k: inst.k(),
                    oracle: exact,
                    mls,
                    mls_ratio: ratio(mls, exact),
                    mls_bound: 2.0 - 1.0 / m as f64,
                    lp_general: lp,
                    lp_general_ratio: ratio(lp, exact),
                    lp_general_bound: lp_bound,
                    auto,
                    auto_ratio: ratio(auto, exact),
                });
            }
        }
    }
    Ok(rows)
}

pub fn write_csv<W: Write, T: Serialize>(out: W, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_error(e: csv::Error) -> SlcError {
    match e.into_kind() {
        csv::ErrorKind::Io(e) => SlcError::Io(e),
        other => SlcError::InvalidArgument(format!("csv: {other:?}")),
    }
}

fn makespan(report: &crate::model::SolveReport) -> Result<f64> {
    report.makespan().ok_or(SlcError::Infeasible)
}

/// `value / optimum`, with `0/0 = 1`.
fn ratio(value: f64, optimum: f64) -> f64 {
    if optimum <= crate::tolerance::EPS_CMP {
        if value <= crate::tolerance::EPS_CMP {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        value / optimum
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table4_has_eighteen_rows() {
        let rows = table4().unwrap();
        assert_eq!(rows.len(), 18);
        let row = |k, m| rows.iter().find(|r| r.k == k && r.m == m).unwrap();
        assert!((row(20, 100).big_k - 12.0).abs() < 0.005);
        assert!((row(20, 100).ratio - 1.1364).abs() < 0.00005);
        assert!((row(50, 10).big_k - 8.78).abs() < 0.005);
        assert!((row(50, 10).ratio - 8.2).abs() < 0.00005);
    }

    #[test]
    fn table4_csv_header() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &table4().unwrap()).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("k,m,k_tilde,K,ratio\n"));
        assert_eq!(text.lines().count(), 19);
    }

    #[test]
    fn ratios_within_bounds() {
        let config = RatiosConfig {
            seeds: 2,
            n: 5,
            machines: vec![2],
            k: 3,
        };
        let rows = ratios(&config).unwrap();
        assert_eq!(rows.len(), 6);
        for r in &rows {
            assert!(r.mls_ratio <= r.mls_bound + 1e-6, "{r:?}");
            assert!(r.lp_general_ratio <= r.lp_general_bound + 1e-6, "{r:?}");
            assert!(r.auto_ratio >= 1.0 - 1e-6, "{r:?}");
        }
        assert_eq!(rows, ratios(&config).unwrap());
    }
}
