//! Floating-point tolerance policy shared by every module.
//!
//! The scheduling results are exact-arithmetic statements; these constants are
//! the single place where they are translated to `f64`.

/// Relative feasibility slack for linear rows: `a·x >= b - EPS_FEAS * (1 + |b|)`.
pub const EPS_FEAS: f64 = 1e-7;

/// Comparison tolerance for recomputed quantities (loads, makespans, objectives).
pub const EPS_CMP: f64 = 1e-9;

/// Reduced-cost threshold for simplex optimality.
pub const EPS_OPT: f64 = 1e-9;

/// Smallest admissible pivot magnitude.
pub const EPS_PIVOT: f64 = 1e-10;

/// Snapping radius for reading vertex coordinates as exactly `0` or exactly `t`.
pub const EPS_SNAP: f64 = 1e-6;

/// `|a - b| <= EPS_CMP * (1 + max(|a|, |b|))`.
pub fn approx_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= EPS_CMP * (1.0 + a.abs().max(b.abs()))
}

pub(crate) fn feas_slack(rhs: f64) -> f64 {
    EPS_FEAS * (1.0 + rhs.abs())
}
