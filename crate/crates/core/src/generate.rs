//! Seeded random instance families.
//!
//! Every family is feasible by construction: a hidden reference point `r > 0`
//! is drawn first and every row is built so that `r` satisfies it with slack.
//! The same seed always produces the same instance.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, SlcError};
use crate::model::{ConstraintSystem, Instance, Row};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `A = I`, `b = p` with `p` uniform on `[1, 10]`: classical `P||Cmax`.
    Identity,
    /// Nonnegative demand rows plus per-job upper caps.
    Blend,
    /// Mixed-sign attraction rows plus per-job minimum and maximum times.
    Interval,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Identity, Family::Blend, Family::Interval];

    pub fn name(self) -> &'static str {
        match self {
            Family::Identity => "identity",
            Family::Blend => "blend",
            Family::Interval => "interval",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = SlcError;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| SlcError::InvalidArgument(format!("unknown family {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenerateConfig {
    pub n: usize,
    pub m: usize,
    /// Row count. Ignored by [`Family::Identity`], which always has `n` rows.
    pub k: usize,
    pub family: Family,
    pub seed: u64,
}

pub fn generate(config: &GenerateConfig) -> Result<Instance> {
    let GenerateConfig {
        n,
        m,
        k,
        family,
        seed,
    } = *config;
    if n == 0 || m == 0 {
        return Err(SlcError::InvalidArgument("n and m must be positive".into()));
    }
    if k == 0 && family != Family::Identity {
        return Err(SlcError::InvalidArgument("k must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cs = match family {
        Family::Identity => {
            let p: Vec<f64> = (0..n).map(|_| cents(rng.gen_range(1.0..=10.0))).collect();
            ConstraintSystem::identity(&p)?
        }
        Family::Blend => blend(&mut rng, n, k)?,
        Family::Interval => interval(&mut rng, n, k)?,
    };
    Instance::new(m, cs)
}

/// `ceil(k/2)` demand rows `a·x ≥ u·a·r` with `u ∈ [0.2, 0.8]`, the rest caps
/// `x_j ≤ r_j` on distinct jobs where possible.
fn blend(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Result<ConstraintSystem> {
    let reference: Vec<f64> = (0..n).map(|_| cents(rng.gen_range(5.0..=15.0))).collect();
    let demands = k.div_ceil(2);
    let mut rows = Vec::with_capacity(k);
    for _ in 0..demands {
        let mut coeffs: Vec<f64> = (0..n).map(|_| cents(rng.gen_range(0.0..=10.0))).collect();
        if coeffs.iter().all(|&a| a == 0.0) {
            coeffs[rng.gen_range(0..n)] = 1.0;
        }
        let u = rng.gen_range(0.2..=0.8);
        rows.push(Row::ge(
            coeffs.clone(),
            floor_cents(u * dot(&coeffs, &reference)),
        ));
    }
    for c in 0..k - demands {
        let j = c % n;
        rows.push(Row::le(unit(n, j), reference[j]));
    }
    ConstraintSystem::new(n, rows)
}

/// `ceil(k/2)` attraction rows with coefficients in `[-2, 10]`, the rest
/// alternating minimum and maximum time rows. An attraction row is
/// `a·x >= a·r - (1 - u)|a·r|`.
fn interval(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Result<ConstraintSystem> {
    let reference: Vec<f64> = (0..n).map(|_| cents(rng.gen_range(1.0..=10.0))).collect();
    let attractions = k.div_ceil(2);
    let mut rows = Vec::with_capacity(k);
    for _ in 0..attractions {
        let coeffs: Vec<f64> = (0..n).map(|_| cents(rng.gen_range(-2.0..=10.0))).collect();
        let u = rng.gen_range(0.2..=0.8);
        let value = dot(&coeffs, &reference);
        // Lower the bound by a fraction of |value| so negative rows stay slack.
        rows.push(Row::ge(
            coeffs,
            floor_cents(value - (1.0 - u) * value.abs()),
        ));
    }
    for c in 0..k - attractions {
        let j = rng.gen_range(0..n);
        let u = rng.gen_range(0.2..=0.8);
        if c % 2 == 0 {
            rows.push(Row::ge(unit(n, j), floor_cents(u * reference[j])));
        } else {
            rows.push(Row::le(unit(n, j), ceil_cents((1.0 + u) * reference[j])));
        }
    }
    ConstraintSystem::new(n, rows)
}

fn unit(n: usize, j: usize) -> Vec<f64> {
    let mut v = vec![0.0; n];
    v[j] = 1.0;
    v
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn cents(v: f64) -> f64 {
    (v * 100.0).round() / 100.0
}

fn floor_cents(v: f64) -> f64 {
    (v * 100.0).floor() / 100.0
}

fn ceil_cents(v: f64) -> f64 {
    (v * 100.0).ceil() / 100.0
}
