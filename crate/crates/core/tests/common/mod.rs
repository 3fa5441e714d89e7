#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use slc::generate::{generate, Family, GenerateConfig};
use slc::{ConstraintSystem, Instance, Row, Sense};

/// A system with normalized row count at most `k_max`, feasible at a hidden
/// point that has some zero coordinates. Senses are mixed; an equality row is
/// only drawn when two normalized rows remain.
pub fn mixed_instance(rng: &mut ChaCha8Rng, n: usize, m: usize, k_max: usize) -> Instance {
    let point: Vec<f64> = (0..n)
        .map(|_| {
            if rng.gen_bool(0.25) {
                0.0
            } else {
                rng.gen_range(0.5..6.0)
            }
        })
        .collect();
    let target = rng.gen_range(1..=k_max);
    let mut rows = Vec::new();
    let mut used = 0;
    while used < target {
        let coeffs: Vec<f64> = (0..n)
            .map(|_| {
                if rng.gen_bool(0.2) {
                    0.0
                } else {
                    (rng.gen_range(-3.0..10.0_f64) * 4.0).round() / 4.0
                }
            })
            .collect();
        let value: f64 = coeffs.iter().zip(&point).map(|(a, x)| a * x).sum();
        let slack = rng.gen_range(0.0..3.0);
        let sense = if target - used >= 2 && rng.gen_bool(0.25) {
            Sense::Eq
        } else if rng.gen_bool(0.7) {
            Sense::Ge
        } else {
            Sense::Le
        };
        let rhs = match sense {
            Sense::Ge => value - slack,
            Sense::Le => value + slack,
            Sense::Eq => value,
        };
        used += if sense == Sense::Eq { 2 } else { 1 };
        rows.push(Row::new(coeffs, sense, rhs));
    }
    Instance::new(m, ConstraintSystem::new(n, rows).unwrap()).unwrap()
}

/// Draws from the three generator families and [`mixed_instance`], keeping the
/// normalized row count at most `k_max`.
pub fn any_family_instance(
    rng: &mut ChaCha8Rng,
    n_max: usize,
    machines: &[usize],
    k_max: usize,
) -> Instance {
    let m = *machines.choose(rng).unwrap();
    let n = rng.gen_range(1..=n_max);
    match rng.gen_range(0..4) {
        0 => {
            let n = n.min(k_max);
            generate(&GenerateConfig {
                n,
                m,
                k: n,
                family: Family::Identity,
                seed: rng.gen(),
            })
            .unwrap()
        }
        1 => generate(&GenerateConfig {
            n,
            m,
            k: rng.gen_range(1..=k_max),
            family: Family::Blend,
            seed: rng.gen(),
        })
        .unwrap(),
        2 => generate(&GenerateConfig {
            n,
            m,
            k: rng.gen_range(1..=k_max),
            family: Family::Interval,
            seed: rng.gen(),
        })
        .unwrap(),
        _ => mixed_instance(rng, n, m, k_max),
    }
}

/// Single-row instance with `a_i` in `[-5, 10]` and `b` in `[0, 50]`.
pub fn single_row_instance(rng: &mut ChaCha8Rng, n_max: usize, m_max: usize) -> Instance {
    let n = rng.gen_range(1..=n_max);
    let m = rng.gen_range(1..=m_max);
    let coeffs: Vec<f64> = (0..n).map(|_| rng.gen_range(-5.0..=10.0)).collect();
    let b = rng.gen_range(0.0..=50.0);
    Instance::new(
        m,
        ConstraintSystem::new(n, vec![Row::ge(coeffs, b)]).unwrap(),
    )
    .unwrap()
}

/// Same instance with jobs permuted by `perm` (new job `j` is old job `perm[j]`).
pub fn permute_jobs(inst: &Instance, perm: &[usize]) -> Instance {
    let rows = inst
        .constraints()
        .rows()
        .iter()
        .map(|r| Row::new(perm.iter().map(|&j| r.coeffs[j]).collect(), r.sense, r.rhs))
        .collect();
    Instance::new(
        inst.machines(),
        ConstraintSystem::new(inst.n_jobs(), rows).unwrap(),
    )
    .unwrap()
}

pub fn shared_job_instance() -> Instance {
    let rows = (1..4)
        .map(|j| {
            let mut c = vec![0.0; 4];
            c[0] = 1.0;
            c[j] = 1.0;
            Row::eq(c, 5.0)
        })
        .collect();
    Instance::new(3, ConstraintSystem::new(4, rows).unwrap()).unwrap()
}
