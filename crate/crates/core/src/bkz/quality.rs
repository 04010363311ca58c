//! Hermite constants, the BKZ first-vector bound, and the classical versus
//! quantum blocksize crossover.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// `gamma_n^n` for `n = 2..=8`; the only dimensions where the Hermite
/// constant is known exactly.
const HERMITE_POWER: [(u32, f64); 7] = [
    (2, 4.0 / 3.0),
    (3, 2.0),
    (4, 4.0),
    (5, 8.0),
    (6, 64.0 / 3.0),
    (7, 64.0),
    (8, 256.0),
];

pub fn hermite_constant(n: u32) -> Option<f64> {
    if n == 1 {
        return Some(1.0);
    }
    HERMITE_POWER
        .iter()
        .find(|(k, _)| *k == n)
        .map(|&(k, p)| p.powf(1.0 / k as f64))
}

/// `gamma^e * vol^(1/n)` with `e = (n-1)/(2(beta-1)) + beta(beta-2)/(2n(beta-1))`,
/// taking `ln vol`. `gamma` overrides the table, and is required for
/// `beta > 8`.
pub fn quality_bound_ln(n: u32, beta: u32, ln_vol: f64, gamma: Option<f64>) -> Result<f64> {
    if beta < 2 || beta > n {
        return Err(Error::input(format!(
            "blocksize {beta} must satisfy 2 <= beta <= n = {n}"
        )));
    }
    let g = match gamma.or_else(|| hermite_constant(beta)) {
        Some(g) => g,
        None => {
            return Err(Error::input(format!(
                "no Hermite constant known for blocksize {beta}; supply one"
            )))
        }
    };
    let (nf, bf) = (n as f64, beta as f64);
    let e = (nf - 1.0) / (2.0 * (bf - 1.0)) + bf * (bf - 2.0) / (2.0 * nf * (bf - 1.0));
    Ok((e * g.ln() + ln_vol / nf).exp())
}

pub fn quality_bound(n: u32, beta: u32, vol: f64) -> Result<f64> {
    quality_bound_ln(n, beta, vol.ln(), None)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossoverRow {
    pub beta: u32,
    /// `c * beta * log2(beta)`.
    pub log2_classical: f64,
    /// Half the classical exponent.
    pub log2_quantum: f64,
    /// Quantum exponent plus `log2` of the measured per-iteration cost.
    pub log2_quantum_measured: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossoverReport {
    pub c: f64,
    pub classical_beta: u32,
    /// Blocksize at which the quantum exponent equals the classical one.
    pub quantum_beta: f64,
    pub quantum_beta_measured: Option<f64>,
    pub rows: Vec<CrossoverRow>,
}

fn beta_log_beta(b: f64) -> f64 {
    b * b.log2()
}

/// Solves `f(b) = target` for increasing `f` on `[lo, hi]`.
fn bisect(f: impl Fn(f64) -> f64, target: f64, mut lo: f64, mut hi: f64) -> f64 {
    while f(hi) < target {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Classical enumeration costs `2^(c b log2 b)`, Grover-accelerated
/// enumeration `2^(c b log2 b / 2)`. Reports both over `betas` and the
/// quantum blocksize reachable at the cost of classical `classical_beta`.
/// `per_iteration_log2`, when given, adds `log2` of a measured
/// per-iteration circuit cost at each blocksize to the quantum side.
pub fn crossover_analysis(
    c: f64,
    betas: &[u32],
    classical_beta: u32,
    per_iteration_log2: Option<&dyn Fn(u32) -> f64>,
) -> Result<CrossoverReport> {
    if !(c > 0.0) {
        return Err(Error::input(format!(
            "model constant must be positive, got {c}"
        )));
    }
    if classical_beta < 2 {
        return Err(Error::input("classical blocksize must be at least 2"));
    }
    let rows = betas
        .iter()
        .map(|&b| {
            let cl = c * beta_log_beta(b as f64);
            CrossoverRow {
                beta: b,
                log2_classical: cl,
                log2_quantum: cl / 2.0,
                log2_quantum_measured: per_iteration_log2.map(|f| cl / 2.0 + f(b)),
            }
        })
        .collect();
    let target = c * beta_log_beta(classical_beta as f64);
    let lo = classical_beta as f64;
    let quantum_beta = bisect(|b| c * beta_log_beta(b) / 2.0, target, lo, 2.0 * lo);
    let quantum_beta_measured = per_iteration_log2.map(|f| {
        // the measured cost is only known at integers; interpolate linearly
        let g = |b: f64| {
            let (fl, ce) = (b.floor(), b.ceil());
            let t = b - fl;
            c * beta_log_beta(b) / 2.0 + (1.0 - t) * f(fl as u32) + t * f(ce as u32)
        };
        if g(2.0) >= target {
            2.0
        } else {
            bisect(g, target, 2.0, 2.0 * lo)
        }
    });
    Ok(CrossoverReport {
        c,
        classical_beta,
        quantum_beta,
        quantum_beta_measured,
        rows,
    })
}
