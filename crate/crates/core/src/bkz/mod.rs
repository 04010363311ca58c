//! BKZ reduction with pluggable SVP backends.
//!
//! Every tour slides a window `[i, min(i + beta, n))` over the basis for
//! `i = 0..n-1`, finds a shortest vector of the projected window by
//! enumeration, and inserts it when it beats `|b*_i|`. Backends only differ
//! in what they charge for each call: the classical backend records
//! enumeration nodes, the Grover-cost backend additionally synthesizes the
//! block's oracle and records the full Grover plan. Both return the same
//! basis.

mod enumerate;
mod lll;
mod quality;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use enumerate::{enumerate_block, projected_norm_sq, BlockGeometry, BlockSolution, GH_SLACK};
pub use lll::{is_size_reduced, lll, lll_rows, satisfies_lovasz, Delta};
pub use quality::{
    crossover_analysis, hermite_constant, quality_bound, quality_bound_ln, CrossoverReport,
    CrossoverRow,
};

use crate::grover::{plan_grover, GroverPlan, ResourceTotals, DEFAULT_SOLUTIONS};
use crate::lattice::{dot, GramSchmidtData, LatticeBasis};
use crate::oracle::{synthesize_oracle, CoefficientEncoding, Threshold};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EarlyTermination {
    /// Run until a tour changes nothing, however long that takes.
    None,
    /// Stop after the first tour that changes nothing, or after `max_tours`.
    NoChange,
    /// Run exactly `max_tours` tours.
    TourBudget,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BkzConfig {
    pub beta: usize,
    pub max_tours: usize,
    pub early_termination: EarlyTermination,
    pub delta: Delta,
}

impl BkzConfig {
    pub fn new(beta: usize) -> Self {
        BkzConfig {
            beta,
            max_tours: 64,
            early_termination: EarlyTermination::NoChange,
            delta: Delta::DEFAULT,
        }
    }
}

/// The block handed to a backend: the window's original rows, coefficient
/// boxes from the projected block's dual norms, and the radius searched.
#[derive(Clone, Debug)]
pub struct BlockProblem<'a> {
    pub rows: &'a [Vec<BigInt>],
    pub bounds: Vec<i64>,
    pub radius_sq: f64,
}

pub trait SvpBackend {
    fn name(&self) -> &'static str;

    /// Quantum charge for one SVP call, if this backend models one.
    fn charge(&mut self, block: &BlockProblem<'_>) -> Result<Option<GroverPlan>>;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ClassicalBackend;

impl SvpBackend for ClassicalBackend {
    fn name(&self) -> &'static str {
        "classical"
    }

    fn charge(&mut self, _: &BlockProblem<'_>) -> Result<Option<GroverPlan>> {
        Ok(None)
    }
}

/// Charges each call the Grover plan of an oracle synthesized for the
/// block's rows, with `M` assumed solutions. Plans are cached by block.
#[derive(Debug)]
pub struct GroverCostBackend {
    pub solutions: u64,
    cache: HashMap<(Vec<Vec<BigInt>>, Vec<i64>, u64), GroverPlan>,
    pub cache_hits: u64,
}

impl Default for GroverCostBackend {
    fn default() -> Self {
        GroverCostBackend {
            solutions: DEFAULT_SOLUTIONS,
            cache: HashMap::new(),
            cache_hits: 0,
        }
    }
}

impl SvpBackend for GroverCostBackend {
    fn name(&self) -> &'static str {
        "grover-cost"
    }

    fn charge(&mut self, block: &BlockProblem<'_>) -> Result<Option<GroverPlan>> {
        let tau = block.radius_sq.floor().max(0.0) as u64;
        let key = (block.rows.to_vec(), block.bounds.clone(), tau);
        if let Some(p) = self.cache.get(&key) {
            self.cache_hits += 1;
            return Ok(Some(p.clone()));
        }
        let basis = LatticeBasis::new(block.rows.to_vec())?;
        let enc = CoefficientEncoding::explicit(block.bounds.clone())?;
        let oracle = synthesize_oracle(&basis, &enc, &Threshold::explicit(tau))?;
        let m = self.solutions.min(1u64 << enc.total_input_bits().min(63));
        let plan = plan_grover(&oracle, m)?;
        self.cache.insert(key, plan.clone());
        Ok(Some(plan))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SvpCallRecord {
    pub tour: usize,
    pub start: usize,
    pub block_dim: usize,
    pub radius_sq: f64,
    pub nodes: u64,
    pub improved: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quantum: Option<GroverPlan>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CostLedger {
    pub backend: String,
    pub svp_calls: u64,
    pub calls_per_tour: Vec<u64>,
    pub total_nodes: u64,
    pub records: Vec<SvpCallRecord>,
    /// Sum of every call's Grover totals (width: the largest).
    pub quantum_totals: Option<ResourceTotals>,
}

impl CostLedger {
    fn record(&mut self, r: SvpCallRecord) {
        self.svp_calls += 1;
        *self.calls_per_tour.last_mut().expect("tour started") += 1;
        self.total_nodes += r.nodes;
        if let Some(p) = &r.quantum {
            let t = &p.totals;
            self.quantum_totals = Some(match self.quantum_totals.take() {
                None => t.clone(),
                Some(acc) => ResourceTotals {
                    width: acc.width.max(t.width),
                    depth: acc.depth + &t.depth,
                    quantum_cost: acc.quantum_cost + &t.quantum_cost,
                    t_count: acc.t_count + &t.t_count,
                    t_depth: acc.t_depth + &t.t_depth,
                },
            });
        }
        self.records.push(r);
    }
}

#[derive(Clone, Debug)]
pub struct ReducedBasis {
    pub basis: LatticeBasis,
    pub tours_executed: usize,
    /// Whether the last tour changed nothing.
    pub converged: bool,
    pub ledger: CostLedger,
    pub first_vector_norm_sq: BigInt,
}

/// Result of one SVP call.
#[derive(Clone, Debug)]
pub struct BlockResult {
    /// Coefficients over the window's rows.
    pub coefficients: Vec<i64>,
    pub nodes: u64,
    pub radius_sq: f64,
    pub quantum: Option<GroverPlan>,
}

/// A shortest vector of the projected window `start..end`. The search radius is
/// `min(|b*_start|, 1.05 gh)`; when nothing lies inside it the radius
/// falls back to `|b*_start|`, where `b_start` itself is a candidate.
pub fn svp_in_block(
    rows: &[Vec<BigInt>],
    gs: &GramSchmidtData,
    start: usize,
    end: usize,
    backend: &mut dyn SvpBackend,
) -> Result<BlockResult> {
    if start >= end || end > rows.len() {
        return Err(Error::input(format!(
            "empty or invalid window [{start}, {end})"
        )));
    }
    if end - start == 1 {
        let radius_sq = gs.bstar_norms_sq[start].to_f64().unwrap_or(f64::MAX);
        return Ok(BlockResult {
            coefficients: vec![1],
            nodes: 0,
            radius_sq,
            quantum: None,
        });
    }
    let g = BlockGeometry::new(gs, start, end);
    let mut radius_sq = g.default_radius_sq();
    let (mut found, mut nodes) = enumerate_block(&g, radius_sq);
    if found.is_none() {
        radius_sq = g.norms_sq[0];
        let (f, extra) = enumerate_block(&g, radius_sq);
        found = f;
        nodes += extra;
    }
    let x = match found {
        Some(s) => s.coefficients,
        None => {
            let mut e = vec![0; end - start];
            e[0] = 1;
            e
        }
    };
    let problem = BlockProblem {
        rows: &rows[start..end],
        bounds: g.coefficient_bounds(radius_sq),
        radius_sq,
    };
    let quantum = backend.charge(&problem)?;
    Ok(BlockResult {
        coefficients: x,
        nodes,
        radius_sq,
        quantum,
    })
}

/// Replaces the window rows by a unimodular transform of themselves whose
/// first row is `sum_t x_t b_{start+t}` divided by the gcd of `x`.
fn insert(rows: &mut [Vec<BigInt>], start: usize, x: &[i64]) {
    let mut x: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
    let Some(mut a) = (0..x.len())
        .filter(|&i| !x[i].is_zero())
        .min_by_key(|&i| x[i].abs())
    else {
        return;
    };
    for b in 0..x.len() {
        if b == a || x[b].is_zero() {
            continue;
        }
        // [r_a; r_b] <- [x_a/g, x_b/g; -t, s] [r_a; r_b], unimodular since s x_a + t x_b = g
        let e = x[a].extended_gcd(&x[b]);
        let (g, s, t) = (e.gcd, e.x, e.y);
        let (p, q) = (&x[a] / &g, &x[b] / &g);
        let (ra, rb) = (rows[start + a].clone(), rows[start + b].clone());
        rows[start + a] = ra.iter().zip(&rb).map(|(u, v)| &p * u + &q * v).collect();
        rows[start + b] = ra.iter().zip(&rb).map(|(u, v)| &s * v - &t * u).collect();
        x[a] = g;
        x[b] = BigInt::zero();
    }
    if x[a].is_negative() {
        rows[start + a].iter_mut().for_each(|v| *v = -&*v);
    }
    while a > 0 {
        rows.swap(start + a, start + a - 1);
        a -= 1;
    }
}

/// BKZ-`beta` reduction. The input is LLL-reduced first; the output is
/// LLL-reduced (hence size-reduced) after the last insertion.
pub fn bkz_reduce(
    basis: &LatticeBasis,
    config: &BkzConfig,
    backend: &mut dyn SvpBackend,
) -> Result<ReducedBasis> {
    let n = basis.n();
    if config.beta < 2 || config.beta > n {
        return Err(Error::input(format!(
            "blocksize {} must satisfy 2 <= beta <= n = {n}",
            config.beta
        )));
    }
    let mut rows = basis.rows().to_vec();
    lll_rows(&mut rows, config.delta);
    let mut ledger = CostLedger {
        backend: backend.name().to_string(),
        ..Default::default()
    };
    let mut tours = 0;
    let mut converged = false;
    loop {
        let budget_hit = tours >= config.max_tours;
        match config.early_termination {
            EarlyTermination::None if converged => break,
            EarlyTermination::NoChange if converged || budget_hit => break,
            EarlyTermination::TourBudget if budget_hit => break,
            _ => {}
        }
        ledger.calls_per_tour.push(0);
        let mut changed = false;
        for i in 0..n - 1 {
            let end = (i + config.beta).min(n);
            let gs = crate::lattice::gram_schmidt_rows(&rows);
            let BlockResult {
                coefficients,
                nodes,
                radius_sq,
                quantum,
            } = svp_in_block(&rows, &gs, i, end, backend)?;
            let improved = projected_norm_sq(&gs, i, &coefficients) < gs.bstar_norms_sq[i];
            if improved {
                insert(&mut rows, i, &coefficients);
                lll_rows(&mut rows, config.delta);
                changed = true;
            }
            ledger.record(SvpCallRecord {
                tour: tours,
                start: i,
                block_dim: end - i,
                radius_sq,
                nodes,
                improved,
                quantum,
            });
        }
        tours += 1;
        converged = !changed;
    }
    let first_vector_norm_sq = dot(&rows[0], &rows[0]);
    Ok(ReducedBasis {
        basis: LatticeBasis::new(rows)?,
        tours_executed: tours,
        converged,
        ledger,
        first_vector_norm_sq,
    })
}

/// Largest `|mu_ij|` over `i > j`, exactly.
pub fn max_abs_mu(basis: &LatticeBasis) -> BigRational {
    let gs = basis.gram_schmidt();
    let mut m = BigRational::zero();
    for i in 0..basis.n() {
        for j in 0..i {
            let a = gs.mu[i][j].abs();
            if a > m {
                m = a;
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::abs_det;

    fn b22() -> LatticeBasis {
        LatticeBasis::from_i64(&[vec![2, 1], vec![1, 3]]).unwrap()
    }

    #[test]
    fn rank_one_window() {
        let b = b22();
        let gs = b.gram_schmidt();
        let r = svp_in_block(b.rows(), &gs, 1, 2, &mut ClassicalBackend).unwrap();
        assert_eq!(r.coefficients, vec![1]);
    }

    #[test]
    fn full_window_on_worked_example() {
        let b = b22();
        let gs = b.gram_schmidt();
        let x = svp_in_block(b.rows(), &gs, 0, 2, &mut ClassicalBackend)
            .unwrap()
            .coefficients;
        assert_eq!(
            projected_norm_sq(&gs, 0, &x),
            BigRational::from_integer(5.into())
        );
        let r = bkz_reduce(&b, &BkzConfig::new(2), &mut ClassicalBackend).unwrap();
        assert_eq!(r.first_vector_norm_sq, BigInt::from(5));
    }

    #[test]
    fn insertion_is_unimodular() {
        let mut rows: Vec<Vec<BigInt>> = [[3, 1, 4], [1, 5, 9], [2, 6, 5]]
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        let det = abs_det(&rows);
        let x = [4, -6, 9];
        let want: Vec<BigInt> = (0..3)
            .map(|c| (0..3).map(|r| &rows[r][c] * BigInt::from(x[r])).sum())
            .collect();
        insert(&mut rows, 0, &x);
        assert_eq!(rows[0], want);
        assert_eq!(abs_det(&rows), det);
    }

    #[test]
    fn backends_agree_on_the_basis() {
        let b = LatticeBasis::from_i64(&[vec![7, 2, 1], vec![3, 8, -2], vec![1, -4, 9]]).unwrap();
        let cfg = BkzConfig::new(3);
        let c = bkz_reduce(&b, &cfg, &mut ClassicalBackend).unwrap();
        let mut gb = GroverCostBackend::default();
        let q = bkz_reduce(&b, &cfg, &mut gb).unwrap();
        assert_eq!(c.basis, q.basis);
        assert!(c.ledger.quantum_totals.is_none());
        assert!(q.ledger.quantum_totals.is_some());
        assert_eq!(c.ledger.svp_calls, q.ledger.svp_calls);
    }
}
