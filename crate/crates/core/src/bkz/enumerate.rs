//! Schnorr-Euchner enumeration over a projected block, in floating point,
//! with per-coordinate boxes from the block's dual norms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::lattice::{gh_from_ln_volume, ln_sqrt_rational, GramSchmidtData};

/// Enumeration radius slack over the projected Gaussian heuristic.
pub const GH_SLACK: f64 = 1.05;

const REL_EPS: f64 = 1e-9;

/// A shortest nonzero vector of a projected block, as integer coefficients
/// over the block's rows.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockSolution {
    pub coefficients: Vec<i64>,
    pub projected_norm_sq: f64,
    pub nodes: u64,
}

/// The `mu` and `|b*|^2` restricted to rows `start..end`, as floats.
#[derive(Clone, Debug)]
pub struct BlockGeometry {
    pub mu: Vec<Vec<f64>>,
    pub norms_sq: Vec<f64>,
    pub ln_volume: f64,
}

impl BlockGeometry {
    pub fn new(gs: &GramSchmidtData, start: usize, end: usize) -> Self {
        let k = end - start;
        let mu = (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| gs.mu[start + a][start + b].to_f64().unwrap_or(0.0))
                    .collect()
            })
            .collect();
        let norms_sq = (start..end)
            .map(|t| gs.bstar_norms_sq[t].to_f64().unwrap_or(f64::MAX))
            .collect();
        let ln_volume = (start..end)
            .map(|t| ln_sqrt_rational(&gs.bstar_norms_sq[t]))
            .sum();
        BlockGeometry {
            mu,
            norms_sq,
            ln_volume,
        }
    }

    pub fn dim(&self) -> usize {
        self.norms_sq.len()
    }

    pub fn gaussian_heuristic(&self) -> f64 {
        gh_from_ln_volume(self.dim(), self.ln_volume)
    }

    /// `min(|b*_start|^2, (1.05 gh)^2)`.
    pub fn default_radius_sq(&self) -> f64 {
        let gh = GH_SLACK * self.gaussian_heuristic();
        self.norms_sq[0].min(gh * gh)
    }

    /// Norms of the dual basis of the projected block: `|x_t| <= R |d_t|`
    /// for any block vector of length at most `R`.
    pub fn dual_norms(&self) -> Vec<f64> {
        let k = self.dim();
        // inverse of the unit lower-triangular mu
        let mut inv = vec![vec![0.0; k]; k];
        for i in 0..k {
            inv[i][i] = 1.0;
            for j in (0..i).rev() {
                let s: f64 = (j..i).map(|l| self.mu[i][l] * inv[l][j]).sum();
                inv[i][j] = -s;
            }
        }
        (0..k)
            .map(|t| {
                (t..k)
                    .map(|s| inv[s][t] * inv[s][t] / self.norms_sq[s])
                    .sum::<f64>()
                    .sqrt()
            })
            .collect()
    }

    /// Coefficient boxes for radius `sqrt(radius_sq)`, at least 1.
    pub fn coefficient_bounds(&self, radius_sq: f64) -> Vec<i64> {
        let r = radius_sq.sqrt();
        self.dual_norms()
            .iter()
            .map(|&d| ((r * d * (1.0 + REL_EPS)).floor() as i64).max(1))
            .collect()
    }
}

/// Exact `|pi_start(sum_t x_t b_{start+t})|^2`.
pub fn projected_norm_sq(gs: &GramSchmidtData, start: usize, x: &[i64]) -> BigRational {
    let k = x.len();
    let mut total = BigRational::zero();
    for t in 0..k {
        let mut c = BigRational::from_integer(BigInt::from(x[t]));
        for s in t + 1..k {
            if x[s] != 0 {
                c += &gs.mu[start + s][start + t] * BigRational::from_integer(BigInt::from(x[s]));
            }
        }
        total += &c * &c * &gs.bstar_norms_sq[start + t];
    }
    total
}

struct Search<'a> {
    g: &'a BlockGeometry,
    dual: Vec<f64>,
    x: Vec<i64>,
    best: Option<(Vec<i64>, f64)>,
    bound_sq: f64,
    nodes: u64,
}

impl Search<'_> {
    fn limit(&self) -> f64 {
        self.bound_sq * (1.0 + REL_EPS)
    }

    fn rec(&mut self, t: usize, partial: f64, top_zero: bool) {
        let k = self.g.dim();
        let center: f64 = -(t + 1..k)
            .map(|s| self.x[s] as f64 * self.g.mu[s][t])
            .sum::<f64>();
        let base = center.round() as i64;
        // zigzag: the side of `base` nearer to `center` first
        let dir = if center >= base as f64 { 1 } else { -1 };
        let (mut near, mut far) = (base, base - dir);
        let (mut near_live, mut far_live) = (true, !top_zero);
        while near_live || far_live {
            if near_live {
                near_live = self.visit(t, near, center, partial, top_zero);
                near += dir;
            }
            if far_live {
                far_live = self.visit(t, far, center, partial, top_zero);
                far -= dir;
            }
        }
        self.x[t] = 0;
    }

    /// Tries `x_t = v`; returns false once `v` leaves the ball, which ends
    /// that side of the zigzag. Values outside the dual box are skipped.
    fn visit(&mut self, t: usize, v: i64, center: f64, partial: f64, top_zero: bool) -> bool {
        let diff = v as f64 - center;
        let len = partial + diff * diff * self.g.norms_sq[t];
        if len > self.limit() {
            return false;
        }
        let box_t = (self.limit().sqrt() * self.dual[t]).floor() as i64;
        if v.abs() > box_t.max(0) {
            return true;
        }
        self.nodes += 1;
        self.x[t] = v;
        let zero_here = top_zero && v == 0;
        if t == 0 {
            if !zero_here
                && self
                    .best
                    .as_ref()
                    .is_none_or(|(_, b)| len < *b * (1.0 - 1e-12))
            {
                self.best = Some((self.x.clone(), len));
                self.bound_sq = len;
            }
        } else {
            self.rec(t - 1, len, zero_here);
        }
        true
    }
}

/// Shortest nonzero vector of the block within `radius_sq`, or `None`.
/// Only coefficient vectors whose last nonzero entry is positive are
/// visited.
pub fn enumerate_block(g: &BlockGeometry, radius_sq: f64) -> (Option<BlockSolution>, u64) {
    let k = g.dim();
    let mut s = Search {
        g,
        dual: g.dual_norms(),
        x: vec![0; k],
        best: None,
        bound_sq: radius_sq,
        nodes: 0,
    };
    s.rec(k - 1, 0.0, true);
    let nodes = s.nodes;
    (
        s.best
            .map(|(coefficients, projected_norm_sq)| BlockSolution {
                coefficients,
                projected_norm_sq,
                nodes,
            }),
        nodes,
    )
}
