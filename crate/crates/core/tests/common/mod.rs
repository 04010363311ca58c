//! Helpers shared by the integration tests. The shortest-vector search here
//! is deliberately separate from the library's enumerator.

#![allow(dead_code)]

use grover_svp::lattice::LatticeBasis;

pub fn worked_example() -> LatticeBasis {
    LatticeBasis::from_i64(&[vec![2, 1], vec![1, 3]]).unwrap()
}

fn norm_sq(v: &[i64]) -> i128 {
    v.iter().map(|&a| a as i128 * a as i128).sum()
}

/// Exact `lambda_1^2` by depth-first search over coefficients, pruned with
/// floating-point Gram-Schmidt and a generous slack; candidate lengths are
/// recomputed exactly in integers.
pub fn lambda1_sq(rows: &[Vec<i64>]) -> i128 {
    let n = rows.len();
    let m = rows[0].len();
    let f: Vec<Vec<f64>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| v as f64).collect())
        .collect();
    let mut bstar: Vec<Vec<f64>> = Vec::new();
    let mut mu = vec![vec![0.0; n]; n];
    let mut bn = vec![0.0; n];
    for i in 0..n {
        let mut v = f[i].clone();
        for j in 0..i {
            let d: f64 = f[i].iter().zip(&bstar[j]).map(|(a, b)| a * b).sum();
            mu[i][j] = d / bn[j];
            for t in 0..m {
                v[t] -= mu[i][j] * bstar[j][t];
            }
        }
        bn[i] = v.iter().map(|a| a * a).sum();
        bstar.push(v);
    }
    let mut best = rows.iter().map(|r| norm_sq(r)).min().unwrap();
    let mut x = vec![0i64; n];
    fn rec(
        t: usize,
        partial: f64,
        x: &mut Vec<i64>,
        mu: &[Vec<f64>],
        bn: &[f64],
        rows: &[Vec<i64>],
        best: &mut i128,
    ) {
        let n = x.len();
        let c: f64 = -(t + 1..n).map(|s| x[s] as f64 * mu[s][t]).sum::<f64>();
        let room = (*best as f64) * (1.0 + 1e-6) + 1e-6 - partial;
        if room < 0.0 {
            return;
        }
        let span = (room / bn[t]).sqrt();
        let (lo, hi) = ((c - span).floor() as i64, (c + span).ceil() as i64);
        for v in lo..=hi {
            let d = v as f64 - c;
            let p = partial + d * d * bn[t];
            if p > (*best as f64) * (1.0 + 1e-6) + 1e-6 {
                continue;
            }
            x[t] = v;
            if t == 0 {
                if x.iter().any(|&a| a != 0) {
                    let m = rows[0].len();
                    let w: Vec<i64> = (0..m)
                        .map(|j| (0..n).map(|i| x[i] * rows[i][j]).sum())
                        .collect();
                    *best = (*best).min(norm_sq(&w));
                }
            } else {
                rec(t - 1, p, x, mu, bn, rows, best);
            }
        }
        x[t] = 0;
    }
    rec(n - 1, 0.0, &mut x, &mu, &bn, rows, &mut best);
    best
}

/// Small seeded bases: dimension `n`, entries in `[-bound, bound]`.
pub fn corpus(
    count: usize,
    dims: std::ops::RangeInclusive<u32>,
    bound: i64,
    seed: u64,
) -> Vec<LatticeBasis> {
    let dims: Vec<u32> = dims.collect();
    (0..count)
        .map(|i| grover_svp::estimate::random_basis(dims[i % dims.len()], seed + i as u64, bound))
        .collect()
}
