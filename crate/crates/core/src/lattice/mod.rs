//! Exact lattice mathematics over arbitrary-precision integers and rationals.

mod text;

use crate::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use text::{parse_basis, write_basis};

pub type CoefficientVector = Vec<BigInt>;

/// Integer basis with row vectors `b_0 .. b_{n-1}` in `Z^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    rows: Vec<Vec<BigInt>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GramSchmidtData {
    pub bstar: Vec<Vec<BigRational>>,
    /// Lower triangular, `mu[i][j]` for `j < i`; the diagonal is one.
    pub mu: Vec<Vec<BigRational>>,
    pub bstar_norms_sq: Vec<BigRational>,
}

impl LatticeBasis {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::input("basis needs at least one row"));
        }
        let m = rows[0].len();
        if m == 0 {
            return Err(Error::input("basis rows must be non-empty"));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != m) {
            return Err(Error::Dimension {
                expected: m,
                got: bad.len(),
            });
        }
        if rows.len() > m {
            return Err(Error::RankDeficient {
                rank: m,
                rows: rows.len(),
            });
        }
        let gs = gram_schmidt_rows(&rows);
        if let Some(rank) = gs.bstar_norms_sq.iter().position(|v| v.is_zero()) {
            return Err(Error::RankDeficient {
                rank,
                rows: rows.len(),
            });
        }
        Ok(LatticeBasis { rows })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn m(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<BigInt>> {
        self.rows
    }

    pub fn is_full_rank(&self) -> bool {
        self.n() == self.m()
    }

    /// Entries as `i64`, for circuit synthesis and fast enumeration.
    pub fn to_i64(&self) -> Result<Vec<Vec<i64>>> {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|v| {
                        v.to_i64().ok_or_else(|| {
                            Error::input(format!("basis entry {v} does not fit in 64 bits"))
                        })
                    })
                    .collect()
            })
            .collect()
    }

    pub fn gram_matrix(&self) -> Vec<Vec<BigInt>> {
        let n = self.n();
        let mut g = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..=i {
                let v = dot(&self.rows[i], &self.rows[j]);
                g[j][i] = v.clone();
                g[i][j] = v;
            }
        }
        g
    }

    /// Squared Euclidean length of `sum_i x_i b_i`.
    pub fn vector_length_sq(&self, x: &[BigInt]) -> Result<BigInt> {
        Ok(self.combine(x)?.iter().map(|v| v * v).sum())
    }

    /// The lattice vector `sum_i x_i b_i`.
    pub fn combine(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        if x.len() != self.n() {
            return Err(Error::Dimension {
                expected: self.n(),
                got: x.len(),
            });
        }
        let mut v = vec![BigInt::zero(); self.m()];
        for (xi, row) in x.iter().zip(&self.rows) {
            if xi.is_zero() {
                continue;
            }
            for (acc, b) in v.iter_mut().zip(row) {
                *acc += xi * b;
            }
        }
        Ok(v)
    }

    pub fn gram_schmidt(&self) -> GramSchmidtData {
        gram_schmidt_rows(&self.rows)
    }

    /// `det(B B^T)`, the squared covolume.
    pub fn volume_sq(&self) -> BigRational {
        self.gram_schmidt()
            .bstar_norms_sq
            .iter()
            .fold(BigRational::one(), |acc, v| acc * v)
    }

    /// Natural log of the covolume, from a square root carried to 64 fractional bits.
    pub fn ln_volume(&self) -> f64 {
        ln_sqrt_rational(&self.volume_sq())
    }

    pub fn gaussian_heuristic(&self) -> Result<f64> {
        self.require_full_rank()?;
        Ok(gh_from_ln_volume(self.n(), self.ln_volume()))
    }

    pub fn minkowski_bound(&self) -> Result<f64> {
        self.require_full_rank()?;
        let n = self.n() as f64;
        Ok(n.sqrt() * (self.ln_volume() / n).exp())
    }

    /// `(B B^T)^{-1} B`, the dual basis of the lattice inside its span.
    pub fn dual_basis(&self) -> Vec<Vec<BigRational>> {
        let g: Vec<Vec<BigRational>> = self
            .gram_matrix()
            .into_iter()
            .map(|r| r.into_iter().map(BigRational::from_integer).collect())
            .collect();
        let inv = invert(g).expect("Gram matrix of an independent basis is invertible");
        let n = self.n();
        let m = self.m();
        let mut out = vec![vec![BigRational::zero(); m]; n];
        for i in 0..n {
            for k in 0..n {
                if inv[i][k].is_zero() {
                    continue;
                }
                for j in 0..m {
                    out[i][j] += &inv[i][k] * BigRational::from_integer(self.rows[k][j].clone());
                }
            }
        }
        out
    }

    /// Euclidean norms of the dual basis vectors.
    pub fn dual_norms(&self) -> Vec<f64> {
        self.dual_basis()
            .iter()
            .map(|r| {
                let sq: BigRational = r.iter().map(|v| v * v).sum();
                sq.to_f64().unwrap_or(f64::INFINITY).sqrt()
            })
            .collect()
    }

    fn require_full_rank(&self) -> Result<()> {
        if self.is_full_rank() {
            Ok(())
        } else {
            Err(Error::NotFullRank {
                n: self.n(),
                m: self.m(),
            })
        }
    }
}

impl GramSchmidtData {
    /// Rows `pi_start(b_k)` for `k` in `start..end`: each `b_k` with its
    /// components along `b*_0 .. b*_{start-1}` removed.
    pub fn project(&self, start: usize, end: usize) -> Result<Vec<Vec<BigRational>>> {
        let n = self.bstar.len();
        if start > end || end > n {
            return Err(Error::input(format!(
                "projection window [{start}, {end}) out of range for {n} rows"
            )));
        }
        Ok((start..end)
            .map(|k| {
                let mut row = self.bstar[k].clone();
                for l in start..k {
                    for (acc, b) in row.iter_mut().zip(&self.bstar[l]) {
                        *acc += &self.mu[k][l] * b;
                    }
                }
                row
            })
            .collect())
    }
}

pub fn gram_schmidt_rows(rows: &[Vec<BigInt>]) -> GramSchmidtData {
    let n = rows.len();
    let m = rows.first().map_or(0, Vec::len);
    let mut bstar: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    let mut norms: Vec<BigRational> = Vec::with_capacity(n);
    for i in 0..n {
        let bi: Vec<BigRational> = rows[i]
            .iter()
            .map(|v| BigRational::from_integer(v.clone()))
            .collect();
        let mut v = bi.clone();
        for j in 0..i {
            if norms[j].is_zero() {
                continue;
            }
            let c = dot_q(&bi, &bstar[j]) / &norms[j];
            if !c.is_zero() {
                for k in 0..m {
                    v[k] -= &c * &bstar[j][k];
                }
            }
            mu[i][j] = c;
        }
        mu[i][i] = BigRational::one();
        norms.push(dot_q(&v, &v));
        bstar.push(v);
    }
    GramSchmidtData {
        bstar,
        mu,
        bstar_norms_sq: norms,
    }
}

/// `sqrt(n / (2 pi e)) * vol^(1/n)` given `ln vol`.
pub fn gh_from_ln_volume(n: usize, ln_vol: f64) -> f64 {
    let nf = n as f64;
    (nf / (2.0 * std::f64::consts::PI * std::f64::consts::E)).sqrt() * (ln_vol / nf).exp()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn dot_q(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Natural log of a positive big integer without going through `f64` overflow.
pub fn ln_big(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits <= 1000 {
        return v.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    (v >> shift).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// `ln sqrt(q)` for a positive rational, taking an integer square root of
/// `q * 2^128` so the root carries 64 fractional bits.
pub fn ln_sqrt_rational(q: &BigRational) -> f64 {
    let scaled: BigInt = (q.numer() << 128u32) / q.denom();
    let root = scaled.magnitude().sqrt();
    if root.is_zero() {
        return f64::NEG_INFINITY;
    }
    ln_big(&root) - 64.0 * std::f64::consts::LN_2
}

/// Exact Gauss-Jordan inverse; `None` when singular.
pub fn invert(mut a: Vec<Vec<BigRational>>) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let t = &f * &a[col][j];
                a[r][j] -= t;
                let t = &f * &inv[col][j];
                inv[r][j] -= t;
            }
        }
    }
    Some(inv)
}

/// Absolute value of an integer determinant via exact elimination.
pub fn abs_det(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|v| BigRational::from_integer(v.clone()))
                .collect()
        })
        .collect();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigInt::zero();
        };
        a.swap(col, pivot);
        det *= a[col][col].clone();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &a[col][col];
            for j in col..n {
                let t = &f * &a[col][j];
                a[r][j] -= t;
            }
        }
    }
    det.to_integer().abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn b22() -> LatticeBasis {
        LatticeBasis::from_i64(&[vec![2, 1], vec![1, 3]]).unwrap()
    }

    #[test]
    fn gram_matrix_by_hand() {
        let g = b22().gram_matrix();
        assert_eq!(g, vec![vec![5.into(), 5.into()], vec![5.into(), 10.into()]]);
    }

    #[test]
    fn lengths() {
        let b = b22();
        assert_eq!(
            b.vector_length_sq(&[1.into(), (-1).into()]).unwrap(),
            5.into()
        );
        assert_eq!(
            b.vector_length_sq(&[0.into(), 1.into()]).unwrap(),
            10.into()
        );
        assert_eq!(b.vector_length_sq(&[0.into(), 0.into()]).unwrap(), 0.into());
        assert!(b.vector_length_sq(&[1.into()]).is_err());
    }

    #[test]
    fn gram_schmidt_by_hand() {
        let gs = b22().gram_schmidt();
        assert_eq!(gs.mu[1][0], q(1, 1));
        assert_eq!(gs.bstar_norms_sq, vec![q(5, 1), q(5, 1)]);
        assert_eq!(gs.bstar[1], vec![q(-1, 1), q(2, 1)]);
        let p = gs.project(1, 2).unwrap();
        assert_eq!(p, vec![vec![q(-1, 1), q(2, 1)]]);
        assert_eq!(gs.project(0, 2).unwrap()[1], vec![q(1, 1), q(3, 1)]);
    }

    #[test]
    fn rank_checks() {
        assert!(matches!(
            LatticeBasis::from_i64(&[vec![1, 2], vec![2, 4]]),
            Err(Error::RankDeficient { rank: 1, .. })
        ));
        assert!(LatticeBasis::from_i64(&[vec![1], vec![2]]).is_err());
        assert!(LatticeBasis::from_i64(&[vec![1, 2], vec![3]]).is_err());
    }

    #[test]
    fn heuristics() {
        let id = LatticeBasis::from_i64(&[vec![1, 0], vec![0, 1]]).unwrap();
        let gh1 = id.gaussian_heuristic().unwrap();
        assert!(
            (gh1 - (2.0 / (2.0 * std::f64::consts::PI * std::f64::consts::E)).sqrt()).abs() < 1e-12
        );
        assert!((gh1 - 0.342).abs() < 1e-3);
        assert!((b22().gaussian_heuristic().unwrap() - gh1 * 5f64.sqrt()).abs() < 1e-12);
        let id4 = LatticeBasis::from_i64(&[
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
        ])
        .unwrap();
        assert!((id4.minkowski_bound().unwrap() - 2.0).abs() < 1e-12);
        let one = LatticeBasis::from_i64(&[vec![7]]).unwrap();
        assert!((one.minkowski_bound().unwrap() - 7.0).abs() < 1e-12);
        let thin = LatticeBasis::from_i64(&[vec![1, 0]]).unwrap();
        assert!(matches!(
            thin.gaussian_heuristic(),
            Err(Error::NotFullRank { .. })
        ));
    }

    #[test]
    fn dual_of_small_basis() {
        let b = b22();
        let d = b.dual_basis();
        assert_eq!(d[0], vec![q(3, 5), q(-1, 5)]);
        assert_eq!(d[1], vec![q(-1, 5), q(2, 5)]);
        let id = LatticeBasis::from_i64(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(id.dual_norms(), vec![1.0, 1.0]);
    }

    #[test]
    fn determinant_helpers() {
        assert_eq!(
            abs_det(&[vec![2.into(), 1.into()], vec![1.into(), 3.into()]]),
            5.into()
        );
        assert_eq!(b22().volume_sq(), q(25, 1));
        assert!((b22().ln_volume() - 5f64.ln()).abs() < 1e-14);
    }
}
