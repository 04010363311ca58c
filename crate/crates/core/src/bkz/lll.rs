//! Integral LLL: all Gram-Schmidt data kept as integers `d_i` (leading
//! Gram determinants) and `lambda_ij = d_j * mu_ij`, so every step is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::lattice::{dot, LatticeBasis};
use crate::{Error, Result};

/// LLL parameter as an exact fraction `p / q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Delta {
    pub p: u64,
    pub q: u64,
}

impl Delta {
    pub const DEFAULT: Delta = Delta { p: 99, q: 100 };

    pub fn new(p: u64, q: u64) -> Result<Self> {
        // 1/4 < p/q < 1
        if q == 0 || 4 * p <= q || p >= q {
            return Err(Error::input(format!(
                "LLL delta {p}/{q} must lie in (1/4, 1)"
            )));
        }
        Ok(Delta { p, q })
    }

    /// Closest fraction with denominator 10^6.
    pub fn from_f64(v: f64) -> Result<Self> {
        if !v.is_finite() {
            return Err(Error::input("LLL delta must be finite"));
        }
        let q = 1_000_000u64;
        Delta::new((v * q as f64).round().max(0.0) as u64, q)
    }

    pub fn as_f64(self) -> f64 {
        self.p as f64 / self.q as f64
    }
}

struct State {
    b: Vec<Vec<BigInt>>,
    /// `d[0] = 1`, `d[i+1] = det Gram(b_0..b_i)`.
    d: Vec<BigInt>,
    /// `lam[i][j] = d[j+1] * mu_ij` for `j < i`.
    lam: Vec<Vec<BigInt>>,
}

impl State {
    // 0-based rows; d is shifted by one so that d[j+1] belongs to row j.
    fn reduce(&mut self, k: usize, l: usize) {
        let dl = &self.d[l + 1];
        let twice: BigInt = &self.lam[k][l] * 2;
        if twice.abs() <= *dl {
            return;
        }
        let q = round_div(&self.lam[k][l], dl);
        let (head, tail) = self.b.split_at_mut(k);
        for (x, y) in tail[0].iter_mut().zip(&head[l]) {
            *x -= &q * y;
        }
        let t = &q * dl;
        self.lam[k][l] -= t;
        for i in 0..l {
            let t = &q * &self.lam[l][i];
            self.lam[k][i] -= t;
        }
    }

    fn swap(&mut self, k: usize, kmax: usize) {
        self.b.swap(k, k - 1);
        for j in 0..k - 1 {
            let t = std::mem::take(&mut self.lam[k][j]);
            self.lam[k][j] = std::mem::replace(&mut self.lam[k - 1][j], t);
        }
        let lam = self.lam[k][k - 1].clone();
        let (dkm2, dkm1, dk) = (&self.d[k - 1], &self.d[k], &self.d[k + 1]);
        let bb = (dkm2 * dk + &lam * &lam) / dkm1;
        for i in k + 1..=kmax {
            let t = self.lam[i][k].clone();
            let new_ik = (dk * &self.lam[i][k - 1] - &lam * &t) / dkm1;
            let new_ikm1 = (&bb * &t + &lam * &new_ik) / dk;
            self.lam[i][k] = new_ik;
            self.lam[i][k - 1] = new_ikm1;
        }
        self.d[k] = bb;
    }
}

/// Nearest integer to `a / b` for `b > 0`, halves rounded up.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let two_a: BigInt = a * 2 + b;
    two_a.div_floor(&(b * 2))
}

/// Reduces the rows of `basis` in place. Rows must be linearly independent.
pub fn lll_rows(rows: &mut Vec<Vec<BigInt>>, delta: Delta) {
    let n = rows.len();
    if n <= 1 {
        return;
    }
    let mut st = State {
        b: std::mem::take(rows),
        d: vec![BigInt::zero(); n + 1],
        lam: vec![vec![BigInt::zero(); n]; n],
    };
    st.d[0] = BigInt::one();
    st.d[1] = dot(&st.b[0], &st.b[0]);
    let (p, q) = (BigInt::from(delta.p), BigInt::from(delta.q));
    let mut k = 1usize;
    let mut kmax = 0usize;
    while k < n {
        if k > kmax {
            kmax = k;
            for j in 0..=k {
                let mut u = dot(&st.b[k], &st.b[j]);
                for i in 0..j {
                    u = (&st.d[i + 1] * u - &st.lam[k][i] * &st.lam[j][i]) / &st.d[i];
                }
                if j < k {
                    st.lam[k][j] = u;
                } else {
                    assert!(!u.is_zero(), "LLL input rows are linearly dependent");
                    st.d[k + 1] = u;
                }
            }
        }
        loop {
            st.reduce(k, k - 1);
            let lam = &st.lam[k][k - 1];
            let lhs = &q * &st.d[k + 1] * &st.d[k - 1];
            let rhs = &p * &st.d[k] * &st.d[k] - &q * lam * lam;
            if lhs < rhs {
                st.swap(k, kmax);
                if k > 1 {
                    k -= 1;
                }
            } else {
                break;
            }
        }
        for l in (0..k - 1).rev() {
            st.reduce(k, l);
        }
        k += 1;
    }
    *rows = st.b;
}

pub fn lll(basis: &LatticeBasis, delta: Delta) -> Result<LatticeBasis> {
    let mut rows = basis.rows().to_vec();
    lll_rows(&mut rows, delta);
    LatticeBasis::new(rows)
}

/// `|mu_ij| <= 1/2` for every `j < i`, exactly.
pub fn is_size_reduced(basis: &LatticeBasis) -> bool {
    let gs = basis.gram_schmidt();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    (0..basis.n()).all(|i| (0..i).all(|j| gs.mu[i][j].abs() <= half))
}

/// Lovász condition `delta |b*_{i-1}|^2 <= |b*_i + mu_{i,i-1} b*_{i-1}|^2` for every `i`.
pub fn satisfies_lovasz(basis: &LatticeBasis, delta: Delta) -> bool {
    let gs = basis.gram_schmidt();
    let dl = BigRational::new(BigInt::from(delta.p), BigInt::from(delta.q));
    (1..basis.n()).all(|i| {
        let mu = &gs.mu[i][i - 1];
        let lhs = &dl * &gs.bstar_norms_sq[i - 1];
        let rhs = &gs.bstar_norms_sq[i] + mu * mu * &gs.bstar_norms_sq[i - 1];
        lhs <= rhs
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_fixed() {
        let b = LatticeBasis::from_i64(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(lll(&b, Delta::DEFAULT).unwrap(), b);
    }

    #[test]
    fn single_size_reduction() {
        let b = LatticeBasis::from_i64(&[vec![1, 0], vec![201, 1]]).unwrap();
        let r = lll(&b, Delta::DEFAULT).unwrap();
        assert!(is_size_reduced(&r));
        assert_eq!(r.to_i64().unwrap(), vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn classic_example() {
        let b = LatticeBasis::from_i64(&[vec![1, 1, 1], vec![-1, 0, 2], vec![3, 5, 6]]).unwrap();
        let r = lll(&b, Delta::new(3, 4).unwrap()).unwrap();
        assert_eq!(
            r.to_i64().unwrap(),
            vec![vec![0, 1, 0], vec![1, 0, 1], vec![-1, 0, 2]]
        );
    }

    #[test]
    fn rounding() {
        let r = |a: i64, b: i64| round_div(&BigInt::from(a), &BigInt::from(b));
        assert_eq!(r(7, 2), BigInt::from(4));
        assert_eq!(r(-7, 2), BigInt::from(-3));
        assert_eq!(r(-8, 3), BigInt::from(-3));
        assert_eq!(r(1, 3), BigInt::from(0));
    }

    #[test]
    fn delta_range() {
        assert!(Delta::new(1, 4).is_err());
        assert!(Delta::new(1, 1).is_err());
        assert!(Delta::from_f64(0.99).is_ok());
    }
}
