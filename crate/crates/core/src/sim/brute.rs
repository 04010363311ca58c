use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::lattice::LatticeBasis;
use crate::oracle::{length_sq_i64, CoefficientEncoding};
use crate::{Error, Result};

/// Default limit on the number of enumerated patterns, `2^26`.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 26;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BruteForceResult {
    #[serde(serialize_with = "ser_big_vec", deserialize_with = "de_big_vec")]
    pub shortest_x: Vec<BigInt>,
    pub length_sq: u128,
    /// Patterns with length² ≤ tau, the zero vector included.
    pub solution_count_leq_tau: Option<u64>,
    /// Input patterns (little-endian, as the oracle sees them) of every solution.
    pub all_solutions: Option<Vec<u64>>,
}

fn ser_big_vec<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

fn de_big_vec<'de, D: serde::Deserializer<'de>>(
    d: D,
) -> std::result::Result<Vec<BigInt>, D::Error> {
    let raw: Vec<String> = Deserialize::deserialize(d)?;
    raw.iter()
        .map(|s| s.parse().map_err(serde::de::Error::custom))
        .collect()
}

#[derive(Clone, Copy)]
struct Acc {
    best: (u128, u64),
    count: u64,
}

/// Exhaustive search over every encoded coefficient vector.
pub fn brute_force_svp(
    basis: &LatticeBasis,
    enc: &CoefficientEncoding,
    tau: Option<u64>,
    cap: u64,
) -> Result<BruteForceResult> {
    let bits = enc.total_input_bits();
    let total = if bits >= 64 { u64::MAX } else { 1u64 << bits };
    if bits >= 64 || total > cap {
        return Err(Error::Cap {
            what: "enumeration size",
            value: total,
            cap,
        });
    }
    if enc.n() != basis.n() {
        return Err(Error::Dimension {
            expected: basis.n(),
            got: enc.n(),
        });
    }
    let b = basis.to_i64()?;
    let tau = tau.map(|t| t as i128);
    let empty = Acc {
        best: (u128::MAX, u64::MAX),
        count: 0,
    };
    let acc = (0..total)
        .into_par_iter()
        .fold(
            || empty,
            |mut acc, p| {
                let x = enc.decode_index(p);
                let len = length_sq_i64(&b, &x);
                if x.iter().any(|&v| v != 0) && (len as u128, p) < acc.best {
                    acc.best = (len as u128, p);
                }
                if tau.is_some_and(|t| len <= t) {
                    acc.count += 1;
                }
                acc
            },
        )
        .reduce(
            || empty,
            |a, b| Acc {
                best: a.best.min(b.best),
                count: a.count + b.count,
            },
        );
    let all_solutions = tau.map(|t| {
        (0..total)
            .filter(|&p| length_sq_i64(&b, &enc.decode_index(p)) <= t)
            .collect()
    });
    Ok(BruteForceResult {
        shortest_x: enc
            .decode_index(acc.best.1)
            .into_iter()
            .map(BigInt::from)
            .collect(),
        length_sq: acc.best.0,
        solution_count_leq_tau: tau.map(|_| acc.count),
        all_solutions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example() {
        let b = LatticeBasis::from_i64(&[vec![2, 1], vec![1, 3]]).unwrap();
        let e = CoefficientEncoding::uniform(2, 2).unwrap();
        let r = brute_force_svp(&b, &e, Some(5), DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(r.length_sq, 5);
        assert_eq!(r.solution_count_leq_tau, Some(5));
        assert_eq!(r.all_solutions.as_ref().unwrap().len(), 5);
        assert_eq!(b.vector_length_sq(&r.shortest_x).unwrap(), 5.into());
        let r0 = brute_force_svp(&b, &e, Some(0), DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(r0.solution_count_leq_tau, Some(1));
    }

    #[test]
    fn identity_and_cap() {
        let b = LatticeBasis::from_i64(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let e = CoefficientEncoding::uniform(3, 1).unwrap();
        assert_eq!(brute_force_svp(&b, &e, None, 1 << 26).unwrap().length_sq, 1);
        assert!(matches!(
            brute_force_svp(&b, &e, None, 8),
            Err(Error::Cap { .. })
        ));
    }
}
