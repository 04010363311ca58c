//! Grover oracle synthesis for the shortest vector problem.
//!
//! The crate turns an integer lattice basis into a reversible oracle circuit
//! that flips an output qubit exactly on coefficient vectors whose lattice
//! vector is no longer than a threshold, counts the circuit's resources
//! (width, depth, quantum cost, T-count, T-depth), verifies it exhaustively
//! against brute force, and feeds the resulting cost model into a BKZ
//! reducer with pluggable SVP backends.
//!
//! ```
//! use grover_svp::lattice::LatticeBasis;
//! use grover_svp::oracle::{synthesize_oracle, CoefficientEncoding, Threshold};
//! use grover_svp::sim::verify_oracle;
//!
//! let basis = LatticeBasis::from_i64(&[vec![2, 1], vec![1, 3]]).unwrap();
//! let enc = CoefficientEncoding::uniform(2, 2).unwrap();
//! let oracle = synthesize_oracle(&basis, &enc, &Threshold::explicit(5)).unwrap();
//! let report = verify_oracle(&oracle, &basis, 26).unwrap();
//! assert!(report.passed());
//! assert_eq!(report.patterns_checked, 64);
//! ```

pub mod arith;
pub mod bkz;
pub mod circuit;
pub mod cli;
pub mod error;
pub mod estimate;
pub mod grover;
pub mod lattice;
pub mod oracle;
pub mod sim;

pub use error::{Error, Result};

/// Serde adapter writing big integers as decimal strings.
pub(crate) mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse().map_err(serde::de::Error::custom)
    }
}
