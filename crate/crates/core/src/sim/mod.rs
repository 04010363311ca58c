//! Verification engines: bitwise reversible simulation, dense statevector
//! simulation, a sparse amplitude simulator for wide circuits, and
//! classical brute-force SVP.

mod bitwise;
mod brute;
mod sparse;
mod statevector;
mod verify;

pub use bitwise::{run_bitsliced, run_bitwise, BasisState};
pub use brute::{brute_force_svp, BruteForceResult, DEFAULT_ENUMERATION_CAP};
pub use sparse::SparseState;
pub use statevector::{run_statevector, run_statevector_from, DEFAULT_STATEVECTOR_CAP};
pub use verify::{verify_oracle, Counterexample, VerificationReport, DEFAULT_EXHAUSTION_CAP_BITS};
