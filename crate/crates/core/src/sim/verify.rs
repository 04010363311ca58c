use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::run_bitsliced;
use crate::lattice::LatticeBasis;
use crate::oracle::{length_sq_i64, OracleCircuit};
use crate::{Error, Result};

/// Default limit on the number of oracle input bits checked exhaustively.
pub const DEFAULT_EXHAUSTION_CAP_BITS: u32 = 26;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub pattern: u64,
    pub coefficients: Vec<i64>,
    pub expected: bool,
    pub got: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub patterns_checked: u64,
    pub failures: u64,
    pub first_counterexample: Option<Counterexample>,
    pub ancilla_violations: u64,
    pub input_preservation_violations: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
            && self.ancilla_violations == 0
            && self.input_preservation_violations == 0
    }

    fn merge(mut self, o: VerificationReport) -> Self {
        self.patterns_checked += o.patterns_checked;
        self.failures += o.failures;
        self.ancilla_violations += o.ancilla_violations;
        self.input_preservation_violations += o.input_preservation_violations;
        self.first_counterexample = match (self.first_counterexample, o.first_counterexample) {
            (Some(a), Some(b)) => Some(if a.pattern <= b.pattern { a } else { b }),
            (a, b) => a.or(b),
        };
        self
    }
}

/// Runs every input pattern (64 per pass, bit-sliced) and checks the output
/// bit against brute force, the inputs for preservation and every other
/// qubit for a clean return to zero.
pub fn verify_oracle(
    oracle: &OracleCircuit,
    basis: &LatticeBasis,
    cap_bits: u32,
) -> Result<VerificationReport> {
    let enc = &oracle.encoding;
    let bits = enc.total_input_bits();
    if bits > cap_bits || bits >= 63 {
        return Err(Error::Cap {
            what: "oracle input bits",
            value: bits as u64,
            cap: cap_bits as u64,
        });
    }
    if !oracle.circuit.is_classical_reversible() {
        return Err(Error::input("oracle circuit is not classical-reversible"));
    }
    let b = basis.to_i64()?;
    let total = 1u64 << bits;
    let inputs = oracle.input_qubits();
    let width = oracle.circuit.width() as usize;
    let y = oracle.output as usize;
    let tau = oracle.threshold.tau as i128;

    let batches = total.div_ceil(64);
    let report = (0..batches)
        .into_par_iter()
        .map(|batch| -> Result<VerificationReport> {
            let base = batch * 64;
            let live = (total - base).min(64);
            let live_mask = if live == 64 {
                !0u64
            } else {
                (1u64 << live) - 1
            };
            let mut lanes = vec![0u64; width];
            for (k, &q) in inputs.iter().enumerate() {
                lanes[q as usize] = (0..live).fold(0, |acc, l| acc | ((base + l) >> k & 1) << l);
            }
            let before: Vec<u64> = inputs.iter().map(|&q| lanes[q as usize]).collect();
            run_bitsliced(&oracle.circuit, &mut lanes)?;

            let mut r = VerificationReport {
                patterns_checked: live,
                ..Default::default()
            };
            for l in 0..live {
                let p = base + l;
                let x = enc.decode_index(p);
                let expected = length_sq_i64(&b, &x) <= tau;
                let got = lanes[y] >> l & 1 == 1;
                if got != expected {
                    r.failures += 1;
                    if r.first_counterexample.is_none() {
                        r.first_counterexample = Some(Counterexample {
                            pattern: p,
                            coefficients: x,
                            expected,
                            got,
                        });
                    }
                }
            }
            let moved = inputs
                .iter()
                .zip(&before)
                .fold(0u64, |m, (&q, &v)| m | (lanes[q as usize] ^ v));
            r.input_preservation_violations = (moved & live_mask).count_ones() as u64;
            let mut is_input = vec![false; width];
            inputs.iter().for_each(|&q| is_input[q as usize] = true);
            let dirty = (0..width)
                .filter(|&q| q != y && !is_input[q])
                .fold(0u64, |m, q| m | lanes[q]);
            r.ancilla_violations = (dirty & live_mask).count_ones() as u64;
            Ok(r)
        })
        .try_reduce(VerificationReport::default, |a, b| Ok(a.merge(b)))?;
    Ok(report)
}
