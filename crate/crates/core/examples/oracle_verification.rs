//! Checks an oracle against brute force on every input pattern, then shows
//! that deleting a single gate is caught.
//!
//! `cargo run --release --example oracle_verification`

use grover_svp::lattice::LatticeBasis;
use grover_svp::oracle::{synthesize_oracle, CoefficientEncoding, Threshold};
use grover_svp::sim::verify_oracle;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let basis = LatticeBasis::from_i64(&[vec![3, 1, 0], vec![-1, 2, 2], vec![1, -2, 4]])?;
    let enc = CoefficientEncoding::explicit(vec![2, 1, 2])?;
    for tau in [0, 6, 14, 40] {
        let oracle = synthesize_oracle(&basis, &enc, &Threshold::explicit(tau))?;
        let r = verify_oracle(&oracle, &basis, 26)?;
        println!(
            "tau {tau:>3}: {} patterns, passed = {}",
            r.patterns_checked,
            r.passed()
        );
    }

    let mut oracle = synthesize_oracle(&basis, &enc, &Threshold::explicit(14))?;
    let k = oracle.circuit.len() / 2;
    let removed = oracle.circuit.remove_gate(k);
    let r = verify_oracle(&oracle, &basis, 26)?;
    println!("without gate {k} ({removed:?}): passed = {}", r.passed());
    println!(
        "  {} wrong outputs, {} dirty ancillas, {} altered inputs",
        r.failures, r.ancilla_violations, r.input_preservation_violations
    );
    if let Some(c) = r.first_counterexample {
        println!(
            "  first counterexample: x = {:?}, expected {}, got {}",
            c.coefficients, c.expected, c.got
        );
    }
    Ok(())
}
