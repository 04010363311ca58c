//! Synthesizes the oracle for a small lattice and prints its width plan
//! and resource metrics.
//!
//! `cargo run --release --example oracle_synthesis`

use grover_svp::circuit::{metrics, write_circuit};
use grover_svp::lattice::LatticeBasis;
use grover_svp::oracle::{synthesize_oracle, CoefficientEncoding, OracleReport, Threshold};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let basis = LatticeBasis::from_i64(&[vec![2, 1], vec![1, 3]])?;
    let enc = CoefficientEncoding::uniform(2, 2)?;
    let oracle = synthesize_oracle(&basis, &enc, &Threshold::explicit(5))?;
    let report = OracleReport::new(&basis, &oracle, metrics(&oracle.circuit));
    println!("{}", serde_json::to_string_pretty(&report)?);

    let text = write_circuit(&oracle.circuit);
    println!("circuit text: {} lines; first few:", text.lines().count());
    for line in text.lines().take(8) {
        println!("  {line}");
    }
    Ok(())
}
