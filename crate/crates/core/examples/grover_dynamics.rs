//! Runs the full Grover search on the two-dimensional example with the
//! synthesized oracle and compares the measured success probability with
//! the closed form, iteration by iteration.
//!
//! `cargo run --release --example grover_dynamics`

use grover_svp::grover::{
    assemble_with, iteration_count, plan_grover, solution_probability, success_probability,
    SearchOracle,
};
use grover_svp::lattice::LatticeBasis;
use grover_svp::oracle::{synthesize_oracle, CoefficientEncoding, Threshold};
use grover_svp::sim::{brute_force_svp, DEFAULT_ENUMERATION_CAP};
use num_bigint::BigUint;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let basis = LatticeBasis::from_i64(&[vec![2, 1], vec![1, 3]])?;
    let enc = CoefficientEncoding::uniform(2, 2)?;
    let oracle = synthesize_oracle(&basis, &enc, &Threshold::explicit(5))?;
    let solutions = brute_force_svp(&basis, &enc, Some(5), DEFAULT_ENUMERATION_CAP)?
        .all_solutions
        .unwrap_or_default();
    let m = solutions.len() as u64;
    let k_opt = iteration_count(&BigUint::from(64u32), m)?;
    println!("N = 64, M = {m}, optimal k = {k_opt}");

    let search = SearchOracle::from_oracle(&oracle);
    println!(" k  measured     closed form");
    for k in 0..=6 {
        let (c, _) = assemble_with(&search, k)?;
        let p = solution_probability(&c, &search.inputs, &solutions);
        println!(
            "{k:>2}  {p:.9}  {:.9}",
            success_probability(64.0, m as f64, k)
        );
    }

    let plan = plan_grover(&oracle, m)?;
    println!(
        "totals for k = {}: {}",
        plan.k,
        serde_json::to_string(&plan.totals)?
    );
    Ok(())
}
