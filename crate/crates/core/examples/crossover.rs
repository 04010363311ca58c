//! Tabulates classical and Grover-accelerated enumeration exponents and the
//! blocksize a quantum attacker reaches for the cost of classical beta = 40.
//!
//! `cargo run --release --example crossover`

use grover_svp::bkz::crossover_analysis;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let betas: Vec<u32> = (20..=100).step_by(10).collect();
    let r = crossover_analysis(0.187, &betas, 40, None)?;
    println!(
        "{:>5} {:>12} {:>12}",
        "beta", "log2 classic", "log2 quantum"
    );
    for row in &r.rows {
        println!(
            "{:>5} {:>12.1} {:>12.1}",
            row.beta, row.log2_classical, row.log2_quantum
        );
    }
    println!(
        "classical beta {} costs as much as quantum beta {:.2}",
        r.classical_beta, r.quantum_beta
    );

    // with a per-iteration circuit cost that grows like beta^3
    let per_iteration = |b: u32| 3.0 * (b as f64).log2() + 10.0;
    let m = crossover_analysis(0.187, &betas, 40, Some(&per_iteration))?;
    println!(
        "charging ~beta^3 gates per iteration: quantum beta {:.2}",
        m.quantum_beta_measured.unwrap_or(f64::NAN)
    );
    Ok(())
}
