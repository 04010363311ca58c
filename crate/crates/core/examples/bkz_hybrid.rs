//! Reduces a seeded basis with BKZ twice: once costed classically, once
//! with every SVP call priced as a Grover search. The bases agree; only the
//! ledgers differ.
//!
//! `cargo run --release --example bkz_hybrid -- 12 6`

use grover_svp::bkz::{bkz_reduce, quality_bound, BkzConfig, ClassicalBackend, GroverCostBackend};
use grover_svp::estimate::random_basis;
use grover_svp::lattice::dot;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>());
    let n = args.next().transpose()?.unwrap_or(12);
    let beta = args.next().transpose()?.unwrap_or(6);
    let basis = random_basis(n as u32, 5, 10);
    let config = BkzConfig::new(beta);

    let classical = bkz_reduce(&basis, &config, &mut ClassicalBackend)?;
    let mut grover = GroverCostBackend::default();
    let hybrid = bkz_reduce(&basis, &config, &mut grover)?;

    let before = dot(&basis.rows()[0], &basis.rows()[0]);
    println!(
        "n = {n}, beta = {beta}: |b1|^2 {before} -> {}",
        classical.first_vector_norm_sq
    );
    println!(
        "tours {}, converged {}",
        classical.tours_executed, classical.converged
    );
    if let Ok(bound) = quality_bound(n as u32, beta as u32, basis.ln_volume().exp()) {
        println!("first-vector bound {bound:.3}");
    }
    println!(
        "same basis from both backends: {}",
        classical.basis == hybrid.basis
    );
    println!(
        "classical: {} SVP calls, {} enumeration nodes",
        classical.ledger.svp_calls, classical.ledger.total_nodes
    );
    if let Some(t) = &hybrid.ledger.quantum_totals {
        println!("grover-costed: {}", serde_json::to_string(t)?);
    }
    Ok(())
}
