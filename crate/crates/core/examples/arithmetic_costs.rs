//! Prints the measured cost and delay of the arithmetic blocks next to the
//! closed forms they are expected to follow.
//!
//! `cargo run --release --example arithmetic_costs`

use grover_svp::arith::{build_adder, build_ctrl_addsub, build_squarer, build_subtractor};
use grover_svp::circuit::metrics;

fn main() {
    println!(
        "{:>3} {:>16} {:>16} {:>16} {:>10} {:>12}",
        "N", "adder", "subtractor", "ctrl add-sub", "squarer", "width c/a-s"
    );
    for n in [2u32, 4, 8, 16, 32] {
        let add = metrics(&build_adder(n));
        let sub = metrics(&build_subtractor(n));
        let cas_circuit = build_ctrl_addsub(n);
        let cas = metrics(&cas_circuit);
        let sq = metrics(&build_squarer(n));
        let k = n as u64;
        println!(
            "{n:>3} {:>7}/{:<8} {:>7}/{:<8} {:>7}/{:<8} {:>10} {:>12}",
            add.quantum_cost,
            13 * k - 10,
            sub.quantum_cost,
            6 * k - 3,
            cas.quantum_cost,
            7 * k + 1,
            sq.quantum_cost,
            cas_circuit.width()
        );
    }
    println!("(measured/closed form; the subtractor is the X-conjugated adder)");
}
