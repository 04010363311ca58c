mod common;

use common::{corpus, lambda1_sq, worked_example};
use grover_svp::bkz::{
    bkz_reduce, crossover_analysis, hermite_constant, is_size_reduced, lll, max_abs_mu,
    quality_bound, quality_bound_ln, satisfies_lovasz, BkzConfig, ClassicalBackend, Delta,
    EarlyTermination, GroverCostBackend,
};
use grover_svp::lattice::{abs_det, LatticeBasis};
use num_bigint::BigInt;
use num_rational::BigRational;

fn reduce(b: &LatticeBasis, beta: usize) -> grover_svp::bkz::ReducedBasis {
    bkz_reduce(b, &BkzConfig::new(beta), &mut ClassicalBackend).unwrap()
}

#[test]
fn full_blocksize_finds_lambda1() {
    for b in corpus(12, 2..=8, 10, 500) {
        let n = b.n();
        let r = reduce(&b, n);
        let want = lambda1_sq(&b.to_i64().unwrap());
        assert_eq!(r.first_vector_norm_sq, BigInt::from(want), "n = {n}");
        assert_eq!(abs_det(r.basis.rows()), abs_det(b.rows()));
        assert!(is_size_reduced(&r.basis));
    }
}

#[test]
fn worked_example_reduces_to_the_shortest_vector() {
    let r = reduce(&worked_example(), 2);
    assert_eq!(r.first_vector_norm_sq, BigInt::from(5));
}

#[test]
fn lll_output_is_reduced_and_lattice_preserving() {
    for b in corpus(10, 3..=10, 20, 77) {
        let r = lll(&b, Delta::DEFAULT).unwrap();
        assert!(is_size_reduced(&r));
        assert!(satisfies_lovasz(&r, Delta::DEFAULT));
        assert_eq!(abs_det(r.rows()), abs_det(b.rows()));
        assert!(max_abs_mu(&r) <= BigRational::new(1.into(), 2.into()));
    }
}

#[test]
fn beta_two_never_lengthens_the_first_vector() {
    for b in corpus(8, 3..=9, 10, 9) {
        let r = reduce(&b, 2);
        let before = grover_svp::lattice::dot(&b.rows()[0], &b.rows()[0]);
        assert!(r.first_vector_norm_sq <= before);
    }
}

#[test]
fn calls_per_tour_match_the_window_count() {
    for b in corpus(4, 4..=7, 10, 3) {
        let n = b.n() as u64;
        let r = reduce(&b, 3);
        assert!(
            r.ledger.calls_per_tour.iter().all(|&c| c == n - 1),
            "{:?}",
            r.ledger.calls_per_tour
        );
        assert_eq!(r.ledger.svp_calls, (n - 1) * r.tours_executed as u64);
    }
}

#[test]
fn termination_policies() {
    let b = corpus(1, 8..=8, 10, 11).remove(0);
    let mut cfg = BkzConfig::new(4);
    cfg.early_termination = EarlyTermination::TourBudget;
    cfg.max_tours = 3;
    assert_eq!(
        bkz_reduce(&b, &cfg, &mut ClassicalBackend)
            .unwrap()
            .tours_executed,
        3
    );

    let free = bkz_reduce(&b, &BkzConfig::new(4), &mut ClassicalBackend).unwrap();
    assert!(free.converged);
    // the no-change tour is the last one
    assert!(!free
        .ledger
        .records
        .iter()
        .any(|r| r.tour + 1 == free.tours_executed && r.improved));

    cfg.early_termination = EarlyTermination::None;
    let none = bkz_reduce(&b, &cfg, &mut ClassicalBackend).unwrap();
    assert_eq!(none.basis, free.basis);
}

#[test]
fn grover_backend_changes_only_the_ledger() {
    for b in corpus(3, 3..=5, 6, 21) {
        let c = bkz_reduce(&b, &BkzConfig::new(3), &mut ClassicalBackend).unwrap();
        let mut g = GroverCostBackend::default();
        let q = bkz_reduce(&b, &BkzConfig::new(3), &mut g).unwrap();
        assert_eq!(c.basis, q.basis);
        assert_eq!(q.ledger.backend, "grover-cost");
        assert!(c.ledger.quantum_totals.is_none());
        assert!(q.ledger.records.iter().all(|r| r.quantum.is_some()));
        assert!(q.ledger.quantum_totals.is_some());
    }
}

#[test]
fn hermite_constants_bound_sampled_lattices() {
    for b in corpus(24, 2..=7, 6, 1234) {
        let n = b.n();
        let l1 = lambda1_sq(&b.to_i64().unwrap()) as f64;
        let g = hermite_constant(n as u32).unwrap();
        let vol2n = (2.0 * b.ln_volume() / n as f64).exp();
        assert!(
            l1 <= g * vol2n * (1.0 + 1e-9),
            "n = {n}: {l1} > {}",
            g * vol2n
        );
    }
}

#[test]
fn quality_bound_values() {
    let g2 = (4.0f64 / 3.0).sqrt();
    assert!((quality_bound(8, 2, 1.0).unwrap() - g2.powf(3.5)).abs() < 1e-12);
    // beta = n = 8: exponent 7/14 + 48/112
    assert!((quality_bound(8, 8, 1.0).unwrap() - 2f64.powf(0.5 + 48.0 / 112.0)).abs() < 1e-12);
    // the bound is not monotone in beta: at n = 8 it dips at beta = 3, then grows
    let v: Vec<f64> = (2..=8)
        .map(|beta| quality_bound(8, beta, 1.0).unwrap())
        .collect();
    assert!(v[1] < v[0] && v[6] > v[0], "{v:?}");
}

#[test]
fn two_dimensional_bound_holds_at_full_blocksize() {
    for b in corpus(10, 2..=2, 20, 4) {
        let r = reduce(&b, 2);
        let bound = quality_bound_ln(2, 2, b.ln_volume(), None).unwrap();
        let first = (lambda1_sq(&b.to_i64().unwrap()) as f64).sqrt();
        assert_eq!(
            r.first_vector_norm_sq,
            BigInt::from(lambda1_sq(&b.to_i64().unwrap()))
        );
        assert!(first <= bound * (1.0 + 1e-12));
    }
}

#[test]
fn crossover_examples() {
    let r = crossover_analysis(0.187, &(20..=80).collect::<Vec<_>>(), 40, None).unwrap();
    assert!((r.quantum_beta - 70.0).abs() <= 2.0);
    assert!(r
        .rows
        .iter()
        .all(|row| row.log2_quantum <= row.log2_classical));
    let r2 = crossover_analysis(0.374, &[40, 70], 40, None).unwrap();
    assert!((r2.rows[0].log2_classical - 2.0 * r.rows[20].log2_classical).abs() < 1e-9);
    // the quantum blocksize does not depend on the constant
    assert!((r2.quantum_beta - r.quantum_beta).abs() < 1e-6);
}

#[test]
fn measured_iteration_cost_lowers_the_quantum_blocksize() {
    let per_iteration = |b: u32| 20.0 + 2.0 * (b as f64).log2();
    let r = crossover_analysis(0.187, &[40, 60], 40, Some(&per_iteration)).unwrap();
    let measured = r.quantum_beta_measured.unwrap();
    assert!(
        measured < r.quantum_beta,
        "{measured} vs {}",
        r.quantum_beta
    );
}
