use grover_svp::circuit::metrics;
use grover_svp::lattice::LatticeBasis;
use grover_svp::oracle::{synthesize_oracle, CoefficientEncoding, Threshold};
use grover_svp::sim::{brute_force_svp, run_bitsliced, verify_oracle, DEFAULT_ENUMERATION_CAP};

fn b22() -> LatticeBasis {
    LatticeBasis::from_i64(&[vec![2, 1], vec![1, 3]]).unwrap()
}

#[test]
fn one_dimensional_lattice() {
    let b = LatticeBasis::from_i64(&[vec![3]]).unwrap();
    let enc = CoefficientEncoding::uniform(1, 1).unwrap();
    let o = synthesize_oracle(&b, &enc, &Threshold::explicit(9)).unwrap();
    let r = verify_oracle(&o, &b, 26).unwrap();
    assert!(r.passed(), "{r:?}");
    assert_eq!(r.patterns_checked, 4);
    let sols = brute_force_svp(&b, &enc, Some(9), DEFAULT_ENUMERATION_CAP).unwrap();
    let xs: Vec<i64> = sols
        .all_solutions
        .unwrap()
        .iter()
        .map(|&p| enc.decode_index(p)[0])
        .collect();
    assert_eq!(xs, vec![-1, 0, 1]);
}

#[test]
fn worked_example_flips_five_of_sixty_four() {
    let b = b22();
    let enc = CoefficientEncoding::uniform(2, 2).unwrap();
    let o = synthesize_oracle(&b, &enc, &Threshold::explicit(5)).unwrap();
    let r = verify_oracle(&o, &b, 26).unwrap();
    assert!(r.passed(), "{r:?}");
    assert_eq!(r.patterns_checked, 64);

    let mut lanes = vec![0u64; o.circuit.width() as usize];
    for (k, q) in o.input_qubits().into_iter().enumerate() {
        lanes[q as usize] = (0..64u64).fold(0, |acc, p| acc | (p >> k & 1) << p);
    }
    run_bitsliced(&o.circuit, &mut lanes).unwrap();
    assert_eq!(lanes[o.output as usize].count_ones(), 5);
}

#[test]
fn vacuous_threshold_flips_everything() {
    let b = b22();
    let enc = CoefficientEncoding::uniform(2, 2).unwrap();
    let o = synthesize_oracle(&b, &enc, &Threshold::explicit(u64::MAX)).unwrap();
    let r = verify_oracle(&o, &b, 26).unwrap();
    assert!(r.passed());
}

#[test]
fn negated_rows_keep_the_original_predicate() {
    let b = LatticeBasis::from_i64(&[vec![-2, 1, 0], vec![1, -3, 1], vec![-1, 0, 2]]).unwrap();
    let enc = CoefficientEncoding::explicit(vec![1, 2, 1]).unwrap();
    for tau in [0, 3, 6, 14] {
        let o = synthesize_oracle(&b, &enc, &Threshold::explicit(tau)).unwrap();
        assert_eq!(o.negated_rows, vec![0, 2]);
        assert!(verify_oracle(&o, &b, 26).unwrap().passed(), "tau={tau}");
    }
}

#[test]
fn deleting_a_gate_is_caught() {
    let b = b22();
    let enc = CoefficientEncoding::uniform(2, 2).unwrap();
    let mut o = synthesize_oracle(&b, &enc, &Threshold::explicit(5)).unwrap();
    let idx = o
        .circuit
        .gates()
        .iter()
        .position(|g| matches!(g, grover_svp::circuit::Gate::Cx(..)))
        .unwrap();
    o.circuit.remove_gate(idx);
    let r = verify_oracle(&o, &b, 26).unwrap();
    assert!(!r.passed());
    assert!(r.first_counterexample.is_some() || r.ancilla_violations > 0);
}

#[test]
fn oracle_twice_is_identity() {
    let b = b22();
    let enc = CoefficientEncoding::uniform(2, 2).unwrap();
    let o = synthesize_oracle(&b, &enc, &Threshold::explicit(5)).unwrap();
    let twice = o.circuit.compose(&o.circuit).unwrap();
    let width = twice.width() as usize;
    for y in [0u64, !0] {
        let mut lanes = vec![0u64; width];
        for (k, q) in o.input_qubits().into_iter().enumerate() {
            lanes[q as usize] = (0..64u64).fold(0, |acc, p| acc | (p >> k & 1) << p);
        }
        lanes[o.output as usize] = y;
        let start = lanes.clone();
        run_bitsliced(&twice, &mut lanes).unwrap();
        assert_eq!(lanes, start);
    }
}

#[test]
fn cost_does_not_depend_on_threshold() {
    let b = b22();
    let enc = CoefficientEncoding::uniform(2, 2).unwrap();
    let ms: Vec<_> = [5u64, 6, 9, 12]
        .iter()
        .map(|&t| {
            metrics(
                &synthesize_oracle(&b, &enc, &Threshold::explicit(t))
                    .unwrap()
                    .circuit,
            )
        })
        .collect();
    for m in &ms[1..] {
        assert_eq!(
            (m.width, m.t_count, m.t_depth),
            (ms[0].width, ms[0].t_count, ms[0].t_depth)
        );
    }
}
