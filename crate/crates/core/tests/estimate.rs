use grover_svp::estimate::{
    extrapolate, fit, fit_sweep, log_log_slope, sweep, FitFamily, LogBase, Metric, SweepConfig,
};

fn small_sweep() -> Vec<grover_svp::estimate::SweepPoint> {
    sweep(&SweepConfig::new((2..=16).collect())).unwrap()
}

#[test]
fn sweep_is_seeded_and_grows_with_dimension() {
    let a = sweep(&SweepConfig::new(vec![2, 5, 10, 20])).unwrap();
    let b = sweep(&SweepConfig::new(vec![2, 5, 10, 20])).unwrap();
    assert_eq!(a, b);
    for w in a.windows(2) {
        for m in Metric::ALL {
            assert!(
                m.of(&w[1].metrics) > m.of(&w[0].metrics),
                "{} at n = {}",
                m.name(),
                w[1].n
            );
        }
    }
    for p in &a {
        assert!(p.metrics.t_depth <= p.metrics.depth);
        assert!(p.metrics.t_depth <= p.metrics.t_count);
        let g = p.grover_totals.as_ref().unwrap();
        assert!(g.quantum_cost > p.metrics.quantum_cost.into());
    }
}

#[test]
fn slopes_exceed_linear_growth() {
    let p = sweep(&SweepConfig::new(vec![10, 20])).unwrap();
    let s = log_log_slope(
        10.0,
        p[0].metrics.width as f64,
        20.0,
        p[1].metrics.width as f64,
    );
    assert!(s > 1.5, "width slope {s}");
}

#[test]
fn families_fit_a_dense_sweep() {
    let points = small_sweep();
    let fits = fit_sweep(&points).unwrap();
    for f in &fits {
        assert!(
            f.model.r_squared >= 0.98,
            "{} r2 {}",
            f.metric.name(),
            f.model.r_squared
        );
    }
}

#[test]
fn fit_reproduces_its_own_points_on_a_space_model() {
    let truth = |n: f64| 3.0 * n * n * n.log2() + 50.0 * n + 7.0;
    let pts: Vec<(f64, f64)> = (2..40).map(|n| (n as f64, truth(n as f64))).collect();
    let m = fit(&pts, FitFamily::Space, LogBase::Two).unwrap();
    assert!(m.max_relative_error < 1e-9);
    assert!((m.evaluate(186.0) / truth(186.0) - 1.0).abs() < 1e-6);
}

#[test]
fn extrapolation_grows_from_186_to_400() {
    let fits = fit_sweep(&small_sweep()).unwrap();
    let a = extrapolate(&fits, 186).unwrap();
    let b = extrapolate(&fits, 400).unwrap();
    assert!(b.k.log10 > a.k.log10);
    for (x, y) in a
        .published_coefficients
        .iter()
        .zip(&b.published_coefficients)
    {
        assert_eq!(x.log_base, y.log_base);
        for (p, q) in x.predictions.iter().zip(&y.predictions) {
            assert!(
                q.oracle.log10 > p.oracle.log10,
                "{:?} under {:?}",
                p.metric,
                x.log_base
            );
        }
    }
    assert!(a.published_estimate.is_some() && b.published_estimate.is_some());
    assert!(!a.note.is_empty());
}

#[test]
fn published_space_figures_under_either_log_base() {
    let a = extrapolate(&[], 186).unwrap();
    let ratios: Vec<f64> = a
        .published_coefficients
        .iter()
        .map(|c| {
            c.ratio_to_published
                .iter()
                .find(|(m, _)| *m == Metric::Width)
                .unwrap()
                .1
                .log10
        })
        .map(|l| 10f64.powf(l))
        .collect();
    assert_eq!(ratios.len(), 2);
    assert!(ratios.iter().any(|r| (0.5..=2.0).contains(r)), "{ratios:?}");
}
