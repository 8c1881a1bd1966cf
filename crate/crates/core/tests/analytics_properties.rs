use csco::analytics::{self, MeanPairs};
use csco::experiments::{self, FigureId, FigureOverrides};
use csco::montecarlo::Column;
use proptest::prelude::*;

fn p_of(delta: f64) -> f64 {
    analytics::pair_degeneracy_prob(delta, 1.0).unwrap()
}

proptest! {
    #[test]
    fn probabilities_stay_in_unit_interval(p1 in 0.0f64..=1.0, p2 in 0.0f64..=1.0, n in 2usize..2000) {
        for v in [
            analytics::prob_no_clusters(p1, n).unwrap(),
            analytics::prob_csco_single(p1, n).unwrap(),
            analytics::prob_csco_two(p1, p2, n).unwrap(),
        ] {
            prop_assert!((0.0..=1.0).contains(&v.exact));
            prop_assert!((0.0..=1.0).contains(&v.asymptotic));
        }
        let a = analytics::pattern_ambiguity(p1, p2).unwrap();
        prop_assert!((0.0..=1.0).contains(&a));
    }

    #[test]
    fn larger_errors_lower_csco_probability(d in 0.0f64..2.0, extra in 0.0f64..1.0, n in 2usize..1000) {
        let (a, b) = (p_of(d), p_of(d + extra));
        prop_assert!(b >= a);
        prop_assert!(analytics::prob_csco_single(b, n).unwrap().exact <= analytics::prob_csco_single(a, n).unwrap().exact);
        // (1 - p)p² peaks at p = 2/3, past which clusters get rarer again
        if b <= 2.0 / 3.0 {
            prop_assert!(analytics::prob_no_clusters(b, n).unwrap().exact <= analytics::prob_no_clusters(a, n).unwrap().exact);
        }
        prop_assert!(analytics::prob_csco_two(b, b, n).unwrap().exact <= analytics::prob_csco_two(a, a, n).unwrap().exact + 1e-15);
    }

    #[test]
    fn longer_spectra_lower_single_csco_probability(p in 0.0f64..1.0, n in 2usize..1000) {
        let short = analytics::prob_csco_single(p, n).unwrap().exact;
        let long = analytics::prob_csco_single(p, n + 1).unwrap().exact;
        prop_assert!(long <= short);
    }
}

#[test]
fn two_observable_prediction_converges_to_its_limit() {
    let (p1, p2) = (p_of(0.1), p_of(0.05));
    let limit = analytics::pattern_ambiguity(p1, p2).unwrap();
    let mut last = f64::INFINITY;
    for n in [100usize, 1000, 10_000] {
        let pred = analytics::prob_csco_two(p1, p2, n).unwrap();
        assert!((1.0 - pred.asymptotic - limit).abs() < 1e-15);
        let diff = (pred.exact - pred.asymptotic).abs();
        assert!(diff < last, "N={n}: {diff}");
        assert!(diff <= 1e-3);
        let conj = analytics::prob_csco_two_conjecture(p1, p2, n, MeanPairs::Continuous).unwrap();
        assert!((conj.exact - pred.exact).abs() <= 1e-3, "N={n}");
        last = diff;
    }
}

#[test]
fn conjecture_exponent_is_exactly_twice_the_cluster_exponent() {
    for delta in [0.02, 0.05, 0.1, 0.15, 0.2] {
        let p = p_of(delta);
        let exact = analytics::prob_no_clusters(p, 100).unwrap();
        let conj = analytics::prob_no_clusters_conjecture(p, 100, MeanPairs::Continuous).unwrap();
        let ratio = conj.asymptotic.ln() / exact.asymptotic.ln();
        assert!((ratio - 2.0).abs() < 1e-12, "ΔI={delta}: {ratio}");
    }
}

#[test]
fn no_cluster_run_rejects_the_naive_model() {
    let overrides = FigureOverrides {
        trials: Some(10_000),
        grid: Some(vec![0.1]),
        seed: Some(5),
        ..Default::default()
    };
    let report = experiments::run_figure(FigureId::Fig5, &overrides).unwrap();
    assert!(report.pass, "{}", report.summary());
    let naive = report.z_against(Column::ConjectureAsymptotic);
    assert!(naive.max_abs_z > 10.0, "{naive:?}");
}
