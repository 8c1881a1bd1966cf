//! Statistical checks of generators, predicates and the Monte Carlo harness.
//! Seeds are fixed, so every check is deterministic; thresholds are in
//! standard errors of the quantity being checked.

use csco::analytics;
use csco::degeneracy::{self, DetectorModel};
use csco::montecarlo::{self, EstimatorKind, Execution, Pooling, TrialPlan};
use csco::spectra::{self, stream, GeneratorConfig, Seed, SpectrumModel};

const MODELS: [SpectrumModel; 2] = [
    SpectrumModel::UniformInterval,
    SpectrumModel::ExponentialGaps,
];

fn config(n: usize, model: SpectrumModel) -> GeneratorConfig<f64> {
    GeneratorConfig::new(n, 1.0, model).unwrap()
}

fn det(d: f64) -> DetectorModel<f64> {
    DetectorModel::new(d).unwrap()
}

fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

fn binomial_se(p: f64, n: usize) -> f64 {
    (p * (1.0 - p) / n as f64).sqrt()
}

fn collect_gaps(model: SpectrumModel, n: usize, realizations: u64, master: u64) -> Vec<f64> {
    (0..realizations)
        .flat_map(|t| {
            let s = spectra::generate_sorted(&config(n, model), Seed::new(master).with_trial(t));
            spectra::gaps(&s).unwrap()
        })
        .collect()
}

#[test]
fn uniform_mean_gap_is_mean_spacing() {
    let per_realization: Vec<f64> = (0..1000)
        .map(|t| {
            let s = spectra::generate_sorted(
                &config(100, SpectrumModel::UniformInterval),
                Seed::new(2024).with_trial(t),
            );
            let g = spectra::gaps(&s).unwrap();
            g.iter().sum::<f64>() / g.len() as f64
        })
        .collect();
    let (mean, se) = mean_and_se(&per_realization);
    assert!((mean - 1.0).abs() <= 3.0 * se, "mean gap {mean} ± {se}");
}

#[test]
fn gap_survival_is_exponential_for_both_models() {
    for model in MODELS {
        let gaps = collect_gaps(model, 100, 102, 31);
        assert!(gaps.len() >= 10_000);
        for x in [0.5, 1.0, 2.0] {
            let expected = f64::exp(-x);
            let frac = gaps.iter().filter(|&&g| g > x).count() as f64 / gaps.len() as f64;
            let se = binomial_se(expected, gaps.len());
            assert!(
                (frac - expected).abs() <= 3.0 * se,
                "{model:?} x={x}: {frac} vs {expected}"
            );
        }
    }
}

#[test]
fn two_level_exponential_gap_has_mean_spacing() {
    let gaps = collect_gaps(SpectrumModel::ExponentialGaps, 2, 5000, 8);
    let (mean, se) = mean_and_se(&gaps);
    assert!((mean - 1.0).abs() <= 4.0 * se, "{mean} ± {se}");
}

#[test]
fn permutations_are_uniform() {
    for model in MODELS {
        let mut counts = [0usize; 24];
        let trials = 10_000;
        for t in 0..trials {
            let s = spectra::generate_permuted(&config(4, model), Seed::new(99).with_trial(t));
            let v = s.values();
            let mut ranks = [0usize; 4];
            for i in 0..4 {
                ranks[i] = v.iter().filter(|&&x| x < v[i]).count();
            }
            // Lehmer code of the rank vector
            let mut code = 0;
            let mut seen = [false; 4];
            for (pos, &r) in ranks.iter().enumerate() {
                let smaller_unused = (0..r).filter(|&k| !seen[k]).count();
                code = code * (4 - pos) + smaller_unused;
                seen[r] = true;
            }
            counts[code] += 1;
        }
        let p = 1.0 / 24.0;
        let se = binomial_se(p, trials as usize);
        for (k, &c) in counts.iter().enumerate() {
            let f = c as f64 / trials as f64;
            assert!((f - p).abs() <= 4.0 * se, "{model:?} ordering {k}: {f}");
        }
    }
}

#[test]
fn streams_are_uncorrelated() {
    let c = config(20, SpectrumModel::UniformInterval);
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for t in 0..1000 {
        let seed = Seed::new(4).with_trial(t);
        let rank_of_first = |s: &spectra::PermutedSpectrum<f64>| {
            let v = s.values();
            v.iter().filter(|&&x| x < v[0]).count() as f64
        };
        a.push(rank_of_first(&spectra::generate_permuted(
            &c,
            seed.with_stream(stream::FIRST),
        )));
        b.push(rank_of_first(&spectra::generate_permuted(
            &c,
            seed.with_stream(stream::SECOND),
        )));
    }
    let (ma, _) = mean_and_se(&a);
    let (mb, _) = mean_and_se(&b);
    let cov: f64 = a.iter().zip(&b).map(|(x, y)| (x - ma) * (y - mb)).sum();
    let va: f64 = a.iter().map(|x| (x - ma).powi(2)).sum();
    let vb: f64 = b.iter().map(|y| (y - mb).powi(2)).sum();
    let r = cov / (va * vb).sqrt();
    assert!(r.abs() <= 4.0 / (1000f64).sqrt(), "rank correlation {r}");
}

#[test]
fn degenerate_gap_fraction_matches_pair_probability() {
    let c = config(100, SpectrumModel::UniformInterval);
    let (mut hits, mut sites) = (0usize, 0usize);
    for t in 0..1000 {
        let flags = degeneracy::degenerate_gap_flags(
            &spectra::generate_sorted(&c, Seed::new(12).with_trial(t)),
            &det(0.1),
        )
        .unwrap();
        hits += flags.iter().filter(|&&f| f).count();
        sites += flags.len();
    }
    let p = analytics::pair_degeneracy_prob(0.1f64, 1.0).unwrap();
    let f = hits as f64 / sites as f64;
    assert!((f - p).abs() <= 4.0 * binomial_se(p, sites), "{f} vs {p}");
}

#[test]
fn cluster_start_frequency_matches() {
    let c = config(100, SpectrumModel::UniformInterval);
    let (mut hits, mut sites) = (0u64, 0u64);
    for t in 0..1000 {
        let s = spectra::generate_sorted(&c, Seed::new(13).with_trial(t));
        let count = degeneracy::count_cluster_start_pattern(&s, &det(0.2)).unwrap();
        hits += count.hits;
        sites += count.sites;
    }
    let p = analytics::pair_degeneracy_prob(0.2f64, 1.0).unwrap();
    let pc = analytics::cluster_start_prob(p).unwrap();
    assert!((pc - 0.0269022).abs() < 1e-7);
    let f = hits as f64 / sites as f64;
    assert!(
        (f - pc).abs() <= 4.0 * binomial_se(pc, sites as usize),
        "{f} vs {pc}"
    );
}

#[test]
fn no_cluster_probability_matches() {
    let c = config(100, SpectrumModel::UniformInterval);
    let trials = 10_000;
    let none = (0..trials)
        .filter(|&t| {
            !degeneracy::has_clusters(
                &spectra::generate_sorted(&c, Seed::new(14).with_trial(t)),
                &det(0.1),
            )
        })
        .count();
    let p = analytics::pair_degeneracy_prob(0.1f64, 1.0).unwrap();
    let expected = analytics::prob_no_clusters(p, 100).unwrap().exact;
    assert!((expected - 0.443).abs() < 1e-3);
    let f = none as f64 / trials as f64;
    assert!(
        (f - expected).abs() <= 4.0 * binomial_se(expected, trials as usize),
        "{f}"
    );
}

#[test]
fn set_level_predicates_agree_between_orders() {
    for model in MODELS {
        let c = config(60, model);
        for t in 0..500 {
            let seed = Seed::new(21).with_trial(t);
            let sorted = spectra::generate_sorted(&c, seed);
            let permuted = spectra::generate_permuted(&c, seed);
            let d = det(0.01 + 0.002 * (t % 50) as f64);
            assert_eq!(
                degeneracy::has_clusters(&sorted, &d),
                degeneracy::has_clusters(&spectra::sort(&permuted), &d)
            );
            assert_eq!(
                degeneracy::identifies_all_states(&permuted, &d),
                degeneracy::identifies_all_states(&sorted.to_permuted(), &d)
            );
        }
    }
}

fn run(
    kind: EstimatorKind,
    n: usize,
    d1: f64,
    d2: f64,
    trials: u64,
    seed: u64,
) -> montecarlo::Estimate {
    let plan = TrialPlan::new(
        kind,
        config(n, SpectrumModel::UniformInterval),
        det(d1),
        trials,
        seed,
    )
    .with_second_detector(det(d2))
    .with_execution(Execution::Parallel(0));
    montecarlo::run(&plan).unwrap()
}

#[test]
fn run_reproduces_pair_probability_and_two_observable_csco() {
    let e = run(EstimatorKind::PairDegeneracySorted, 100, 0.1, 0.0, 1000, 3);
    assert!((e.mean - 0.0951626).abs() <= 4.0 * e.stderr, "{e:?}");

    let e = run(EstimatorKind::CscoTwo, 100, 0.1, 0.05, 10_000, 3);
    let p1 = analytics::pair_degeneracy_prob(0.1, 1.0).unwrap();
    let p2 = analytics::pair_degeneracy_prob(0.05, 1.0).unwrap();
    let expected = analytics::prob_csco_two(p1, p2, 100).unwrap().exact;
    assert!(
        (e.mean - expected).abs() <= 4.0 * e.stderr,
        "{e:?} vs {expected}"
    );
}

#[test]
fn estimates_respect_binomial_bounds() {
    for kind in EstimatorKind::ALL {
        for d in [0.0, 0.05, 0.3] {
            let e = run(kind, 50, d, d / 2.0, 400, 5);
            assert!((0.0..=1.0).contains(&e.mean), "{kind}: {e:?}");
            assert!(
                e.stderr <= 0.5 / (e.n_events as f64).sqrt() + 1e-15,
                "{kind}: {e:?}"
            );
        }
    }
}

#[test]
fn standard_error_halves_when_trials_quadruple() {
    for kind in [
        EstimatorKind::PairDegeneracySorted,
        EstimatorKind::NoClusters,
    ] {
        let small = run(kind, 100, 0.1, 0.0, 1000, 6);
        let large = run(kind, 100, 0.1, 0.0, 4000, 6);
        let ratio = small.stderr / large.stderr;
        assert!((ratio / 2.0 - 1.0).abs() <= 0.2, "{kind}: ratio {ratio}");
    }
}

#[test]
fn per_trial_pooling_agrees_with_per_site() {
    let base = TrialPlan::new(
        EstimatorKind::PairDegeneracySorted,
        config(100, SpectrumModel::UniformInterval),
        det(0.2),
        2000,
        44,
    );
    let site = montecarlo::run(&base).unwrap();
    let trial = montecarlo::run(&base.with_pooling(Pooling::PerTrial)).unwrap();
    // every trial has the same number of sites, so the two means coincide
    assert!((site.mean - trial.mean).abs() < 1e-12);
    assert_eq!(trial.n_events, 2000);
    assert!(trial.stderr > 0.0);
}

#[test]
fn single_precision_pipeline_tracks_double() {
    let c = GeneratorConfig::<f32>::new(100, 1.0, SpectrumModel::UniformInterval).unwrap();
    let plan = TrialPlan::new(
        EstimatorKind::CscoSingle,
        c,
        DetectorModel::new(0.02f32).unwrap(),
        4000,
        9,
    );
    let e = montecarlo::run(&plan).unwrap();
    let p = analytics::pair_degeneracy_prob(0.02f32, 1.0).unwrap();
    let expected = analytics::prob_csco_single(p, 100).unwrap().exact as f64;
    assert!(
        (e.mean - expected).abs() <= 4.0 * e.stderr,
        "{e:?} vs {expected}"
    );
}
