//! Seeded Monte Carlo estimation of the degeneracy statistics.
//!
//! A trial is keyed by `(master seed, trial index)` only, so the harness can
//! run trials on any number of threads: per-trial counts are integers and
//! are summed, and per-trial fractions are reduced in trial order.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::analytics::{self, MeanPairs};
use crate::degeneracy::{self, DetectorModel};
use crate::spectra::{self, stream, GeneratorConfig, Seed, SpectrumPair};
use crate::{Error, Result, Scalar};

/// Statistic estimated by a plan; one per reproduced figure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EstimatorKind {
    /// Fraction of sorted neighbours that are degenerate (per gap).
    PairDegeneracySorted,
    /// Fraction of interior sites that open a cluster (per site).
    ClusterStart,
    /// Fraction of realizations with no cluster.
    NoClusters,
    /// Fraction of adjacent state indices that are degenerate (per pair).
    PairDegeneracyPermuted,
    /// Fraction of realizations where one observable is a CSCO.
    CscoSingle,
    /// Fraction of realizations where two observables form a CSCO.
    CscoTwo,
}

impl EstimatorKind {
    pub const ALL: [EstimatorKind; 6] = [
        EstimatorKind::PairDegeneracySorted,
        EstimatorKind::ClusterStart,
        EstimatorKind::NoClusters,
        EstimatorKind::PairDegeneracyPermuted,
        EstimatorKind::CscoSingle,
        EstimatorKind::CscoTwo,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EstimatorKind::PairDegeneracySorted => "pair",
            EstimatorKind::ClusterStart => "cluster-start",
            EstimatorKind::NoClusters => "no-clusters",
            EstimatorKind::PairDegeneracyPermuted => "pair-permuted",
            EstimatorKind::CscoSingle => "csco1",
            EstimatorKind::CscoTwo => "csco2",
        }
    }

    /// Estimators that pool qualifying sites across trials.
    pub fn is_per_site(self) -> bool {
        matches!(
            self,
            EstimatorKind::PairDegeneracySorted
                | EstimatorKind::ClusterStart
                | EstimatorKind::PairDegeneracyPermuted
        )
    }

    fn min_levels(self) -> usize {
        match self {
            EstimatorKind::ClusterStart => 4,
            EstimatorKind::PairDegeneracySorted
            | EstimatorKind::PairDegeneracyPermuted
            | EstimatorKind::NoClusters
            | EstimatorKind::CscoSingle
            | EstimatorKind::CscoTwo => 2,
        }
    }
}

impl fmt::Display for EstimatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EstimatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EstimatorKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown estimator `{s}`")))
    }
}

/// How per-site estimators combine trials.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Pooling {
    /// Qualifying sites over all sites of all trials.
    #[default]
    PerSite,
    /// Mean over trials of the per-trial fraction; the standard error is the
    /// sample standard deviation of those fractions over `sqrt(trials)`.
    PerTrial,
}

/// Thread usage of [`run`]. Results do not depend on it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    #[default]
    Serial,
    /// Worker threads; `0` lets rayon pick.
    Parallel(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrialPlan<T> {
    pub estimator: EstimatorKind,
    pub config: GeneratorConfig<T>,
    /// Generator of the second observable; defaults to `config`.
    pub second_config: Option<GeneratorConfig<T>>,
    pub detector: DetectorModel<T>,
    /// Required by [`EstimatorKind::CscoTwo`].
    pub second_detector: Option<DetectorModel<T>>,
    pub n_trials: u64,
    pub seed: u64,
    pub pooling: Pooling,
    pub execution: Execution,
}

impl<T: Scalar> TrialPlan<T> {
    pub fn new(
        estimator: EstimatorKind,
        config: GeneratorConfig<T>,
        detector: DetectorModel<T>,
        n_trials: u64,
        seed: u64,
    ) -> Self {
        Self {
            estimator,
            config,
            second_config: None,
            detector,
            second_detector: None,
            n_trials,
            seed,
            pooling: Pooling::default(),
            execution: Execution::default(),
        }
    }

    pub fn with_second_detector(mut self, det: DetectorModel<T>) -> Self {
        self.second_detector = Some(det);
        self
    }

    pub fn with_second_config(mut self, config: GeneratorConfig<T>) -> Self {
        self.second_config = Some(config);
        self
    }

    pub fn with_pooling(mut self, pooling: Pooling) -> Self {
        self.pooling = pooling;
        self
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    pub fn second_config(&self) -> &GeneratorConfig<T> {
        self.second_config.as_ref().unwrap_or(&self.config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_trials == 0 {
            return Err(Error::InvalidPlan("n_trials must be at least 1".into()));
        }
        let need = self.estimator.min_levels();
        if self.config.n_levels() < need {
            return Err(Error::InvalidPlan(format!(
                "{} needs at least {need} levels, got {}",
                self.estimator,
                self.config.n_levels()
            )));
        }
        if self.estimator == EstimatorKind::CscoTwo {
            if self.second_detector.is_none() {
                return Err(Error::InvalidPlan(
                    "csco2 requires a second detector".into(),
                ));
            }
            if self.second_config().n_levels() != self.config.n_levels() {
                return Err(Error::InvalidPlan(
                    "both observables must have the same number of levels".into(),
                ));
            }
        }
        Ok(())
    }

    /// Counts `(qualifying, sites)` for one trial.
    fn trial(&self, trial: u64) -> (u64, u64) {
        let seed = Seed::new(self.seed).with_trial(trial);
        let det = &self.detector;
        let hit = |b: bool| (u64::from(b), 1);
        match self.estimator {
            EstimatorKind::PairDegeneracySorted => {
                let s = spectra::generate_sorted(&self.config, seed);
                let flags = degeneracy::degenerate_gap_flags(&s, det).expect("validated N >= 2");
                (
                    flags.iter().filter(|&&f| f).count() as u64,
                    flags.len() as u64,
                )
            }
            EstimatorKind::ClusterStart => {
                let s = spectra::generate_sorted(&self.config, seed);
                let c = degeneracy::count_cluster_start_pattern(&s, det).expect("validated N >= 4");
                (c.hits, c.sites)
            }
            EstimatorKind::NoClusters => hit(!degeneracy::has_clusters(
                &spectra::generate_sorted(&self.config, seed),
                det,
            )),
            EstimatorKind::PairDegeneracyPermuted => {
                let s = spectra::generate_permuted(&self.config, seed);
                (
                    degeneracy::count_adjacent_degenerate(&s, det) as u64,
                    (s.len() - 1) as u64,
                )
            }
            EstimatorKind::CscoSingle => hit(degeneracy::identifies_all_states(
                &spectra::generate_permuted(&self.config, seed),
                det,
            )),
            EstimatorKind::CscoTwo => {
                let pair = SpectrumPair::new(
                    spectra::generate_permuted(&self.config, seed.with_stream(stream::FIRST)),
                    spectra::generate_permuted(
                        self.second_config(),
                        seed.with_stream(stream::SECOND),
                    ),
                )
                .expect("validated equal lengths");
                let det2 = self
                    .second_detector
                    .as_ref()
                    .expect("validated second detector");
                hit(degeneracy::jointly_identify_all_states(&pair, det, det2))
            }
        }
    }
}

/// Monte Carlo proportion with its binomial standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub stderr: f64,
    pub n_trials: u64,
    /// Trials for per-realization estimators, pooled sites otherwise.
    pub n_events: u64,
}

impl Estimate {
    /// Wald estimate `m ± sqrt(m(1-m)/n)` from `hits` out of `events`.
    pub fn from_counts(hits: u64, events: u64, n_trials: u64) -> Self {
        let mean = if events == 0 {
            0.0
        } else {
            hits as f64 / events as f64
        };
        let stderr = if events == 0 {
            0.0
        } else {
            (mean * (1.0 - mean) / events as f64).sqrt()
        };
        Self {
            mean,
            stderr,
            n_trials,
            n_events: events,
        }
    }

    /// `(mean - target) / stderr`; `None` when the standard error vanishes.
    pub fn z_score(&self, target: f64) -> Option<f64> {
        (self.stderr > 0.0).then(|| (self.mean - target) / self.stderr)
    }

    /// Wilson score interval at `z` standard deviations. Unlike the Wald
    /// interval it stays informative when the mean is at or near 0 or 1.
    pub fn wilson(&self, z: f64) -> (f64, f64) {
        let n = self.n_events as f64;
        if n == 0.0 {
            return (0.0, 1.0);
        }
        let m = self.mean;
        let z2 = z * z;
        let denom = 1.0 + z2 / n;
        let centre = (m + z2 / (2.0 * n)) / denom;
        let half = z * (m * (1.0 - m) / n + z2 / (4.0 * n * n)).sqrt() / denom;
        ((centre - half).max(0.0), (centre + half).min(1.0))
    }

    pub fn wilson_contains(&self, target: f64, z: f64) -> bool {
        let (lo, hi) = self.wilson(z);
        (lo..=hi).contains(&target)
    }
}

fn outcomes<T: Scalar>(plan: &TrialPlan<T>) -> Result<Vec<(u64, u64)>> {
    match plan.execution {
        Execution::Serial => Ok((0..plan.n_trials).map(|t| plan.trial(t)).collect()),
        Execution::Parallel(workers) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .map_err(|e| Error::InvalidPlan(format!("cannot start worker pool: {e}")))?;
            Ok(pool.install(|| {
                (0..plan.n_trials)
                    .into_par_iter()
                    .map(|t| plan.trial(t))
                    .collect()
            }))
        }
    }
}

/// Runs every trial of the plan and reduces them to one estimate.
pub fn run<T: Scalar>(plan: &TrialPlan<T>) -> Result<Estimate> {
    plan.validate()?;
    let results = outcomes(plan)?;
    let per_trial = plan.pooling == Pooling::PerTrial && plan.estimator.is_per_site();
    if !per_trial {
        let (hits, sites) = results
            .iter()
            .fold((0, 0), |(h, s), &(dh, ds)| (h + dh, s + ds));
        return Ok(Estimate::from_counts(hits, sites, plan.n_trials));
    }
    let n = results.len() as f64;
    let fractions: Vec<f64> = results.iter().map(|&(h, s)| h as f64 / s as f64).collect();
    let mean = fractions.iter().sum::<f64>() / n;
    let stderr = if results.len() > 1 {
        let var = fractions.iter().map(|f| (f - mean).powi(2)).sum::<f64>() / (n - 1.0);
        (var / n).sqrt()
    } else {
        0.0
    };
    Ok(Estimate {
        mean,
        stderr,
        n_trials: plan.n_trials,
        n_events: plan.n_trials,
    })
}

/// Independent variable of a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Vary {
    /// `x` is `ΔI` of the first detector; a second detector keeps the plan's
    /// ratio `ΔI²/ΔI¹`.
    DetectorError,
    /// `x` is `N`.
    SpectrumLength,
}

/// Analytic columns attached to a sweep row.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct AnalyticColumns {
    pub exact: Option<f64>,
    pub asymptotic: Option<f64>,
    pub conjecture: Option<f64>,
    pub conjecture_asymptotic: Option<f64>,
}

/// Column of a [`SweepTable`] to score Monte Carlo estimates against.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Column {
    #[default]
    Exact,
    Asymptotic,
    Conjecture,
    ConjectureAsymptotic,
}

impl AnalyticColumns {
    pub fn get(&self, column: Column) -> Option<f64> {
        match column {
            Column::Exact => self.exact,
            Column::Asymptotic => self.asymptotic,
            Column::Conjecture => self.conjecture,
            Column::ConjectureAsymptotic => self.conjecture_asymptotic,
        }
    }

    /// Closed-form counterparts of `kind` for detector probabilities `p1`
    /// (and `p2` for two observables) at `N` levels. `delta_ratio` is
    /// `ΔI/δ̄I` of the first observable.
    pub fn for_estimator(
        kind: EstimatorKind,
        n_levels: usize,
        delta_ratio: f64,
        p1: f64,
        p2: f64,
    ) -> Result<Self> {
        let pred = |p: analytics::Prediction<f64>| (Some(p.exact), Some(p.asymptotic));
        let mut cols = AnalyticColumns::default();
        match kind {
            EstimatorKind::PairDegeneracySorted => {
                cols.exact = Some(p1);
                cols.asymptotic = Some(delta_ratio.min(1.0));
            }
            EstimatorKind::ClusterStart => {
                cols.exact = Some(analytics::cluster_start_prob(p1)?);
            }
            EstimatorKind::NoClusters => {
                (cols.exact, cols.asymptotic) = pred(analytics::prob_no_clusters(p1, n_levels)?);
                if let Ok(c) =
                    analytics::prob_no_clusters_conjecture(p1, n_levels, MeanPairs::Continuous)
                {
                    (cols.conjecture, cols.conjecture_asymptotic) = pred(c);
                }
            }
            EstimatorKind::PairDegeneracyPermuted => {
                (cols.exact, cols.asymptotic) =
                    pred(analytics::randomized_pair_degeneracy_prob(p1, n_levels)?);
            }
            EstimatorKind::CscoSingle => {
                (cols.exact, cols.asymptotic) = pred(analytics::prob_csco_single(p1, n_levels)?);
            }
            EstimatorKind::CscoTwo => {
                (cols.exact, cols.asymptotic) = pred(analytics::prob_csco_two(p1, p2, n_levels)?);
                if let Ok(c) =
                    analytics::prob_csco_two_conjecture(p1, p2, n_levels, MeanPairs::Continuous)
                {
                    (cols.conjecture, cols.conjecture_asymptotic) = pred(c);
                }
            }
        }
        Ok(cols)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub x: f64,
    pub analytic: AnalyticColumns,
    pub mc: Estimate,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepTable {
    pub estimator: EstimatorKind,
    pub vary: Vary,
    pub rows: Vec<SweepRow>,
}

/// Analytic columns matching a plan.
pub fn analytic_for<T: Scalar>(plan: &TrialPlan<T>) -> Result<AnalyticColumns> {
    let delta1 = plan.detector.delta().as_f64();
    let spacing1 = plan.config.mean_spacing().as_f64();
    let p1 = analytics::pair_degeneracy_prob(delta1, spacing1)?;
    let p2 = match &plan.second_detector {
        Some(d) => analytics::pair_degeneracy_prob(
            d.delta().as_f64(),
            plan.second_config().mean_spacing().as_f64(),
        )?,
        None => 0.0,
    };
    AnalyticColumns::for_estimator(
        plan.estimator,
        plan.config.n_levels(),
        delta1 / spacing1,
        p1,
        p2,
    )
}

fn plan_at<T: Scalar>(plan: &TrialPlan<T>, x: f64, vary: Vary) -> Result<TrialPlan<T>> {
    let mut row = plan.clone();
    match vary {
        Vary::DetectorError => {
            if !(x.is_finite() && x >= 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "detector error {x} is not >= 0"
                )));
            }
            row.detector = DetectorModel::new(T::lit(x))?;
            if let Some(second) = &plan.second_detector {
                let base = plan.detector.delta();
                if base <= T::zero() {
                    return Err(Error::InvalidPlan(
                        "sweeping two detectors needs a positive first detector error to fix the ratio"
                            .into(),
                    ));
                }
                row.second_detector =
                    Some(DetectorModel::new(T::lit(x) * (second.delta() / base))?);
            }
        }
        Vary::SpectrumLength => {
            if !(x.is_finite() && x >= 1.0 && x.fract() == 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "spectrum length {x} is not a positive integer"
                )));
            }
            let n = x as usize;
            row.config = plan.config.with_n_levels(n)?;
            if let Some(c) = &plan.second_config {
                row.second_config = Some(c.with_n_levels(n)?);
            }
        }
    }
    Ok(row)
}

/// Runs the plan at every grid value (sorted ascending). Row `i` uses master
/// seed `Seed::new(plan.seed).with_trial(i)` on the sweep-row stream.
pub fn sweep<T: Scalar>(plan: &TrialPlan<T>, grid: &[f64], vary: Vary) -> Result<SweepTable> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let mut xs = grid.to_vec();
    xs.sort_by(f64::total_cmp);
    let rows = xs
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let mut row_plan = plan_at(plan, x, vary)?;
            row_plan.validate()?;
            row_plan.seed = Seed::new(plan.seed)
                .with_trial(i as u64)
                .with_stream(stream::SWEEP_ROW)
                .mixed();
            Ok(SweepRow {
                x,
                analytic: analytic_for(&row_plan)?,
                mc: run(&row_plan)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepTable {
        estimator: plan.estimator,
        vary,
        rows,
    })
}

/// Per-row `z = (mc.mean - analytic) / mc.stderr`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZReport {
    /// `None` for rows excluded from the maximum.
    pub z: Vec<Option<f64>>,
    /// Rows whose standard error is zero.
    pub zero_stderr: Vec<usize>,
    /// Rows without a value in the scored column.
    pub missing: Vec<usize>,
    pub max_abs_z: f64,
}

impl ZReport {
    pub fn within(&self, gate: f64) -> bool {
        self.max_abs_z <= gate
    }
}

/// Scores against the exact analytic column.
pub fn zscore_report(table: &SweepTable) -> ZReport {
    zscore_report_against(table, Column::Exact)
}

pub fn zscore_report_against(table: &SweepTable, column: Column) -> ZReport {
    let mut report = ZReport {
        z: Vec::new(),
        zero_stderr: Vec::new(),
        missing: Vec::new(),
        max_abs_z: 0.0,
    };
    for (i, row) in table.rows.iter().enumerate() {
        let z = match row.analytic.get(column) {
            None => {
                report.missing.push(i);
                None
            }
            Some(target) => {
                let z = row.mc.z_score(target);
                if z.is_none() {
                    report.zero_stderr.push(i);
                }
                z
            }
        };
        if let Some(z) = z {
            report.max_abs_z = report.max_abs_z.max(z.abs());
        }
        report.z.push(z);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::SpectrumModel;

    fn plan(kind: EstimatorKind, n: usize, delta: f64, trials: u64) -> TrialPlan<f64> {
        TrialPlan::new(
            kind,
            GeneratorConfig::new(n, 1.0, SpectrumModel::UniformInterval).unwrap(),
            DetectorModel::new(delta).unwrap(),
            trials,
            17,
        )
    }

    #[test]
    fn zero_error_means_certain_csco() {
        let e = run(&plan(EstimatorKind::CscoSingle, 50, 0.0, 200)).unwrap();
        assert_eq!((e.mean, e.stderr, e.n_events), (1.0, 0.0, 200));
    }

    #[test]
    fn invalid_plans_are_rejected() {
        assert!(run(&plan(EstimatorKind::CscoSingle, 50, 0.1, 0)).is_err());
        assert!(run(&plan(EstimatorKind::CscoTwo, 50, 0.1, 10)).is_err());
        assert!(run(&plan(EstimatorKind::ClusterStart, 3, 0.1, 10)).is_err());
        let mismatched = plan(EstimatorKind::CscoTwo, 50, 0.1, 10)
            .with_second_detector(DetectorModel::new(0.1).unwrap())
            .with_second_config(GeneratorConfig::unit(40).unwrap());
        assert!(run(&mismatched).is_err());
    }

    #[test]
    fn per_site_estimators_count_sites() {
        let e = run(&plan(EstimatorKind::PairDegeneracySorted, 10, 0.1, 7)).unwrap();
        assert_eq!((e.n_trials, e.n_events), (7, 63));
        let e = run(&plan(EstimatorKind::ClusterStart, 10, 0.1, 7)).unwrap();
        assert_eq!(e.n_events, 49);
        let e = run(&plan(EstimatorKind::NoClusters, 10, 0.1, 7)).unwrap();
        assert_eq!(e.n_events, 7);
    }

    #[test]
    fn serial_and_parallel_agree_bitwise() {
        for kind in EstimatorKind::ALL {
            let base =
                plan(kind, 40, 0.2, 300).with_second_detector(DetectorModel::new(0.3).unwrap());
            let serial = run(&base).unwrap();
            for workers in [1, 3, 8] {
                let par = run(&base.clone().with_execution(Execution::Parallel(workers))).unwrap();
                assert_eq!(serial, par, "{kind} with {workers} workers");
            }
            let pt = base.clone().with_pooling(Pooling::PerTrial);
            assert_eq!(
                run(&pt).unwrap(),
                run(&pt.with_execution(Execution::Parallel(4))).unwrap()
            );
        }
    }

    #[test]
    fn wilson_interval_handles_extremes() {
        let e = Estimate::from_counts(0, 1000, 1000);
        let (lo, hi) = e.wilson(2.0);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.0 && hi < 0.01);
        assert!(e.wilson_contains(0.001, 2.0));
        assert!(Estimate::from_counts(990, 1000, 1000).wilson_contains(0.99, 1.0));
    }

    #[test]
    fn z_scores() {
        let e = Estimate::from_counts(50, 100, 100);
        assert_eq!(e.z_score(0.5), Some(0.0));
        assert!((e.z_score(0.45).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(Estimate::from_counts(0, 100, 100).z_score(0.1), None);
    }

    #[test]
    fn zscore_report_flags_zero_stderr() {
        let row = |mean: f64, stderr: f64, exact: f64| SweepRow {
            x: 0.0,
            analytic: AnalyticColumns {
                exact: Some(exact),
                ..Default::default()
            },
            mc: Estimate {
                mean,
                stderr,
                n_trials: 10,
                n_events: 10,
            },
        };
        let table = SweepTable {
            estimator: EstimatorKind::CscoSingle,
            vary: Vary::DetectorError,
            rows: vec![row(0.5, 0.1, 0.5), row(0.3, 0.1, 0.5), row(1.0, 0.0, 0.9)],
        };
        let r = zscore_report(&table);
        assert_eq!(r.z[0], Some(0.0));
        assert!((r.max_abs_z - 2.0).abs() < 1e-12);
        assert_eq!(r.zero_stderr, vec![2]);
        assert!(r.within(2.0) && !r.within(1.9));
        assert_eq!(
            zscore_report_against(&table, Column::Conjecture).missing,
            vec![0, 1, 2]
        );
    }

    #[test]
    fn sweep_sorts_grid_and_rejects_empty() {
        let base = plan(EstimatorKind::PairDegeneracySorted, 20, 0.1, 20);
        assert!(matches!(
            sweep(&base, &[], Vary::DetectorError),
            Err(Error::EmptyGrid)
        ));
        let t = sweep(&base, &[0.3, 0.1, 0.2], Vary::DetectorError).unwrap();
        let xs: Vec<f64> = t.rows.iter().map(|r| r.x).collect();
        assert_eq!(xs, vec![0.1, 0.2, 0.3]);
        assert!(sweep(&base, &[2.5], Vary::SpectrumLength).is_err());
    }

    #[test]
    fn single_point_sweep_is_run_plus_analytics() {
        let base = plan(EstimatorKind::CscoSingle, 30, 0.02, 50);
        let t = sweep(&base, &[0.02], Vary::DetectorError).unwrap();
        let mut row_plan = base.clone();
        row_plan.seed = Seed::new(base.seed)
            .with_trial(0)
            .with_stream(stream::SWEEP_ROW)
            .mixed();
        assert_eq!(t.rows[0].mc, run(&row_plan).unwrap());
        assert_eq!(t.rows[0].analytic, analytic_for(&base).unwrap());
    }

    #[test]
    fn two_detector_sweep_keeps_ratio() {
        let base = plan(EstimatorKind::CscoTwo, 30, 0.2, 10)
            .with_second_detector(DetectorModel::new(0.1).unwrap());
        let row = plan_at(&base, 0.4, Vary::DetectorError).unwrap();
        assert!((row.second_detector.unwrap().delta() - 0.2).abs() < 1e-15);
        let zero = plan(EstimatorKind::CscoTwo, 30, 0.0, 10)
            .with_second_detector(DetectorModel::new(0.1).unwrap());
        assert!(sweep(&zero, &[0.1], Vary::DetectorError).is_err());
    }

    #[test]
    fn kind_names_round_trip() {
        for k in EstimatorKind::ALL {
            assert_eq!(k.name().parse::<EstimatorKind>().unwrap(), k);
        }
        assert!("fig9".parse::<EstimatorKind>().is_err());
    }
}
