mod args;
mod config;
mod format;

use std::fs;
use std::io::Write as _;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use csco::analytics::{self, MeanPairs};
use csco::experiments::{self, FigureOverrides};
use csco::montecarlo::{self, Vary};
use csco::{DetectorModel, EstimatorKind, GeneratorConfig, TrialPlan};

use args::{
    Cli, Command, EstimateArgs, FigureArgs, Format, GenerateArgs, MeanPairsArg, PatternsArgs,
    PredictArgs, Quantity, SeedArg, SweepArgs, TrialArgs, VaryArg,
};
use format::render;

/// Exit codes: 1 for bad input, 2 for failures while running, 3 when a
/// figure misses its gate.
enum Failure {
    Usage(String),
    Runtime(String),
    Gate,
}

impl From<csco::Error> for Failure {
    fn from(e: csco::Error) -> Self {
        match e {
            csco::Error::Io { .. } => Failure::Runtime(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

fn required(value: Option<f64>, flag: &str) -> Result<f64, Failure> {
    value.map_or_else(|| usage(format!("--{flag} is required here")), Ok)
}

fn non_negative(value: f64, flag: &str) -> Result<f64, Failure> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        usage(format!(
            "--{flag} must be a non-negative number, got {value}"
        ))
    }
}

fn positive(value: f64, flag: &str) -> Result<f64, Failure> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        usage(format!("--{flag} must be positive, got {value}"))
    }
}

fn levels(value: Option<usize>) -> Result<usize, Failure> {
    match value {
        None => usage("--levels is required here"),
        Some(n) if n < 2 => usage(format!("--levels must be at least 2, got {n}")),
        Some(n) => Ok(n),
    }
}

fn resolve_seed(seed: Option<SeedArg>) -> u64 {
    match seed {
        None => experiments::DEFAULT_SEED,
        Some(SeedArg::Fixed(s)) => s,
        Some(SeedArg::Random) => {
            let s = rand::random::<u64>();
            eprintln!("seed: {s}");
            s
        }
    }
}

fn print(text: &str) -> Outcome {
    std::io::stdout()
        .write_all(text.as_bytes())
        .map_err(|e| Failure::Runtime(format!("cannot write to stdout: {e}")))
}

fn predict(a: PredictArgs) -> Outcome {
    let delta1 = non_negative(required(a.delta1, "delta1")?, "delta1")?;
    let spacing1 = positive(required(a.spacing1, "spacing1")?, "spacing1")?;
    let p1 = analytics::pair_degeneracy_prob(delta1, spacing1)?;
    let second = |a: &PredictArgs| -> Result<f64, Failure> {
        let d = non_negative(required(a.delta2, "delta2")?, "delta2")?;
        let s = positive(required(a.spacing2, "spacing2")?, "spacing2")?;
        Ok(analytics::pair_degeneracy_prob(d, s)?)
    };
    let mode = match a.mean_pairs {
        MeanPairsArg::Continuous => MeanPairs::Continuous,
        MeanPairsArg::Rounded => MeanPairs::Rounded,
    };
    let both = |p: csco::Prediction<f64>| vec![Some(p.exact), Some(p.asymptotic)];

    let rows: Vec<(String, Vec<Option<f64>>)> = match a.quantity {
        Quantity::P => vec![("p".into(), vec![Some(p1), None])],
        Quantity::PC => vec![(
            "p_c".into(),
            vec![Some(analytics::cluster_start_prob(p1)?), None],
        )],
        Quantity::NoClusters => {
            vec![(
                "no_clusters".into(),
                both(analytics::prob_no_clusters(p1, levels(a.levels)?)?),
            )]
        }
        Quantity::Randomized => vec![(
            "randomized".into(),
            both(analytics::randomized_pair_degeneracy_prob(
                p1,
                levels(a.levels)?,
            )?),
        )],
        Quantity::Csco1 => vec![(
            "csco1".into(),
            both(analytics::prob_csco_single(p1, levels(a.levels)?)?),
        )],
        Quantity::Csco2 => {
            let p2 = second(&a)?;
            vec![(
                "csco2".into(),
                both(analytics::prob_csco_two(p1, p2, levels(a.levels)?)?),
            )]
        }
        Quantity::Conjectures => {
            let n = levels(a.levels)?;
            let p2 = if a.delta2.is_some() || a.spacing2.is_some() {
                Some(second(&a)?)
            } else {
                None
            };
            let cells = |r: csco::Result<csco::Prediction<f64>>| match r {
                Ok(p) => Ok(both(p)),
                Err(csco::Error::ConjectureDomain(_)) => Ok(vec![None, None]),
                Err(e) => Err(Failure::from(e)),
            };
            let mut rows = vec![(
                "no_clusters_conjecture".into(),
                cells(analytics::prob_no_clusters_conjecture(p1, n, mode))?,
            )];
            if let Some(p2) = p2 {
                rows.push((
                    "csco2_conjecture".into(),
                    cells(analytics::prob_csco_two_conjecture(p1, p2, n, mode))?,
                ));
            }
            rows
        }
    };
    print(&render(
        &["quantity", "exact", "asymptotic"],
        &rows,
        a.format == Format::Csv,
    ))
}

/// `fallback_delta1` stands in for `--delta1` when a sweep varies it anyway.
fn plan(t: &TrialArgs, fallback_delta1: Option<f64>) -> Result<TrialPlan, Failure> {
    let delta1 = non_negative(required(t.delta1.or(fallback_delta1), "delta1")?, "delta1")?;
    let spacing = positive(t.spacing, "spacing")?;
    if t.trials == 0 {
        return usage("--trials must be at least 1");
    }
    let config = GeneratorConfig::new(t.levels, spacing, t.model.into())?;
    let mut plan = TrialPlan::new(
        t.kind,
        config,
        DetectorModel::new(delta1)?,
        t.trials,
        resolve_seed(t.seed),
    )
    .with_pooling(t.pooling.into())
    .with_execution(t.workers.execution());
    if t.kind == EstimatorKind::CscoTwo {
        let delta2 = non_negative(required(t.delta2, "delta2")?, "delta2")?;
        plan = plan.with_second_detector(DetectorModel::new(delta2)?);
    }
    plan.validate()?;
    Ok(plan)
}

fn cell(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn estimate(a: EstimateArgs) -> Outcome {
    let plan = plan(&a.trial, None)?;
    let analytic = montecarlo::analytic_for(&plan)?;
    let e = montecarlo::run(&plan)?;
    let delta2 = plan.second_detector.as_ref().map(|d| d.delta());
    print(&format!(
        "kind,levels,delta1,delta2,analytic_exact,mc_mean,mc_stderr,n_trials,n_events\n\
         {},{},{},{},{},{},{},{},{}\n",
        plan.estimator,
        plan.config.n_levels(),
        plan.detector.delta(),
        cell(delta2),
        cell(analytic.exact),
        e.mean,
        e.stderr,
        e.n_trials,
        e.n_events
    ))
}

/// `steps` evenly spaced points from `from` to `to`, both included.
fn linspace(from: f64, to: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![from],
        _ => {
            let h = (to - from) / (steps - 1) as f64;
            (0..steps)
                .map(|i| {
                    if i == steps - 1 {
                        to
                    } else {
                        from + h * i as f64
                    }
                })
                .collect()
        }
    }
}

fn sweep(a: SweepArgs) -> Outcome {
    if a.steps == 0 {
        return usage("--steps must be at least 1");
    }
    if !(a.from.is_finite() && a.to.is_finite()) {
        return usage("--from and --to must be finite");
    }
    let grid = linspace(a.from, a.to, a.steps);
    let vary = match a.vary {
        VaryArg::Delta => {
            if a.from < 0.0 || a.to < 0.0 {
                return usage("detector errors must be non-negative");
            }
            Vary::DetectorError
        }
        VaryArg::Levels => {
            if let Some(x) = grid.iter().find(|x| x.fract() != 0.0 || **x < 2.0) {
                return usage(format!(
                    "spectrum lengths must be integers of at least 2, grid has {x}"
                ));
            }
            Vary::SpectrumLength
        }
    };
    let fallback = (vary == Vary::DetectorError).then(|| a.from.max(a.to));
    let plan = plan(&a.trial, fallback)?;
    let table = montecarlo::sweep(&plan, &grid, vary)?;
    let csv = experiments::table_csv(&table);
    match &a.out {
        Some(path) => fs::write(path, csv)
            .map_err(|e| Failure::Runtime(format!("cannot write {}: {e}", path.display()))),
        None => print(&csv),
    }
}

fn figure(a: FigureArgs) -> Outcome {
    if a.trials == Some(0) {
        return usage("--trials must be at least 1");
    }
    if let Some(g) = a.gate {
        positive(g, "gate")?;
    }
    let overrides = FigureOverrides {
        n_levels: a.levels,
        trials: a.trials,
        grid: None,
        seed: Some(resolve_seed(a.seed)),
        gate: a.gate,
        model: a.model.map(Into::into),
        execution: a.workers.execution(),
    };
    let mut report = experiments::run_figure(a.id, &overrides)?;
    let files = experiments::emit(&mut report, &a.out)?;
    let mut text = report.summary();
    text.push('\n');
    for f in &files {
        text.push_str(&format!("wrote {}\n", f.display()));
    }
    print(&text)?;
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Gate)
    }
}

fn patterns(a: PatternsArgs) -> Outcome {
    let r1 = positive(a.rate1, "rate1")?;
    let r2 = positive(a.rate2, "rate2")?;
    let e1 = non_negative(a.error1, "error1")?;
    let e2 = non_negative(a.error2, "error2")?;
    let p1 = analytics::pair_degeneracy_prob(e1, 1.0 / r1)?;
    let p2 = analytics::pair_degeneracy_prob(e2, 1.0 / r2)?;
    let ambiguity = analytics::pattern_ambiguity(p1, p2)?;
    let mut rows = vec![
        ("p1".to_string(), vec![Some(p1)]),
        ("p2".to_string(), vec![Some(p2)]),
        (
            "no_ambiguity_asymptotic".to_string(),
            vec![Some(1.0 - ambiguity)],
        ),
        ("ambiguity_asymptotic".to_string(), vec![Some(ambiguity)]),
    ];
    if a.levels.is_some() {
        let exact = analytics::prob_csco_two(p1, p2, levels(a.levels)?)?.exact;
        rows.push(("no_ambiguity_exact".to_string(), vec![Some(exact)]));
        rows.push(("ambiguity_exact".to_string(), vec![Some(1.0 - exact)]));
    }
    print(&render(
        &["quantity", "value"],
        &rows,
        a.format == Format::Csv,
    ))
}

fn generate(a: GenerateArgs) -> Outcome {
    let spacing = positive(a.spacing, "spacing")?;
    let config = GeneratorConfig::new(a.levels, spacing, a.model.into())?;
    let seed = csco::Seed::new(resolve_seed(a.seed));
    let values = if a.sorted {
        csco::spectra::generate_sorted(&config, seed).into_values()
    } else {
        csco::spectra::generate_permuted(&config, seed).into_values()
    };
    let mut out = String::with_capacity(24 * values.len());
    for v in values {
        out.push_str(&v.to_string());
        out.push('\n');
    }
    print(&out)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Predict(a) => predict(a),
        Command::Estimate(a) => estimate(a),
        Command::Sweep(a) => sweep(a),
        Command::Figure(a) => figure(a),
        Command::Patterns(a) => patterns(a),
        Command::Generate(a) => generate(a),
    }
}

fn main() -> ExitCode {
    let args = match config::expand(std::env::args_os().collect()) {
        Ok(a) => a,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\nFor more information, try '--help'.");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Gate) => ExitCode::from(3),
    }
}
