//! Presets that reproduce the published figures end to end: sweep, analytic
//! curves, gate on the z-scores, and CSV / gnuplot output.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::degeneracy::DetectorModel;
use crate::montecarlo::{
    self, Column, EstimatorKind, Execution, SweepTable, TrialPlan, Vary, ZReport,
};
use crate::spectra::{stream, GeneratorConfig, Seed, SpectrumModel};
use crate::{Error, Result};

pub const DEFAULT_LEVELS: usize = 100;
pub const DEFAULT_TRIALS: u64 = 1000;
pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_GATE: f64 = 4.0;
/// Detector errors of the two-observable figures.
pub const TWO_OBSERVABLE_ERRORS: (f64, f64) = (0.1, 0.05);
pub const DEFAULT_LENGTH_GRID: [f64; 5] = [50.0, 100.0, 200.0, 400.0, 800.0];

pub const CSV_HEADER: &str = "x,analytic_exact,analytic_asymptotic,analytic_conjecture,\
analytic_conjecture_asymptotic,mc_mean,mc_stderr,n_trials,n_events";

/// 26 detector errors `0, 0.02, ..., 0.5` (unit mean spacing).
pub fn default_delta_grid() -> Vec<f64> {
    (0..=25).map(|k| f64::from(k) * 0.02).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FigureId {
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
}

impl FigureId {
    pub const ALL: [FigureId; 6] = [
        FigureId::Fig3,
        FigureId::Fig4,
        FigureId::Fig5,
        FigureId::Fig6,
        FigureId::Fig7,
        FigureId::Fig8,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FigureId::Fig3 => "fig3",
            FigureId::Fig4 => "fig4",
            FigureId::Fig5 => "fig5",
            FigureId::Fig6 => "fig6",
            FigureId::Fig7 => "fig7",
            FigureId::Fig8 => "fig8",
        }
    }

    pub fn estimator(self) -> EstimatorKind {
        match self {
            FigureId::Fig3 => EstimatorKind::PairDegeneracySorted,
            FigureId::Fig4 => EstimatorKind::ClusterStart,
            FigureId::Fig5 => EstimatorKind::NoClusters,
            FigureId::Fig6 => EstimatorKind::PairDegeneracyPermuted,
            FigureId::Fig7 => EstimatorKind::CscoSingle,
            FigureId::Fig8 => EstimatorKind::CscoTwo,
        }
    }

    pub fn vary(self) -> Vary {
        match self {
            FigureId::Fig8 => Vary::SpectrumLength,
            _ => Vary::DetectorError,
        }
    }

    fn title(self) -> &'static str {
        match self {
            FigureId::Fig3 => "Degenerate neighbours in the sorted spectrum",
            FigureId::Fig4 => "Left end of a cluster of degenerate pairs",
            FigureId::Fig5 => "No clusters of degenerate pairs",
            FigureId::Fig6 => "Degenerate neighbours after random permutation",
            FigureId::Fig7 => "One observable is a CSCO",
            FigureId::Fig8 => "Two observables form a CSCO, vs spectrum length",
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FigureId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::UnknownFigure(s.to_string()))
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct FigureOverrides {
    pub n_levels: Option<usize>,
    pub trials: Option<u64>,
    pub grid: Option<Vec<f64>>,
    pub seed: Option<u64>,
    pub gate: Option<f64>,
    pub model: Option<SpectrumModel>,
    pub execution: Execution,
}

/// Fully resolved settings of one figure.
#[derive(Clone, Debug, PartialEq)]
pub struct FigurePreset {
    pub id: FigureId,
    pub n_levels: usize,
    pub mean_spacing: f64,
    pub trials: u64,
    pub grid: Vec<f64>,
    pub seed: u64,
    pub gate: f64,
    pub model: SpectrumModel,
    pub execution: Execution,
}

impl FigurePreset {
    pub fn new(id: FigureId, overrides: &FigureOverrides) -> Self {
        let grid = overrides.grid.clone().unwrap_or_else(|| match id {
            FigureId::Fig8 => DEFAULT_LENGTH_GRID.to_vec(),
            _ => default_delta_grid(),
        });
        Self {
            id,
            n_levels: overrides.n_levels.unwrap_or(DEFAULT_LEVELS),
            mean_spacing: 1.0,
            trials: overrides.trials.unwrap_or(DEFAULT_TRIALS),
            grid,
            seed: overrides.seed.unwrap_or(DEFAULT_SEED),
            gate: overrides.gate.unwrap_or(DEFAULT_GATE),
            model: overrides.model.unwrap_or_default(),
            execution: overrides.execution,
        }
    }

    fn plan(&self, estimator: EstimatorKind, seed: u64) -> Result<TrialPlan<f64>> {
        let config = GeneratorConfig::new(self.n_levels, self.mean_spacing, self.model)?;
        let (d1, d2) = TWO_OBSERVABLE_ERRORS;
        let mut plan = TrialPlan::new(
            estimator,
            config,
            DetectorModel::new(d1)?,
            self.trials,
            seed,
        )
        .with_execution(self.execution);
        if estimator == EstimatorKind::CscoTwo {
            plan = plan.with_second_detector(DetectorModel::new(d2)?);
        }
        Ok(plan)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FigureReport {
    pub preset: FigurePreset,
    pub table: SweepTable,
    pub z: ZReport,
    /// fig7 only: two observables at `ΔI¹ = 2ΔI²` over the same grid.
    pub companion: Option<SweepTable>,
    pub companion_z: Option<ZReport>,
    pub max_abs_z: f64,
    pub pass: bool,
    pub artifacts: Vec<PathBuf>,
}

impl FigureReport {
    pub fn id(&self) -> FigureId {
        self.preset.id
    }

    /// z-scores of the Monte Carlo column against another analytic column.
    pub fn z_against(&self, column: Column) -> ZReport {
        montecarlo::zscore_report_against(&self.table, column)
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "{}: {} rows, max |z| = {:.3} (gate {}) {}",
            self.id(),
            self.table.rows.len(),
            self.max_abs_z,
            self.preset.gate,
            if self.pass { "PASS" } else { "FAIL" }
        );
        if !self.z.zero_stderr.is_empty() {
            s.push_str(&format!(
                "; {} row(s) with zero stderr excluded",
                self.z.zero_stderr.len()
            ));
        }
        if let Some(cz) = &self.companion_z {
            s.push_str(&format!(
                "; companion max |z| = {:.3} (not gated)",
                cz.max_abs_z
            ));
        }
        s
    }
}

/// Runs the preset sweep for `id` and gates it at `max |z| <= gate`.
pub fn run_figure(id: FigureId, overrides: &FigureOverrides) -> Result<FigureReport> {
    let preset = FigurePreset::new(id, overrides);
    if preset.grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let plan = preset.plan(id.estimator(), preset.seed)?;
    let table = montecarlo::sweep(&plan, &preset.grid, id.vary())?;
    let z = montecarlo::zscore_report(&table);

    let (companion, companion_z) = if id == FigureId::Fig7 {
        let seed = Seed::new(preset.seed).with_stream(stream::SECOND).mixed();
        let plan = preset.plan(EstimatorKind::CscoTwo, seed)?;
        let t = montecarlo::sweep(&plan, &preset.grid, Vary::DetectorError)?;
        let cz = montecarlo::zscore_report(&t);
        (Some(t), Some(cz))
    } else {
        (None, None)
    };

    let max_abs_z = z.max_abs_z;
    let pass = z.within(preset.gate);
    Ok(FigureReport {
        preset,
        table,
        z,
        companion,
        companion_z,
        max_abs_z,
        pass,
        artifacts: Vec::new(),
    })
}

fn cell(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// CSV rendering of a sweep table, header included.
pub fn table_csv(table: &SweepTable) -> String {
    let mut out = String::with_capacity(64 * (table.rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in &table.rows {
        let a = &r.analytic;
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.x,
            cell(a.exact),
            cell(a.asymptotic),
            cell(a.conjecture),
            cell(a.conjecture_asymptotic),
            r.mc.mean,
            r.mc.stderr,
            r.mc.n_trials,
            r.mc.n_events
        ));
    }
    out
}

fn plot_script(report: &FigureReport, csv_names: &[(String, &SweepTable)]) -> String {
    let id = report.id();
    let xlabel = match id.vary() {
        Vary::DetectorError => "detector error / mean spacing",
        Vary::SpectrumLength => "spectrum length N",
    };
    let mut s = format!(
        "# {id}: {}\n# gnuplot script; red points are Monte Carlo, lines are closed forms\n\
         set datafile separator ','\nset datafile missing ''\nset key autotitle columnhead\n\
         set key box opaque\nset title '{}'\nset xlabel '{xlabel}'\nset ylabel 'probability'\n",
        id.title(),
        id.title()
    );
    if id == FigureId::Fig8 {
        s.push_str("set logscale x\n");
    }
    s.push_str(&format!(
        "set terminal pngcairo size 800,600\nset output '{id}.png'\n"
    ));
    let curves = [
        (2, "analytic_exact", "dark-green", Column::Exact),
        (3, "analytic_asymptotic", "purple", Column::Asymptotic),
        (4, "analytic_conjecture", "blue", Column::Conjecture),
        (
            5,
            "analytic_conjecture_asymptotic",
            "magenta",
            Column::ConjectureAsymptotic,
        ),
    ];
    let mut parts = Vec::new();
    for (k, (name, table)) in csv_names.iter().enumerate() {
        let tag = if k == 0 {
            String::new()
        } else {
            format!(" ({})", table.estimator)
        };
        parts.push(format!(
            "'{name}' using 1:6:7 with yerrorbars pt 7 ps 0.6 lc rgb 'red' title 'Monte Carlo{tag}'"
        ));
        for (col, label, colour, column) in curves {
            if table.rows.iter().any(|r| r.analytic.get(column).is_some()) {
                parts.push(format!(
                    "'{name}' using 1:{col} with lines lw 2 lc rgb '{colour}' title '{label}{tag}'"
                ));
            }
        }
    }
    s.push_str("plot ");
    s.push_str(&parts.join(", \\\n     "));
    s.push('\n');
    s
}

fn write(path: PathBuf, contents: &str) -> Result<PathBuf> {
    fs::write(&path, contents).map_err(|source| Error::Io {
        path: path.clone(),
        source,
    })?;
    Ok(path)
}

/// Writes `<id>.csv` and `<id>.plot` (plus `fig7_csco2.csv` for the fig7
/// companion curve) into `out_dir`, creating it if needed.
pub fn emit(report: &mut FigureReport, out_dir: &Path) -> Result<Vec<PathBuf>> {
    if report.table.rows.is_empty() {
        return Err(Error::EmptyGrid);
    }
    fs::create_dir_all(out_dir).map_err(|source| Error::Io {
        path: out_dir.to_path_buf(),
        source,
    })?;
    let id = report.id();
    let mut tables = vec![(format!("{id}.csv"), &report.table)];
    if let Some(c) = &report.companion {
        tables.push((format!("{id}_csco2.csv"), c));
    }
    let mut files = Vec::new();
    for (name, table) in &tables {
        files.push(write(out_dir.join(name), &table_csv(table))?);
    }
    files.push(write(
        out_dir.join(format!("{id}.plot")),
        &plot_script(report, &tables),
    )?);
    report.artifacts = files.clone();
    Ok(files)
}
