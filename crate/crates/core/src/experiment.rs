//! Repeated seeded runs, summary statistics and result files.
//!
//! Run `i` of an experiment uses the seed [`derive_seed`]`(master_seed, i)`,
//! so every run can be replayed alone from the seed stored in its output.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::{run_gem, EngineConfig, RunOutcome};
use crate::error::{GemError, Result};
use crate::presets::{find_preset, PresetSpec};
use crate::problems::{build_problem, NamedProblem};
use crate::rng::{derive_seed, RngStream};

pub const DEFAULT_MASTER_SEED: u64 = 2024;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub problem: String,
    /// Registered preset name; `None` uses the standard setting.
    pub preset: Option<String>,
    /// Explicit coefficient list such as `a=1,b=0.7,theta=0.97^t`. Takes
    /// precedence over `preset`.
    pub params: Option<String>,
    pub n: usize,
    pub t_max: usize,
    pub runs: usize,
    pub master_seed: u64,
    pub dimension: Option<usize>,
    pub penalty_lambda: Option<f64>,
    pub m: Option<usize>,
    pub evaluate_centroid: bool,
    /// Worker threads; 0 means one per available core.
    pub workers: usize,
    /// A run counts as a success when its best value is within this
    /// distance of the problem's reference value.
    pub success_tolerance: Option<f64>,
}

impl ExperimentConfig {
    /// n = 10, t_max = 1000, 20 runs, standard setting.
    pub fn new(problem: &str) -> Self {
        Self {
            problem: problem.to_string(),
            preset: None,
            params: None,
            n: 10,
            t_max: 1000,
            runs: 20,
            master_seed: DEFAULT_MASTER_SEED,
            dimension: None,
            penalty_lambda: None,
            m: None,
            evaluate_centroid: false,
            workers: 0,
            success_tolerance: None,
        }
    }

    pub fn engine_config(&self) -> EngineConfig {
        EngineConfig {
            n: self.n,
            t_max: self.t_max,
            m: self.m,
            evaluate_centroid: self.evaluate_centroid,
        }
    }

    pub fn preset_spec(&self) -> Result<PresetSpec> {
        match (&self.params, &self.preset) {
            (Some(params), _) => PresetSpec::from_assignments(params),
            (None, Some(name)) => find_preset(name),
            (None, None) => Ok(PresetSpec::standard()),
        }
    }

    /// Label written to the summary's `preset` column.
    pub fn preset_label(&self) -> String {
        match (&self.params, &self.preset) {
            (Some(_), _) => "custom".to_string(),
            (None, Some(name)) => name.clone(),
            (None, None) => "GEM".to_string(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(GemError::config("runs must be >= 1"));
        }
        self.engine_config().validate()?;
        self.preset_spec()?;
        build_problem(&self.problem, self.dimension, self.penalty_lambda)?;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub run_index: usize,
    pub seed: u64,
    pub best_value: f64,
    pub best_point: Vec<f64>,
    pub iterations: usize,
    pub evaluations: usize,
    /// Best value after each iteration.
    pub history: Vec<f64>,
}

impl RunRecord {
    fn from_outcome(run_index: usize, seed: u64, outcome: RunOutcome) -> Self {
        Self {
            run_index,
            seed,
            best_value: outcome.best_value,
            best_point: outcome.best_point,
            iterations: outcome.iterations,
            evaluations: outcome.evaluations,
            history: outcome.history,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunFailure {
    pub run_index: usize,
    pub seed: u64,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryStats {
    pub count: usize,
    pub best: f64,
    pub worst: f64,
    pub mean: f64,
    /// Sample standard deviation (zero for a single run).
    pub sd: f64,
    pub successes: Option<usize>,
}

/// Statistics of the per-run best values.
pub fn summarize(records: &[RunRecord]) -> Result<SummaryStats> {
    summarize_values(&records.iter().map(|r| r.best_value).collect::<Vec<_>>())
}

pub fn summarize_values(values: &[f64]) -> Result<SummaryStats> {
    if values.is_empty() {
        return Err(GemError::config("cannot summarize an empty set of runs"));
    }
    let count = values.len();
    let best = values.iter().copied().fold(f64::INFINITY, f64::min);
    let worst = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mean = (values.iter().sum::<f64>() / count as f64).clamp(best, worst);
    let sd = if count > 1 {
        (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (count - 1) as f64).sqrt()
    } else {
        0.0
    };
    Ok(SummaryStats {
        count,
        best,
        worst,
        mean,
        sd,
        successes: None,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub records: Vec<RunRecord>,
    pub failures: Vec<RunFailure>,
    pub stats: SummaryStats,
}

fn run_one(
    problem: &NamedProblem,
    preset: &PresetSpec,
    engine: &EngineConfig,
    master_seed: u64,
    run_index: usize,
) -> std::result::Result<RunRecord, RunFailure> {
    let seed = derive_seed(master_seed, run_index as u64);
    let mut rng = RngStream::new(seed);
    run_gem(problem, preset, engine, &mut rng)
        .map(|outcome| RunRecord::from_outcome(run_index, seed, outcome))
        .map_err(|e| RunFailure {
            run_index,
            seed,
            message: e.to_string(),
        })
}

/// Execute `config.runs` independent runs and aggregate them.
///
/// Failed runs are reported in `failures` and left out of the statistics.
/// The experiment fails only when every run fails.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    config.validate()?;
    let problem = build_problem(&config.problem, config.dimension, config.penalty_lambda)?;
    let preset = config.preset_spec()?;
    let engine = config.engine_config();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| GemError::config(format!("cannot start worker pool: {e}")))?;
    let outcomes: Vec<_> = pool.install(|| {
        (0..config.runs)
            .into_par_iter()
            .map(|i| run_one(&problem, &preset, &engine, config.master_seed, i))
            .collect()
    });

    let mut records = Vec::new();
    let mut failures = Vec::new();
    for outcome in outcomes {
        match outcome {
            Ok(r) => records.push(r),
            Err(f) => failures.push(f),
        }
    }
    records.sort_by_key(|r| r.run_index);
    failures.sort_by_key(|f| f.run_index);
    if records.is_empty() {
        let first = failures.first().map(|f| f.message.clone()).unwrap_or_default();
        return Err(GemError::Run {
            iteration: 0,
            source: Box::new(GemError::Evaluation(format!("every run failed; first: {first}"))),
        });
    }

    let mut stats = summarize(&records)?;
    if let (Some(tol), Some(reference)) = (config.success_tolerance, problem.reference_value()) {
        stats.successes = Some(
            records
                .iter()
                .filter(|r| r.best_value <= reference + tol)
                .count(),
        );
    }
    Ok(ExperimentReport {
        config: config.clone(),
        records,
        failures,
        stats,
    })
}

/// Round to 10 significant digits.
pub fn round_sig10(x: f64) -> f64 {
    if x.is_finite() {
        format!("{x:.9e}").parse().unwrap_or(x)
    } else {
        x
    }
}

fn fmt_sig10(x: f64) -> String {
    format!("{x:.9e}")
}

pub const SUMMARY_HEADER: &str = "problem,preset,runs,n,t_max,best,worst,mean,sd,seed";

/// One CSV row matching [`SUMMARY_HEADER`].
pub fn summary_row(config: &ExperimentConfig, stats: &SummaryStats) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{}",
        config.problem,
        config.preset_label(),
        stats.count,
        config.n,
        config.t_max,
        fmt_sig10(stats.best),
        fmt_sig10(stats.worst),
        fmt_sig10(stats.mean),
        fmt_sig10(stats.sd),
        config.master_seed
    )
}

/// Contents of one per-run result file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunDocument {
    pub seed: u64,
    pub config: ExperimentConfig,
    pub run: RunRecord,
}

impl RunDocument {
    fn new(config: &ExperimentConfig, record: &RunRecord) -> Self {
        let mut run = record.clone();
        run.best_value = round_sig10(run.best_value);
        run.best_point.iter_mut().for_each(|v| *v = round_sig10(*v));
        run.history.iter_mut().for_each(|v| *v = round_sig10(*v));
        Self {
            seed: record.seed,
            config: config.clone(),
            run,
        }
    }
}

/// Paths written by [`export_results`].
#[derive(Debug, Clone, PartialEq)]
pub struct ExportedFiles {
    pub summary: PathBuf,
    pub runs: Vec<PathBuf>,
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| GemError::io(path, e))
}

/// Write `summary.csv` and one `run_NNN.json` per successful run into `dir`.
pub fn export_results(report: &ExperimentReport, dir: &Path) -> Result<ExportedFiles> {
    fs::create_dir_all(dir).map_err(|e| GemError::io(dir, e))?;
    let summary = dir.join("summary.csv");
    let mut csv = String::new();
    writeln!(csv, "{SUMMARY_HEADER}").unwrap();
    writeln!(csv, "{}", summary_row(&report.config, &report.stats)).unwrap();
    write_file(&summary, &csv)?;

    let mut runs = Vec::with_capacity(report.records.len());
    for record in &report.records {
        let path = dir.join(format!("run_{:03}.json", record.run_index));
        let doc = RunDocument::new(&report.config, record);
        let mut text = serde_json::to_string_pretty(&doc)?;
        text.push('\n');
        write_file(&path, &text)?;
        runs.push(path);
    }
    if !report.failures.is_empty() {
        let path = dir.join("failures.json");
        write_file(&path, &serde_json::to_string_pretty(&report.failures)?)?;
    }
    Ok(ExportedFiles { summary, runs })
}

pub fn read_run_document(path: &Path) -> Result<RunDocument> {
    let text = fs::read_to_string(path).map_err(|e| GemError::io(path, e))?;
    Ok(serde_json::from_str(&text)?)
}

pub const FUNCTION_SUITE: [&str; 10] = ["f1", "f2", "f3", "f4", "f5", "f6", "f7", "f8", "f9", "f10"];
pub const CASE_STUDIES: [&str; 5] = ["spring", "truss3bar", "beam", "pressure_vessel", "ode_vibration"];

/// One row of a reproduced results table.
#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub problem: String,
    pub stats: SummaryStats,
    pub failures: usize,
    pub reference: Option<f64>,
}

/// Summary of a full reproduction: function table, case-study table and the
/// ten-run pressure vessel listing.
#[derive(Debug, Clone, PartialEq)]
pub struct TablesReport {
    pub functions: Vec<TableRow>,
    pub case_studies: Vec<TableRow>,
    pub pressure_vessel_runs: Vec<RunRecord>,
}

fn table_csv(rows: &[TableRow], reference_label: &str) -> String {
    let mut out = format!("problem,runs,best,worst,mean,sd,{reference_label}\n");
    for row in rows {
        let reference = row.reference.map(fmt_sig10).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            row.problem,
            row.stats.count,
            fmt_sig10(row.stats.best),
            fmt_sig10(row.stats.worst),
            fmt_sig10(row.stats.mean),
            fmt_sig10(row.stats.sd),
            reference
        )
        .unwrap();
    }
    out
}

/// Run the full protocol (20 runs per problem with the standard setting) and
/// write `table_functions.csv`, `table_case_studies.csv`,
/// `table_pressure_vessel.csv`, `report.md` and per-problem run folders.
pub fn reproduce_tables(
    dir: &Path,
    master_seed: u64,
    workers: usize,
    runs: usize,
    t_max: usize,
) -> Result<TablesReport> {
    fs::create_dir_all(dir).map_err(|e| GemError::io(dir, e))?;
    let run_suite = |names: &[&str], subdir: &str| -> Result<Vec<(TableRow, ExperimentReport)>> {
        names
            .iter()
            .map(|name| {
                let mut config = ExperimentConfig::new(name);
                config.master_seed = master_seed;
                config.workers = workers;
                config.runs = runs;
                config.t_max = t_max;
                let report = run_experiment(&config)?;
                export_results(&report, &dir.join(subdir).join(name))?;
                let reference = build_problem(name, None, None)?.reference_value();
                Ok((
                    TableRow {
                        problem: name.to_string(),
                        stats: report.stats.clone(),
                        failures: report.failures.len(),
                        reference,
                    },
                    report,
                ))
            })
            .collect()
    };

    let functions = run_suite(&FUNCTION_SUITE, "functions")?;
    let cases = run_suite(&CASE_STUDIES, "case_studies")?;
    let function_rows: Vec<TableRow> = functions.into_iter().map(|(r, _)| r).collect();
    let mut pv_runs = Vec::new();
    let mut case_rows = Vec::new();
    for (row, report) in cases {
        if row.problem == "pressure_vessel" {
            pv_runs = report.records.iter().take(10).cloned().collect();
        }
        case_rows.push(row);
    }

    write_file(&dir.join("table_functions.csv"), &table_csv(&function_rows, "true_fmin"))?;
    write_file(&dir.join("table_case_studies.csv"), &table_csv(&case_rows, "best_so_far"))?;

    let mut pv = String::from("run,x1,x2,x3,x4,fmin,seed\n");
    for r in &pv_runs {
        let x: Vec<String> = r.best_point.iter().map(|v| fmt_sig10(*v)).collect();
        writeln!(pv, "{},{},{},{}", r.run_index + 1, x.join(","), fmt_sig10(r.best_value), r.seed).unwrap();
    }
    write_file(&dir.join("table_pressure_vessel.csv"), &pv)?;

    let mut md = String::new();
    writeln!(md, "# Reproduced result tables\n").unwrap();
    writeln!(
        md,
        "Standard setting: n = 10, t_max = {t_max}, a = 1, b = 0.7, c = 1, p = 0.7, q = r = 1, \
         theta = 0.97^t. {runs} runs per problem, master seed {master_seed}.\n"
    )
    .unwrap();
    writeln!(
        md,
        "The pressure vessel listing shows the first 10 of the {runs} runs; the case-study \
         table aggregates all {runs} runs (sources disagree on 10 versus 20 runs).\n"
    )
    .unwrap();
    for (title, rows) in [("Test functions", &function_rows), ("Case studies", &case_rows)] {
        writeln!(md, "## {title}\n").unwrap();
        writeln!(md, "| problem | best | worst | mean | reference | failed runs |").unwrap();
        writeln!(md, "|---|---|---|---|---|---|").unwrap();
        for row in rows.iter() {
            writeln!(
                md,
                "| {} | {:.4e} | {:.4e} | {:.4e} | {} | {} |",
                row.problem,
                row.stats.best,
                row.stats.worst,
                row.stats.mean,
                row.reference.map(|v| format!("{v:.4e}")).unwrap_or_default(),
                row.failures
            )
            .unwrap();
        }
        writeln!(md).unwrap();
    }
    write_file(&dir.join("report.md"), &md)?;

    Ok(TablesReport {
        functions: function_rows,
        case_studies: case_rows,
        pressure_vessel_runs: pv_runs,
    })
}
