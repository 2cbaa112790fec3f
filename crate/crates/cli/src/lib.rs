//! Experiment runner for the `neurofuzz` trainers.
//!
//! Every command is a plain function so it can be driven from tests as well
//! as from the `neurofuzz` binary. Output bytes depend only on the
//! [`RunConfig`]; timings go to stderr.
//!
//! Exit codes: 0 success, 1 I/O or other runtime failure, 2 invalid
//! configuration or flags, 3 data / model file problems, 4 numerical failure
//! (degenerate inputs, singular systems, non-finite losses).

pub mod config;
pub mod error;
pub mod pipeline;
pub mod predict;
pub mod report;

use std::fmt::Write as _;
use std::path::Path;

use neurofuzz::dataset::{gen_synthetic, save_csv};
use neurofuzz::{Dataset, SynthKind};

pub use config::{DataSource, Overrides, RunConfig, SynthSpec, Trainer};
pub use error::{CliError, ErrorKind};
pub use pipeline::TrainReport;
pub use predict::cmd_predict;

use error::Context;
use pipeline::{create_dir, write_file, Evaluation};

/// Environment variable capping the number of fitness-evaluation workers.
pub const THREADS_ENV: &str = "NEUROFUZZ_THREADS";

/// Sizes the global rayon pool from `NEUROFUZZ_THREADS` when it is set.
pub fn init_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::config("configure threads", format!("{THREADS_ENV} must be a positive integer, got '{value}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::new(ErrorKind::Io, "configure threads", e.to_string()))
}

pub fn cmd_gen_synth(kind: SynthKind, n: usize, noise: f64, seed: u64, path: &Path) -> Result<(), CliError> {
    if !(noise.is_finite() && noise >= 0.0) {
        return Err(CliError::config("gen-synth", format!("noise must be finite and >= 0, got {noise}")));
    }
    let data: Dataset = gen_synthetic(kind, n, noise, seed).stage("gen-synth")?;
    save_csv(&data, path, Some(&kind.header_comment(n, noise, seed))).stage("gen-synth")
}

fn start_run(config: &RunConfig) -> Result<pipeline::Prepared, CliError> {
    config.validate()?;
    let data = pipeline::prepare(config)?;
    create_dir(&config.out_dir)?;
    // Record the resolved settings; the output location itself is left out so
    // reruns into different directories produce identical bytes.
    let mut stored = config.clone();
    stored.out_dir = ".".into();
    write_file(&config.out_dir.join("config.json"), &(stored.to_json() + "\n"))?;
    Ok(data)
}

/// Trains each selected trainer and writes its artifacts to
/// `<out_dir>/<trainer>/`: `model.json`, `metrics.csv`, `predictions.csv`,
/// `report.json` and `epochs.csv` (hybrid) or `trace.csv` (GA / PSO).
pub fn cmd_train(config: &RunConfig) -> Result<Vec<TrainReport>, CliError> {
    let data = start_run(config)?;
    config
        .trainers
        .iter()
        .map(|&t| pipeline::run_trainer(config, &data, t).map(|(r, _)| r))
        .collect()
}

pub struct Comparison {
    pub reports: Vec<TrainReport>,
    /// Both tables as written to `comparison.txt`.
    pub text: String,
}

/// Runs [`cmd_train`]'s pipeline for every selected trainer and adds
/// `comparison.txt` (train and test tables), `comparison.csv` and
/// `deviation.csv` (per-sample signed deviation, one column per model).
pub fn cmd_compare(config: &RunConfig) -> Result<Comparison, CliError> {
    let data = start_run(config)?;
    let mut reports = Vec::new();
    let mut evals: Vec<[Evaluation; 2]> = Vec::new();
    for &t in &config.trainers {
        let (r, e) = pipeline::run_trainer(config, &data, t)?;
        reports.push(r);
        evals.push(e);
    }
    let text = format!(
        "{}\n{}",
        report::table("TRAINING RESULTS", &reports, false),
        report::table("TESTING RESULTS", &reports, true)
    );
    write_file(&config.out_dir.join("comparison.txt"), &text)?;
    write_file(&config.out_dir.join("comparison.csv"), &report::table_csv(&reports))?;

    let mut dev = String::from("split,row,actual");
    for r in &reports {
        dev.push(',');
        dev.push_str(&r.method);
    }
    dev.push('\n');
    for s in 0..2 {
        let columns: Vec<Vec<f64>> = evals.iter().map(|e| e[s].deviation()).collect();
        let first = &evals[0][s];
        for k in 0..first.rows.len() {
            let _ = write!(dev, "{},{},{:?}", first.split, first.rows[k], first.actual[k]);
            for c in &columns {
                let _ = write!(dev, ",{:?}", c[k]);
            }
            dev.push('\n');
        }
    }
    write_file(&config.out_dir.join("deviation.csv"), &dev)?;
    Ok(Comparison { reports, text })
}
