//! split -> normalize -> train -> evaluate, shared by `train` and `compare`.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use neurofuzz::dataset::{gen_synthetic, load_csv, split_70_30};
use neurofuzz::hybrid::{solve_consequents, train_hybrid, write_epoch_log, EpochLog};
use neurofuzz::optim::{build_bounds, ga_optimize_seeded, pso_optimize_seeded, AnfisFitness};
use neurofuzz::{
    Anfis, Dataset, GaConfig, MetricReport, ModelFile, NormalizationRecord, PsoConfig, RunTrace, Split,
};
use serde::Serialize;

use crate::config::{DataSource, RunConfig, Trainer};
use crate::error::{CliError, Context, ErrorKind};

pub struct Prepared {
    pub raw: Dataset,
    pub split: Split,
    pub record: NormalizationRecord,
    pub train: Dataset,
    pub test: Dataset,
    /// Grid-initialized model over the normalized training ranges.
    pub template: Anfis,
}

pub fn load_data(source: &DataSource) -> Result<Dataset, CliError> {
    match source {
        DataSource::Csv(path) => load_csv(path).map_err(|e| {
            CliError::new(crate::error::classify(&e), format!("load data {}", path.display()), e.to_string())
        }),
        DataSource::Synthetic(s) => gen_synthetic(s.kind, s.n, s.noise, s.seed).stage("generate synthetic data"),
    }
}

pub fn prepare(config: &RunConfig) -> Result<Prepared, CliError> {
    let raw = load_data(&config.data)?;
    let split = split_70_30(raw.len(), config.seed).stage("split")?;
    let record = NormalizationRecord::fit(&raw, &split).stage("normalize")?;
    let norm = record.normalize(&raw).stage("normalize")?;
    let train = norm.subset(&split.train);
    let test = norm.subset(&split.test);
    let ranges = train.input_ranges().stage("initialize model")?;
    let template = Anfis::init_grid(train.input_names(), &ranges, config.mf_count).stage("initialize model")?;
    Ok(Prepared {
        raw,
        split,
        record,
        train,
        test,
        template,
    })
}

pub enum History {
    Epochs { log: Vec<EpochLog>, best_epoch: usize },
    Search(RunTrace<f64>),
}

pub struct Trained {
    pub trainer: Trainer,
    pub model: Anfis,
    pub history: History,
}

pub fn structure(config: &RunConfig, trainer: Trainer) -> String {
    match trainer {
        Trainer::Anfis => format!(
            "MF type: Gaussian Number of MFs: {} Output: linear Optimizer type: hybrid",
            config.mf_count
        ),
        Trainer::AnfisGa => format!(
            "Max generation={} Population size={}",
            config.ga.max_generations, config.ga.population_size
        ),
        Trainer::AnfisPso => format!(
            "Max iteration={} Swarm size={}",
            config.pso.max_iterations, config.pso.swarm_size
        ),
    }
}

pub fn train(config: &RunConfig, data: &Prepared, trainer: Trainer) -> Result<Trained, CliError> {
    let stage = format!("train {trainer}");
    let train = &data.train;
    match trainer {
        Trainer::Anfis => {
            let out = train_hybrid(&data.template, train, &config.hybrid).stage(&stage)?;
            Ok(Trained {
                trainer,
                model: out.model,
                history: History::Epochs {
                    log: out.log,
                    best_epoch: out.best_epoch,
                },
            })
        }
        Trainer::AnfisGa | Trainer::AnfisPso => {
            let lambda = config.hybrid.ridge_lambda;
            let fitness = AnfisFitness::new(&data.template, train, config.mode, lambda).stage(&stage)?;
            let bounds = build_bounds(&data.template, train, config.mode).stage(&stage)?;
            // Start one individual at the grid initialization (with its LSE
            // consequents, which only matter in full-vector mode).
            let mut start = data.template.clone();
            solve_consequents(&mut start, train, lambda).stage(&stage)?;
            let seeds = vec![start.flatten_params(config.mode.scope())];
            let seed = trainer.derived_seed(config.seed);
            let trace = if trainer == Trainer::AnfisGa {
                let ga = GaConfig { seed, ..config.ga.clone() };
                ga_optimize_seeded(&ga, &bounds, &fitness, &seeds).stage(&stage)?
            } else {
                let pso = PsoConfig { seed, ..config.pso.clone() };
                pso_optimize_seeded(&pso, &bounds, &fitness, &seeds).stage(&stage)?
            };
            if !trace.best_fitness.is_finite() {
                return Err(CliError::new(
                    ErrorKind::Numerical,
                    stage,
                    "no candidate produced a finite training error",
                ));
            }
            let model = fitness.realize(&trace.best).stage(&stage)?;
            Ok(Trained {
                trainer,
                model,
                history: History::Search(trace),
            })
        }
    }
}

/// Per-sample results on one split. Physical values are in the data's own
/// units; `*_norm` are in the normalized space the model works in.
pub struct Evaluation {
    pub split: &'static str,
    /// Row numbers in the original dataset (0-based, data rows only).
    pub rows: Vec<usize>,
    pub actual: Vec<f64>,
    pub predicted: Vec<f64>,
    pub actual_norm: Vec<f64>,
    pub predicted_norm: Vec<f64>,
    pub report: MetricReport,
}

impl Evaluation {
    /// Signed `predicted - actual` in physical units.
    pub fn deviation(&self) -> Vec<f64> {
        self.predicted.iter().zip(&self.actual).map(|(p, a)| p - a).collect()
    }
}

pub fn evaluate(data: &Prepared, model: &Anfis, split: &'static str) -> Result<Evaluation, CliError> {
    let stage = format!("evaluate {split}");
    let (rows, norm) = match split {
        "train" => (&data.split.train, &data.train),
        _ => (&data.split.test, &data.test),
    };
    let predicted_norm = norm
        .inputs()
        .iter()
        .map(|x| model.predict(x))
        .collect::<neurofuzz::Result<Vec<f64>>>()
        .stage(&stage)?;
    let predicted = data.record.denormalize_targets(&predicted_norm);
    let actual: Vec<f64> = rows.iter().map(|&i| data.raw.targets()[i]).collect();
    let actual_norm = norm.targets().to_vec();
    let report = MetricReport::compute(&actual_norm, &predicted_norm, &actual, &predicted).stage(&stage)?;
    Ok(Evaluation {
        split,
        rows: rows.clone(),
        actual,
        predicted,
        actual_norm,
        predicted_norm,
        report,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrainReport {
    pub trainer: Trainer,
    pub method: String,
    pub structure: String,
    pub train: MetricReport,
    pub test: MetricReport,
    /// Hybrid trainer: epoch with the lowest training RMSE.
    pub best_epoch: Option<usize>,
    /// Population trainers: best training RMSE found and evaluations spent.
    pub best_fitness: Option<f64>,
    pub evaluations: Option<usize>,
}

/// Trains one model, evaluates it on both splits and writes its artifacts
/// under `<out_dir>/<trainer>/`.
pub fn run_trainer(
    config: &RunConfig,
    data: &Prepared,
    trainer: Trainer,
) -> Result<(TrainReport, [Evaluation; 2]), CliError> {
    let started = Instant::now();
    let trained = train(config, data, trainer)?;
    let train_eval = evaluate(data, &trained.model, "train")?;
    let test_eval = evaluate(data, &trained.model, "test")?;
    let (best_epoch, best_fitness, evaluations) = match &trained.history {
        History::Epochs { best_epoch, .. } => (Some(*best_epoch), None, None),
        History::Search(t) => (None, Some(t.best_fitness), Some(t.evaluations)),
    };
    let report = TrainReport {
        trainer,
        method: trainer.method().to_string(),
        structure: structure(config, trainer),
        train: train_eval.report.clone(),
        test: test_eval.report.clone(),
        best_epoch,
        best_fitness,
        evaluations,
    };
    write_trainer_artifacts(config, data, &trained, &report, &[&train_eval, &test_eval])?;
    eprintln!(
        "{}: train RMSE {:.4e}, test RMSE {:.4e} ({:.1} s)",
        trainer,
        report.train.rmse,
        report.test.rmse,
        started.elapsed().as_secs_f64()
    );
    Ok((report, [train_eval, test_eval]))
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::new(ErrorKind::Io, "write output", format!("{}: {e}", path.display())))
}

pub fn create_dir(path: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(path)
        .map_err(|e| CliError::new(ErrorKind::Io, "create output directory", format!("{}: {e}", path.display())))
}

fn write_trainer_artifacts(
    config: &RunConfig,
    data: &Prepared,
    trained: &Trained,
    report: &TrainReport,
    evals: &[&Evaluation],
) -> Result<(), CliError> {
    let dir = config.out_dir.join(trained.trainer.key());
    create_dir(&dir)?;
    ModelFile::from_model(&trained.model, Some(data.record.clone()))
        .save(dir.join("model.json"))
        .stage("write model")?;

    let mut metrics = format!("split,{}\n", MetricReport::CSV_HEADER);
    for e in evals {
        let _ = writeln!(metrics, "{},{}", e.split, e.report.csv_row());
    }
    write_file(&dir.join("metrics.csv"), &metrics)?;

    let mut preds = String::from("split,row,actual,predicted,deviation,actual_norm,predicted_norm\n");
    for e in evals {
        for (k, d) in e.deviation().iter().enumerate() {
            let _ = writeln!(
                preds,
                "{},{},{:?},{:?},{:?},{:?},{:?}",
                e.split, e.rows[k], e.actual[k], e.predicted[k], d, e.actual_norm[k], e.predicted_norm[k]
            );
        }
    }
    write_file(&dir.join("predictions.csv"), &preds)?;

    match &trained.history {
        History::Epochs { log, .. } => write_epoch_log(dir.join("epochs.csv"), log).stage("write epoch log")?,
        History::Search(trace) => trace.write_csv(dir.join("trace.csv")).stage("write search trace")?,
    }
    let mut json = serde_json::to_string_pretty(report).expect("report is serializable");
    json.push('\n');
    write_file(&dir.join("report.json"), &json)
}
