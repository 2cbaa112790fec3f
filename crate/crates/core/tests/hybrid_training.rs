mod common;

use common::{generated_data, random_model, rng};
use neurofuzz::dataset::gen_synthetic;
use neurofuzz::hybrid::{solve_consequents, train_hybrid, write_epoch_log};
use neurofuzz::{AnfisModel, Dataset, HybridConfig, NormalizationRecord, SynthKind};

fn sinc_setup() -> (AnfisModel<f64>, Dataset) {
    let raw: Dataset = gen_synthetic(SynthKind::Sinc2d, 121, 0.0, 0).unwrap();
    // Benchmark surface, no held-out rows: fitting scaling on everything is fine here.
    let record = NormalizationRecord::fit_all_rows_leaky(&raw).unwrap();
    let data = record.normalize(&raw).unwrap();
    let model = AnfisModel::init_grid(data.input_names(), &data.input_ranges().unwrap(), 3).unwrap();
    (model, data)
}

/// Premise step size that works for the 121-point sinc grid; the library
/// default (0.01) is deliberately conservative and barely moves premises
/// within 100 epochs on this surface.
fn sinc_config() -> HybridConfig {
    HybridConfig {
        learning_rate: 1.6,
        ..HybridConfig::default()
    }
}

#[test]
fn sinc_surface_reaches_target_rmse() {
    let (model, data) = sinc_setup();
    let out = train_hybrid(&model, &data, &sinc_config()).unwrap();
    assert!(out.log.len() <= 100);
    assert!(out.best_rmse < 0.05, "best train RMSE {}", out.best_rmse);
}

#[test]
fn zero_learning_rate_is_one_lse_solve() {
    let (model, data) = sinc_setup();
    let config = HybridConfig {
        epochs: 1,
        learning_rate: 0.0,
        ..HybridConfig::default()
    };
    let out = train_hybrid(&model, &data, &config).unwrap();
    let mut direct = model.clone();
    let fit = solve_consequents(&mut direct, &data, config.ridge_lambda).unwrap();
    assert_eq!(out.model, direct);
    assert_eq!(out.best_rmse, (fit.sse / data.len() as f64).sqrt());
}

#[test]
fn best_epoch_never_worse_than_first() {
    let mut r = rng(8);
    for trial in 0..5 {
        let truth = random_model(&mut r, 2, 2);
        let data = generated_data(&mut r, &truth, 60);
        let start = random_model(&mut r, 2, 2);
        let config = HybridConfig {
            epochs: 30,
            learning_rate: 0.05,
            ..HybridConfig::default()
        };
        let out = train_hybrid(&start, &data, &config).unwrap();
        assert!(out.best_rmse <= out.log[0].train_rmse, "trial {trial}");
        let min = out.log.iter().map(|e| e.train_rmse).fold(f64::INFINITY, f64::min);
        assert_eq!(out.best_rmse, min);
        assert_eq!(out.log[out.best_epoch - 1].train_rmse, out.best_rmse);
    }
}

#[test]
fn early_stop_honours_patience() {
    let (model, data) = sinc_setup();
    // A huge step overshoots, so the loss stops improving quickly.
    let config = HybridConfig {
        epochs: 100,
        learning_rate: 50.0,
        early_stop_patience: 3,
        ..HybridConfig::default()
    };
    let out = train_hybrid(&model, &data, &config).unwrap();
    if out.log.len() < 100 {
        assert_eq!(out.log.len(), out.best_epoch + 3);
    }
}

#[test]
fn truncated_run_is_a_prefix() {
    let (model, data) = sinc_setup();
    let long = train_hybrid(&model, &data, &HybridConfig { epochs: 20, early_stop_patience: 0, ..sinc_config() }).unwrap();
    let short = train_hybrid(&model, &data, &HybridConfig { epochs: 7, early_stop_patience: 0, ..sinc_config() }).unwrap();
    assert_eq!(short.log.len(), 7);
    for (a, b) in short.log.iter().zip(&long.log) {
        assert_eq!(a.train_rmse, b.train_rmse);
    }
}

#[test]
fn training_is_deterministic() {
    let (model, data) = sinc_setup();
    let config = HybridConfig { epochs: 15, ..sinc_config() };
    let a = train_hybrid(&model, &data, &config).unwrap();
    let b = train_hybrid(&model, &data, &config).unwrap();
    assert_eq!(a.model, b.model);
    assert_eq!(a.log, b.log);
}

#[test]
fn epoch_log_csv() {
    let (model, data) = sinc_setup();
    let out = train_hybrid(&model, &data, &HybridConfig { epochs: 3, ..sinc_config() }).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("epochs.csv");
    write_epoch_log(&path, &out.log).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "epoch,train_rmse,clamp_count");
    assert_eq!(lines.len(), out.log.len() + 1);
    let cells: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(cells[0], "1");
    assert_eq!(cells[1].parse::<f64>().unwrap(), out.log[0].train_rmse);
}

#[test]
fn invalid_config_rejected() {
    let (model, data) = sinc_setup();
    for bad in [
        HybridConfig { epochs: 0, ..HybridConfig::default() },
        HybridConfig { learning_rate: -1.0, ..HybridConfig::default() },
        HybridConfig { ridge_lambda: f64::NAN, ..HybridConfig::default() },
    ] {
        assert!(train_hybrid(&model, &data, &bad).is_err());
    }
}
