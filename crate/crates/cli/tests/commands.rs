use std::path::{Path, PathBuf};
use std::process::Command;

use neurofuzz::{Anfis, GaConfig, HybridConfig, ModelFile, PsoConfig, SynthKind};
use neurofuzz_cli::{cmd_compare, cmd_gen_synth, cmd_predict, cmd_train, DataSource, ErrorKind, RunConfig, Trainer};

fn read(p: impl AsRef<Path>) -> String {
    std::fs::read_to_string(p).unwrap()
}

/// Small, fast configuration on a CSV written by `gen-synth`.
fn quick_config(dir: &Path, kind: SynthKind, n: usize) -> RunConfig {
    let csv = dir.join("data.csv");
    cmd_gen_synth(kind, n, 0.01, 7, &csv).unwrap();
    RunConfig {
        data: DataSource::Csv(csv),
        seed: 3,
        mf_count: 2,
        trainers: vec![Trainer::Anfis],
        hybrid: HybridConfig { epochs: 5, ..HybridConfig::default() },
        ga: GaConfig { population_size: 8, max_generations: 3, ..GaConfig::default() },
        pso: PsoConfig { swarm_size: 8, max_iterations: 3, ..PsoConfig::default() },
        out_dir: dir.join("out"),
        ..RunConfig::default()
    }
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn gen_synth_is_reproducible_and_documented() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    cmd_gen_synth(SynthKind::HvacLike, 80, 0.01, 42, &a).unwrap();
    cmd_gen_synth(SynthKind::HvacLike, 80, 0.01, 42, &b).unwrap();
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let text = read(&a);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "# neurofuzz-synth v1 kind=hvac-like seed=42 n=80 noise=0.01");
    assert_eq!(
        lines.next().unwrap(),
        "ambient_temperature_c,air_flow_kg_s,water_flow_kg_s,relative_humidity_pct,exergy_destruction_kj_s"
    );
    let data: neurofuzz::Dataset = neurofuzz::dataset::load_csv(&a).unwrap();
    assert_eq!(data.len(), 80);
}

#[test]
fn train_writes_round_trippable_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let config = quick_config(dir.path(), SynthKind::Sinc2d, 121);
    let reports = cmd_train(&config).unwrap();
    assert_eq!(reports.len(), 1);
    let sub = config.out_dir.join("anfis");
    for f in ["model.json", "metrics.csv", "predictions.csv", "epochs.csv", "report.json"] {
        assert!(sub.join(f).exists(), "{f}");
    }
    let file = ModelFile::load(sub.join("model.json")).unwrap();
    assert!(file.normalization.is_some());
    let model: Anfis = file.to_model().unwrap();
    assert_eq!(ModelFile::from_model(&model, file.normalization.clone()), file);
    assert!(config.out_dir.join("config.json").exists());
}

#[test]
fn runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let mut config = quick_config(dir.path(), SynthKind::HvacLike, 90);
    config.trainers = Trainer::ALL.to_vec();
    cmd_compare(&config).unwrap();
    let first = config.out_dir.clone();
    config.out_dir = dir.path().join("again");
    cmd_compare(&config).unwrap();
    for f in [
        "config.json",
        "comparison.txt",
        "comparison.csv",
        "deviation.csv",
        "anfis/metrics.csv",
        "anfis/model.json",
        "anfis-ga/trace.csv",
        "anfis-pso/predictions.csv",
    ] {
        assert_eq!(std::fs::read(first.join(f)).unwrap(), std::fs::read(config.out_dir.join(f)).unwrap(), "{f}");
    }
}

#[test]
fn metrics_csv_agrees_with_prediction_csv() {
    let dir = tempfile::tempdir().unwrap();
    let mut config = quick_config(dir.path(), SynthKind::HvacLike, 90);
    config.trainers = vec![Trainer::Anfis, Trainer::AnfisPso];
    cmd_train(&config).unwrap();
    for t in ["anfis", "anfis-pso"] {
        let sub = config.out_dir.join(t);
        let preds = csv_rows(&read(sub.join("predictions.csv")));
        let metrics = csv_rows(&read(sub.join("metrics.csv")));
        for m in &metrics {
            let (a, p): (Vec<f64>, Vec<f64>) = preds
                .iter()
                .filter(|r| r[0] == m[0])
                .map(|r| (r[5].parse::<f64>().unwrap(), r[6].parse::<f64>().unwrap()))
                .unzip();
            let rmse = neurofuzz::metrics::rmse(&a, &p).unwrap();
            let stored: f64 = m[2].parse().unwrap();
            assert!((rmse - stored).abs() <= 1e-12, "{t} {}: {rmse} vs {stored}", m[0]);
            assert_eq!(m[1].parse::<usize>().unwrap(), a.len());
        }
    }
}

#[test]
fn compare_table_matches_single_trainer_runs() {
    let dir = tempfile::tempdir().unwrap();
    let mut config = quick_config(dir.path(), SynthKind::HvacLike, 90);
    config.trainers = Trainer::ALL.to_vec();
    let cmp = cmd_compare(&config).unwrap();

    let tables: Vec<&str> = cmp.text.split("\n\n").collect();
    assert_eq!(tables.len(), 2);
    for (table, title) in tables.iter().zip(["TRAINING RESULTS", "TESTING RESULTS"]) {
        let lines: Vec<&str> = table.lines().collect();
        assert_eq!(lines[0], title);
        let header: Vec<&str> = lines[1].split(" | ").map(str::trim).collect();
        assert_eq!(header, ["Method", "Structure", "RMSE", "MAE", "Deviation"]);
        assert_eq!(lines.len(), 6, "title, header, rule and 3 rows");
        let methods: Vec<&str> = lines[3..].iter().map(|l| l.split(" | ").next().unwrap().trim()).collect();
        assert_eq!(methods, ["ANFIS", "ANFIS-GA", "ANFIS-PSO"]);
        assert!(lines[5].contains("Max iteration=3 Swarm size=8"));
        assert!(lines[4].contains("Max generation=3 Population size=8"));
        assert!(lines[3].contains("MF type: Gaussian Number of MFs: 2 Output: linear"));
    }

    for t in Trainer::ALL {
        let single_dir = dir.path().join(format!("single-{t}"));
        let single = RunConfig {
            trainers: vec![t],
            out_dir: single_dir.clone(),
            ..config.clone()
        };
        let report = cmd_train(&single).unwrap().remove(0);
        let row = cmp.reports.iter().find(|r| r.trainer == t).unwrap();
        assert_eq!(&report, row);
        for f in ["metrics.csv", "predictions.csv", "model.json", "report.json"] {
            assert_eq!(read(single_dir.join(t.key()).join(f)), read(config.out_dir.join(t.key()).join(f)), "{t} {f}");
        }
    }
}

fn prediction_column(path: &Path, split: &str) -> Vec<(usize, String)> {
    csv_rows(&read(path))
        .into_iter()
        .filter(|r| r[0] == split)
        .map(|r| (r[1].parse().unwrap(), r[3].clone()))
        .collect()
}

#[test]
fn predict_reproduces_training_predictions() {
    let dir = tempfile::tempdir().unwrap();
    let config = quick_config(dir.path(), SynthKind::HvacLike, 90);
    cmd_train(&config).unwrap();
    let sub = config.out_dir.join("anfis");
    let out = dir.path().join("pred.csv");
    let DataSource::Csv(data) = &config.data else { unreachable!() };
    let n = cmd_predict(&sub.join("model.json"), data, &out).unwrap();
    assert_eq!(n, 90);
    let predicted = csv_rows(&read(&out));
    assert_eq!(read(&out).lines().next().unwrap(), "row,predicted,actual,deviation");
    for split in ["train", "test"] {
        for (row, value) in prediction_column(&sub.join("predictions.csv"), split) {
            assert_eq!(predicted[row][1], value, "row {row}");
        }
    }
}

#[test]
fn predict_inputs_only_and_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let config = quick_config(dir.path(), SynthKind::Sinc2d, 64);
    cmd_train(&config).unwrap();
    let model = config.out_dir.join("anfis/model.json");

    let empty = dir.path().join("empty.csv");
    std::fs::write(&empty, "x,y\n").unwrap();
    let out = dir.path().join("empty-out.csv");
    assert_eq!(cmd_predict(&model, &empty, &out).unwrap(), 0);
    assert_eq!(read(&out), "row,predicted\n");

    let inputs = dir.path().join("inputs.csv");
    std::fs::write(&inputs, "x,y\n0,0\n1.5,-2\n").unwrap();
    assert_eq!(cmd_predict(&model, &inputs, &out).unwrap(), 2);
    assert_eq!(read(&out).lines().count(), 3);

    let wrong = dir.path().join("wrong.csv");
    std::fs::write(&wrong, "x,y,z,extra\n1,2,3,4\n").unwrap();
    let err = cmd_predict(&model, &wrong, &out).unwrap_err();
    assert_eq!(err.kind, ErrorKind::Data);
    assert!(err.message.contains("expected columns [x, y]"), "{}", err.message);
}

#[test]
fn config_json_and_validation() {
    let config = RunConfig::from_json(r#"{"seed": 9, "trainers": ["anfis-pso"], "pso": {"swarm_size": 5}}"#).unwrap();
    assert_eq!(config.seed, 9);
    assert_eq!(config.pso.swarm_size, 5);
    assert_eq!(config.pso.max_iterations, 204);
    assert_eq!(config.mf_count, 3);
    assert_eq!(RunConfig::from_json(&config.to_json()).unwrap(), config);

    let synth = RunConfig::from_json(r#"{"data": {"synthetic": {"kind": "sinc2d", "n": 121}}}"#).unwrap();
    assert!(matches!(synth.data, DataSource::Synthetic(ref s) if s.kind == SynthKind::Sinc2d && s.n == 121));

    assert_eq!(RunConfig::from_json(r#"{"sed": 1}"#).unwrap_err().kind, ErrorKind::Config);
    let bad = [
        RunConfig { trainers: vec![], ..RunConfig::default() },
        RunConfig { mf_count: 1, ..RunConfig::default() },
        RunConfig { trainers: vec![Trainer::Anfis, Trainer::Anfis], ..RunConfig::default() },
        RunConfig { ga: GaConfig { population_size: 2, ..GaConfig::default() }, ..RunConfig::default() },
    ];
    for c in bad {
        assert_eq!(c.validate().unwrap_err().kind, ErrorKind::Config);
    }
}

#[test]
fn trainer_seeds_do_not_depend_on_selection() {
    let a = Trainer::AnfisGa.derived_seed(42);
    assert_ne!(a, Trainer::AnfisPso.derived_seed(42));
    assert_ne!(a, Trainer::AnfisGa.derived_seed(43));
    assert_eq!(a, Trainer::AnfisGa.derived_seed(42));
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_neurofuzz"))
}

#[test]
fn binary_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("d.csv");
    let status = bin()
        .args(["gen-synth", "--kind", "sinc2d", "--n", "64", "--seed", "1", "--out"])
        .arg(&data)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));

    let out: PathBuf = dir.path().join("o");
    let ok = bin()
        .args(["train", "--trainer", "anfis", "--mf-count", "2", "--data"])
        .arg(&data)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stderr));
    assert!(String::from_utf8_lossy(&ok.stdout).starts_with("ANFIS: train RMSE"));

    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, r#"{"mf_count": 1}"#).unwrap();
    let code = bin().args(["train", "--config"]).arg(&cfg).output().unwrap().status.code();
    assert_eq!(code, Some(2));

    let garbage = dir.path().join("garbage.csv");
    std::fs::write(&garbage, "a,b\n1,2\nx,3\n").unwrap();
    let run = bin().args(["train", "--data"]).arg(&garbage).arg("--out").arg(&out).output().unwrap();
    assert_eq!(run.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&run.stderr);
    assert!(stderr.contains("line 3") && stderr.contains("column 'a'"), "{stderr}");

    let code = bin().args(["train", "--trainer", "nope"]).output().unwrap().status.code();
    assert_eq!(code, Some(2));
    let code = bin()
        .args(["predict", "--model", "/nonexistent/model.json", "--input"])
        .arg(&data)
        .args(["--out", "/nonexistent/p.csv"])
        .output()
        .unwrap()
        .status
        .code();
    assert_eq!(code, Some(1));
}
