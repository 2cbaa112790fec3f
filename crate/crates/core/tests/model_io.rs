mod common;

use common::{random_model, random_point, rng};
use neurofuzz::dataset::{gen_synthetic, load_csv, save_csv, split_70_30};
use neurofuzz::{AnfisModel, Dataset, ModelFile, NormalizationRecord, ParamScope, SynthKind};
use proptest::prelude::*;

fn bits(v: &[f64]) -> Vec<u64> {
    v.iter().map(|x| x.to_bits()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn json_round_trip_is_bit_exact(seed in any::<u64>(), inputs in 1usize..4, mfs in 1usize..4) {
        let mut r = rng(seed);
        let model = random_model(&mut r, inputs, mfs);
        let text = ModelFile::from_model(&model, None).to_json();
        let back: AnfisModel<f64> = ModelFile::from_json(&text).unwrap().to_model().unwrap();
        prop_assert_eq!(bits(&back.flatten_params(ParamScope::Full)), bits(&model.flatten_params(ParamScope::Full)));
        let x = random_point(&mut r, inputs);
        prop_assert_eq!(back.predict(&x).unwrap().to_bits(), model.predict(&x).unwrap().to_bits());
    }

    #[test]
    fn awkward_values_survive(c in any::<f64>().prop_filter("finite", |v| v.is_finite()), s in 1e-4f64..1e300) {
        let mut r = rng(1);
        let mut model = random_model(&mut r, 1, 1);
        let mut v = model.flatten_params(ParamScope::Full);
        v[0] = c;
        v[1] = s;
        v[2] = c;
        model.set_params(&v, ParamScope::Full).unwrap();
        let back: AnfisModel<f64> = ModelFile::from_json(&ModelFile::from_model(&model, None).to_json())
            .unwrap()
            .to_model()
            .unwrap();
        prop_assert_eq!(bits(&back.flatten_params(ParamScope::Full)), bits(&v));
    }
}

#[test]
fn normalization_record_travels_with_the_model() {
    let raw: Dataset = gen_synthetic(SynthKind::HvacLike, 60, 0.01, 3).unwrap();
    let split = split_70_30(raw.len(), 3).unwrap();
    let record = NormalizationRecord::fit(&raw, &split).unwrap();
    let model = AnfisModel::init_grid(raw.input_names(), &[(0.0, 1.0); 4], 2).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("model.json");
    ModelFile::from_model(&model, Some(record.clone())).save(&path).unwrap();
    let file = ModelFile::load(&path).unwrap();
    assert_eq!(file.normalization.as_ref(), Some(&record));
    assert_eq!(file.to_model::<f64>().unwrap(), model);
    // Saving the loaded file again reproduces the same bytes.
    let again = dir.path().join("again.json");
    file.save(&again).unwrap();
    assert_eq!(std::fs::read(&path).unwrap(), std::fs::read(&again).unwrap());
}

#[test]
fn corrupted_files_are_rejected() {
    let mut r = rng(2);
    let model = random_model(&mut r, 2, 2);
    let good = ModelFile::from_model(&model, None);
    assert!(ModelFile::from_json("{").is_err());
    let text = good.to_json().replacen("\"format\"", "\"extra\": 1,\n  \"format\"", 1);
    assert!(ModelFile::from_json(&text).is_err());
    let mut bad = good.clone();
    bad.rules.pop();
    assert!(bad.to_model::<f64>().is_err());
    let mut bad = good.clone();
    bad.inputs[0].sigmas[0] = -1.0;
    assert!(bad.to_model::<f64>().is_err());
    let mut bad = good.clone();
    bad.rules[1].premise = vec![0, 0];
    assert!(bad.to_model::<f64>().is_err());
    let mut bad = good;
    bad.rules[0].consequent.pop();
    assert!(bad.to_model::<f64>().is_err());
}

#[test]
fn synthetic_csv_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (kind, n) in [(SynthKind::HvacLike, 120), (SynthKind::Sinc2d, 121), (SynthKind::Sinc2d, 77)] {
        let data: Dataset = gen_synthetic(kind, n, 0.05, 11).unwrap();
        assert_eq!(data.len(), n);
        let path = dir.path().join(format!("{kind}-{n}.csv"));
        save_csv(&data, &path, Some(&kind.header_comment(n, 0.05, 11))).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("# neurofuzz-synth v1 "));
        let back: Dataset = load_csv(&path).unwrap();
        assert_eq!(back.input_names(), data.input_names());
        assert_eq!(back.target_name(), data.target_name());
        assert_eq!(back.inputs(), data.inputs());
        assert_eq!(back.targets(), data.targets());
        // Same seed, same bytes.
        let again = dir.path().join("again.csv");
        save_csv(&gen_synthetic::<f64>(kind, n, 0.05, 11).unwrap(), &again, Some(&kind.header_comment(n, 0.05, 11)))
            .unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), std::fs::read(&again).unwrap());
    }
}

#[test]
fn hvac_columns_respect_their_ranges() {
    let data: Dataset = gen_synthetic(SynthKind::HvacLike, 500, 0.0, 5).unwrap();
    let lims = [(10.0, 40.0), (0.1, 2.0), (0.05, 1.0), (30.0, 95.0)];
    for x in data.inputs() {
        for (v, (lo, hi)) in x.iter().zip(lims) {
            assert!(*v >= lo && *v <= hi);
        }
    }
    for (x, &y) in data.inputs().iter().zip(data.targets()) {
        assert_eq!(y, neurofuzz::dataset::hvac_target(x[0], x[1], x[2], x[3]));
    }
}
