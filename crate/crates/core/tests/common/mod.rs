#![allow(dead_code)]

use neurofuzz::fuzzy::{AnfisModel, InputVariable, MembershipFunction};
use neurofuzz::Dataset;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random model with `inputs` dimensions and `mfs` MFs each, centers in
/// [0, 1], spreads in [0.15, 0.6], consequents in [-2, 2].
pub fn random_model(rng: &mut ChaCha8Rng, inputs: usize, mfs: usize) -> AnfisModel<f64> {
    let vars = (0..inputs)
        .map(|j| {
            let list = (0..mfs)
                .map(|_| MembershipFunction::new(rng.random_range(0.0..1.0), rng.random_range(0.15..0.6)).unwrap())
                .collect();
            InputVariable::new(format!("x{j}"), list).unwrap()
        })
        .collect();
    let mut m = AnfisModel::grid(vars).unwrap();
    let cons: Vec<f64> = (0..m.rule_count() * m.consequent_width())
        .map(|_| rng.random_range(-2.0..2.0))
        .collect();
    m.set_consequents(&cons).unwrap();
    m
}

pub fn random_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-0.1..1.1)).collect()
}

/// Naive forward pass: recursively enumerates every MF combination, looks
/// up the matching rule by premise and accumulates the weighted average.
pub fn brute_force_output(model: &AnfisModel<f64>, x: &[f64]) -> f64 {
    fn walk(model: &AnfisModel<f64>, x: &[f64], chosen: &mut Vec<usize>, num: &mut f64, den: &mut f64) {
        let j = chosen.len();
        if j == x.len() {
            let mut w = 1.0;
            for (k, &m) in chosen.iter().enumerate() {
                let mf = &model.inputs()[k].mfs()[m];
                let z = (x[k] - mf.center()) / mf.sigma();
                w *= (-0.5 * z * z).exp();
            }
            let rule = model
                .rules()
                .iter()
                .find(|r| r.premise == *chosen)
                .expect("grid contains every combination");
            let mut f = rule.consequent[x.len()];
            for k in 0..x.len() {
                f += rule.consequent[k] * x[k];
            }
            *num += w * f;
            *den += w;
            return;
        }
        for m in 0..model.inputs()[j].mf_count() {
            chosen.push(m);
            walk(model, x, chosen, num, den);
            chosen.pop();
        }
    }
    let (mut num, mut den) = (0.0, 0.0);
    walk(model, x, &mut Vec::new(), &mut num, &mut den);
    num / den
}

pub fn dataset_from(points: Vec<Vec<f64>>, targets: Vec<f64>) -> Dataset {
    let names = (0..points[0].len()).map(|j| format!("x{j}")).collect();
    Dataset::new(names, "y".into(), points, targets).unwrap()
}

/// Targets generated exactly by `model` on uniformly drawn points.
pub fn generated_data(rng: &mut ChaCha8Rng, model: &AnfisModel<f64>, n: usize) -> Dataset {
    let points: Vec<Vec<f64>> = (0..n).map(|_| random_point(rng, model.input_count())).collect();
    let targets = points.iter().map(|p| model.predict(p).unwrap()).collect();
    dataset_from(points, targets)
}

/// Grid-initialized premises on [0, 1] with random consequents in [-2, 2].
pub fn grid_model(rng: &mut ChaCha8Rng, inputs: usize, mfs: usize) -> AnfisModel<f64> {
    let names: Vec<String> = (0..inputs).map(|j| format!("x{j}")).collect();
    let mut m = AnfisModel::init_grid(&names, &vec![(0.0, 1.0); inputs], mfs).unwrap();
    let cons: Vec<f64> = (0..m.rule_count() * m.consequent_width())
        .map(|_| rng.random_range(-2.0..2.0))
        .collect();
    m.set_consequents(&cons).unwrap();
    m
}
