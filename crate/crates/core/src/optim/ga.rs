use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optim::{evaluate_all, substream, unit, Bounds, Objective, RunTrace, TracePoint};
use crate::scalar::Scalar;

/// BLX-alpha blend parameter.
const BLX_ALPHA: f64 = 0.5;
/// Gaussian mutation scale as a fraction of each dimension's width.
const MUTATION_SCALE: f64 = 0.1;

/// Real-coded genetic algorithm settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GaConfig {
    pub population_size: usize,
    pub max_generations: usize,
    pub crossover_rate: f64,
    /// Per-gene mutation probability.
    pub mutation_rate: f64,
    pub tournament_size: usize,
    pub elitism_count: usize,
    pub seed: u64,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            population_size: 200,
            max_generations: 282,
            crossover_rate: 0.9,
            mutation_rate: 0.1,
            tournament_size: 3,
            elitism_count: 2,
            seed: 0,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.elitism_count < 1 {
            return Err(Error::invalid("ga elitism_count must be >= 1"));
        }
        if self.population_size < self.elitism_count + 2 {
            return Err(Error::invalid(format!(
                "ga population_size {} must be >= elitism_count + 2",
                self.population_size
            )));
        }
        if self.tournament_size < 1 {
            return Err(Error::invalid("ga tournament_size must be >= 1"));
        }
        for (name, p) in [("crossover_rate", self.crossover_rate), ("mutation_rate", self.mutation_rate)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::invalid(format!("ga {name} must lie in [0, 1]")));
            }
        }
        Ok(())
    }
}

fn tournament<T: Scalar>(rng: &mut ChaCha8Rng, fitness: &[T], size: usize) -> usize {
    let mut best = rng.random_range(0..fitness.len());
    for _ in 1..size {
        let c = rng.random_range(0..fitness.len());
        if fitness[c] < fitness[best] {
            best = c;
        }
    }
    best
}

fn blend_child<T: Scalar>(rng: &mut ChaCha8Rng, a: &[T], b: &[T]) -> Vec<T> {
    let alpha = T::lit(BLX_ALPHA);
    a.iter()
        .zip(b)
        .map(|(&x, &y)| {
            let (lo, hi) = (x.min(y), x.max(y));
            let span = hi - lo;
            let start = lo - alpha * span;
            start + unit::<T>(rng) * (span + T::lit(2.0) * alpha * span)
        })
        .collect()
}

fn mutate<T: Scalar>(rng: &mut ChaCha8Rng, child: &mut [T], bounds: &Bounds<T>, rate: f64) {
    for (d, gene) in child.iter_mut().enumerate() {
        if rng.random::<f64>() < rate {
            let z: f64 = rng.sample(StandardNormal);
            *gene = *gene + T::lit(z * MUTATION_SCALE) * bounds.width(d);
        }
    }
    bounds.clamp(child);
}

/// Indices sorted by ascending fitness, ties broken by index.
fn ranking<T: Scalar>(fitness: &[T]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..fitness.len()).collect();
    idx.sort_by(|&a, &b| {
        fitness[a]
            .partial_cmp(&fitness[b])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    idx
}

pub fn ga_optimize<T: Scalar, O: Objective<T> + ?Sized>(
    config: &GaConfig,
    bounds: &Bounds<T>,
    objective: &O,
) -> Result<RunTrace<T>> {
    ga_optimize_seeded(config, bounds, objective, &[])
}

/// Runs the GA with the first individuals of the initial population set to `seeds`.
///
/// Each generation keeps the `elitism_count` best individuals unchanged and
/// fills the rest with offspring pairs: two tournament winners, BLX-0.5
/// crossover with probability `crossover_rate` (copies otherwise), then
/// per-gene Gaussian mutation and clamping to `bounds`.
pub fn ga_optimize_seeded<T: Scalar, O: Objective<T> + ?Sized>(
    config: &GaConfig,
    bounds: &Bounds<T>,
    objective: &O,
    seeds: &[Vec<T>],
) -> Result<RunTrace<T>> {
    config.validate()?;
    bounds.check_seeds(seeds, config.population_size)?;

    let mut population: Vec<Vec<T>> = (0..config.population_size)
        .map(|i| match seeds.get(i) {
            Some(s) => {
                let mut v = s.clone();
                bounds.clamp(&mut v);
                v
            }
            None => bounds.sample(&mut substream(config.seed, 0, i)),
        })
        .collect();
    let mut fitness = evaluate_all(objective, &population);
    let mut evaluations = population.len();

    let first = ranking(&fitness)[0];
    let mut best = population[first].clone();
    let mut best_fitness = fitness[first];
    let mut history = vec![TracePoint {
        iteration: 0,
        best_fitness,
        evaluations,
    }];

    for generation in 1..=config.max_generations {
        let order = ranking(&fitness);
        let mut next: Vec<Vec<T>> = Vec::with_capacity(config.population_size);
        let mut next_fitness: Vec<T> = Vec::with_capacity(config.population_size);
        for &e in &order[..config.elitism_count] {
            next.push(population[e].clone());
            next_fitness.push(fitness[e]);
        }

        let mut offspring = Vec::with_capacity(config.population_size - config.elitism_count);
        let mut pair = 0;
        while next.len() + offspring.len() < config.population_size {
            let mut rng = substream(config.seed, generation, pair);
            let a = tournament(&mut rng, &fitness, config.tournament_size);
            let b = tournament(&mut rng, &fitness, config.tournament_size);
            let (mut c1, mut c2) = if rng.random::<f64>() < config.crossover_rate {
                (
                    blend_child(&mut rng, &population[a], &population[b]),
                    blend_child(&mut rng, &population[a], &population[b]),
                )
            } else {
                (population[a].clone(), population[b].clone())
            };
            mutate(&mut rng, &mut c1, bounds, config.mutation_rate);
            mutate(&mut rng, &mut c2, bounds, config.mutation_rate);
            offspring.push(c1);
            if next.len() + offspring.len() < config.population_size {
                offspring.push(c2);
            }
            pair += 1;
        }

        let offspring_fitness = evaluate_all(objective, &offspring);
        evaluations += offspring.len();
        next.extend(offspring);
        next_fitness.extend(offspring_fitness);
        population = next;
        fitness = next_fitness;

        let leader = ranking(&fitness)[0];
        if fitness[leader] < best_fitness {
            best_fitness = fitness[leader];
            best.clone_from(&population[leader]);
        }
        history.push(TracePoint {
            iteration: generation,
            best_fitness,
            evaluations,
        });
    }

    Ok(RunTrace {
        history,
        best,
        best_fitness,
        evaluations,
    })
}
