//! Population-based minimizers over flat parameter vectors.
//!
//! Both optimizers are deterministic for a given seed: every particle or
//! offspring draws from its own ChaCha stream keyed by `(seed, iteration,
//! index)`, and fitness values are gathered in population order, so the
//! result does not depend on how many rayon workers evaluate them.

mod anfis;
mod ga;
mod pso;

pub use anfis::{build_bounds, AnfisFitness, SearchMode};
pub use ga::{ga_optimize, ga_optimize_seeded, GaConfig};
pub use pso::{position_update, pso_optimize, pso_optimize_seeded, PsoConfig, Swarm};

use std::io::Write;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Anything that maps a candidate vector to a cost to minimize.
///
/// Implementations are called concurrently from several workers. Invalid
/// candidates should return `+inf`; NaN is treated the same way.
pub trait Objective<T>: Sync {
    fn evaluate(&self, candidate: &[T]) -> T;
}

impl<T, F> Objective<T> for F
where
    F: Fn(&[T]) -> T + Sync,
{
    fn evaluate(&self, candidate: &[T]) -> T {
        self(candidate)
    }
}

pub(crate) fn evaluate_all<T: Scalar, O: Objective<T> + ?Sized>(objective: &O, candidates: &[Vec<T>]) -> Vec<T> {
    candidates
        .par_iter()
        .map(|c| {
            let f = objective.evaluate(c);
            if f.is_nan() {
                T::infinity()
            } else {
                f
            }
        })
        .collect()
}

pub(crate) fn substream(seed: u64, iteration: usize, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((iteration as u64) << 32) | index as u64);
    rng
}

pub(crate) fn unit<T: Scalar>(rng: &mut ChaCha8Rng) -> T {
    use rand::Rng;
    T::lit(rng.random::<f64>())
}

/// Per-dimension closed search interval.
#[derive(Debug, Clone, PartialEq)]
pub struct Bounds<T> {
    lo: Vec<T>,
    hi: Vec<T>,
}

impl<T: Scalar> Bounds<T> {
    pub fn new(lo: Vec<T>, hi: Vec<T>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::LengthMismatch {
                what: "upper bounds",
                expected: lo.len(),
                got: hi.len(),
            });
        }
        if lo.is_empty() {
            return Err(Error::invalid("bounds need at least one dimension"));
        }
        if let Some(d) = lo
            .iter()
            .zip(&hi)
            .position(|(&l, &h)| !(l.is_finite() && h.is_finite() && l < h))
        {
            return Err(Error::invalid(format!(
                "dimension {d} has invalid bounds [{}, {}]",
                lo[d], hi[d]
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn uniform(dim: usize, lo: T, hi: T) -> Result<Self> {
        Self::new(vec![lo; dim], vec![hi; dim])
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[T] {
        &self.lo
    }

    pub fn hi(&self) -> &[T] {
        &self.hi
    }

    pub fn width(&self, d: usize) -> T {
        self.hi[d] - self.lo[d]
    }

    pub fn contains(&self, v: &[T]) -> bool {
        v.len() == self.dim()
            && v.iter()
                .zip(self.lo.iter().zip(&self.hi))
                .all(|(&x, (&l, &h))| x >= l && x <= h)
    }

    pub fn clamp(&self, v: &mut [T]) {
        for ((x, &l), &h) in v.iter_mut().zip(&self.lo).zip(&self.hi) {
            *x = x.max(l).min(h);
        }
    }

    pub(crate) fn sample(&self, rng: &mut ChaCha8Rng) -> Vec<T> {
        (0..self.dim())
            .map(|d| self.lo[d] + unit::<T>(rng) * self.width(d))
            .collect()
    }

    pub(crate) fn check_seeds(&self, seeds: &[Vec<T>], capacity: usize) -> Result<()> {
        if seeds.len() > capacity {
            return Err(Error::invalid(format!(
                "{} seed vectors exceed the population size {capacity}",
                seeds.len()
            )));
        }
        for s in seeds {
            if s.len() != self.dim() {
                return Err(Error::LengthMismatch {
                    what: "seed vector",
                    expected: self.dim(),
                    got: s.len(),
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePoint<T> {
    /// 0 is the initial population.
    pub iteration: usize,
    pub best_fitness: T,
    /// Cumulative fitness evaluations so far.
    pub evaluations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunTrace<T> {
    pub history: Vec<TracePoint<T>>,
    pub best: Vec<T>,
    pub best_fitness: T,
    pub evaluations: usize,
}

impl<T: Scalar> RunTrace<T> {
    pub fn best_fitness_sequence(&self) -> Vec<T> {
        self.history.iter().map(|p| p.best_fitness).collect()
    }

    pub fn is_monotone(&self) -> bool {
        self.history.windows(2).all(|w| w[1].best_fitness <= w[0].best_fitness)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("iteration,best_fitness,evaluations\n");
        for p in &self.history {
            out.push_str(&format!(
                "{},{:?},{}\n",
                p.iteration,
                p.best_fitness.to_f64_lossy(),
                p.evaluations
            ));
        }
        out
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::File::create(path)
            .and_then(|mut f| f.write_all(self.to_csv().as_bytes()))
            .map_err(|e| Error::io(path, e))
    }
}

/// Sphere function `sum x_d^2`, used as a smoke-test landscape.
pub fn sphere<T: Scalar>(x: &[T]) -> T {
    x.iter().map(|&v| v * v).sum()
}
