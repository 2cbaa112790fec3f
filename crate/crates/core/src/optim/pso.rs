use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optim::{evaluate_all, substream, unit, Bounds, Objective, RunTrace, TracePoint};
use crate::scalar::Scalar;

/// Global-best particle swarm settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PsoConfig {
    pub swarm_size: usize,
    pub max_iterations: usize,
    pub inertia: f64,
    pub cognitive: f64,
    pub social: f64,
    /// Velocity limit per dimension as a fraction of that dimension's width.
    pub v_max_fraction: f64,
    pub seed: u64,
}

impl Default for PsoConfig {
    fn default() -> Self {
        Self {
            swarm_size: 250,
            max_iterations: 204,
            inertia: 0.729,
            cognitive: 1.49445,
            social: 1.49445,
            v_max_fraction: 0.2,
            seed: 0,
        }
    }
}

impl PsoConfig {
    pub fn validate(&self) -> Result<()> {
        if self.swarm_size < 2 {
            return Err(Error::invalid("pso swarm_size must be >= 2"));
        }
        for (name, v) in [
            ("inertia", self.inertia),
            ("cognitive", self.cognitive),
            ("social", self.social),
        ] {
            if !v.is_finite() {
                return Err(Error::invalid(format!("pso {name} must be finite")));
            }
        }
        if !(self.v_max_fraction.is_finite() && self.v_max_fraction > 0.0) {
            return Err(Error::invalid("pso v_max_fraction must be > 0"));
        }
        Ok(())
    }
}

/// Position update `x(t+1) = x(t) + v(t+1)`.
pub fn position_update<T: Scalar>(x: &[T], v_next: &[T]) -> Vec<T> {
    x.iter().zip(v_next).map(|(&a, &b)| a + b).collect()
}

/// Swarm state, advanced one synchronous iteration at a time.
pub struct Swarm<'a, T, O: ?Sized> {
    config: PsoConfig,
    bounds: Bounds<T>,
    objective: &'a O,
    v_max: Vec<T>,
    positions: Vec<Vec<T>>,
    velocities: Vec<Vec<T>>,
    pbest: Vec<Vec<T>>,
    pbest_fitness: Vec<T>,
    gbest: usize,
    iteration: usize,
    trace: RunTrace<T>,
}

impl<'a, T: Scalar, O: Objective<T> + ?Sized> Swarm<'a, T, O> {
    /// Random initial swarm; the first particles are replaced by `seeds`.
    pub fn new(config: &PsoConfig, bounds: &Bounds<T>, objective: &'a O, seeds: &[Vec<T>]) -> Result<Self> {
        config.validate()?;
        bounds.check_seeds(seeds, config.swarm_size)?;
        let v_max: Vec<T> = (0..bounds.dim())
            .map(|d| T::lit(config.v_max_fraction) * bounds.width(d))
            .collect();
        let mut positions = Vec::with_capacity(config.swarm_size);
        let mut velocities = Vec::with_capacity(config.swarm_size);
        for i in 0..config.swarm_size {
            let mut rng = substream(config.seed, 0, i);
            let mut x = bounds.sample(&mut rng);
            if let Some(s) = seeds.get(i) {
                x.clone_from(s);
                bounds.clamp(&mut x);
            }
            let v = v_max
                .iter()
                .map(|&vm| (T::lit(2.0) * unit::<T>(&mut rng) - T::one()) * vm)
                .collect();
            positions.push(x);
            velocities.push(v);
        }
        Self::from_state(config, bounds, objective, positions, velocities)
    }

    /// Swarm with caller-chosen initial positions and velocities.
    pub fn from_state(
        config: &PsoConfig,
        bounds: &Bounds<T>,
        objective: &'a O,
        positions: Vec<Vec<T>>,
        velocities: Vec<Vec<T>>,
    ) -> Result<Self> {
        config.validate()?;
        if positions.len() != config.swarm_size || velocities.len() != config.swarm_size {
            return Err(Error::LengthMismatch {
                what: "swarm state",
                expected: config.swarm_size,
                got: positions.len().min(velocities.len()),
            });
        }
        bounds.check_seeds(&positions, config.swarm_size)?;
        bounds.check_seeds(&velocities, config.swarm_size)?;
        let v_max = (0..bounds.dim())
            .map(|d| T::lit(config.v_max_fraction) * bounds.width(d))
            .collect();
        let fitness = evaluate_all(objective, &positions);
        let gbest = argmin(&fitness);
        let trace = RunTrace {
            history: vec![TracePoint {
                iteration: 0,
                best_fitness: fitness[gbest],
                evaluations: positions.len(),
            }],
            best: positions[gbest].clone(),
            best_fitness: fitness[gbest],
            evaluations: positions.len(),
        };
        Ok(Self {
            config: config.clone(),
            bounds: bounds.clone(),
            objective,
            v_max,
            pbest: positions.clone(),
            positions,
            velocities,
            pbest_fitness: fitness,
            gbest,
            iteration: 0,
            trace,
        })
    }

    pub fn positions(&self) -> &[Vec<T>] {
        &self.positions
    }

    pub fn velocities(&self) -> &[Vec<T>] {
        &self.velocities
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    /// One iteration: velocity and position update for every particle, then
    /// evaluation and personal/global best refresh.
    pub fn step(&mut self) {
        self.iteration += 1;
        let (w, c1, c2) = (
            T::lit(self.config.inertia),
            T::lit(self.config.cognitive),
            T::lit(self.config.social),
        );
        let gbest = self.pbest[self.gbest].clone();
        for i in 0..self.positions.len() {
            let mut rng = substream(self.config.seed, self.iteration, i);
            let x = &self.positions[i];
            let v = &mut self.velocities[i];
            for d in 0..x.len() {
                let r1: T = unit(&mut rng);
                let r2: T = unit(&mut rng);
                let next = w * v[d] + c1 * r1 * (self.pbest[i][d] - x[d]) + c2 * r2 * (gbest[d] - x[d]);
                v[d] = next.max(-self.v_max[d]).min(self.v_max[d]);
            }
            let mut moved = position_update(x, v);
            self.bounds.clamp(&mut moved);
            self.positions[i] = moved;
        }

        let fitness = evaluate_all(self.objective, &self.positions);
        for (i, &f) in fitness.iter().enumerate() {
            if f < self.pbest_fitness[i] {
                self.pbest_fitness[i] = f;
                self.pbest[i].clone_from(&self.positions[i]);
            }
        }
        self.gbest = argmin(&self.pbest_fitness);
        self.trace.evaluations += fitness.len();
        if self.pbest_fitness[self.gbest] < self.trace.best_fitness {
            self.trace.best_fitness = self.pbest_fitness[self.gbest];
            self.trace.best.clone_from(&self.pbest[self.gbest]);
        }
        self.trace.history.push(TracePoint {
            iteration: self.iteration,
            best_fitness: self.trace.best_fitness,
            evaluations: self.trace.evaluations,
        });
    }

    pub fn run(mut self) -> RunTrace<T> {
        while self.iteration < self.config.max_iterations {
            self.step();
        }
        self.trace
    }
}

/// Lowest index among the minimal values.
fn argmin<T: Scalar>(values: &[T]) -> usize {
    values
        .iter()
        .enumerate()
        .fold(0, |best, (i, &v)| if v < values[best] { i } else { best })
}

pub fn pso_optimize<T: Scalar, O: Objective<T> + ?Sized>(
    config: &PsoConfig,
    bounds: &Bounds<T>,
    objective: &O,
) -> Result<RunTrace<T>> {
    Ok(Swarm::new(config, bounds, objective, &[])?.run())
}

/// As [`pso_optimize`], with the first particles started at `seeds`.
pub fn pso_optimize_seeded<T: Scalar, O: Objective<T> + ?Sized>(
    config: &PsoConfig,
    bounds: &Bounds<T>,
    objective: &O,
    seeds: &[Vec<T>],
) -> Result<RunTrace<T>> {
    Ok(Swarm::new(config, bounds, objective, seeds)?.run())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optim::sphere;

    fn small(seed: u64) -> PsoConfig {
        PsoConfig {
            swarm_size: 30,
            max_iterations: 100,
            seed,
            ..PsoConfig::default()
        }
    }

    #[test]
    fn position_update_adds_velocity() {
        assert_eq!(position_update(&[0.0], &[1.0]), vec![1.0]);
    }

    #[test]
    fn constant_velocity_without_attraction() {
        let config = PsoConfig {
            swarm_size: 3,
            max_iterations: 5,
            inertia: 1.0,
            cognitive: 0.0,
            social: 0.0,
            v_max_fraction: 1.0,
            seed: 4,
        };
        let bounds = Bounds::uniform(2, -100.0, 100.0).unwrap();
        let x0 = vec![vec![0.5, -1.25], vec![3.0, 2.0], vec![-7.75, 0.0]];
        let v0 = vec![vec![0.25, 0.5], vec![-1.0, 0.125], vec![2.0, -3.5]];
        let mut swarm = Swarm::from_state(&config, &bounds, &sphere::<f64>, x0.clone(), v0.clone()).unwrap();
        for t in 1..=5 {
            swarm.step();
            for i in 0..3 {
                for d in 0..2 {
                    assert_eq!(swarm.positions()[i][d], x0[i][d] + t as f64 * v0[i][d]);
                    assert_eq!(swarm.velocities()[i][d], v0[i][d]);
                }
            }
        }
    }

    #[test]
    fn sphere_converges_for_fixed_seeds() {
        let bounds = Bounds::uniform(2, -5.0, 5.0).unwrap();
        for seed in [1, 2, 3, 4, 5] {
            let trace = pso_optimize(&small(seed), &bounds, &sphere::<f64>).unwrap();
            assert!(trace.best_fitness < 1e-6, "seed {seed}: {}", trace.best_fitness);
            assert!(trace.is_monotone());
            assert_eq!(trace.history.len(), 101);
            assert_eq!(trace.evaluations, 30 * 101);
        }
    }

    #[test]
    fn positions_stay_in_bounds() {
        let bounds = Bounds::new(vec![-1.0, 2.0], vec![0.5, 3.0]).unwrap();
        let far = |x: &[f64]| (x[0] - 10.0).powi(2) + (x[1] + 10.0).powi(2);
        let mut swarm = Swarm::new(&small(9), &bounds, &far, &[]).unwrap();
        for _ in 0..20 {
            swarm.step();
            assert!(swarm.positions().iter().all(|p| bounds.contains(p)));
        }
    }

    #[test]
    fn infinite_fitness_does_not_abort() {
        let bounds = Bounds::uniform(2, -5.0, 5.0).unwrap();
        let holes = |x: &[f64]| if x[0] > 0.0 { f64::INFINITY } else { sphere(x) };
        let trace = pso_optimize(&small(3), &bounds, &holes).unwrap();
        assert!(trace.best_fitness.is_finite());
        assert!(trace.best[0] <= 0.0);
    }

    #[test]
    fn rejects_tiny_swarm() {
        let bounds = Bounds::uniform(1, 0.0, 1.0).unwrap();
        let cfg = PsoConfig { swarm_size: 1, ..small(0) };
        assert!(pso_optimize(&cfg, &bounds, &sphere::<f64>).is_err());
    }
}
