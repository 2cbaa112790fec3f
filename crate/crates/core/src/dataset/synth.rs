//! Frozen synthetic generators standing in for unpublished plant data.
//!
//! `hvac-like` (v1) draws, per row and in this order, ambient temperature
//! `T ~ U[10, 40]` degC, air flow `a ~ U[0.1, 2.0]` kg/s, water flow
//! `w ~ U[0.05, 1.0]` kg/s, relative humidity `RH ~ U[30, 95]` % and one
//! standard normal `e`. With `t = (T - 10) / 30` and `h = RH / 100` the target
//! in kJ/s is
//!
//! ```text
//! E = 1.5 a t + 2.0 w h + 0.8 a w + 0.5 (t - 0.25)^2 + noise_sigma * e
//! ```
//!
//! `sinc2d` is `sinc(x) sinc(y)` on `[-10, 10]^2` with `sinc(0) = 1`. When `n`
//! is a perfect square the inputs form a regular `sqrt(n) x sqrt(n)` grid
//! (row-major, `y` fastest); otherwise they are drawn uniformly. Noise is
//! added the same way as above.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const SYNTH_VERSION: &str = "neurofuzz-synth v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SynthKind {
    HvacLike,
    Sinc2d,
}

impl FromStr for SynthKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hvac-like" => Ok(Self::HvacLike),
            "sinc2d" => Ok(Self::Sinc2d),
            other => Err(Error::invalid(format!(
                "unknown synthetic kind '{other}' (expected hvac-like or sinc2d)"
            ))),
        }
    }
}

impl fmt::Display for SynthKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::HvacLike => "hvac-like",
            Self::Sinc2d => "sinc2d",
        })
    }
}

impl SynthKind {
    /// Comment line embedded at the top of generated CSV files.
    pub fn header_comment(&self, n: usize, noise_sigma: f64, seed: u64) -> String {
        format!("{SYNTH_VERSION} kind={self} seed={seed} n={n} noise={noise_sigma:?}")
    }
}

/// Noise-free `hvac-like` target in kJ/s.
pub fn hvac_target(temperature_c: f64, air_kg_s: f64, water_kg_s: f64, rh_pct: f64) -> f64 {
    let t = (temperature_c - 10.0) / 30.0;
    let h = rh_pct / 100.0;
    1.5 * air_kg_s * t + 2.0 * water_kg_s * h + 0.8 * air_kg_s * water_kg_s + 0.5 * (t - 0.25) * (t - 0.25)
}

pub fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        x.sin() / x
    }
}

pub fn gen_synthetic<T: Scalar>(kind: SynthKind, n: usize, noise_sigma: f64, seed: u64) -> Result<Dataset<T>> {
    if n < 50 {
        return Err(Error::invalid(format!("synthetic datasets need n >= 50, got {n}")));
    }
    if !(noise_sigma.is_finite() && noise_sigma >= 0.0) {
        return Err(Error::invalid("noise_sigma must be finite and >= 0"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = Vec::with_capacity(n);
    let mut y = Vec::with_capacity(n);
    let (names, target, units) = match kind {
        SynthKind::HvacLike => {
            for _ in 0..n {
                let temp = rng.random_range(10.0..40.0);
                let air = rng.random_range(0.1..2.0);
                let water = rng.random_range(0.05..1.0);
                let rh = rng.random_range(30.0..95.0);
                let e: f64 = rng.sample(StandardNormal);
                x.push(vec![temp, air, water, rh]);
                y.push(hvac_target(temp, air, water, rh) + noise_sigma * e);
            }
            (
                vec![
                    "ambient_temperature_c",
                    "air_flow_kg_s",
                    "water_flow_kg_s",
                    "relative_humidity_pct",
                ],
                "exergy_destruction_kj_s",
                vec!["degC", "kg/s", "kg/s", "%", "kJ/s"],
            )
        }
        SynthKind::Sinc2d => {
            let side = (n as f64).sqrt().round() as usize;
            let grid = side * side == n;
            for k in 0..n {
                let (a, b) = if grid {
                    let step = 20.0 / (side - 1) as f64;
                    (-10.0 + step * (k / side) as f64, -10.0 + step * (k % side) as f64)
                } else {
                    (rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0))
                };
                let e: f64 = rng.sample(StandardNormal);
                x.push(vec![a, b]);
                y.push(sinc(a) * sinc(b) + noise_sigma * e);
            }
            (vec!["x", "y"], "z", vec!["", "", ""])
        }
    };
    let cast = |v: f64| T::lit(v);
    Dataset::with_units(
        names.into_iter().map(String::from).collect(),
        target.to_string(),
        units.into_iter().map(String::from).collect(),
        x.into_iter().map(|r| r.into_iter().map(cast).collect()).collect(),
        y.into_iter().map(cast).collect(),
    )
}
