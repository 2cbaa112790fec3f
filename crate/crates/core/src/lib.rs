//! Adaptive neuro-fuzzy inference (first-order Sugeno ANFIS) for regression.
//!
//! - [`fuzzy`]: model types, forward pass, analytic premise gradients,
//!   flat parameter layout and JSON model files
//! - [`hybrid`]: least-squares consequents plus gradient-descent premises
//! - [`optim`]: genetic-algorithm and particle-swarm tuning of the parameter vector
//! - [`metrics`]: RMSE, MAE, correlation statistics and deviation
//! - [`dataset`]: CSV I/O, 70/30 split, min-max normalization, synthetic data
//!
//! Numeric code is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix it to `f64`, which every file format uses.

pub mod dataset;
pub mod error;
pub mod fuzzy;
pub mod hybrid;
pub mod linalg;
pub mod metrics;
pub mod optim;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use dataset::{NormalizationRecord, Split, SynthKind};
pub use fuzzy::{AnfisModel, ForwardTrace, InputVariable, MembershipFunction, ModelFile, ParamScope, Rule};
pub use hybrid::{EpochLog, HybridConfig, HybridOutcome};
pub use metrics::MetricReport;
pub use optim::{Bounds, GaConfig, Objective, PsoConfig, RunTrace, SearchMode};

pub type Anfis = fuzzy::AnfisModel<f64>;
pub type Anfis32 = fuzzy::AnfisModel<f32>;
pub type Dataset = dataset::Dataset<f64>;
pub type Dataset32 = dataset::Dataset<f32>;
pub type Trace = fuzzy::ForwardTrace<f64>;
pub type Mf = fuzzy::MembershipFunction<f64>;
