//! The five-layer Sugeno network: Gaussian membership functions (layer 1),
//! product firing strengths (2), normalization (3), weighted linear rule
//! outputs (4) and their sum (5).

mod gradient;
mod io;
mod membership;
mod model;
mod params;

pub use gradient::PremiseGradient;
pub use io::{InputRecord, ModelFile, RuleRecord, MODEL_FORMAT};
pub use membership::{InputVariable, MembershipFunction, SIGMA_MIN};
pub use model::{grid_premises, AnfisModel, ForwardTrace, Rule};
pub use params::{ParamScope, PARAM_LAYOUT_VERSION};
