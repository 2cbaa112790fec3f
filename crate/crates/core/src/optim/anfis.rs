use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::fuzzy::{AnfisModel, ParamScope, SIGMA_MIN};
use crate::hybrid::solve_consequents;
use crate::metrics;
use crate::optim::{Bounds, Objective};
use crate::scalar::Scalar;

/// Which model parameters a population-based trainer searches over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    /// Premise vector only; consequents are solved by ridge least squares
    /// for every candidate.
    #[default]
    PremiseLse,
    /// Premise and consequent parameters together.
    FullVector,
}

impl SearchMode {
    pub fn scope(&self) -> ParamScope {
        match self {
            Self::PremiseLse => ParamScope::Premise,
            Self::FullVector => ParamScope::Full,
        }
    }
}

impl std::str::FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "premise-lse" => Ok(Self::PremiseLse),
            "full-vector" => Ok(Self::FullVector),
            other => Err(Error::invalid(format!(
                "unknown search mode '{other}' (expected premise-lse or full-vector)"
            ))),
        }
    }
}

impl std::fmt::Display for SearchMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::PremiseLse => "premise-lse",
            Self::FullVector => "full-vector",
        })
    }
}

/// Training RMSE of the model encoded by a candidate vector.
pub struct AnfisFitness<'a, T> {
    template: &'a AnfisModel<T>,
    data: &'a Dataset<T>,
    mode: SearchMode,
    ridge_lambda: T,
}

impl<'a, T: Scalar> AnfisFitness<'a, T> {
    pub fn new(template: &'a AnfisModel<T>, data: &'a Dataset<T>, mode: SearchMode, ridge_lambda: T) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::Dataset("fitness needs a nonempty training set".into()));
        }
        data.check_arity(template.input_count())?;
        Ok(Self {
            template,
            data,
            mode,
            ridge_lambda,
        })
    }

    pub fn dim(&self) -> usize {
        self.template.param_len(self.mode.scope())
    }

    /// The model a candidate stands for, with consequents solved in
    /// premise-LSE mode.
    pub fn realize(&self, candidate: &[T]) -> Result<AnfisModel<T>> {
        let (mut model, _) = self.template.restore_params(candidate, self.mode.scope())?;
        if self.mode == SearchMode::PremiseLse {
            solve_consequents(&mut model, self.data, self.ridge_lambda)?;
        }
        Ok(model)
    }

    pub fn try_fitness(&self, candidate: &[T]) -> Result<T> {
        let model = self.realize(candidate)?;
        let predicted = self
            .data
            .inputs()
            .iter()
            .map(|x| model.predict(x))
            .collect::<Result<Vec<_>>>()?;
        metrics::rmse(self.data.targets(), &predicted)
    }
}

impl<T: Scalar> Objective<T> for AnfisFitness<'_, T> {
    /// Degenerate or otherwise unusable candidates score `+inf`.
    fn evaluate(&self, candidate: &[T]) -> T {
        self.try_fitness(candidate).unwrap_or_else(|_| T::infinity())
    }
}

/// Search box for a model's parameter vector given (normalized) data:
/// centers within the observed range widened by 10 % on each side, spreads
/// in `[SIGMA_MIN, range]`, consequents in `[-10, 10]`.
pub fn build_bounds<T: Scalar>(template: &AnfisModel<T>, data: &Dataset<T>, mode: SearchMode) -> Result<Bounds<T>> {
    data.check_arity(template.input_count())?;
    let ranges = data.input_ranges()?;
    let mut lo = Vec::with_capacity(template.param_len(mode.scope()));
    let mut hi = Vec::with_capacity(lo.capacity());
    let margin = T::lit(0.1);
    for (var, &(min, max)) in template.inputs().iter().zip(&ranges) {
        let range = max - min;
        for _ in var.mfs() {
            lo.push(min - margin * range);
            hi.push(max + margin * range);
            lo.push(T::lit(SIGMA_MIN));
            hi.push(range);
        }
    }
    if mode == SearchMode::FullVector {
        let n = template.rule_count() * template.consequent_width();
        lo.extend(std::iter::repeat_n(T::lit(-10.0), n));
        hi.extend(std::iter::repeat_n(T::lit(10.0), n));
    }
    Bounds::new(lo, hi)
}
