//! Flat parameter vectors for the population-based trainers.
//!
//! Layout (version tag [`PARAM_LAYOUT_VERSION`]): all premise `(center,
//! sigma)` pairs, input-major then MF-minor, followed in [`ParamScope::Full`]
//! by every rule's consequent coefficients in rule-major order (slopes for
//! inputs `0..n`, then the constant).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::model::AnfisModel;
use crate::scalar::Scalar;

pub const PARAM_LAYOUT_VERSION: &str = "zs-input-major+consequent-rule-major/v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParamScope {
    /// Membership parameters only.
    Premise,
    /// Membership parameters followed by all consequents.
    Full,
}

impl<T: Scalar> AnfisModel<T> {
    pub fn premise_len(&self) -> usize {
        2 * self.total_mf_count()
    }

    pub fn param_len(&self, scope: ParamScope) -> usize {
        match scope {
            ParamScope::Premise => self.premise_len(),
            ParamScope::Full => self.premise_len() + self.rule_count() * self.consequent_width(),
        }
    }

    pub fn flatten_params(&self, scope: ParamScope) -> Vec<T> {
        let mut out = Vec::with_capacity(self.param_len(scope));
        for var in self.inputs() {
            for mf in var.mfs() {
                out.push(mf.center());
                out.push(mf.sigma());
            }
        }
        if scope == ParamScope::Full {
            out.extend(self.consequents());
        }
        out
    }

    /// Writes `params` into the model in place. Spreads below the floor are
    /// clamped; the number of clamped entries is returned.
    pub fn set_params(&mut self, params: &[T], scope: ParamScope) -> Result<usize> {
        let expected = self.param_len(scope);
        if params.len() != expected {
            return Err(Error::LengthMismatch {
                what: "parameter vector",
                expected,
                got: params.len(),
            });
        }
        if let Some(i) = params.iter().position(|v| !v.is_finite()) {
            return Err(Error::invalid(format!("parameter {i} is not finite")));
        }
        let (premise, consequents) = params.split_at(self.premise_len());
        let mut clamped = 0;
        let mut pairs = premise.chunks_exact(2);
        for var in self.inputs_mut() {
            for mf in var.mfs_mut() {
                let pair = pairs.next().expect("length checked above");
                clamped += usize::from(mf.set(pair[0], pair[1]));
            }
        }
        if scope == ParamScope::Full {
            self.set_consequents(consequents)?;
        }
        Ok(clamped)
    }

    /// Copy of the model carrying `params`, plus the sigma clamp count.
    pub fn restore_params(&self, params: &[T], scope: ParamScope) -> Result<(Self, usize)> {
        let mut model = self.clone();
        let clamped = model.set_params(params, scope)?;
        Ok((model, clamped))
    }
}
