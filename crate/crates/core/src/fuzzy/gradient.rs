use crate::error::{Error, Result};
use crate::fuzzy::model::{AnfisModel, ForwardTrace};
use crate::scalar::Scalar;

/// Partial derivatives of the model output with respect to every premise
/// parameter, indexed `[input][mf]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PremiseGradient<T> {
    pub d_center: Vec<Vec<T>>,
    pub d_sigma: Vec<Vec<T>>,
}

impl<T: Scalar> PremiseGradient<T> {
    pub fn zeros(mf_counts: &[usize]) -> Self {
        Self {
            d_center: mf_counts.iter().map(|&c| vec![T::zero(); c]).collect(),
            d_sigma: mf_counts.iter().map(|&c| vec![T::zero(); c]).collect(),
        }
    }

    /// Flattened in the premise parameter layout: `(z, sigma)` pairs,
    /// input-major then MF-minor.
    pub fn to_vec(&self) -> Vec<T> {
        self.d_center
            .iter()
            .zip(&self.d_sigma)
            .flat_map(|(zs, ss)| zs.iter().zip(ss).flat_map(|(&z, &s)| [z, s]))
            .collect()
    }

    /// `self += scale * other`.
    pub fn add_scaled(&mut self, other: &Self, scale: T) {
        for (a, b) in self.d_center.iter_mut().zip(&other.d_center) {
            for (x, &y) in a.iter_mut().zip(b) {
                *x = *x + scale * y;
            }
        }
        for (a, b) in self.d_sigma.iter_mut().zip(&other.d_sigma) {
            for (x, &y) in a.iter_mut().zip(b) {
                *x = *x + scale * y;
            }
        }
    }
}

impl<T: Scalar> AnfisModel<T> {
    /// Analytic `dY/dz` and `dY/dsigma` for every membership function.
    ///
    /// With `W_i` the rule firing strength, `dW_i/dz = W_i (x_j - z) / sigma^2`
    /// and `dW_i/dsigma = W_i (x_j - z)^2 / sigma^3` for the MF the rule uses
    /// on input `j`, and `dY/dW_i = (f_i - Y) / sum(W)`.
    pub fn premise_gradient(&self, x: &[T], trace: &ForwardTrace<T>) -> Result<PremiseGradient<T>> {
        if x.len() != self.input_count() {
            return Err(Error::LengthMismatch {
                what: "input vector",
                expected: self.input_count(),
                got: x.len(),
            });
        }
        if trace.normalized_strengths.len() != self.rule_count()
            || trace.rule_outputs.len() != self.rule_count()
        {
            return Err(Error::LengthMismatch {
                what: "forward trace",
                expected: self.rule_count(),
                got: trace.normalized_strengths.len(),
            });
        }
        if !(trace.total_firing >= T::degenerate_threshold()) {
            return Err(Error::DegenerateInput {
                point: x.iter().map(|v| v.to_f64_lossy()).collect(),
            });
        }

        // Per-(input, mf) factors (x - z)/sigma^2 and (x - z)^2/sigma^3.
        let mut center_factor = Vec::with_capacity(self.input_count());
        let mut sigma_factor = Vec::with_capacity(self.input_count());
        for (var, &xj) in self.inputs().iter().zip(x) {
            let (cf, sf): (Vec<T>, Vec<T>) = var
                .mfs()
                .iter()
                .map(|mf| {
                    let d = xj - mf.center();
                    let s2 = mf.sigma() * mf.sigma();
                    (d / s2, d * d / (s2 * mf.sigma()))
                })
                .unzip();
            center_factor.push(cf);
            sigma_factor.push(sf);
        }

        let mut grad = PremiseGradient::zeros(&self.mf_counts());
        for ((rule, &wbar), &f) in self
            .rules()
            .iter()
            .zip(&trace.normalized_strengths)
            .zip(&trace.rule_outputs)
        {
            let coef = wbar * (f - trace.output);
            for (j, &m) in rule.premise.iter().enumerate() {
                grad.d_center[j][m] = grad.d_center[j][m] + coef * center_factor[j][m];
                grad.d_sigma[j][m] = grad.d_sigma[j][m] + coef * sigma_factor[j][m];
            }
        }
        Ok(grad)
    }
}
