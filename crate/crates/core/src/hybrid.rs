//! Hybrid learning: least-squares consequents on the forward pass, gradient
//! descent on the Gaussian premise parameters on the backward pass.

use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::fuzzy::{AnfisModel, ParamScope, PremiseGradient};
use crate::linalg::{dot, ridge_qr, solve_spd};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HybridConfig {
    pub epochs: usize,
    pub learning_rate: f64,
    pub ridge_lambda: f64,
    /// Epochs without improvement before stopping; 0 disables early stopping.
    pub early_stop_patience: usize,
}

impl Default for HybridConfig {
    fn default() -> Self {
        Self {
            epochs: 100,
            learning_rate: 0.01,
            ridge_lambda: 1e-8,
            early_stop_patience: 10,
        }
    }
}

impl HybridConfig {
    pub fn validate(&self) -> Result<()> {
        if self.epochs == 0 {
            return Err(Error::invalid("hybrid epochs must be >= 1"));
        }
        if !(self.learning_rate.is_finite() && self.learning_rate >= 0.0) {
            return Err(Error::invalid("hybrid learning_rate must be finite and >= 0"));
        }
        if !(self.ridge_lambda.is_finite() && self.ridge_lambda >= 0.0) {
            return Err(Error::invalid("hybrid ridge_lambda must be finite and >= 0"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpochLog {
    pub epoch: usize,
    pub train_rmse: f64,
    pub clamp_count: usize,
}

#[derive(Debug, Clone)]
pub struct LseFit<T> {
    /// Sum of squared residuals at the solved consequents (ridge term excluded).
    pub sse: T,
}

#[derive(Debug, Clone)]
pub struct HybridOutcome<T> {
    /// Parameters from the epoch with the lowest training RMSE.
    pub model: AnfisModel<T>,
    pub best_epoch: usize,
    pub best_rmse: T,
    pub log: Vec<EpochLog>,
}

/// Normalized firing strengths for every sample, row-major `N x rules`.
pub(crate) fn strength_matrix<T: Scalar>(model: &AnfisModel<T>, data: &Dataset<T>) -> Result<Vec<T>> {
    let rules = model.rule_count();
    let mut out = vec![T::zero(); data.len() * rules];
    let mut scratch = Vec::new();
    for (row, x) in out.chunks_exact_mut(rules).zip(data.inputs()) {
        model.normalized_strengths_into(x, &mut scratch, row)?;
    }
    Ok(out)
}

/// Row `k` of the consequent design matrix: rule blocks `wbar_i(x_k) * [x_k, 1]`.
fn design_row<T: Scalar>(strengths: &[T], x: &[T], out: &mut [T]) {
    let width = x.len() + 1;
    for (block, &w) in out.chunks_exact_mut(width).zip(strengths) {
        for (slot, &xi) in block.iter_mut().zip(x) {
            *slot = w * xi;
        }
        block[width - 1] = w;
    }
}

/// Sets the consequents to the ridge least-squares minimizer of
/// `sum_k (Y(x_k) - t_k)^2 + lambda |theta|^2` with premises held fixed.
///
/// The coefficient-space problem is solved by QR of the ridge-augmented
/// design matrix. When there are fewer samples than coefficients and
/// `lambda > 0`, the equivalent sample-space system
/// `(A A^T + lambda I) alpha = t`, `theta = A^T alpha` is solved by Cholesky
/// instead; its Gram matrix factors as `(W W^T) o (Xa Xa^T)`, which keeps
/// repeated solves inside the population trainers cheap.
pub fn solve_consequents<T: Scalar>(
    model: &mut AnfisModel<T>,
    data: &Dataset<T>,
    ridge_lambda: T,
) -> Result<LseFit<T>> {
    if data.is_empty() {
        return Err(Error::Dataset("least-squares solve needs at least one sample".into()));
    }
    data.check_arity(model.input_count())?;
    let strengths = strength_matrix(model, data)?;
    solve_consequents_with(model, data, &strengths, ridge_lambda)
}

pub(crate) fn solve_consequents_with<T: Scalar>(
    model: &mut AnfisModel<T>,
    data: &Dataset<T>,
    strengths: &[T],
    ridge_lambda: T,
) -> Result<LseFit<T>> {
    let m = data.len();
    let rules = model.rule_count();
    let width = model.consequent_width();
    let p = rules * width;
    let xs = data.inputs();
    let ys = data.targets();

    let theta = if ridge_lambda > T::zero() && m < p {
        // K = (W W^T) o (Xa Xa^T) + lambda I, Xa = [X, 1].
        let mut gram = vec![T::zero(); m * m];
        for k in 0..m {
            let wk = &strengths[k * rules..(k + 1) * rules];
            for l in 0..=k {
                let wl = &strengths[l * rules..(l + 1) * rules];
                let v = dot(wk, wl) * (T::one() + dot(&xs[k], &xs[l]));
                gram[k * m + l] = v;
                gram[l * m + k] = v;
            }
            gram[k * m + k] = gram[k * m + k] + ridge_lambda;
        }
        let alpha = solve_spd(&gram, m, ys, 2)?;
        let mut theta = vec![T::zero(); p];
        let mut row = vec![T::zero(); p];
        for k in 0..m {
            design_row(&strengths[k * rules..(k + 1) * rules], &xs[k], &mut row);
            for (t, &a) in theta.iter_mut().zip(&row) {
                *t = *t + alpha[k] * a;
            }
        }
        theta
    } else {
        let mut design = vec![T::zero(); m * p];
        for (k, row) in design.chunks_exact_mut(p).enumerate() {
            design_row(&strengths[k * rules..(k + 1) * rules], &xs[k], row);
        }
        ridge_qr(&design, m, p, ys, ridge_lambda).map_err(|e| match e {
            Error::SingularSystem(msg) => Error::SingularSystem(format!(
                "{msg}; {m} samples for {p} consequent coefficients with ridge_lambda = {ridge_lambda}"
            )),
            other => other,
        })?
    };

    model.set_consequents(&theta)?;
    let mut row = vec![T::zero(); p];
    let mut sse = T::zero();
    for k in 0..m {
        design_row(&strengths[k * rules..(k + 1) * rules], &xs[k], &mut row);
        let y = row.iter().zip(&theta).fold(T::zero(), |acc, (&a, &b)| acc + a * b);
        let r = y - ys[k];
        sse = sse + r * r;
    }
    Ok(LseFit { sse })
}

/// Gradient of `sum_k (Y(x_k) - t_k)^2 + lambda |theta|^2` with respect to the
/// consequent coefficients, in rule-major order.
pub fn consequent_objective_gradient<T: Scalar>(
    model: &AnfisModel<T>,
    data: &Dataset<T>,
    ridge_lambda: T,
) -> Result<Vec<T>> {
    let strengths = strength_matrix(model, data)?;
    let rules = model.rule_count();
    let theta = model.consequents();
    let mut grad: Vec<T> = theta.iter().map(|&t| T::lit(2.0) * ridge_lambda * t).collect();
    let mut row = vec![T::zero(); theta.len()];
    for (k, x) in data.inputs().iter().enumerate() {
        design_row(&strengths[k * rules..(k + 1) * rules], x, &mut row);
        let y = row.iter().zip(&theta).fold(T::zero(), |acc, (&a, &b)| acc + a * b);
        let r = T::lit(2.0) * (y - data.targets()[k]);
        for (g, &a) in grad.iter_mut().zip(&row) {
            *g = *g + r * a;
        }
    }
    Ok(grad)
}

/// Gradient of the mean squared error with respect to all premise parameters.
/// Per-sample terms are reduced in sample order regardless of worker count.
pub fn premise_loss_gradient<T: Scalar>(model: &AnfisModel<T>, data: &Dataset<T>) -> Result<PremiseGradient<T>> {
    let per_sample: Vec<(T, PremiseGradient<T>)> = data
        .inputs()
        .par_iter()
        .zip(data.targets().par_iter())
        .map(|(x, &t)| {
            let trace = model.forward(x)?;
            let g = model.premise_gradient(x, &trace)?;
            Ok((trace.output - t, g))
        })
        .collect::<Result<_>>()?;
    let scale = T::lit(2.0) / T::lit(data.len() as f64);
    let mut total = PremiseGradient::zeros(&model.mf_counts());
    for (residual, g) in &per_sample {
        total.add_scaled(g, scale * *residual);
    }
    Ok(total)
}

/// Runs hybrid learning and returns the best-RMSE epoch's parameters.
pub fn train_hybrid<T: Scalar>(
    model: &AnfisModel<T>,
    data: &Dataset<T>,
    config: &HybridConfig,
) -> Result<HybridOutcome<T>> {
    config.validate()?;
    if data.is_empty() {
        return Err(Error::Dataset("training set is empty".into()));
    }
    data.check_arity(model.input_count())?;
    let lambda = T::lit(config.ridge_lambda);
    let lr = T::lit(config.learning_rate);
    let n = T::lit(data.len() as f64);

    let mut current = model.clone();
    let mut best: Option<(AnfisModel<T>, usize, T)> = None;
    let mut log = Vec::with_capacity(config.epochs);
    let mut stale = 0;

    for epoch in 1..=config.epochs {
        let fit = solve_consequents(&mut current, data, lambda)?;
        let rmse = (fit.sse / n).sqrt();
        if !rmse.is_finite() {
            return Err(Error::NumericalFailure {
                epoch,
                detail: format!("training loss is {rmse}"),
            });
        }
        match &best {
            Some((_, _, b)) if !(rmse < *b) => stale += 1,
            _ => {
                best = Some((current.clone(), epoch, rmse));
                stale = 0;
            }
        }

        let stop = epoch == config.epochs
            || (config.early_stop_patience > 0 && stale >= config.early_stop_patience);
        let mut clamp_count = 0;
        if !stop && lr > T::zero() {
            let grad = premise_loss_gradient(&current, data)?.to_vec();
            if grad.iter().any(|g| !g.is_finite()) {
                return Err(Error::NumericalFailure {
                    epoch,
                    detail: "premise gradient is not finite".into(),
                });
            }
            let params: Vec<T> = current
                .flatten_params(ParamScope::Premise)
                .iter()
                .zip(&grad)
                .map(|(&p, &g)| p - lr * g)
                .collect();
            clamp_count = current.set_params(&params, ParamScope::Premise)?;
        }
        log.push(EpochLog {
            epoch,
            train_rmse: rmse.to_f64_lossy(),
            clamp_count,
        });
        if stop {
            break;
        }
    }

    let (model, best_epoch, best_rmse) = best.expect("at least one epoch runs");
    Ok(HybridOutcome {
        model,
        best_epoch,
        best_rmse,
        log,
    })
}

pub fn write_epoch_log(path: impl AsRef<Path>, log: &[EpochLog]) -> Result<()> {
    let path = path.as_ref();
    let mut out = String::from("epoch,train_rmse,clamp_count\n");
    for e in log {
        out.push_str(&format!("{},{:?},{}\n", e.epoch, e.train_rmse, e.clamp_count));
    }
    std::fs::File::create(path)
        .and_then(|mut f| f.write_all(out.as_bytes()))
        .map_err(|e| Error::io(path, e))
}
