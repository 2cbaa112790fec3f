//! Regression metrics for train/test reporting.
//!
//! [`r_paper`] is the literal `sqrt(1 - SSE / sum(A^2))` statistic; it is not
//! Pearson's r, which is provided separately along with R^2.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn check<T: Scalar>(actual: &[T], predicted: &[T]) -> Result<()> {
    if actual.is_empty() {
        return Err(Error::Metric("metric inputs are empty".into()));
    }
    if actual.len() != predicted.len() {
        return Err(Error::LengthMismatch {
            what: "predicted values",
            expected: actual.len(),
            got: predicted.len(),
        });
    }
    if actual.iter().chain(predicted).any(|v| !v.is_finite()) {
        return Err(Error::Metric("metric inputs contain non-finite values".into()));
    }
    Ok(())
}

fn len<T: Scalar>(v: &[T]) -> T {
    T::lit(v.len() as f64)
}

fn sse<T: Scalar>(actual: &[T], predicted: &[T]) -> T {
    actual
        .iter()
        .zip(predicted)
        .map(|(&a, &p)| (a - p) * (a - p))
        .sum()
}

pub fn rmse<T: Scalar>(actual: &[T], predicted: &[T]) -> Result<T> {
    check(actual, predicted)?;
    Ok((sse(actual, predicted) / len(actual)).sqrt())
}

pub fn mae<T: Scalar>(actual: &[T], predicted: &[T]) -> Result<T> {
    check(actual, predicted)?;
    let total: T = actual.iter().zip(predicted).map(|(&a, &p)| (a - p).abs()).sum();
    Ok(total / len(actual))
}

/// `(1 - sum (A - P)^2 / sum A^2)^(1/2)`. Errors when the radicand is negative.
pub fn r_paper<T: Scalar>(actual: &[T], predicted: &[T]) -> Result<T> {
    check(actual, predicted)?;
    let energy: T = actual.iter().map(|&a| a * a).sum();
    if energy == T::zero() {
        return Err(Error::Metric("r_paper is undefined for all-zero actual values".into()));
    }
    let radicand = T::one() - sse(actual, predicted) / energy;
    if radicand < T::zero() {
        return Err(Error::Metric(format!(
            "r_paper is undefined: radicand {radicand} is negative"
        )));
    }
    Ok(radicand.sqrt())
}

fn mean<T: Scalar>(v: &[T]) -> T {
    v.iter().copied().sum::<T>() / len(v)
}

pub fn pearson_r<T: Scalar>(actual: &[T], predicted: &[T]) -> Result<T> {
    check(actual, predicted)?;
    if actual.len() < 2 {
        return Err(Error::Metric("pearson_r needs at least 2 points".into()));
    }
    let (ma, mp) = (mean(actual), mean(predicted));
    let (mut sap, mut saa, mut spp) = (T::zero(), T::zero(), T::zero());
    for (&a, &p) in actual.iter().zip(predicted) {
        let (da, dp) = (a - ma, p - mp);
        sap = sap + da * dp;
        saa = saa + da * da;
        spp = spp + dp * dp;
    }
    if saa == T::zero() || spp == T::zero() {
        return Err(Error::Metric("pearson_r is undefined for zero variance".into()));
    }
    Ok((sap / (saa.sqrt() * spp.sqrt())).max(-T::one()).min(T::one()))
}

/// Coefficient of determination `1 - SS_res / SS_tot` about the mean of `actual`.
pub fn r_squared<T: Scalar>(actual: &[T], predicted: &[T]) -> Result<T> {
    check(actual, predicted)?;
    if actual.len() < 2 {
        return Err(Error::Metric("r_squared needs at least 2 points".into()));
    }
    let ma = mean(actual);
    let ss_tot: T = actual.iter().map(|&a| (a - ma) * (a - ma)).sum();
    if ss_tot == T::zero() {
        return Err(Error::Metric("r_squared is undefined for zero variance".into()));
    }
    Ok(T::one() - sse(actual, predicted) / ss_tot)
}

/// `(max |A - P|, mean |A - P|)`; callers pass physical (denormalized) values.
pub fn deviation<T: Scalar>(actual: &[T], predicted: &[T]) -> Result<(T, T)> {
    check(actual, predicted)?;
    let max = actual
        .iter()
        .zip(predicted)
        .map(|(&a, &p)| (a - p).abs())
        .fold(T::zero(), T::max);
    Ok((max, mae(actual, predicted)?))
}

/// All metrics for one evaluation split. Statistics that are undefined for
/// the given data are `None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub n: usize,
    pub rmse: f64,
    pub mae: f64,
    pub r_paper: Option<f64>,
    pub pearson_r: Option<f64>,
    pub r_squared: Option<f64>,
    pub deviation_max: f64,
    pub deviation_mean: f64,
}

impl MetricReport {
    pub const CSV_HEADER: &'static str =
        "n,rmse,mae,r_paper,pearson_r,r_squared,deviation_max,deviation_mean";

    /// RMSE, MAE and the correlation statistics use `actual`/`predicted`
    /// (normalized units); deviations use the `physical_*` pair.
    pub fn compute<T: Scalar>(
        actual: &[T],
        predicted: &[T],
        physical_actual: &[T],
        physical_predicted: &[T],
    ) -> Result<Self> {
        let (dmax, dmean) = deviation(physical_actual, physical_predicted)?;
        Ok(Self {
            n: actual.len(),
            rmse: rmse(actual, predicted)?.to_f64_lossy(),
            mae: mae(actual, predicted)?.to_f64_lossy(),
            r_paper: r_paper(actual, predicted).ok().map(Scalar::to_f64_lossy),
            pearson_r: pearson_r(actual, predicted).ok().map(Scalar::to_f64_lossy),
            r_squared: r_squared(actual, predicted).ok().map(Scalar::to_f64_lossy),
            deviation_max: dmax.to_f64_lossy(),
            deviation_mean: dmean.to_f64_lossy(),
        })
    }

    /// Full-precision CSV row matching [`MetricReport::CSV_HEADER`]; undefined
    /// statistics are left empty.
    pub fn csv_row(&self) -> String {
        let opt = |v: Option<f64>| v.map(|x| format!("{x:?}")).unwrap_or_default();
        format!(
            "{},{:?},{:?},{},{},{},{:?},{:?}",
            self.n,
            self.rmse,
            self.mae,
            opt(self.r_paper),
            opt(self.pearson_r),
            opt(self.r_squared),
            self.deviation_max,
            self.deviation_mean
        )
    }
}
