use serde::{Deserialize, Serialize};

use crate::dataset::{Dataset, Split};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Per-column `(min, max)` used for min-max scaling to `[0, 1]`.
///
/// Fitted on training rows only; [`NormalizationRecord::fit_all_rows_leaky`]
/// exists for whole-dataset fits where no held-out set is involved.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizationRecord {
    pub input_names: Vec<String>,
    pub target_name: String,
    pub inputs: Vec<(f64, f64)>,
    pub target: (f64, f64),
}

impl NormalizationRecord {
    /// Fits on `split.train` rows; test rows are never read.
    pub fn fit<T: Scalar>(data: &Dataset<T>, split: &Split) -> Result<Self> {
        Self::fit_rows(data, &split.train)
    }

    /// Fits on every row, including any that will later be used for testing.
    pub fn fit_all_rows_leaky<T: Scalar>(data: &Dataset<T>) -> Result<Self> {
        let rows: Vec<usize> = (0..data.len()).collect();
        Self::fit_rows(data, &rows)
    }

    fn fit_rows<T: Scalar>(data: &Dataset<T>, rows: &[usize]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Dataset("cannot fit normalization on zero rows".into()));
        }
        let range = |name: &str, values: &mut dyn Iterator<Item = f64>| -> Result<(f64, f64)> {
            let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                (lo.min(v), hi.max(v))
            });
            if !(hi > lo) {
                return Err(Error::Dataset(format!(
                    "column '{name}' is constant ({lo}) on the fitted rows; cannot normalize"
                )));
            }
            Ok((lo, hi))
        };
        let inputs = data
            .input_names()
            .iter()
            .enumerate()
            .map(|(j, name)| range(name, &mut rows.iter().map(|&r| data.inputs()[r][j].to_f64_lossy())))
            .collect::<Result<Vec<_>>>()?;
        let target = range(
            data.target_name(),
            &mut rows.iter().map(|&r| data.targets()[r].to_f64_lossy()),
        )?;
        Ok(Self {
            input_names: data.input_names().to_vec(),
            target_name: data.target_name().to_string(),
            inputs,
            target,
        })
    }

    fn scale<T: Scalar>(v: T, (lo, hi): (f64, f64)) -> T {
        (v - T::lit(lo)) / (T::lit(hi) - T::lit(lo))
    }

    fn unscale<T: Scalar>(v: T, (lo, hi): (f64, f64)) -> T {
        v * (T::lit(hi) - T::lit(lo)) + T::lit(lo)
    }

    pub fn input_count(&self) -> usize {
        self.inputs.len()
    }

    pub fn normalize_inputs<T: Scalar>(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.inputs.len() {
            return Err(Error::LengthMismatch {
                what: "input columns",
                expected: self.inputs.len(),
                got: x.len(),
            });
        }
        Ok(x.iter().zip(&self.inputs).map(|(&v, &r)| Self::scale(v, r)).collect())
    }

    pub fn normalize_target<T: Scalar>(&self, y: T) -> T {
        Self::scale(y, self.target)
    }

    pub fn denormalize_target<T: Scalar>(&self, y: T) -> T {
        Self::unscale(y, self.target)
    }

    pub fn denormalize_targets<T: Scalar>(&self, values: &[T]) -> Vec<T> {
        values.iter().map(|&v| self.denormalize_target(v)).collect()
    }

    /// Maps every column of `data`; values outside the fitted range are kept.
    pub fn normalize<T: Scalar>(&self, data: &Dataset<T>) -> Result<Dataset<T>> {
        data.check_arity(self.inputs.len())?;
        let x = data
            .inputs()
            .iter()
            .map(|row| self.normalize_inputs(row))
            .collect::<Result<Vec<_>>>()?;
        let y = data.targets().iter().map(|&v| self.normalize_target(v)).collect();
        Ok(data.map_values(x, y))
    }
}
