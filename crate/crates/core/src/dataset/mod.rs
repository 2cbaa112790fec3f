//! Tabular regression data: CSV ingestion, train/test splitting, min-max
//! normalization and synthetic stand-in datasets.

mod csv_io;
mod normalize;
mod split;
mod synth;

pub use csv_io::{load_csv, save_csv};
pub use normalize::NormalizationRecord;
pub use split::{split_70_30, train_len, Split};
pub use synth::{gen_synthetic, hvac_target, sinc, SynthKind, SYNTH_VERSION};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Input matrix plus target vector. The target is always the last CSV column.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset<T> {
    input_names: Vec<String>,
    target_name: String,
    /// One entry per input column followed by the target's unit; may be empty strings.
    units: Vec<String>,
    x: Vec<Vec<T>>,
    y: Vec<T>,
}

impl<T: Scalar> Dataset<T> {
    pub fn new(input_names: Vec<String>, target_name: String, x: Vec<Vec<T>>, y: Vec<T>) -> Result<Self> {
        let units = vec![String::new(); input_names.len() + 1];
        Self::with_units(input_names, target_name, units, x, y)
    }

    pub fn with_units(
        input_names: Vec<String>,
        target_name: String,
        units: Vec<String>,
        x: Vec<Vec<T>>,
        y: Vec<T>,
    ) -> Result<Self> {
        if input_names.is_empty() {
            return Err(Error::Dataset("a dataset needs at least one input column".into()));
        }
        if units.len() != input_names.len() + 1 {
            return Err(Error::LengthMismatch {
                what: "column units",
                expected: input_names.len() + 1,
                got: units.len(),
            });
        }
        if x.len() != y.len() {
            return Err(Error::LengthMismatch {
                what: "target rows",
                expected: x.len(),
                got: y.len(),
            });
        }
        for (i, row) in x.iter().enumerate() {
            if row.len() != input_names.len() {
                return Err(Error::Dataset(format!(
                    "row {i} has {} inputs, expected {}",
                    row.len(),
                    input_names.len()
                )));
            }
            if row.iter().chain(std::iter::once(&y[i])).any(|v| !v.is_finite()) {
                return Err(Error::Dataset(format!("row {i} contains a non-finite value")));
            }
        }
        Ok(Self {
            input_names,
            target_name,
            units,
            x,
            y,
        })
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    pub fn input_count(&self) -> usize {
        self.input_names.len()
    }

    pub fn input_names(&self) -> &[String] {
        &self.input_names
    }

    pub fn target_name(&self) -> &str {
        &self.target_name
    }

    pub fn units(&self) -> &[String] {
        &self.units
    }

    pub fn inputs(&self) -> &[Vec<T>] {
        &self.x
    }

    pub fn targets(&self) -> &[T] {
        &self.y
    }

    pub fn check_arity(&self, expected: usize) -> Result<()> {
        if self.input_count() != expected {
            return Err(Error::LengthMismatch {
                what: "dataset input columns",
                expected,
                got: self.input_count(),
            });
        }
        Ok(())
    }

    /// Rows at `indices`, in that order.
    pub fn subset(&self, indices: &[usize]) -> Self {
        Self {
            input_names: self.input_names.clone(),
            target_name: self.target_name.clone(),
            units: self.units.clone(),
            x: indices.iter().map(|&i| self.x[i].clone()).collect(),
            y: indices.iter().map(|&i| self.y[i]).collect(),
        }
    }

    /// Observed `(min, max)` of every input column.
    pub fn input_ranges(&self) -> Result<Vec<(T, T)>> {
        if self.is_empty() {
            return Err(Error::Dataset("cannot take ranges of an empty dataset".into()));
        }
        Ok((0..self.input_count())
            .map(|j| {
                self.x.iter().fold((T::infinity(), T::neg_infinity()), |(lo, hi), row| {
                    (lo.min(row[j]), hi.max(row[j]))
                })
            })
            .collect())
    }

    pub(crate) fn map_values(&self, x: Vec<Vec<T>>, y: Vec<T>) -> Self {
        Self {
            input_names: self.input_names.clone(),
            target_name: self.target_name.clone(),
            units: self.units.clone(),
            x,
            y,
        }
    }

    /// Converts every value to another scalar type.
    pub fn cast<U: Scalar>(&self) -> Dataset<U> {
        Dataset {
            input_names: self.input_names.clone(),
            target_name: self.target_name.clone(),
            units: self.units.clone(),
            x: self
                .x
                .iter()
                .map(|r| r.iter().map(|v| U::lit(v.to_f64_lossy())).collect())
                .collect(),
            y: self.y.iter().map(|v| U::lit(v.to_f64_lossy())).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_nonfinite_and_ragged_rows() {
        let names = vec!["a".to_string()];
        assert!(Dataset::new(names.clone(), "y".into(), vec![vec![f64::NAN]], vec![1.0]).is_err());
        assert!(Dataset::new(names.clone(), "y".into(), vec![vec![1.0, 2.0]], vec![1.0]).is_err());
        assert!(Dataset::new(names, "y".into(), vec![vec![1.0]], vec![]).is_err());
    }

    #[test]
    fn ranges_and_subset() {
        let d = Dataset::new(
            vec!["a".into(), "b".into()],
            "y".into(),
            vec![vec![1.0, 5.0], vec![-2.0, 7.0], vec![3.0, 6.0]],
            vec![0.0, 1.0, 2.0],
        )
        .unwrap();
        assert_eq!(d.input_ranges().unwrap(), vec![(-2.0, 3.0), (5.0, 7.0)]);
        let s = d.subset(&[2, 0]);
        assert_eq!(s.targets(), &[2.0, 0.0]);
        assert_eq!(s.inputs()[0], vec![3.0, 6.0]);
    }
}
