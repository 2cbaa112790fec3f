use crate::error::{Error, Result};
use crate::fuzzy::membership::InputVariable;
use crate::scalar::Scalar;

/// A first-order Sugeno rule: one membership index per input and a linear
/// consequent `f = c_0 x_0 + ... + c_{n-1} x_{n-1} + c_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule<T> {
    pub premise: Vec<usize>,
    pub consequent: Vec<T>,
}

impl<T: Scalar> Rule<T> {
    #[inline]
    pub fn output(&self, x: &[T]) -> T {
        let (constant, slopes) = self.consequent.split_last().expect("consequent is never empty");
        slopes
            .iter()
            .zip(x)
            .fold(*constant, |acc, (&c, &xi)| acc + c * xi)
    }
}

/// Layer-by-layer record of one forward pass.
#[derive(Debug, Clone, PartialEq)]
pub struct ForwardTrace<T> {
    /// Layer 1: `mf_values[input][mf]`.
    pub mf_values: Vec<Vec<T>>,
    /// Layer 2: product of each rule's premise degrees.
    pub firing_strengths: Vec<T>,
    /// Layer 3.
    pub normalized_strengths: Vec<T>,
    /// Linear consequent value of each rule before weighting.
    pub rule_outputs: Vec<T>,
    /// Layer 5.
    pub output: T,
    pub total_firing: T,
}

/// Grid-partitioned ANFIS: every combination of one membership function
/// per input forms exactly one rule.
///
/// Rule `r` corresponds to the mixed-radix digits of `r` with input 0 as
/// the most significant digit, so the last input varies fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct AnfisModel<T> {
    inputs: Vec<InputVariable<T>>,
    rules: Vec<Rule<T>>,
}

impl<T: Scalar> AnfisModel<T> {
    /// Builds the full grid rule base with zero consequents.
    pub fn grid(inputs: Vec<InputVariable<T>>) -> Result<Self> {
        if inputs.is_empty() {
            return Err(Error::invalid("a model needs at least one input"));
        }
        let n = inputs.len();
        let counts: Vec<usize> = inputs.iter().map(|v| v.mf_count()).collect();
        let rules = grid_premises(&counts)
            .into_iter()
            .map(|premise| Rule {
                premise,
                consequent: vec![T::zero(); n + 1],
            })
            .collect();
        Ok(Self { inputs, rules })
    }

    /// Grid model whose membership functions are spread over the given
    /// per-input `(min, max)` ranges.
    pub fn init_grid(names: &[String], ranges: &[(T, T)], mf_count: usize) -> Result<Self> {
        if names.len() != ranges.len() {
            return Err(Error::LengthMismatch {
                what: "input ranges",
                expected: names.len(),
                got: ranges.len(),
            });
        }
        let inputs = names
            .iter()
            .zip(ranges)
            .map(|(name, &(lo, hi))| InputVariable::grid(name.clone(), lo, hi, mf_count))
            .collect::<Result<Vec<_>>>()?;
        Self::grid(inputs)
    }

    /// Assembles a model from explicit rules, checking that they form the
    /// complete grid in canonical order.
    pub fn from_parts(inputs: Vec<InputVariable<T>>, rules: Vec<Rule<T>>) -> Result<Self> {
        let mut model = Self::grid(inputs)?;
        if rules.len() != model.rules.len() {
            return Err(Error::LengthMismatch {
                what: "rule count",
                expected: model.rules.len(),
                got: rules.len(),
            });
        }
        let n = model.input_count();
        for (idx, (slot, rule)) in model.rules.iter_mut().zip(rules).enumerate() {
            if rule.premise != slot.premise {
                return Err(Error::invalid(format!(
                    "rule {idx} premise {:?} breaks the grid order (expected {:?})",
                    rule.premise, slot.premise
                )));
            }
            if rule.consequent.len() != n + 1 {
                return Err(Error::LengthMismatch {
                    what: "rule consequent",
                    expected: n + 1,
                    got: rule.consequent.len(),
                });
            }
            if rule.consequent.iter().any(|c| !c.is_finite()) {
                return Err(Error::invalid(format!("rule {idx} has a non-finite consequent")));
            }
            slot.consequent = rule.consequent;
        }
        Ok(model)
    }

    pub fn inputs(&self) -> &[InputVariable<T>] {
        &self.inputs
    }

    pub(crate) fn inputs_mut(&mut self) -> &mut [InputVariable<T>] {
        &mut self.inputs
    }

    pub fn rules(&self) -> &[Rule<T>] {
        &self.rules
    }

    pub fn input_count(&self) -> usize {
        self.inputs.len()
    }

    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    pub fn mf_counts(&self) -> Vec<usize> {
        self.inputs.iter().map(|v| v.mf_count()).collect()
    }

    pub fn total_mf_count(&self) -> usize {
        self.inputs.iter().map(|v| v.mf_count()).sum()
    }

    /// Number of consequent coefficients per rule.
    pub fn consequent_width(&self) -> usize {
        self.inputs.len() + 1
    }

    /// Row-major `rule_count x (input_count + 1)` consequent matrix.
    pub fn consequents(&self) -> Vec<T> {
        self.rules.iter().flat_map(|r| r.consequent.iter().copied()).collect()
    }

    pub fn set_consequents(&mut self, coefficients: &[T]) -> Result<()> {
        let width = self.consequent_width();
        let expected = width * self.rules.len();
        if coefficients.len() != expected {
            return Err(Error::LengthMismatch {
                what: "consequent vector",
                expected,
                got: coefficients.len(),
            });
        }
        for (rule, chunk) in self.rules.iter_mut().zip(coefficients.chunks_exact(width)) {
            rule.consequent.copy_from_slice(chunk);
        }
        Ok(())
    }

    fn check_point(&self, x: &[T]) -> Result<()> {
        if x.len() != self.input_count() {
            return Err(Error::LengthMismatch {
                what: "input vector",
                expected: self.input_count(),
                got: x.len(),
            });
        }
        if let Some(bad) = x.iter().position(|v| !v.is_finite()) {
            return Err(Error::invalid(format!("input component {bad} is not finite")));
        }
        Ok(())
    }

    /// Evaluates all five layers at `x`.
    pub fn forward(&self, x: &[T]) -> Result<ForwardTrace<T>> {
        self.check_point(x)?;
        let mf_values: Vec<Vec<T>> = self
            .inputs
            .iter()
            .zip(x)
            .map(|(var, &xi)| var.mfs().iter().map(|mf| mf.degree(xi)).collect())
            .collect();
        let firing_strengths: Vec<T> = self
            .rules
            .iter()
            .map(|rule| {
                rule.premise
                    .iter()
                    .enumerate()
                    .fold(T::one(), |acc, (j, &m)| acc * mf_values[j][m])
            })
            .collect();
        let total_firing: T = firing_strengths.iter().copied().sum();
        if !(total_firing >= T::degenerate_threshold()) {
            return Err(degenerate(x));
        }
        let normalized_strengths: Vec<T> =
            firing_strengths.iter().map(|&w| w / total_firing).collect();
        let rule_outputs: Vec<T> = self.rules.iter().map(|r| r.output(x)).collect();
        let output = normalized_strengths
            .iter()
            .zip(&rule_outputs)
            .map(|(&w, &f)| w * f)
            .sum();
        Ok(ForwardTrace {
            mf_values,
            firing_strengths,
            normalized_strengths,
            rule_outputs,
            output,
            total_firing,
        })
    }

    /// Output only; same arithmetic as [`forward`](Self::forward).
    pub fn predict(&self, x: &[T]) -> Result<T> {
        Ok(self.forward(x)?.output)
    }

    /// Writes layer-3 values for `x` into `out` without building a trace.
    /// `scratch` is resized to hold the per-input membership degrees.
    pub(crate) fn normalized_strengths_into(
        &self,
        x: &[T],
        scratch: &mut Vec<T>,
        out: &mut [T],
    ) -> Result<()> {
        self.check_point(x)?;
        scratch.clear();
        let mut offsets = Vec::with_capacity(self.inputs.len());
        for (var, &xi) in self.inputs.iter().zip(x) {
            offsets.push(scratch.len());
            scratch.extend(var.mfs().iter().map(|mf| mf.degree(xi)));
        }
        let mut total = T::zero();
        for (slot, rule) in out.iter_mut().zip(&self.rules) {
            let w = rule
                .premise
                .iter()
                .zip(&offsets)
                .fold(T::one(), |acc, (&m, &off)| acc * scratch[off + m]);
            *slot = w;
            total = total + w;
        }
        if !(total >= T::degenerate_threshold()) {
            return Err(degenerate(x));
        }
        for slot in out.iter_mut() {
            *slot = *slot / total;
        }
        Ok(())
    }
}

fn degenerate<T: Scalar>(x: &[T]) -> Error {
    Error::DegenerateInput {
        point: x.iter().map(|v| v.to_f64_lossy()).collect(),
    }
}

/// All premise index tuples in canonical grid order.
pub fn grid_premises(counts: &[usize]) -> Vec<Vec<usize>> {
    let total: usize = counts.iter().product();
    (0..total)
        .map(|mut r| {
            let mut premise = vec![0; counts.len()];
            for (slot, &c) in premise.iter_mut().zip(counts).rev() {
                *slot = r % c;
                r /= c;
            }
            premise
        })
        .collect()
}
