//! JSON model files.
//!
//! Numbers are written as the shortest decimal that parses back to the same
//! `f64`, so save/load preserves every parameter bit-for-bit.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dataset::NormalizationRecord;
use crate::error::{Error, Result};
use crate::fuzzy::{AnfisModel, InputVariable, MembershipFunction, Rule, PARAM_LAYOUT_VERSION};
use crate::scalar::Scalar;

pub const MODEL_FORMAT: &str = "neurofuzz-anfis";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub format: String,
    pub layout_version: String,
    pub input_count: usize,
    pub rule_count: usize,
    pub inputs: Vec<InputRecord>,
    pub rules: Vec<RuleRecord>,
    pub normalization: Option<NormalizationRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputRecord {
    pub name: String,
    pub mf_count: usize,
    pub centers: Vec<f64>,
    pub sigmas: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleRecord {
    pub premise: Vec<usize>,
    pub consequent: Vec<f64>,
}

impl ModelFile {
    pub fn from_model<T: Scalar>(model: &AnfisModel<T>, normalization: Option<NormalizationRecord>) -> Self {
        Self {
            format: MODEL_FORMAT.to_string(),
            layout_version: PARAM_LAYOUT_VERSION.to_string(),
            input_count: model.input_count(),
            rule_count: model.rule_count(),
            inputs: model
                .inputs()
                .iter()
                .map(|v| InputRecord {
                    name: v.name.clone(),
                    mf_count: v.mf_count(),
                    centers: v.mfs().iter().map(|m| m.center().to_f64_lossy()).collect(),
                    sigmas: v.mfs().iter().map(|m| m.sigma().to_f64_lossy()).collect(),
                })
                .collect(),
            rules: model
                .rules()
                .iter()
                .map(|r| RuleRecord {
                    premise: r.premise.clone(),
                    consequent: r.consequent.iter().map(|c| c.to_f64_lossy()).collect(),
                })
                .collect(),
            normalization,
        }
    }

    pub fn to_model<T: Scalar>(&self) -> Result<AnfisModel<T>> {
        if self.format != MODEL_FORMAT {
            return Err(Error::ModelFile(format!("unexpected format tag '{}'", self.format)));
        }
        if self.layout_version != PARAM_LAYOUT_VERSION {
            return Err(Error::ModelFile(format!(
                "unsupported parameter layout '{}' (expected '{PARAM_LAYOUT_VERSION}')",
                self.layout_version
            )));
        }
        if self.inputs.len() != self.input_count || self.rules.len() != self.rule_count {
            return Err(Error::ModelFile("declared counts disagree with the stored inputs/rules".into()));
        }
        let inputs = self
            .inputs
            .iter()
            .map(|rec| {
                if rec.centers.len() != rec.mf_count || rec.sigmas.len() != rec.mf_count {
                    return Err(Error::ModelFile(format!(
                        "input '{}' declares {} MFs but stores {} centers / {} sigmas",
                        rec.name,
                        rec.mf_count,
                        rec.centers.len(),
                        rec.sigmas.len()
                    )));
                }
                let mfs = rec
                    .centers
                    .iter()
                    .zip(&rec.sigmas)
                    .map(|(&c, &s)| MembershipFunction::new(T::lit(c), T::lit(s)))
                    .collect::<Result<Vec<_>>>()?;
                InputVariable::new(rec.name.clone(), mfs)
            })
            .collect::<Result<Vec<_>>>()?;
        let rules = self
            .rules
            .iter()
            .map(|r| Rule {
                premise: r.premise.clone(),
                consequent: r.consequent.iter().map(|&c| T::lit(c)).collect(),
            })
            .collect();
        let model = AnfisModel::from_parts(inputs, rules)?;
        if let Some(norm) = &self.normalization {
            if norm.input_count() != model.input_count() {
                return Err(Error::ModelFile(
                    "normalization record does not match the model's input count".into(),
                ));
            }
        }
        Ok(model)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model file is always serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::ModelFile(e.to_string()))
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut text = self.to_json();
        text.push('\n');
        std::fs::write(path, text).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }
}
