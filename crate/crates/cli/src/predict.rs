use std::fmt::Write as _;
use std::path::Path;

use neurofuzz::{Anfis, ModelFile};

use crate::error::{CliError, Context, ErrorKind};
use crate::pipeline::write_file;

/// Applies a saved model to a CSV file and writes `row,predicted` (plus
/// `actual,deviation` when the input carries the target column). Returns the
/// number of rows predicted.
///
/// Input columns must be the model's inputs in order, optionally followed by
/// one target column. The stored normalization is applied to the inputs and
/// inverted on the output.
pub fn cmd_predict(model_path: &Path, input: &Path, output: &Path) -> Result<usize, CliError> {
    let file = ModelFile::load(model_path).stage("load model")?;
    let model: Anfis = file.to_model().stage("load model")?;
    let names: Vec<&str> = model.inputs().iter().map(|v| v.name.as_str()).collect();
    let stage = format!("read {}", input.display());
    let data_err = |msg: String| CliError::new(ErrorKind::Data, stage.clone(), msg);

    let handle = std::fs::File::open(input)
        .map_err(|e| CliError::new(ErrorKind::Io, stage.clone(), e.to_string()))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(handle);
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| data_err(e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    let with_target = header.len() == names.len() + 1;
    if !(header.len() == names.len() || with_target) || header[..names.len()] != names[..] {
        return Err(data_err(format!(
            "expected columns [{}] optionally followed by a target column, found [{}]",
            names.join(", "),
            header.join(", ")
        )));
    }

    let mut out = String::from(if with_target { "row,predicted,actual,deviation\n" } else { "row,predicted\n" });
    let mut count = 0;
    for (row, record) in reader.records().enumerate() {
        let record = record.map_err(|e| data_err(e.to_string()))?;
        let line = record.position().map_or(0, |p| p.line());
        let values = record
            .iter()
            .zip(&header)
            .map(|(cell, name)| {
                cell.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| data_err(format!("line {line}, column '{name}': '{cell}' is not a finite number")))
            })
            .collect::<Result<Vec<f64>, _>>()?;
        let x = &values[..names.len()];
        let predicted = match &file.normalization {
            Some(rec) => {
                let xn = rec.normalize_inputs(x).stage(&stage)?;
                rec.denormalize_target(model.predict(&xn).stage(&format!("predict line {line}"))?)
            }
            None => model.predict(x).stage(&format!("predict line {line}"))?,
        };
        let _ = write!(out, "{row},{predicted:?}");
        if with_target {
            let actual = values[names.len()];
            let _ = write!(out, ",{actual:?},{:?}", predicted - actual);
        }
        out.push('\n');
        count += 1;
    }
    write_file(output, &out)?;
    Ok(count)
}
