use std::io::Write;
use std::path::Path;

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Reads a comma-separated file with a header row; the last column is the
/// target. Lines starting with `#` are comments.
pub fn load_csv<T: Scalar>(path: impl AsRef<Path>) -> Result<Dataset<T>> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .comment(Some(b'#'))
        .flexible(false)
        .trim(csv::Trim::All)
        .from_reader(file);

    let header = reader.headers().map_err(|e| csv_error(path, e))?.clone();
    if header.len() < 2 {
        return Err(Error::Data {
            line: header.position().map_or(1, |p| p.line() as usize),
            column: None,
            msg: format!(
                "{}: need at least one input column and a target column, found {}",
                path.display(),
                header.len()
            ),
        });
    }
    let names: Vec<String> = header.iter().map(str::to_string).collect();
    let (input_names, target_name) = names.split_at(names.len() - 1);

    let mut x = Vec::new();
    let mut y = Vec::new();
    for (data_row, record) in reader.records().enumerate() {
        let record = record.map_err(|e| csv_error(path, e))?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let mut values = Vec::with_capacity(record.len());
        for (cell, name) in record.iter().zip(&names) {
            let v: f64 = cell.parse().map_err(|_| Error::Data {
                line,
                column: Some(name.clone()),
                msg: format!("data row {}: '{cell}' is not a number", data_row + 1),
            })?;
            if !v.is_finite() {
                return Err(Error::Data {
                    line,
                    column: Some(name.clone()),
                    msg: format!("data row {}: '{cell}' is not finite", data_row + 1),
                });
            }
            values.push(T::lit(v));
        }
        let target = values.pop().expect("header guarantees two columns");
        x.push(values);
        y.push(target);
    }
    Dataset::new(input_names.to_vec(), target_name[0].clone(), x, y)
}

fn csv_error(path: &Path, err: csv::Error) -> Error {
    let line = err.position().map_or(0, |p| p.line() as usize);
    let msg = match err.kind() {
        csv::ErrorKind::UnequalLengths { expected_len, len, .. } => {
            format!("{}: row has {len} fields, header has {expected_len}", path.display())
        }
        _ => format!("{}: {err}", path.display()),
    };
    Error::Data {
        line,
        column: None,
        msg,
    }
}

/// Writes `data` with an optional leading `# comment` line. Values use the
/// shortest representation that parses back to the same bits.
pub fn save_csv<T: Scalar>(data: &Dataset<T>, path: impl AsRef<Path>, comment: Option<&str>) -> Result<()> {
    let path = path.as_ref();
    let mut out = String::new();
    if let Some(c) = comment {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    out.push_str(&data.input_names().join(","));
    out.push(',');
    out.push_str(data.target_name());
    out.push('\n');
    for (row, t) in data.inputs().iter().zip(data.targets()) {
        for v in row {
            out.push_str(&format!("{v:?},"));
        }
        out.push_str(&format!("{t:?}\n"));
    }
    std::fs::File::create(path)
        .and_then(|mut f| f.write_all(out.as_bytes()))
        .map_err(|e| Error::io(path, e))
}
