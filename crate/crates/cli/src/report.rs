//! Plain-text comparison tables.

use crate::pipeline::TrainReport;

pub const COLUMNS: [&str; 5] = ["Method", "Structure", "RMSE", "MAE", "Deviation"];

/// Formats `v` with four significant digits; very large or small
/// magnitudes switch to scientific notation.
pub fn sig4(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v:.3}");
    }
    let exp = v.abs().log10().floor() as i32;
    if !(-4..6).contains(&exp) {
        return format!("{v:.3e}");
    }
    let text = format!("{:.*}", (3 - exp).max(0) as usize, v);
    // Rounding may carry into a new leading digit (9.9996 -> 10.000).
    let rounded: f64 = text.parse().unwrap_or(v);
    let exp2 = rounded.abs().log10().floor() as i32;
    if exp2 != exp {
        format!("{:.*}", (3 - exp2).max(0) as usize, rounded)
    } else {
        text
    }
}

/// One table (`TRAINING RESULTS` or `TESTING RESULTS`) with aligned columns.
/// `Deviation` is the largest absolute deviation in the target's units.
pub fn table(title: &str, reports: &[TrainReport], test: bool) -> String {
    let rows: Vec<[String; 5]> = reports
        .iter()
        .map(|r| {
            let m = if test { &r.test } else { &r.train };
            [
                r.method.clone(),
                r.structure.clone(),
                sig4(m.rmse),
                sig4(m.mae),
                sig4(m.deviation_max),
            ]
        })
        .collect();
    let mut widths = COLUMNS.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: &[String]| {
        let mut s = String::new();
        for (i, (cell, w)) in cells.iter().zip(widths).enumerate() {
            if i > 0 {
                s.push_str(" | ");
            }
            s.push_str(&format!("{cell:<w$}"));
        }
        s.trim_end().to_string()
    };
    let mut out = format!("{title}\n");
    out.push_str(&line(&COLUMNS.map(String::from)));
    out.push('\n');
    let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
    out.push_str(&rule.join("-+-"));
    out.push('\n');
    for row in &rows {
        out.push_str(&line(row));
        out.push('\n');
    }
    out
}

/// Full-precision companion to the text tables.
pub fn table_csv(reports: &[TrainReport]) -> String {
    let mut out = String::from("table,method,structure,rmse,mae,deviation_max,deviation_mean\n");
    for (name, test) in [("train", false), ("test", true)] {
        for r in reports {
            let m = if test { &r.test } else { &r.train };
            out.push_str(&format!(
                "{name},{},\"{}\",{:?},{:?},{:?},{:?}\n",
                r.method, r.structure, m.rmse, m.mae, m.deviation_max, m.deviation_mean
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_significant_digits() {
        assert_eq!(sig4(0.012346), "0.01235");
        assert_eq!(sig4(1.5), "1.500");
        assert_eq!(sig4(123.456), "123.5");
        assert_eq!(sig4(9.99996), "10.00");
        assert_eq!(sig4(0.0), "0.000");
        assert_eq!(sig4(2.5e-7), "2.500e-7");
        assert_eq!(sig4(-0.5), "-0.5000");
    }
}
