use std::fs::File;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::measures::Measure;

use super::region::DIRECTION_PAIRS;
use super::runner::{StabilityRow, SweepResult};
use super::Axis;

/// Cell text for unstable or undefined values.
pub const SENTINEL: &str = "NaN";

/// Scientific notation, 12 significant digits.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        SENTINEL.into()
    } else {
        format!("{x:.11e}")
    }
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| SENTINEL.into(), format_float)
}

/// Creates the file and any missing parent directories.
fn create(path: &Path) -> Result<File> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|source| Error::Io { path: dir.to_path_buf(), source })?;
    }
    File::create(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

fn direction_columns() -> Vec<String> {
    DIRECTION_PAIRS.iter().map(|(a, b)| format!("dir_{a}_{b}")).collect()
}

fn sweep_header(axes: &[Axis], measures: &[Measure]) -> Vec<String> {
    let mut h: Vec<String> = axes.iter().map(|a| a.field.key().to_string()).collect();
    h.extend(["stable", "marginal", "max_re_lambda"].map(String::from));
    h.extend(measures.iter().map(Measure::name));
    h.push("monogamy_violation".into());
    h.extend(["ent_code", "ent_label", "tri_code", "tri_label", "steer_code", "steer_label"].map(String::from));
    h.extend(direction_columns());
    h.push("error".into());
    h
}

/// Writes sweep rows with the given measure columns to any writer.
pub fn write_sweep<W: Write>(out: W, result: &SweepResult, measures: &[Measure]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(sweep_header(&result.axes, measures))?;
    for row in &result.rows {
        let r = &row.report;
        let mut rec: Vec<String> = row.axis_values.iter().map(|&v| format_float(v)).collect();
        rec.push(r.stable.to_string());
        rec.push(r.marginal.to_string());
        rec.push(format_float(r.max_re_lambda));
        rec.extend(measures.iter().map(|m| opt(r.get(m))));
        rec.push(r.monogamy_violation.to_string());
        match &row.codes {
            Some(c) => {
                for code in [&c.entanglement, &c.tripartite, &c.steering] {
                    rec.push(code.bits.to_string());
                    rec.push(code.label.clone());
                }
                rec.extend(c.directions.iter().map(|d| d.label().to_string()));
            }
            None => rec.extend(std::iter::repeat_n(SENTINEL.to_string(), 6 + DIRECTION_PAIRS.len())),
        }
        rec.push(r.error.clone().unwrap_or_default());
        w.write_record(&rec)?;
    }
    w.flush().map_err(|e| Error::Csv(e.into()))?;
    Ok(())
}

/// Full sweep table with the result's own measure columns.
pub fn write_sweep_csv(path: &Path, result: &SweepResult) -> Result<()> {
    write_panel_csv(path, result, &result.measures)
}

/// Sweep table restricted to a subset of measure columns.
pub fn write_panel_csv(path: &Path, result: &SweepResult, measures: &[Measure]) -> Result<()> {
    write_sweep(create(path)?, result, measures)
}

pub fn write_stability_csv(path: &Path, axes: &[Axis], rows: &[StabilityRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(create(path)?);
    let mut h: Vec<String> = axes.iter().map(|a| a.field.key().to_string()).collect();
    h.extend(["max_re_lambda", "stable", "marginal", "error"].map(String::from));
    w.write_record(&h)?;
    for row in rows {
        let mut rec: Vec<String> = row.axis_values.iter().map(|&v| format_float(v)).collect();
        match &row.report {
            Some(s) => {
                rec.push(format_float(s.max_re));
                rec.push(s.stable.to_string());
                rec.push(s.marginal.to_string());
            }
            None => rec.extend([SENTINEL, "false", "false"].map(String::from)),
        }
        rec.push(row.error.clone().unwrap_or_default());
        w.write_record(&rec)?;
    }
    w.flush().map_err(|e| Error::Csv(e.into()))?;
    Ok(())
}
