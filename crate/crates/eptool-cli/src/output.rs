//! CSV and JSON emission. Floats are written with Rust's shortest
//! round-trip formatting, so identical inputs produce identical bytes.

use std::fmt::Write as _;
use std::path::Path;

use eptool::analysis::TimeSeries;

use crate::CliError;

/// Render one sampled series as CSV: a comment line naming the measure,
/// model, and state inputs, then a `t,<measure>` header and the rows.
pub fn series_csv(series: &TimeSeries, params_summary: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# {} | {} | {}",
        series.measure.name(),
        series.model.summary(),
        params_summary
    );
    let _ = writeln!(out, "t,{}", series.measure.name());
    for (i, v) in series.values.iter().enumerate() {
        let _ = writeln!(out, "{},{}", series.grid.at(i), v);
    }
    out
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent).map_err(|e| {
                CliError::compute(format!("cannot create {}: {e}", parent.display()))
            })?;
        }
    }
    std::fs::write(path, text)
        .map_err(|e| CliError::compute(format!("cannot write {}: {e}", path.display())))
}

/// Pretty JSON plus trailing newline; also used for stdout output.
pub fn to_json<T: serde::Serialize>(value: &T) -> Result<String, CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::compute(format!("serialization failed: {e}")))?;
    text.push('\n');
    Ok(text)
}

/// Emit a report to `--out` if given, stdout otherwise.
pub fn emit_json<T: serde::Serialize>(value: &T, out: Option<&Path>) -> Result<(), CliError> {
    let text = to_json(value)?;
    match out {
        Some(path) => write_text(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
