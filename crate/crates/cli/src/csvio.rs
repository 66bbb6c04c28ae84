//! CSV reading and writing for the `nodes`, `interp` and `curve` commands.

use std::io::Write;
use std::path::Path;

use gshape::harness::format_float;

use crate::CliError;

/// A parsed CSV of floats with a header row.
pub struct FloatTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

pub fn read_table(path: &Path) -> Result<FloatTable, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Runtime(format!("cannot read {}: {e}", path.display())))?;
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: Vec<String> = lines
        .next()
        .ok_or_else(|| CliError::Config(format!("{}: empty CSV", path.display())))?
        .split(',')
        .map(|s| s.trim().to_string())
        .collect();
    let mut rows = Vec::new();
    for (idx, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != header.len() {
            return Err(CliError::Config(format!(
                "{}: row {} has {} fields, header has {}",
                path.display(),
                idx + 2,
                fields.len(),
                header.len()
            )));
        }
        let values = fields
            .iter()
            .map(|f| {
                f.parse::<f64>().map_err(|_| {
                    CliError::Config(format!(
                        "{}: row {}: {f:?} is not a number",
                        path.display(),
                        idx + 2
                    ))
                })
            })
            .collect::<Result<Vec<f64>, CliError>>()?;
        rows.push(values);
    }
    Ok(FloatTable { header, rows })
}

pub fn write_table<W: Write + ?Sized>(
    out: &mut W,
    header: &[String],
    rows: impl Iterator<Item = Vec<f64>>,
) -> std::io::Result<()> {
    writeln!(out, "{}", header.join(","))?;
    for row in rows {
        let line: Vec<String> = row.iter().map(|&v| format_float(v)).collect();
        writeln!(out, "{}", line.join(","))?;
    }
    out.flush()
}

/// Column names `x1,...,xn`.
pub fn coordinate_header(dimension: usize) -> Vec<String> {
    (1..=dimension).map(|i| format!("x{i}")).collect()
}
