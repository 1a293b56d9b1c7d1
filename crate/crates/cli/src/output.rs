//! CSV and plot-data writers. Reals are written with 15 significant digits.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use crate::CliError;

pub fn real(x: f64) -> String {
    format!("{x:.14e}")
}

pub fn opt_real(x: Option<f64>) -> String {
    x.map(real).unwrap_or_else(|| "none".into())
}

fn open(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    match path {
        None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
        Some(p) => {
            let f = File::create(p).map_err(|e| CliError::Config(format!("--out {}: {e}", p.display())))?;
            Ok(Box::new(BufWriter::new(f)))
        }
    }
}

fn io_err(e: impl std::fmt::Display) -> CliError {
    CliError::Compute(format!("write failed: {e}"))
}

/// Writes a header, the rows, and an optional leading `# generated` line.
pub fn write_csv(path: Option<&Path>, timestamp: bool, header: &[&str], rows: &[Vec<String>]) -> Result<(), CliError> {
    let mut out = open(path)?;
    if timestamp {
        writeln!(out, "# generated {}", chrono::Utc::now().to_rfc3339()).map_err(io_err)?;
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header).map_err(io_err)?;
    for r in rows {
        w.write_record(r).map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

/// Two-column whitespace data; each block starts with a `# name` line and
/// blocks are separated by blank lines.
pub fn write_plot(path: &Path, blocks: &[(String, Vec<(f64, f64)>)]) -> Result<(), CliError> {
    let f = File::create(path).map_err(|e| CliError::Config(format!("--plot {}: {e}", path.display())))?;
    let mut out = BufWriter::new(f);
    for (i, (name, points)) in blocks.iter().enumerate() {
        if i > 0 {
            writeln!(out).map_err(io_err)?;
        }
        writeln!(out, "# {name}").map_err(io_err)?;
        for (x, y) in points {
            writeln!(out, "{} {}", real(*x), real(*y)).map_err(io_err)?;
        }
    }
    out.flush().map_err(io_err)
}

pub fn write_json(path: &Path, value: &serde_json::Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(io_err)?;
    std::fs::write(path, text + "\n").map_err(|e| CliError::Config(format!("summary {}: {e}", path.display())))
}
