//! Shared output plumbing: stdout-or-file sinks and the two formats.

use crate::{CliResult, Format};
use poisson_quad::{Complex64, PolynomialFamily};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

pub fn sink(out: &Option<PathBuf>) -> CliResult<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(std::io::stdout().lock()),
    })
}

pub fn family_label(fam: PolynomialFamily) -> String {
    match fam {
        PolynomialFamily::Hermite => "hermite".into(),
        PolynomialFamily::Laguerre { alpha } => format!("laguerre alpha={alpha}"),
        PolynomialFamily::Jacobi { alpha, beta } => {
            format!("jacobi alpha={alpha} beta={beta}")
        }
    }
}

pub fn fmt_f(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn fmt_z(z: Complex64) -> String {
    format!("{},{}", z.re, z.im)
}

pub fn json_complex(z: Complex64) -> serde_json::Value {
    serde_json::json!([z.re, z.im])
}

/// Writes either the CSV lines or the JSON document to the sink. The
/// CSV head lines are emitted as '#' comments above a column list.
pub struct Report {
    pub format: Format,
    pub head: Vec<String>,
    pub columns: &'static str,
    pub rows: Vec<String>,
    pub json: serde_json::Value,
}

impl Report {
    pub fn write(&self, w: &mut dyn Write) -> CliResult<()> {
        match self.format {
            Format::Csv => {
                for line in &self.head {
                    writeln!(w, "# {line}")?;
                }
                writeln!(w, "# columns: {}", self.columns)?;
                for row in &self.rows {
                    writeln!(w, "{row}")?;
                }
            }
            Format::Json => {
                serde_json::to_writer_pretty(&mut *w, &self.json)
                    .map_err(|e| crate::CliError::Io(e.to_string()))?;
                writeln!(w)?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

pub fn check_row_index(j: Option<usize>, n: usize) -> CliResult<Option<usize>> {
    match j {
        None => Ok(None),
        Some(j) if (1..=n).contains(&j) => Ok(Some(j - 1)),
        Some(j) => Err(crate::CliError::Validation(format!(
            "--j {j} is outside 1..={n}"
        ))),
    }
}
