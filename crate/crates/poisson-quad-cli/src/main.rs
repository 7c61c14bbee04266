//! Command-line front end for the quadrature and transform library.
//!
//! Exit codes: 0 on success, 1 for IO problems, 2 for invalid input,
//! 3 when a numerical routine gives up.

mod builtins;
mod commands;
mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use poisson_quad::{Complex64, PolynomialFamily};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Validation(String),
    Numerical(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(m) => write!(f, "io error: {m}"),
            CliError::Validation(m) => write!(f, "invalid input: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl From<poisson_quad::Error> for CliError {
    fn from(e: poisson_quad::Error) -> Self {
        use poisson_quad::Error::*;
        match e {
            InvalidParameter(_)
            | OrderTooLarge { .. }
            | Domain(_)
            | UnsupportedZ(_)
            | InsufficientNodes { .. } => CliError::Validation(e.to_string()),
            Overflow { .. }
            | ConvergenceDomain(_)
            | NonConvergence { .. }
            | EigenFailure { .. }
            | SingularKernel(_)
            | Accuracy { .. }
            | NonFiniteSample { .. } => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FamilyKind {
    Hermite,
    Laguerre,
    Jacobi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct FamilySpec {
    /// Orthogonal polynomial family generating the rule.
    #[arg(long, value_enum)]
    pub family: FamilyKind,
    /// Weight exponent for laguerre (x^alpha) and jacobi ((1-x)^alpha).
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Second jacobi weight exponent ((1+x)^beta).
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
}

impl FamilySpec {
    pub fn resolve(&self) -> CliResult<PolynomialFamily> {
        let fam = match self.family {
            FamilyKind::Hermite => {
                if self.alpha.is_some() || self.beta.is_some() {
                    return Err(CliError::Validation(
                        "--alpha/--beta do not apply to the hermite family".into(),
                    ));
                }
                PolynomialFamily::Hermite
            }
            FamilyKind::Laguerre => {
                if self.beta.is_some() {
                    return Err(CliError::Validation(
                        "--beta does not apply to the laguerre family".into(),
                    ));
                }
                PolynomialFamily::Laguerre {
                    alpha: self.alpha.unwrap_or(0.0),
                }
            }
            FamilyKind::Jacobi => PolynomialFamily::Jacobi {
                alpha: self.alpha.unwrap_or(0.0),
                beta: self.beta.unwrap_or(0.0),
            },
        };
        fam.validate()?;
        Ok(fam)
    }
}

fn parse_z(s: &str) -> Result<Complex64, String> {
    let mut parts = s.splitn(2, ',');
    let re: f64 = parts
        .next()
        .unwrap_or("")
        .trim()
        .parse()
        .map_err(|_| format!("cannot parse real part of z from {s:?}"))?;
    let im: f64 = match parts.next() {
        Some(p) => p
            .trim()
            .parse()
            .map_err(|_| format!("cannot parse imaginary part of z from {s:?}"))?,
        None => 0.0,
    };
    if !re.is_finite() || !im.is_finite() {
        return Err("z must be finite".into());
    }
    Ok(Complex64::new(re, im))
}

#[derive(Args, Debug)]
pub struct NodesArgs {
    #[command(flatten)]
    pub family: FamilySpec,
    /// Number of quadrature nodes.
    #[arg(long)]
    pub n: usize,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct MatrixArgs {
    #[command(flatten)]
    pub family: FamilySpec,
    /// Number of quadrature nodes.
    #[arg(long)]
    pub n: usize,
    /// Transform parameter, "re" or "re,im".
    #[arg(long, value_parser = parse_z, allow_hyphen_values = true)]
    pub z: Complex64,
    /// Restrict output to this row (1-based).
    #[arg(long)]
    pub j: Option<usize>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct QuadArgs {
    #[command(flatten)]
    pub family: FamilySpec,
    /// Number of quadrature nodes.
    #[arg(long)]
    pub n: usize,
    /// Transform parameter, "re" or "re,im".
    #[arg(long, value_parser = parse_z, allow_hyphen_values = true)]
    pub z: Complex64,
    /// Input function: expneg, besselj, jacobi_weighted, gaussian, poly,
    /// or @FILE with one sample per line ("re" or "re,im").
    #[arg(long)]
    pub f: String,
    /// Frequency/scale parameter for expneg and besselj.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub c: f64,
    /// Polynomial degree for jacobi_weighted and poly.
    #[arg(long, default_value_t = 0)]
    pub degree: usize,
    /// Check each output against direct numerical integration.
    #[arg(long)]
    pub oracle: bool,
    /// Restrict output to this node (1-based).
    #[arg(long)]
    pub j: Option<usize>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Figure {
    /// Hermite rule versus the closed-form image of exp(-ix), z sweep.
    Fig1,
    /// Laguerre rule versus the closed-form Bessel image at z = 0.1.
    Fig2,
    /// Jacobi rule scaling an envelope-weighted polynomial at z = 0.25.
    Fig3,
}

#[derive(Args, Debug)]
pub struct ReproduceArgs {
    #[arg(value_enum)]
    pub figure: Figure,
    /// Write the data rows to this file; the error norm still prints.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Print the nodes and weights of a quadrature rule.
    Nodes(NodesArgs),
    /// Print the discrete transform matrix T(z).
    Matrix(MatrixArgs),
    /// Apply the discrete transform to a function or sample file.
    Quad(QuadArgs),
    /// Re-run one of the three worked examples and report its error norm.
    Reproduce(ReproduceArgs),
}

/// Gauss-type quadrature rules for Poisson integral transforms.
#[derive(Parser, Debug)]
#[command(name = "poisson-quad", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.cmd {
        Cmd::Nodes(args) => commands::nodes(&args),
        Cmd::Matrix(args) => commands::matrix(&args),
        Cmd::Quad(args) => commands::quad(&args),
        Cmd::Reproduce(args) => commands::reproduce(&args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                CliError::Io(_) => 1,
                CliError::Validation(_) => 2,
                CliError::Numerical(_) => 3,
            })
        }
    }
}
