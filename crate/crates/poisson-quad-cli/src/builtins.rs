//! Input functions for the quad subcommand: a handful of named test
//! functions plus sample files.

use crate::{CliError, CliResult, QuadArgs};
use poisson_quad::specfun::bessel_j;
use poisson_quad::{Complex64, PolynomialFamily, MAX_RAW_DEGREE};
use std::fs;

pub enum Input {
    /// Closed-form function; usable with --oracle.
    Function(Box<dyn Fn(f64) -> Complex64>),
    /// Values sampled at the rule nodes, in node order.
    Samples(Vec<Complex64>),
}

pub fn resolve(args: &QuadArgs, family: PolynomialFamily) -> CliResult<Input> {
    if let Some(path) = args.f.strip_prefix('@') {
        return Ok(Input::Samples(read_samples(path, args.n)?));
    }
    let c = args.c;
    if !c.is_finite() {
        return Err(CliError::Validation("--c must be finite".into()));
    }
    let f: Box<dyn Fn(f64) -> Complex64> = match args.f.as_str() {
        "expneg" => Box::new(move |x| Complex64::new((c * x).cos(), -(c * x).sin())),
        "gaussian" => Box::new(|x| Complex64::new((-0.5 * x * x).exp(), 0.0)),
        "poly" => {
            let d = check_degree(args.degree)?;
            Box::new(move |x| Complex64::new(x.powi(d), 0.0))
        }
        "besselj" => {
            let PolynomialFamily::Laguerre { alpha } = family else {
                return Err(CliError::Validation(
                    "besselj input requires --family laguerre".into(),
                ));
            };
            Box::new(move |x| {
                let v = bessel_j(alpha, c * x.sqrt()).unwrap_or(f64::NAN);
                Complex64::new(x.powf(0.25) * v, 0.0)
            })
        }
        "jacobi_weighted" => {
            let PolynomialFamily::Jacobi { .. } = family else {
                return Err(CliError::Validation(
                    "jacobi_weighted input requires --family jacobi".into(),
                ));
            };
            check_degree(args.degree)?;
            let degree = args.degree;
            Box::new(move |x| {
                let v = family
                    .eval(degree, x)
                    .map(|p| family.envelope(x) * p)
                    .unwrap_or(f64::NAN);
                Complex64::new(v, 0.0)
            })
        }
        other => {
            return Err(CliError::Validation(format!(
                "unknown input function {other:?} (expected expneg, besselj, \
                 jacobi_weighted, gaussian, poly, or @FILE)"
            )))
        }
    };
    Ok(Input::Function(f))
}

fn check_degree(degree: usize) -> CliResult<i32> {
    if degree > MAX_RAW_DEGREE {
        return Err(CliError::Validation(format!(
            "--degree {degree} exceeds the supported maximum {MAX_RAW_DEGREE}"
        )));
    }
    Ok(degree as i32)
}

fn read_samples(path: &str, n: usize) -> CliResult<Vec<Complex64>> {
    let text = fs::read_to_string(path)?;
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.splitn(2, ',');
        let parse = |s: Option<&str>, what: &str| -> CliResult<f64> {
            s.unwrap_or("0").trim().parse().map_err(|_| {
                CliError::Validation(format!(
                    "{path}:{}: cannot parse {what} from {line:?}",
                    lineno + 1
                ))
            })
        };
        let re = parse(parts.next(), "real part")?;
        let im = parse(parts.next().or(Some("0")), "imaginary part")?;
        values.push(Complex64::new(re, im));
    }
    if values.len() != n {
        return Err(CliError::Validation(format!(
            "sample file {path} holds {} values but the rule has {n} nodes",
            values.len()
        )));
    }
    Ok(values)
}
