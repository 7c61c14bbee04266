use alloc::string::String;
use core::fmt;
use num_complex::Complex64;

/// Errors raised while building quadrature rules, evaluating kernels and
/// special functions, or running the direct integration oracle.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A family parameter or option violates its documented constraint.
    InvalidParameter(String),
    /// Raw polynomial evaluation was requested past the overflow guard.
    OrderTooLarge { n: usize, max: usize },
    /// Argument lies outside the mathematical domain of the function.
    Domain(String),
    /// The result magnitude exceeds the double range. `ln_value` is the
    /// natural log of the magnitude so callers can keep working in log scale.
    Overflow { ln_value: f64 },
    /// Series arguments fall outside the convergence region.
    ConvergenceDomain(String),
    /// A series did not meet its tolerance within the term budget.
    NonConvergence { terms: usize },
    /// The tridiagonal eigenvalue iteration did not converge.
    EigenFailure { iterations: usize },
    /// The kernel has a non-removable singularity at the requested z.
    SingularKernel(String),
    /// The requested z is outside the supported set for this kernel.
    UnsupportedZ(String),
    /// A node window contains too few nodes for the requested diagnostic.
    InsufficientNodes { found: usize },
    /// Adaptive integration stopped before reaching the tolerance. The best
    /// estimate and its error bound are attached.
    Accuracy { estimate: Complex64, bound: f64 },
    /// A sampled function value is not finite.
    NonFiniteSample { index: usize },
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::OrderTooLarge { n, max } => {
                write!(f, "order {n} exceeds the evaluation guard {max}")
            }
            Error::Domain(msg) => write!(f, "argument outside domain: {msg}"),
            Error::Overflow { ln_value } => {
                write!(f, "result overflows f64 (ln of magnitude = {ln_value})")
            }
            Error::ConvergenceDomain(msg) => {
                write!(f, "outside series convergence region: {msg}")
            }
            Error::NonConvergence { terms } => {
                write!(f, "series did not converge within {terms} terms")
            }
            Error::EigenFailure { iterations } => {
                write!(f, "eigenvalue iteration failed after {iterations} sweeps")
            }
            Error::SingularKernel(msg) => write!(f, "kernel singular: {msg}"),
            Error::UnsupportedZ(msg) => write!(f, "unsupported z: {msg}"),
            Error::InsufficientNodes { found } => {
                write!(f, "window contains {found} nodes, need at least 2")
            }
            Error::Accuracy { estimate, bound } => write!(
                f,
                "integration tolerance not met (estimate {estimate}, bound {bound})"
            ),
            Error::NonFiniteSample { index } => {
                write!(f, "sample {index} is not finite")
            }
        }
    }
}

impl core::error::Error for Error {}
