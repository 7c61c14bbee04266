//! Gauss-type quadrature rules and discrete matrices for Poisson integral
//! transforms of the classical orthogonal polynomial families.
//!
//! The continuous objects are integral operators whose kernels are the
//! classical bilinear generating functions: the Mehler kernel for the
//! Hermite weight, the Hille-Hardy kernel for the Laguerre weight, and
//! the Bailey kernel (an Appell F4 series) for the Jacobi weight. Each
//! acts diagonally on the envelope-weighted polynomials, scaling degree
//! `n` by `z^n`.
//!
//! The discrete side replaces the integral with an N-point Gauss rule of
//! the matching family. Nodes and weights come from the symmetrised
//! three-term recurrence (eigenvalues and first eigenvector components
//! of the Jacobi matrix), and the transform matrix is `T(z) = U^T D U`
//! with `U` the orthonormal eigenvector matrix and `D = diag(z^n)`. The
//! construction keeps the defining algebra exact in floating point up to
//! rounding: `T(1) = I`, `T(z1) T(z2) = T(z1 z2)`, and the rows of `U`
//! are eigenvectors of every `T(z)`.
//!
//! ```
//! use poisson_quad::{DiscreteTransform, PolynomialFamily, QuadratureRule};
//! use num_complex::Complex64;
//!
//! let rule = QuadratureRule::new(PolynomialFamily::Hermite, 21).unwrap();
//! let t = DiscreteTransform::new(&rule, Complex64::new(0.5, 0.0));
//! let smoothed = t.apply_fn(|x| Complex64::new(x.cos(), -x.sin())).unwrap();
//! assert_eq!(smoothed.len(), 21);
//! ```
//!
//! The crate is `no_std`-compatible: disable the default `std` feature
//! and enable `libm` to get the float math from there instead.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]
// Forms like !(x > 0.0) are deliberate: unlike x <= 0.0 they also catch
// NaN, and the validation paths rely on that.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("either the `std` or the `libm` feature must be enabled");

extern crate alloc;

mod error;
pub mod nodes;
pub mod oracle;
pub mod orthopoly;
pub mod specfun;
pub mod transform;

pub use error::{Error, Result};
pub use nodes::{
    gauss_weights, spacing_diagnostics, zeros, JacobiMatrix, QuadratureRule, SpacingDiagnostics,
};
pub use num_complex::Complex64;
pub use orthopoly::{PolynomialFamily, RecurrenceCoeffs, MAX_RAW_DEGREE};
pub use transform::{bailey_kernel, hille_hardy_kernel, kernel, mehler_kernel, DiscreteTransform};
