//! The three classical families on their natural weights: Hermite on
//! `exp(-x^2)` over the line, generalized Laguerre on `x^alpha exp(-x)`
//! over the half line, Jacobi on `(1-x)^alpha (1+x)^beta` over `(-1, 1)`.
//!
//! Everything downstream is driven by the monic-free three-term recurrence
//!
//! ```text
//! x P_n = A_n P_{n+1} + B_n P_n + C_{n-1} P_{n-1}
//! ```
//!
//! together with the normalisation constants `s_n = 1 / ||P_n||` in the
//! convention where the weighted L2 norms absorb the total measure. Large
//! orders are handled in log-magnitude plus sign form throughout.

use crate::error::{Error, Result};
use crate::specfun::ln_gamma_pos;
use alloc::{format, vec::Vec};
#[allow(unused_imports)]
use num_traits::Float;

/// Coefficients of `x P_n = A_n P_{n+1} + B_n P_n + C_{n-1} P_{n-1}`.
///
/// `c_prev` is reported as 0 at `n = 0` since `P_{-1}` vanishes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecurrenceCoeffs {
    pub a: f64,
    pub b: f64,
    pub c_prev: f64,
}

/// One of the classical orthogonal polynomial families, with its weight
/// parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PolynomialFamily {
    Hermite,
    Laguerre { alpha: f64 },
    Jacobi { alpha: f64, beta: f64 },
}

/// Guard on raw polynomial evaluation; magnitudes grow factorially with
/// the degree, so higher orders must go through the orthonormal sequence.
pub const MAX_RAW_DEGREE: usize = 60;

impl PolynomialFamily {
    /// Checks the weight-integrability constraints (`alpha > -1`, and
    /// `beta > -1` for Jacobi).
    pub fn validate(&self) -> Result<()> {
        match *self {
            PolynomialFamily::Hermite => Ok(()),
            PolynomialFamily::Laguerre { alpha } => {
                if alpha.is_finite() && alpha > -1.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter(format!(
                        "Laguerre weight needs alpha > -1, got {alpha}"
                    )))
                }
            }
            PolynomialFamily::Jacobi { alpha, beta } => {
                if alpha.is_finite() && beta.is_finite() && alpha > -1.0 && beta > -1.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter(format!(
                        "Jacobi weight needs alpha, beta > -1, got ({alpha}, {beta})"
                    )))
                }
            }
        }
    }

    /// Support of the orthogonality measure, as `(lower, upper)` with
    /// infinite endpoints where the support is unbounded.
    pub fn interval(&self) -> (f64, f64) {
        match self {
            PolynomialFamily::Hermite => (f64::NEG_INFINITY, f64::INFINITY),
            PolynomialFamily::Laguerre { .. } => (0.0, f64::INFINITY),
            PolynomialFamily::Jacobi { .. } => (-1.0, 1.0),
        }
    }

    /// Total mass of the weight over its support.
    pub fn total_measure(&self) -> f64 {
        match *self {
            PolynomialFamily::Hermite => core::f64::consts::PI.sqrt(),
            PolynomialFamily::Laguerre { alpha } => ln_gamma_pos(alpha + 1.0).exp(),
            PolynomialFamily::Jacobi { alpha, beta } => ((alpha + beta + 1.0)
                * core::f64::consts::LN_2
                + ln_gamma_pos(alpha + 1.0)
                + ln_gamma_pos(beta + 1.0)
                - ln_gamma_pos(alpha + beta + 2.0))
            .exp(),
        }
    }

    /// Square root of the weight with the Jacobian of the phase map folded
    /// in; the envelope under which the orthonormal polynomials
    /// equi-oscillate at large order.
    pub fn envelope(&self, x: f64) -> f64 {
        match *self {
            PolynomialFamily::Hermite => (-x * x / 2.0).exp(),
            PolynomialFamily::Laguerre { alpha } => x.powf(alpha / 2.0 + 0.25) * (-x / 2.0).exp(),
            PolynomialFamily::Jacobi { alpha, beta } => {
                (1.0 - x).powf(alpha / 2.0 + 0.25) * (1.0 + x).powf(beta / 2.0 + 0.25)
            }
        }
    }

    /// Phase coordinate in which the high-order zeros become equally
    /// spaced.
    pub fn sigma_map(&self, x: f64) -> f64 {
        match self {
            PolynomialFamily::Hermite => x,
            PolynomialFamily::Laguerre { .. } => x.sqrt(),
            PolynomialFamily::Jacobi { .. } => x.acos(),
        }
    }

    /// Asymptotic spacing of consecutive zeros in the phase coordinate at
    /// order `n`.
    pub fn asymptotic_gap(&self, n: usize) -> f64 {
        let nf = n as f64;
        match self {
            PolynomialFamily::Hermite => core::f64::consts::PI / (2.0 * nf).sqrt(),
            PolynomialFamily::Laguerre { .. } => core::f64::consts::PI / (2.0 * nf.sqrt()),
            PolynomialFamily::Jacobi { .. } => core::f64::consts::PI / nf,
        }
    }

    /// Amplitude constant of the large-order envelope form.
    pub fn limit_amplitude(&self) -> f64 {
        match *self {
            PolynomialFamily::Hermite => 1.0,
            PolynomialFamily::Laguerre { .. } => 0.5,
            PolynomialFamily::Jacobi { alpha, beta } => (-(alpha + beta + 1.0)).exp2(),
        }
    }

    /// Recurrence coefficients of equation `n`.
    pub fn recurrence_coeffs(&self, n: usize) -> RecurrenceCoeffs {
        let nf = n as f64;
        match *self {
            PolynomialFamily::Hermite => RecurrenceCoeffs {
                a: 0.5,
                b: 0.0,
                c_prev: nf,
            },
            PolynomialFamily::Laguerre { alpha } => RecurrenceCoeffs {
                a: -(nf + 1.0),
                b: 2.0 * nf + alpha + 1.0,
                c_prev: if n == 0 { 0.0 } else { -(nf + alpha) },
            },
            PolynomialFamily::Jacobi { alpha, beta } => {
                if n == 0 {
                    // The general expressions are 0/0 here whenever
                    // alpha + beta = 0; the limit is taken explicitly.
                    RecurrenceCoeffs {
                        a: 2.0 / (alpha + beta + 2.0),
                        b: (beta - alpha) / (alpha + beta + 2.0),
                        c_prev: 0.0,
                    }
                } else {
                    let t = 2.0 * nf + alpha + beta;
                    RecurrenceCoeffs {
                        a: 2.0 * (nf + 1.0) * (nf + alpha + beta + 1.0) / ((t + 1.0) * (t + 2.0)),
                        b: (beta * beta - alpha * alpha) / (t * (t + 2.0)),
                        c_prev: 2.0 * (nf + alpha) * (nf + beta) / (t * (t + 1.0)),
                    }
                }
            }
        }
    }

    /// Diagonal and off-diagonal entry of row `n` of the symmetrized
    /// recurrence: `b_n` and `sqrt(A_n C_n)` with `C_n` taken from
    /// equation `n + 1`.
    pub(crate) fn symmetric_coeffs(&self, n: usize) -> Result<(f64, f64)> {
        let row = self.recurrence_coeffs(n);
        let next = self.recurrence_coeffs(n + 1);
        let prod = row.a * next.c_prev;
        if !(prod > 0.0) {
            // Unreachable for validated parameters; surfaced rather than
            // silently producing NaN nodes.
            return Err(Error::InvalidParameter(format!(
                "recurrence symmetrization failed at index {n}: A*C = {prod}"
            )));
        }
        Ok((row.b, prod.sqrt()))
    }

    /// Natural log of `|k_n|` and the sign of `k_n`, where `k_n` is the
    /// coefficient of `x^n` in `P_n`.
    pub fn leading_coeff_ln(&self, n: usize) -> (f64, f64) {
        if n == 0 {
            return (0.0, 1.0);
        }
        let nf = n as f64;
        match *self {
            PolynomialFamily::Hermite => (nf * core::f64::consts::LN_2, 1.0),
            PolynomialFamily::Laguerre { .. } => {
                let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
                (-ln_gamma_pos(nf + 1.0), sign)
            }
            PolynomialFamily::Jacobi { alpha, beta } => (
                ln_gamma_pos(2.0 * nf + alpha + beta + 1.0)
                    - nf * core::f64::consts::LN_2
                    - ln_gamma_pos(nf + 1.0)
                    - ln_gamma_pos(nf + alpha + beta + 1.0),
                1.0,
            ),
        }
    }

    /// Leading coefficient `k_n` in linear scale; overflows to infinity
    /// for orders past a few hundred, use [`leading_coeff_ln`] there.
    ///
    /// [`leading_coeff_ln`]: PolynomialFamily::leading_coeff_ln
    pub fn leading_coeff(&self, n: usize) -> f64 {
        let (ln_mag, sign) = self.leading_coeff_ln(n);
        sign * ln_mag.exp()
    }

    /// `s_n^2 = 1 / ||P_n||^2` in the convention where the measure is not
    /// normalised away; see [`ln_norm_sq_recip`] for the log form.
    ///
    /// [`ln_norm_sq_recip`]: PolynomialFamily::ln_norm_sq_recip
    pub fn norm_sq_recip(&self, n: usize) -> f64 {
        self.ln_norm_sq_recip(n).exp()
    }

    /// Natural log of [`norm_sq_recip`].
    ///
    /// [`norm_sq_recip`]: PolynomialFamily::norm_sq_recip
    pub fn ln_norm_sq_recip(&self, n: usize) -> f64 {
        let nf = n as f64;
        match *self {
            PolynomialFamily::Hermite => -(nf * core::f64::consts::LN_2 + ln_gamma_pos(nf + 1.0)),
            PolynomialFamily::Laguerre { alpha } => {
                ln_gamma_pos(nf + 1.0) - ln_gamma_pos(nf + alpha + 1.0)
            }
            PolynomialFamily::Jacobi { alpha, beta } => {
                if n == 0 {
                    // Avoids ln(2n + alpha + beta + 1) at a potentially
                    // nonpositive argument when alpha + beta <= -1.
                    ln_gamma_pos(alpha + beta + 2.0)
                        - ln_gamma_pos(alpha + 1.0)
                        - ln_gamma_pos(beta + 1.0)
                } else {
                    (2.0 * nf + alpha + beta + 1.0).ln()
                        + ln_gamma_pos(nf + 1.0)
                        + ln_gamma_pos(nf + alpha + beta + 1.0)
                        - ln_gamma_pos(nf + alpha + 1.0)
                        - ln_gamma_pos(nf + beta + 1.0)
                }
            }
        }
    }

    /// Values `s_0 P_0(x), ..., s_{len-1} P_{len-1}(x)` of the orthonormal
    /// sequence, by the symmetrized recurrence. Stable at any order for
    /// `x` in the oscillatory region.
    pub fn orthonormal_sequence(&self, len: usize, x: f64) -> Result<Vec<f64>> {
        self.validate()?;
        if len == 0 {
            return Err(Error::InvalidParameter(
                "orthonormal sequence needs len >= 1".into(),
            ));
        }
        let mut q = Vec::with_capacity(len);
        q.push((0.5 * self.ln_norm_sq_recip(0)).exp());
        if len == 1 {
            return Ok(q);
        }
        let (b0, off0) = self.symmetric_coeffs(0)?;
        q.push((x - b0) * q[0] / off0);
        let mut off_prev = off0;
        for n in 1..len - 1 {
            let (b, off) = self.symmetric_coeffs(n)?;
            let next = ((x - b) * q[n] - off_prev * q[n - 1]) / off;
            q.push(next);
            off_prev = off;
        }
        Ok(q)
    }

    /// Raw value `P_n(x)` by the forward recurrence. Guarded at degree
    /// [`MAX_RAW_DEGREE`] because the magnitudes overflow quickly.
    pub fn eval(&self, n: usize, x: f64) -> Result<f64> {
        Ok(self.eval_with_deriv(n, x)?.0)
    }

    /// Raw value and derivative `(P_n(x), P_n'(x))`, same guard as
    /// [`eval`].
    ///
    /// [`eval`]: PolynomialFamily::eval
    pub fn eval_with_deriv(&self, n: usize, x: f64) -> Result<(f64, f64)> {
        self.validate()?;
        if n > MAX_RAW_DEGREE {
            return Err(Error::OrderTooLarge {
                n,
                max: MAX_RAW_DEGREE,
            });
        }
        let mut p_prev = 0.0_f64;
        let mut d_prev = 0.0_f64;
        let mut p = 1.0_f64;
        let mut d = 0.0_f64;
        for m in 0..n {
            let rc = self.recurrence_coeffs(m);
            let p_next = ((x - rc.b) * p - rc.c_prev * p_prev) / rc.a;
            let d_next = (p + (x - rc.b) * d - rc.c_prev * d_prev) / rc.a;
            p_prev = p;
            d_prev = d;
            p = p_next;
            d = d_next;
        }
        Ok((p, d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    const LEGENDRE: PolynomialFamily = PolynomialFamily::Jacobi {
        alpha: 0.0,
        beta: 0.0,
    };

    #[test]
    fn recurrence_coefficients_reference_rows() {
        let h = PolynomialFamily::Hermite.recurrence_coeffs(1);
        assert_eq!((h.a, h.b, h.c_prev), (0.5, 0.0, 1.0));

        let l = PolynomialFamily::Laguerre { alpha: 0.0 }.recurrence_coeffs(0);
        assert_eq!((l.a, l.b, l.c_prev), (-1.0, 1.0, 0.0));

        let p = LEGENDRE.recurrence_coeffs(1);
        assert_relative_eq!(p.a, 2.0 / 3.0, max_relative = 1e-15);
        assert_eq!(p.b, 0.0);
        assert_relative_eq!(p.c_prev, 1.0 / 3.0, max_relative = 1e-15);
    }

    #[test]
    fn jacobi_row_zero_is_finite_for_degenerate_parameter_sums() {
        // alpha + beta = -1 makes the generic row-0 formulas divide by
        // zero; the special case must stay finite.
        let fam = PolynomialFamily::Jacobi {
            alpha: -0.5,
            beta: -0.5,
        };
        let rc = fam.recurrence_coeffs(0);
        assert!(rc.a.is_finite() && rc.b.is_finite());
        assert_eq!(rc.c_prev, 0.0);
        assert_relative_eq!(rc.a, 2.0, max_relative = 1e-15);
    }

    #[test]
    fn leading_coefficients() {
        assert_relative_eq!(
            PolynomialFamily::Hermite.leading_coeff(3),
            8.0,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            PolynomialFamily::Laguerre { alpha: 0.7 }.leading_coeff(2),
            0.5,
            max_relative = 1e-13
        );
        // Legendre P_4 has leading coefficient 35/8.
        assert_relative_eq!(LEGENDRE.leading_coeff(4), 35.0 / 8.0, max_relative = 1e-13);
        assert_eq!(PolynomialFamily::Hermite.leading_coeff(0), 1.0);
        assert_relative_eq!(
            PolynomialFamily::Laguerre { alpha: 0.0 }.leading_coeff(3),
            -1.0 / 6.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn norm_reciprocals() {
        // Hermite: 1 / (2^n n!).
        assert_relative_eq!(
            PolynomialFamily::Hermite.norm_sq_recip(3),
            1.0 / 48.0,
            max_relative = 1e-14
        );
        // Laguerre: n! / Gamma(n + alpha + 1), alpha = 0 gives 1.
        assert_relative_eq!(
            PolynomialFamily::Laguerre { alpha: 0.0 }.norm_sq_recip(5),
            1.0,
            max_relative = 1e-13
        );
        // Legendre: (2n + 1) / 2 times the conventional half-measure,
        // here (2n + 1) n! Gamma(n + 1) / (Gamma(n + 1))^2 = 2n + 1.
        assert_relative_eq!(LEGENDRE.norm_sq_recip(2), 5.0, max_relative = 1e-13);
        assert_relative_eq!(
            LEGENDRE.norm_sq_recip(0) * LEGENDRE.total_measure(),
            2.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn eval_matches_explicit_polynomials() {
        // H_2(x) = 4x^2 - 2.
        assert_relative_eq!(
            PolynomialFamily::Hermite.eval(2, 0.7).unwrap(),
            4.0 * 0.49 - 2.0,
            max_relative = 1e-14
        );
        // L_2^0(x) = x^2/2 - 2x + 1.
        let x = 1.3;
        assert_relative_eq!(
            PolynomialFamily::Laguerre { alpha: 0.0 }
                .eval(2, x)
                .unwrap(),
            0.5 * x * x - 2.0 * x + 1.0,
            max_relative = 1e-14
        );
        // P_2(x) = (3x^2 - 1)/2.
        assert_relative_eq!(
            LEGENDRE.eval(2, -0.35).unwrap(),
            (3.0 * 0.35 * 0.35 - 1.0) / 2.0,
            max_relative = 1e-14
        );
        assert!(matches!(
            PolynomialFamily::Hermite.eval(61, 0.0),
            Err(Error::OrderTooLarge { .. })
        ));
    }

    #[test]
    fn eval_derivative_matches_finite_differences() {
        let fams = [
            PolynomialFamily::Hermite,
            PolynomialFamily::Laguerre { alpha: 0.4 },
            PolynomialFamily::Jacobi {
                alpha: 0.3,
                beta: -0.2,
            },
        ];
        for fam in fams {
            let x = 0.42;
            let h = 1e-6;
            let (_, d) = fam.eval_with_deriv(7, x).unwrap();
            let fd = (fam.eval(7, x + h).unwrap() - fam.eval(7, x - h).unwrap()) / (2.0 * h);
            assert_relative_eq!(d, fd, max_relative = 1e-7);
        }
    }

    #[test]
    fn orthonormal_sequence_reference_values() {
        // Hermite length-1 sequence is the constant 1 in the measure
        // convention used here.
        let q = PolynomialFamily::Hermite
            .orthonormal_sequence(1, 1.7)
            .unwrap();
        assert_eq!(q.len(), 1);
        assert_abs_diff_eq!(q[0], 1.0, epsilon = 1e-15);

        // Legendre at 0: s_2 P_2(0) = sqrt(5) * (-1/2).
        let q = LEGENDRE.orthonormal_sequence(3, 0.0).unwrap();
        assert_abs_diff_eq!(q[1], 0.0, epsilon = 1e-16);
        assert_relative_eq!(q[2], -0.5 * 5.0_f64.sqrt(), max_relative = 1e-13);

        // Laguerre alpha = 0 at x = 0: |L_n(0)| = 1 with unit norm, and
        // the recurrence normalises to positive leading coefficient, so
        // the values alternate sign with the degree.
        let q = PolynomialFamily::Laguerre { alpha: 0.0 }
            .orthonormal_sequence(6, 0.0)
            .unwrap();
        for (n, v) in q.iter().enumerate() {
            let expect = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert_relative_eq!(*v, expect, max_relative = 1e-12);
        }
    }

    #[test]
    fn orthonormal_sequence_agrees_with_scaled_raw_values() {
        let fams = [
            PolynomialFamily::Hermite,
            PolynomialFamily::Laguerre { alpha: 1.1 },
            PolynomialFamily::Jacobi {
                alpha: 0.3,
                beta: 0.8,
            },
        ];
        for fam in fams {
            let x = 0.31;
            let q = fam.orthonormal_sequence(20, x).unwrap();
            for (n, qn) in q.iter().enumerate() {
                // The recurrence output has positive leading coefficient;
                // align the raw value's sign before comparing.
                let sign = fam.leading_coeff(n).signum();
                let expect = sign * (0.5 * fam.ln_norm_sq_recip(n)).exp() * fam.eval(n, x).unwrap();
                assert_relative_eq!(*qn, expect, max_relative = 1e-11);
            }
        }
    }

    #[test]
    fn validation_rejects_bad_weights() {
        assert!(PolynomialFamily::Laguerre { alpha: -1.0 }
            .validate()
            .is_err());
        assert!(PolynomialFamily::Jacobi {
            alpha: 0.0,
            beta: -1.2
        }
        .validate()
        .is_err());
        assert!(PolynomialFamily::Jacobi {
            alpha: f64::NAN,
            beta: 0.0
        }
        .validate()
        .is_err());
    }

    #[test]
    fn total_measure_reference_values() {
        assert_relative_eq!(
            PolynomialFamily::Hermite.total_measure(),
            core::f64::consts::PI.sqrt(),
            max_relative = 1e-15
        );
        assert_relative_eq!(
            PolynomialFamily::Laguerre { alpha: 3.0 }.total_measure(),
            6.0,
            max_relative = 1e-13
        );
        assert_relative_eq!(LEGENDRE.total_measure(), 2.0, max_relative = 1e-14);
    }
}
