//! The discrete transform matrix and the integral kernels it tends to.
//!
//! For a rule of order N with eigenvector matrix U and D = diag(z^n),
//! `T(z) = U^T D U` acts on samples at the nodes. As N grows,
//! `sum_k T_jk f(x_k)` tends to the integral of `K(x, y_j, z) f(x)` in
//! the phase measure, where K is the bilinear kernel of the family:
//! a Gaussian in the Hermite case, a Bessel form in the Laguerre case,
//! and a double hypergeometric form in the Jacobi case. The kernels here
//! are normalised for the phase measure `d sigma`, so no extra constant
//! appears in that limit.

use crate::error::{Error, Result};
use crate::nodes::QuadratureRule;
use crate::orthopoly::PolynomialFamily;
use crate::specfun::{appell_f4, bessel_i, bessel_i_ln, bessel_j, ln_gamma_pos, F4Params};
use alloc::format;
use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

/// Dense transform matrix at a fixed `z`, bound to the rule it was built
/// from.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteTransform {
    rule: QuadratureRule,
    z: Complex64,
    // Row-major n x n.
    t: Vec<Complex64>,
}

impl DiscreteTransform {
    /// Builds `T(z) = U^T diag(z^n) U` from the rule's eigenvector
    /// matrix.
    pub fn new(rule: &QuadratureRule, z: Complex64) -> Self {
        let n = rule.order();
        let mut zpow = Vec::with_capacity(n);
        let mut p = Complex64::new(1.0, 0.0);
        for _ in 0..n {
            zpow.push(p);
            p *= z;
        }
        let u = rule.ortho_table();
        let mut t = alloc::vec![Complex64::new(0.0, 0.0); n * n];
        for j in 0..n {
            for k in j..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for (m, zp) in zpow.iter().enumerate() {
                    acc += zp * (u[m * n + j] * u[m * n + k]);
                }
                t[j * n + k] = acc;
                t[k * n + j] = acc;
            }
        }
        DiscreteTransform {
            rule: rule.clone(),
            z,
            t,
        }
    }

    pub fn order(&self) -> usize {
        self.rule.order()
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn family(&self) -> PolynomialFamily {
        self.rule.family()
    }

    pub fn rule(&self) -> &QuadratureRule {
        &self.rule
    }

    pub fn entry(&self, j: usize, k: usize) -> Complex64 {
        self.t[j * self.rule.order() + k]
    }

    pub fn row(&self, j: usize) -> &[Complex64] {
        let n = self.rule.order();
        &self.t[j * n..(j + 1) * n]
    }

    /// Applies the matrix to samples taken at the rule's nodes.
    pub fn apply_sampled(&self, samples: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.rule.order();
        if samples.len() != n {
            return Err(Error::InvalidParameter(format!(
                "expected {n} samples, got {}",
                samples.len()
            )));
        }
        for (k, s) in samples.iter().enumerate() {
            if !s.re.is_finite() || !s.im.is_finite() {
                return Err(Error::NonFiniteSample { index: k });
            }
        }
        Ok((0..n)
            .map(|j| {
                let row = &self.t[j * n..(j + 1) * n];
                row.iter().zip(samples).map(|(t, s)| t * s).sum()
            })
            .collect())
    }

    /// Samples `f` at the nodes and applies the matrix.
    pub fn apply_fn<F: FnMut(f64) -> Complex64>(&self, mut f: F) -> Result<Vec<Complex64>> {
        let samples: Vec<Complex64> = self.rule.nodes().iter().map(|&x| f(x)).collect();
        self.apply_sampled(&samples)
    }
}

fn check_finite_point(x: f64, y: f64) -> Result<()> {
    if !x.is_finite() || !y.is_finite() {
        return Err(Error::Domain(format!("kernel point ({x}, {y}) not finite")));
    }
    Ok(())
}

/// Gaussian bilinear kernel of the Hermite family,
///
/// ```text
/// K(x, y, z) = exp([4xyz - (1 + z^2)(x^2 + y^2)] / [2(1 - z^2)])
///              / sqrt(pi (1 - z^2))
/// ```
///
/// for complex `z` in the closed unit disk away from `z = +-1`, with the
/// principal square root. On the boundary this is the analytic
/// continuation; at `z = +-i` it reduces to the conjugate Fourier kernels
/// `exp(+-ixy) / sqrt(2 pi)`.
pub fn mehler_kernel(x: f64, y: f64, z: Complex64) -> Result<Complex64> {
    check_finite_point(x, y)?;
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("z = {z} not finite")));
    }
    if z.norm() > 1.0 + 1e-12 {
        return Err(Error::UnsupportedZ(format!(
            "|z| = {} outside the closed unit disk",
            z.norm()
        )));
    }
    let w = Complex64::new(1.0, 0.0) - z * z;
    if w.norm() < 1e-10 {
        return Err(Error::SingularKernel(format!(
            "kernel has an essential singularity at z = {z}"
        )));
    }
    let num = 4.0 * x * y * z - (Complex64::new(1.0, 0.0) + z * z) * (x * x + y * y);
    Ok((num / (2.0 * w)).exp() / (core::f64::consts::PI * w).sqrt())
}

/// Bessel bilinear kernel of the Laguerre family, for real
/// `z` in `[-1, 0) U (0, 1)` and `x, y > 0`:
///
/// ```text
/// K(x, y, z) = 2 z^(-a/2) (xy)^(1/4) / (1 - z)
///              exp(-(1 + z)(x + y) / (2(1 - z))) I_a(2 sqrt(xyz) / (1 - z))
/// ```
///
/// continued to negative `z` by `z^(-a/2) I_a(c sqrt(z)) ->
/// |z|^(-a/2) J_a(c sqrt(|z|))`, which is the same entire function of z.
/// At `z = -1` this is the conjugate Hankel-type kernel.
pub fn hille_hardy_kernel(alpha: f64, x: f64, y: f64, z: f64) -> Result<f64> {
    PolynomialFamily::Laguerre { alpha }.validate()?;
    if !(x > 0.0) || !(y > 0.0) || !x.is_finite() || !y.is_finite() {
        return Err(Error::Domain(format!(
            "Laguerre kernel needs x, y > 0, got ({x}, {y})"
        )));
    }
    if !z.is_finite() {
        return Err(Error::Domain(format!("z = {z} not finite")));
    }
    if z == 0.0 {
        return Err(Error::UnsupportedZ(
            "z = 0 is a removable limit, not supported by the closed form".into(),
        ));
    }
    if z == 1.0 {
        return Err(Error::SingularKernel("kernel is singular at z = 1".into()));
    }
    if !(-1.0..1.0).contains(&z) {
        return Err(Error::UnsupportedZ(format!(
            "Laguerre kernel needs z in [-1, 0) or (0, 1), got {z}"
        )));
    }
    let shared = 0.25 * (x * y).ln() - (1.0 - z).ln() - (1.0 + z) * (x + y) / (2.0 * (1.0 - z))
        + core::f64::consts::LN_2;
    if z > 0.0 {
        let arg = 2.0 * (x * y * z).sqrt() / (1.0 - z);
        let pre = shared - 0.5 * alpha * z.ln();
        // Assemble in log scale once the Bessel factor gets large; the
        // product can stay representable when the factor alone does not.
        if arg <= 600.0 {
            Ok(pre.exp() * bessel_i(alpha, arg)?)
        } else {
            let ln_k = pre + bessel_i_ln(alpha, arg)?;
            if ln_k > 709.0 {
                Err(Error::Overflow { ln_value: ln_k })
            } else {
                Ok(ln_k.exp())
            }
        }
    } else {
        let arg = 2.0 * (x * y * (-z)).sqrt() / (1.0 - z);
        let pre = shared - 0.5 * alpha * (-z).ln();
        Ok(pre.exp() * bessel_j(alpha, arg)?)
    }
}

/// Double hypergeometric bilinear kernel of the Jacobi family, for real
/// `z` in `(0, 1)` and `x, y` in `(-1, 1)`:
///
/// ```text
/// K(x, y, z) = 2^(-a-b-1) g(x) g(y) S(x, y, z)
/// S = [Gamma(a+b+2) / (Gamma(a+1) Gamma(b+1))] (1 - z) / (1 + z)^(a+b+2)
///     F4((a+b+2)/2, (a+b+3)/2; a+1, b+1; xi, eta)
/// ```
///
/// with `xi = z(1-x)(1-y)/(1+z)^2`, `eta = z(1+x)(1+y)/(1+z)^2` and `g`
/// the envelope weight. The double series needs
/// `sqrt(xi) + sqrt(eta) < 1`, which holds over the whole square exactly
/// when `2 sqrt(z) / (1 + z)` stays below 1 - 1e-3; outside that the call
/// fails with a convergence-domain error.
pub fn bailey_kernel(alpha: f64, beta: f64, x: f64, y: f64, z: f64) -> Result<f64> {
    let fam = PolynomialFamily::Jacobi { alpha, beta };
    fam.validate()?;
    if !(x.abs() < 1.0) || !(y.abs() < 1.0) {
        return Err(Error::Domain(format!(
            "Jacobi kernel needs |x|, |y| < 1, got ({x}, {y})"
        )));
    }
    if !z.is_finite() {
        return Err(Error::Domain(format!("z = {z} not finite")));
    }
    if z == 1.0 {
        return Err(Error::SingularKernel("kernel is singular at z = 1".into()));
    }
    if !(0.0 < z && z < 1.0) {
        return Err(Error::UnsupportedZ(format!(
            "Jacobi kernel needs z in (0, 1), got {z}"
        )));
    }
    let opz = 1.0 + z;
    let xi = z * (1.0 - x) * (1.0 - y) / (opz * opz);
    let eta = z * (1.0 + x) * (1.0 + y) / (opz * opz);
    let f4 = appell_f4(&F4Params::new(
        0.5 * (alpha + beta + 2.0),
        0.5 * (alpha + beta + 3.0),
        alpha + 1.0,
        beta + 1.0,
        xi,
        eta,
    ))?;
    let ln_ratio =
        ln_gamma_pos(alpha + beta + 2.0) - ln_gamma_pos(alpha + 1.0) - ln_gamma_pos(beta + 1.0);
    let series = ln_ratio.exp() * (1.0 - z) / opz.powf(alpha + beta + 2.0) * f4;
    Ok((-(alpha + beta + 1.0)).exp2() * fam.envelope(x) * fam.envelope(y) * series)
}

/// Family dispatcher for the bilinear kernels. Laguerre and Jacobi accept
/// only real `z` (imaginary part below 1e-13 in relative terms).
pub fn kernel(family: PolynomialFamily, x: f64, y: f64, z: Complex64) -> Result<Complex64> {
    let require_real = |z: Complex64| -> Result<f64> {
        if z.im.abs() > 1e-13 * z.re.abs().max(1.0) {
            Err(Error::UnsupportedZ(format!(
                "this kernel is defined for real z, got {z}"
            )))
        } else {
            Ok(z.re)
        }
    };
    match family {
        PolynomialFamily::Hermite => mehler_kernel(x, y, z),
        PolynomialFamily::Laguerre { alpha } => {
            hille_hardy_kernel(alpha, x, y, require_real(z)?).map(|v| Complex64::new(v, 0.0))
        }
        PolynomialFamily::Jacobi { alpha, beta } => {
            bailey_kernel(alpha, beta, x, y, require_real(z)?).map(|v| Complex64::new(v, 0.0))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn transform_at_one_is_identity() {
        let rule = QuadratureRule::new(PolynomialFamily::Hermite, 9).unwrap();
        let t = DiscreteTransform::new(&rule, c(1.0, 0.0));
        for j in 0..9 {
            for k in 0..9 {
                let expect = if j == k { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(t.entry(j, k).re, expect, epsilon = 1e-12);
                assert_abs_diff_eq!(t.entry(j, k).im, 0.0, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn transform_at_zero_is_rank_one() {
        // D collapses to diag(1, 0, ..., 0), so T_jk = u_0(x_j) u_0(x_k).
        let rule = QuadratureRule::new(PolynomialFamily::Laguerre { alpha: 0.5 }, 7).unwrap();
        let t = DiscreteTransform::new(&rule, c(0.0, 0.0));
        for j in 0..7 {
            for k in 0..7 {
                let expect = rule.ortho_value(0, j) * rule.ortho_value(0, k);
                assert_relative_eq!(t.entry(j, k).re, expect, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn transform_entry_matches_direct_summation() {
        let rule = QuadratureRule::new(PolynomialFamily::Hermite, 20).unwrap();
        let z = c(0.0, 1.0);
        let t = DiscreteTransform::new(&rule, z);
        let (j, k) = (15, 15);
        let mut acc = c(0.0, 0.0);
        let mut zp = c(1.0, 0.0);
        for m in 0..20 {
            acc += zp * rule.ortho_value(m, j) * rule.ortho_value(m, k);
            zp *= z;
        }
        assert_abs_diff_eq!(t.entry(j, k).re, acc.re, epsilon = 1e-14);
        assert_abs_diff_eq!(t.entry(j, k).im, acc.im, epsilon = 1e-14);
    }

    #[test]
    fn rows_are_eigenvectors_of_the_transform() {
        let rule = QuadratureRule::new(
            PolynomialFamily::Jacobi {
                alpha: 0.3,
                beta: -0.2,
            },
            12,
        )
        .unwrap();
        let z = c(0.25, 0.0);
        let t = DiscreteTransform::new(&rule, z);
        // Row m of U satisfies T u = z^m u.
        for m in [0usize, 3, 11] {
            let zm = z.powu(m as u32);
            for j in 0..12 {
                let mut lhs = c(0.0, 0.0);
                for k in 0..12 {
                    lhs += t.entry(j, k) * rule.ortho_value(m, k);
                }
                let rhs = zm * rule.ortho_value(m, j);
                assert_abs_diff_eq!(lhs.re, rhs.re, epsilon = 1e-12);
                assert_abs_diff_eq!(lhs.im, rhs.im, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn apply_checks_inputs() {
        let rule = QuadratureRule::new(PolynomialFamily::Hermite, 5).unwrap();
        let t = DiscreteTransform::new(&rule, c(0.5, 0.0));
        assert!(matches!(
            t.apply_sampled(&[c(1.0, 0.0); 4]),
            Err(Error::InvalidParameter(_))
        ));
        let mut samples = [c(1.0, 0.0); 5];
        samples[3] = c(f64::NAN, 0.0);
        assert!(matches!(
            t.apply_sampled(&samples),
            Err(Error::NonFiniteSample { index: 3 })
        ));
    }

    #[test]
    fn mehler_reference_points() {
        // z = 0 separates: K = exp(-(x^2+y^2)/2) / sqrt(pi).
        let k = mehler_kernel(0.7, -0.4, c(0.0, 0.0)).unwrap();
        assert_relative_eq!(
            k.re,
            (-(0.49 + 0.16) / 2.0).exp() / core::f64::consts::PI.sqrt(),
            max_relative = 1e-14
        );
        assert_eq!(k.im, 0.0);

        // z = i is the Fourier kernel exp(ixy) / sqrt(2 pi).
        let k = mehler_kernel(1.3, 0.8, c(0.0, 1.0)).unwrap();
        let scale = 1.0 / (2.0 * core::f64::consts::PI).sqrt();
        assert_relative_eq!(k.re, scale * (1.3 * 0.8_f64).cos(), max_relative = 1e-13);
        assert_relative_eq!(k.im, scale * (1.3 * 0.8_f64).sin(), max_relative = 1e-13);

        assert!(matches!(
            mehler_kernel(0.0, 0.0, c(1.0, 0.0)),
            Err(Error::SingularKernel(_))
        ));
        assert!(matches!(
            mehler_kernel(0.0, 0.0, c(1.5, 0.0)),
            Err(Error::UnsupportedZ(_))
        ));
    }

    #[test]
    fn hille_hardy_small_z_limit() {
        // As z -> 0+ the kernel tends to 2 g(x) g(y) / Gamma(alpha + 1).
        let (alpha, x, y) = (0.7, 1.1, 2.3);
        let fam = PolynomialFamily::Laguerre { alpha };
        let limit = 2.0 * fam.envelope(x) * fam.envelope(y) / ln_gamma_pos(alpha + 1.0).exp();
        let k = hille_hardy_kernel(alpha, x, y, 1e-9).unwrap();
        assert_relative_eq!(k, limit, max_relative = 1e-6);
        assert!(matches!(
            hille_hardy_kernel(alpha, x, y, 0.0),
            Err(Error::UnsupportedZ(_))
        ));
    }

    #[test]
    fn hille_hardy_negative_z_is_bessel_j_form() {
        // At z = -1 the closed form collapses to (xy)^(1/4) J_alpha(sqrt(xy)).
        let (x, y) = (4.0, 4.0);
        let k = hille_hardy_kernel(0.0, x, y, -1.0).unwrap();
        let expect = (x * y).powf(0.25) * bessel_j(0.0, (x * y).sqrt()).unwrap();
        assert_relative_eq!(k, expect, max_relative = 1e-12);
    }

    #[test]
    fn hille_hardy_rejects_out_of_domain() {
        assert!(matches!(
            hille_hardy_kernel(0.0, -1.0, 1.0, 0.5),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            hille_hardy_kernel(0.0, 1.0, 1.0, 1.0),
            Err(Error::SingularKernel(_))
        ));
        assert!(matches!(
            hille_hardy_kernel(0.0, 1.0, 1.0, -1.5),
            Err(Error::UnsupportedZ(_))
        ));
    }

    #[test]
    fn bailey_small_z_limit() {
        // As z -> 0+ the kernel tends to
        // 2^(-a-b-1) g(x) g(y) Gamma(a+b+2) / (Gamma(a+1) Gamma(b+1)).
        let (alpha, beta, x, y) = (0.3, -0.2, 0.4, -0.5);
        let fam = PolynomialFamily::Jacobi { alpha, beta };
        let s0 = (ln_gamma_pos(alpha + beta + 2.0)
            - ln_gamma_pos(alpha + 1.0)
            - ln_gamma_pos(beta + 1.0))
        .exp();
        let limit = (-(alpha + beta + 1.0)).exp2() * fam.envelope(x) * fam.envelope(y) * s0;
        let k = bailey_kernel(alpha, beta, x, y, 1e-9).unwrap();
        assert_relative_eq!(k, limit, max_relative = 1e-6);
    }

    #[test]
    fn bailey_rejects_out_of_domain() {
        assert!(matches!(
            bailey_kernel(0.0, 0.0, 1.2, 0.0, 0.25),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            bailey_kernel(0.0, 0.0, 0.0, 0.0, -0.25),
            Err(Error::UnsupportedZ(_))
        ));
        // z close enough to 1 pushes the double series out of its
        // convergence region over part of the square.
        assert!(matches!(
            bailey_kernel(0.0, 0.0, 0.9, 0.9, 0.999),
            Err(Error::ConvergenceDomain(_))
        ));
    }

    #[test]
    fn kernel_dispatch_enforces_real_z_where_required() {
        assert!(kernel(PolynomialFamily::Hermite, 0.1, 0.2, c(0.0, 1.0)).is_ok());
        assert!(matches!(
            kernel(
                PolynomialFamily::Laguerre { alpha: 0.0 },
                1.0,
                1.0,
                c(0.5, 0.5)
            ),
            Err(Error::UnsupportedZ(_))
        ));
        let k = kernel(
            PolynomialFamily::Jacobi {
                alpha: 0.0,
                beta: 0.0,
            },
            0.2,
            -0.3,
            c(0.25, 0.0),
        )
        .unwrap();
        assert_eq!(k.im, 0.0);
        assert_relative_eq!(
            k.re,
            bailey_kernel(0.0, 0.0, 0.2, -0.3, 0.25).unwrap(),
            max_relative = 1e-15
        );
    }
}
