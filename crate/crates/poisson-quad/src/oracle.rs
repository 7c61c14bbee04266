//! Independent checks for the discrete transform: direct numerical
//! integration of the kernels, closed-form images of the standard test
//! functions, and the truncated bilinear series route to the kernels.
//!
//! Nothing in this module reuses the matrix path, so agreement between
//! `sum_k T_jk f(x_k)` and [`direct_transform`] exercises the nodes, the
//! weights, the kernels, and the integrator against each other.

use crate::error::{Error, Result};
use crate::orthopoly::PolynomialFamily;
use crate::specfun::bessel_j;
use crate::transform::kernel;
use alloc::format;
use alloc::vec::Vec;
use core::cell::RefCell;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

// 15-point Kronrod abscissae on [-1, 1] (positive half, descending) with
// the embedded 7-point Gauss rule at the odd-index entries.  Tabulated to
// more digits than f64 keeps.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_2,
    0.949_107_912_342_758_524_5,
    0.864_864_423_359_769_072_8,
    0.741_531_185_599_394_439_9,
    0.586_087_235_467_691_130_3,
    0.405_845_151_377_397_166_9,
    0.207_784_955_007_898_467_6,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_96,
    0.063_092_092_629_978_553_29,
    0.104_790_010_322_250_183_8,
    0.140_653_259_715_525_918_7,
    0.169_004_726_639_267_902_8,
    0.190_350_578_064_785_409_9,
    0.204_432_940_075_298_892_4,
    0.209_482_141_084_727_828_0,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_3,
    0.279_705_391_489_276_667_9,
    0.381_830_050_505_118_945_0,
    0.417_959_183_673_469_387_8,
];

/// Controls for the adaptive integrator and the oracle built on it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Cap on the number of panels the adaptive refinement may hold.
    pub max_panels: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            abs_tol: 1e-9,
            rel_tol: 1e-9,
            max_panels: 4096,
        }
    }
}

/// Value and error bound returned by [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralEstimate {
    pub value: Complex64,
    pub bound: f64,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
    splittable: bool,
}

fn gk15<F: FnMut(f64) -> Complex64>(f: &mut F, a: f64, b: f64) -> (Complex64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut resk = fc * WGK[7];
    let mut resg = fc * WG[3];
    let mut resabs = fc.norm() * WGK[7];
    let mut fv = [Complex64::new(0.0, 0.0); 14];
    for i in 0..7 {
        let dx = half * XGK[i];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv[2 * i] = f1;
        fv[2 * i + 1] = f2;
        resk += (f1 + f2) * WGK[i];
        resabs += (f1.norm() + f2.norm()) * WGK[i];
        if i % 2 == 1 {
            resg += (f1 + f2) * WG[i / 2];
        }
    }
    // Scaled deviation estimate in the QUADPACK style.
    let reskh = resk * 0.5;
    let mut resasc = (fc - reskh).norm() * WGK[7];
    for i in 0..7 {
        resasc += ((fv[2 * i] - reskh).norm() + (fv[2 * i + 1] - reskh).norm()) * WGK[i];
    }
    resasc *= half.abs();
    resabs *= half.abs();
    let raw = ((resk - resg) * half).norm();
    let mut err = raw;
    if resasc != 0.0 && raw != 0.0 {
        err = resasc * 1.0_f64.min((200.0 * raw / resasc).powf(1.5));
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    (resk * half, err)
}

fn pairwise_sum(vals: &[Complex64]) -> Complex64 {
    match vals.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => vals[0],
        n => pairwise_sum(&vals[..n / 2]) + pairwise_sum(&vals[n / 2..]),
    }
}

/// Adaptive Gauss-Kronrod integration of a complex-valued function over
/// `[a, b]`, worst-panel-first, with deterministic accumulation order.
///
/// Fails with [`Error::Accuracy`] carrying the best estimate when the
/// panel budget runs out before the tolerance is met.
pub fn integrate<F: FnMut(f64) -> Complex64>(
    mut f: F,
    a: f64,
    b: f64,
    opts: &OracleOptions,
) -> Result<IntegralEstimate> {
    if !a.is_finite() || !b.is_finite() || !(a < b) {
        return Err(Error::InvalidParameter(format!(
            "integration interval [{a}, {b}] is invalid"
        )));
    }
    if !(opts.abs_tol > 0.0) || !(opts.rel_tol >= 0.0) || opts.max_panels < 2 {
        return Err(Error::InvalidParameter(
            "integration tolerances must be positive and max_panels >= 2".into(),
        ));
    }
    let (v, e) = gk15(&mut f, a, b);
    let mut panels = Vec::with_capacity(64);
    panels.push(Panel {
        a,
        b,
        value: v,
        err: e,
        splittable: true,
    });
    loop {
        let total: Complex64 = panels.iter().map(|p| p.value).sum();
        let total_err: f64 = panels.iter().map(|p| p.err).sum();
        let target = opts.abs_tol.max(opts.rel_tol * total.norm());
        if total_err <= target {
            break;
        }
        // Split the worst splittable panel.
        let mut worst: Option<usize> = None;
        for (i, p) in panels.iter().enumerate() {
            if p.splittable && worst.is_none_or(|w| p.err > panels[w].err) {
                worst = Some(i);
            }
        }
        let Some(i) = worst else { break };
        if panels.len() >= opts.max_panels {
            break;
        }
        let p = panels[i];
        let mid = 0.5 * (p.a + p.b);
        if !(p.a < mid && mid < p.b) {
            panels[i].splittable = false;
            continue;
        }
        let (v1, e1) = gk15(&mut f, p.a, mid);
        let (v2, e2) = gk15(&mut f, mid, p.b);
        panels[i] = Panel {
            a: p.a,
            b: mid,
            value: v1,
            err: e1,
            splittable: true,
        };
        panels.push(Panel {
            a: mid,
            b: p.b,
            value: v2,
            err: e2,
            splittable: true,
        });
    }
    panels.sort_by(|p, q| p.a.partial_cmp(&q.a).expect("panel endpoints are finite"));
    let values: Vec<Complex64> = panels.iter().map(|p| p.value).collect();
    let value = pairwise_sum(&values);
    let bound: f64 = panels.iter().map(|p| p.err).sum();
    let target = opts.abs_tol.max(opts.rel_tol * value.norm());
    if bound > target {
        return Err(Error::Accuracy {
            estimate: value,
            bound,
        });
    }
    Ok(IntegralEstimate { value, bound })
}

// Upper integration limit for the Hermite oracle: the kernel factor
// decays at least like exp(-(|x| - |y|)^2 / 2) for real z, so this puts
// the truncated tail well below the absolute tolerance.
fn hermite_cutoff(y: f64, abs_tol: f64) -> f64 {
    2.0 * y.abs().max(1.0) + (2.0 * (1.0 / (abs_tol * 1e-2)).ln()).sqrt()
}

// Upper limit for the Laguerre oracle: solves c1 x - c2 sqrt(x) = L where
// c1, c2 bound the exponential growth of the kernel factors.
fn laguerre_cutoff(y: f64, z: f64, abs_tol: f64) -> f64 {
    let c1 = (1.0 + z) / (2.0 * (1.0 - z));
    let c2 = if z > 0.0 {
        2.0 * (y * z).sqrt() / (1.0 - z)
    } else {
        0.0
    };
    let l = (1.0 / (abs_tol * 1e-2)).ln() + (2.0 + y.abs()).ln() + 2.0;
    let root = (c2 + (c2 * c2 + 4.0 * c1 * l).sqrt()) / (2.0 * c1);
    (root * root).max(y + 10.0).max(20.0)
}

/// Evaluates the integral transform directly: the integral of
/// `K(x, y, z) f(x)` over the support in the phase measure, by adaptive
/// quadrature on a truncated interval chosen from the kernel decay.
///
/// Supports real `z` inside the domain of the family kernel. Errors from
/// the kernel (unsupported `z`, convergence domain) and from the
/// integrator (accuracy, with best estimate attached) pass through.
pub fn direct_transform<F: FnMut(f64) -> Complex64>(
    family: PolynomialFamily,
    y: f64,
    z: f64,
    mut f: F,
    opts: &OracleOptions,
) -> Result<Complex64> {
    family.validate()?;
    let zc = Complex64::new(z, 0.0);
    let (lo, hi) = match family {
        PolynomialFamily::Hermite => {
            if !(z.abs() < 1.0) {
                return Err(Error::UnsupportedZ(format!(
                    "direct transform needs real |z| < 1, got {z}"
                )));
            }
            let cut = hermite_cutoff(y, opts.abs_tol);
            (-cut, cut)
        }
        PolynomialFamily::Laguerre { .. } => {
            if !(-1.0..1.0).contains(&z) || z == 0.0 {
                return Err(Error::UnsupportedZ(format!(
                    "direct transform needs z in [-1, 0) or (0, 1), got {z}"
                )));
            }
            (0.0, laguerre_cutoff(y, z, opts.abs_tol))
        }
        PolynomialFamily::Jacobi { .. } => {
            if !(0.0 < z && z < 1.0) {
                return Err(Error::UnsupportedZ(format!(
                    "direct transform needs z in (0, 1), got {z}"
                )));
            }
            // The double series must converge over the whole interval,
            // which reduces to this single condition at x = y.
            let gauge = 2.0 * z.sqrt() / (1.0 + z);
            if gauge > 1.0 - 1e-3 {
                return Err(Error::ConvergenceDomain(format!(
                    "kernel series gauge 2 sqrt(z)/(1+z) = {gauge} too close to 1"
                )));
            }
            (-1.0 + 1e-10, 1.0 - 1e-10)
        }
    };
    // Kernel failures inside the integrand cannot propagate through the
    // closure, so the first one is parked here and re-raised afterwards.
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let integrand = |x: f64| -> Complex64 {
        let kv = match kernel(family, x, y, zc) {
            Ok(kv) => kv,
            Err(e) => {
                let mut slot = failure.borrow_mut();
                if slot.is_none() {
                    *slot = Some(e);
                }
                return Complex64::new(0.0, 0.0);
            }
        };
        let jacobian = match family {
            PolynomialFamily::Hermite => 1.0,
            PolynomialFamily::Laguerre { .. } => 0.5 / x.sqrt(),
            PolynomialFamily::Jacobi { .. } => 1.0 / (1.0 - x * x).sqrt(),
        };
        kv * f(x) * jacobian
    };
    let outcome = integrate(integrand, lo, hi, opts);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    outcome.map(|est| est.value)
}

/// Closed-form image of `x -> exp(-icx)` under the Hermite-family
/// transform at `(y, z)`, real `|z| < 1`.
pub fn exp_image_hermite(y: f64, z: f64, c: f64) -> Result<Complex64> {
    if !(z.abs() < 1.0) {
        return Err(Error::UnsupportedZ(format!(
            "closed form needs real |z| < 1, got {z}"
        )));
    }
    let a = (1.0 + z * z) / (2.0 * (1.0 - z * z));
    let b = 2.0 * y * z / (1.0 - z * z);
    // integral of exp(-a x^2 + (b - ic) x) dx times the kernel prefactor.
    let lin = Complex64::new(b, -c);
    let expo = lin * lin / (4.0 * a) - a * y * y;
    Ok((2.0 / (1.0 + z * z)).sqrt() * expo.exp())
}

/// Closed-form image of `x -> x^(1/4) J_alpha(c sqrt(x))` under the
/// Laguerre-family transform at `(y, z)`, `z` in `(0, 1)`, `y > 0`.
pub fn bessel_image_laguerre(alpha: f64, y: f64, z: f64, c: f64) -> Result<Complex64> {
    PolynomialFamily::Laguerre { alpha }.validate()?;
    if !(0.0 < z && z < 1.0) {
        return Err(Error::UnsupportedZ(format!(
            "closed form needs z in (0, 1), got {z}"
        )));
    }
    if !(y > 0.0) {
        return Err(Error::Domain(format!("closed form needs y > 0, got {y}")));
    }
    let ratio = (1.0 - z) / (1.0 + z);
    let value = 2.0 * z.powf(-0.5 * alpha) / (1.0 + z)
        * y.powf(0.25)
        * (-(c * c + y) * ratio / 2.0).exp()
        * bessel_j(alpha, 2.0 * c * (y * z).sqrt() / (1.0 + z))?;
    Ok(Complex64::new(value, 0.0))
}

/// Closed-form image of the envelope-weighted degree-n polynomial under
/// the Jacobi-family transform at `(y, z)`: `z^n g(y) P_n(y)`.
pub fn weighted_poly_image_jacobi(
    alpha: f64,
    beta: f64,
    degree: usize,
    y: f64,
    z: f64,
) -> Result<Complex64> {
    let fam = PolynomialFamily::Jacobi { alpha, beta };
    fam.validate()?;
    if !(y.abs() < 1.0) {
        return Err(Error::Domain(format!("closed form needs |y| < 1, got {y}")));
    }
    let value = z.powi(degree as i32) * fam.envelope(y) * fam.eval(degree, y)?;
    Ok(Complex64::new(value, 0.0))
}

/// Truncated bilinear series `sum_n q_n(x) q_n(y) z^n` over the
/// normalised polynomial values.
pub fn bilinear_series(
    family: PolynomialFamily,
    x: f64,
    y: f64,
    z: Complex64,
    terms: usize,
) -> Result<Complex64> {
    let qx = family.orthonormal_sequence(terms, x)?;
    let qy = family.orthonormal_sequence(terms, y)?;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut zp = Complex64::new(1.0, 0.0);
    for n in 0..terms {
        acc += zp * (qx[n] * qy[n]);
        zp *= z;
    }
    Ok(acc)
}

/// Kernel value reconstructed from the truncated bilinear series instead
/// of the closed forms: the envelope-weighted series with the same
/// phase-measure normalisation the kernels use.
pub fn kernel_from_series(
    family: PolynomialFamily,
    x: f64,
    y: f64,
    z: Complex64,
    terms: usize,
) -> Result<Complex64> {
    let series = bilinear_series(family, x, y, z, terms)?;
    // The polynomial values from orthonormal_sequence square-sum to the
    // family constant kappa against the weight, and the jacobian between
    // w(x) dx and g(x)^2 dsigma brings the Laguerre factor 2, so the
    // amplitude is (that factor) / kappa.
    let amplitude = match family {
        PolynomialFamily::Hermite => 1.0 / core::f64::consts::PI.sqrt(),
        PolynomialFamily::Laguerre { .. } => 2.0,
        PolynomialFamily::Jacobi { alpha, beta } => (-(alpha + beta + 1.0)).exp2(),
    };
    Ok(series * (amplitude * family.envelope(x) * family.envelope(y)))
}

/// One row of a quadrature-versus-oracle comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformResult {
    /// Node index the row belongs to.
    pub index: usize,
    /// The node, i.e. the evaluation point of the transformed function.
    pub y: f64,
    /// Matrix-side value `sum_k T_jk f(x_k)`.
    pub quadrature: Complex64,
    /// Direct integration value, when available. Holds the best estimate
    /// when the integrator missed its tolerance (then `flagged` is set).
    pub oracle: Option<Complex64>,
    /// Absolute difference between the two values, when both exist.
    pub abs_err: Option<f64>,
    /// Set when the oracle failed or returned a degraded estimate.
    pub flagged: bool,
}

/// Applies the transform to `f` and pairs each output with the direct
/// integral at the same node. Per-row numerical trouble degrades to a
/// flagged row (keeping the best estimate where one exists); domain
/// problems that would fail every row identically propagate as errors.
/// A complex `z` is outside the oracle's reach, so all rows come back
/// flagged without oracle values.
pub fn compare_with_oracle<F: Fn(f64) -> Complex64>(
    dt: &crate::transform::DiscreteTransform,
    f: F,
    opts: &OracleOptions,
) -> Result<Vec<TransformResult>> {
    let quad = dt.apply_fn(&f)?;
    let nodes = dt.rule().nodes();
    let z = dt.z();
    let real_z = z.im.abs() <= 1e-13 * z.re.abs().max(1.0);
    let mut rows = Vec::with_capacity(quad.len());
    for (j, (&y, &q)) in nodes.iter().zip(quad.iter()).enumerate() {
        let (oracle, flagged) = if real_z {
            match direct_transform(dt.family(), y, z.re, &f, opts) {
                Ok(v) => (Some(v), false),
                Err(Error::Accuracy { estimate, .. }) => (Some(estimate), true),
                Err(
                    e @ (Error::UnsupportedZ(_)
                    | Error::ConvergenceDomain(_)
                    | Error::Domain(_)
                    | Error::InvalidParameter(_)),
                ) => return Err(e),
                Err(_) => (None, true),
            }
        } else {
            (None, true)
        };
        rows.push(TransformResult {
            index: j,
            y,
            quadrature: q,
            oracle,
            abs_err: oracle.map(|o| (q - o).norm()),
            flagged,
        });
    }
    Ok(rows)
}
