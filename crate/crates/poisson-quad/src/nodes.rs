//! Gauss rules by diagonalising the symmetrized recurrence.
//!
//! The order-N rule comes from the N x N tridiagonal matrix with the
//! recurrence diagonal `b_n` and off-diagonal `sqrt(A_n C_n)`: its
//! eigenvalues are the zeros of the degree-N polynomial, and the squared
//! first components of the normalised eigenvectors carry the weights. The
//! full eigenvector matrix doubles as the table of orthonormal polynomial
//! values at the nodes.

use crate::error::{Error, Result};
use crate::orthopoly::PolynomialFamily;
use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

/// Symmetrized tridiagonal form of the three-term recurrence, truncated
/// to a given order.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiMatrix {
    family: PolynomialFamily,
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl JacobiMatrix {
    pub fn new(family: PolynomialFamily, n: usize) -> Result<Self> {
        family.validate()?;
        if n == 0 {
            return Err(Error::InvalidParameter("matrix order must be >= 1".into()));
        }
        let mut diag = Vec::with_capacity(n);
        let mut offdiag = Vec::with_capacity(n.saturating_sub(1));
        for j in 0..n {
            let (b, off) = family.symmetric_coeffs(j)?;
            diag.push(b);
            if j + 1 < n {
                offdiag.push(off);
            }
        }
        Ok(JacobiMatrix {
            family,
            diag,
            offdiag,
        })
    }

    pub fn order(&self) -> usize {
        self.diag.len()
    }

    pub fn family(&self) -> PolynomialFamily {
        self.family
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }
}

// Implicit-shift QL iteration for a symmetric tridiagonal matrix, the
// tql1/tql2 scheme. `d` holds the diagonal and returns the eigenvalues,
// `e` is the off-diagonal (length n, last entry scratch). When `z` is
// present it must hold a row-major n x n matrix whose columns accumulate
// the rotations; pass the identity to get eigenvectors.
fn tridiag_ql(d: &mut [f64], e: &mut [f64], mut z: Option<&mut [f64]>) -> Result<()> {
    let n = d.len();
    if n <= 1 {
        return Ok(());
    }
    debug_assert_eq!(e.len(), n);
    e[n - 1] = 0.0;
    let mut total_iter = 0usize;
    for l in 0..n {
        let mut iter = 0usize;
        loop {
            // Look for a negligible off-diagonal splitting the matrix.
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            total_iter += 1;
            if iter > 50 || total_iter > 10_000 {
                return Err(Error::EigenFailure {
                    iterations: total_iter,
                });
            }
            // Wilkinson shift from the leading 2 x 2 block.
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut restarted = false;
            let mut i = m;
            while i > l {
                let j = i - 1;
                let mut f = s * e[j];
                let b = c * e[j];
                r = f.hypot(g);
                e[j + 1] = r;
                if r == 0.0 {
                    // Underflow in the rotation chain; drop the shift and
                    // restart this eigenvalue.
                    d[j + 1] -= p;
                    e[m] = 0.0;
                    restarted = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[j + 1] - p;
                r = (d[j] - g) * s + 2.0 * c * b;
                p = s * r;
                d[j + 1] = g + p;
                g = c * r - b;
                if let Some(zz) = z.as_deref_mut() {
                    for row in zz.chunks_exact_mut(n) {
                        f = row[j + 1];
                        row[j + 1] = s * row[j] + c * f;
                        row[j] = c * row[j] - s * f;
                    }
                }
                i -= 1;
            }
            if restarted {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

// Sorts eigenvalues ascending, carrying eigenvector columns along.
fn sort_eigen(d: &mut [f64], z: Option<&mut [f64]>) {
    let n = d.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].partial_cmp(&d[b]).expect("eigenvalues are finite"));
    let sorted: Vec<f64> = order.iter().map(|&k| d[k]).collect();
    d.copy_from_slice(&sorted);
    if let Some(z) = z {
        let mut scratch = vec![0.0; n];
        for row in z.chunks_exact_mut(n) {
            for (dst, &k) in scratch.iter_mut().zip(order.iter()) {
                *dst = row[k];
            }
            row.copy_from_slice(&scratch);
        }
    }
}

// One or two Newton corrections on the orthonormal recurrence; rejects
// steps that are too large to be a polish.
fn polish_root(family: PolynomialFamily, n: usize, x0: f64) -> f64 {
    let mut x = x0;
    for _ in 0..2 {
        let Ok((q, dq)) = orthonormal_with_deriv(family, n, x) else {
            return x;
        };
        if dq == 0.0 {
            return x;
        }
        let dx = -q / dq;
        if !dx.is_finite() || dx.abs() > 1e-8 * x.abs().max(1.0) {
            return x;
        }
        x += dx;
    }
    x
}

// Value and derivative of the degree-n orthonormal polynomial via the
// symmetrized recurrence.
fn orthonormal_with_deriv(family: PolynomialFamily, n: usize, x: f64) -> Result<(f64, f64)> {
    let mut q_prev = 0.0;
    let mut dq_prev = 0.0;
    let mut q = (0.5 * family.ln_norm_sq_recip(0)).exp();
    let mut dq = 0.0;
    let mut off_prev = 1.0;
    for m in 0..n {
        let (b, off) = family.symmetric_coeffs(m)?;
        let (q_next, dq_next) = if m == 0 {
            ((x - b) * q / off, q / off)
        } else {
            (
                ((x - b) * q - off_prev * q_prev) / off,
                (q + (x - b) * dq - off_prev * dq_prev) / off,
            )
        };
        q_prev = q;
        dq_prev = dq;
        q = q_next;
        dq = dq_next;
        off_prev = off;
    }
    Ok((q, dq))
}

/// Zeros of the degree-n polynomial of the family, ascending. Computed as
/// eigenvalues of the symmetrized recurrence matrix with a Newton polish.
pub fn zeros(family: PolynomialFamily, n: usize) -> Result<Vec<f64>> {
    let jm = JacobiMatrix::new(family, n)?;
    let mut d = jm.diag().to_vec();
    let mut e = jm.offdiag().to_vec();
    e.push(0.0);
    tridiag_ql(&mut d, &mut e, None)?;
    sort_eigen(&mut d, None);
    for x in d.iter_mut() {
        *x = polish_root(family, n, *x);
    }
    Ok(d)
}

/// Gauss rule of the family: nodes, weights, and the orthogonal matrix of
/// normalised eigenvectors of the recurrence matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    family: PolynomialFamily,
    n: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    // Row-major n x n; column k is the unit eigenvector at node k, i.e.
    // u[m * n + k] is s_m P_m(x_k) scaled so the column has norm 1.
    u: Vec<f64>,
}

impl QuadratureRule {
    pub fn new(family: PolynomialFamily, n: usize) -> Result<Self> {
        let jm = JacobiMatrix::new(family, n)?;
        let mut d = jm.diag().to_vec();
        let mut e = jm.offdiag().to_vec();
        e.push(0.0);
        let mut z = vec![0.0_f64; n * n];
        for k in 0..n {
            z[k * n + k] = 1.0;
        }
        tridiag_ql(&mut d, &mut e, Some(&mut z))?;
        sort_eigen(&mut d, Some(&mut z));
        for x in d.iter_mut() {
            *x = polish_root(family, n, *x);
        }
        // Fix each eigenvector's sign so its first component is positive;
        // the first component of the exact eigenvector is s_0 P_0 > 0 up
        // to normalisation, so this pins U rather than leaving per-column
        // sign noise.
        for k in 0..n {
            let lead = z[k];
            if lead < 0.0 {
                for m in 0..n {
                    z[m * n + k] = -z[m * n + k];
                }
            }
        }
        let mu0 = family.total_measure();
        let weights: Vec<f64> = (0..n).map(|k| mu0 * z[k] * z[k]).collect();
        let u = z;
        for (k, (&x, &w)) in d.iter().zip(weights.iter()).enumerate() {
            if !x.is_finite() || !(w > 0.0) {
                return Err(Error::EigenFailure { iterations: k });
            }
        }
        Ok(QuadratureRule {
            family,
            n,
            nodes: d,
            weights,
            u,
        })
    }

    pub fn family(&self) -> PolynomialFamily {
        self.family
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Entry `m` of the unit eigenvector attached to node `k`;
    /// proportional to `s_m P_m(x_k)` down each column.
    pub fn ortho_value(&self, m: usize, k: usize) -> f64 {
        self.u[m * self.n + k]
    }

    /// Row-major `n x n` table of [`ortho_value`]; the matrix is
    /// orthogonal up to rounding.
    ///
    /// [`ortho_value`]: QuadratureRule::ortho_value
    pub fn ortho_table(&self) -> &[f64] {
        &self.u
    }
}

/// Gauss weights of the order-n rule, in node order.
pub fn gauss_weights(family: PolynomialFamily, n: usize) -> Result<Vec<f64>> {
    Ok(QuadratureRule::new(family, n)?.weights.clone())
}

/// Zero-spacing summary in the phase coordinate over a window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacingDiagnostics {
    /// Mean gap between consecutive mapped zeros in the window.
    pub mean_gap: f64,
    /// Largest relative deviation of a gap from the asymptotic value.
    pub max_dev: f64,
    /// The asymptotic gap the deviations are measured against.
    pub lambda: f64,
}

/// Measures how evenly the order-n zeros inside `window` are spaced in
/// the phase coordinate. The window must lie strictly inside the support
/// and contain at least two zeros.
pub fn spacing_diagnostics(
    family: PolynomialFamily,
    n: usize,
    window: (f64, f64),
) -> Result<SpacingDiagnostics> {
    let (lo, hi) = window;
    let (a, b) = family.interval();
    if !(lo < hi) || lo <= a || hi >= b {
        return Err(Error::InvalidParameter(alloc::format!(
            "window ({lo}, {hi}) must be strictly inside ({a}, {b})"
        )));
    }
    let xs = zeros(family, n)?;
    let inside: Vec<f64> = xs.into_iter().filter(|&x| x > lo && x < hi).collect();
    if inside.len() < 2 {
        return Err(Error::InsufficientNodes {
            found: inside.len(),
        });
    }
    let lambda = family.asymptotic_gap(n);
    let mut sum = 0.0;
    let mut max_dev: f64 = 0.0;
    for pair in inside.windows(2) {
        // The phase map may be decreasing (arc cosine), so take the gap
        // magnitude.
        let gap = (family.sigma_map(pair[1]) - family.sigma_map(pair[0])).abs();
        sum += gap;
        max_dev = max_dev.max((gap - lambda).abs() / lambda);
    }
    Ok(SpacingDiagnostics {
        mean_gap: sum / (inside.len() - 1) as f64,
        max_dev,
        lambda,
    })
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
    fn matrix_entries_match_recurrence() {
        let jm = JacobiMatrix::new(PolynomialFamily::Hermite, 4).unwrap();
        assert_eq!(jm.diag(), &[0.0; 4]);
        for (j, off) in jm.offdiag().iter().enumerate() {
            assert_relative_eq!(*off, ((j + 1) as f64 / 2.0).sqrt(), max_relative = 1e-15);
        }

        let jm = JacobiMatrix::new(PolynomialFamily::Laguerre { alpha: 0.5 }, 3).unwrap();
        assert_relative_eq!(jm.diag()[1], 3.5, max_relative = 1e-15);
        assert_relative_eq!(jm.offdiag()[0], 1.5_f64.sqrt(), max_relative = 1e-15);
    }

    #[test]
    fn two_point_rules_match_closed_forms() {
        // Hermite n = 2: nodes +-1/sqrt(2), weights sqrt(pi)/2.
        let rule = QuadratureRule::new(PolynomialFamily::Hermite, 2).unwrap();
        let r = 0.5_f64.sqrt();
        assert_abs_diff_eq!(rule.nodes()[0], -r, epsilon = 1e-14);
        assert_abs_diff_eq!(rule.nodes()[1], r, epsilon = 1e-14);
        let half = core::f64::consts::PI.sqrt() / 2.0;
        assert_relative_eq!(rule.weights()[0], half, max_relative = 1e-13);
        assert_relative_eq!(rule.weights()[1], half, max_relative = 1e-13);

        // Laguerre alpha = 0, n = 2: nodes 2 -+ sqrt(2), weights
        // (2 +- sqrt(2))/4.
        let rule = QuadratureRule::new(PolynomialFamily::Laguerre { alpha: 0.0 }, 2).unwrap();
        let s = 2.0_f64.sqrt();
        assert_relative_eq!(rule.nodes()[0], 2.0 - s, max_relative = 1e-13);
        assert_relative_eq!(rule.nodes()[1], 2.0 + s, max_relative = 1e-13);
        assert_relative_eq!(rule.weights()[0], (2.0 + s) / 4.0, max_relative = 1e-12);
        assert_relative_eq!(rule.weights()[1], (2.0 - s) / 4.0, max_relative = 1e-12);

        // Legendre n = 3: nodes -+sqrt(3/5), 0; weights 5/9, 8/9, 5/9.
        let rule = QuadratureRule::new(LEGENDRE, 3).unwrap();
        let t = (3.0_f64 / 5.0).sqrt();
        assert_abs_diff_eq!(rule.nodes()[0], -t, epsilon = 1e-14);
        assert_abs_diff_eq!(rule.nodes()[1], 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(rule.nodes()[2], t, epsilon = 1e-14);
        assert_relative_eq!(rule.weights()[0], 5.0 / 9.0, max_relative = 1e-13);
        assert_relative_eq!(rule.weights()[1], 8.0 / 9.0, max_relative = 1e-13);
        assert_relative_eq!(rule.weights()[2], 5.0 / 9.0, max_relative = 1e-13);
    }

    #[test]
    fn zeros_match_eigenvalues_of_reference_cases() {
        // Hermite H_3 zeros: 0, +-sqrt(3/2).
        let xs = zeros(PolynomialFamily::Hermite, 3).unwrap();
        assert_abs_diff_eq!(xs[0], -(1.5_f64).sqrt(), epsilon = 1e-13);
        assert_abs_diff_eq!(xs[1], 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(xs[2], (1.5_f64).sqrt(), epsilon = 1e-13);
    }

    #[test]
    fn ortho_table_columns_match_direct_evaluation() {
        // Each column of U is the orthonormal sequence at the node,
        // scaled to unit Euclidean norm.
        let fam = PolynomialFamily::Laguerre { alpha: 0.3 };
        let rule = QuadratureRule::new(fam, 12).unwrap();
        for k in 0..12 {
            let q = fam.orthonormal_sequence(12, rule.nodes()[k]).unwrap();
            let norm = q.iter().map(|v| v * v).sum::<f64>().sqrt();
            for (m, qm) in q.iter().enumerate() {
                assert_abs_diff_eq!(rule.ortho_value(m, k), qm / norm, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn weights_are_positive_and_sum_to_total_measure() {
        for fam in [
            PolynomialFamily::Hermite,
            PolynomialFamily::Laguerre { alpha: 1.7 },
            PolynomialFamily::Jacobi {
                alpha: 0.3,
                beta: -0.4,
            },
        ] {
            let rule = QuadratureRule::new(fam, 25).unwrap();
            let mut sum = 0.0;
            for &w in rule.weights() {
                assert!(w > 0.0);
                sum += w;
            }
            assert_relative_eq!(sum, fam.total_measure(), max_relative = 1e-11);
        }
    }

    #[test]
    fn nodes_are_sorted_and_inside_support() {
        for fam in [
            PolynomialFamily::Hermite,
            PolynomialFamily::Laguerre { alpha: 0.0 },
            PolynomialFamily::Jacobi {
                alpha: 1.2,
                beta: 0.4,
            },
        ] {
            let rule = QuadratureRule::new(fam, 40).unwrap();
            let (a, b) = fam.interval();
            for pair in rule.nodes().windows(2) {
                assert!(pair[0] < pair[1]);
            }
            assert!(rule.nodes()[0] > a && rule.nodes()[39] < b);
        }
    }

    #[test]
    fn spacing_diagnostics_flags_and_windows() {
        let d = spacing_diagnostics(PolynomialFamily::Hermite, 200, (-1.0, 1.0)).unwrap();
        assert!(d.max_dev < 0.05, "max_dev = {}", d.max_dev);
        assert_relative_eq!(d.mean_gap, d.lambda, max_relative = 0.05);

        let d = spacing_diagnostics(LEGENDRE, 200, (-0.9, 0.9)).unwrap();
        assert!(d.max_dev < 0.05, "max_dev = {}", d.max_dev);

        let d = spacing_diagnostics(
            PolynomialFamily::Laguerre { alpha: 0.0 },
            400,
            (10.0, 100.0),
        )
        .unwrap();
        assert!(d.max_dev < 0.1, "max_dev = {}", d.max_dev);

        assert!(matches!(
            spacing_diagnostics(PolynomialFamily::Hermite, 5, (-0.1, 0.1)),
            Err(Error::InsufficientNodes { .. })
        ));
        assert!(matches!(
            spacing_diagnostics(LEGENDRE, 10, (-0.5, 1.5)),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn rejects_order_zero() {
        assert!(QuadratureRule::new(PolynomialFamily::Hermite, 0).is_err());
    }
}
