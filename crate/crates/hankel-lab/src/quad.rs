//! Quadrature rules for the radial integrals behind weighted disc norms.
//!
//! The radial weight `(1-r)^gamma` is singular at `r = 1` whenever
//! `gamma < 0`, so a plain rule on `[0, 1]` would converge hopelessly slowly.
//! The rule built here slices `[0, 1)` dyadically towards the endpoint
//! (Gauss-Legendre on each slice, where the weight is smooth) and finishes
//! with a Gauss-Jacobi segment on the residual interval, where the weight is
//! carried exactly by the rule itself.

use nalgebra::DMatrix;

use crate::error::{LabError, Result};

/// Gauss-Legendre nodes/weights on `[-1, 1]` via the Golub-Welsch eigenvalue
/// problem for the three-term recurrence.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 2);
    let mut jac = DMatrix::<f64>::zeros(n, n);
    for j in 1..n {
        let jf = j as f64;
        let b = jf / (4.0 * jf * jf - 1.0).sqrt();
        jac[(j - 1, j)] = b;
        jac[(j, j - 1)] = b;
    }
    nodes_from_jacobi_matrix(jac, 2.0)
}

/// Gauss-Jacobi nodes/weights on `[-1, 1]` for the weight
/// `(1-x)^alpha (1+x)^beta` with `alpha, beta > -1`.
pub fn gauss_jacobi(n: usize, alpha: f64, beta: f64) -> Result<Vec<(f64, f64)>> {
    if !(alpha > -1.0 && beta > -1.0) {
        return Err(LabError::RefusedParameter(format!(
            "jacobi exponents must exceed -1, got alpha={alpha} beta={beta}"
        )));
    }
    assert!(n >= 2);
    let mut jac = DMatrix::<f64>::zeros(n, n);
    let mut diag = (beta - alpha) / (2.0 + alpha + beta);
    for idx in 0..n - 1 {
        let j = idx as f64 + 1.0;
        let denom = 2.0 * j + alpha + beta;
        let off = 2.0 / denom
            * (j * (j + alpha) * (j + beta) * (j + alpha + beta) / ((denom + 1.0) * (denom - 1.0)))
                .sqrt();
        jac[(idx, idx)] = diag;
        jac[(idx, idx + 1)] = off;
        jac[(idx + 1, idx)] = off;
        diag = (beta * beta - alpha * alpha) / (denom * (denom + 2.0));
    }
    jac[(n - 1, n - 1)] = diag;
    // zeroth moment of the weight; with one exponent zero the Beta function
    // collapses to an elementary expression, which is the only case used by
    // the radial rule. Keep the general formula out until it is needed.
    let mu0 = if alpha == 0.0 {
        2f64.powf(beta + 1.0) / (beta + 1.0)
    } else if beta == 0.0 {
        2f64.powf(alpha + 1.0) / (alpha + 1.0)
    } else {
        return Err(LabError::RefusedParameter(
            "general two-sided jacobi weight not supported; one exponent must be 0".into(),
        ));
    };
    Ok(nodes_from_jacobi_matrix(jac, mu0))
}

fn nodes_from_jacobi_matrix(jac: DMatrix<f64>, mu0: f64) -> Vec<(f64, f64)> {
    let eig = jac.symmetric_eigen();
    let n = eig.eigenvalues.len();
    let mut rule: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let x = eig.eigenvalues[i];
            let q0 = eig.eigenvectors[(0, i)];
            (x, mu0 * q0 * q0)
        })
        .collect();
    rule.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    rule
}

/// Quadrature for `int_0^1 (1-r)^gamma g(r) dr`, `gamma > -1`, with the
/// weight folded into the returned weights: `sum_i w_i g(r_i)`.
///
/// Dyadic Gauss-Legendre slices `[1-2^-m, 1-2^-(m+1)]` cover the bulk until
/// the slice width drops below 1e-6; the remaining endpoint interval is
/// handled by a Gauss-Jacobi segment so the singular factor is integrated
/// exactly there.
pub fn radial_rule(gamma: f64, nodes_per_slice: usize) -> Result<Vec<(f64, f64)>> {
    if !(gamma > -1.0) {
        return Err(LabError::RefusedParameter(format!(
            "radial weight exponent must exceed -1, got {gamma}"
        )));
    }
    let npts = nodes_per_slice.max(8);
    let gl = gauss_legendre(npts);
    let mut rule = Vec::new();
    let mut m = 0u32;
    loop {
        let a = 1.0 - 2f64.powi(-(m as i32));
        let b = 1.0 - 2f64.powi(-(m as i32 + 1));
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        for &(x, w) in &gl {
            let r = mid + half * x;
            rule.push((r, w * half * (1.0 - r).powf(gamma)));
        }
        m += 1;
        if 2f64.powi(-(m as i32)) < 1e-6 {
            break;
        }
    }
    // tail [1-delta, 1]: substitute u = 1-r = delta (1+x)/2, so the weight
    // becomes (1+x)^gamma on [-1, 1]
    let delta = 2f64.powi(-(m as i32));
    let gj = gauss_jacobi(npts, 0.0, gamma)?;
    let scale = (delta / 2.0).powf(gamma + 1.0);
    for &(x, w) in &gj {
        let u = delta * (1.0 + x) / 2.0;
        rule.push((1.0 - u, w * scale));
    }
    Ok(rule)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn legendre_integrates_polynomials_exactly() {
        let rule = gauss_legendre(8);
        // int_{-1}^{1} x^k dx
        for k in 0..15usize {
            let got: f64 = rule.iter().map(|&(x, w)| w * x.powi(k as i32)).sum();
            let expect = if k % 2 == 0 { 2.0 / (k as f64 + 1.0) } else { 0.0 };
            assert_relative_eq!(got, expect, epsilon = 1e-13);
        }
    }

    #[test]
    fn jacobi_zeroth_moment() {
        for &beta in &[-0.8, -0.5, 0.0, 1.0, 3.0] {
            let rule = gauss_jacobi(12, 0.0, beta).unwrap();
            let got: f64 = rule.iter().map(|&(_, w)| w).sum();
            assert_relative_eq!(got, 2f64.powf(beta + 1.0) / (beta + 1.0), max_relative = 1e-12);
        }
    }

    #[test]
    fn jacobi_weighted_monomials() {
        // int_{-1}^1 (1+x)^beta x dx = 2^{beta+1} (beta / ((beta+1)(beta+2)))
        let beta = -0.6;
        let rule = gauss_jacobi(10, 0.0, beta).unwrap();
        let got: f64 = rule.iter().map(|&(x, w)| w * x).sum();
        let expect = 2f64.powf(beta + 1.0) * beta / ((beta + 1.0) * (beta + 2.0));
        assert_relative_eq!(got, expect, max_relative = 1e-11);
    }

    #[test]
    fn radial_rule_beta_values() {
        // int_0^1 (1-r)^g r dr = 1/((g+1)(g+2)), including a strongly
        // singular exponent
        for &g in &[-0.8f64, -0.5, 0.0, 1.0, 2.6] {
            let rule = radial_rule(g, 16).unwrap();
            let got: f64 = rule.iter().map(|&(r, w)| w * r).sum();
            assert_relative_eq!(got, 1.0 / ((g + 1.0) * (g + 2.0)), max_relative = 1e-9);
        }

        let rule = radial_rule(0.0, 16).unwrap();
        let got: f64 = rule.iter().map(|&(r, w)| w * r.powi(3)).sum();
        assert_relative_eq!(got, 0.25, max_relative = 1e-10);
    }

    #[test]
    fn radial_rule_refuses_divergent_weight() {
        assert!(radial_rule(-1.0, 16).is_err());
    }
}
