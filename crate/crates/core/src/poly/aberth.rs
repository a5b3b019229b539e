//! Aberth–Ehrlich simultaneous iteration for all roots of a real polynomial.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const MAX_ITERATIONS: u32 = 200;

/// Roots of `x^n + c[0] x^{n-1} + ... + c[n-1]`.
///
/// Exact zero trailing coefficients are deflated as exact zero roots before
/// iterating. Initial guesses follow the upper convex hull of
/// `(k, log|coefficient of x^k|)`, which places them on circles whose radii
/// match the root moduli to first order.
pub fn aberth_roots(c: &[f64], tol: f64) -> Result<(Vec<Complex64>, u32)> {
    let mut zeros = 0;
    let mut coeffs = c.to_vec();
    while coeffs.last() == Some(&0.0) {
        coeffs.pop();
        zeros += 1;
    }
    let n = coeffs.len();
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    if n == 0 {
        return Ok((roots, 0));
    }
    // ascending powers, monic
    let mut asc: Vec<f64> = coeffs.iter().rev().copied().collect();
    asc.push(1.0);

    if n == 1 {
        roots.push(Complex64::new(-asc[0], 0.0));
        return Ok((roots, 0));
    }

    let deriv: Vec<f64> = asc.iter().enumerate().skip(1).map(|(k, a)| k as f64 * a).collect();
    let abs_asc: Vec<f64> = asc.iter().map(|a| a.abs()).collect();
    let mut last = Error::NonConvergence { iterations: 0, max_correction: f64::NAN };
    for offset in OFFSETS {
        match iterate(&asc, &abs_asc, &deriv, initial_guesses(&asc, offset), tol) {
            Ok((z, iterations)) => {
                roots.extend(z);
                return Ok((roots, iterations));
            }
            Err(e) => last = e,
        }
    }
    Err(last)
}

/// Starting-angle offsets tried in turn when an attempt stalls.
const OFFSETS: [f64; 3] = [0.4, 1.3, 2.2];

fn iterate(
    asc: &[f64],
    abs_asc: &[f64],
    deriv: &[f64],
    mut z: Vec<Complex64>,
    tol: f64,
) -> Result<(Vec<Complex64>, u32)> {
    let n = z.len();
    let mut converged = vec![false; n];
    let mut iterations = 0;
    let mut max_corr = f64::INFINITY;
    while iterations < MAX_ITERATIONS {
        iterations += 1;
        max_corr = 0.0;
        for i in 0..n {
            if converged[i] {
                continue;
            }
            let zi = z[i];
            let (p, err_bound) = horner_with_bound(asc, abs_asc, zi);
            if p.norm() <= err_bound {
                converged[i] = true;
                continue;
            }
            let scale = zi.norm().max(1.0);
            let dp = horner(deriv, zi);
            let ratio = p / dp;
            let mut sum = Complex64::new(0.0, 0.0);
            let mut collided = false;
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    let d = zi - zj;
                    if d.norm() <= 1e-3 * tol * scale {
                        collided = true;
                    }
                    sum += 1.0 / d;
                }
            }
            if collided {
                // two iterates on the same point away from a root: push one off
                z[i] = zi + Complex64::from_polar(1e-3 * scale, 0.7 + i as f64);
                max_corr = f64::INFINITY;
                continue;
            }
            let w = ratio / (1.0 - ratio * sum);
            if !w.re.is_finite() || !w.im.is_finite() {
                return Err(Error::NonConvergence { iterations, max_correction: f64::NAN });
            }
            z[i] = zi - w;
            let rel = w.norm() / scale;
            max_corr = max_corr.max(rel);
            // a small Aberth step alone can come from a nearby iterate, so the
            // Newton step has to be small as well
            if rel <= tol && ratio.norm() <= tol * scale * n as f64 {
                converged[i] = true;
            }
        }
        if converged.iter().all(|&c| c) {
            return Ok((z, iterations));
        }
    }
    Err(Error::NonConvergence { iterations, max_correction: max_corr })
}

fn horner(asc: &[f64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &a in asc.iter().rev() {
        acc = acc * z + a;
    }
    acc
}

/// Horner evaluation plus a running rounding-error bound.
fn horner_with_bound(asc: &[f64], abs_asc: &[f64], z: Complex64) -> (Complex64, f64) {
    let r = z.norm();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut mag = 0.0;
    for (a, b) in asc.iter().zip(abs_asc).rev() {
        acc = acc * z + a;
        mag = mag * r + b;
    }
    (acc, 4.0 * f64::EPSILON * mag)
}

fn initial_guesses(asc: &[f64], offset: f64) -> Vec<Complex64> {
    let n = asc.len() - 1;
    let pts: Vec<(usize, f64)> = asc
        .iter()
        .enumerate()
        .filter(|(_, a)| **a != 0.0)
        .map(|(k, a)| (k, a.abs().ln()))
        .collect();
    // upper convex hull, monotone chain
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let (k1, y1) = hull[hull.len() - 2];
            let (k2, y2) = hull[hull.len() - 1];
            let cross = (k2 as f64 - k1 as f64) * (p.1 - y1) - (y2 - y1) * (p.0 as f64 - k1 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut guesses = Vec::with_capacity(n);
    for w in hull.windows(2) {
        let (k1, y1) = w[0];
        let (k2, y2) = w[1];
        let m = k2 - k1;
        let radius = ((y1 - y2) / m as f64).exp();
        for j in 0..m {
            let theta = 2.0 * std::f64::consts::PI * (j as f64) / (m as f64)
                + offset
                + 2.0 * std::f64::consts::PI * k1 as f64 / n as f64;
            guesses.push(Complex64::from_polar(radius, theta));
        }
    }
    debug_assert_eq!(guesses.len(), n);
    guesses
}
