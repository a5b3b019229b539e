//! `C_N(α, T)`, the Selberg-type product `S_N(α, β)`, the totally complex
//! integral `C^-_N(α)` (product form and Cauchy determinant), Pochhammer.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::moments::moment_m;
use super::{binomial, factorial, int, pow2, ratio, require_positive, volume, VolumeClass};
use crate::error::{Error, Result};
use crate::poly::ratpoly::RatPoly;

/// Rising factorial `(a)_k = a (a+1) ... (a+k-1)`.
pub fn pochhammer(a: &BigRational, k: u64) -> BigRational {
    let mut acc = BigRational::one();
    let mut x = a.clone();
    for _ in 0..k {
        acc *= &x;
        x += BigRational::one();
    }
    acc
}

/// `∫_{Ω_N} |a_N|^{α-1} P(T) dV` as a polynomial in `T`.
///
/// `Ω_0` is the single point `P = 1`, so `C_0 = 1`.
pub fn c_n(alpha: &BigRational, n: u64) -> Result<RatPoly> {
    require_positive(alpha, "alpha")?;
    if n == 0 {
        return Ok(RatPoly::new(vec![BigRational::one()]));
    }
    let pref = c_n_scalar(alpha, n)?;
    let m = n / 2;
    let fm = factorial(m);
    let norm = BigRational::new(&fm * &fm, factorial(2 * m));
    let mut coeffs = vec![BigRational::zero(); n as usize + 1];
    for i in 0..=m {
        let cb = BigRational::from_integer(binomial(2 * i, i) * binomial(2 * m - 2 * i, m - i));
        let (weight, power) = if n % 2 == 1 {
            (ratio(2 * i as i64 + 1, 2 * m as i64 + 1), 2 * i + 1)
        } else {
            let two_i = int(2 * i as i64);
            ((two_i + alpha) / (int(2 * m as i64) + alpha), 2 * i)
        };
        coeffs[power as usize] = &pref * weight * &norm * cb;
    }
    Ok(RatPoly::new(coeffs))
}

/// `∫_{Ω_N} |a_N|^{α-1} dV = D_N · M_N(α)`, the leading coefficient of [`c_n`].
pub fn c_n_scalar(alpha: &BigRational, n: u64) -> Result<BigRational> {
    Ok(volume(VolumeClass::All, n)? * moment_m(alpha, n)?)
}

/// `Γ(j)` for a positive integer `j`.
fn gamma_int(j: u64) -> BigInt {
    factorial(j - 1)
}

/// `S_N(α, β) = ∫_{Ω_N} P(1)^{α-1} |P(-1)|^{β-1} dV` for positive integers.
pub fn selberg_exact(alpha: u64, beta: u64, n: u64) -> Result<BigRational> {
    if alpha == 0 || beta == 0 {
        return Err(Error::Domain("alpha and beta must be positive".into()));
    }
    if n == 0 {
        return Err(Error::InvalidInput("degree must be at least 1".into()));
    }
    let s = alpha + beta;
    let mut acc = BigRational::one();
    let mut k = 1;
    while 2 * k <= n {
        let num = pow2(s + 2 * k - 2) * gamma_int(s + k - 1) * gamma_int(k);
        acc *= BigRational::new(num, gamma_int(s + 2 * k - 1));
        k += 1;
    }
    let mut k = 0;
    while 2 * k < n {
        let num = pow2(s + 2 * k - 1) * gamma_int(alpha + k) * gamma_int(beta + k);
        acc *= BigRational::new(num, gamma_int(s + 2 * k));
        k += 1;
    }
    Ok(acc)
}

/// [`selberg_exact`] for real parameters via log-gamma.
pub fn selberg_f64(alpha: f64, beta: f64, n: u64) -> Result<f64> {
    if !(alpha > 0.0 && beta > 0.0) {
        return Err(Error::Domain("alpha and beta must be positive".into()));
    }
    if n == 0 {
        return Err(Error::InvalidInput("degree must be at least 1".into()));
    }
    let lg = libm::lgamma;
    let ln2 = std::f64::consts::LN_2;
    let s = alpha + beta;
    let mut ln = 0.0;
    let mut k = 1;
    while 2 * k <= n {
        let kf = k as f64;
        ln += (s + 2.0 * kf - 2.0) * ln2 + lg(s + kf - 1.0) + lg(kf) - lg(s + 2.0 * kf - 1.0);
        k += 1;
    }
    let mut k = 0;
    while 2 * k < n {
        let kf = k as f64;
        ln += (s + 2.0 * kf - 1.0) * ln2 + lg(alpha + kf) + lg(beta + kf) - lg(s + 2.0 * kf);
        k += 1;
    }
    Ok(ln.exp())
}

fn k_const(n: u64) -> BigRational {
    let mut acc = BigRational::one();
    for k in 1..n {
        let fk = factorial(k);
        let f2 = factorial(2 * k + 1);
        acc *= BigRational::new(&fk * &fk * &fk * factorial(k + 1) * pow2(4 * k + 1), &f2 * &f2);
    }
    acc
}

/// `∫_{Ω_{0,N}} |a_{2N}|^{α-1} dV` over totally complex polynomials of degree `2N`, product form.
pub fn c_minus(alpha: &BigRational, n: u64) -> Result<BigRational> {
    require_positive(alpha, "alpha")?;
    if n == 0 {
        return Err(Error::InvalidInput("N must be at least 1".into()));
    }
    let half = ratio(1, 2);
    let nn = int(n as i64);
    let mut acc = k_const(n) * BigRational::from_integer(binomial(2 * n, n));
    acc *= int(4 * n as i64) + alpha * int(2);
    acc *= pochhammer(&(&nn + alpha + &half), n);
    let den = pochhammer(&(&nn + alpha), n + 1);
    if den.is_zero() {
        return Err(Error::Domain(format!("pole at alpha = {alpha}")));
    }
    acc /= den;
    for k in 1..=n {
        let kk = int(k as i64);
        let num = pochhammer(&(alpha + &kk), 2 * n + 1 - 2 * k);
        let den = pochhammer(&(alpha - &half + &kk), 2 * n + 2 - 2 * k);
        if den.is_zero() {
            return Err(Error::Domain(format!("pole at alpha = {alpha}")));
        }
        acc *= num / den;
    }
    Ok(acc)
}

/// The same integral as the determinant of `[8 / ((2α+2i+2j-3)(2i-2j+1))]_{i,j=1..N}`.
pub fn c_minus_det(alpha: &BigRational, n: u64) -> Result<BigRational> {
    require_positive(alpha, "alpha")?;
    if n == 0 {
        return Err(Error::InvalidInput("N must be at least 1".into()));
    }
    let n = n as usize;
    let two_alpha = alpha * int(2);
    let mut m: Vec<Vec<BigRational>> = (1..=n as i64)
        .map(|i| {
            (1..=n as i64)
                .map(|j| {
                    let d = (&two_alpha + int(2 * i + 2 * j - 3)) * int(2 * i - 2 * j + 1);
                    int(8) / d
                })
                .collect()
        })
        .collect();
    Ok(determinant(&mut m))
}

/// Determinant by Gaussian elimination over the rationals (destroys `m`).
pub(crate) fn determinant(m: &mut [Vec<BigRational>]) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &pivot;
            for c in col..n {
                let t = &f * &m[col][c];
                m[r][c] -= t;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&ratio(1, 2), 2), ratio(3, 4));
        assert_eq!(pochhammer(&ratio(7, 3), 1), ratio(7, 3));
        assert_eq!(pochhammer(&int(3), 3), int(60));
        assert_eq!(pochhammer(&int(-2), 0), int(1));
    }

    #[test]
    fn c_n_small_degrees() {
        let a = ratio(5, 2);
        // (2/α) T
        assert_eq!(c_n(&a, 1).unwrap(), RatPoly::new(vec![int(0), int(2) / &a]));
        // (4/α)(α/(α+2) + T^2)
        let expect = RatPoly::new(vec![
            int(4) / (&a + int(2)),
            int(0),
            int(4) / &a,
        ]);
        assert_eq!(c_n(&a, 2).unwrap(), expect);
        assert_eq!(c_n(&int(1), 2).unwrap().eval(&int(1)), ratio(16, 3));
        assert!(c_n(&int(0), 3).is_err());
    }

    #[test]
    fn selberg_small() {
        assert_eq!(selberg_exact(1, 1, 1).unwrap(), int(2));
        assert_eq!(selberg_exact(2, 1, 2).unwrap(), ratio(16, 3));
        for n in 1..=8 {
            assert_eq!(selberg_exact(1, 1, n).unwrap(), volume(VolumeClass::All, n).unwrap());
            let e = crate::exact::rational_to_f64(&selberg_exact(3, 2, n).unwrap());
            let f = selberg_f64(3.0, 2.0, n).unwrap();
            assert!((e - f).abs() <= 1e-12 * e, "{n}: {e} {f}");
        }
        assert!(selberg_exact(0, 1, 2).is_err());
        assert!(selberg_f64(-1.0, 1.0, 2).is_err());
    }

    #[test]
    fn c_minus_first_values() {
        let a = ratio(3, 2);
        assert_eq!(c_minus(&a, 1).unwrap(), int(2));
        assert_eq!(c_minus_det(&a, 1).unwrap(), int(2));
        assert_eq!(c_minus(&int(1), 1).unwrap(), ratio(8, 3));
        for n in 1..=4 {
            assert_eq!(c_minus(&a, n).unwrap(), c_minus_det(&a, n).unwrap(), "N={n}");
            assert_eq!(
                c_minus(&int(1), n).unwrap(),
                volume(VolumeClass::TotallyComplex, 2 * n).unwrap()
            );
        }
    }

    #[test]
    fn determinant_basic() {
        let mut m = vec![vec![int(0), int(1)], vec![int(2), int(3)]];
        assert_eq!(determinant(&mut m), int(-2));
        let mut z = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(determinant(&mut z), int(0));
    }
}
