//! Expected `|P(T)|` over `Ω_N` and the derived real-root expectations.
//!
//! The formula for `E|P(T)|` is conjectural for interior `T`; at `T = ±1` it
//! agrees with the proven `C_N(1, ±1) / D_N`. Every value here inherits the
//! conjectural status.

use num_rational::BigRational;
use num_traits::Zero;

use super::{binomial, int, pow2, ratio, volume, VolumeClass};
use crate::error::{Error, Result};
use crate::poly::ratpoly::RatPoly;

/// `Σ_k C(2m-2k, m-k) C(2k, k) T^{2k}`, optionally with weights `(2m-2k+1)/(2m+1)`.
fn central_sum(m: u64, weighted: bool) -> RatPoly {
    let mut c = vec![BigRational::zero(); 2 * m as usize + 1];
    for k in 0..=m {
        let mut v = BigRational::from_integer(binomial(2 * m - 2 * k, m - k) * binomial(2 * k, k));
        if weighted {
            v *= ratio((2 * m - 2 * k + 1) as i64, (2 * m + 1) as i64);
        }
        c[2 * k as usize] = v;
    }
    RatPoly::new(c)
}

/// Conjectured `E(Ω_N, |P(T)|)` for `T ∈ [-1, 1]`, as a polynomial in `T`.
pub fn conj_absolute(n: u64) -> RatPoly {
    if n == 0 {
        return RatPoly::one();
    }
    let m = n / 2;
    let first = central_sum(m, true);
    let (second, norm) = if n % 2 == 0 {
        (central_sum(m, false), pow2(2 * m) * binomial(2 * m, m))
    } else {
        (central_sum(m + 1, false), pow2(2 * m + 2) * binomial(2 * m, m))
    };
    (&first * &second).scale(&BigRational::new(1.into(), norm))
}

fn fibre_ratio(n: u64) -> BigRational {
    let prev = if n == 1 { int(1) } else { volume(VolumeClass::All, n - 1).expect("n >= 2") };
    prev / volume(VolumeClass::All, n).expect("n >= 1")
}

/// Expected number of real roots `r_N` on `Ω_N` (`r_0 = 0`).
pub fn expected_real_roots(n: u64) -> BigRational {
    if n == 0 {
        return BigRational::zero();
    }
    expected_on(n, &int(-1), &int(1))
}

fn expected_on(n: u64, a: &BigRational, b: &BigRational) -> BigRational {
    fibre_ratio(n) * conj_absolute(n - 1).definite_integral(a, b)
}

/// Expected number of roots in `[a, b] ⊂ [-1, 1]`.
pub fn expected_zeros_interval(n: u64, a: &BigRational, b: &BigRational) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::InvalidInput("degree must be at least 1".into()));
    }
    if a >= b {
        return Err(Error::InvalidInput("need a < b".into()));
    }
    if a < &int(-1) || b > &int(1) {
        return Err(Error::Domain("interval must lie in [-1, 1]".into()));
    }
    Ok(expected_on(n, a, b))
}

/// Large-`N` density limit `(1/2π) log |(1-a)(1+b) / ((1+a)(1-b))|` for `-1 < a < b < 1`.
pub fn asymptotic_zeros_interval(a: f64, b: f64) -> Result<f64> {
    if !(a < b) {
        return Err(Error::InvalidInput("need a < b".into()));
    }
    if !(a > -1.0 && b < 1.0) {
        return Err(Error::Domain("interval must lie in (-1, 1)".into()));
    }
    let v = ((1.0 - a) * (1.0 + b) / ((1.0 + a) * (1.0 - b))).abs().ln();
    Ok(v / (2.0 * std::f64::consts::PI))
}

/// Checks `r_{2N+1} = (3+4N)/(1+4N) r_{2N} + 1/(4N+1)` exactly.
pub fn zeil_check(n: u64) -> bool {
    let lhs = expected_real_roots(2 * n + 1);
    let nn = n as i64;
    let rhs = ratio(3 + 4 * nn, 1 + 4 * nn) * expected_real_roots(2 * n) + ratio(1, 4 * nn + 1);
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::c_n;

    #[test]
    fn conj_small() {
        assert_eq!(conj_absolute(2).eval(&int(0)), ratio(1, 2));
        assert_eq!(conj_absolute(2).eval(&int(1)), ratio(4, 3));
        assert_eq!(conj_absolute(1).eval(&int(0)), ratio(1, 2));
        assert_eq!(conj_absolute(1).eval(&int(1)), int(1));
    }

    #[test]
    fn endpoint_consistency() {
        for n in 1..=12u64 {
            let d = volume(VolumeClass::All, n).unwrap();
            let c = c_n(&int(1), n).unwrap();
            for t in [int(1), int(-1)] {
                let lhs = conj_absolute(n).eval(&t);
                let mut rhs = c.eval(&t) / &d;
                if n % 2 == 1 && t < BigRational::zero() {
                    rhs = -rhs;
                }
                assert_eq!(lhs, rhs, "N={n} T={t}");
            }
        }
    }

    #[test]
    fn first_real_root_counts() {
        assert_eq!(expected_real_roots(0), int(0));
        assert_eq!(expected_real_roots(1), int(1));
        assert_eq!(expected_real_roots(2), ratio(2, 3));
        assert_eq!(expected_real_roots(3), ratio(17, 15));
        assert!(zeil_check(1));
    }

    #[test]
    fn intervals() {
        let full = expected_zeros_interval(2, &int(-1), &int(1)).unwrap();
        assert_eq!(full, ratio(2, 3));
        assert!(expected_zeros_interval(2, &int(1), &int(0)).is_err());
        let s = asymptotic_zeros_interval(-0.3, 0.3).unwrap();
        assert!((s - (1.3f64 / 0.7).ln() / std::f64::consts::PI).abs() < 1e-14);
        let h = asymptotic_zeros_interval(0.0, 0.5).unwrap();
        assert!((h - 3f64.ln() / (2.0 * std::f64::consts::PI)).abs() < 1e-14);
        assert!(asymptotic_zeros_interval(0.5, 0.5).is_err());
        assert!(asymptotic_zeros_interval(-1.0, 0.5).is_err());
    }
}
