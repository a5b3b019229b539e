//! Volumes `D_N`, `D^P_N`, `D^+_N`, `D^-_N` and their logarithms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{factorial, pow2, VolumeClass};
use crate::error::{Error, Result};

/// Reference value of the limiting constant for the totally real ratio.
pub const CONSTANT_C: f64 = 1.24514;
/// Relative band used when comparing probes against [`CONSTANT_C`].
pub const CONSTANT_C_TOLERANCE: f64 = 0.01;

pub fn constant_c() -> f64 {
    CONSTANT_C
}

/// `k!^2 2^{2k+1} / (2k+1)!`, the one-dimensional factor of `D_N`.
fn d_factor(k: u64) -> BigRational {
    let f = factorial(k);
    BigRational::new(&f * &f * pow2(2 * k + 1), factorial(2 * k + 1))
}

fn d_all(n: u64) -> BigRational {
    let m = n / 2;
    let mut acc = BigRational::one();
    for k in 0..m {
        let f = d_factor(k);
        acc *= &f * &f;
    }
    if n % 2 == 1 {
        acc *= d_factor(m);
    }
    acc
}

fn d_plus(n: u64) -> BigRational {
    let mut acc = BigRational::one();
    for k in 0..n {
        let f = factorial(k);
        acc *= BigRational::new(pow2(k + 1) * &f * &f, factorial(2 * k + 1));
    }
    acc
}

/// Exact volume of the requested region of degree-`n` monic polynomials.
pub fn volume(class: VolumeClass, n: u64) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::InvalidInput("degree must be at least 1".into()));
    }
    Ok(match class {
        VolumeClass::All => d_all(n),
        VolumeClass::Perron => {
            let d = d_all(n);
            let div = if n % 2 == 0 { n + 1 } else { n };
            d / BigRational::from_integer(BigInt::from(div))
        }
        VolumeClass::TotallyReal => d_plus(n),
        VolumeClass::TotallyComplex => {
            if n % 2 == 1 {
                return Err(Error::Domain("totally complex volume needs even degree".into()));
            }
            let h = n / 2;
            let fh = factorial(h);
            let scale = BigRational::new(pow2(2 * h * (h - 1)) * factorial(n), &fh * &fh);
            scale * d_plus(n)
        }
    })
}

fn ln_fact(k: u64) -> f64 {
    libm::lgamma(k as f64 + 1.0)
}

/// Natural log of [`volume`], usable far beyond exact-rational range.
pub fn log_volume(class: VolumeClass, n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidInput("degree must be at least 1".into()));
    }
    let ln2 = std::f64::consts::LN_2;
    let ln_factor = |k: u64| 2.0 * ln_fact(k) + (2 * k + 1) as f64 * ln2 - ln_fact(2 * k + 1);
    let ln_all = || {
        let m = n / 2;
        let mut s: f64 = (0..m).map(|k| 2.0 * ln_factor(k)).sum();
        if n % 2 == 1 {
            s += ln_factor(m);
        }
        s
    };
    let ln_plus = || -> f64 {
        (0..n).map(|k| (k + 1) as f64 * ln2 + 2.0 * ln_fact(k) - ln_fact(2 * k + 1)).sum()
    };
    Ok(match class {
        VolumeClass::All => ln_all(),
        VolumeClass::Perron => {
            let div = if n % 2 == 0 { n + 1 } else { n };
            ln_all() - (div as f64).ln()
        }
        VolumeClass::TotallyReal => ln_plus(),
        VolumeClass::TotallyComplex => {
            if n % 2 == 1 {
                return Err(Error::Domain("totally complex volume needs even degree".into()));
            }
            let h = n / 2;
            (2 * h * (h - 1)) as f64 * ln2 + ln_fact(n) - 2.0 * ln_fact(h) + ln_plus()
        }
    })
}

/// `2^{N^2/2} (D^+_N / D_N) / N^{1/8}`, evaluated in log space.
pub fn asymptotic_constant_probe(n: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidInput("probe needs N >= 2".into()));
    }
    let nf = n as f64;
    let ln = nf * nf / 2.0 * std::f64::consts::LN_2
        + log_volume(VolumeClass::TotallyReal, n)?
        - log_volume(VolumeClass::All, n)?
        - nf.ln() / 8.0;
    Ok(ln.exp())
}

/// `√(2π) M^{3/8} D^-_M / (2 D_M)` for even `M`; tends to the same constant.
pub fn complex_constant_probe(m: u64) -> Result<f64> {
    if m < 2 || m % 2 == 1 {
        return Err(Error::InvalidInput("complex probe needs even M >= 2".into()));
    }
    let mf = m as f64;
    let ln = 0.5 * (2.0 * std::f64::consts::PI).ln() + 0.375 * mf.ln()
        + log_volume(VolumeClass::TotallyComplex, m)?
        - log_volume(VolumeClass::All, m)?
        - std::f64::consts::LN_2;
    Ok(ln.exp())
}

/// Smallest `X` with `Vol · X^{N(N+1)/2} >= 1`.
pub fn smallest_x(class: VolumeClass, n: u64) -> Result<f64> {
    let lv = log_volume(class, n)?;
    let dim = (n * (n + 1) / 2) as f64;
    Ok((-lv / dim).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio};

    #[test]
    fn small_volumes() {
        let v = |c, n| volume(c, n).unwrap();
        assert_eq!(v(VolumeClass::All, 1), int(2));
        assert_eq!(v(VolumeClass::All, 2), int(4));
        assert_eq!(v(VolumeClass::All, 3), ratio(16, 3));
        assert_eq!(v(VolumeClass::All, 4), ratio(64, 9));
        assert_eq!(v(VolumeClass::TotallyReal, 2), ratio(4, 3));
        assert_eq!(v(VolumeClass::TotallyReal, 3), ratio(16, 45));
        assert_eq!(v(VolumeClass::TotallyReal, 4), ratio(64, 1575));
        assert_eq!(v(VolumeClass::TotallyComplex, 2), ratio(8, 3));
        assert_eq!(v(VolumeClass::Perron, 2), ratio(4, 3));
        assert!(volume(VolumeClass::TotallyComplex, 3).is_err());
        assert!(volume(VolumeClass::All, 0).is_err());
    }

    #[test]
    fn log_volume_matches_exact() {
        for n in 1..=16u64 {
            for c in VolumeClass::ALL {
                if c == VolumeClass::TotallyComplex && n % 2 == 1 {
                    continue;
                }
                let exact = crate::exact::log10_rational(&volume(c, n).unwrap()) * std::f64::consts::LN_10;
                let lv = log_volume(c, n).unwrap();
                assert!((exact - lv).abs() < 1e-9 * (1.0 + lv.abs()), "{c} {n}: {exact} vs {lv}");
            }
        }
    }

    #[test]
    fn smallest_x_quadratic() {
        let x = smallest_x(VolumeClass::All, 2).unwrap();
        assert!((x - 4f64.powf(-1.0 / 3.0)).abs() < 1e-14);
    }

    #[test]
    fn probes_are_finite() {
        let p = asymptotic_constant_probe(2).unwrap();
        assert!(p.is_finite() && p > 0.0);
        let q = complex_constant_probe(2).unwrap();
        assert!(q.is_finite() && q > 0.0);
    }
}
