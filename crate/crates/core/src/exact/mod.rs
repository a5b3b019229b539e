//! Exact rational evaluation of the closed forms: volumes, the generating
//! polynomials `C_N(α, T)`, Selberg-type products, moments and the real-root
//! expectations. Quantities too large for rationals are evaluated as logs.

mod format;
mod integrals;
mod moments;
mod roots;
mod volume;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::ratpoly::RatPoly;

pub use format::{format_decimal, log10_rational, parse_rational, rational_to_f64};
pub use integrals::{
    c_minus, c_minus_det, c_n, c_n_scalar, pochhammer, selberg_exact, selberg_f64,
};
pub use moments::{
    coeff_mean_a, coeff_mean_table, coeff_second_moment_a, coeff_second_moment_table,
    density_h, density_h_cdf, e_log_a_n, moment_m, perron_e_log_a_n, perron_moment, slice_moments,
};
pub use roots::{
    asymptotic_zeros_interval, conj_absolute, expected_real_roots, expected_zeros_interval,
    zeil_check,
};
pub use volume::{
    asymptotic_constant_probe, complex_constant_probe, constant_c, log_volume, smallest_x,
    volume, CONSTANT_C, CONSTANT_C_TOLERANCE,
};

/// Arbitrary-precision rational, always in lowest terms.
pub type ExactScalar = BigRational;

/// Polynomial in the formal variable `T` with rational coefficients.
pub type ExactPolyT = RatPoly;

/// Which subset of the coefficient space a volume refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VolumeClass {
    All,
    Perron,
    TotallyReal,
    TotallyComplex,
}

impl VolumeClass {
    pub const ALL: [VolumeClass; 4] =
        [VolumeClass::All, VolumeClass::Perron, VolumeClass::TotallyReal, VolumeClass::TotallyComplex];

    pub fn name(self) -> &'static str {
        match self {
            VolumeClass::All => "all",
            VolumeClass::Perron => "perron",
            VolumeClass::TotallyReal => "totally_real",
            VolumeClass::TotallyComplex => "totally_complex",
        }
    }
}

impl fmt::Display for VolumeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for VolumeClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "all" => Ok(VolumeClass::All),
            "perron" | "p" => Ok(VolumeClass::Perron),
            "totally_real" | "real" | "plus" => Ok(VolumeClass::TotallyReal),
            "totally_complex" | "complex" | "minus" => Ok(VolumeClass::TotallyComplex),
            _ => Err(Error::InvalidInput(format!("unknown volume class {s:?}"))),
        }
    }
}

pub(crate) fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub(crate) fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub(crate) fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub(crate) fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub(crate) fn pow2(e: u64) -> BigInt {
    BigInt::one() << e
}

pub(crate) fn require_positive(alpha: &BigRational, name: &str) -> Result<()> {
    if alpha <= &BigRational::zero() {
        return Err(Error::Domain(format!("{name} must be positive, got {alpha}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn helpers() {
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(pow2(10), BigInt::from(1024));
    }

    #[test]
    fn class_parsing() {
        assert_eq!("totally-real".parse::<VolumeClass>().unwrap(), VolumeClass::TotallyReal);
        assert_eq!("Perron".parse::<VolumeClass>().unwrap(), VolumeClass::Perron);
        assert!("mixed".parse::<VolumeClass>().is_err());
        assert_eq!(serde_json::to_string(&VolumeClass::TotallyComplex).unwrap(), "\"totally_complex\"");
    }
}
