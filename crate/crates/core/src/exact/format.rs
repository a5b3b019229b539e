//! Decimal rendering and parsing of exact rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `log10 |q|` to double precision for rationals of any size; `-inf` for zero.
pub fn log10_rational(q: &BigRational) -> f64 {
    if q.is_zero() {
        return f64::NEG_INFINITY;
    }
    log10_int(q.numer()) - log10_int(q.denom())
}

fn log10_int(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.abs().to_f64().unwrap().log10();
    }
    let shift = bits - 64;
    let top = (n.abs() >> shift).to_f64().unwrap();
    top.log10() + shift as f64 * std::f64::consts::LOG10_2
}

/// Nearest `f64`, saturating to infinity and flushing to zero outside range.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    let l = log10_rational(q);
    let sign = if q.is_negative() { -1.0 } else { 1.0 };
    if l > 308.5 {
        return sign * f64::INFINITY;
    }
    if l < -330.0 {
        return sign * 0.0;
    }
    if let (Some(a), Some(b)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if a.is_finite() && b.is_finite() && b != 0.0 && (a / b).is_normal() {
            return a / b;
        }
    }
    // 64-bit integer quotient, then scale back by the power of two
    let (n, d) = (q.numer().abs(), q.denom().clone());
    let shift = n.bits() as i64 - d.bits() as i64 - 64;
    let quot = if shift >= 0 { n / (d << shift as u64) } else { (n << (-shift) as u64) / d };
    let v = sign * quot.to_f64().unwrap();
    libm::ldexp(v, shift as i32)
}

/// Render `q` with `sig` significant digits, rounding half away from zero.
///
/// Values with decimal exponent in `[-5, 15)` use positional notation,
/// everything else `d.ddde±X`.
pub fn format_decimal(q: &BigRational, sig: usize) -> String {
    let sig = sig.max(1);
    if q.is_zero() {
        return "0".to_string();
    }
    let neg = q.is_negative();
    let a = q.abs();
    let mut e = log10_rational(&a).floor() as i64;
    // digits = round(a * 10^{sig-1-e}); correct e if the estimate was off by one
    let mut digits = scaled_round(&a, sig as i64 - 1 - e);
    let upper = BigInt::from(10u32).pow(sig as u32);
    let lower = BigInt::from(10u32).pow(sig as u32 - 1);
    if digits >= upper {
        e += 1;
        digits = scaled_round(&a, sig as i64 - 1 - e);
    } else if digits < lower {
        e -= 1;
        digits = scaled_round(&a, sig as i64 - 1 - e);
    }
    if digits >= upper {
        e += 1;
        digits /= 10;
    }
    let mut s = digits.to_string();
    let body = if (-5..15).contains(&e) {
        if e >= 0 {
            let int_len = (e + 1) as usize;
            if s.len() <= int_len {
                s.push_str(&"0".repeat(int_len - s.len()));
                s
            } else {
                let frac = s.split_off(int_len);
                trim_fraction(s, frac)
            }
        } else {
            let zeros = "0".repeat((-e - 1) as usize);
            trim_fraction("0".to_string(), format!("{zeros}{s}"))
        }
    } else {
        let frac = s.split_off(1);
        format!("{}e{}", trim_fraction(s, frac), e)
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn trim_fraction(int: String, frac: String) -> String {
    let frac = frac.trim_end_matches('0');
    if frac.is_empty() {
        int
    } else {
        format!("{int}.{frac}")
    }
}

fn scaled_round(a: &BigRational, p: i64) -> BigInt {
    let ten = BigInt::from(10u32);
    let (num, den) = if p >= 0 {
        (a.numer() * ten.pow(p as u32), a.denom().clone())
    } else {
        (a.numer().clone(), a.denom() * ten.pow((-p) as u32))
    };
    let (q, r) = num.div_rem(&den);
    if r * 2 >= den {
        q + 1
    } else {
        q
    }
}

/// Parse `"p/q"`, an integer, or a finite decimal such as `"-0.125"` or `"1e-3"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        return Ok(BigRational::new(p, q));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (ip, fp) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if ip.is_empty() && fp.is_empty() {
        return Err(bad());
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{ip}{fp}").parse().map_err(|_| bad())?;
    let e = exp as i64 - fp.len() as i64;
    let ten = BigInt::from(10u32);
    let mut v = if e >= 0 {
        BigRational::from_integer(digits * ten.pow(e as u32))
    } else {
        BigRational::new(digits, ten.pow((-e) as u32))
    };
    if neg {
        v = -v;
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio};

    #[test]
    fn formats() {
        assert_eq!(format_decimal(&int(4), 15), "4");
        assert_eq!(format_decimal(&ratio(1, 3), 15), "0.333333333333333");
        assert_eq!(format_decimal(&ratio(2, 3), 15), "0.666666666666667");
        assert_eq!(format_decimal(&ratio(-16, 3), 6), "-5.33333");
        assert_eq!(format_decimal(&ratio(1, 8), 15), "0.125");
        assert_eq!(format_decimal(&ratio(1, 1_000_000), 3), "1e-6");
        assert_eq!(format_decimal(&ratio(999_999, 1), 3), "1000000");
        let big = BigRational::from_integer(BigInt::from(10u32).pow(143) * 8308);
        assert_eq!(format_decimal(&big, 4), "8.308e146");
        assert_eq!(format_decimal(&int(9995), 3), "10000");
    }

    #[test]
    fn logs_and_floats() {
        let big = BigRational::from_integer(BigInt::from(10u32).pow(400));
        assert!((log10_rational(&big) - 400.0).abs() < 1e-12);
        assert_eq!(rational_to_f64(&big), f64::INFINITY);
        let tiny = BigRational::new(BigInt::from(10u32).pow(400) + 1, BigInt::from(10u32).pow(700));
        assert!((rational_to_f64(&tiny) / 1e-300 - 1.0).abs() < 1e-12);
        assert_eq!(rational_to_f64(&ratio(1, 3)), 1.0 / 3.0);
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("3/2").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational("-0.125").unwrap(), ratio(-1, 8));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("1e-3").unwrap(), ratio(1, 1000));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }
}
