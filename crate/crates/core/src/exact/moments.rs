//! Moments of the constant term and of the coefficients under the uniform
//! measure on `Ω_N` and `Ω^P_N`.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::integrals::c_n;
use super::{int, ratio, require_positive, volume, VolumeClass};
use crate::error::{Error, Result};
use crate::poly::ratpoly::RatPoly;

/// `∏_{k=0}^{m} (1+2k)/(α+2k)` with `m = ⌊(N-1)/2⌋`.
fn odd_product(alpha: &BigRational, m_plus_one: u64) -> BigRational {
    let mut acc = BigRational::one();
    for k in 0..m_plus_one as i64 {
        acc *= int(1 + 2 * k) / (alpha + int(2 * k));
    }
    acc
}

/// `E(Ω_N, |a_N|^{α-1})`.
pub fn moment_m(alpha: &BigRational, n: u64) -> Result<BigRational> {
    require_positive(alpha, "alpha")?;
    if n == 0 {
        return Err(Error::InvalidInput("degree must be at least 1".into()));
    }
    Ok(odd_product(alpha, (n - 1) / 2 + 1))
}

/// `E(Ω^P_N, |a_N|^{α-1})`.
pub fn perron_moment(alpha: &BigRational, n: u64) -> Result<BigRational> {
    require_positive(alpha, "alpha")?;
    if n == 0 {
        return Err(Error::InvalidInput("degree must be at least 1".into()));
    }
    if n % 2 == 1 {
        return moment_m(alpha, n);
    }
    let nn = int(n as i64);
    let lead = (&nn + int(1)) / (&nn + alpha * int(2) - int(1));
    Ok(lead * odd_product(alpha, n / 2))
}

/// Density of `|a_N|` on `[0, 1]`: a normalised `(1 - x^2)^m`, `m = ⌊(N-1)/2⌋`.
pub fn density_h(x: f64, n: u64) -> f64 {
    if !(0.0..=1.0).contains(&x) || n == 0 {
        return 0.0;
    }
    let m = ((n - 1) / 2) as i32;
    (1.0 - x * x).powi(m) / h_norm(m)
}

/// `∫_0^1 (1-x^2)^m dx = 4^m m!^2 / (2m+1)!`.
fn h_norm(m: i32) -> f64 {
    let mut v = 1.0;
    for k in 1..=m {
        v *= (2 * k) as f64 / (2 * k + 1) as f64;
    }
    v
}

/// Distribution function of [`density_h`].
pub fn density_h_cdf(x: f64, n: u64) -> f64 {
    if x <= 0.0 || n == 0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    // I_{x^2}(1/2, m+1) through the terminating series in x
    let m = ((n - 1) / 2) as i32;
    let mut term = 1.0;
    let mut sum = 0.0;
    let x2 = x * x;
    let mut xp = x;
    for j in 0..=m {
        sum += term * xp / (2 * j + 1) as f64;
        term *= -((m - j) as f64) / (j + 1) as f64;
        xp *= x2;
    }
    (sum / h_norm(m)).clamp(0.0, 1.0)
}

/// `E(Ω_N, log |a_N|) = -(1 + 1/3 + ... + 1/(2m+1))`.
pub fn e_log_a_n(n: u64) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::InvalidInput("degree must be at least 1".into()));
    }
    let m = (n - 1) / 2;
    let mut acc = BigRational::zero();
    for k in 0..=m as i64 {
        acc -= ratio(1, 2 * k + 1);
    }
    Ok(acc)
}

/// `E(Ω^P_N, log |a_N|)`, the derivative of [`perron_moment`] at `α = 1`.
pub fn perron_e_log_a_n(n: u64) -> Result<BigRational> {
    if n % 2 == 1 {
        return e_log_a_n(n);
    }
    let mut acc = ratio(-2, n as i64 + 1);
    for k in 0..(n / 2) as i64 {
        acc -= ratio(1, 2 * k + 1);
    }
    Ok(acc)
}

/// Weight of `a_n` in the fibration `Ω_n → [-1, 1]`, proportional to the
/// volume of the slice: `(1-t^2)^{(n-1)/2}` for odd `n`, `(1-t^2)^{(n-2)/2}(1+t)` for even.
pub(crate) fn slice_weight(n: u64) -> RatPoly {
    let one_minus_sq = RatPoly::from_ints(&[1, 0, -1]);
    if n % 2 == 1 {
        one_minus_sq.pow(((n - 1) / 2) as usize)
    } else {
        &one_minus_sq.pow(((n - 2) / 2) as usize) * &RatPoly::from_ints(&[1, 1])
    }
}

/// `(E a_n, E a_n^2)` along the last fibre of `Ω_n`.
pub fn slice_moments(n: u64) -> (BigRational, BigRational) {
    let w = slice_weight(n);
    let (lo, hi) = (int(-1), int(1));
    let z = w.definite_integral(&lo, &hi);
    let m1 = (&w * &RatPoly::x()).definite_integral(&lo, &hi) / &z;
    let m2 = (&w * &RatPoly::from_ints(&[0, 0, 1])).definite_integral(&lo, &hi) / &z;
    (m1, m2)
}

/// `A_N(i) = E(Ω_N, a_i)`, `0 <= i <= N`, read off `C_N(1, T) / D_N`.
pub fn coeff_mean_a(n: u64, i: u64) -> Result<BigRational> {
    if i > n {
        return Err(Error::InvalidInput(format!("index {i} out of range for degree {n}")));
    }
    Ok(coeff_mean_table(n)?[i as usize].clone())
}

pub fn coeff_mean_table(n: u64) -> Result<Vec<BigRational>> {
    let c = c_n(&int(1), n)?;
    let d = volume(VolumeClass::All, n)?;
    Ok((0..=n).map(|i| c.coeff((n - i) as usize) / &d).collect())
}

/// `A_N(i, j) = E(Ω_N, a_i a_j)`, `0 <= i, j <= N`.
pub fn coeff_second_moment_a(n: u64, i: u64, j: u64) -> Result<BigRational> {
    if i > n || j > n {
        return Err(Error::InvalidInput(format!("index ({i}, {j}) out of range for degree {n}")));
    }
    Ok(coeff_second_moment_table(n)[i as usize][j as usize].clone())
}

/// Full table of `A_N(i, j)`, built up the fibration from `Ω_0 = {1}`.
///
/// With `P = x Q + t x^{N-1} Q(1/x)` we have `p_k = q_k + t q_{N-k}`, where
/// `Q` is uniform on `Ω_{N-1}` and independent of `t`, and `q_N = 0`.
pub fn coeff_second_moment_table(n: u64) -> Vec<Vec<BigRational>> {
    // a[i][j] = E q_i q_j for the current degree, indices 0..=deg
    let mut a = vec![vec![BigRational::one()]];
    for deg in 1..=n as usize {
        let (m1, m2) = slice_moments(deg as u64);
        let prev = |i: usize, j: usize| -> BigRational {
            if i >= deg || j >= deg {
                BigRational::zero()
            } else {
                a[i][j].clone()
            }
        };
        let mut next = vec![vec![BigRational::zero(); deg + 1]; deg + 1];
        for i in 0..=deg {
            for j in i..=deg {
                let v = prev(i, j)
                    + &m1 * (prev(i, deg - j) + prev(j, deg - i))
                    + &m2 * prev(deg - i, deg - j);
                next[j][i] = v.clone();
                next[i][j] = v;
            }
        }
        a = next;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moment_examples() {
        let a = ratio(7, 3);
        assert_eq!(moment_m(&a, 1).unwrap(), int(1) / &a);
        assert_eq!(moment_m(&int(2), 5).unwrap(), ratio(5, 16));
        assert_eq!(moment_m(&int(1), 9).unwrap(), int(1));
        assert_eq!(e_log_a_n(3).unwrap(), ratio(-4, 3));
        assert!(moment_m(&int(0), 3).is_err());
    }

    #[test]
    fn log_moment_is_derivative() {
        // finite difference of the moment generating functions at α = 1
        let h = ratio(1, 1_000_000);
        for n in 1..=9u64 {
            for (f, g) in [(moment_m as fn(&BigRational, u64) -> Result<BigRational>, e_log_a_n as fn(u64) -> Result<BigRational>), (perron_moment, perron_e_log_a_n)] {
                let d = (f(&(int(1) + &h), n).unwrap() - f(&(int(1) - &h), n).unwrap()) / (&h * int(2));
                let diff = crate::exact::rational_to_f64(&(d - g(n).unwrap()));
                assert!(diff.abs() < 1e-9, "N={n}: {diff}");
            }
        }
    }

    #[test]
    fn perron_moment_examples() {
        assert_eq!(perron_moment(&int(2), 21).unwrap(), ratio(88179, 524288));
        // Ω^P_2 is the totally real part of Ω_2; with roots x, y the measure is
        // |x - y| dx dy, so E|a_2| = ∫∫|xy||x-y| / ∫∫|x-y| = (4/5) / (8/3)
        assert_eq!(perron_moment(&int(2), 2).unwrap(), ratio(3, 10));
        for n in [1u64, 3, 5, 7] {
            assert_eq!(perron_moment(&ratio(5, 3), n).unwrap(), moment_m(&ratio(5, 3), n).unwrap());
        }
    }

    #[test]
    fn perron_moment_from_generating_polynomial() {
        // ∫_{Ω^P_N} |a_N|^{α-1} = 4 C_{N-1}(α, 1) / (N (N + 2α - 1))
        for n in 2..=12u64 {
            for alpha in [int(1), int(2), ratio(3, 2), ratio(7, 4)] {
                let c = c_n(&alpha, n - 1).unwrap().eval(&int(1));
                let nn = int(n as i64);
                let total = int(4) * c / (&nn * (&nn + &alpha * int(2) - int(1)));
                let expect = total / volume(VolumeClass::Perron, n).unwrap();
                assert_eq!(perron_moment(&alpha, n).unwrap(), expect, "N={n} α={alpha}");
            }
        }
    }

    #[test]
    fn density_normalised() {
        for n in [1u64, 2, 3, 6, 11] {
            let steps = 20000;
            let h = 1.0 / steps as f64;
            let s: f64 = (0..steps).map(|k| density_h((k as f64 + 0.5) * h, n) * h).sum();
            assert!((s - 1.0).abs() < 1e-6, "{n}: {s}");
            assert!((density_h_cdf(0.37, n) - {
                let k = (0.37 / h) as usize;
                (0..k).map(|j| density_h((j as f64 + 0.5) * h, n) * h).sum::<f64>()
            })
            .abs()
                < 1e-4);
        }
    }

    #[test]
    fn slice_weights_rebuild_volumes() {
        for n in 1..=10u64 {
            let w = slice_weight(n).definite_integral(&int(-1), &int(1));
            let prev = if n == 1 { int(1) } else { volume(VolumeClass::All, n - 1).unwrap() };
            assert_eq!(prev * w, volume(VolumeClass::All, n).unwrap());
        }
    }

    #[test]
    fn slice_moment_values() {
        for n in 1..=12u64 {
            let (m1, m2) = slice_moments(n);
            let nn = n as i64;
            if n % 2 == 0 {
                assert_eq!(m1, ratio(1, nn + 1));
                assert_eq!(m2, ratio(1, nn + 1));
            } else {
                assert_eq!(m1, int(0));
                assert_eq!(m2, ratio(1, nn + 2));
            }
        }
    }

    #[test]
    fn coefficient_moments() {
        assert_eq!(coeff_mean_a(2, 2).unwrap(), ratio(1, 3));
        assert_eq!(coeff_second_moment_a(2, 2, 2).unwrap(), ratio(1, 3));
        for n in 1..=10u64 {
            let means = coeff_mean_table(n).unwrap();
            let table = coeff_second_moment_table(n);
            assert_eq!(means[0], int(1));
            for i in 0..=n as usize {
                // first row of the second-moment table is the mean
                assert_eq!(table[0][i], means[i], "N={n} i={i}");
                if i % 2 == 1 {
                    assert!(means[i].is_zero());
                }
            }
        }
        assert!(coeff_mean_a(3, 4).is_err());
    }
}
