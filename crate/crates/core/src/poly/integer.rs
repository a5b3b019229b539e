//! Integer monic polynomials and their exact classification.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::ratpoly::{Endpoint, RatPoly};
use super::{
    bigint_to_f64, find_roots, ratpoly_from_monic_ints, schur_cohn, DiskClassification,
    MonicPoly, PerronStatus, Signature, DEFAULT_TOL,
};
use crate::error::{Error, Result};

/// Relative distance below which two float roots count as a cluster.
pub const CLUSTER_SEPARATION: f64 = 0.05;

/// Integer monic polynomial `x^N + a_1 x^{N-1} + ... + a_N`, stored as `[a_1, ..., a_N]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "IntRecord", into = "IntRecord")]
pub struct IntMonicPoly {
    coeffs: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
struct IntRecord {
    degree: usize,
    coeffs: Vec<String>,
}

impl TryFrom<IntRecord> for IntMonicPoly {
    type Error = Error;
    fn try_from(r: IntRecord) -> Result<Self> {
        if r.coeffs.len() != r.degree {
            return Err(Error::InvalidInput("degree does not match coefficient count".into()));
        }
        let coeffs = r
            .coeffs
            .iter()
            .map(|s| s.trim().parse::<BigInt>().map_err(|e| Error::InvalidInput(format!("{s}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMonicPoly { coeffs })
    }
}

impl From<IntMonicPoly> for IntRecord {
    fn from(p: IntMonicPoly) -> Self {
        IntRecord {
            degree: p.degree(),
            coeffs: p.coeffs.iter().map(|c| c.to_string()).collect(),
        }
    }
}

impl IntMonicPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self { coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect() }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Exact rational polynomial in ascending powers.
    pub fn to_ratpoly(&self) -> RatPoly {
        ratpoly_from_monic_ints(&self.coeffs)
    }

    pub fn to_monic(&self) -> MonicPoly {
        MonicPoly::new(self.coeffs.iter().map(bigint_to_f64).collect())
            .expect("finite for coefficients within float range")
    }

    /// Roots `z -> -z`: `a_k -> (-1)^k a_k`.
    pub fn negate_roots(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 0 { -c } else { c.clone() })
            .collect();
        Self { coeffs }
    }

    /// Exact root counts relative to the circle `|z| = radius`.
    pub fn classify_disk(&self, radius: &BigRational) -> Result<DiskClassification> {
        schur_cohn::classify_disk_radius(&self.to_ratpoly(), radius)
    }

    /// Exact signature from Sturm counts with multiplicity.
    pub fn signature_exact(&self) -> Signature {
        let n = self.degree();
        let real = self.to_ratpoly().count_real_roots(&Endpoint::NegInf, &Endpoint::PosInf);
        Signature { real, pairs: (n - real) / 2 }
    }

    /// Signature from well separated floating-point roots, falling back to
    /// [`Self::signature_exact`] when roots cluster or sit near the real axis.
    pub fn signature(&self) -> Signature {
        match self.separated_roots().map(|rs| rs.signature()) {
            Some(Ok(s)) => s,
            _ => self.signature_exact(),
        }
    }

    /// Float roots, provided no two are within [`CLUSTER_SEPARATION`] of each
    /// other (relative). A multiple root comes back from the root finder as a
    /// cluster whose spread grows like `ε^{1/m}`, which can fool the tolerance
    /// bands, so clustered root sets are decided exactly instead.
    fn separated_roots(&self) -> Option<super::RootSet> {
        let rs = find_roots(&self.to_monic(), DEFAULT_TOL).ok()?;
        let r = &rs.roots;
        for i in 0..r.len() {
            for j in i + 1..r.len() {
                let scale = r[i].norm().max(r[j].norm()).max(1.0);
                if (r[i] - r[j]).norm() < CLUSTER_SEPARATION * scale {
                    return None;
                }
            }
        }
        Some(rs)
    }

    /// Monic rational polynomial with integer coefficients, if it is one.
    fn from_monic_ratpoly(q: &RatPoly) -> Option<Self> {
        let n = q.degree()?;
        if !q.coeff(n).is_one() {
            return None;
        }
        let coeffs = (0..n).rev().map(|k| q.coeff(k)).map(|c| c.is_integer().then(|| c.to_integer()));
        coeffs.collect::<Option<Vec<_>>>().map(Self::new)
    }

    /// Perron test: floating-point roots decide clear cases, near ties and
    /// repeated roots are settled with exact arithmetic.
    pub fn perron_status(&self) -> PerronStatus {
        if self.degree() == 0 {
            return PerronStatus::NotPerron;
        }
        if let Some(rs) = self.separated_roots() {
            return self.perron_from_roots(&rs);
        }
        let p = self.to_ratpoly();
        let sqf = p.square_free_part();
        if sqf.degree() == p.degree() {
            // distinct but close roots: the root finder is still accurate
            return match find_roots(&self.to_monic(), DEFAULT_TOL) {
                Ok(rs) => self.perron_from_roots(&rs),
                Err(_) => PerronStatus::Indeterminate,
            };
        }
        // same root set as the square-free part, but the top root must be simple
        let Some(base) = Self::from_monic_ratpoly(&sqf) else { return PerronStatus::Indeterminate };
        match base.perron_status() {
            PerronStatus::Perron => {}
            other => return other,
        }
        let Ok(rs) = find_roots(&base.to_monic(), DEFAULT_TOL) else { return PerronStatus::Indeterminate };
        let Some(rho) = rs.real_roots().max_by(|a, b| a.abs().total_cmp(&b.abs())) else {
            return PerronStatus::Indeterminate;
        };
        let repeated = p.exact_div(&sqf).expect("square-free part divides");
        match isolate_real_root(&sqf, rho) {
            Some((lo, hi)) => {
                let shared = repeated.count_real_roots_distinct(&Endpoint::Finite(lo), &Endpoint::Finite(hi));
                if shared == 0 {
                    PerronStatus::Perron
                } else {
                    PerronStatus::NotPerron
                }
            }
            None => PerronStatus::Indeterminate,
        }
    }

    fn perron_from_roots(&self, rs: &super::RootSet) -> PerronStatus {
        let status = rs.perron_status();
        if status != PerronStatus::Indeterminate {
            return status;
        }
        self.perron_escalated(&rs.roots)
    }

    fn perron_escalated(&self, approx: &[num_complex::Complex64]) -> PerronStatus {
        let p = self.to_ratpoly();
        let real_count = p.count_real_roots(&Endpoint::NegInf, &Endpoint::PosInf);
        if real_count == 0 {
            return PerronStatus::NotPerron;
        }
        // largest-modulus real root estimate
        let rho = approx
            .iter()
            .filter(|z| z.im.abs() <= 1e-6 * (1.0 + z.norm()))
            .map(|z| z.re)
            .max_by(|a, b| a.abs().total_cmp(&b.abs()));
        let Some(rho) = rho else { return PerronStatus::Indeterminate };
        if rho == 0.0 {
            // every real root is 0; a unique zero root means degree 1
            return if self.degree() == 1 { PerronStatus::Perron } else { PerronStatus::NotPerron };
        }
        match modulus_tie(&self.coeffs, rho) {
            Some(true) => return PerronStatus::NotPerron,
            Some(false) => {}
            None => return PerronStatus::Indeterminate,
        }
        // no other root shares |ρ|; separate the two sides by a rational radius
        let m = rho.abs();
        for k in 12..48 {
            let eps = 2f64.powi(-k);
            for (r, below) in [(m * (1.0 - eps), true), (m * (1.0 + eps), false)] {
                let Some(r) = BigRational::from_float(r) else { continue };
                let Ok(d) = schur_cohn::classify_disk_radius(&p, &r) else { continue };
                if d.boundary != 0 {
                    continue;
                }
                let real_out = real_roots_outside(&p, &r);
                if below && d.exterior == 1 && real_out == 1 {
                    return PerronStatus::Perron;
                }
                if !below && d.exterior >= 1 && real_out == 0 {
                    return PerronStatus::NotPerron;
                }
            }
        }
        PerronStatus::Indeterminate
    }
}

/// Rational interval holding exactly one real root of the square-free `p`,
/// the one approximated by `rho`.
fn isolate_real_root(p: &RatPoly, rho: f64) -> Option<(BigRational, BigRational)> {
    let mut delta = 1e-3 * rho.abs().max(1.0);
    for _ in 0..40 {
        let lo = BigRational::from_float(rho - delta)?;
        let hi = BigRational::from_float(rho + delta)?;
        match p.count_real_roots_distinct(&Endpoint::Finite(lo.clone()), &Endpoint::Finite(hi.clone())) {
            0 => return None,
            1 => return Some((lo, hi)),
            _ => delta /= 16.0,
        }
    }
    None
}

/// Real roots with `|x| > r`, counted with multiplicity.
fn real_roots_outside(p: &RatPoly, r: &BigRational) -> usize {
    let hi = p.count_real_roots(&Endpoint::Finite(r.clone()), &Endpoint::PosInf);
    let lo = p.count_real_roots(&Endpoint::NegInf, &Endpoint::Finite(-r.clone()));
    // (-inf, -r] includes -r; a root there would make |x| = r, excluded by the caller
    hi + lo
}

/// Power sums `s_1..s_m` of the roots of a monic polynomial `[a_1..a_n]`.
fn power_sums(a: &[BigRational], m: usize) -> Vec<BigRational> {
    let n = a.len();
    let coef = |k: usize| if k >= 1 && k <= n { a[k - 1].clone() } else { BigRational::zero() };
    let mut s: Vec<BigRational> = vec![BigRational::zero()];
    for k in 1..=m {
        let mut acc = coef(k) * BigRational::from_integer(BigInt::from(k));
        for i in 1..k {
            acc += coef(i) * &s[k - i];
        }
        s.push(-acc);
    }
    s
}

/// Monic polynomial (ascending powers) of degree `m` with the given power sums `p[1..=m]`.
fn from_power_sums(p: &[BigRational], m: usize) -> RatPoly {
    let mut e = vec![BigRational::one()];
    for k in 1..=m {
        let mut acc = BigRational::zero();
        for i in 1..=k {
            let term = &e[k - i] * &p[i];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push(acc / BigRational::from_integer(BigInt::from(k)));
    }
    // y^m - e1 y^{m-1} + e2 y^{m-2} - ...
    let mut asc = vec![BigRational::zero(); m + 1];
    for (k, ek) in e.into_iter().enumerate() {
        asc[m - k] = if k % 2 == 0 { ek } else { -ek };
    }
    RatPoly::new(asc)
}

/// Exact test whether some other root of `p` has the same modulus as the
/// real root approximated by `rho`. `None` when `rho` can not be isolated.
fn modulus_tie(coeffs: &[BigInt], rho: f64) -> Option<bool> {
    let n = coeffs.len();
    let a: Vec<BigRational> = coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let pairs = n * (n - 1) / 2;
    let s = power_sums(&a, 2 * pairs.max(n));
    let sq_sums: Vec<BigRational> = (0..=n).map(|k| s[2 * k].clone()).collect();
    let squares = from_power_sums(&sq_sums, n);
    if pairs == 0 {
        return Some(false);
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let mut prod_sums = vec![BigRational::zero()];
    for k in 1..=pairs {
        prod_sums.push((&s[k] * &s[k] - &s[2 * k]) / &two);
    }
    let products = from_power_sums(&prod_sums, pairs);
    let both = &products * &products.reflect();
    let shared = squares.gcd(&both);
    if shared.degree().unwrap_or(0) == 0 {
        return Some(false);
    }
    let sf = squares.square_free_part();
    let target = rho * rho;
    let mut delta = 1e-6;
    let count_in = |poly: &RatPoly, d: f64| -> Option<usize> {
        let lo = BigRational::from_float(target * (1.0 - d))?;
        let hi = BigRational::from_float(target * (1.0 + d))?;
        Some(poly.count_real_roots_distinct(&Endpoint::Finite(lo), &Endpoint::Finite(hi)))
    };
    let mut found = None;
    for _ in 0..40 {
        match count_in(&sf, delta)? {
            0 => return None,
            1 => {
                found = Some(delta);
                break;
            }
            _ => delta /= 16.0,
        }
    }
    let delta = found?;
    let hits = count_in(&shared.square_free_part(), delta)?;
    Some(hits > 0)
}


#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn classify_quadratics() {
        let p = IntMonicPoly::from_i64(&[-1, -1]);
        assert_eq!(p.perron_status(), PerronStatus::Perron);
        assert_eq!(p.signature_exact(), Signature { real: 2, pairs: 0 });
        let d = p.classify_disk(&r(2)).unwrap();
        assert!(d.in_open_disk());
        let d = p.classify_disk(&r(1)).unwrap();
        assert_eq!(d.exterior, 1);

        let p = IntMonicPoly::from_i64(&[0, 1]);
        let d = p.classify_disk(&r(1)).unwrap();
        assert_eq!(d.boundary, 2);
        assert_eq!(p.perron_status(), PerronStatus::NotPerron);
    }

    #[test]
    fn exact_ties() {
        // x^2 - 2: roots ±√2
        assert_eq!(IntMonicPoly::from_i64(&[0, -2]).perron_status(), PerronStatus::NotPerron);
        // x^4 - 2: four roots of modulus 2^{1/4}
        assert_eq!(IntMonicPoly::from_i64(&[0, 0, 0, -2]).perron_status(), PerronStatus::NotPerron);
        // (x - 2)^2 (x + 1)
        assert_eq!(IntMonicPoly::from_i64(&[-3, 0, 4]).perron_status(), PerronStatus::NotPerron);
        // (x - 2)(x^2 + 4): real root tied with a complex pair
        assert_eq!(IntMonicPoly::from_i64(&[-2, 4, -8]).perron_status(), PerronStatus::NotPerron);
        // (x - 1)(x^2 + x + 1) = x^3 - 1
        assert_eq!(IntMonicPoly::from_i64(&[0, 0, -1]).perron_status(), PerronStatus::NotPerron);
        // x^3 - x - 1: plastic number, Perron
        assert_eq!(IntMonicPoly::from_i64(&[0, -1, -1]).perron_status(), PerronStatus::Perron);
    }

    #[test]
    fn repeated_roots() {
        // (x - 3)^3 and (x + 3)^3: a triple top root is tied with itself
        assert_eq!(IntMonicPoly::from_i64(&[-9, 27, -27]).perron_status(), PerronStatus::NotPerron);
        assert_eq!(IntMonicPoly::from_i64(&[9, 27, 27]).perron_status(), PerronStatus::NotPerron);
        // (x - 3)(x - 1)^3: simple top root over a repeated smaller one
        assert_eq!(IntMonicPoly::from_i64(&[-6, 12, -10, 3]).perron_status(), PerronStatus::Perron);
        // (x - 1)^2 (x^2 + 1)
        assert_eq!(IntMonicPoly::from_i64(&[-2, 2, -2, 1]).perron_status(), PerronStatus::NotPerron);
        let p = IntMonicPoly::from_i64(&[-9, 27, -27]);
        assert_eq!(p.signature(), Signature { real: 3, pairs: 0 });
        assert_eq!(p.signature(), p.signature_exact());
    }

    #[test]
    fn tie_detector_direct() {
        // x^2 - 2 around √2
        assert_eq!(modulus_tie(&[0.into(), (-2).into()], 2f64.sqrt()), Some(true));
        // (x - 2)(x + 1)
        assert_eq!(modulus_tie(&[(-1).into(), (-2).into()], 2.0), Some(false));
    }

    #[test]
    fn power_sum_reconstruction() {
        // x^2 - 3x + 2 -> power sums 3, 5; squares poly has roots 1, 4
        let a = [r(-3), r(2)];
        let s = power_sums(&a, 4);
        assert_eq!(s[1], r(3));
        assert_eq!(s[2], r(5));
        let sq = from_power_sums(&[r(0), s[2].clone(), s[4].clone()], 2);
        assert_eq!(sq, RatPoly::from_ints(&[4, -5, 1]));
    }

    #[test]
    fn json_uses_decimal_strings() {
        let p = IntMonicPoly::from_i64(&[-3, 12]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"degree":2,"coeffs":["-3","12"]}"#);
        let back: IntMonicPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn negation_involution() {
        let p = IntMonicPoly::from_i64(&[1, -2, 3]);
        assert_eq!(p.negate_roots(), IntMonicPoly::from_i64(&[-1, -2, -3]));
        assert_eq!(p.negate_roots().negate_roots(), p);
    }
}
