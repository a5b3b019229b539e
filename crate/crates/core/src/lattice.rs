//! Enumeration of integer monic polynomials with house at most `X`.
//!
//! The odometer runs over `a_1, ..., a_N` inside the box `|a_k| <= C(N,k) X^k`.
//! Prefixes are pruned exactly with the power sums: if every root has modulus
//! at most `X` then `|s_k| <= N X^k`, and `s_k` depends on `a_1..a_k` only.
//! Leaves are decided by an integer Schur–Cohn recursion on the scaled
//! polynomial, with the rational classifier as fallback when the recursion
//! degenerates (roots on the circle, reciprocal pairs).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{self, format_decimal, rational_to_f64, VolumeClass};
use crate::poly::{IntMonicPoly, PerronStatus, Signature};

/// Default cap on the number of odometer nodes.
pub const DEFAULT_BUDGET: f64 = 1e10;

/// Irreducibility is only decided up to this degree.
pub const IRREDUCIBILITY_CAP: usize = 6;

/// Largest `k` tried when testing whether a factor divides `x^k - 1`.
pub const CYCLOTOMIC_ORDER_BOUND: u32 = 60;

/// A lattice point found by [`enumerate_lattice`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePoint {
    pub poly: IntMonicPoly,
    /// House strictly below `X`; otherwise it equals `X`.
    pub strict: bool,
}

/// Work done by one enumeration.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationStats {
    /// Odometer nodes (prefixes) visited.
    pub nodes: u64,
    /// Complete polynomials that reached the exact disk test.
    pub leaves: u64,
    /// Leaves that needed the rational fallback.
    pub fallbacks: u64,
}

impl EnumerationStats {
    fn merge(&mut self, o: &Self) {
        self.nodes += o.nodes;
        self.leaves += o.leaves;
        self.fallbacks += o.fallbacks;
    }
}

/// Precomputed bounds for degree `n` and house bound `x = p/q`.
struct Bounds {
    n: usize,
    p: BigInt,
    q: BigInt,
    /// `floor(C(n,k) x^k)`, index `k`.
    coeff: Vec<i128>,
    /// `floor(n x^k)`, index `k`.
    power_sum: Vec<i128>,
}

impl Bounds {
    fn new(n: usize, x: &BigRational) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("degree must be at least 1".into()));
        }
        if !x.is_positive() {
            return Err(Error::InvalidInput(format!("house bound must be positive, got {x}")));
        }
        let too_big = || Error::BudgetExceeded { estimate: f64::INFINITY, budget: DEFAULT_BUDGET };
        let mut coeff = vec![1i128];
        let mut power_sum = vec![n as i128];
        for k in 1..=n {
            let xk = x.pow(k as i32);
            let b = (xk.clone() * BigRational::from_integer(exact::binomial(n as u64, k as u64))).floor();
            let s = (xk * BigRational::from_integer(BigInt::from(n))).floor();
            coeff.push(b.to_integer().to_i128().ok_or_else(too_big)?);
            power_sum.push(s.to_integer().to_i128().ok_or_else(too_big)?);
        }
        Ok(Self { n, p: x.numer().clone(), q: x.denom().clone(), coeff, power_sum })
    }

    /// Size of the coefficient box, an upper bound on the leaves.
    fn box_size(&self) -> f64 {
        self.coeff[1..].iter().map(|&b| 2.0 * b as f64 + 1.0).product()
    }

    /// Admissible range of `a_k` given the prefix power sums, or `None` if empty.
    fn range(&self, k: usize, a: &[i128], s: &[i128]) -> Option<(i128, i128)> {
        // s_k = -(k a_k + sum_{i<k} a_i s_{k-i})
        let sigma: i128 = (1..k).map(|i| a[i] * s[k - i]).sum();
        let l = self.power_sum[k];
        let kk = k as i128;
        let lo = Integer::div_ceil(&(-l - sigma), &kk).max(-self.coeff[k]);
        let hi = Integer::div_floor(&(l - sigma), &kk).min(self.coeff[k]);
        (lo <= hi).then_some((lo, hi))
    }
}

/// Visit every integer monic polynomial of degree `n` with house at most `x`.
///
/// Fails with [`Error::BudgetExceeded`] before doing any work if the
/// coefficient box holds more than `budget` candidates.
pub fn enumerate_lattice(
    n: usize,
    x: &BigRational,
    budget: f64,
    mut callback: impl FnMut(LatticePoint),
) -> Result<EnumerationStats> {
    let bounds = checked_bounds(n, x, budget)?;
    let mut stats = EnumerationStats::default();
    for a1 in -bounds.coeff[1]..=bounds.coeff[1] {
        stats.merge(&enumerate_slice(&bounds, a1, &mut callback));
    }
    Ok(stats)
}

fn checked_bounds(n: usize, x: &BigRational, budget: f64) -> Result<Bounds> {
    let bounds = Bounds::new(n, x).map_err(|e| match e {
        Error::BudgetExceeded { estimate, .. } => Error::BudgetExceeded { estimate, budget },
        e => e,
    })?;
    let estimate = bounds.box_size();
    if estimate > budget {
        return Err(Error::BudgetExceeded { estimate, budget });
    }
    Ok(bounds)
}

/// All lattice points with the given `a_1`.
fn enumerate_slice(bounds: &Bounds, a1: i128, callback: &mut impl FnMut(LatticePoint)) -> EnumerationStats {
    let n = bounds.n;
    let mut stats = EnumerationStats::default();
    let mut a = vec![0i128; n + 1];
    let mut s = vec![0i128; n + 1];
    a[0] = 1;
    s[0] = n as i128;
    // the a_1 range is the box itself: |s_1| = |a_1| <= n x
    stats.nodes += 1;
    a[1] = a1;
    s[1] = -a1;
    if a1.abs() > bounds.power_sum[1] {
        return stats;
    }
    descend(bounds, 2, &mut a, &mut s, &mut stats, callback);
    stats
}

fn descend(
    bounds: &Bounds,
    k: usize,
    a: &mut [i128],
    s: &mut [i128],
    stats: &mut EnumerationStats,
    callback: &mut impl FnMut(LatticePoint),
) {
    let n = bounds.n;
    if k > n {
        stats.leaves += 1;
        let poly = IntMonicPoly::new(a[1..].iter().map(|&c| BigInt::from(c)).collect());
        let (member, strict, fallback) = disk_membership(&poly, bounds);
        stats.fallbacks += u64::from(fallback);
        if member {
            callback(LatticePoint { poly, strict });
        }
        return;
    }
    let Some((lo, hi)) = bounds.range(k, a, s) else { return };
    let sigma: i128 = (1..k).map(|i| a[i] * s[k - i]).sum();
    for ak in lo..=hi {
        stats.nodes += 1;
        a[k] = ak;
        s[k] = -(k as i128 * ak + sigma);
        descend(bounds, k + 1, a, s, stats, callback);
    }
}

/// `(in closed disk, in open disk, used fallback)` for the disk of radius `p/q`.
fn disk_membership(poly: &IntMonicPoly, bounds: &Bounds) -> (bool, bool, bool) {
    let n = bounds.n;
    // p^n X^{-n} P(X z) = sum_k a_k q^k p^{n-k} z^{n-k}, ascending in z
    let mut asc = vec![BigInt::zero(); n + 1];
    let mut qk = BigInt::one();
    for k in 0..=n {
        let ak = if k == 0 { BigInt::one() } else { poly.coeffs()[k - 1].clone() };
        asc[n - k] = ak * &qk * bounds.p.pow((n - k) as u32);
        qk *= &bounds.q;
    }
    if let Some(inside) = schur_cohn_interior(asc) {
        return (inside == n, inside == n, false);
    }
    let x = BigRational::new(bounds.p.clone(), bounds.q.clone());
    let d = poly.classify_disk(&x).expect("nonzero polynomial");
    (d.in_closed_disk(), d.in_open_disk(), true)
}

/// Number of roots in the open unit disk of an integer polynomial (ascending
/// coefficients), or `None` if the Schur–Cohn recursion degenerates. A
/// `Some` answer also certifies that no root lies on the circle.
fn schur_cohn_interior(mut c: Vec<BigInt>) -> Option<usize> {
    // interior(original) = offset + sign * interior(current)
    let mut offset: i64 = 0;
    let mut sign: i64 = 1;
    while c.last().is_some_and(|v| v.is_zero()) {
        c.pop();
    }
    loop {
        let zeros = c.iter().take_while(|v| v.is_zero()).count();
        if zeros > 0 {
            offset += sign * zeros as i64;
            c.drain(..zeros);
        }
        let n = c.len().checked_sub(1)?;
        if n == 0 {
            return usize::try_from(offset).ok();
        }
        let (a, b) = (c[0].clone(), c[n].clone());
        if a.abs() == b.abs() {
            return None;
        }
        // a p - b p*, whose z^n coefficient cancels
        let mut t: Vec<BigInt> = (0..n).map(|k| &a * &c[k] - &b * &c[n - k]).collect();
        while t.last().is_some_and(|v| v.is_zero()) {
            t.pop();
        }
        if t.is_empty() {
            return None;
        }
        if b.abs() > a.abs() {
            offset += sign * n as i64;
            sign = -sign;
        }
        let g = t.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
        if !g.is_one() {
            for v in t.iter_mut() {
                *v /= &g;
            }
        }
        c = t;
    }
}

/// Exact classification of one lattice polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub in_disk: bool,
    pub strict: bool,
    pub signature: Signature,
    pub perron: PerronStatus,
    /// `None` above [`IRREDUCIBILITY_CAP`].
    pub irreducible: Option<bool>,
}

/// Classify `p` relative to the house bound `x`.
pub fn classify(p: &IntMonicPoly, x: &BigRational) -> Result<Classification> {
    let d = p.classify_disk(x)?;
    let irreducible = if p.degree() <= IRREDUCIBILITY_CAP && d.in_closed_disk() {
        Some(is_irreducible(p, x)?)
    } else {
        None
    };
    Ok(Classification {
        in_disk: d.in_closed_disk(),
        strict: d.in_open_disk(),
        signature: p.signature(),
        perron: p.perron_status(),
        irreducible,
    })
}

/// Irreducibility over the integers by exhaustive trial division.
///
/// Every monic factor of `p` has its roots among those of `p`, hence house at
/// most `x`, so the candidates are the monic integer polynomials of degree at
/// most `N/2` in the box `|g_k| <= C(d,k) x^k`.
pub fn is_irreducible(p: &IntMonicPoly, x: &BigRational) -> Result<bool> {
    let n = p.degree();
    if n > IRREDUCIBILITY_CAP {
        return Err(Error::InvalidInput(format!(
            "irreducibility is only decided up to degree {IRREDUCIBILITY_CAP}, got {n}"
        )));
    }
    if !p.classify_disk(x)?.in_closed_disk() {
        return Err(Error::InvalidInput(format!("house of {p:?} exceeds {x}")));
    }
    let coeffs = small_coeffs(p)?;
    Ok(smallest_factor(&coeffs, &FactorBounds::new(n, x)?).is_none())
}

fn small_coeffs(p: &IntMonicPoly) -> Result<Vec<i128>> {
    p.coeffs()
        .iter()
        .map(|c| c.to_i128().ok_or_else(|| Error::InvalidInput("coefficient out of range".into())))
        .collect()
}

/// Coefficient boxes `|g_k| <= C(d,k) x^k` for every degree `d <= n`.
struct FactorBounds {
    by_degree: Vec<Bounds>,
}

impl FactorBounds {
    fn new(n: usize, x: &BigRational) -> Result<Self> {
        Ok(Self { by_degree: (1..=n.max(1)).map(|d| Bounds::new(d, x)).collect::<Result<_>>()? })
    }

    fn get(&self, d: usize) -> &Bounds {
        &self.by_degree[d - 1]
    }
}

/// A monic factor of the smallest degree `1 <= d <= N/2`, if any.
fn smallest_factor(p: &[i128], bounds: &FactorBounds) -> Option<Vec<i128>> {
    let n = p.len();
    for d in 1..=n / 2 {
        let mut g = vec![0i128; d];
        if let Some(f) = search_factor(p, bounds.get(d), bounds.get(n - d), &mut g, 0) {
            return Some(f);
        }
    }
    None
}

fn search_factor(p: &[i128], bounds: &Bounds, quotient: &Bounds, g: &mut [i128], k: usize) -> Option<Vec<i128>> {
    let d = g.len();
    if k == d {
        return divide_monic(p, g, quotient).map(|_| g.to_vec());
    }
    let b = bounds.coeff[k + 1];
    for v in -b..=b {
        // the constant term of a factor divides the constant term of p
        if k + 1 == d {
            let pn = p[p.len() - 1];
            if v == 0 && pn != 0 || v != 0 && pn % v != 0 {
                continue;
            }
        }
        g[k] = v;
        if let Some(f) = search_factor(p, bounds, quotient, g, k + 1) {
            return Some(f);
        }
    }
    None
}

/// Exact quotient `p / g` for monic `g`, or `None` if it does not divide.
/// Quotient coefficients outside the house-bound box abort early.
fn divide_monic(p: &[i128], g: &[i128], quotient: &Bounds) -> Option<Vec<i128>> {
    let n = p.len();
    let d = g.len();
    let mut r: Vec<i128> = std::iter::once(1).chain(p.iter().copied()).collect();
    let mut q = Vec::with_capacity(n - d);
    for i in 0..=n - d {
        let c = r[i];
        if i > 0 {
            if c.abs() > quotient.coeff[i] {
                return None;
            }
            q.push(c);
        }
        for j in 0..d {
            r[i + 1 + j] = r[i + 1 + j].checked_sub(c.checked_mul(g[j])?)?;
        }
    }
    r[n - d + 1..].iter().all(|v| *v == 0).then_some(q)
}

/// Counts for one house comparison (strict or non-strict).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCounts {
    pub all: u64,
    pub perron: u64,
    pub non_perron: u64,
    pub totally_real: u64,
    pub totally_complex: u64,
    pub mixed: u64,
    /// Present when irreducibility was decided.
    pub irreducible: Option<IrreducibleCounts>,
    pub reducible: Option<u64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibleCounts {
    pub all: u64,
    pub perron: u64,
    pub totally_real: u64,
    pub totally_complex: u64,
}

impl ClassCounts {
    fn add(&mut self, c: &Classification) {
        self.all += 1;
        match c.perron {
            PerronStatus::Perron => self.perron += 1,
            PerronStatus::NotPerron => self.non_perron += 1,
            PerronStatus::Indeterminate => {}
        }
        let n = c.signature.degree();
        let real = c.signature.real == n;
        let complex = c.signature.real == 0;
        if real {
            self.totally_real += 1;
        } else if complex {
            self.totally_complex += 1;
        } else {
            self.mixed += 1;
        }
        if let Some(irr) = c.irreducible {
            let counts = self.irreducible.get_or_insert_with(Default::default);
            let reducible = self.reducible.get_or_insert(0);
            if irr {
                counts.all += 1;
                counts.perron += u64::from(c.perron == PerronStatus::Perron);
                counts.totally_real += u64::from(real);
                counts.totally_complex += u64::from(complex);
            } else {
                *reducible += 1;
            }
        }
    }

    fn merge(&mut self, o: &Self) {
        self.all += o.all;
        self.perron += o.perron;
        self.non_perron += o.non_perron;
        self.totally_real += o.totally_real;
        self.totally_complex += o.totally_complex;
        self.mixed += o.mixed;
        if let Some(oi) = &o.irreducible {
            let s = self.irreducible.get_or_insert_with(Default::default);
            s.all += oi.all;
            s.perron += oi.perron;
            s.totally_real += oi.totally_real;
            s.totally_complex += oi.totally_complex;
        }
        if let Some(r) = o.reducible {
            *self.reducible.get_or_insert(0) += r;
        }
    }

    /// Count of the class a volume refers to.
    pub fn get(&self, class: VolumeClass) -> u64 {
        match class {
            VolumeClass::All => self.all,
            VolumeClass::Perron => self.perron,
            VolumeClass::TotallyReal => self.totally_real,
            VolumeClass::TotallyComplex => self.totally_complex,
        }
    }
}

/// Main term `D*_N X^{N(N+1)/2}` for one class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub class: VolumeClass,
    /// Exact value as `p/q`.
    pub exact: String,
    /// 30 significant digits.
    pub decimal: String,
    pub value: f64,
    /// `count / predicted`, absent when the prediction is zero.
    pub strict_ratio: Option<f64>,
    pub non_strict_ratio: Option<f64>,
}

/// Result of [`count_classes`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountReport {
    #[serde(rename = "N")]
    pub degree: usize,
    #[serde(rename = "X")]
    pub x: String,
    pub strict: ClassCounts,
    pub non_strict: ClassCounts,
    pub predicted: Vec<Prediction>,
    /// Perron status could not be settled; must be zero for integer inputs.
    pub indeterminate: u64,
    pub stats: EnumerationStats,
}

impl CountReport {
    pub fn prediction(&self, class: VolumeClass) -> &Prediction {
        self.predicted.iter().find(|p| p.class == class).expect("every class is predicted")
    }
}

/// Predicted main term `volume(class, n) x^{n(n+1)/2}`; zero for odd-degree
/// totally complex polynomials.
pub fn predicted_count(class: VolumeClass, n: usize, x: &BigRational) -> Result<BigRational> {
    if class == VolumeClass::TotallyComplex && n % 2 == 1 {
        return Ok(BigRational::zero());
    }
    Ok(exact::volume(class, n as u64)? * x.pow((n * (n + 1) / 2) as i32))
}

/// Enumerate, classify and compare against the predicted main terms.
/// The `a_1` slices are processed in parallel when the `parallel` feature is on.
pub fn count_classes(n: usize, x: &BigRational, budget: f64) -> Result<CountReport> {
    let bounds = checked_bounds(n, x, budget)?;
    let factor_bounds = FactorBounds::new(n, x)?;
    let b1 = bounds.coeff[1];
    let slices: Vec<i128> = (-b1..=b1).collect();
    let parts = crate::sampler::map_indices(slices.len(), |i| {
        let mut strict = ClassCounts::default();
        let mut non_strict = ClassCounts::default();
        let mut indeterminate = 0u64;
        let stats = enumerate_slice(&bounds, slices[i], &mut |pt: LatticePoint| {
            let irreducible = (n <= IRREDUCIBILITY_CAP).then(|| {
                let c = small_coeffs(&pt.poly).expect("within the box");
                smallest_factor(&c, &factor_bounds).is_none()
            });
            let c = Classification {
                in_disk: true,
                strict: pt.strict,
                signature: pt.poly.signature(),
                perron: pt.poly.perron_status(),
                irreducible,
            };
            indeterminate += u64::from(c.perron == PerronStatus::Indeterminate);
            non_strict.add(&c);
            if c.strict {
                strict.add(&c);
            }
        });
        (strict, non_strict, indeterminate, stats)
    });
    let mut strict = ClassCounts::default();
    let mut non_strict = ClassCounts::default();
    let mut indeterminate = 0;
    let mut stats = EnumerationStats::default();
    for (s, ns, ind, st) in &parts {
        strict.merge(s);
        non_strict.merge(ns);
        indeterminate += ind;
        stats.merge(st);
    }
    let mut predicted = Vec::new();
    for class in VolumeClass::ALL {
        let q = predicted_count(class, n, x)?;
        let value = rational_to_f64(&q);
        let ratio = |c: u64| (value > 0.0).then(|| c as f64 / value);
        predicted.push(Prediction {
            class,
            exact: q.to_string(),
            decimal: format_decimal(&q, 30),
            value,
            strict_ratio: ratio(strict.get(class)),
            non_strict_ratio: ratio(non_strict.get(class)),
        });
    }
    Ok(CountReport { degree: n, x: x.to_string(), strict, non_strict, predicted, indeterminate, stats })
}

/// Result of [`kronecker_check`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KroneckerReport {
    #[serde(rename = "N")]
    pub degree: usize,
    /// Integer polynomials with house at most one.
    pub polynomials: Vec<IntMonicPoly>,
    /// Each polynomial's irreducible factors.
    pub factorizations: Vec<Vec<IntMonicPoly>>,
    /// Irreducible factors that are neither `x` nor cyclotomic; empty by Kronecker.
    pub exceptions: Vec<IntMonicPoly>,
    pub passed: bool,
}

/// Enumerate house `<= 1` and check every irreducible factor is `x` or divides
/// some `x^k - 1`.
pub fn kronecker_check(n: usize) -> Result<KroneckerReport> {
    if n == 0 || n > 8 {
        return Err(Error::InvalidInput(format!("kronecker_check needs 1 <= N <= 8, got {n}")));
    }
    let one = BigRational::one();
    let mut polynomials = Vec::new();
    enumerate_lattice(n, &one, DEFAULT_BUDGET, |pt| polynomials.push(pt.poly))?;
    let mut factorizations = Vec::new();
    let mut exceptions = Vec::new();
    for p in &polynomials {
        let factors = factorize(&small_coeffs(p)?, &one)?;
        for f in &factors {
            if !(is_x(f) || is_cyclotomic(f)) {
                exceptions.push(IntMonicPoly::from_i128(f));
            }
        }
        factorizations.push(factors.iter().map(|f| IntMonicPoly::from_i128(f)).collect());
    }
    let passed = exceptions.is_empty();
    Ok(KroneckerReport { degree: n, polynomials, factorizations, exceptions, passed })
}

/// Complete factorization into monic irreducibles, smallest degree first.
fn factorize(p: &[i128], x: &BigRational) -> Result<Vec<Vec<i128>>> {
    let bounds = FactorBounds::new(p.len(), x)?;
    let mut out = Vec::new();
    let mut rest = p.to_vec();
    while let Some(f) = smallest_factor(&rest, &bounds) {
        rest = divide_monic(&rest, &f, bounds.get(rest.len() - f.len())).expect("factor divides");
        out.push(f);
    }
    out.push(rest);
    Ok(out)
}

fn is_x(f: &[i128]) -> bool {
    f.len() == 1 && f[0] == 0
}

/// Whether the monic `f` divides `x^k - 1` for some `k <= CYCLOTOMIC_ORDER_BOUND`.
fn is_cyclotomic(f: &[i128]) -> bool {
    let d = f.len();
    if d == 0 {
        return false;
    }
    // r = x^k mod f, ascending powers
    let mut r = vec![0i128; d];
    r[0] = 1;
    for _ in 0..CYCLOTOMIC_ORDER_BOUND {
        // multiply by x and reduce with x^d = -(f_1 x^{d-1} + ... + f_d)
        let top = r[d - 1];
        for i in (1..d).rev() {
            r[i] = r[i - 1];
        }
        r[0] = 0;
        for i in 0..d {
            match top.checked_mul(f[d - 1 - i]).and_then(|v| r[i].checked_sub(v)) {
                Some(v) => r[i] = v,
                None => return false,
            }
        }
        if r[0] == 1 && r[1..].iter().all(|v| *v == 0) {
            return true;
        }
    }
    false
}

impl IntMonicPoly {
    fn from_i128(c: &[i128]) -> Self {
        IntMonicPoly::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn count(n: usize, x: i64) -> (u64, u64) {
        let (mut strict, mut all) = (0, 0);
        enumerate_lattice(n, &int(x), DEFAULT_BUDGET, |pt| {
            all += 1;
            strict += u64::from(pt.strict);
        })
        .unwrap();
        (strict, all)
    }

    #[test]
    fn linear_and_quadratic_counts() {
        assert_eq!(count(1, 10), (19, 21));
        assert_eq!(count(2, 1).1, 9);
    }

    #[test]
    fn jury_recursion_matches_rational_classifier() {
        for c in [[1i64, 0, -2], [0, 3, -5], [-3, 1, 1], [2, 2, 2], [-1, -1, 1], [0, 0, 1]] {
            let p = IntMonicPoly::from_i64(&c);
            let mut asc: Vec<BigInt> = c.iter().rev().map(|&v| BigInt::from(v)).collect();
            asc.push(BigInt::one());
            let d = p.classify_disk(&int(1)).unwrap();
            if let Some(inside) = schur_cohn_interior(asc) {
                assert_eq!((inside, d.boundary), (d.interior, 0), "{c:?}");
            } else {
                assert!(d.boundary > 0 || d.interior + d.exterior > 0);
            }
        }
    }

    #[test]
    fn classify_examples() {
        let c = classify(&IntMonicPoly::from_i64(&[-1, -1]), &int(2)).unwrap();
        assert!(c.in_disk && c.strict);
        assert_eq!(c.perron, PerronStatus::Perron);
        assert_eq!(c.signature, Signature { real: 2, pairs: 0 });
        assert_eq!(c.irreducible, Some(true));
        let c = classify(&IntMonicPoly::from_i64(&[0, 1]), &int(1)).unwrap();
        assert!(c.in_disk && !c.strict);
        assert_eq!(c.perron, PerronStatus::NotPerron);
        assert!(!is_irreducible(&IntMonicPoly::from_i64(&[0, -1]), &int(1)).unwrap());
    }

    #[test]
    fn irreducibility_examples() {
        let x = int(2);
        assert!(is_irreducible(&IntMonicPoly::from_i64(&[1, 1]), &x).unwrap());
        assert!(!is_irreducible(&IntMonicPoly::from_i64(&[0, -1, 0]), &x).unwrap());
        assert!(is_irreducible(&IntMonicPoly::from_i64(&[1, 1, 1, 1]), &x).unwrap());
        // (x^2 + x - 1)(x^2 - x - 1)
        assert!(!is_irreducible(&IntMonicPoly::from_i64(&[0, -3, 0, 1]), &x).unwrap());
        assert!(is_irreducible(&IntMonicPoly::from_i64(&[0; 7]), &x).is_err());
    }

    #[test]
    fn cyclotomic_detection() {
        assert!(is_cyclotomic(&[1, 1]));
        assert!(is_cyclotomic(&[1, 1, 1, 1]));
        assert!(is_cyclotomic(&[-1]));
        assert!(!is_cyclotomic(&[-1, -1]));
        assert!(!is_cyclotomic(&[0, 0, -2]));
    }

    #[test]
    fn budget_guard() {
        let err = enumerate_lattice(6, &int(10), 1e6, |_| {}).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn kronecker_small_degrees() {
        let r = kronecker_check(1).unwrap();
        assert_eq!(r.polynomials.len(), 3);
        let r = kronecker_check(2).unwrap();
        assert_eq!(r.polynomials.len(), 9);
        assert!(r.passed);
    }

    #[test]
    fn rational_house_bound() {
        // house <= 3/2 in degree one: a in {-1, 0, 1}
        let mut seen = Vec::new();
        enumerate_lattice(1, &BigRational::new(3.into(), 2.into()), DEFAULT_BUDGET, |pt| seen.push(pt)).unwrap();
        assert_eq!(seen.len(), 3);
        assert!(seen.iter().all(|p| p.strict));
    }
}
