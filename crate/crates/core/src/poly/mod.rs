//! Monic polynomials, their roots, and membership in the unit-disk spaces.

mod aberth;
pub mod integer;
pub mod ratpoly;
pub mod schur_cohn;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use integer::IntMonicPoly;
pub use ratpoly::RatPoly;

/// Default root-finder tolerance.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Real monic polynomial `x^N + a_1 x^{N-1} + ... + a_N`, stored as `[a_1, ..., a_N]`.
///
/// Degree 0 (the constant polynomial `1`) is allowed as the base of the
/// extension maps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolyRecord", into = "PolyRecord")]
pub struct MonicPoly {
    coeffs: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct PolyRecord {
    degree: usize,
    coeffs: Vec<f64>,
}

impl TryFrom<PolyRecord> for MonicPoly {
    type Error = Error;
    fn try_from(r: PolyRecord) -> Result<Self> {
        if r.coeffs.len() != r.degree {
            return Err(Error::InvalidInput(format!(
                "degree {} but {} coefficients",
                r.degree,
                r.coeffs.len()
            )));
        }
        MonicPoly::new(r.coeffs)
    }
}

impl From<MonicPoly> for PolyRecord {
    fn from(p: MonicPoly) -> Self {
        PolyRecord { degree: p.degree(), coeffs: p.coeffs }
    }
}

impl MonicPoly {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if let Some(bad) = coeffs.iter().find(|c| !c.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite coefficient {bad}")));
        }
        Ok(Self { coeffs })
    }

    /// The constant polynomial `1`.
    pub fn one() -> Self {
        Self { coeffs: Vec::new() }
    }

    /// Monic polynomial with the given real roots.
    pub fn from_real_roots(roots: &[f64]) -> Self {
        let mut c: Vec<f64> = Vec::new();
        for &r in roots {
            // multiply by (x - r)
            let mut next = c.clone();
            next.push(0.0);
            for k in 0..next.len() {
                let prev = if k == 0 { 1.0 } else { c[k - 1] };
                next[k] -= r * prev;
            }
            c = next;
        }
        Self { coeffs: c }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `a_k` with `a_0 = 1` and `a_k = 0` beyond the degree.
    pub fn a(&self, k: usize) -> f64 {
        match k {
            0 => 1.0,
            k if k <= self.coeffs.len() => self.coeffs[k - 1],
            _ => 0.0,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().fold(1.0, |acc, &c| acc * x + c)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().fold(Complex64::new(1.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Polynomial whose roots are those of `self` multiplied by `s`.
    pub fn scale_roots(&self, s: f64) -> Self {
        let mut pow = 1.0;
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                pow *= s;
                c * pow
            })
            .collect();
        Self { coeffs }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidInput(e.to_string()))
    }
}

/// Roots of a real polynomial, closed under conjugation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    /// `max |P(root)|` over the returned roots.
    pub residual_bound: f64,
    pub tolerance: f64,
}

/// Number of real roots `R` and conjugate pairs `S`, `R + 2S = N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub real: usize,
    pub pairs: usize,
}

impl Signature {
    pub fn degree(&self) -> usize {
        self.real + 2 * self.pairs
    }
}

/// Root counts relative to a circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiskClassification {
    pub interior: usize,
    pub boundary: usize,
    pub exterior: usize,
}

impl DiskClassification {
    pub fn total(&self) -> usize {
        self.interior + self.boundary + self.exterior
    }

    /// Every root in the closed disk.
    pub fn in_closed_disk(&self) -> bool {
        self.exterior == 0
    }

    /// Every root in the open disk.
    pub fn in_open_disk(&self) -> bool {
        self.exterior == 0 && self.boundary == 0
    }
}

/// Outcome of the "unique largest root is real" test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PerronStatus {
    Perron,
    NotPerron,
    /// Largest moduli tied within tolerance, or the top root is too close to
    /// the real axis to call.
    Indeterminate,
}

impl RootSet {
    pub fn house(&self) -> f64 {
        self.roots.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Imaginary part below which a conjugate pair can not be told apart
    /// from a real double root.
    fn pair_band(&self, z: Complex64) -> f64 {
        self.tolerance.sqrt() * (1.0 + z.norm())
    }

    pub fn signature(&self) -> Result<Signature> {
        let mut real = 0;
        let mut nonreal = 0;
        for &z in &self.roots {
            if z.im == 0.0 {
                real += 1;
            } else if z.im.abs() < self.pair_band(z) {
                return Err(Error::Indeterminate(format!(
                    "root {z} is within {:e} of the real axis",
                    self.pair_band(z)
                )));
            } else {
                nonreal += 1;
            }
        }
        Ok(Signature { real, pairs: nonreal / 2 })
    }

    pub fn real_roots(&self) -> impl Iterator<Item = f64> + '_ {
        self.roots.iter().filter(|z| z.im == 0.0).map(|z| z.re)
    }

    pub fn perron_status(&self) -> PerronStatus {
        if self.roots.is_empty() {
            return PerronStatus::NotPerron;
        }
        let house = self.house();
        let band = self.tolerance.sqrt() * house.max(f64::MIN_POSITIVE);
        let top: Vec<Complex64> =
            self.roots.iter().copied().filter(|z| z.norm() >= house - band).collect();
        if top.len() == 1 {
            let z = top[0];
            return if z.im == 0.0 {
                PerronStatus::Perron
            } else if z.im.abs() < self.pair_band(z) {
                PerronStatus::Indeterminate
            } else {
                PerronStatus::NotPerron
            };
        }
        let any_real = top.iter().any(|z| z.im.abs() < self.pair_band(*z));
        if any_real {
            PerronStatus::Indeterminate
        } else {
            PerronStatus::NotPerron
        }
    }
}

/// All roots of `p` by simultaneous iteration, with conjugate symmetry enforced.
pub fn find_roots(p: &MonicPoly, tol: f64) -> Result<RootSet> {
    if !(tol > 0.0) {
        return Err(Error::InvalidInput("tolerance must be positive".into()));
    }
    let (raw, _) = aberth::aberth_roots(p.coeffs(), tol)?;
    let roots = enforce_conjugates(raw, tol);
    let residual_bound = roots.iter().map(|&z| p.eval_complex(z).norm()).fold(0.0, f64::max);
    Ok(RootSet { roots, residual_bound, tolerance: tol })
}

fn enforce_conjugates(raw: Vec<Complex64>, tol: f64) -> Vec<Complex64> {
    let snap = 100.0 * tol;
    let mut real = Vec::new();
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for z in raw {
        if z.im.abs() <= snap * (1.0 + z.norm()) {
            real.push(z.re);
        } else if z.im > 0.0 {
            upper.push(z);
        } else {
            lower.push(z);
        }
    }
    // an unbalanced split can only come from a near-real cluster
    let by_im = |a: &Complex64, b: &Complex64| a.im.abs().total_cmp(&b.im.abs());
    while upper.len() > lower.len() {
        upper.sort_by(by_im);
        real.push(upper.remove(0).re);
    }
    while lower.len() > upper.len() {
        lower.sort_by(by_im);
        real.push(lower.remove(0).re);
    }
    let mut out: Vec<Complex64> = Vec::with_capacity(real.len() + 2 * upper.len());
    real.sort_by(f64::total_cmp);
    out.extend(real.into_iter().map(|x| Complex64::new(x, 0.0)));
    let mut pairs = Vec::with_capacity(upper.len());
    for u in upper {
        let (j, _) = lower
            .iter()
            .enumerate()
            .map(|(j, l)| (j, (u - l.conj()).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("balanced");
        let l = lower.swap_remove(j);
        pairs.push((u + l.conj()) * 0.5);
    }
    pairs.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    for z in pairs {
        out.push(z);
        out.push(z.conj());
    }
    out
}

/// Largest root modulus.
pub fn house(p: &MonicPoly) -> Result<f64> {
    Ok(find_roots(p, DEFAULT_TOL)?.house())
}

pub fn signature(p: &MonicPoly, tol: f64) -> Result<Signature> {
    find_roots(p, tol)?.signature()
}

/// Whether every root lies in the closed unit disk, up to `tol`.
pub fn is_in_omega(p: &MonicPoly, tol: f64) -> Result<bool> {
    Ok(find_roots(p, tol)?.house() <= 1.0 + tol)
}

pub fn perron_status(p: &MonicPoly, tol: f64) -> Result<PerronStatus> {
    Ok(find_roots(p, tol)?.perron_status())
}

/// True only when the largest root is certainly unique and real; ties within
/// tolerance report `false` (use [`perron_status`] to tell them apart).
pub fn is_perron(p: &MonicPoly, tol: f64) -> Result<bool> {
    Ok(perron_status(p, tol)? == PerronStatus::Perron)
}

/// Exact root counts inside, on and outside the unit circle.
pub fn schur_cohn_exact(q: &RatPoly) -> Result<DiskClassification> {
    schur_cohn::classify_unit_disk(q)
}

/// Map `Ω_{N-1} → Ω_N(a_N)`: `P(x) = x Q(x) + a_N x^{N-1} Q(1/x)`.
pub fn fam_extend(q: &MonicPoly, a_n: f64) -> Result<MonicPoly> {
    if !(a_n.abs() <= 1.0) {
        return Err(Error::Domain(format!("|a_N| = {} exceeds 1", a_n.abs())));
    }
    let n = q.degree() + 1;
    let mut coeffs = Vec::with_capacity(n);
    for k in 1..n {
        coeffs.push(q.a(k) + a_n * q.a(n - k));
    }
    coeffs.push(a_n);
    Ok(MonicPoly { coeffs })
}

/// Map `Ω_{N-1} × [-1, 1] → Ω^P_N`: `P(x) = t^{N-1} Q(x/t) (x - t)`.
pub fn perron_extend(q: &MonicPoly, t: f64) -> Result<MonicPoly> {
    if !(t.abs() <= 1.0) {
        return Err(Error::Domain(format!("|t| = {} exceeds 1", t.abs())));
    }
    let n = q.degree() + 1;
    let mut coeffs = Vec::with_capacity(n);
    let mut tk = 1.0;
    for k in 1..=n {
        tk *= t;
        coeffs.push(tk * (q.a(k) - q.a(k - 1)));
    }
    Ok(MonicPoly { coeffs })
}

/// Exact rational polynomial (ascending powers) for a monic integer polynomial.
pub(crate) fn ratpoly_from_monic_ints(coeffs: &[BigInt]) -> RatPoly {
    let mut asc: Vec<BigRational> =
        coeffs.iter().rev().map(|c| BigRational::from_integer(c.clone())).collect();
    asc.push(BigRational::one());
    RatPoly::new(asc)
}

pub(crate) fn bigint_to_f64(b: &BigInt) -> f64 {
    b.to_f64().unwrap_or(f64::NAN)
}
