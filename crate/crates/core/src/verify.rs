//! Verification suites. Each suite runs one family of checks against the
//! exact values and returns its [`TestReport`]s; a suite passes when every
//! non-conjectural report passes.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{
    asymptotic_constant_probe, asymptotic_zeros_interval, c_minus, c_minus_det, c_n, complex_constant_probe,
    conj_absolute, expected_real_roots, expected_zeros_interval, format_decimal, moment_m, perron_moment,
    rational_to_f64, selberg_exact, selberg_f64, volume, zeil_check, VolumeClass, CONSTANT_C,
    CONSTANT_C_TOLERANCE,
};
use crate::lattice::{count_classes, enumerate_lattice, kronecker_check, DEFAULT_BUDGET};
use crate::sampler::{rng_for, sample_omega, sample_perron, SamplerConfig, SamplerMethod};
use crate::stats::{
    angular_ks, chain_mean_and_se, empirical_moment, empirical_real_roots, f_statistic_tail, ks_statistic,
    perron_fraction, radial_summary, totally_real_fraction, TestReport,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Volumes,
    Thurston,
    Cminus,
    Selberg,
    PerronVolume,
    RealRoots,
    Moments,
    Mh,
    Lattice,
    Equidistribution,
    Constant,
    Interval,
}

impl Suite {
    /// In acceptance order: `Suite::ALL[k - 1]` checks criterion `k`.
    pub const ALL: [Suite; 12] = [
        Suite::Volumes,
        Suite::Thurston,
        Suite::Cminus,
        Suite::Selberg,
        Suite::PerronVolume,
        Suite::RealRoots,
        Suite::Moments,
        Suite::Mh,
        Suite::Lattice,
        Suite::Equidistribution,
        Suite::Constant,
        Suite::Interval,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Volumes => "volumes",
            Suite::Thurston => "thurston",
            Suite::Cminus => "cminus",
            Suite::Selberg => "selberg",
            Suite::PerronVolume => "perron-volume",
            Suite::RealRoots => "real-roots",
            Suite::Moments => "moments",
            Suite::Mh => "mh",
            Suite::Lattice => "lattice",
            Suite::Equidistribution => "equidistribution",
            Suite::Constant => "constant",
            Suite::Interval => "interval",
        }
    }

    pub fn criterion(self) -> u32 {
        Suite::ALL.iter().position(|&s| s == self).unwrap() as u32 + 1
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace('_', "-");
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == key)
            .or(match key.as_str() {
                "samplers" => Some(Suite::Moments),
                "counts" | "count" => Some(Suite::Lattice),
                "cluster" => Some(Suite::Equidistribution),
                _ => None,
            })
            .ok_or_else(|| Error::InvalidInput(format!("unknown suite {s:?}")))
    }
}

/// Overrides for the sampled suites; `None` keeps the acceptance defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteParams {
    pub degree: Option<usize>,
    pub samples: Option<usize>,
    pub seed: u64,
}

impl Default for SuiteParams {
    fn default() -> Self {
        Self { degree: None, samples: None, seed: 1 }
    }
}

impl SuiteParams {
    fn seed_for(&self, salt: u64) -> u64 {
        self.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ salt
    }
}

/// Whether every non-conjectural report passed.
pub fn suite_passed(reports: &[TestReport]) -> bool {
    reports.iter().all(|r| r.passed || r.conjectural)
}

pub fn run_suite(suite: Suite, params: &SuiteParams) -> Result<Vec<TestReport>> {
    match suite {
        Suite::Volumes => volumes(),
        Suite::Thurston => thurston(),
        Suite::Cminus => cminus(params),
        Suite::Selberg => selberg(),
        Suite::PerronVolume => perron_volume(),
        Suite::RealRoots => real_roots(),
        Suite::Moments => moments(params),
        Suite::Mh => mh(params),
        Suite::Lattice => lattice(),
        Suite::Equidistribution => equidistribution(params),
        Suite::Constant => constant(),
        Suite::Interval => interval(params),
    }
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(p.into(), d.into())
}

fn pow(b: u64, e: u32) -> BigInt {
    BigInt::from(b).pow(e)
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * k)
}

/// One exact check over many cases; the note lists the first failures.
fn all_hold(name: &str, cases: usize, failures: Vec<String>, what: &str) -> TestReport {
    let note = if failures.is_empty() {
        format!("{cases} cases: {what}")
    } else {
        let shown: Vec<&str> = failures.iter().take(5).map(String::as_str).collect();
        format!("{} of {cases} failed: {}", failures.len(), shown.join(", "))
    };
    let mut r = TestReport::check(name, failures.is_empty()).with_note(note);
    r.samples = cases;
    r
}

fn exact_eq(name: &str, got: &BigRational, want: &BigRational) -> TestReport {
    TestReport::check(name, got == want).with_note(format!("{got} vs {want}"))
}

fn volumes() -> Result<Vec<TestReport>> {
    let v = |c, n| volume(c, n);
    Ok(vec![
        exact_eq("D_1", &v(VolumeClass::All, 1)?, &int(2)),
        exact_eq("D_2", &v(VolumeClass::All, 2)?, &int(4)),
        exact_eq("D+_2", &v(VolumeClass::TotallyReal, 2)?, &q(4, 3)),
        exact_eq("D-_2", &v(VolumeClass::TotallyComplex, 2)?, &q(8, 3)),
        exact_eq("DP_2", &v(VolumeClass::Perron, 2)?, &q(4, 3)),
        exact_eq(
            "D+_2 + D-_2",
            &(v(VolumeClass::TotallyReal, 2)? + v(VolumeClass::TotallyComplex, 2)?),
            &v(VolumeClass::All, 2)?,
        ),
    ])
}

/// Agreement with `mantissa · 10^exp` within one unit in the 4th significant digit.
fn four_digits(name: &str, x: f64, mantissa: f64, exp: i32) -> TestReport {
    let m = x / 10f64.powi(exp);
    TestReport::banded(name, m, mantissa, 0.0, 1e-3, 1).with_note(format!("{x:.5e} vs {mantissa}e{exp}"))
}

fn thurston() -> Result<Vec<TestReport>> {
    let scaled = volume(VolumeClass::Perron, 21)? * BigRational::from_integer(pow(5, 210));
    let closed = BigRational::new(
        pow(2, 189) * pow(5, 198),
        pow(3, 24) * pow(7, 10) * pow(11, 11) * pow(13, 9) * pow(17, 5) * pow(19, 3),
    );
    let mean = perron_moment(&int(2), 21)?;
    let v = rational_to_f64(&mean) * 5f64.powi(21);
    Ok(vec![
        TestReport::check("5^210 DP_21 factorisation", scaled == closed).with_note(format_decimal(&scaled, 15)),
        // the value 8.3085...e143 is commonly quoted truncated, 8.0199...e13 rounded
        four_digits("5^210 DP_21", rational_to_f64(&scaled), 8.308, 143),
        exact_eq("E(Perron_21, |a_21|)", &mean, &q(88179, 524288)),
        four_digits("5^21 E|a_21|", v, 8.020, 13),
    ])
}

fn cminus(params: &SuiteParams) -> Result<Vec<TestReport>> {
    let mut rng = rng_for(params.seed_for(3), 0);
    let mut failures = Vec::new();
    let mut cases = 0;
    for _ in 0..20 {
        let alpha = q(rng.random_range(1..400), rng.random_range(1..60));
        for n in 1..=6 {
            let (a, b) = (c_minus(&alpha, n)?, c_minus_det(&alpha, n)?);
            cases += 1;
            if a != b {
                failures.push(format!("alpha = {alpha}, N = {n}"));
            }
        }
    }
    let first = all_hold("C- product = determinant", cases, failures, "20 random rational alpha, N <= 6");
    let mut failures = Vec::new();
    for n in 1..=8u64 {
        if c_minus(&int(1), n)? != volume(VolumeClass::TotallyComplex, 2 * n)? {
            failures.push(format!("N = {n}"));
        }
    }
    Ok(vec![first, all_hold("C-(1, N) = D-_2N", 8, failures, "N <= 8")])
}

fn selberg() -> Result<Vec<TestReport>> {
    let mut failures = Vec::new();
    for n in 1..=12 {
        if selberg_exact(1, 1, n)? != volume(VolumeClass::All, n)? {
            failures.push(format!("N = {n}"));
        }
    }
    let first = all_hold("S_N(1,1) = D_N", 12, failures, "N <= 12");
    let mut failures = Vec::new();
    for (a, b) in [(1u64, 1u64), (1, 2), (2, 1), (2, 2), (3, 1), (1, 5), (3, 4), (5, 5), (2, 7), (6, 3)] {
        // 2^{α+β-1} Γ(α)Γ(β) / Γ(α+β)
        let beta = BigRational::new(
            (BigInt::one() << (a + b - 1)) * factorial(a - 1) * factorial(b - 1),
            factorial(a + b - 1),
        );
        let approx = selberg_f64(a as f64, b as f64, 1)?;
        let e = rational_to_f64(&beta);
        if selberg_exact(a, b, 1)? != beta || (approx - e).abs() > 1e-12 * e {
            failures.push(format!("({a}, {b})"));
        }
    }
    Ok(vec![first, all_hold("S_1 = beta integral", 10, failures, "exact and float")])
}

fn perron_volume() -> Result<Vec<TestReport>> {
    let mut failures = Vec::new();
    for n in 1..=40u64 {
        let c = c_n(&int(1), n - 1)?.eval(&int(1));
        if c * BigRational::new(4.into(), (n * (n + 1)).into()) != volume(VolumeClass::Perron, n)? {
            failures.push(format!("N = {n}"));
        }
    }
    Ok(vec![all_hold("4 C_{N-1}(1,1) / (N(N+1)) = DP_N", 40, failures, "N <= 40")])
}

/// `r_0, ..., r_11`.
pub fn real_root_table() -> Vec<BigRational> {
    [(0, 1), (1, 1), (2, 3), (17, 15), (32, 35), (43, 35), (1226, 1155), (1303, 1001), (10496, 9009), (208433, 153153), (402, 323), (1367, 969)]
        .iter()
        .map(|&(p, d)| q(p, d))
        .collect()
}

fn real_roots() -> Result<Vec<TestReport>> {
    let table = real_root_table();
    let failures: Vec<String> = table
        .iter()
        .enumerate()
        .filter(|(n, want)| expected_real_roots(*n as u64) != **want)
        .map(|(n, _)| format!("r_{n}"))
        .collect();
    let r_table = all_hold("r_N table", table.len(), failures, "r_0 .. r_11").conjectural();
    let failures: Vec<String> = (1..=30).filter(|&n| !zeil_check(n)).map(|n| format!("N = {n}")).collect();
    let zeil = all_hold("r_N recurrence", 30, failures, "N <= 30").conjectural();
    // the endpoint values do not depend on the conjecture
    let mut failures = Vec::new();
    for n in 1..=30u64 {
        let c = c_n(&int(1), n)?;
        let d = volume(VolumeClass::All, n)?;
        let conj = conj_absolute(n);
        for t in [int(1), int(-1)] {
            if conj.eval(&t) != (c.eval(&t) / &d).abs() {
                failures.push(format!("N = {n}, T = {t}"));
            }
        }
    }
    Ok(vec![r_table, zeil, all_hold("conj_absolute at T = ±1", 60, failures, "N <= 30")])
}

fn moments(params: &SuiteParams) -> Result<Vec<TestReport>> {
    let degrees = params.degree.map_or(vec![3, 4, 5, 6], |n| vec![n]);
    let count = params.samples.unwrap_or(100_000);
    let mut out = Vec::new();
    for n in degrees {
        let cfg = SamplerConfig::new(params.seed_for(700 + n as u64), SamplerMethod::FamExact);
        let b = sample_omega(n, count, &cfg)?;
        let tag = |mut r: TestReport| {
            r.name = format!("N = {n}: {}", r.name);
            r
        };
        let r = empirical_moment(&b, &int(2))?;
        if r.reference != rational_to_f64(&moment_m(&int(2), n as u64)?) {
            return Err(Error::Domain("moment reference mismatch".into()));
        }
        out.push(tag(r));
        out.push(tag(perron_fraction(&b)?));
        if n == 4 {
            let r = totally_real_fraction(&b)?;
            out.push(tag(TestReport::check("D+_4 / D_4 = 1/175", (r.reference - 1.0 / 175.0).abs() < 1e-15)));
            out.push(tag(r));
        }
        out.push(tag(empirical_real_roots(&b)?));
    }
    Ok(out)
}

fn mh(params: &SuiteParams) -> Result<Vec<TestReport>> {
    let n = params.degree.unwrap_or(21);
    let mut cfg = SamplerConfig::new(params.seed_for(8), SamplerMethod::PerronMh);
    cfg.mh_chains = 400;
    cfg.mh_burnin = 100;
    cfg.mh_thin = 10;
    let count = params.samples.unwrap_or(cfg.mh_chains * 20);
    let b = sample_perron(n, count, &cfg)?;
    let non_perron = b.samples.iter().filter(|s| !s.is_perron()).count();
    let outside = b.samples.iter().filter(|s| s.roots.house() > 1.0 + cfg.tolerance).count();
    let (mean, se, ess) = chain_mean_and_se(&b, |s| s.poly.a(n).abs());
    let reference = rational_to_f64(&perron_moment(&int(2), n as u64)?);
    Ok(vec![
        TestReport::check("only Perron states", non_perron == 0)
            .with_note(format!("{non_perron} of {} states not Perron", b.samples.len())),
        TestReport::check("only states in the unit disk", outside == 0)
            .with_note(format!("{outside} of {} states outside", b.samples.len())),
        TestReport::z_test(&format!("MH E|a_{n}|"), mean, reference, se, 3.0, b.samples.len()).with_note(format!(
            "{} chains, acceptance {:.3}, ESS {ess:.0}",
            cfg.mh_chains,
            b.chain_acceptance.unwrap_or(f64::NAN)
        )),
    ])
}

fn lattice() -> Result<Vec<TestReport>> {
    let mut out = Vec::new();
    let r = count_classes(1, &int(10), DEFAULT_BUDGET)?;
    out.push(TestReport::banded("N = 1, X = 10 strict count", r.strict.all as f64, 19.0, 0.0, 0.0, 1));

    let grid = [4i64, 8, 16, 32];
    let mut ratios = Vec::new();
    for &x in &grid {
        let r = count_classes(2, &int(x), DEFAULT_BUDGET)?;
        let ratio = r.prediction(VolumeClass::All).strict_ratio.unwrap_or(f64::NAN);
        ratios.push((x as f64, ratio));
    }
    // least squares for |ratio - 1| ≈ c / X
    let c = ratios.iter().map(|(x, r)| (r - 1.0).abs() / x).sum::<f64>()
        / ratios.iter().map(|(x, _)| 1.0 / (x * x)).sum::<f64>();
    let listing: Vec<String> = ratios.iter().map(|(x, r)| format!("X = {x}: {r:.5}")).collect();
    let worst = ratios.iter().map(|(x, r)| (r - 1.0).abs() * x / c).fold(0.0, f64::max);
    out.push(
        TestReport::banded("|ratio - 1| X / c over the N = 2 grid", worst, 0.0, 0.0, 1.5, grid.len())
            .with_note(format!("fitted c = {c:.4}; {}", listing.join(", "))),
    );
    let devs: Vec<f64> = ratios.iter().map(|(_, r)| (r - 1.0).abs()).collect();
    let falling = devs.windows(2).filter(|w| w[1] < w[0]).count();
    out.push(
        TestReport::check("|ratio - 1| falls with X", devs[devs.len() - 1] < devs[0] && 2 * falling >= devs.len() - 1)
            .with_note(format!("{falling} of {} steps fall", devs.len() - 1)),
    );
    let last = ratios[ratios.len() - 1].1;
    out.push(TestReport::banded("N = 2, X = 32 ratio", last, 1.0, 0.0, 0.1, 1));

    let mut count = 0u64;
    enumerate_lattice(2, &int(1), DEFAULT_BUDGET, |_| count += 1)?;
    out.push(TestReport::banded("N = 2, X = 1 non-strict count", count as f64, 9.0, 0.0, 0.0, 1));
    let k = kronecker_check(2)?;
    out.push(
        TestReport::check("N = 2, X = 1 members are products of x and cyclotomics", k.passed && k.polynomials.len() == 9)
            .with_note(format!("{} polynomials, {} exceptions", k.polynomials.len(), k.exceptions.len())),
    );
    Ok(out)
}

fn equidistribution(params: &SuiteParams) -> Result<Vec<TestReport>> {
    let n = params.degree.unwrap_or(64);
    let count = params.samples.unwrap_or(2000);
    let omega = sample_omega(n, count, &SamplerConfig::new(params.seed_for(10), SamplerMethod::FamExact))?;
    let perron = sample_perron(n, count, &SamplerConfig::new(params.seed_for(11), SamplerMethod::PerronExact))?;
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut out = Vec::new();
    for (label, b) in [("Omega", &omega), ("Perron", &perron)] {
        let tag = |mut r: TestReport| {
            r.name = format!("{label}_{n}: {}", r.name);
            r
        };
        out.push(tag(angular_ks(b, 0.02)?));
        // real roots are point masses at arguments 0 and π; the share at 0 bounds the KS distance from below
        let roots = b.samples.iter().flat_map(|s| s.roots.roots.iter());
        let total = roots.clone().count() as f64;
        let at_zero = roots.clone().filter(|z| z.im == 0.0 && z.re > 0.0).count() as f64 / total;
        let off_axis: Vec<f64> = roots.filter(|z| z.im != 0.0).map(|z| z.arg().rem_euclid(two_pi)).collect();
        out.push(tag(TestReport::info("share of roots at argument 0", at_zero)));
        out.push(tag(TestReport::info("angular KS of non-real roots", ks_statistic(&off_axis, |x| x / two_pi))));
        out.push(tag(f_statistic_tail(b, 0.01)?));
        // mean log|root| is mean log|a_N| / N
        out.push(tag(radial_summary(b)?));
    }
    Ok(out)
}

fn constant() -> Result<Vec<TestReport>> {
    let degrees = [64u64, 128, 256, 512];
    let mut out = Vec::new();
    for &n in &degrees {
        out.push(TestReport::info(&format!("2^(N^2/2) D+_N / (D_N N^(1/8)) at N = {n}"), asymptotic_constant_probe(n)?));
    }
    let last = asymptotic_constant_probe(512)?;
    out.push(TestReport::banded("probe at N = 512", last / CONSTANT_C, 1.0, 0.0, CONSTANT_C_TOLERANCE, 1)
        .with_note(format!("{last:.6} vs {CONSTANT_C}")));
    let complex = complex_constant_probe(2 * 512)?;
    out.push(TestReport::banded("totally complex form at 2N = 1024", complex / last, 1.0, 0.0, 0.01, 1)
        .with_note(format!("{complex:.6} vs {last:.6}")));
    Ok(out)
}

fn interval(params: &SuiteParams) -> Result<Vec<TestReport>> {
    let n = params.degree.unwrap_or(40) as u64;
    let exact = rational_to_f64(&expected_zeros_interval(n, &q(-1, 2), &q(1, 2))?);
    let asym = asymptotic_zeros_interval(-0.5, 0.5)?;
    Ok(vec![TestReport::banded(&format!("zeros in [-1/2, 1/2] at N = {n} / log(9)/(2π)"), exact / asym, 1.0, 0.0, 0.1, 1)
        .with_note(format!("{exact:.6} vs {asym:.6}"))
        .conjectural()])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for (k, s) in Suite::ALL.into_iter().enumerate() {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
            assert_eq!(s.criterion(), k as u32 + 1);
        }
        assert_eq!("samplers".parse::<Suite>().unwrap(), Suite::Moments);
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn exact_suites_pass() {
        let p = SuiteParams::default();
        for s in [Suite::Volumes, Suite::Thurston, Suite::Selberg, Suite::Constant] {
            let r = run_suite(s, &p).unwrap();
            assert!(suite_passed(&r), "{s:?}: {r:?}");
        }
    }

    #[test]
    fn conjectural_failures_do_not_fail_a_suite() {
        let r = vec![TestReport::check("a", true), TestReport::check("b", false).conjectural()];
        assert!(suite_passed(&r));
        assert!(!suite_passed(&[TestReport::check("c", false)]));
    }
}
