//! Empirical checks of sampled batches against the exact values.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{self, rational_to_f64};
use crate::poly::MonicPoly;
use crate::sampler::{root_arguments, Sample, SampleBatch, SamplerMethod};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub total: u64,
    /// Values outside `[edges[0], edges[last]]`; not part of `total`.
    pub outside: u64,
    pub normalized: bool,
}

impl Histogram {
    pub fn uniform(lo: f64, hi: f64, bins: usize) -> Result<Self> {
        if !(hi > lo) || bins == 0 {
            return Err(Error::InvalidInput("histogram needs lo < hi and at least one bin".into()));
        }
        let w = (hi - lo) / bins as f64;
        let mut edges: Vec<f64> = (0..bins).map(|i| lo + w * i as f64).collect();
        edges.push(hi);
        Ok(Self { edges, counts: vec![0; bins], total: 0, outside: 0, normalized: false })
    }

    pub fn add(&mut self, x: f64) {
        let (lo, hi) = (self.edges[0], *self.edges.last().unwrap());
        if !(x >= lo && x <= hi) {
            self.outside += 1;
            return;
        }
        let bins = self.counts.len();
        let i = self.edges[1..].partition_point(|e| *e <= x).min(bins - 1);
        self.counts[i] += 1;
        self.total += 1;
    }

    pub fn extend(&mut self, xs: impl IntoIterator<Item = f64>) {
        for x in xs {
            self.add(x);
        }
    }

    /// Per-bin density estimates (count / (total · width)).
    pub fn densities(&self) -> Vec<f64> {
        let t = self.total.max(1) as f64;
        self.counts
            .iter()
            .zip(self.edges.windows(2))
            .map(|(&c, e)| c as f64 / (t * (e[1] - e[0])))
            .collect()
    }

    /// `edge,count` rows (left edges), plus `density` when normalised.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        if self.normalized {
            s.push_str("edge,count,density\n");
            for ((e, c), d) in self.edges.iter().zip(&self.counts).zip(self.densities()) {
                s.push_str(&format!("{e},{c},{d}\n"));
            }
        } else {
            s.push_str("edge,count\n");
            for (e, c) in self.edges.iter().zip(&self.counts) {
                s.push_str(&format!("{e},{c}\n"));
            }
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestReport {
    pub name: String,
    pub empirical: f64,
    pub reference: f64,
    /// Standard error of `empirical` (0 for deterministic statistics).
    pub dispersion: f64,
    pub threshold: f64,
    pub passed: bool,
    pub conjectural: bool,
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl TestReport {
    /// Passes iff `|empirical - reference| <= k · se`.
    pub fn z_test(name: &str, empirical: f64, reference: f64, se: f64, k: f64, samples: usize) -> Self {
        Self::banded(name, empirical, reference, se, k * se, samples)
    }

    /// Passes iff `|empirical - reference| <= threshold`.
    pub fn banded(
        name: &str,
        empirical: f64,
        reference: f64,
        dispersion: f64,
        threshold: f64,
        samples: usize,
    ) -> Self {
        Self {
            name: name.to_string(),
            empirical,
            reference,
            dispersion,
            threshold,
            passed: (empirical - reference).abs() <= threshold,
            conjectural: false,
            samples,
            note: None,
        }
    }

    /// An exact yes/no check: empirical 1 or 0 against reference 1.
    pub fn check(name: &str, ok: bool) -> Self {
        Self::banded(name, f64::from(u8::from(ok)), 1.0, 0.0, 0.0, 1)
    }

    /// A diagnostic that is always reported and never fails.
    pub fn info(name: &str, value: f64) -> Self {
        Self::banded(name, value, value, 0.0, f64::INFINITY, 1)
    }

    pub fn conjectural(mut self) -> Self {
        self.conjectural = true;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn z_score(&self) -> f64 {
        if self.dispersion > 0.0 {
            (self.empirical - self.reference) / self.dispersion
        } else {
            0.0
        }
    }
}

/// Effective sample size by Geyer's initial positive sequence estimator.
pub fn effective_sample_size(xs: &[f64]) -> f64 {
    let n = xs.len();
    if n < 4 {
        return n as f64;
    }
    let mean = xs.iter().sum::<f64>() / n as f64;
    let c: Vec<f64> = xs.iter().map(|x| x - mean).collect();
    let var = c.iter().map(|x| x * x).sum::<f64>() / n as f64;
    if var == 0.0 {
        return n as f64;
    }
    let rho = |lag: usize| -> f64 {
        c[..n - lag].iter().zip(&c[lag..]).map(|(a, b)| a * b).sum::<f64>() / (n as f64 * var)
    };
    let mut tau = -1.0;
    let mut lag = 0;
    let mut prev_pair = f64::INFINITY;
    while lag + 1 < n {
        let mut pair = rho(lag) + rho(lag + 1);
        if pair <= 0.0 {
            break;
        }
        // monotone sequence estimator
        pair = pair.min(prev_pair);
        prev_pair = pair;
        tau += 2.0 * pair;
        lag += 2;
    }
    (n as f64 / tau.max(1.0)).min(n as f64)
}

/// Sample mean and its standard error; `correlated` switches to the ESS-based error.
pub fn mean_and_se(xs: &[f64], correlated: bool) -> (f64, f64) {
    let n = xs.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = xs.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, f64::INFINITY);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    let eff = if correlated { effective_sample_size(xs) } else { n as f64 };
    (mean, (var / eff).sqrt())
}

/// Effective sample size pooled over several chains of one target.
///
/// Autocorrelations are measured against the pooled variance estimate
/// `(L-1)/L W + B/L`, so chains that disagree with each other (slow mixing)
/// shrink the ESS towards the number of chains instead of inflating it.
/// Chains are truncated to the shortest length.
pub fn multichain_ess(chains: &[&[f64]]) -> f64 {
    let chains: Vec<&[f64]> = chains.iter().copied().filter(|c| !c.is_empty()).collect();
    let m = chains.len();
    if m == 0 {
        return 0.0;
    }
    let len = chains.iter().map(|c| c.len()).min().unwrap_or(0);
    if m == 1 || len < 4 {
        return if m == 1 { effective_sample_size(chains[0]) } else { (m * len) as f64 };
    }
    let l = len as f64;
    let means: Vec<f64> = chains.iter().map(|c| c[..len].iter().sum::<f64>() / l).collect();
    let grand = means.iter().sum::<f64>() / m as f64;
    let b = l * means.iter().map(|x| (x - grand).powi(2)).sum::<f64>() / (m - 1) as f64;
    let autocov = |lag: usize| -> f64 {
        chains
            .iter()
            .zip(&means)
            .map(|(c, mu)| {
                c[..len - lag].iter().zip(&c[lag..len]).map(|(x, y)| (x - mu) * (y - mu)).sum::<f64>() / l
            })
            .sum::<f64>()
            / m as f64
    };
    let w = autocov(0) * l / (l - 1.0);
    let var_plus = (l - 1.0) / l * w + b / l;
    let total = (m * len) as f64;
    if var_plus <= 0.0 {
        return total;
    }
    let rho = |lag: usize| 1.0 - (w - autocov(lag)) / var_plus;
    let mut tau = -1.0;
    let mut lag = 0;
    let mut prev_pair = f64::INFINITY;
    while lag + 1 < len {
        let mut pair = rho(lag) + rho(lag + 1);
        if pair <= 0.0 {
            break;
        }
        pair = pair.min(prev_pair);
        prev_pair = pair;
        tau += 2.0 * pair;
        lag += 2;
    }
    (total / tau.max(1.0)).min(total)
}

/// Mean of `f` over an MH batch with its autocorrelation-adjusted standard error.
/// Falls back to [`mean_and_se`] when chain boundaries are unknown.
pub fn chain_mean_and_se(batch: &SampleBatch, f: impl Fn(&Sample) -> f64) -> (f64, f64, f64) {
    let xs: Vec<f64> = batch.samples.iter().map(&f).collect();
    pooled_mean_and_se(&xs, batch.chain_lengths.as_deref()).unwrap_or_else(|| {
        let (m, se) = mean_and_se(&xs, false);
        (m, se, xs.len() as f64)
    })
}

/// Two-sided KS distance between a sample and a continuous CDF.
pub fn ks_statistic(xs: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut s: Vec<f64> = xs.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in s.iter().enumerate() {
        let f = cdf(x);
        d = d.max(f - i as f64 / n).max((i + 1) as f64 / n - f);
    }
    d.clamp(0.0, 1.0)
}

/// Asymptotic p-value `P(K > sqrt(n) D)` of the Kolmogorov distribution.
pub fn ks_p_value(d: f64, n: usize) -> f64 {
    let ne = n as f64;
    let lambda = (ne.sqrt() + 0.12 + 0.11 / ne.sqrt()) * d;
    if lambda < 0.2 {
        return 1.0;
    }
    let mut sum = 0.0;
    for j in 1..=100 {
        let jf = j as f64;
        let term = 2.0 * (-1f64).powi(j - 1) * (-2.0 * jf * jf * lambda * lambda).exp();
        sum += term;
        if term.abs() < 1e-16 {
            break;
        }
    }
    sum.clamp(0.0, 1.0)
}

/// `log Σ_{i=0}^N |a_i| - ½ log|a_0| - ½ log|a_N|` with `a_0 = 1`; `None` if `a_N = 0`.
pub fn f_statistic(p: &MonicPoly) -> Option<f64> {
    let a_n = p.a(p.degree());
    if a_n == 0.0 || p.degree() == 0 {
        return None;
    }
    let s: f64 = 1.0 + p.coeffs().iter().map(|a| a.abs()).sum::<f64>();
    Some(s.ln() - 0.5 * a_n.abs().ln())
}

fn is_perron_batch(batch: &SampleBatch) -> bool {
    matches!(
        batch.config.method,
        SamplerMethod::PerronExact | SamplerMethod::PerronRejection | SamplerMethod::PerronMh
    )
}

fn is_mh(batch: &SampleBatch) -> bool {
    batch.config.method == SamplerMethod::PerronMh
}

/// Mean and standard error of per-sample values `xs`: pooled multi-chain ESS
/// when chain boundaries are known, single-chain ESS for other MH batches.
fn batch_mean_and_se(batch: &SampleBatch, xs: &[f64]) -> (f64, f64) {
    match pooled_mean_and_se(xs, batch.chain_lengths.as_deref()) {
        Some((m, se, _)) => (m, se),
        None => mean_and_se(xs, is_mh(batch)),
    }
}

fn pooled_mean_and_se(xs: &[f64], lengths: Option<&[usize]>) -> Option<(f64, f64, f64)> {
    let lengths = lengths.filter(|l| l.iter().sum::<usize>() == xs.len() && !xs.is_empty())?;
    let mut at = 0;
    let chains: Vec<&[f64]> = lengths
        .iter()
        .map(|&len| {
            at += len;
            &xs[at - len..at]
        })
        .collect();
    let ess = multichain_ess(&chains);
    let (m, se) = mean_and_se(xs, false);
    Some((m, se * (xs.len() as f64 / ess.max(1.0)).sqrt(), ess))
}

fn require_nonempty(batch: &SampleBatch) -> Result<()> {
    if batch.samples.is_empty() {
        return Err(Error::InvalidInput("empty batch".into()));
    }
    Ok(())
}

fn require_omega(batch: &SampleBatch, what: &str) -> Result<()> {
    if batch.config.method != SamplerMethod::FamExact {
        return Err(Error::InvalidInput(format!("{what} needs a uniform Ω_N batch")));
    }
    Ok(())
}

/// KS distance of all root arguments against the uniform law on `[0, 2π)`.
pub fn angular_ks(batch: &SampleBatch, threshold: f64) -> Result<TestReport> {
    require_nonempty(batch)?;
    let args = root_arguments(batch);
    let two_pi = 2.0 * std::f64::consts::PI;
    let d = ks_statistic(&args, |x| (x / two_pi).clamp(0.0, 1.0));
    Ok(TestReport::banded("angular_ks", d, 0.0, 0.0, threshold, args.len()))
}

/// `E log|a_N|` for the batch's measure (uniform on `Ω_N` or on `Ω^P_N`).
pub fn reference_log_a_n(batch: &SampleBatch) -> Result<f64> {
    let n = batch.degree as u64;
    let v = if is_perron_batch(batch) {
        exact::perron_e_log_a_n(n)?
    } else {
        require_omega(batch, "radial summary")?;
        exact::e_log_a_n(n)?
    };
    Ok(rational_to_f64(&v))
}

/// Mean of `log|root|` (that is `log|a_N| / N` per polynomial) against its exact mean.
pub fn radial_summary(batch: &SampleBatch) -> Result<TestReport> {
    require_nonempty(batch)?;
    let n = batch.degree as f64;
    let xs: Vec<f64> = batch
        .samples
        .iter()
        .map(|s| s.poly.a(batch.degree).abs().ln() / n)
        .filter(|x| x.is_finite())
        .collect();
    let (m, se) = batch_mean_and_se(batch, &xs);
    let reference = reference_log_a_n(batch)? / n;
    Ok(TestReport::z_test("mean_log_root_modulus", m, reference, se, 3.0, xs.len()))
}

/// Sample mean of `|a_N|^{α-1}` against `moment_M` or `perron_moment`.
pub fn empirical_moment(batch: &SampleBatch, alpha: &num_rational::BigRational) -> Result<TestReport> {
    require_nonempty(batch)?;
    let n = batch.degree;
    let reference = if is_perron_batch(batch) {
        exact::perron_moment(alpha, n as u64)?
    } else {
        require_omega(batch, "moment check")?;
        exact::moment_m(alpha, n as u64)?
    };
    let e = rational_to_f64(alpha) - 1.0;
    let xs: Vec<f64> = batch.samples.iter().map(|s| s.poly.a(n).abs().powf(e)).collect();
    let (m, se) = batch_mean_and_se(batch, &xs);
    Ok(TestReport::z_test(&format!("moment_alpha_{alpha}"), m, rational_to_f64(&reference), se, 3.0, xs.len()))
}

fn real_counts(batch: &SampleBatch, f: impl Fn(f64) -> bool) -> (Vec<f64>, usize) {
    let mut xs = Vec::new();
    let mut skipped = 0;
    for s in &batch.samples {
        match s.signature {
            Some(_) => xs.push(s.roots.real_roots().filter(|&x| f(x)).count() as f64),
            None => skipped += 1,
        }
    }
    (xs, skipped)
}

/// Mean number of real roots against `r_N`.
pub fn empirical_real_roots(batch: &SampleBatch) -> Result<TestReport> {
    require_nonempty(batch)?;
    require_omega(batch, "real-root check")?;
    let (xs, skipped) = real_counts(batch, |_| true);
    let (m, se) = mean_and_se(&xs, false);
    let reference = rational_to_f64(&exact::expected_real_roots(batch.degree as u64));
    Ok(TestReport::z_test("expected_real_roots", m, reference, se, 3.0, xs.len())
        .conjectural()
        .with_note(format!("{skipped} indeterminate signatures excluded")))
}

/// Mean number of real roots in `[a, b]` against the exact expectation.
pub fn empirical_zeros_in_interval(batch: &SampleBatch, a: f64, b: f64) -> Result<TestReport> {
    require_nonempty(batch)?;
    require_omega(batch, "interval check")?;
    let qa = num_rational::BigRational::from_float(a).ok_or_else(|| Error::InvalidInput("a".into()))?;
    let qb = num_rational::BigRational::from_float(b).ok_or_else(|| Error::InvalidInput("b".into()))?;
    let reference = rational_to_f64(&exact::expected_zeros_interval(batch.degree as u64, &qa, &qb)?);
    let (xs, skipped) = real_counts(batch, |x| x >= a && x <= b);
    let (m, se) = mean_and_se(&xs, false);
    Ok(TestReport::z_test("zeros_in_interval", m, reference, se, 3.0, xs.len())
        .conjectural()
        .with_note(format!("[{a}, {b}], {skipped} indeterminate signatures excluded")))
}

/// Sample mean of `|P(T)|` against the conjectured closed form.
pub fn empirical_abs_pt(batch: &SampleBatch, t: f64) -> Result<TestReport> {
    require_nonempty(batch)?;
    require_omega(batch, "|P(T)| check")?;
    if !(-1.0..=1.0).contains(&t) {
        return Err(Error::Domain("T must lie in [-1, 1]".into()));
    }
    let qt = num_rational::BigRational::from_float(t).ok_or_else(|| Error::InvalidInput("T".into()))?;
    let reference = rational_to_f64(&exact::conj_absolute(batch.degree as u64).eval(&qt));
    let xs: Vec<f64> = batch.samples.iter().map(|s| s.poly.eval(t).abs()).collect();
    let (m, se) = mean_and_se(&xs, false);
    Ok(TestReport::z_test("mean_abs_p_t", m, reference, se, 3.0, xs.len()).conjectural())
}

/// KS test of `|a_N|` against the density `H_N`; passes when `p >= level`.
pub fn ks_constant_term(batch: &SampleBatch, level: f64) -> Result<TestReport> {
    require_nonempty(batch)?;
    require_omega(batch, "constant-term KS")?;
    let n = batch.degree;
    let xs: Vec<f64> = batch.samples.iter().map(|s| s.poly.a(n).abs()).collect();
    let d = ks_statistic(&xs, |x| exact::density_h_cdf(x, n as u64));
    let p = ks_p_value(d, xs.len());
    let mut r = TestReport::banded("ks_abs_a_n", d, 0.0, 0.0, f64::INFINITY, xs.len());
    r.passed = p >= level;
    Ok(r.with_note(format!("p = {p:.4e}, level {level:e}")))
}

/// Fraction of Perron members against `1/N` (odd) or `1/(N+1)` (even).
pub fn perron_fraction(batch: &SampleBatch) -> Result<TestReport> {
    require_nonempty(batch)?;
    require_omega(batch, "Perron fraction")?;
    let n = batch.degree as f64;
    let reference = if batch.degree % 2 == 1 { 1.0 / n } else { 1.0 / (n + 1.0) };
    let xs: Vec<f64> = batch.samples.iter().map(|s| f64::from(u8::from(s.is_perron()))).collect();
    let (m, _) = mean_and_se(&xs, false);
    let se = (reference * (1.0 - reference) / xs.len() as f64).sqrt();
    Ok(TestReport::z_test("perron_fraction", m, reference, se, 3.0, xs.len()))
}

/// Fraction of totally real members against `D^+_N / D_N`.
pub fn totally_real_fraction(batch: &SampleBatch) -> Result<TestReport> {
    require_nonempty(batch)?;
    require_omega(batch, "totally real fraction")?;
    let n = batch.degree;
    let reference = (exact::log_volume(exact::VolumeClass::TotallyReal, n as u64)?
        - exact::log_volume(exact::VolumeClass::All, n as u64)?)
        .exp();
    let hits = batch
        .samples
        .iter()
        .filter(|s| s.signature.is_some_and(|g| g.real == n))
        .count();
    let total = batch.samples.len();
    let se = (reference * (1.0 - reference) / total as f64).sqrt();
    Ok(TestReport::z_test("totally_real_fraction", hits as f64 / total as f64, reference, se, 3.0, total))
}

/// Share of the batch with `F_N > 100 log N`; passes below `max_tail`.
pub fn f_statistic_tail(batch: &SampleBatch, max_tail: f64) -> Result<TestReport> {
    require_nonempty(batch)?;
    let bound = 100.0 * (batch.degree as f64).ln();
    let vals: Vec<f64> = batch.samples.iter().filter_map(|s| f_statistic(&s.poly)).collect();
    let excluded = batch.samples.len() - vals.len();
    let tail = vals.iter().filter(|&&f| f > bound).count() + excluded;
    let frac = tail as f64 / batch.samples.len() as f64;
    let mean = vals.iter().sum::<f64>() / vals.len().max(1) as f64;
    let mut r = TestReport::banded("f_statistic_tail", frac, 0.0, 0.0, max_tail, batch.samples.len());
    r.passed = frac < max_tail;
    Ok(r.with_note(format!("mean F_N = {mean:.4}, bound 100 log N = {bound:.2}, {excluded} with a_N = 0")))
}
