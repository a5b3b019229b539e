//! Reproducible samplers for `Ω_N`, `Ω^P_N` and signature strata.
//!
//! Every draw `i` of a batch uses its own ChaCha stream keyed by `(seed, i)`,
//! so batches are bit-identical whatever the degree of parallelism.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{self, rational_to_f64, VolumeClass};
use crate::poly::{
    fam_extend, find_roots, perron_extend, MonicPoly, PerronStatus, RootSet, Signature,
    DEFAULT_TOL,
};

/// Acceptance rates below this abort a rejection sampler.
pub const MIN_ACCEPTANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplerMethod {
    /// Uniform on `Ω_N` through the Fam fibration.
    FamExact,
    /// Uniform on `Ω^P_N`: `Q` drawn with weight `Q(1)`, then the Perron extension.
    PerronExact,
    /// Uniform on `Ω^P_N`: uniform `Q`, accepted with probability `Q(1)/2^{N-1}`.
    PerronRejection,
    /// Random-walk Metropolis–Hastings on `Ω^P_N`.
    PerronMh,
    /// Rejection from `Ω_N` onto a fixed signature.
    SignatureReject,
}

impl std::str::FromStr for SamplerMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "fam_exact" | "fam" | "exact" => Ok(Self::FamExact),
            "perron_exact" => Ok(Self::PerronExact),
            "perron_rejection" | "rejection" => Ok(Self::PerronRejection),
            "perron_mh" | "mh" => Ok(Self::PerronMh),
            "signature_reject" | "signature" => Ok(Self::SignatureReject),
            _ => Err(Error::InvalidInput(format!("unknown sampler method {s:?}"))),
        }
    }
}

/// Where MH chains start.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MhStart {
    /// Every chain starts at `x^{N-1}(x - 1/2)`.
    Fixed,
    /// Chain `c` starts at an independent exact Perron draw, so it is stationary from step 0.
    Exact,
}

impl std::str::FromStr for MhStart {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fixed" | "cold" => Ok(Self::Fixed),
            "exact" | "warm" => Ok(Self::Exact),
            _ => Err(Error::InvalidInput(format!("unknown MH start {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub seed: u64,
    pub method: SamplerMethod,
    /// Multiplier on the proposal covariance factor; `None` picks [`default_mh_step`].
    pub mh_step: Option<f64>,
    pub mh_burnin: u64,
    pub mh_thin: u64,
    pub mh_chains: usize,
    pub mh_start: MhStart,
    pub positive_perron: bool,
    pub tolerance: f64,
}

impl SamplerConfig {
    pub fn new(seed: u64, method: SamplerMethod) -> Self {
        Self {
            seed,
            method,
            mh_step: None,
            mh_burnin: 10_000,
            mh_thin: 100,
            mh_chains: 1,
            mh_start: MhStart::Exact,
            positive_perron: false,
            tolerance: DEFAULT_TOL,
        }
    }

    fn validate(&self) -> Result<()> {
        if let Some(s) = self.mh_step {
            if !(s > 0.0 && s.is_finite()) {
                return Err(Error::InvalidInput("mh_step must be positive".into()));
            }
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidInput("tolerance must be positive".into()));
        }
        if self.mh_chains == 0 {
            return Err(Error::InvalidInput("need at least one chain".into()));
        }
        Ok(())
    }
}

/// One sampled polynomial with its cached classification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub poly: MonicPoly,
    pub roots: RootSet,
    /// `None` when a root sits too close to the real axis to call.
    pub signature: Option<Signature>,
    pub perron: PerronStatus,
}

impl Sample {
    pub fn classify(poly: MonicPoly, tol: f64) -> Result<Self> {
        let roots = find_roots(&poly, tol)?;
        let signature = roots.signature().ok();
        let perron = roots.perron_status();
        Ok(Self { poly, roots, signature, perron })
    }

    pub fn is_perron(&self) -> bool {
        self.perron == PerronStatus::Perron
    }

    /// Line record `{"coeffs", "roots", "signature", "perron"}`.
    pub fn record(&self) -> serde_json::Value {
        let roots: Vec<[f64; 2]> = self.roots.roots.iter().map(|z| [z.re, z.im]).collect();
        serde_json::json!({
            "coeffs": self.poly.coeffs(),
            "roots": roots,
            "signature": self.signature.map(|s| [s.real, s.pairs]),
            "perron": self.is_perron(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleBatch {
    pub config: SamplerConfig,
    pub degree: usize,
    pub requested: usize,
    pub samples: Vec<Sample>,
    /// Draws from the underlying proposal (rejection attempts or chain steps).
    pub attempts: u64,
    pub accepted: u64,
    /// Draws dropped because membership or the Perron test could not be decided.
    pub indeterminate: u64,
    /// Chain acceptance rate for MH batches.
    pub chain_acceptance: Option<f64>,
    /// Samples emitted by each chain, in order, for MH batches.
    pub chain_lengths: Option<Vec<usize>>,
}

impl SampleBatch {
    pub fn acceptance_rate(&self) -> f64 {
        if self.attempts == 0 {
            0.0
        } else {
            self.accepted as f64 / self.attempts as f64
        }
    }

    pub fn polys(&self) -> impl Iterator<Item = &MonicPoly> {
        self.samples.iter().map(|s| &s.poly)
    }

    /// Root coordinates scaled by `scale`, one `sample,re,im` row per root.
    pub fn roots_csv(&self, scale: f64) -> String {
        let mut out = String::from("sample,re,im\n");
        for (i, s) in self.samples.iter().enumerate() {
            for z in &s.roots.roots {
                out.push_str(&format!("{i},{},{}\n", z.re * scale, z.im * scale));
            }
        }
        out
    }
}

/// Stream for draw `index` of a batch seeded by `seed`.
pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Marginal of `a_n` along the fibration, optionally tilted by `(1 + a_n)`.
///
/// Odd `n = 2k+1`: `(1-t^2)^k`; even `n = 2k+2`: `(1-t^2)^k (1+t)`.
/// Both are affine images of Beta variates on `[0, 1]`.
fn fibre_law(n: usize, tilted: bool) -> Beta<f64> {
    let (a, b) = if n % 2 == 1 {
        let k = ((n - 1) / 2) as f64;
        (k + 1.0, k + 1.0)
    } else {
        let k = ((n - 2) / 2) as f64;
        (k + 2.0, k + 1.0)
    };
    let a = if tilted { a + 1.0 } else { a };
    Beta::new(a, b).expect("positive parameters")
}

struct FamDraw {
    laws: Vec<Beta<f64>>,
}

impl FamDraw {
    fn new(n: usize, tilted: bool) -> Self {
        Self { laws: (1..=n).map(|k| fibre_law(k, tilted)).collect() }
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> MonicPoly {
        let mut p = MonicPoly::one();
        for law in &self.laws {
            let t: f64 = 2.0 * law.sample(rng) - 1.0;
            p = fam_extend(&p, t.clamp(-1.0, 1.0)).expect("|t| <= 1");
        }
        p
    }
}

pub(crate) fn map_indices<T: Send>(count: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..count).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..count).map(f).collect()
    }
}

/// Outcome of one indexed draw.
struct Draw {
    sample: Option<Sample>,
    attempts: u64,
    indeterminate: u64,
}

/// Runs `f` over indices `0..count`, then over fresh indices past `count` until
/// `count` draws succeed (dropped draws stay in the tallies). Output does not
/// depend on scheduling because each index owns its stream.
fn draw_filled(count: usize, f: impl Fn(usize) -> Draw + Sync + Send) -> Vec<Draw> {
    let mut draws = map_indices(count, &f);
    let mut next = count;
    // dropped draws are measure-zero ties and rounding; give up well before looping forever
    while draws.iter().filter(|d| d.sample.is_some()).count() < count && next < 2 * count + 64 {
        let missing = count - draws.iter().filter(|d| d.sample.is_some()).count();
        let more = missing + missing / 4 + 1;
        draws.extend(map_indices(more, |i| f(next + i)));
        next += more;
    }
    // drop everything after the count-th success
    let mut kept = 0;
    if let Some(end) = draws.iter().position(|d| {
        kept += usize::from(d.sample.is_some());
        kept == count
    }) {
        draws.truncate(end + 1);
    }
    draws
}

fn collect(config: &SamplerConfig, n: usize, count: usize, draws: Vec<Draw>) -> SampleBatch {
    let attempts = draws.iter().map(|d| d.attempts).sum();
    let indeterminate = draws.iter().map(|d| d.indeterminate).sum();
    let samples: Vec<Sample> = draws.into_iter().filter_map(|d| d.sample).collect();
    SampleBatch {
        config: config.clone(),
        degree: n,
        requested: count,
        accepted: samples.len() as u64,
        samples,
        attempts,
        indeterminate,
        chain_acceptance: None,
        chain_lengths: None,
    }
}

fn keep_in_omega(poly: MonicPoly, tol: f64, need_perron: bool) -> Draw {
    let dropped = Draw { sample: None, attempts: 1, indeterminate: 1 };
    let Ok(s) = Sample::classify(poly, tol) else { return dropped };
    if s.roots.house() > 1.0 + tol || (need_perron && !s.is_perron()) {
        return dropped;
    }
    Draw { sample: Some(s), attempts: 1, indeterminate: 0 }
}

/// Exactly uniform draws from `Ω_N`.
pub fn sample_omega(n: usize, count: usize, config: &SamplerConfig) -> Result<SampleBatch> {
    config.validate()?;
    if n == 0 {
        return Err(Error::InvalidInput("degree must be at least 1".into()));
    }
    let fam = FamDraw::new(n, false);
    let draws = draw_filled(count, |i| {
        let mut rng = rng_for(config.seed, i as u64);
        keep_in_omega(fam.draw(&mut rng), config.tolerance, false)
    });
    Ok(collect(config, n, count, draws))
}

/// Degree-`n` polynomial from `Ω_n` drawn with density proportional to `P(1)`.
pub fn sample_tilted<R: Rng + ?Sized>(n: usize, rng: &mut R) -> MonicPoly {
    FamDraw::new(n, true).draw(rng)
}

/// Uniform draws from `Ω^P_N`, dispatching on `config.method`
/// (`PerronExact`, `PerronRejection` or `PerronMh`).
pub fn sample_perron(n: usize, count: usize, config: &SamplerConfig) -> Result<SampleBatch> {
    match config.method {
        SamplerMethod::PerronRejection => sample_perron_rejection(n, count, config),
        SamplerMethod::PerronMh => sample_perron_mh(n, count, config),
        _ => sample_perron_exact(n, count, config),
    }
}

fn sign_and_modulus<R: Rng + ?Sized>(rng: &mut R, exponent: f64, positive: bool) -> f64 {
    let u: f64 = rng.random();
    let r = u.powf(1.0 / (exponent + 1.0));
    if positive || rng.random::<bool>() {
        r
    } else {
        -r
    }
}

fn perron_exponent(n: usize) -> f64 {
    ((n - 1) * (n + 2) / 2) as f64
}

/// Exactly uniform draws from `Ω^P_N` without rejection.
///
/// The Perron extension `(Q, t) ↦ t^{N-1} Q(x/t)(x - t)` has Jacobian
/// `|t|^{(N-1)(N+2)/2} Q(1)`, so `Q` is drawn from the `Q(1)`-weighted
/// fibration and `|t|` from a power law.
pub fn sample_perron_exact(n: usize, count: usize, config: &SamplerConfig) -> Result<SampleBatch> {
    config.validate()?;
    if n < 2 {
        return Err(Error::InvalidInput("Perron sampling needs N >= 2".into()));
    }
    let fam = FamDraw::new(n - 1, true);
    let e = perron_exponent(n);
    let draws = draw_filled(count, |i| {
        let mut rng = rng_for(config.seed, i as u64);
        let q = fam.draw(&mut rng);
        let t = sign_and_modulus(&mut rng, e, config.positive_perron);
        keep_in_omega(perron_extend(&q, t).expect("|t| <= 1"), config.tolerance, true)
    });
    Ok(collect(config, n, count, draws))
}

/// Expected acceptance of [`sample_perron_rejection`]: `E(Ω_{N-1}, Q(1)) / 2^{N-1}`.
pub fn perron_rejection_rate(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidInput("Perron sampling needs N >= 2".into()));
    }
    let m = (n - 1) as u64;
    let one = num_rational::BigRational::from_integer(1.into());
    let c = exact::c_n(&one, m)?.eval(&one);
    let mean = c / exact::volume(VolumeClass::All, m)?;
    Ok(rational_to_f64(&mean) / 2f64.powi(m as i32))
}

/// Uniform draws from `Ω^P_N` by rejection on `Q(1) / 2^{N-1}`.
pub fn sample_perron_rejection(
    n: usize,
    count: usize,
    config: &SamplerConfig,
) -> Result<SampleBatch> {
    config.validate()?;
    let rate = perron_rejection_rate(n)?;
    if rate < MIN_ACCEPTANCE {
        return Err(Error::Starvation {
            rate,
            attempts: 0,
            detail: format!("expected Perron rejection rate at N={n}; use the exact sampler"),
        });
    }
    let fam = FamDraw::new(n - 1, false);
    let e = perron_exponent(n);
    let bound = 2f64.powi((n - 1) as i32);
    let cap = (100.0 / rate).ceil() as u64 + 1000;
    let draws = map_indices(count, |i| {
        let mut rng = rng_for(config.seed, i as u64);
        let mut attempts = 0;
        loop {
            attempts += 1;
            let q = fam.draw(&mut rng);
            let t = sign_and_modulus(&mut rng, e, config.positive_perron);
            let u: f64 = rng.random();
            if u * bound < q.eval(1.0) {
                let mut d = keep_in_omega(perron_extend(&q, t).expect("|t| <= 1"), config.tolerance, true);
                d.attempts = attempts;
                return d;
            }
            if attempts >= cap {
                return Draw { sample: None, attempts, indeterminate: 0 };
            }
        }
    });
    let batch = collect(config, n, count, draws);
    if batch.samples.len() + (batch.indeterminate as usize) < count {
        return Err(Error::Starvation {
            rate: batch.acceptance_rate(),
            attempts: batch.attempts,
            detail: "a draw exhausted its attempt cap".into(),
        });
    }
    Ok(batch)
}

/// Default proposal multiplier for the MH sampler at degree `n`.
pub fn default_mh_step(n: usize) -> f64 {
    1.0 / n as f64
}

/// Pilot draws used to shape the MH proposal.
pub const MH_PILOT_DRAWS: usize = 2000;
const MH_PILOT_SEED: u64 = 0x5eed_0f_9e77;

/// Empirical covariance of `(a_1, ..., a_N)` on the positive-root component of
/// `Ω^P_N`, from a fixed-seed batch of exact draws.
pub fn coefficient_covariance(n: usize) -> Vec<Vec<f64>> {
    let cfg = SamplerConfig {
        positive_perron: true,
        ..SamplerConfig::new(MH_PILOT_SEED, SamplerMethod::PerronExact)
    };
    let batch = sample_perron_exact(n, MH_PILOT_DRAWS, &cfg).expect("n >= 2");
    let rows: Vec<&[f64]> = batch.samples.iter().map(|s| s.poly.coeffs()).collect();
    let m = rows.len() as f64;
    let mean: Vec<f64> = (0..n).map(|k| rows.iter().map(|r| r[k]).sum::<f64>() / m).collect();
    let mut cov = vec![vec![0.0; n]; n];
    for r in &rows {
        for i in 0..n {
            for j in 0..=i {
                cov[i][j] += (r[i] - mean[i]) * (r[j] - mean[j]) / (m - 1.0);
            }
        }
    }
    for i in 0..n {
        for j in 0..i {
            cov[j][i] = cov[i][j];
        }
    }
    cov
}

/// Lower Cholesky factor of the proposal covariance, with a small ridge if needed.
pub fn proposal_factor(n: usize) -> Vec<Vec<f64>> {
    let cov = coefficient_covariance(n);
    let mut ridge = 0.0;
    loop {
        if let Some(l) = cholesky(&cov, ridge) {
            return l;
        }
        let scale = (0..n).map(|i| cov[i][i]).fold(0.0, f64::max);
        ridge = if ridge == 0.0 { 1e-12 * scale } else { ridge * 10.0 };
    }
}

fn cholesky(a: &[Vec<f64>], ridge: f64) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[i][k] * l[j][k]).sum();
            if i == j {
                let d = a[i][i] + ridge - s;
                if !(d > 0.0) {
                    return None;
                }
                l[i][i] = d.sqrt();
            } else {
                l[i][j] = (a[i][j] - s) / l[j][j];
            }
        }
    }
    Some(l)
}

/// State `x^{N-1}(x - 1/2)`, a Perron member of `Ω_N`.
pub fn default_mh_start(n: usize) -> MonicPoly {
    let mut c = vec![0.0; n];
    c[0] = -0.5;
    MonicPoly::new(c).expect("finite")
}

/// The real root of largest modulus.
fn perron_root(rs: &RootSet) -> f64 {
    rs.real_roots().max_by(|a, b| a.abs().total_cmp(&b.abs())).unwrap_or(0.0)
}

fn in_perron_space(p: &MonicPoly, tol: f64) -> Option<RootSet> {
    let rs = find_roots(p, tol).ok()?;
    (rs.house() <= 1.0 + tol && rs.perron_status() == PerronStatus::Perron).then_some(rs)
}

/// Random-walk Metropolis–Hastings chain(s) targeting the uniform law on `Ω^P_N`.
/// Starting states follow `config.mh_start`.
pub fn sample_perron_mh(n: usize, count: usize, config: &SamplerConfig) -> Result<SampleBatch> {
    config.validate()?;
    if n < 2 {
        return Err(Error::InvalidInput("Perron sampling needs N >= 2".into()));
    }
    let starts = match config.mh_start {
        MhStart::Fixed => vec![default_mh_start(n); config.mh_chains],
        MhStart::Exact => {
            let cfg = SamplerConfig {
                positive_perron: config.positive_perron,
                ..SamplerConfig::new(config.seed ^ MH_START_SALT, SamplerMethod::PerronExact)
            };
            let batch = sample_perron_exact(n, config.mh_chains, &cfg)?;
            if batch.samples.len() < config.mh_chains {
                return Err(Error::Indeterminate("could not draw exact MH starting states".into()));
            }
            batch.samples.into_iter().map(|s| s.poly).collect()
        }
    };
    run_chains(n, count, config, &starts)
}

const MH_START_SALT: u64 = 0x9e37_79b9_7f4a_7c15;

/// As [`sample_perron_mh`], with every chain started at `start`.
pub fn sample_perron_mh_from(
    n: usize,
    count: usize,
    config: &SamplerConfig,
    start: &MonicPoly,
) -> Result<SampleBatch> {
    config.validate()?;
    if n < 2 {
        return Err(Error::InvalidInput("Perron sampling needs N >= 2".into()));
    }
    run_chains(n, count, config, &vec![start.clone(); config.mh_chains])
}

fn run_chains(n: usize, count: usize, config: &SamplerConfig, starts: &[MonicPoly]) -> Result<SampleBatch> {
    for start in starts {
        if start.degree() != n {
            return Err(Error::InvalidInput("start state has the wrong degree".into()));
        }
        if in_perron_space(start, config.tolerance).is_none() {
            return Err(Error::Domain("initial MH state is not in Ω^P_N".into()));
        }
    }
    let step = config.mh_step.unwrap_or_else(|| default_mh_step(n));
    let factor: Vec<Vec<f64>> =
        proposal_factor(n).into_iter().map(|row| row.into_iter().map(|v| v * step).collect()).collect();
    let chains = starts.len();
    let per_chain: Vec<usize> = (0..chains).map(|c| count / chains + usize::from(c < count % chains)).collect();
    let runs = map_indices(chains, |c| {
        run_chain(&starts[c], &factor, per_chain[c], config, rng_for(config.seed, c as u64))
    });
    let mut samples = Vec::with_capacity(count);
    let (mut steps, mut moves) = (0u64, 0u64);
    for (s, st, mv) in runs {
        samples.extend(s);
        steps += st;
        moves += mv;
    }
    Ok(SampleBatch {
        config: config.clone(),
        degree: n,
        requested: count,
        accepted: samples.len() as u64,
        samples,
        attempts: steps,
        indeterminate: 0,
        chain_acceptance: Some(moves as f64 / steps.max(1) as f64),
        chain_lengths: Some(per_chain),
    })
}

fn negate_roots(x: &mut [f64], roots: &mut RootSet) {
    for (k, c) in x.iter_mut().enumerate() {
        if k % 2 == 0 {
            *c = -*c;
        }
    }
    for z in roots.roots.iter_mut() {
        *z = -*z;
    }
}

/// One chain. The walk runs on the component of `Ω^P_N` with a positive Perron
/// root; the state carries a separate sign. `z -> -z` maps `Ω^P_N` onto itself
/// and preserves volume, so flipping the sign with a fair coin each step is a
/// valid move, and the pair is a chain on all of `Ω^P_N`.
fn run_chain(
    start: &MonicPoly,
    factor: &[Vec<f64>],
    count: usize,
    config: &SamplerConfig,
    mut rng: ChaCha8Rng,
) -> (Vec<Sample>, u64, u64) {
    let tol = config.tolerance;
    let mut x = start.coeffs().to_vec();
    let mut roots = in_perron_space(start, tol).expect("checked by caller");
    let mut negative = perron_root(&roots) < 0.0;
    if negative {
        negate_roots(&mut x, &mut roots);
    }
    let thin = config.mh_thin.max(1);
    let total = config.mh_burnin + thin * count as u64;
    let mut out = Vec::with_capacity(count);
    let mut moves = 0u64;
    let n = x.len();
    let mut y = vec![0.0; n];
    let mut z = vec![0.0; n];
    for step in 1..=total {
        for zk in z.iter_mut() {
            *zk = StandardNormal.sample(&mut rng);
        }
        for i in 0..n {
            let dz: f64 = factor[i][..=i].iter().zip(&z).map(|(l, z)| l * z).sum();
            y[i] = x[i] + dz;
        }
        let cand = MonicPoly::new(y.clone()).expect("finite proposal");
        if let Some(rs) = in_perron_space(&cand, tol).filter(|rs| perron_root(rs) > 0.0) {
            x.copy_from_slice(&y);
            roots = rs;
            moves += 1;
        }
        if !config.positive_perron {
            negative = rng.random::<bool>();
        }
        if step > config.mh_burnin && (step - config.mh_burnin) % thin == 0 {
            let (mut xs, mut rs) = (x.clone(), roots.clone());
            if negative {
                negate_roots(&mut xs, &mut rs);
            }
            let poly = MonicPoly::new(xs).expect("finite");
            let signature = rs.signature().ok();
            out.push(Sample { poly, roots: rs, signature, perron: PerronStatus::Perron });
        }
    }
    (out, total, moves)
}

/// Expected acceptance of [`sample_signature`] when it has a closed form.
pub fn signature_rate(n: usize, real: usize, pairs: usize) -> Option<f64> {
    let cls = if pairs == 0 {
        VolumeClass::TotallyReal
    } else if real == 0 {
        VolumeClass::TotallyComplex
    } else {
        return None;
    };
    let l = exact::log_volume(cls, n as u64).ok()? - exact::log_volume(VolumeClass::All, n as u64).ok()?;
    Some(l.exp())
}

/// Draws from `Ω_N` restricted to signature `(R, S)`, by rejection.
pub fn sample_signature(
    n: usize,
    real: usize,
    pairs: usize,
    count: usize,
    config: &SamplerConfig,
) -> Result<SampleBatch> {
    config.validate()?;
    if real + 2 * pairs != n || n == 0 {
        return Err(Error::InvalidInput(format!("signature ({real}, {pairs}) does not match degree {n}")));
    }
    let target = Signature { real, pairs };
    let rate = signature_rate(n, real, pairs);
    if let Some(r) = rate {
        if r < MIN_ACCEPTANCE {
            return Err(Error::Starvation {
                rate: r,
                attempts: 0,
                detail: format!("signature ({real}, {pairs}) at N={n} has volume fraction {r:e}"),
            });
        }
    }
    let cap = rate.map_or(10_000_000, |r| (100.0 / r).ceil() as u64 + 1000);
    let fam = FamDraw::new(n, false);
    let draws = map_indices(count, |i| {
        let mut rng = rng_for(config.seed, i as u64);
        let mut attempts = 0;
        let mut indeterminate = 0;
        while attempts < cap {
            attempts += 1;
            let d = keep_in_omega(fam.draw(&mut rng), config.tolerance, false);
            match d.sample {
                Some(s) => match s.signature {
                    Some(sig) if sig == target => {
                        return Draw { sample: Some(s), attempts, indeterminate };
                    }
                    Some(_) => {}
                    None => indeterminate += 1,
                },
                None => indeterminate += 1,
            }
        }
        Draw { sample: None, attempts, indeterminate }
    });
    let batch = collect(config, n, count, draws);
    if batch.samples.len() < count {
        return Err(Error::Starvation {
            rate: batch.acceptance_rate(),
            attempts: batch.attempts,
            detail: format!("signature ({real}, {pairs}) at N={n}"),
        });
    }
    Ok(batch)
}

/// Arguments of all roots in a batch, in `[0, 2π)`.
pub fn root_arguments(batch: &SampleBatch) -> Vec<f64> {
    batch
        .samples
        .iter()
        .flat_map(|s| s.roots.roots.iter())
        .filter(|z| z.norm() > 0.0)
        .map(|z: &Complex64| z.arg().rem_euclid(2.0 * std::f64::consts::PI))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(seed: u64, method: SamplerMethod) -> SamplerConfig {
        SamplerConfig::new(seed, method)
    }

    #[test]
    fn deterministic_per_index() {
        let c = cfg(11, SamplerMethod::FamExact);
        let a = sample_omega(6, 50, &c).unwrap();
        let b = sample_omega(6, 50, &c).unwrap();
        assert_eq!(a.samples, b.samples);
        let c2 = sample_omega(6, 20, &c).unwrap();
        for (x, y) in a.samples.iter().zip(&c2.samples) {
            assert_eq!(x.poly, y.poly);
        }
    }

    #[test]
    fn degree_one_is_uniform() {
        let b = sample_omega(1, 4000, &cfg(3, SamplerMethod::FamExact)).unwrap();
        let mean: f64 = b.polys().map(|p| p.a(1)).sum::<f64>() / 4000.0;
        let mean_sq: f64 = b.polys().map(|p| p.a(1).powi(2)).sum::<f64>() / 4000.0;
        assert!(mean.abs() < 3.0 * (1.0 / 3.0f64 / 4000.0).sqrt());
        assert!((mean_sq - 1.0 / 3.0).abs() < 0.02);
    }

    #[test]
    fn perron_exact_members() {
        let b = sample_perron_exact(5, 300, &cfg(5, SamplerMethod::PerronExact)).unwrap();
        assert!(b.samples.iter().all(|s| s.is_perron() && s.roots.house() <= 1.0 + 1e-12));
        let pos = SamplerConfig { positive_perron: true, ..cfg(5, SamplerMethod::PerronExact) };
        let b = sample_perron_exact(4, 200, &pos).unwrap();
        for s in &b.samples {
            let top = s.roots.roots.iter().max_by(|a, b| a.norm().total_cmp(&b.norm())).unwrap();
            assert!(top.re > 0.0);
        }
    }

    #[test]
    fn rejection_rate_and_starvation() {
        // E(Ω_1, Q(1)) = 1, so the rate at N = 2 is 1/2
        assert!((perron_rejection_rate(2).unwrap() - 0.5).abs() < 1e-15);
        let err = sample_perron_rejection(64, 1, &cfg(1, SamplerMethod::PerronRejection)).unwrap_err();
        assert!(matches!(err, Error::Starvation { .. }));
        let b = sample_perron_rejection(3, 100, &cfg(1, SamplerMethod::PerronRejection)).unwrap();
        assert!(b.samples.iter().all(|s| s.is_perron()));
    }

    #[test]
    fn mh_rejects_bad_start() {
        let c = cfg(1, SamplerMethod::PerronMh);
        let bad = MonicPoly::new(vec![-1.0, -1.0]).unwrap();
        assert!(sample_perron_mh_from(2, 10, &c, &bad).is_err());
        let not_perron = MonicPoly::new(vec![0.0, 0.5]).unwrap();
        assert!(sample_perron_mh_from(2, 10, &c, &not_perron).is_err());
    }

    #[test]
    fn mh_short_chain() {
        let c = SamplerConfig { mh_burnin: 100, mh_thin: 5, ..cfg(2, SamplerMethod::PerronMh) };
        let b = sample_perron_mh(5, 200, &c).unwrap();
        assert_eq!(b.samples.len(), 200);
        assert!(b.samples.iter().all(|s| s.is_perron() && s.roots.house() <= 1.0 + 1e-12));
        let acc = b.chain_acceptance.unwrap();
        assert!(acc > 0.05 && acc < 0.95, "{acc}");
    }

    #[test]
    fn signature_sampler() {
        let b = sample_signature(3, 1, 1, 100, &cfg(4, SamplerMethod::SignatureReject)).unwrap();
        assert!(b.samples.iter().all(|s| s.signature == Some(Signature { real: 1, pairs: 1 })));
        assert!(sample_signature(3, 2, 1, 1, &cfg(4, SamplerMethod::SignatureReject)).is_err());
        let err = sample_signature(30, 30, 0, 1, &cfg(4, SamplerMethod::SignatureReject)).unwrap_err();
        assert!(matches!(err, Error::Starvation { .. }));
    }

    #[test]
    fn method_names() {
        assert_eq!("mh".parse::<SamplerMethod>().unwrap(), SamplerMethod::PerronMh);
        assert_eq!("perron-exact".parse::<SamplerMethod>().unwrap(), SamplerMethod::PerronExact);
        assert!("gibbs".parse::<SamplerMethod>().is_err());
    }
}
