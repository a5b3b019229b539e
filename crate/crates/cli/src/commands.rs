use std::fmt::Write as _;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};
use perron_core::lattice::{classify, count_classes, enumerate_lattice, DEFAULT_BUDGET};
use perron_core::poly::PerronStatus;
use perron_core::sampler::{
    sample_omega, sample_perron, sample_signature, MhStart, SampleBatch, SamplerConfig,
    SamplerMethod,
};
use perron_core::stats::{ks_statistic, Histogram};
use perron_core::verify::{run_suite, suite_passed, Suite, SuiteParams};
use perron_core::VolumeClass;
use serde::Serialize;

use crate::formulas::{evaluate, render_text, FormulasArgs};
use crate::output::{open_lines, write_all, RunManifest};
use crate::{usage, Rational};

pub fn formulas(args: &FormulasArgs) -> Result<ExitCode> {
    let v = evaluate(args)?;
    let body = if args.json { serde_json::to_string(&v)? + "\n" } else { render_text(&v) };
    write_all(None, &body)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Space {
    /// Uniform on Ω_N.
    Omega,
    /// Uniform on the Perron polynomials in Ω_N.
    Perron,
    /// Ω_N restricted to one signature (--real, --pairs).
    Signature,
}

/// Sampler choice shared by `sample` and `hist`.
#[derive(Debug, Args, Serialize)]
pub struct SamplerArgs {
    #[arg(long, value_enum, default_value = "omega")]
    pub space: Space,
    #[arg(long, short = 'N')]
    pub degree: usize,
    #[arg(long)]
    pub count: usize,
    #[arg(long, env = "PERRON_LAB_SEED")]
    pub seed: u64,
    /// exact, rejection or mh (Perron only); signature for --space signature.
    #[arg(long)]
    pub method: String,
    /// Real roots, for --space signature.
    #[arg(long)]
    pub real: Option<usize>,
    /// Complex-conjugate pairs, for --space signature.
    #[arg(long)]
    pub pairs: Option<usize>,
    /// MH step multiplier on the proposal factor.
    #[arg(long)]
    pub mh_step: Option<f64>,
    #[arg(long)]
    pub burnin: Option<u64>,
    #[arg(long)]
    pub thin: Option<u64>,
    #[arg(long)]
    pub chains: Option<usize>,
    /// exact (independent exact draws) or fixed (x^{N-1}(x - 1/2)).
    #[arg(long)]
    pub mh_start: Option<String>,
    /// Keep only Perron polynomials with a positive Perron root.
    #[arg(long)]
    pub positive_perron: bool,
    #[arg(long)]
    pub tolerance: Option<f64>,
}

impl SamplerArgs {
    fn method(&self) -> Result<SamplerMethod> {
        let m: SamplerMethod = self.method.parse().map_err(|e| usage(format!("{e}")))?;
        Ok(match (self.space, m) {
            (Space::Omega, SamplerMethod::FamExact) => m,
            (Space::Perron, SamplerMethod::FamExact) => SamplerMethod::PerronExact,
            (Space::Perron, SamplerMethod::PerronExact | SamplerMethod::PerronRejection | SamplerMethod::PerronMh) => m,
            (Space::Signature, SamplerMethod::SignatureReject | SamplerMethod::PerronRejection) => {
                SamplerMethod::SignatureReject
            }
            (space, m) => return Err(usage(format!("method {m:?} does not sample space {space:?}"))),
        })
    }

    fn config(&self) -> Result<SamplerConfig> {
        let mut cfg = SamplerConfig::new(self.seed, self.method()?);
        cfg.mh_step = self.mh_step;
        if let Some(b) = self.burnin {
            cfg.mh_burnin = b;
        }
        if let Some(t) = self.thin {
            cfg.mh_thin = t;
        }
        if let Some(c) = self.chains {
            cfg.mh_chains = c;
        }
        if let Some(s) = &self.mh_start {
            cfg.mh_start = s.parse::<MhStart>().map_err(|e| usage(format!("{e}")))?;
        }
        cfg.positive_perron = self.positive_perron;
        if let Some(t) = self.tolerance {
            cfg.tolerance = t;
        }
        Ok(cfg)
    }

    fn draw(&self) -> Result<SampleBatch> {
        let cfg = self.config()?;
        Ok(match self.space {
            Space::Omega => sample_omega(self.degree, self.count, &cfg)?,
            Space::Perron => sample_perron(self.degree, self.count, &cfg)?,
            Space::Signature => {
                let (Some(r), Some(s)) = (self.real, self.pairs) else {
                    return Err(usage("--space signature needs --real and --pairs"));
                };
                sample_signature(self.degree, r, s, self.count, &cfg)?
            }
        })
    }
}

fn summarize(b: &SampleBatch) {
    eprintln!(
        "{} samples of degree {}, {} proposals, acceptance {:.4}, {} indeterminate dropped",
        b.samples.len(),
        b.degree,
        b.attempts,
        b.acceptance_rate(),
        b.indeterminate
    );
    if let Some(a) = b.chain_acceptance {
        eprintln!("chain acceptance {a:.4}");
    }
}

#[derive(Debug, Args, Serialize)]
pub struct SampleArgs {
    #[command(flatten)]
    pub sampler: SamplerArgs,
    /// Write a `sample,re,im` CSV of root coordinates scaled by --scale instead of JSONL.
    #[arg(long)]
    pub figure2: bool,
    #[arg(long, default_value_t = 5.0)]
    pub scale: f64,
    /// Output file (default stdout); a manifest is written beside it.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

pub fn sample(args: &SampleArgs) -> Result<ExitCode> {
    let batch = args.sampler.draw()?;
    summarize(&batch);
    let out = args.out.as_deref();
    if args.figure2 {
        write_all(out, &batch.roots_csv(args.scale))?;
    } else {
        let mut w = open_lines(out)?;
        for s in &batch.samples {
            serde_json::to_writer(&mut w, &s.record())?;
            w.write_all(b"\n")?;
        }
        w.flush()?;
    }
    let mut m = RunManifest::new("sample", args, Some(args.sampler.seed));
    m.outputs.extend(args.out.clone());
    m.write()?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Debug, Args, Serialize)]
pub struct CountArgs {
    #[arg(long, short = 'N')]
    pub degree: usize,
    /// House bound X.
    #[arg(long)]
    pub house: Rational,
    /// Refuse coefficient boxes with more candidates than this.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: f64,
    /// Also write every polynomial with its classification to this CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

pub fn count(args: &CountArgs) -> Result<ExitCode> {
    let x = &args.house.0;
    let report = count_classes(args.degree, x, args.budget)?;
    let all = report.prediction(VolumeClass::All);
    let mut json = serde_json::to_value(&report)?;
    json["ratio"] = serde_json::json!(all.strict_ratio);
    json["non_strict_ratio"] = serde_json::json!(all.non_strict_ratio);
    write_all(args.out.as_deref(), &(serde_json::to_string_pretty(&json)? + "\n"))?;
    if let Some(path) = &args.csv {
        write_classified(args.degree, x, args.budget, path)?;
    }
    let mut m = RunManifest::new("count", args, None);
    m.outputs.extend(args.out.clone());
    m.outputs.extend(args.csv.clone());
    m.write()?;
    Ok(ExitCode::SUCCESS)
}

fn write_classified(n: usize, x: &num_rational::BigRational, budget: f64, path: &Path) -> Result<()> {
    let mut rows = Vec::new();
    let mut failure = None;
    enumerate_lattice(n, x, budget, |pt| {
        if failure.is_some() {
            return;
        }
        match classify(&pt.poly, x) {
            Ok(c) => rows.push((pt.poly, c)),
            Err(e) => failure = Some(e),
        }
    })?;
    if let Some(e) = failure {
        return Err(e.into());
    }
    let mut body = String::from("coeffs,strict,real,pairs,perron,irreducible\n");
    for (p, c) in rows {
        let coeffs: Vec<String> = p.coeffs().iter().map(|a| a.to_string()).collect();
        let perron = match c.perron {
            PerronStatus::Perron => "true",
            PerronStatus::NotPerron => "false",
            PerronStatus::Indeterminate => "",
        };
        let irr = c.irreducible.map_or(String::new(), |b| b.to_string());
        writeln!(
            body,
            "{},{},{},{},{perron},{irr}",
            coeffs.join(" "),
            c.strict,
            c.signature.real,
            c.signature.pairs
        )?;
    }
    write_all(Some(path), &body)
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    /// A suite name or `all`.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Override the degree of the sampled suites.
    #[arg(long, short = 'N')]
    pub degree: Option<usize>,
    /// Override the sample count of the sampled suites.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, env = "PERRON_LAB_SEED", default_value_t = 1)]
    pub seed: u64,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
struct SuiteReport<'a> {
    suite: &'static str,
    criterion: u32,
    #[serde(flatten)]
    report: &'a perron_core::stats::TestReport,
}

pub fn verify(args: &VerifyArgs) -> Result<ExitCode> {
    let suites: Vec<Suite> = if args.suite.eq_ignore_ascii_case("all") {
        Suite::ALL.to_vec()
    } else {
        args.suite
            .split(',')
            .map(|s| s.parse::<Suite>().map_err(|e| usage(format!("{e}"))))
            .collect::<Result<_>>()?
    };
    let params = SuiteParams { degree: args.degree, samples: args.samples, seed: args.seed };
    let mut results = Vec::new();
    for s in suites {
        let reports = run_suite(s, &params).with_context(|| format!("suite {}", s.name()))?;
        eprintln!("{}: {}", s.name(), if suite_passed(&reports) { "pass" } else { "FAIL" });
        results.push((s, reports));
    }
    let flat: Vec<SuiteReport> = results
        .iter()
        .flat_map(|(s, rs)| rs.iter().map(|r| SuiteReport { suite: s.name(), criterion: s.criterion(), report: r }))
        .collect();
    write_all(args.out.as_deref(), &(serde_json::to_string_pretty(&flat)? + "\n"))?;
    let mut m = RunManifest::new("verify", args, Some(args.seed));
    m.outputs.extend(args.out.clone());
    m.write()?;

    let warnings: Vec<&SuiteReport> = flat.iter().filter(|r| !r.report.passed && r.report.conjectural).collect();
    if !warnings.is_empty() {
        eprintln!("warning: conjecture-dependent checks failed (not counted as failures):");
        for w in warnings {
            eprintln!("  {}: {} = {} vs {}", w.suite, w.report.name, w.report.empirical, w.report.reference);
        }
    }
    let failures: Vec<&SuiteReport> = flat.iter().filter(|r| !r.report.passed && !r.report.conjectural).collect();
    if failures.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        for f in failures {
            eprintln!("failed: {}: {} = {} vs {}", f.suite, f.report.name, f.report.empirical, f.report.reference);
        }
        Ok(ExitCode::from(1))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HistQuantity {
    /// Root arguments in [0, 2π).
    Argument,
    /// Root moduli.
    Modulus,
}

#[derive(Debug, Args, Serialize)]
pub struct HistArgs {
    /// JSONL from `sample`; without it, draws a fresh batch.
    #[arg(long, conflicts_with_all = ["degree", "count", "method"])]
    pub input: Option<PathBuf>,
    #[arg(long, short = 'N', required_unless_present = "input")]
    pub degree: Option<usize>,
    #[arg(long, required_unless_present = "input")]
    pub count: Option<usize>,
    #[arg(long, value_enum, default_value = "omega")]
    pub space: Space,
    #[arg(long, default_value = "exact")]
    pub method: Option<String>,
    #[arg(long, env = "PERRON_LAB_SEED", default_value_t = 1)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "argument")]
    pub quantity: HistQuantity,
    #[arg(long, default_value_t = 64)]
    pub bins: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub max: Option<f64>,
    /// Add a density column.
    #[arg(long)]
    pub normalized: bool,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

fn roots_from_jsonl(path: &Path) -> Result<Vec<(f64, f64)>> {
    let f = std::fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let mut roots = Vec::new();
    for (i, line) in BufReader::new(f).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let v: serde_json::Value =
            serde_json::from_str(&line).with_context(|| format!("{}:{}: not JSON", path.display(), i + 1))?;
        let rs = v["roots"].as_array().with_context(|| format!("{}:{}: no roots array", path.display(), i + 1))?;
        for r in rs {
            match (r[0].as_f64(), r[1].as_f64()) {
                (Some(re), Some(im)) => roots.push((re, im)),
                _ => anyhow::bail!("{}:{}: malformed root {r}", path.display(), i + 1),
            }
        }
    }
    Ok(roots)
}

pub fn hist(args: &HistArgs) -> Result<ExitCode> {
    let two_pi = 2.0 * std::f64::consts::PI;
    let roots: Vec<(f64, f64)> = match &args.input {
        Some(p) => roots_from_jsonl(p)?,
        None => {
            let sampler = SamplerArgs {
                space: args.space,
                degree: args.degree.expect("required by clap"),
                count: args.count.expect("required by clap"),
                seed: args.seed,
                method: args.method.clone().unwrap_or_else(|| "exact".into()),
                real: None,
                pairs: None,
                mh_step: None,
                burnin: None,
                thin: None,
                chains: None,
                mh_start: None,
                positive_perron: false,
                tolerance: None,
            };
            let b = sampler.draw()?;
            summarize(&b);
            b.samples.iter().flat_map(|s| s.roots.roots.iter().map(|z| (z.re, z.im))).collect()
        }
    };
    let (values, lo, hi): (Vec<f64>, f64, f64) = match args.quantity {
        HistQuantity::Argument => (roots.iter().map(|&(re, im)| im.atan2(re).rem_euclid(two_pi)).collect(), 0.0, two_pi),
        HistQuantity::Modulus => (roots.iter().map(|&(re, im)| re.hypot(im)).collect(), 0.0, 1.0),
    };
    let mut h = Histogram::uniform(args.min.unwrap_or(lo), args.max.unwrap_or(hi), args.bins)?;
    h.normalized = args.normalized;
    h.extend(values.iter().copied());
    if h.outside > 0 {
        eprintln!("{} values outside [{}, {}]", h.outside, h.edges[0], h.edges[h.edges.len() - 1]);
    }
    if args.quantity == HistQuantity::Argument && !values.is_empty() {
        eprintln!("angular KS against uniform: {:.5}", ks_statistic(&values, |x| x / two_pi));
    }
    write_all(args.out.as_deref(), &h.to_csv())?;
    let mut m = RunManifest::new("hist", args, args.input.is_none().then_some(args.seed));
    m.outputs.extend(args.out.clone());
    m.write()?;
    Ok(ExitCode::SUCCESS)
}
