use anyhow::Result;
use clap::{Args, ValueEnum};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use perron_core::exact::{
    asymptotic_constant_probe, c_minus, c_n, conj_absolute, expected_real_roots, expected_zeros_interval,
    format_decimal, log10_rational, moment_m, perron_moment, rational_to_f64, selberg_exact, selberg_f64,
    smallest_x, volume,
};
use perron_core::poly::RatPoly;
use perron_core::VolumeClass;
use serde::Serialize;

use crate::{usage, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    /// Volume of Ω_N.
    #[value(name = "D")]
    D,
    /// Volume of the Perron polynomials.
    #[value(name = "DP")]
    Dp,
    /// Volume of the totally real part.
    #[value(name = "Dplus")]
    Dplus,
    /// Volume of the totally complex part.
    #[value(name = "Dminus")]
    Dminus,
    /// C_N(α, T); a polynomial in T unless --T is given.
    #[value(name = "CN")]
    Cn,
    /// Selberg integral S_N(α, β).
    #[value(name = "SN")]
    Sn,
    /// C⁻_N(α).
    #[value(name = "Cminus")]
    Cminus,
    /// E|a_N|^{α-1} on Ω_N.
    #[value(name = "moment")]
    Moment,
    /// E|a_N|^{α-1} on the Perron polynomials.
    #[value(name = "perron-moment")]
    PerronMoment,
    /// Expected number of real roots r_N.
    #[value(name = "rN")]
    RN,
    /// E|P(T)|; a polynomial in T unless --T is given.
    #[value(name = "conj")]
    Conj,
    /// Expected number of roots in [a, b].
    #[value(name = "zeros-interval")]
    ZerosInterval,
    /// Smallest X with volume · X^{N(N+1)/2} >= 1.
    #[value(name = "smallest-X")]
    SmallestX,
    /// 2^{N²/2} D⁺_N / (D_N N^{1/8}).
    #[value(name = "constant-probe")]
    ConstantProbe,
}

impl Serialize for Quantity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.to_possible_value().expect("no skipped variants").get_name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassArg {
    All,
    Perron,
    TotallyReal,
    TotallyComplex,
}

impl From<ClassArg> for VolumeClass {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::All => VolumeClass::All,
            ClassArg::Perron => VolumeClass::Perron,
            ClassArg::TotallyReal => VolumeClass::TotallyReal,
            ClassArg::TotallyComplex => VolumeClass::TotallyComplex,
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct FormulasArgs {
    #[arg(long, value_enum)]
    pub quantity: Quantity,
    #[arg(long, short = 'N')]
    pub degree: u64,
    #[arg(long)]
    pub alpha: Option<Rational>,
    #[arg(long)]
    pub beta: Option<Rational>,
    #[arg(long = "T", alias = "t")]
    pub t: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<Rational>,
    /// Class for smallest-X.
    #[arg(long, value_enum, default_value = "all")]
    pub class: ClassArg,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Serialize)]
pub struct FormulaValue {
    pub quantity: Quantity,
    #[serde(rename = "N")]
    pub n: u64,
    pub alpha: Option<String>,
    /// `p/q`, or the coefficient list for a polynomial in `T`.
    pub exact: Option<String>,
    /// 15 significant digits.
    pub decimal: Option<String>,
    pub log10: Option<f64>,
    pub conjectural: bool,
}

enum Raw {
    Exact(BigRational),
    Poly(RatPoly),
    Float(f64),
}

fn one() -> BigRational {
    BigRational::from_integer(1.into())
}

fn small_int(q: &BigRational) -> Option<u64> {
    q.is_integer().then(|| q.numer().to_u64()).flatten().filter(|&k| k > 0)
}

pub fn evaluate(args: &FormulasArgs) -> Result<FormulaValue> {
    let n = args.degree;
    let alpha_or_one = || args.alpha.as_ref().map_or_else(one, |a| a.0.clone());
    let need_alpha = || args.alpha.as_ref().map(|a| a.0.clone()).ok_or_else(|| usage("--alpha is required"));
    let (raw, alpha, conjectural) = match args.quantity {
        Quantity::D => (Raw::Exact(volume(VolumeClass::All, n)?), None, false),
        Quantity::Dp => (Raw::Exact(volume(VolumeClass::Perron, n)?), None, false),
        Quantity::Dplus => (Raw::Exact(volume(VolumeClass::TotallyReal, n)?), None, false),
        Quantity::Dminus => (Raw::Exact(volume(VolumeClass::TotallyComplex, n)?), None, false),
        Quantity::Cn => {
            let alpha = alpha_or_one();
            let p = c_n(&alpha, n)?;
            let raw = match &args.t {
                Some(t) => Raw::Exact(p.eval(&t.0)),
                None => Raw::Poly(p),
            };
            (raw, Some(alpha), false)
        }
        Quantity::Sn => {
            let alpha = alpha_or_one();
            let beta = args.beta.as_ref().map_or_else(one, |b| b.0.clone());
            let raw = match (small_int(&alpha), small_int(&beta)) {
                (Some(a), Some(b)) => Raw::Exact(selberg_exact(a, b, n)?),
                _ => Raw::Float(selberg_f64(rational_to_f64(&alpha), rational_to_f64(&beta), n)?),
            };
            (raw, Some(alpha), false)
        }
        Quantity::Cminus => {
            let alpha = alpha_or_one();
            (Raw::Exact(c_minus(&alpha, n)?), Some(alpha), false)
        }
        Quantity::Moment => {
            let alpha = need_alpha()?;
            (Raw::Exact(moment_m(&alpha, n)?), Some(alpha), false)
        }
        Quantity::PerronMoment => {
            let alpha = need_alpha()?;
            (Raw::Exact(perron_moment(&alpha, n)?), Some(alpha), false)
        }
        Quantity::RN => (Raw::Exact(expected_real_roots(n)), None, true),
        Quantity::Conj => {
            let p = conj_absolute(n);
            let raw = match &args.t {
                Some(t) => Raw::Exact(p.eval(&t.0)),
                None => Raw::Poly(p),
            };
            (raw, None, true)
        }
        Quantity::ZerosInterval => {
            let (a, b) = match (&args.a, &args.b) {
                (Some(a), Some(b)) => (a.0.clone(), b.0.clone()),
                _ => return Err(usage("zeros-interval needs --a and --b")),
            };
            (Raw::Exact(expected_zeros_interval(n, &a, &b)?), None, true)
        }
        Quantity::SmallestX => (Raw::Float(smallest_x(args.class.into(), n)?), None, false),
        Quantity::ConstantProbe => (Raw::Float(asymptotic_constant_probe(n)?), None, false),
    };
    let (exact, decimal, log10) = match raw {
        Raw::Exact(q) => {
            let log10 = (!q.is_zero()).then(|| log10_rational(&q.abs()));
            (Some(q.to_string()), Some(format_decimal(&q, 15)), log10)
        }
        Raw::Poly(p) => {
            let cs: Vec<String> = p.coeffs().iter().map(|c| format!("\"{c}\"")).collect();
            (Some(format!("[{}]", cs.join(", "))), None, None)
        }
        Raw::Float(x) => {
            let log10 = (x > 0.0).then(|| x.log10());
            let decimal = BigRational::from_float(x).map_or_else(|| x.to_string(), |q| format_decimal(&q, 15));
            (None, Some(decimal), log10)
        }
    };
    Ok(FormulaValue {
        quantity: args.quantity,
        n,
        alpha: alpha.map(|a| a.to_string()),
        exact,
        decimal,
        log10,
        conjectural,
    })
}

pub fn render_text(v: &FormulaValue) -> String {
    let flag = if v.conjectural { " (conjectural)" } else { "" };
    match (&v.exact, &v.decimal) {
        (Some(e), Some(d)) if e != d => format!("{e}{flag}\n≈ {d}\n"),
        (Some(e), _) => format!("{e}{flag}\n"),
        (None, Some(d)) => format!("{d}{flag}\n"),
        (None, None) => format!("undefined{flag}\n"),
    }
}
