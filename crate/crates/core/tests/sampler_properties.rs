use num_bigint::BigInt;
use num_rational::BigRational;
use perron_core::exact::{moment_m, rational_to_f64};
use perron_core::poly::{is_in_omega, is_perron, DEFAULT_TOL};
use perron_core::sampler::{
    sample_omega, sample_perron, sample_perron_exact, sample_perron_rejection, MhStart, SampleBatch,
    SamplerConfig, SamplerMethod,
};
use perron_core::stats::{chain_mean_and_se, ks_constant_term, mean_and_se, perron_fraction};

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(f)
}

fn coeff_stream(b: &SampleBatch) -> Vec<u64> {
    b.samples.iter().flat_map(|s| s.poly.coeffs().iter().map(|c| c.to_bits())).collect()
}

#[test]
fn batches_do_not_depend_on_the_worker_count() {
    for method in [SamplerMethod::FamExact, SamplerMethod::PerronExact, SamplerMethod::PerronRejection] {
        let cfg = SamplerConfig::new(42, method);
        let run = || match method {
            SamplerMethod::FamExact => sample_omega(7, 500, &cfg).unwrap(),
            _ => sample_perron(5, 300, &cfg).unwrap(),
        };
        let one = in_pool(1, run);
        let four = in_pool(4, run);
        assert_eq!(coeff_stream(&one), coeff_stream(&four), "{method:?}");
        assert!(!one.samples.is_empty());
    }
    let cfg = SamplerConfig { mh_chains: 3, mh_burnin: 200, mh_thin: 5, ..SamplerConfig::new(9, SamplerMethod::PerronMh) };
    let a = in_pool(1, || sample_perron(6, 90, &cfg).unwrap());
    let b = in_pool(3, || sample_perron(6, 90, &cfg).unwrap());
    assert_eq!(coeff_stream(&a), coeff_stream(&b));
}

#[test]
fn every_emitted_sample_is_a_member() {
    for n in [2usize, 5, 8, 13] {
        let omega = sample_omega(n, 2000, &SamplerConfig::new(1, SamplerMethod::FamExact)).unwrap();
        assert!(omega.samples.iter().all(|s| is_in_omega(&s.poly, DEFAULT_TOL).unwrap()));
        assert!(omega.indeterminate * 1000 <= omega.requested as u64, "N = {n}: {}", omega.indeterminate);
        for method in [SamplerMethod::PerronExact, SamplerMethod::PerronRejection, SamplerMethod::PerronMh] {
            if method == SamplerMethod::PerronRejection && n > 8 {
                continue;
            }
            let cfg = SamplerConfig { mh_burnin: 100, mh_thin: 2, ..SamplerConfig::new(2, method) };
            let b = sample_perron(n, 500, &cfg).unwrap();
            for s in &b.samples {
                assert!(is_in_omega(&s.poly, DEFAULT_TOL).unwrap());
                assert!(is_perron(&s.poly, DEFAULT_TOL).unwrap(), "{method:?} N = {n}");
            }
        }
    }
}

#[test]
fn constant_term_follows_its_density() {
    for n in [3usize, 6, 11] {
        let b = sample_omega(n, 100_000, &SamplerConfig::new(n as u64, SamplerMethod::FamExact)).unwrap();
        let r = ks_constant_term(&b, 1e-3).unwrap();
        assert!(r.passed, "N = {n}: {r:?}");
    }
}

#[test]
fn perron_fraction_of_the_uniform_ensemble() {
    for n in [3usize, 4, 5, 6] {
        let b = sample_omega(n, 40_000, &SamplerConfig::new(100 + n as u64, SamplerMethod::FamExact)).unwrap();
        let r = perron_fraction(&b).unwrap();
        assert!(r.passed, "N = {n}: {r:?}");
    }
}

#[test]
fn moment_parity_monte_carlo() {
    // Even N: the product runs over k = 0..⌊(N-1)/2⌋; the longer range k = 0..N/2 is rejected.
    for n in [2usize, 4] {
        let b = sample_omega(n, 100_000, &SamplerConfig::new(7 * n as u64, SamplerMethod::FamExact)).unwrap();
        for alpha in [2i64, 3] {
            let xs: Vec<f64> = b.samples.iter().map(|s| s.poly.a(n).abs().powi(alpha as i32 - 1)).collect();
            let (m, se) = mean_and_se(&xs, false);
            let chosen = rational_to_f64(&moment_m(&int(alpha), n as u64).unwrap());
            let k = (n / 2) as f64;
            let alt = chosen * (1.0 + 2.0 * k) / (alpha as f64 + 2.0 * k);
            assert!((m - chosen).abs() <= 3.0 * se, "N = {n}, α = {alpha}: {m} vs {chosen} ± {se}");
            assert!((m - alt).abs() > 10.0 * se, "N = {n}, α = {alpha}: alternative {alt} not rejected");
        }
    }
}

#[test]
fn exact_and_mh_perron_samplers_agree() {
    let n = 5;
    let exact = sample_perron_exact(n, 20_000, &SamplerConfig::new(11, SamplerMethod::PerronExact)).unwrap();
    let cfg = SamplerConfig {
        mh_start: MhStart::Fixed,
        mh_chains: 4,
        mh_burnin: 10_000,
        mh_thin: 10,
        ..SamplerConfig::new(12, SamplerMethod::PerronMh)
    };
    let mh = sample_perron(n, 20_000, &cfg).unwrap();
    assert!(mh.samples.iter().all(|s| s.is_perron()));
    let stats: [(&str, fn(&perron_core::sampler::Sample) -> f64); 3] = [
        ("a_1", |s| s.poly.a(1)),
        ("|a_5|", |s| s.poly.a(5).abs()),
        ("real roots", |s| s.roots.real_roots().count() as f64),
    ];
    for (name, f) in stats {
        let xs: Vec<f64> = exact.samples.iter().map(f).collect();
        let (me, se_e) = mean_and_se(&xs, false);
        let (mm, se_m, _) = chain_mean_and_se(&mh, f);
        let combined = (se_e * se_e + se_m * se_m).sqrt();
        assert!((me - mm).abs() <= 3.0 * combined, "{name}: exact {me} ± {se_e}, MH {mm} ± {se_m}");
    }
}

#[test]
fn rejection_and_direct_perron_samplers_agree() {
    let n = 4;
    let a = sample_perron_exact(n, 20_000, &SamplerConfig::new(3, SamplerMethod::PerronExact)).unwrap();
    let b = sample_perron_rejection(n, 20_000, &SamplerConfig::new(4, SamplerMethod::PerronRejection)).unwrap();
    let mean = |batch: &SampleBatch| {
        let xs: Vec<f64> = batch.samples.iter().map(|s| s.poly.a(n).abs()).collect();
        mean_and_se(&xs, false)
    };
    let ((ma, sa), (mb, sb)) = (mean(&a), mean(&b));
    assert!((ma - mb).abs() <= 3.0 * (sa * sa + sb * sb).sqrt(), "{ma} ± {sa} vs {mb} ± {sb}");
}
