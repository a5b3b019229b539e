use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use perron_core::exact::{
    c_minus, c_minus_det, c_n, coeff_second_moment_table, conj_absolute, rational_to_f64, selberg_exact,
    selberg_f64, volume, VolumeClass,
};
use proptest::prelude::*;

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn c_minus_product_equals_determinant(p in 1i64..1000, q in 1i64..100, n in 1u64..=6) {
        let alpha = BigRational::new(p.into(), q.into());
        prop_assume!(alpha < int(10));
        prop_assert_eq!(c_minus(&alpha, n).unwrap(), c_minus_det(&alpha, n).unwrap());
    }
}

#[test]
fn perron_volume_from_generating_polynomial() {
    for n in 1..=40u64 {
        let c = c_n(&int(1), n).unwrap().eval(&int(1));
        let lhs = c * BigRational::new(4.into(), ((n + 1) * (n + 2)).into());
        assert_eq!(lhs, volume(VolumeClass::Perron, n + 1).unwrap(), "N = {}", n + 1);
    }
}

#[test]
fn selberg_at_one_one_is_the_volume() {
    for n in 1..=12 {
        assert_eq!(selberg_exact(1, 1, n).unwrap(), volume(VolumeClass::All, n).unwrap());
    }
}

#[test]
fn selberg_degree_one_is_a_beta_integral() {
    // ∫_{-1}^{1} (1+a)^{α-1} (1-a)^{β-1} da = 2^{α+β-1} Γ(α)Γ(β)/Γ(α+β)
    for (a, b) in [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (1, 5), (3, 4), (5, 5), (2, 7), (6, 3)] {
        let expect = BigRational::new(
            (BigInt::one() << (a + b - 1)) * factorial(a - 1) * factorial(b - 1),
            factorial(a + b - 1),
        );
        assert_eq!(selberg_exact(a, b, 1).unwrap(), expect, "({a}, {b})");
        let approx = selberg_f64(a as f64, b as f64, 1).unwrap();
        let e = rational_to_f64(&expect);
        assert!((approx - e).abs() <= 1e-12 * e);
    }
}

#[test]
fn real_plus_complex_volume_is_at_most_the_total() {
    for n in 1..=16u64 {
        let real = volume(VolumeClass::TotallyReal, n).unwrap();
        let complex = if n % 2 == 0 { volume(VolumeClass::TotallyComplex, n).unwrap() } else { BigRational::zero() };
        let all = volume(VolumeClass::All, n).unwrap();
        // degree one is all real; degree two has only signatures (2,0) and (0,1)
        if n <= 2 {
            assert_eq!(&real + &complex, all);
        } else {
            assert!(real + complex < all, "N = {n}");
        }
    }
}

#[test]
fn conjectured_absolute_value_matches_the_endpoints() {
    for n in 1..=30u64 {
        let c = c_n(&int(1), n).unwrap();
        let d = volume(VolumeClass::All, n).unwrap();
        let conj = conj_absolute(n);
        for t in [int(1), int(-1)] {
            // |P(±1)| = ±P(±1) with a fixed sign on Ω_N
            assert_eq!(conj.eval(&t), (c.eval(&t) / &d).abs(), "N = {n}, T = {t}");
        }
    }
}

#[test]
fn second_moments_are_bounded() {
    // a_0 = 1, so the degree-zero table is [[1]]
    assert_eq!(coeff_second_moment_table(0), vec![vec![int(1)]]);
    for n in 1..=25u64 {
        let table = coeff_second_moment_table(n);
        let bound = int((n * n * n) as i64);
        for row in &table {
            for v in row {
                assert!(v.abs() <= bound, "N = {n}: {v}");
            }
        }
    }
}

#[test]
fn totally_complex_volume_chain() {
    for n in 1..=8u64 {
        assert_eq!(c_minus(&int(1), n).unwrap(), volume(VolumeClass::TotallyComplex, 2 * n).unwrap());
    }
}
