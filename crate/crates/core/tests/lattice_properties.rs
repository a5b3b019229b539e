use num_bigint::BigInt;
use num_rational::BigRational;
use perron_core::exact::VolumeClass;
use perron_core::lattice::{
    classify, count_classes, enumerate_lattice, is_irreducible, kronecker_check, LatticePoint,
    DEFAULT_BUDGET,
};
use perron_core::poly::{IntMonicPoly, PerronStatus};
use perron_core::Error;
use proptest::prelude::*;
use std::collections::HashSet;

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn points(n: usize, x: &BigRational) -> Vec<LatticePoint> {
    let mut v = Vec::new();
    enumerate_lattice(n, x, DEFAULT_BUDGET, |p| v.push(p)).unwrap();
    v
}

#[test]
fn degree_one_with_house_below_ten() {
    let pts = points(1, &int(10));
    assert_eq!(pts.iter().filter(|p| p.strict).count(), 19);
    assert_eq!(pts.len(), 21);
}

#[test]
fn quadratics_with_house_at_most_one() {
    let found: HashSet<IntMonicPoly> = points(2, &int(1)).into_iter().map(|p| p.poly).collect();
    let expect: HashSet<IntMonicPoly> = [[0, -1], [0, 0], [1, 0], [-1, 0], [2, 1], [-2, 1], [1, 1], [-1, 1], [0, 1]]
        .iter()
        .map(|c| IntMonicPoly::from_i64(c))
        .collect();
    assert_eq!(found, expect);
}

#[test]
fn enumeration_agrees_with_brute_force() {
    for (n, x) in [(2usize, 3i64), (3, 2), (4, 1)] {
        let xr = int(x);
        let found: HashSet<IntMonicPoly> = points(n, &xr).into_iter().map(|p| p.poly).collect();
        // every integer polynomial in the coefficient box, tested directly
        let mut expect = HashSet::new();
        let bounds: Vec<i64> = (1..=n).map(|k| binom(n, k) * x.pow(k as u32)).collect();
        let mut c: Vec<i64> = bounds.iter().map(|b| -b).collect();
        loop {
            let p = IntMonicPoly::from_i64(&c);
            if p.classify_disk(&xr).unwrap().in_closed_disk() {
                expect.insert(p);
            }
            let mut k = 0;
            while k < n && c[k] == bounds[k] {
                c[k] = -bounds[k];
                k += 1;
            }
            if k == n {
                break;
            }
            c[k] += 1;
        }
        assert_eq!(found, expect, "N = {n}, X = {x}");
    }
}

fn binom(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

#[test]
fn counts_are_consistent() {
    for (n, x) in [(2usize, 6i64), (3, 3), (4, 2)] {
        let r = count_classes(n, &int(x), DEFAULT_BUDGET).unwrap();
        assert_eq!(r.indeterminate, 0);
        for c in [&r.strict, &r.non_strict] {
            assert_eq!(c.perron + c.non_perron, c.all);
            assert_eq!(c.totally_real + c.totally_complex + c.mixed, c.all);
            assert!(c.perron <= c.all && c.totally_real <= c.all);
            let irr = c.irreducible.as_ref().unwrap();
            assert_eq!(irr.all + c.reducible.unwrap(), c.all);
        }
        assert!(r.strict.all <= r.non_strict.all);
        assert!(r.strict.perron <= r.non_strict.perron);
        if n == 2 {
            assert_eq!(r.non_strict.mixed, 0);
        }
    }
}

#[test]
fn quadratic_count_near_the_main_term() {
    let r = count_classes(2, &int(10), DEFAULT_BUDGET).unwrap();
    let ratio = r.prediction(VolumeClass::All).strict_ratio.unwrap();
    assert!((0.7..=1.3).contains(&ratio), "{ratio}");
    assert_eq!(r.prediction(VolumeClass::All).exact, "4000");
}

#[test]
fn cubic_perron_share() {
    let r = count_classes(3, &int(4), DEFAULT_BUDGET).unwrap();
    let share = r.strict.perron as f64 / r.strict.all as f64;
    assert!((share - 1.0 / 3.0).abs() <= 0.3 / 3.0, "{share}");
}

#[test]
fn negation_is_a_count_preserving_involution() {
    for (n, x) in [(2usize, 5i64), (3, 3), (4, 2)] {
        let pts = points(n, &int(x));
        let set: HashSet<IntMonicPoly> = pts.iter().map(|p| p.poly.clone()).collect();
        for p in &pts {
            let m = p.poly.negate_roots();
            assert!(set.contains(&m));
            let (a, b) = (classify(&p.poly, &int(x)).unwrap(), classify(&m, &int(x)).unwrap());
            assert_eq!((a.strict, a.signature, a.perron, a.irreducible), (b.strict, b.signature, b.perron, b.irreducible));
        }
    }
}

#[test]
fn reducible_share_scales_with_the_expected_exponent() {
    // reducible count ~ X^{N(N+1)/2 - (N-1)}; fit a log-log slope over the grid
    for (n, grid) in [(2usize, vec![4i64, 8, 16, 32]), (3, vec![4, 5, 6, 8])] {
        let (mut lx, mut ly) = (Vec::new(), Vec::new());
        for &x in &grid {
            let r = count_classes(n, &int(x), DEFAULT_BUDGET).unwrap();
            lx.push((x as f64).ln());
            ly.push((r.strict.reducible.unwrap() as f64).ln());
        }
        let k = lx.len() as f64;
        let (mx, my) = (lx.iter().sum::<f64>() / k, ly.iter().sum::<f64>() / k);
        let slope = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum::<f64>()
            / lx.iter().map(|a| (a - mx).powi(2)).sum::<f64>();
        let expect = (n * (n + 1) / 2 - (n - 1)) as f64;
        assert!((slope - expect).abs() <= 0.3, "N = {n}: slope {slope}, expected {expect}");
    }
}

#[test]
fn kronecker() {
    let r = kronecker_check(1).unwrap();
    let found: HashSet<IntMonicPoly> = r.polynomials.into_iter().collect();
    let expect: HashSet<IntMonicPoly> = [[0], [-1], [1]].iter().map(|c| IntMonicPoly::from_i64(c)).collect();
    assert_eq!(found, expect);
    for n in 2..=5 {
        let r = kronecker_check(n).unwrap();
        assert!(r.passed, "N = {n}: {:?}", r.exceptions);
        for (p, f) in r.polynomials.iter().zip(&r.factorizations) {
            if classify(p, &int(1)).unwrap().perron == PerronStatus::Perron {
                // house one forces x^{N-1}(x ± 1)
                let x = IntMonicPoly::from_i64(&[0]);
                assert_eq!(f.iter().filter(|g| **g == x).count(), n - 1, "{p:?}");
            }
        }
    }
    assert_eq!(kronecker_check(2).unwrap().polynomials.len(), 9);
}

#[test]
fn budget_refusal_reports_an_estimate() {
    match count_classes(5, &int(20), 1e9) {
        Err(Error::BudgetExceeded { estimate, budget }) => {
            assert!(estimate > budget);
            assert_eq!(budget, 1e9);
        }
        other => panic!("{other:?}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn irreducibility_matches_products(a in prop::collection::vec(-2i64..=2, 1..3), b in prop::collection::vec(-2i64..=2, 1..3)) {
        // the product of two monic factors is reducible
        let mul = |p: &[i64], q: &[i64]| {
            let pa: Vec<i64> = std::iter::once(1).chain(p.iter().copied()).collect();
            let qa: Vec<i64> = std::iter::once(1).chain(q.iter().copied()).collect();
            let mut r = vec![0i64; pa.len() + qa.len() - 1];
            for (i, x) in pa.iter().enumerate() {
                for (j, y) in qa.iter().enumerate() {
                    r[i + j] += x * y;
                }
            }
            r[1..].to_vec()
        };
        let p = IntMonicPoly::from_i64(&mul(&a, &b));
        let x = int(8);
        prop_assume!(p.classify_disk(&x).unwrap().in_closed_disk());
        prop_assert!(!is_irreducible(&p, &x).unwrap());
    }
}
