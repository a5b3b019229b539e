//! Exact count of roots inside, on and outside the unit circle.
//!
//! The boundary part is split off as `g = gcd(q, q*)`, `q*` the reversal of
//! `q`. Its roots are the unit-circle roots of `q` together with reciprocal
//! pairs `(ρ, 1/ρ)`; the circle roots are counted by folding the palindromic
//! part through `x = z + 1/z` and counting real roots in `(-2, 2)`. The
//! circle-free cofactor is mapped to the half plane by `z = (1+w)/(1-w)` and
//! counted with the Routh–Hurwitz Cauchy index.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ratpoly::{Endpoint, RatPoly};
use super::DiskClassification;
use crate::error::{Error, Result};

/// Classify the roots of an exact rational polynomial relative to the unit circle.
pub fn classify_unit_disk(q: &RatPoly) -> Result<DiskClassification> {
    let n = match q.degree() {
        None => return Err(Error::InvalidInput("zero polynomial".into())),
        Some(n) => n,
    };
    if n == 0 {
        return Ok(DiskClassification { interior: 0, boundary: 0, exterior: 0 });
    }
    let g = q.gcd(&q.reversal());
    let strict = q.exact_div(&g).expect("gcd divides");
    let (r_in, r_out) = strict_counts(&strict);
    let (circle, paired) = boundary_counts(&g);
    Ok(DiskClassification {
        interior: r_in + paired,
        boundary: circle,
        exterior: r_out + paired,
    })
}

/// Inside/outside counts for a polynomial with no roots on the unit circle.
fn strict_counts(r: &RatPoly) -> (usize, usize) {
    let n = r.degree().unwrap_or(0);
    if n == 0 {
        return (0, 0);
    }
    let f = cayley(r, n);
    debug_assert_eq!(f.degree(), Some(n));
    let (left, right) = half_plane_counts(&f);
    (left, right)
}

/// `(1 - w)^n r((1 + w)/(1 - w))`
fn cayley(r: &RatPoly, n: usize) -> RatPoly {
    let plus = RatPoly::from_ints(&[1, 1]);
    let minus = RatPoly::from_ints(&[1, -1]);
    let mut acc = RatPoly::zero();
    for (k, c) in r.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = &plus.pow(k) * &minus.pow(n - k);
        acc = &acc + &term.scale(c);
    }
    acc
}

/// Left/right half-plane root counts of a real polynomial without roots on
/// the imaginary axis.
fn half_plane_counts(f: &RatPoly) -> (usize, usize) {
    let n = f.degree().unwrap_or(0);
    // f(iy) = P(y) + i Q(y)
    let mut p = vec![BigRational::zero(); n + 1];
    let mut qv = vec![BigRational::zero(); n + 1];
    for (k, c) in f.coeffs().iter().enumerate() {
        let v = match k % 4 {
            0 | 1 => c.clone(),
            _ => -c.clone(),
        };
        if k % 2 == 0 {
            p[k] = v;
        } else {
            qv[k] = v;
        }
    }
    let p = RatPoly::new(p);
    let qv = RatPoly::new(qv);
    let diff = if n % 2 == 1 {
        RatPoly::cauchy_index(&p, &qv, &Endpoint::NegInf, &Endpoint::PosInf)
    } else {
        -RatPoly::cauchy_index(&qv, &p, &Endpoint::NegInf, &Endpoint::PosInf)
    };
    let n = n as i64;
    let left = (n + diff) / 2;
    (left as usize, (n - left) as usize)
}

/// For a self-reciprocal `g`, return (roots on the circle, roots strictly inside).
fn boundary_counts(g: &RatPoly) -> (usize, usize) {
    let deg = g.degree().unwrap_or(0);
    if deg == 0 {
        return (0, 0);
    }
    let mut rest = g.clone();
    let mut circle = 0;
    for root in [1i64, -1] {
        let lin = RatPoly::from_ints(&[-root, 1]);
        while let Some(qt) = rest.exact_div(&lin) {
            if rest.degree() == Some(0) {
                break;
            }
            rest = qt;
            circle += 1;
        }
    }
    let d = rest.degree().unwrap_or(0);
    if d == 0 {
        return (circle, (deg - circle) / 2);
    }
    debug_assert!(d % 2 == 0, "palindromic remainder has even degree");
    let e = d / 2;
    let h = fold_palindromic(&rest, e);
    let two = BigRational::from_integer(BigInt::from(2));
    let inside_band = h.count_real_roots(&Endpoint::Finite(-two.clone()), &Endpoint::Finite(two));
    circle += 2 * inside_band;
    (circle, (deg - circle) / 2)
}

/// Write `z^{-e} g(z)` as `h(z + 1/z)` for palindromic `g` of degree `2e`.
fn fold_palindromic(g: &RatPoly, e: usize) -> RatPoly {
    // Dickson polynomials: z^j + z^-j = D_j(z + 1/z)
    let mut dickson = vec![RatPoly::from_ints(&[2]), RatPoly::x()];
    for j in 2..=e {
        let next = &(&RatPoly::x() * &dickson[j - 1]) - &dickson[j - 2];
        dickson.push(next);
    }
    let mut h = RatPoly::constant(g.coeff(e));
    for j in 1..=e {
        h = &h + &dickson[j].scale(&g.coeff(e + j));
    }
    debug_assert!((0..=e).all(|j| g.coeff(e + j) == g.coeff(e - j)));
    h
}

/// Roots of `q` relative to the circle of radius `radius`.
pub fn classify_disk_radius(q: &RatPoly, radius: &BigRational) -> Result<DiskClassification> {
    if radius <= &BigRational::zero() {
        return Err(Error::InvalidInput("radius must be positive".into()));
    }
    if radius.is_one() {
        return classify_unit_disk(q);
    }
    classify_unit_disk(&q.scale_arg(radius))
}
