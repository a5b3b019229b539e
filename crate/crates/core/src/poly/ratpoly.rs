//! Dense univariate polynomials over the rationals, with the handful of
//! operations the exact classifiers need: Euclidean division, gcd, square-free
//! decomposition and Sturm / Cauchy-index counts.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A point of the extended real line used as a Sturm-count endpoint.
#[derive(Debug, Clone, PartialEq)]
pub enum Endpoint {
    NegInf,
    Finite(BigRational),
    PosInf,
}

/// Polynomial with rational coefficients, stored in ascending powers.
///
/// The zero polynomial is the empty coefficient vector; otherwise the last
/// coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "RatPoly[{}]", terms.join(", "))
    }
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `x`
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    /// Antiderivative vanishing at 0.
    pub fn integral(&self) -> Self {
        let mut out = vec![BigRational::zero()];
        for (k, c) in self.coeffs.iter().enumerate() {
            out.push(c / BigRational::from_integer(BigInt::from(k + 1)));
        }
        Self::new(out)
    }

    /// `∫_a^b p(t) dt`
    pub fn definite_integral(&self, a: &BigRational, b: &BigRational) -> BigRational {
        let prim = self.integral();
        prim.eval(b) - prim.eval(a)
    }

    /// `x^n p(1/x)` with `n = deg p`.
    pub fn reversal(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    /// `p(-x)`
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `p(s x)`
    pub fn scale_arg(&self, s: &BigRational) -> Self {
        let mut pow = BigRational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &pow);
            pow *= s;
        }
        Self::new(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dl = d.lead().expect("division by the zero polynomial");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() < d.coeffs.len() {
            return (Self::zero(), self.clone());
        }
        let inv = dl.recip();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Exact quotient; `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Square-free decomposition (Yun): returns `(s_i, i)` with
    /// `self = c * prod s_i^i`, each `s_i` monic, square-free and coprime.
    pub fn square_free_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.exact_div(&a0).expect("gcd divides");
        let c = fp.exact_div(&a0).expect("gcd divides");
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            let nb = b.exact_div(&a).expect("gcd divides");
            let nc = d.exact_div(&a).expect("gcd divides");
            if a.degree().unwrap_or(0) > 0 {
                out.push((a, i));
            }
            d = &nc - &nb.derivative();
            b = nb;
            i += 1;
        }
        out
    }

    /// Largest square-free divisor, monic.
    pub fn square_free_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    /// Signed remainder sequence `P, Q, -rem(P,Q), ...`.
    pub fn signed_remainder_sequence(p: &Self, q: &Self) -> Vec<Self> {
        let mut seq = vec![p.clone()];
        if q.is_zero() {
            return seq;
        }
        seq.push(q.clone());
        loop {
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            // scaling by a positive constant keeps sign variations intact
            let l = r.lead().unwrap().abs();
            seq.push(-r.scale(&l.recip()));
        }
        seq
    }

    /// Sign of `p` at an endpoint: -1, 0 or 1.
    pub fn sign_at(&self, e: &Endpoint) -> i32 {
        let s = match e {
            Endpoint::Finite(x) => {
                let v = self.eval(x);
                if v.is_zero() {
                    0
                } else if v.is_positive() {
                    1
                } else {
                    -1
                }
            }
            Endpoint::PosInf | Endpoint::NegInf => match self.lead() {
                None => 0,
                Some(l) => {
                    let s = if l.is_positive() { 1 } else { -1 };
                    let odd = self.coeffs.len() % 2 == 0;
                    if matches!(e, Endpoint::NegInf) && odd {
                        -s
                    } else {
                        s
                    }
                }
            },
        };
        s
    }

    /// Distinct real roots in `(a, b]`.
    pub fn count_real_roots_distinct(&self, a: &Endpoint, b: &Endpoint) -> usize {
        if self.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let seq = Self::signed_remainder_sequence(self, &self.derivative());
        let va = variations(&seq, a);
        let vb = variations(&seq, b);
        va.saturating_sub(vb)
    }

    /// Real roots in `(a, b]`, counted with multiplicity.
    pub fn count_real_roots(&self, a: &Endpoint, b: &Endpoint) -> usize {
        self.square_free_decomposition()
            .iter()
            .map(|(s, m)| m * s.count_real_roots_distinct(a, b))
            .sum()
    }

    /// Cauchy index of `num/den` over `(a, b)`; endpoints must not be roots of `den`.
    pub fn cauchy_index(num: &Self, den: &Self, a: &Endpoint, b: &Endpoint) -> i64 {
        if num.is_zero() {
            return 0;
        }
        let seq = Self::signed_remainder_sequence(den, num);
        variations(&seq, a) as i64 - variations(&seq, b) as i64
    }
}

fn variations(seq: &[RatPoly], e: &Endpoint) -> usize {
    let mut last = 0;
    let mut count = 0;
    for p in seq {
        let s = p.sign_at(e);
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }
}

impl Neg for RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn division_and_gcd() {
        // (x-1)(x+2) and (x-1)(x-3)
        let a = RatPoly::from_ints(&[-2, 1, 1]);
        let b = RatPoly::from_ints(&[3, -4, 1]);
        assert_eq!(a.gcd(&b), RatPoly::from_ints(&[-1, 1]));
        let (q, rem) = a.div_rem(&RatPoly::from_ints(&[-1, 1]));
        assert!(rem.is_zero());
        assert_eq!(q, RatPoly::from_ints(&[2, 1]));
    }

    #[test]
    fn sturm_counts() {
        // (x-1)^2 (x+2) (x^2+1)
        let p = &(&RatPoly::from_ints(&[1, -2, 1]) * &RatPoly::from_ints(&[2, 1]))
            * &RatPoly::from_ints(&[1, 0, 1]);
        let all = p.count_real_roots_distinct(&Endpoint::NegInf, &Endpoint::PosInf);
        assert_eq!(all, 2);
        assert_eq!(p.count_real_roots(&Endpoint::NegInf, &Endpoint::PosInf), 3);
        let right = p.count_real_roots(&Endpoint::Finite(r(0, 1)), &Endpoint::PosInf);
        assert_eq!(right, 2);
        // half-open interval includes the right endpoint
        let at_one = p.count_real_roots(&Endpoint::Finite(r(1, 2)), &Endpoint::Finite(r(1, 1)));
        assert_eq!(at_one, 2);
    }

    #[test]
    fn yun_decomposition() {
        // x (x-1)^2 (x+1)^3
        let p = &(&RatPoly::x() * &RatPoly::from_ints(&[-1, 1]).pow(2))
            * &RatPoly::from_ints(&[1, 1]).pow(3);
        let dec = p.square_free_decomposition();
        let degs: Vec<(usize, usize)> = dec.iter().map(|(s, m)| (s.degree().unwrap(), *m)).collect();
        assert_eq!(degs, vec![(1, 1), (1, 2), (1, 3)]);
    }

    #[test]
    fn cauchy_index_of_reciprocal() {
        let num = RatPoly::one();
        let den = RatPoly::x();
        assert_eq!(RatPoly::cauchy_index(&num, &den, &Endpoint::NegInf, &Endpoint::PosInf), 1);
        assert_eq!(RatPoly::cauchy_index(&-num, &den, &Endpoint::NegInf, &Endpoint::PosInf), -1);
    }

    #[test]
    fn definite_integral_of_square() {
        let p = RatPoly::from_ints(&[0, 0, 1]);
        assert_eq!(p.definite_integral(&r(-1, 1), &r(1, 1)), r(2, 3));
    }
}
