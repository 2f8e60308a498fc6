//! Dense univariate polynomials with arbitrary-precision integer coefficients,
//! plus exact real-root analysis through Sturm sequences.
//!
//! Coefficients are stored constant term first. The representation is
//! canonical: empty for the zero polynomial, nonzero leading coefficient
//! otherwise.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    fn normalize(mut self) -> Self {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPolynomial { coeffs: vec![c] }.normalize()
    }

    /// The indeterminate.
    pub fn x() -> Self {
        IntPolynomial {
            coeffs: vec![BigInt::zero(), BigInt::one()],
        }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        IntPolynomial { coeffs }.normalize()
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x − a`.
    pub fn linear_root(a: impl Into<BigInt>) -> Self {
        IntPolynomial {
            coeffs: vec![-a.into(), BigInt::one()],
        }
    }

    /// `c · x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let (mut base, mut acc) = (self.clone(), Self::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * x + BigRational::from_integer(c.clone())
            })
    }

    /// Sign of the value at `x`, computed without leaving the integers:
    /// `d^deg · p(n/d)` has the same sign when `d > 0`.
    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        let (n, d) = (x.numer(), x.denom());
        let Some(deg) = self.degree() else {
            return Ordering::Equal;
        };
        let mut value = BigInt::zero();
        let mut npow = BigInt::one();
        let mut dpows = Vec::with_capacity(deg + 1);
        let mut dp = BigInt::one();
        for _ in 0..=deg {
            dpows.push(dp.clone());
            dp *= d;
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            value += c * &npow * &dpows[deg - i];
            npow *= n;
        }
        value.sign_ordering()
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// gcd of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content; the sign of the leading coefficient is kept.
    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        Self::from_coeffs(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Quotient of an exact division in `Z[x]`.
    pub fn exact_div(&self, den: &Self) -> Result<Self> {
        let (q, r) = self.div_rem_integral(den)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision)
        }
    }

    // Long division that stays in Z[x]; fails as soon as a quotient
    // coefficient is not an integer.
    fn div_rem_integral(&self, den: &Self) -> Result<(Self, Self)> {
        let Some(dd) = den.degree() else {
            return Err(Error::DivisionByZero);
        };
        let lead = den.leading().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            for (i, dc) in den.coeffs.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            quot[k] = c;
        }
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Pseudo-remainder scaled by `|lc(b)|^k`, so its sign agrees with the
    /// true remainder over Q.
    fn signed_prem(&self, b: &Self) -> Self {
        let db = b.degree().expect("nonzero divisor");
        let lead = b.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut steps = 0u32;
        while rem.len() > db && !rem.is_empty() {
            let top = rem.last().unwrap().clone();
            let shift = rem.len() - 1 - db;
            for c in rem.iter_mut() {
                *c *= &lead;
            }
            for (i, bc) in b.coeffs.iter().enumerate() {
                rem[shift + i] -= &top * bc;
            }
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
            steps += 1;
        }
        let r = Self::from_coeffs(rem);
        if lead.is_negative() && steps % 2 == 1 {
            -r
        } else {
            r
        }
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.signed_prem(&b).primitive_part();
            a = b;
            b = r;
        }
        if a.leading().is_some_and(Signed::is_negative) {
            a = -a;
        }
        a
    }

    /// `p / gcd(p, p')`: same real roots, all simple.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g)
            .expect("a polynomial is divisible by its gcd with its derivative")
            .primitive_part()
    }

    /// Decimal coefficient strings, constant term first.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }

    pub fn from_strings<S: AsRef<str>>(items: &[S]) -> Result<Self> {
        items
            .iter()
            .map(|s| {
                s.as_ref()
                    .trim()
                    .parse::<BigInt>()
                    .map_err(|e| Error::Parse(format!("coefficient {:?}: {e}", s.as_ref())))
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::from_coeffs)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("string arrays always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        match self.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let items = Vec::<String>::deserialize(d)?;
        Self::from_strings(&items).map_err(D::Error::custom)
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}x^{k}")?,
            }
        }
        Ok(())
    }
}

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        -(self.clone())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (a, b) in coeffs.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for IntPolynomial {
    fn sum<I: Iterator<Item = IntPolynomial>>(iter: I) -> Self {
        iter.fold(IntPolynomial::zero(), |a, b| &a + &b)
    }
}

/// Sturm sequence of a squarefree polynomial.
#[derive(Debug, Clone)]
pub struct SturmSequence {
    seq: Vec<IntPolynomial>,
}

impl SturmSequence {
    /// Builds the sequence for the squarefree part of `p`.
    pub fn new(p: &IntPolynomial) -> Self {
        let p0 = p.squarefree_part();
        let mut seq = vec![p0.clone()];
        let p1 = p0.derivative();
        if !p1.is_zero() {
            seq.push(p1);
            loop {
                let n = seq.len();
                let r = seq[n - 2].signed_prem(&seq[n - 1]);
                if r.is_zero() {
                    break;
                }
                // content is positive, so stripping it keeps the sign pattern
                seq.push((-r).primitive_part());
            }
        }
        SturmSequence { seq }
    }

    pub fn polynomials(&self) -> &[IntPolynomial] {
        &self.seq
    }

    fn variations(signs: impl Iterator<Item = Ordering>) -> usize {
        let mut last = Ordering::Equal;
        let mut count = 0;
        for s in signs.filter(|s| *s != Ordering::Equal) {
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        Self::variations(self.seq.iter().map(|p| p.sign_at(x)))
    }

    pub fn variations_at_infinity(&self) -> usize {
        Self::variations(
            self.seq
                .iter()
                .map(|p| p.leading().map_or(Ordering::Equal, |c| c.sign_ordering())),
        )
    }

    pub fn variations_at_neg_infinity(&self) -> usize {
        Self::variations(self.seq.iter().map(|p| {
            let s = p.leading().map_or(Ordering::Equal, |c| c.sign_ordering());
            if p.degree().unwrap_or(0) % 2 == 1 {
                s.reverse()
            } else {
                s
            }
        }))
    }

    /// Distinct real roots in `(lo, hi]`; `hi = None` means `+∞`.
    pub fn count_roots(&self, lo: &BigRational, hi: Option<&BigRational>) -> usize {
        let vhi = hi.map_or_else(|| self.variations_at_infinity(), |h| self.variations_at(h));
        self.variations_at(lo) - vhi
    }

    pub fn count_all_roots(&self) -> usize {
        self.variations_at_neg_infinity() - self.variations_at_infinity()
    }
}

/// Whether `p(λ) > 0` for every real `λ > bound`. A root exactly at `bound`
/// is allowed.
pub fn sturm_positive_beyond(p: &IntPolynomial, bound: &BigRational) -> bool {
    let Some(lead) = p.leading() else {
        return false;
    };
    if !lead.is_positive() {
        return false;
    }
    if p.degree() == Some(0) {
        return true;
    }
    SturmSequence::new(p).count_roots(bound, None) == 0
}

/// `1 + ⌈max |a_i| / |lead|⌉`; every real root lies strictly inside.
pub fn cauchy_bound(p: &IntPolynomial) -> BigInt {
    let lead = p.leading().expect("nonzero polynomial").abs();
    let max = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(Signed::abs)
        .max()
        .unwrap_or_default();
    BigInt::one() + Integer::div_ceil(&max, &lead)
}

/// Closed interval `[lo, hi]` known to contain a real root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn exact(x: BigRational) -> Self {
        RootInterval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    if n > BigInt::from(100_000) {
        return None;
    }
    let n: u64 = n.try_into().ok()?;
    Some(
        (1..=n)
            .filter(|d| n.is_multiple_of(*d))
            .map(BigInt::from)
            .collect(),
    )
}

/// Interval of width at most `tol` around the largest real root, collapsed
/// to a point when that root is a rational found by the rational-root test.
pub fn largest_real_root(p: &IntPolynomial, tol: &BigRational) -> Option<RootInterval> {
    if p.degree().unwrap_or(0) == 0 {
        return None;
    }
    let sturm = SturmSequence::new(p);
    let bound = BigRational::from_integer(cauchy_bound(p));
    let mut lo = -bound.clone();
    let mut hi = bound;
    if sturm.count_roots(&lo, None) == 0 {
        return None;
    }
    let two = BigRational::from_integer(BigInt::from(2));
    // invariant: the largest root lies in (lo, hi]
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) / &two;
        if sturm.count_roots(&mid, None) >= 1 {
            lo = mid;
        } else {
            if p.sign_at(&mid) == Ordering::Equal {
                return Some(RootInterval::exact(mid));
            }
            hi = mid;
        }
    }
    if p.sign_at(&hi) == Ordering::Equal {
        return Some(RootInterval::exact(hi));
    }
    // Rational roots a/b of an integer polynomial have b | lead.
    let sqf = sturm.polynomials()[0].clone();
    if let Some(dens) = divisors(sqf.leading().unwrap()) {
        for b in dens.iter().rev() {
            let b_r = BigRational::from_integer(b.clone());
            let first = (&lo * &b_r).floor().to_integer();
            let last = (&hi * &b_r).ceil().to_integer();
            let mut a = last;
            while a >= first {
                let x = BigRational::new(a.clone(), b.clone());
                if x > lo
                    && x <= hi
                    && p.sign_at(&x) == Ordering::Equal
                    && sturm.count_roots(&x, None) == 0
                {
                    return Some(RootInterval::exact(x));
                }
                a -= 1;
            }
        }
    }
    Some(RootInterval { lo, hi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn normalization_and_display() {
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[2, -3, 1]).to_string(), "x^2 - 3x + 2");
        assert_eq!(p(&[-8, 14, -7, 1]).to_string(), "x^3 - 7x^2 + 14x - 8");
        assert_eq!(p(&[]).to_string(), "0");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
    }

    #[test]
    fn json_is_constant_first_strings() {
        let f = p(&[-8, 14, -7, 1]);
        assert_eq!(f.to_json(), r#"["-8","14","-7","1"]"#);
        assert_eq!(
            IntPolynomial::from_json(r#"["-8","14","-7","1"]"#).unwrap(),
            f
        );
        assert_eq!(
            IntPolynomial::from_json("[]").unwrap(),
            IntPolynomial::zero()
        );
        assert!(IntPolynomial::from_json(r#"["x"]"#).is_err());
    }

    #[test]
    fn exact_division() {
        assert_eq!(p(&[2, -3, 1]).exact_div(&p(&[-1, 1])).unwrap(), p(&[-2, 1]));
        let pg32 = p(&[-8, 14, -7, 1]);
        let pg22 = p(&[2, -3, 1]);
        assert_eq!(pg32.exact_div(&pg22).unwrap(), p(&[-4, 1]));
        assert_eq!(
            p(&[1, 0, 1]).exact_div(&p(&[-1, 1])),
            Err(Error::InexactDivision)
        );
        assert_eq!(
            p(&[1, 1]).exact_div(&IntPolynomial::zero()),
            Err(Error::DivisionByZero)
        );
        // exact over Q but not over Z
        assert_eq!(p(&[1, 1]).exact_div(&p(&[2])), Err(Error::InexactDivision));
    }

    #[test]
    fn gcd_and_squarefree() {
        // (x-1)^2 (x-2)
        let f = &p(&[-1, 1]).pow(2) * &p(&[-2, 1]);
        assert_eq!(f.gcd(&f.derivative()), p(&[-1, 1]));
        assert_eq!(f.squarefree_part(), p(&[2, -3, 1]));
    }

    #[test]
    fn positivity_examples() {
        let f = p(&[2, -3, 1]);
        assert!(sturm_positive_beyond(&f, &q(2, 1)));
        assert!(!sturm_positive_beyond(&f, &q(3, 2)));
        let pg = p(&[-8, 14, -7, 1]);
        assert!(sturm_positive_beyond(&pg, &q(4, 1)));
        assert!(!sturm_positive_beyond(&pg, &q(7, 2)));
        assert!(sturm_positive_beyond(&p(&[-1, 1]), &q(1, 1)));
        // negative leading coefficient is never eventually positive
        assert!(!sturm_positive_beyond(&p(&[1, -1]), &q(100, 1)));
        // double root exactly at the bound
        assert!(sturm_positive_beyond(&p(&[-3, 1]).pow(2), &q(3, 1)));
        assert!(!sturm_positive_beyond(&p(&[-3, 1]).pow(2), &q(29, 10)));
        assert!(sturm_positive_beyond(&p(&[1, 0, 1]), &q(-100, 1)));
    }

    #[test]
    fn largest_root_examples() {
        let tol = q(1, 1 << 30);
        let r = largest_real_root(&p(&[2, -3, 1]), &tol).unwrap();
        assert!(r.contains(&q(2, 1)));
        assert!(r.is_exact());
        let r = largest_real_root(&p(&[1, 0, 1]), &tol);
        assert!(r.is_none());
        // x^2 - 2: irrational root stays an interval
        let r = largest_real_root(&p(&[-2, 0, 1]), &tol).unwrap();
        assert!(!r.is_exact());
        assert!(r.width() <= tol);
        let mid = ((&r.lo + &r.hi) / q(2, 1)).to_f64().unwrap();
        assert!((mid - 2f64.sqrt()).abs() < 1e-8);
        // 2x - 3: root 3/2 needs the denominator search
        let r = largest_real_root(&p(&[-3, 2]), &tol).unwrap();
        assert_eq!(r, RootInterval::exact(q(3, 2)));
    }

    #[test]
    fn sturm_counts_match_factored_roots() {
        // (x+1)(x-1)(x-2)^2(x-5)
        let f = [-1i64, 1, 2, 2, 5]
            .iter()
            .fold(IntPolynomial::one(), |acc, &r| {
                &acc * &IntPolynomial::linear_root(r)
            });
        let s = SturmSequence::new(&f);
        assert_eq!(s.count_all_roots(), 4);
        assert_eq!(s.count_roots(&q(-1, 1), None), 3);
        assert_eq!(s.count_roots(&q(-2, 1), Some(&q(2, 1))), 3);
        assert_eq!(s.count_roots(&q(2, 1), Some(&q(5, 1))), 1);
        assert_eq!(s.count_roots(&q(5, 1), None), 0);
    }

    #[test]
    fn arithmetic() {
        let a = p(&[1, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(&a * &b, p(&[-1, 0, 1]));
        assert_eq!(&a - &a, IntPolynomial::zero());
        assert_eq!(&a + &b, p(&[0, 2]));
        assert_eq!(a.pow(3), p(&[1, 3, 3, 1]));
        assert_eq!(p(&[2, -3, 1]).eval(&BigInt::from(2)), BigInt::zero());
        assert_eq!(p(&[2, -3, 1]).eval_rational(&q(1, 2)), q(3, 4));
        assert_eq!(p(&[2, -3, 1]).sign_at(&q(3, 2)), Ordering::Less);
        assert_eq!(p(&[0, 2, 4]).content(), BigInt::from(2));
        assert_eq!(cauchy_bound(&p(&[-8, 14, -7, 1])), BigInt::from(15));
    }
}
