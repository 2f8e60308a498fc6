//! Table-driven arithmetic in GF(q) for prime powers q ≤ 32.
//!
//! An element of GF(p^d) is stored as its index in `[0, q)`: for `d = 1` the
//! residue itself, otherwise the base-`p` digits of the index are the
//! coefficients (constant term first) of a polynomial reduced modulo the
//! field's irreducible polynomial.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_ORDER: u32 = 32;

/// Element of a finite field, identified by its table index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u8);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn new(index: u8) -> Self {
        FieldElement(index)
    }

    pub fn index(self) -> u8 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite field with dense addition and multiplication tables.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldSpec {
    q: u32,
    p: u32,
    d: u32,
    irreducible: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("q", &self.q)
            .field("p", &self.p)
            .field("d", &self.d)
            .field("irreducible", &self.irreducible)
            .finish()
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

/// Splits `q` as `p^d`, or returns `None` if it is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|p| q.is_multiple_of(*p))?;
    let (mut rest, mut d) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        d += 1;
    }
    (rest == 1).then_some((p, d))
}

/// Default irreducible polynomial (constant term first, monic) for the
/// non-prime orders we ship.
pub fn default_irreducible(q: u32) -> Option<&'static [u32]> {
    Some(match q {
        4 => &[1, 1, 1],
        8 => &[1, 1, 0, 1],
        9 => &[1, 0, 1],
        16 => &[1, 1, 0, 0, 1],
        25 => &[2, 0, 1],
        27 => &[1, 2, 0, 1],
        32 => &[1, 0, 1, 0, 0, 1],
        _ => return None,
    })
}

// Remainder of `a` modulo monic `m` over GF(p); both constant-term first.
fn poly_rem_mod_p(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap() % p;
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - lead * c % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn is_irreducible_mod_p(f: &[u32], p: u32) -> bool {
    let d = f.len() - 1;
    // every monic candidate divisor of degree 1..=d/2
    for deg in 1..=d / 2 {
        let count = p.pow(deg as u32);
        for low in 0..count {
            let mut g = Vec::with_capacity(deg + 1);
            let mut x = low;
            for _ in 0..deg {
                g.push(x % p);
                x /= p;
            }
            g.push(1);
            if poly_rem_mod_p(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    /// Builds GF(p^d). `irreducible` (constant term first, monic of degree `d`)
    /// must be given exactly when `d > 1`.
    pub fn new(p: u32, d: u32, irreducible: Option<&[u32]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if d == 0 {
            return Err(Error::BadField(
                "extension degree must be at least 1".into(),
            ));
        }
        let q = (p as u64).checked_pow(d).unwrap_or(u64::MAX);
        if q > MAX_ORDER as u64 {
            return Err(Error::OrderTooLarge(q));
        }
        let q = q as u32;
        let irreducible: Vec<u32> = match (d, irreducible) {
            (1, None) => vec![0, 1],
            (1, Some(_)) => {
                return Err(Error::BadField(
                    "prime fields take no irreducible polynomial".into(),
                ))
            }
            (_, None) => {
                return Err(Error::BadField(format!(
                    "GF({p}^{d}) needs an irreducible polynomial"
                )))
            }
            (_, Some(f)) => {
                if f.len() != d as usize + 1 || f[d as usize] != 1 || f.iter().any(|&c| c >= p) {
                    return Err(Error::BadField(format!(
                        "expected a monic degree-{d} polynomial with coefficients below {p}"
                    )));
                }
                if !is_irreducible_mod_p(f, p) {
                    return Err(Error::ReduciblePolynomial(p));
                }
                f.to_vec()
            }
        };

        let digits = |x: u32| -> Vec<u32> {
            let mut v = vec![0; d as usize];
            let mut x = x;
            for c in v.iter_mut() {
                *c = x % p;
                x /= p;
            }
            v
        };
        let index = |v: &[u32]| -> u8 { v.iter().rev().fold(0, |acc, &c| acc * p + c) as u8 };

        let qs = q as usize;
        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = index(&sum);

                let mut prod = vec![0u32; 2 * d as usize - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut red = poly_rem_mod_p(&prod, &irreducible, p);
                red.resize(d as usize, 0);
                mul[(a * q + b) as usize] = index(&red);
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[(a * q + b) as usize] == 0).unwrap() as u8)
            .collect();
        let inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q).find(|&b| mul[(a * q + b) as usize] == 1).unwrap() as u8
                }
            })
            .collect();

        Ok(FieldSpec {
            q,
            p,
            d,
            irreducible,
            add,
            mul,
            neg,
            inv,
        })
    }

    /// GF(q) with the shipped default polynomial for extension fields.
    pub fn gf(q: u32) -> Result<Self> {
        if q as u64 > MAX_ORDER as u64 {
            return Err(Error::OrderTooLarge(q as u64));
        }
        let (p, d) = prime_power(q).ok_or_else(|| {
            if q >= 2 {
                Error::NotPrime(q)
            } else {
                Error::BadField(format!("{q} is not a field order"))
            }
        })?;
        if d == 1 {
            Self::new(p, 1, None)
        } else {
            Self::new(p, d, default_irreducible(q))
        }
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn irreducible(&self) -> &[u32] {
        &self.irreducible
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q as u8).map(FieldElement)
    }

    pub fn element(&self, index: u32) -> Result<FieldElement> {
        if index < self.q {
            Ok(FieldElement(index as u8))
        } else {
            Err(Error::Parse(format!(
                "{index} is not an element of GF({})",
                self.q
            )))
        }
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add[a.0 as usize * self.q as usize + b.0 as usize])
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.mul[a.0 as usize * self.q as usize + b.0 as usize])
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(FieldElement(self.inv[a.0 as usize]))
        }
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, mut e: u32) -> FieldElement {
        let (mut base, mut acc) = (a, FieldElement::ONE);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    // Raw-index helpers for the elimination kernels.
    #[inline]
    pub(crate) fn add_raw(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub(crate) fn mul_raw(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub(crate) fn neg_raw(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub(crate) fn inv_raw(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }
}

/// Rank of a set of vectors (each of equal length) over the field.
pub(crate) fn vectors_rank(field: &FieldSpec, vectors: &mut [Vec<u8>]) -> usize {
    let Some(len) = vectors.first().map(Vec::len) else {
        return 0;
    };
    let mut rank = 0;
    for coord in 0..len {
        let Some(pivot) = (rank..vectors.len()).find(|&i| vectors[i][coord] != 0) else {
            continue;
        };
        vectors.swap(rank, pivot);
        let inv = field.inv_raw(vectors[rank][coord]);
        for c in coord..len {
            vectors[rank][c] = field.mul_raw(vectors[rank][c], inv);
        }
        for i in rank + 1..vectors.len() {
            let f = vectors[i][coord];
            if f != 0 {
                let nf = field.neg_raw(f);
                for c in coord..len {
                    let t = field.mul_raw(nf, vectors[rank][c]);
                    vectors[i][c] = field.add_raw(vectors[i][c], t);
                }
            }
        }
        rank += 1;
        if rank == vectors.len() {
            break;
        }
    }
    rank
}

/// Scales a nonzero vector so its first nonzero coordinate is 1.
pub(crate) fn normalize_vector(field: &FieldSpec, v: &[u8]) -> Option<Vec<u8>> {
    let lead = *v.iter().find(|&&x| x != 0)?;
    let inv = field.inv_raw(lead);
    Some(v.iter().map(|&x| field.mul_raw(x, inv)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    const SUPPORTED: [u32; 18] = [
        2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32,
    ];

    #[test]
    fn gf2_one_plus_one() {
        let f = FieldSpec::new(2, 1, None).unwrap();
        assert_eq!(
            f.add(FieldElement::ONE, FieldElement::ONE),
            FieldElement::ZERO
        );
    }

    #[test]
    fn gf3_two_times_two() {
        let f = FieldSpec::new(3, 1, None).unwrap();
        let two = FieldElement::new(2);
        assert_eq!(f.mul(two, two), FieldElement::ONE);
    }

    #[test]
    fn gf4_x_squared_is_x_plus_one() {
        let f = FieldSpec::new(2, 2, Some(&[1, 1, 1])).unwrap();
        let x = FieldElement::new(2);
        let x_plus_1 = FieldElement::new(3);
        assert_eq!(f.mul(x, x), x_plus_1);
        // brute-force: multiply (a1 x + a0)(b1 x + b0) and substitute x^2 = x + 1
        for a in 0..4u32 {
            for b in 0..4u32 {
                let (a0, a1, b0, b1) = (a & 1, a >> 1, b & 1, b >> 1);
                let c2 = a1 & b1;
                let c1 = (a1 & b0) ^ (a0 & b1) ^ c2;
                let c0 = (a0 & b0) ^ c2;
                let expect = (c1 << 1 | c0) as u8;
                assert_eq!(
                    f.mul(FieldElement::new(a as u8), FieldElement::new(b as u8))
                        .index(),
                    expect
                );
            }
        }
    }

    #[test]
    fn inverses() {
        let f5 = FieldSpec::gf(5).unwrap();
        assert_eq!(f5.inv(FieldElement::new(3)).unwrap(), FieldElement::new(2));
        let f2 = FieldSpec::gf(2).unwrap();
        assert_eq!(f2.inv(FieldElement::ONE).unwrap(), FieldElement::ONE);
        let f4 = FieldSpec::gf(4).unwrap();
        assert_eq!(f4.inv(FieldElement::new(2)).unwrap(), FieldElement::new(3));
        assert_eq!(f4.inv(FieldElement::ZERO), Err(Error::DivisionByZero));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(FieldSpec::new(4, 1, None), Err(Error::NotPrime(4)));
        assert_eq!(FieldSpec::new(2, 6, None), Err(Error::OrderTooLarge(64)));
        assert_eq!(FieldSpec::new(37, 1, None), Err(Error::OrderTooLarge(37)));
        // x^2 + 1 = (x + 1)^2 over GF(2)
        assert_eq!(
            FieldSpec::new(2, 2, Some(&[1, 0, 1])),
            Err(Error::ReduciblePolynomial(2))
        );
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2 over GF(2): no roots, still reducible
        assert_eq!(
            FieldSpec::new(2, 4, Some(&[1, 0, 1, 0, 1])),
            Err(Error::ReduciblePolynomial(2))
        );
        assert!(matches!(
            FieldSpec::new(2, 2, None),
            Err(Error::BadField(_))
        ));
        assert!(matches!(
            FieldSpec::new(3, 1, Some(&[0, 1])),
            Err(Error::BadField(_))
        ));
        assert!(FieldSpec::gf(6).is_err());
        assert!(FieldSpec::gf(1).is_err());
    }

    #[test]
    fn field_axioms_exhaustive() {
        for &q in &SUPPORTED {
            let f = FieldSpec::gf(q).unwrap();
            assert_eq!(f.order(), q);
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, FieldElement::ZERO), a);
                assert_eq!(f.mul(a, FieldElement::ONE), a);
                if !a.is_zero() {
                    let inv = f.inv(a).unwrap();
                    assert_eq!(f.mul(a, inv), FieldElement::ONE);
                    assert_eq!(
                        els.iter()
                            .filter(|&&b| f.mul(a, b) == FieldElement::ONE)
                            .count(),
                        1
                    );
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    // Frobenius
                    let p = f.characteristic();
                    assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
                }
            }
            // full triple checks are cheap up to 32^3
            for &a in &els {
                for &b in &els {
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(31), Some((31, 1)));
    }
}
