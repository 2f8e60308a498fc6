//! Characteristic polynomial engines.
//!
//! Four independent routes compute `χ_M`:
//!
//! * [`cp_mobius`]: the lattice-of-flats definition `Σ_F μ(∅,F) λ^{r(E)−r(F)}`;
//! * [`cp_boolean_expansion`]: the subset sum `Σ_A (−1)^{|A|} λ^{r(E)−r(A)}`;
//! * [`cp_delete_contract`]: `χ_M = χ_{M∖e} − χ_{M/e}` on non-loop,
//!   non-coloop elements;
//! * [`cp_cocircuit_expansion`]: expansion along a minimum cocircuit.
//!
//! plus the closed forms for projective geometries and uniform matroids.
//! Every engine accepts any [`RankFn`] and returns the zero polynomial when a
//! loop is present.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matroid::{
    elements, find_small_cocircuit, flats_with_mobius, parallel_classes, MinorView, RankFn,
};
use crate::poly::IntPolynomial;

/// Largest ground set the subset expansion will enumerate.
pub const BOOLEAN_MAX_ELEMENTS: usize = 20;

pub fn cp_mobius<R: RankFn + ?Sized>(m: &R) -> Result<IntPolynomial> {
    if m.loops() != 0 {
        return Ok(IntPolynomial::zero());
    }
    let r = m.full_rank();
    let mut coeffs = vec![BigInt::zero(); r + 1];
    for flat in flats_with_mobius(m)? {
        coeffs[r - flat.rank] += flat.mobius;
    }
    Ok(IntPolynomial::from_coeffs(coeffs))
}

pub fn cp_boolean_expansion<R: RankFn + ?Sized>(m: &R) -> Result<IntPolynomial> {
    let ground = m.ground();
    let n = ground.count_ones() as usize;
    if n > BOOLEAN_MAX_ELEMENTS {
        return Err(Error::TooLarge(format!(
            "subset expansion over {n} elements (at most {BOOLEAN_MAX_ELEMENTS})"
        )));
    }
    let r = m.full_rank();
    let mut acc = vec![0i64; r + 1];
    // walk all submasks of the ground set
    let mut a = 0u32;
    loop {
        let sign = if a.count_ones().is_multiple_of(2) {
            1
        } else {
            -1
        };
        acc[r - m.rank(a)] += sign;
        if a == ground {
            break;
        }
        a = (a.wrapping_sub(ground)) & ground;
    }
    Ok(IntPolynomial::from_coeffs(
        acc.into_iter().map(BigInt::from).collect(),
    ))
}

/// `(λ − 1)^r`, the characteristic polynomial of a free matroid.
fn free(r: usize) -> IntPolynomial {
    IntPolynomial::linear_root(1).pow(r as u32)
}

// Deletes every element of a parallel class but its lowest.
fn simplify_view<'a, R: RankFn + ?Sized>(v: MinorView<'a, R>) -> MinorView<'a, R> {
    let classes = parallel_classes(&v).expect("loops are handled before simplification");
    let extra = classes
        .iter()
        .fold(0u32, |acc, c| acc | (c & !(1 << c.trailing_zeros())));
    v.delete(extra)
}

type Memo = HashMap<(u32, u32), IntPolynomial>;

/// Deletion–contraction on the lowest-index eligible element, simplifying
/// before each step and memoizing minors by their (ground, contracted) masks.
pub fn cp_delete_contract<R: RankFn + ?Sized>(m: &R) -> IntPolynomial {
    fn go<R: RankFn + ?Sized>(v: MinorView<'_, R>, memo: &mut Memo) -> IntPolynomial {
        if v.loops() != 0 {
            return IntPolynomial::zero();
        }
        let v = simplify_view(v);
        let key = (v.ground(), v.contracted());
        if let Some(p) = memo.get(&key) {
            return p.clone();
        }
        let pivot = elements(v.ground()).find(|&e| !v.is_coloop(e));
        let result = match pivot {
            None => free(v.full_rank()),
            Some(e) => {
                let del = go(v.delete(1 << e), memo);
                let con = go(v.contract(1 << e), memo);
                &del - &con
            }
        };
        memo.insert(key, result.clone());
        result
    }
    go(MinorView::new(m), &mut HashMap::new())
}

/// Expansion along a minimum cocircuit `C* = {x_1, …, x_m}`:
///
/// `χ_M = (λ − m) χ_{M∖C*} + Σ_{j=2}^{m} Σ_{i<j} χ_{M∖X_{i,j}/{x_i,x_j}}`
///
/// with `X_{i,j} = {x_1, …, x_{j−1}} ∖ {x_i}`. Every minor is normalized
/// (zero on a loop, simplified otherwise) before recursing.
pub fn cp_cocircuit_expansion<R: RankFn + ?Sized>(m: &R) -> IntPolynomial {
    fn go<R: RankFn + ?Sized>(v: MinorView<'_, R>, memo: &mut Memo) -> IntPolynomial {
        if v.loops() != 0 {
            return IntPolynomial::zero();
        }
        let v = simplify_view(v);
        let key = (v.ground(), v.contracted());
        if let Some(p) = memo.get(&key) {
            return p.clone();
        }
        let r = v.full_rank();
        let result = if v.ground().count_ones() as usize == r {
            free(r)
        } else {
            let cocircuit = find_small_cocircuit(&v).expect("rank is positive here");
            let xs: Vec<usize> = elements(cocircuit).collect();
            let m = xs.len();
            let mut total = &IntPolynomial::linear_root(m as i64) * &go(v.delete(cocircuit), memo);
            for j in 1..m {
                for i in 0..j {
                    let x_ij = xs[..j]
                        .iter()
                        .filter(|&&x| x != xs[i])
                        .fold(0u32, |acc, &x| acc | (1 << x));
                    let pair = (1 << xs[i]) | (1 << xs[j]);
                    total = &total + &go(v.delete(x_ij).contract(pair), memo);
                }
            }
            total
        };
        memo.insert(key, result.clone());
        result
    }
    go(MinorView::new(m), &mut HashMap::new())
}

/// `Π_{i=0}^{r−1} (λ − q^i)`, the characteristic polynomial of PG(r−1, q).
pub fn cp_pg_closed_form(r: usize, q: u64) -> IntPolynomial {
    let q = BigInt::from(q);
    let mut power = BigInt::one();
    let mut acc = IntPolynomial::one();
    for _ in 0..r {
        acc = &acc * &IntPolynomial::linear_root(power.clone());
        power *= &q;
    }
    acc
}

/// `Σ_{k=0}^{r−1} (−1)^k C(n,k) (λ^{r−k} − 1)`, the characteristic polynomial
/// of `U_{r,n}`. For `r = 0` this is `1` on the empty set and `0` otherwise.
pub fn cp_uniform_closed_form(r: usize, n: usize) -> IntPolynomial {
    if r == 0 {
        return if n == 0 {
            IntPolynomial::one()
        } else {
            IntPolynomial::zero()
        };
    }
    let mut acc = IntPolynomial::zero();
    let mut binom = BigInt::one();
    for k in 0..r {
        let sign = if k % 2 == 0 {
            binom.clone()
        } else {
            -binom.clone()
        };
        let term = &IntPolynomial::monomial(BigInt::one(), r - k) - &IntPolynomial::one();
        acc = &acc + &term.scale(&sign);
        binom = binom * BigInt::from(n - k) / BigInt::from(k + 1);
    }
    acc
}

pub fn poly_exact_div(num: &IntPolynomial, den: &IntPolynomial) -> Result<IntPolynomial> {
    num.exact_div(den)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Engine {
    Mobius,
    Boolean,
    DeleteContract,
    Cocircuit,
}

impl Engine {
    pub const ALL: [Engine; 4] = [
        Engine::Mobius,
        Engine::Boolean,
        Engine::DeleteContract,
        Engine::Cocircuit,
    ];

    pub fn compute<R: RankFn + ?Sized>(self, m: &R) -> Result<IntPolynomial> {
        match self {
            Engine::Mobius => cp_mobius(m),
            Engine::Boolean => cp_boolean_expansion(m),
            Engine::DeleteContract => Ok(cp_delete_contract(m)),
            Engine::Cocircuit => Ok(cp_cocircuit_expansion(m)),
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Mobius => "mobius",
            Engine::Boolean => "boolean",
            Engine::DeleteContract => "delcon",
            Engine::Cocircuit => "cocircuit",
        })
    }
}

impl FromStr for Engine {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "mobius" => Engine::Mobius,
            "boolean" => Engine::Boolean,
            "delcon" => Engine::DeleteContract,
            "cocircuit" => Engine::Cocircuit,
            other => return Err(Error::Parse(format!("unknown engine {other:?}"))),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::tests::{fano, from_rows};
    use crate::matroid::Matroid;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn all_engines(m: &Matroid) -> Vec<IntPolynomial> {
        Engine::ALL.iter().map(|e| e.compute(m).unwrap()).collect()
    }

    #[test]
    fn single_point() {
        let u11 = Matroid::uniform(1, 1).unwrap();
        for cp in all_engines(&u11) {
            assert_eq!(cp, p(&[-1, 1]));
        }
    }

    #[test]
    fn three_point_line() {
        let u23 = Matroid::uniform(2, 3).unwrap();
        for cp in all_engines(&u23) {
            assert_eq!(cp, p(&[2, -3, 1]));
        }
    }

    #[test]
    fn fano_matches_product_form() {
        let expect = &(&p(&[-1, 1]) * &p(&[-2, 1])) * &p(&[-4, 1]);
        assert_eq!(expect, p(&[-8, 14, -7, 1]));
        for cp in all_engines(&fano()) {
            assert_eq!(cp, expect);
        }
    }

    #[test]
    fn loops_give_zero() {
        let looped = from_rows(2, &[&[1, 0, 1]]);
        for cp in all_engines(&looped) {
            assert!(cp.is_zero());
        }
    }

    #[test]
    fn free_matroids() {
        for r in 0..=6 {
            let m = Matroid::uniform(r, r).unwrap();
            let expect = free(r);
            assert_eq!(cp_boolean_expansion(&m).unwrap(), expect);
            assert_eq!(cp_delete_contract(&m), expect);
        }
    }

    #[test]
    fn closed_forms() {
        assert_eq!(cp_pg_closed_form(1, 7), p(&[-1, 1]));
        assert_eq!(cp_pg_closed_form(3, 2), p(&[-8, 14, -7, 1]));
        assert_eq!(cp_pg_closed_form(2, 3), p(&[3, -4, 1]));
        assert_eq!(cp_uniform_closed_form(2, 3), p(&[2, -3, 1]));
        assert_eq!(cp_uniform_closed_form(1, 1), p(&[-1, 1]));
        for n in 3..=8i64 {
            let expect = &p(&[-1, 1]) * &p(&[-(n - 1), 1]);
            assert_eq!(cp_uniform_closed_form(2, n as usize), expect);
        }
        for n in 1..=8 {
            for r in 1..=n {
                assert_eq!(
                    cp_uniform_closed_form(r, n),
                    cp_mobius(&Matroid::uniform(r, n).unwrap()).unwrap(),
                    "U({r},{n})"
                );
            }
        }
    }

    #[test]
    fn engine_names_round_trip() {
        for e in Engine::ALL {
            assert_eq!(e.to_string().parse::<Engine>().unwrap(), e);
        }
        assert!("tutte".parse::<Engine>().is_err());
    }

    #[test]
    fn boolean_size_cap() {
        let m = Matroid::uniform(2, 21).unwrap();
        assert!(matches!(cp_boolean_expansion(&m), Err(Error::TooLarge(_))));
    }
}
