//! Arbitrary-precision rational scalars and small integer helpers.
//!
//! `Rational` is `num_rational::BigRational`: always reduced to lowest terms
//! with positive denominator, arithmetic exact by construction.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for n/d.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Floor of the integer square root.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of negative integer");
    n.sqrt()
}

/// Exact square root of a non-negative integer, if it is a perfect square.
pub fn exact_int_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = isqrt(n);
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// Exact square root of a rational, if it is a square in Q.
pub fn exact_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = exact_int_sqrt(q.numer())?;
    let d = exact_int_sqrt(q.denom())?;
    Some(Rational::new(n, d))
}

/// Decomposes a nonzero integer as `s^2 * f` with `f` squarefree.
///
/// Returns `(s, f)`; the sign of the input goes into `f`. Factoring is by
/// trial division, adequate for the small discriminants this engine meets;
/// errors out rather than returning a wrong decomposition when the leftover
/// cofactor is too large to certify squarefree.
pub fn squarefree_decompose(n: &BigInt) -> crate::Result<(BigInt, BigInt)> {
    if n.is_zero() {
        return Err(crate::Error::Degenerate(
            "squarefree decomposition of zero".into(),
        ));
    }
    let negative = n.is_negative();
    let mut m = n.abs();
    let mut square = BigInt::one();
    let mut free = BigInt::one();
    let mut p = BigInt::from(2);
    let bound = BigInt::from(100_000u32);
    while &p * &p <= m && p <= bound {
        let mut e = 0u32;
        loop {
            let (q, r) = m.div_rem(&p);
            if r.is_zero() {
                m = q;
                e += 1;
            } else {
                break;
            }
        }
        if e > 0 {
            square *= p.pow(e / 2);
            if e % 2 == 1 {
                free *= &p;
            }
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    // Leftover cofactor: prime, prime square, or product of two primes beyond
    // the trial bound. A perfect square folds into s, otherwise it must be
    // squarefree; certify by size.
    if !m.is_one() {
        if let Some(r) = exact_int_sqrt(&m) {
            square *= r;
        } else if m < &bound * &bound * &bound {
            // fewer than three prime factors above the bound is impossible,
            // and with at most two distinct primes and no square, squarefree
            free *= &m;
        } else {
            return Err(crate::Error::Degenerate(format!(
                "cannot certify squarefree part of {n}"
            )));
        }
    }
    if negative {
        free = -free;
    }
    Ok((square, free))
}

/// Writes sqrt(q) of a nonzero rational as `c * sqrt(d)` with `c` rational
/// positive and `d` a squarefree integer (negative allowed).
pub fn sqrt_normal_form(q: &Rational) -> crate::Result<(Rational, BigInt)> {
    // sqrt(n/m) = sqrt(n m)/m
    let nm = q.numer() * q.denom();
    let (s, f) = squarefree_decompose(&nm)?;
    Ok((Rational::new(s, q.denom().clone()), f))
}

/// All divisors of a nonzero integer (positive divisors only).
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let m = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= m {
        let (q, r) = m.div_rem(&d);
        if r.is_zero() {
            small.push(d.clone());
            if q != d {
                large.push(q);
            }
        }
        d += 1;
        // Guard against huge inputs: divisors() is only used for rational
        // root extraction on small-height polynomials.
        if d > BigInt::from(2_000_000u32) {
            break;
        }
    }
    large.reverse();
    small.extend(large);
    small
}

/// Sign of a rational as -1, 0, 1.
pub fn sign(q: &Rational) -> i8 {
    match q.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squarefree_small() {
        let (s, f) = squarefree_decompose(&BigInt::from(720)).unwrap();
        // 720 = 144 * 5
        assert_eq!(s, BigInt::from(12));
        assert_eq!(f, BigInt::from(5));
        let (s, f) = squarefree_decompose(&BigInt::from(-9)).unwrap();
        assert_eq!(s, BigInt::from(3));
        assert_eq!(f, BigInt::from(-1));
    }

    #[test]
    fn sqrt_forms() {
        assert_eq!(exact_sqrt(&ratio(9, 4)), Some(ratio(3, 2)));
        assert_eq!(exact_sqrt(&rat(2)), None);
        let (c, d) = sqrt_normal_form(&ratio(8, 9)).unwrap();
        // sqrt(8/9) = (2/3) sqrt 2
        assert_eq!(c, ratio(2, 3));
        assert_eq!(d, BigInt::from(2));
    }

    #[test]
    fn divisor_list() {
        let ds = divisors(&BigInt::from(12));
        let expect: Vec<BigInt> = [1, 2, 3, 4, 6, 12].iter().map(|&n| BigInt::from(n)).collect();
        assert_eq!(ds, expect);
    }
}
