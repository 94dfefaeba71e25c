//! Exact arithmetic in quadratic extensions Q(sqrt d).
//!
//! A `QuadExt` is `a + b*sqrt(d)` with `a, b` rational and `d` a squarefree
//! integer that is not a square (negative allowed). Purely rational values
//! are normalized to `d = 0` so that values from different extensions can
//! coexist as long as at most one nontrivial discriminant is involved.

use crate::rational::Rational;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul};

/// Common interface for the exact scalars of the engine: `Rational` and
/// `QuadExt`. Operations are purely functional; names carry a `_ref` suffix
/// to avoid clashing with the `num_traits` operator methods.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Zero + One {
    fn from_rational(q: &Rational) -> Self;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
}

impl Scalar for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational::one() / self)
        }
    }
}

/// `a + b*sqrt(d)`; invariant: `b == 0` implies `d == 0`, and a nonzero `d`
/// is squarefree and not 0 or 1.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadExt {
    pub a: Rational,
    pub b: Rational,
    pub d: BigInt,
}

impl QuadExt {
    pub fn rational(a: Rational) -> Self {
        QuadExt {
            a,
            b: Rational::zero(),
            d: BigInt::zero(),
        }
    }

    /// Builds `a + b*sqrt(d)`; `d` must already be squarefree.
    pub fn new(a: Rational, b: Rational, d: BigInt) -> Self {
        if b.is_zero() || d.is_zero() {
            QuadExt::rational(a)
        } else {
            debug_assert!(d != BigInt::one(), "discriminant 1 is rational");
            QuadExt { a, b, d }
        }
    }

    /// Galois conjugate `a - b*sqrt(d)`.
    pub fn conjugate(&self) -> Self {
        QuadExt::new(self.a.clone(), -self.b.clone(), self.d.clone())
    }

    /// Field norm `a^2 - d b^2`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_integer(self.d.clone()) * &self.b * &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Checks the two values can be combined: rational values mix with any
    /// extension, otherwise the discriminants must agree.
    fn joint_d(&self, other: &Self) -> BigInt {
        if self.d.is_zero() {
            other.d.clone()
        } else if other.d.is_zero() || self.d == other.d {
            self.d.clone()
        } else {
            panic!(
                "mixed quadratic extensions: sqrt({}) vs sqrt({})",
                self.d, other.d
            );
        }
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, other: QuadExt) -> QuadExt {
        self.add_ref(&other)
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, other: QuadExt) -> QuadExt {
        self.mul_ref(&other)
    }
}

impl Zero for QuadExt {
    fn zero() -> Self {
        QuadExt::rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadExt {
    fn one() -> Self {
        QuadExt::rational(Rational::one())
    }
}

impl Scalar for QuadExt {
    fn from_rational(q: &Rational) -> Self {
        QuadExt::rational(q.clone())
    }
    fn add_ref(&self, other: &Self) -> Self {
        let d = self.joint_d(other);
        QuadExt::new(&self.a + &other.a, &self.b + &other.b, d)
    }
    fn sub_ref(&self, other: &Self) -> Self {
        let d = self.joint_d(other);
        QuadExt::new(&self.a - &other.a, &self.b - &other.b, d)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        let d = self.joint_d(other);
        let dq = Rational::from_integer(d.clone());
        QuadExt::new(
            &self.a * &other.a + &dq * &self.b * &other.b,
            &self.a * &other.b + &self.b * &other.a,
            d,
        )
    }
    fn neg_ref(&self) -> Self {
        QuadExt::new(-self.a.clone(), -self.b.clone(), self.d.clone())
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        // d squarefree non-square: the norm of a nonzero element is nonzero
        debug_assert!(!n.is_zero());
        Some(QuadExt::new(&self.a / &n, -(&self.b / &n), self.d.clone()))
    }
}

impl Serialize for QuadExt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({})", self.b, self.d)
        } else if self.b.is_negative() {
            write!(f, "{} - {}*sqrt({})", self.a, -self.b.clone(), self.d)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

/// Roots of `alpha t^2 + beta t + gamma` (not all coefficients zero) over Q
/// or a quadratic extension; `None` when the polynomial is constant.
pub fn quadratic_roots(
    alpha: &Rational,
    beta: &Rational,
    gamma: &Rational,
) -> crate::Result<Option<(QuadExt, QuadExt)>> {
    if alpha.is_zero() {
        if beta.is_zero() {
            return Ok(None);
        }
        let r = QuadExt::rational(-(gamma / beta));
        return Ok(Some((r.clone(), r)));
    }
    let disc = beta * beta - Rational::from_integer(BigInt::from(4)) * alpha * gamma;
    let two_alpha = Rational::from_integer(BigInt::from(2)) * alpha;
    if disc.is_zero() {
        let r = QuadExt::rational(-beta / &two_alpha);
        return Ok(Some((r.clone(), r)));
    }
    let (c, d) = crate::rational::sqrt_normal_form(&disc)?;
    if d.is_one() {
        // disc is a rational square
        let s = c;
        let r1 = QuadExt::rational((-beta + &s) / &two_alpha);
        let r2 = QuadExt::rational((-beta - &s) / &two_alpha);
        Ok(Some((r1, r2)))
    } else {
        let half = c / &two_alpha;
        let mid = -beta / &two_alpha;
        let r1 = QuadExt::new(mid.clone(), half.clone(), d.clone());
        let r2 = QuadExt::new(mid, -half, d);
        Ok(Some((r1, r2)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};
    use proptest::prelude::*;

    #[test]
    fn conjugate_product_is_norm() {
        let x = QuadExt::new(ratio(3, 2), ratio(-1, 5), BigInt::from(7));
        let p = x.mul_ref(&x.conjugate());
        assert!(p.is_rational());
        assert_eq!(p.a, x.norm());
    }

    #[test]
    fn inverse_roundtrip() {
        let x = QuadExt::new(rat(2), rat(3), BigInt::from(5));
        let y = x.inv().unwrap();
        assert_eq!(x.mul_ref(&y), QuadExt::one());
    }

    #[test]
    fn quadratic_roots_rational_and_irrational() {
        // t^2 - 3t + 2 = (t-1)(t-2)
        let (r1, r2) = quadratic_roots(&rat(1), &rat(-3), &rat(2)).unwrap().unwrap();
        assert!(r1.is_rational() && r2.is_rational());
        assert_eq!(&r1.a + &r2.a, rat(3));
        // t^2 - 2: roots +-sqrt 2
        let (r1, r2) = quadratic_roots(&rat(1), &rat(0), &rat(-2)).unwrap().unwrap();
        assert_eq!(r1.d, BigInt::from(2));
        assert!(r1.add_ref(&r2).is_zero());
    }

    proptest! {
        // (a + b sqrt d)(a - b sqrt d) = a^2 - d b^2 exactly
        #[test]
        fn norm_identity(an in -50i64..50, ad in 1i64..20, bn in -50i64..50, bd in 1i64..20) {
            let x = QuadExt::new(ratio(an, ad), ratio(bn, bd), BigInt::from(3));
            let lhs = x.mul_ref(&x.conjugate());
            let rhs = &ratio(an, ad) * &ratio(an, ad) - rat(3) * &ratio(bn, bd) * &ratio(bn, bd);
            prop_assert!(lhs.is_rational());
            prop_assert_eq!(lhs.a, rhs);
        }
    }
}
