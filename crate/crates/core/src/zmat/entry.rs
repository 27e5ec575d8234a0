//! Scalar types the elimination engine can run on.
//!
//! Every operation is checked: `None` means the result left the range of the
//! type and the caller must restart the computation in a wider one.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Euclid, One, Signed, ToPrimitive, Zero};

pub(crate) trait Entry: Clone + std::fmt::Debug + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_big(v: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn is_negative(&self) -> bool;
    /// `|self| < |other|`
    fn abs_lt(&self, other: &Self) -> bool;
    /// `self - c * b`
    fn sub_mul(&self, c: &Self, b: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    /// Quotient rounded to nearest, so the remainder is as small as possible.
    fn div_nearest(&self, p: &Self) -> Option<Self>;
    fn is_multiple_of(&self, p: &Self) -> bool;
}

macro_rules! machine_entry {
    ($t:ty) => {
        impl Entry for $t {
            #[inline]
            fn zero() -> Self {
                0
            }
            #[inline]
            fn one() -> Self {
                1
            }
            fn from_big(v: &BigInt) -> Option<Self> {
                let x: $t = num_traits::ToPrimitive::to_i128(v)?.try_into().ok()?;
                // keep headroom so that `abs` and negation never overflow
                if x == <$t>::MIN {
                    None
                } else {
                    Some(x)
                }
            }
            fn to_big(&self) -> BigInt {
                BigInt::from(*self)
            }
            #[inline]
            fn is_zero(&self) -> bool {
                *self == 0
            }
            #[inline]
            fn is_unit(&self) -> bool {
                *self == 1 || *self == -1
            }
            #[inline]
            fn is_negative(&self) -> bool {
                *self < 0
            }
            #[inline]
            fn abs_lt(&self, other: &Self) -> bool {
                self.unsigned_abs() < other.unsigned_abs()
            }
            #[inline]
            fn sub_mul(&self, c: &Self, b: &Self) -> Option<Self> {
                let r = self.checked_sub(c.checked_mul(*b)?)?;
                if r == <$t>::MIN {
                    None
                } else {
                    Some(r)
                }
            }
            #[inline]
            fn neg(&self) -> Option<Self> {
                self.checked_neg()
            }
            fn div_nearest(&self, p: &Self) -> Option<Self> {
                let q = self.checked_div_euclid(*p)?;
                let r = self.checked_rem_euclid(*p)?;
                // r in [0, |p|); round up when r > |p|/2
                if r.checked_mul(2)? > p.checked_abs()? {
                    if *p > 0 {
                        q.checked_add(1)
                    } else {
                        q.checked_sub(1)
                    }
                } else {
                    Some(q)
                }
            }
            #[inline]
            fn is_multiple_of(&self, p: &Self) -> bool {
                *self % *p == 0
            }
        }
    };
}

machine_entry!(i64);
machine_entry!(i128);

impl Entry for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn sub_mul(&self, c: &Self, b: &Self) -> Option<Self> {
        Some(self - c * b)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn div_nearest(&self, p: &Self) -> Option<Self> {
        // same rounding as the machine types
        let q = Euclid::div_euclid(self, p);
        let r = Euclid::rem_euclid(self, p);
        if r * 2u32 > p.abs() {
            if Signed::is_positive(p) {
                Some(q + 1)
            } else {
                Some(q - 1)
            }
        } else {
            Some(q)
        }
    }
    fn is_multiple_of(&self, p: &Self) -> bool {
        Integer::is_multiple_of(self, p)
    }
}

/// Fits a big integer into an `i64` if possible.
pub(crate) fn small(v: &BigInt) -> Option<i64> {
    v.to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_nearest<T: Entry>(a: i64, p: i64) {
        let ta = T::from_big(&BigInt::from(a)).unwrap();
        let tp = T::from_big(&BigInt::from(p)).unwrap();
        let q = ta.div_nearest(&tp).unwrap();
        let r = ta.sub_mul(&q, &tp).unwrap().to_big();
        assert!(r.abs() * 2 <= BigInt::from(p).abs(), "{a} / {p}: r = {r}");
    }

    #[test]
    fn nearest_division_leaves_small_remainder() {
        for a in -20..=20 {
            for p in [-7, -4, -2, -1, 1, 2, 3, 4, 7] {
                check_nearest::<i64>(a, p);
                check_nearest::<i128>(a, p);
                check_nearest::<BigInt>(a, p);
                let q64 = a.div_nearest(&p).unwrap();
                let qbig = BigInt::from(a).div_nearest(&BigInt::from(p)).unwrap();
                assert_eq!(BigInt::from(q64), qbig, "{a} / {p}");
            }
        }
    }

    #[test]
    fn machine_overflow_is_reported() {
        let big = i64::MAX / 2;
        assert!(big.sub_mul(&-3, &big).is_none());
        assert!(<i64 as Entry>::from_big(&BigInt::from(i64::MIN)).is_none());
        assert_eq!(<i64 as Entry>::from_big(&BigInt::from(-5)), Some(-5));
    }
}
