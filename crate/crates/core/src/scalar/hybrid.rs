//! Exact rational that stays on machine integers while it can.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

use super::{Rational, Scalar};

/// Reduced `numer/denom` with `denom > 0` in `i64`, or a [`Rational`] once
/// either part overflows. Results are demoted back whenever they fit.
#[derive(Clone, Debug)]
pub enum HybridRational {
    Small(i64, i64),
    Big(Box<Rational>),
}

use HybridRational::{Big, Small};

impl HybridRational {
    pub fn to_rational(&self) -> Rational {
        match self {
            Small(n, d) => Rational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Big(r) => (**r).clone(),
        }
    }

    fn from_big(r: Rational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Small(n, d),
            _ => Big(Box::new(r)),
        }
    }

    // `n/d` from i128 parts, reduced; `d != 0`.
    fn from_wide(mut n: i128, mut d: i128) -> Self {
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = match (u64::try_from(n.unsigned_abs()), u64::try_from(d)) {
            (Ok(a), Ok(b)) => binary_gcd(a, b) as i128,
            _ => n.gcd(&d),
        };
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Small(n, d),
            _ => Big(Box::new(Rational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn big_op(&self, other: &Self, op: impl Fn(Rational, Rational) -> Rational) -> Self {
        Self::from_big(op(self.to_rational(), other.to_rational()))
    }
}

fn binary_gcd(mut a: u64, mut b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

impl From<&Rational> for HybridRational {
    fn from(r: &Rational) -> Self {
        Self::from_big(r.clone())
    }
}

impl From<HybridRational> for Rational {
    fn from(h: HybridRational) -> Self {
        match h {
            Small(n, d) => Rational::new_raw(BigInt::from(n), BigInt::from(d)),
            Big(r) => *r,
        }
    }
}

impl PartialEq for HybridRational {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for HybridRational {}

impl PartialOrd for HybridRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HybridRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Small(a, b), Small(c, d)) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
            _ => self.to_rational().cmp(&other.to_rational()),
        }
    }
}

impl fmt::Display for HybridRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Small(n, 1) => write!(f, "{n}"),
            Small(n, d) => write!(f, "{n}/{d}"),
            Big(r) => write!(f, "{r}"),
        }
    }
}

impl Add for HybridRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        match (&self, &rhs) {
            (Small(0, _), _) => rhs,
            (_, Small(0, _)) => self,
            (Small(a, 1), Small(c, 1)) => match a.checked_add(*c) {
                Some(sum) => Small(sum, 1),
                None => Self::from_wide(*a as i128 + *c as i128, 1),
            },
            (Small(a, b), Small(c, d)) if b == d => Self::from_wide(*a as i128 + *c as i128, *b as i128),
            (Small(a, b), Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Self::from_wide(a * d + c * b, b * d)
            }
            _ => self.big_op(&rhs, |x, y| x + y),
        }
    }
}

impl Sub for HybridRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for HybridRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        match (&self, &rhs) {
            (Small(0, _), _) | (_, Small(0, _)) => Self::zero(),
            (Small(a, 1), Small(c, 1)) => match a.checked_mul(*c) {
                Some(p) => Small(p, 1),
                None => Self::from_wide(*a as i128 * *c as i128, 1),
            },
            (Small(a, b), Small(c, d)) => {
                Self::from_wide(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => self.big_op(&rhs, |x, y| x * y),
        }
    }
}

impl Div for HybridRational {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        match (&self, &rhs) {
            (_, Small(0, _)) => panic!("division by zero"),
            (Small(a, b), Small(c, d)) => {
                Self::from_wide(*a as i128 * *d as i128, *b as i128 * *c as i128)
            }
            _ => self.big_op(&rhs, |x, y| x / y),
        }
    }
}

impl Rem for HybridRational {
    type Output = Self;
    fn rem(self, rhs: Self) -> Self {
        self.big_op(&rhs, |x, y| x % y)
    }
}

impl Neg for HybridRational {
    type Output = Self;
    fn neg(self) -> Self {
        match self {
            Small(n, d) if n != i64::MIN => Small(-n, d),
            other => Self::from_big(-other.to_rational()),
        }
    }
}

impl Zero for HybridRational {
    fn zero() -> Self {
        Small(0, 1)
    }

    fn is_zero(&self) -> bool {
        matches!(self, Small(0, _))
    }
}

impl One for HybridRational {
    fn one() -> Self {
        Small(1, 1)
    }
}

impl Num for HybridRational {
    type FromStrRadixErr = num_rational::ParseRatioError;

    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        Rational::from_str_radix(s, radix).map(Self::from_big)
    }
}

impl Signed for HybridRational {
    fn abs(&self) -> Self {
        if self.is_negative() { -self.clone() } else { self.clone() }
    }

    fn abs_sub(&self, other: &Self) -> Self {
        if self <= other { Self::zero() } else { self.clone() - other.clone() }
    }

    fn signum(&self) -> Self {
        match self.cmp(&Self::zero()) {
            Ordering::Less => -Self::one(),
            Ordering::Equal => Self::zero(),
            Ordering::Greater => Self::one(),
        }
    }

    fn is_positive(&self) -> bool {
        match self {
            Small(n, _) => *n > 0,
            Big(r) => r.is_positive(),
        }
    }

    fn is_negative(&self) -> bool {
        match self {
            Small(n, _) => *n < 0,
            Big(r) => r.is_negative(),
        }
    }
}

impl ToPrimitive for HybridRational {
    fn to_i64(&self) -> Option<i64> {
        self.to_rational().to_integer().to_i64()
    }

    fn to_u64(&self) -> Option<u64> {
        self.to_rational().to_integer().to_u64()
    }

    fn to_f64(&self) -> Option<f64> {
        match self {
            Small(n, d) => Some(*n as f64 / *d as f64),
            Big(r) => r.to_f64(),
        }
    }
}

impl FromPrimitive for HybridRational {
    fn from_i64(n: i64) -> Option<Self> {
        Some(Small(n, 1))
    }

    fn from_u64(n: u64) -> Option<Self> {
        Some(i64::try_from(n).map_or_else(|_| Self::from_big(Rational::from_integer(n.into())), |n| Small(n, 1)))
    }

    fn from_f64(x: f64) -> Option<Self> {
        Rational::from_float(x).map(Self::from_big)
    }
}

impl Scalar for HybridRational {
    fn tolerance() -> Self {
        Self::zero()
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::from_wide(numer as i128, denom as i128)
    }

    fn is_pos(&self) -> bool {
        self.is_positive()
    }

    fn is_neg(&self) -> bool {
        self.is_negative()
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let huge = HybridRational::from_ratio(i64::MAX, 1);
        let sum = huge.clone() + huge.clone();
        assert!(matches!(sum, Big(_)));
        assert_eq!(sum.to_rational(), big(i64::MAX, 1) * big(2, 1));
        let back = sum - huge.clone();
        assert!(matches!(back, Small(_, 1)));
        assert_eq!(back, huge);
        let tiny = HybridRational::from_ratio(1, i64::MAX) * HybridRational::from_ratio(1, 3);
        assert_eq!(tiny.to_rational(), big(1, i64::MAX) / big(3, 1));
    }

    proptest! {
        #[test]
        fn agrees_with_big_rationals(
            a in -1_000_000i64..1_000_000, b in 1i64..1_000_000,
            c in -1_000_000i64..1_000_000, d in 1i64..1_000_000,
            scale in 0u32..40,
        ) {
            let s = 1i64 << (scale.min(20));
            let x = HybridRational::from_ratio(a * s, b);
            let y = HybridRational::from_ratio(c, d * s);
            let (bx, by) = (big(a * s, b), big(c, d * s));
            prop_assert_eq!((x.clone() + y.clone()).to_rational(), &bx + &by);
            prop_assert_eq!((x.clone() - y.clone()).to_rational(), &bx - &by);
            prop_assert_eq!((x.clone() * y.clone()).to_rational(), &bx * &by);
            if c != 0 {
                prop_assert_eq!((x.clone() / y.clone()).to_rational(), &bx / &by);
            }
            prop_assert_eq!(x.cmp(&y), bx.cmp(&by));
            // Chains that overflow i64 still agree.
            let mut acc = x.clone();
            let mut bacc = bx.clone();
            for _ in 0..6 {
                acc = acc * y.clone() + x.clone();
                bacc = &bacc * &by + &bx;
            }
            prop_assert_eq!(acc.to_rational(), bacc);
        }
    }
}
