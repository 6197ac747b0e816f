//! Scalar abstraction for the LP layer.
//!
//! The simplex and the fractional solution types are generic over
//! [`Scalar`]. [`Rational`] is exact and is what every proof-facing check
//! uses; `f64` is supported with a fixed tolerance for quick estimates and
//! cross-checks. [`HybridRational`] is exact too, and much faster while
//! numerators and denominators fit in 64 bits.

mod hybrid;

pub use hybrid::HybridRational;

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rational = BigRational;

pub trait Scalar:
    Num + Signed + Clone + PartialOrd + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync
{
    /// Magnitudes at or below this are treated as zero. Exact types return zero.
    fn tolerance() -> Self;

    fn from_ratio(numer: i64, denom: i64) -> Self;

    fn is_pos(&self) -> bool {
        *self > Self::tolerance()
    }

    fn is_neg(&self) -> bool {
        *self < -Self::tolerance()
    }

    fn is_negligible(&self) -> bool {
        !self.is_pos() && !self.is_neg()
    }

    fn approx(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for Rational {
    fn tolerance() -> Self {
        Self::zero()
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::new(BigInt::from(numer), BigInt::from(denom))
    }
}

impl Scalar for f64 {
    fn tolerance() -> Self {
        1e-9
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        numer as f64 / denom as f64
    }
}

impl Scalar for f32 {
    fn tolerance() -> Self {
        1e-4
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        numer as f32 / denom as f32
    }
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::from_ratio(numer, denom)
}

pub fn int(value: impl Into<BigInt>) -> Rational {
    Rational::from_integer(value.into())
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).ok()?;
            let q = BigInt::from_str(q.trim()).ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => {
            if let Ok(p) = BigInt::from_str(text) {
                return Some(Rational::from_integer(p));
            }
            // Accept plain decimals such as "0.25" exactly.
            let (whole, frac) = text.split_once('.')?;
            let digits = format!("{whole}{frac}");
            let numer = BigInt::from_str(&digits).ok()?;
            let denom = num_traits::pow(BigInt::from(10u32), frac.len());
            Some(Rational::new(numer, denom))
        }
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Smallest integer not below `r`.
pub fn ceil_to_u64(r: &Rational) -> u64 {
    r.ceil().to_integer().to_u64().unwrap_or(u64::MAX)
}

pub fn floor_to_u64(r: &Rational) -> u64 {
    r.floor().to_integer().to_u64().unwrap_or(0)
}

pub mod serde_rational {
    use super::{format_rational, parse_rational, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).ok_or_else(|| D::Error::custom(format!("bad rational `{text}`")))
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(rs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(rs.len()))?;
            for r in rs {
                seq.serialize_element(&format_rational(r))?;
            }
            seq.end()
        }
    }

    /// Report form: `{"exact": "p/q", "approx": 0.123}`.
    pub mod decimal {
        use super::super::to_f64;
        use super::*;
        use serde::ser::SerializeStruct;

        pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
            let mut st = s.serialize_struct("Rational", 2)?;
            st.serialize_field("exact", &format_rational(r))?;
            st.serialize_field("approx", &to_f64(r))?;
            st.end()
        }

        pub mod opt {
            use super::*;

            pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
                match r {
                    Some(r) => super::serialize(r, s),
                    None => s.serialize_none(),
                }
            }
        }
    }

    pub mod opt {
        use super::*;

        pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match r {
                Some(r) => s.serialize_str(&format_rational(r)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
            let text: Option<String> = Option::deserialize(d)?;
            match text {
                None => Ok(None),
                Some(t) if t.is_empty() => Ok(None),
                Some(t) => parse_rational(&t)
                    .map(Some)
                    .ok_or_else(|| D::Error::custom(format!("bad rational `{t}`"))),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_round_trip() {
        assert_eq!(format_rational(&ratio(6, 16)), "3/8");
        assert_eq!(format_rational(&ratio(4, 2)), "2");
        assert_eq!(parse_rational("3/8"), Some(ratio(3, 8)));
        assert_eq!(parse_rational("0.25"), Some(ratio(1, 4)));
        assert_eq!(parse_rational("-7"), Some(int(-7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn float_tolerance() {
        assert!(1e-12f64.is_negligible());
        assert!(1e-6f64.is_pos());
        assert!(Rational::from_ratio(1, 1_000_000_000_000).is_pos());
    }

    #[test]
    fn rounding() {
        assert_eq!(ceil_to_u64(&ratio(10, 3)), 4);
        assert_eq!(floor_to_u64(&ratio(10, 3)), 3);
        assert_eq!(ceil_to_u64(&int(2)), 2);
    }
}
