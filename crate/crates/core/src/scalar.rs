//! Exact ordered scalars.
//!
//! Every numeric quantity in this crate (log-radii, edge lengths, splitting
//! thresholds) lives in an exact ordered field. [`Scalar`] is the small
//! surface the algorithms need on top of `num-traits`; it is implemented for
//! every `Ratio<T>` whose integer type is signed and parseable, which covers
//! `Ratio<i64>`, `Ratio<i128>` and `BigRational`.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Signed;

/// An exact, totally ordered field element.
pub trait Scalar:
    Clone + Ord + Hash + Debug + Display + Signed + Send + Sync + 'static
{
    /// `numer / denom`; `denom` must be nonzero.
    fn from_ratio(numer: i64, denom: i64) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    /// Lowest terms, positive denominator, always with a slash (`"3/1"`).
    fn to_ratio_string(&self) -> String;

    /// Accepts `"n/d"` or a bare integer `"n"`.
    fn parse_ratio(s: &str) -> Option<Self>;

    /// True when the value is an integer.
    fn is_integral(&self) -> bool;

    /// `floor(self)` as an `i64`, if it fits.
    fn floor_i64(&self) -> Option<i64>;
}

impl<T> Scalar for Ratio<T>
where
    T: Clone + Integer + Signed + Hash + Debug + Display + FromStr + From<i64> + Send + Sync + 'static,
    T: TryInto<i64>,
{
    fn from_ratio(numer: i64, denom: i64) -> Self {
        Ratio::new(T::from(numer), T::from(denom))
    }

    fn to_ratio_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    fn parse_ratio(s: &str) -> Option<Self> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n = T::from_str(n).ok()?;
        let d = T::from_str(d).ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Ratio::new(n, d))
    }

    fn is_integral(&self) -> bool {
        self.denom().is_one()
    }

    fn floor_i64(&self) -> Option<i64> {
        self.floor().to_integer().try_into().ok()
    }
}

/// Serde adapter for a single scalar as an `"n/d"` string.
pub mod ratio_string {
    use super::Scalar;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Scalar, Ser: Serializer>(value: &S, ser: Ser) -> Result<Ser::Ok, Ser::Error> {
        ser.serialize_str(&value.to_ratio_string())
    }

    pub fn deserialize<'de, S: Scalar, D: Deserializer<'de>>(de: D) -> Result<S, D::Error> {
        let raw = RatioToken::deserialize(de)?;
        raw.parse::<S>().ok_or_else(|| D::Error::custom(format!("invalid rational {:?}", raw.0)))
    }

    /// Accepts a JSON string or integer.
    #[derive(Debug, Clone)]
    pub struct RatioToken(pub String);

    impl RatioToken {
        pub fn parse<S: Scalar>(&self) -> Option<S> {
            S::parse_ratio(&self.0)
        }
    }

    impl<'de> Deserialize<'de> for RatioToken {
        fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
            #[derive(Deserialize)]
            #[serde(untagged)]
            enum Repr {
                Str(String),
                Int(i64),
            }
            Ok(match Repr::deserialize(de)? {
                Repr::Str(s) => RatioToken(s),
                Repr::Int(n) => RatioToken(n.to_string()),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type Q = Ratio<i64>;

    #[test]
    fn lowest_terms_and_sign() {
        let q = Q::parse_ratio("6/-4").unwrap();
        assert_eq!(q.to_ratio_string(), "-3/2");
        assert_eq!(Q::from_int(3).to_ratio_string(), "3/1");
        assert_eq!(Q::parse_ratio("-7").unwrap(), Q::from_int(-7));
    }

    #[test]
    fn rejects_garbage() {
        assert!(Q::parse_ratio("1/0").is_none());
        assert!(Q::parse_ratio("x").is_none());
        assert!(Q::parse_ratio("1.5").is_none());
    }

    #[test]
    fn big_rational_round_trip() {
        let q = Ratio::<BigInt>::parse_ratio("123456789012345678901234567890/3").unwrap();
        assert_eq!(q.to_ratio_string(), "41152263004115226300411522630/1");
        assert!(q.is_integral());
    }

    #[test]
    fn floor_of_negative() {
        assert_eq!(Q::from_ratio(-5, 2).floor_i64(), Some(-3));
    }
}
