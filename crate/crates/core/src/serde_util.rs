//! Serde helpers for arbitrary-precision values.
//!
//! Integers are written as JSON numbers when they fit in an `i64` and as
//! decimal strings otherwise; both forms are accepted on input.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

struct IntVisitor;

impl Visitor<'_> for IntVisitor {
    type Value = Int;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal integer string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
        Ok(Int(BigInt::from(v)))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
        Ok(Int(BigInt::from(v)))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
        v.trim()
            .parse::<BigInt>()
            .map(Int)
            .map_err(|_| E::custom(format!("invalid integer {v:?}")))
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(IntVisitor)
    }
}

/// `#[serde(with = "bigint")]` for a `BigInt` field (always a string).
pub mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        Int::deserialize(d).map(|i| i.0)
    }
}

/// `#[serde(with = "bigint_vec")]` for `Vec<BigInt>` (strings).
pub mod bigint_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<String> = v.iter().map(ToString::to_string).collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let v: Vec<Int> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|i| i.0).collect())
    }
}

/// Exact rational as `{"numerator": "...", "denominator": "..."}`.
#[derive(Serialize, Deserialize)]
struct RationalRepr {
    numerator: String,
    denominator: String,
}

pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        RationalRepr {
            numerator: v.numer().to_string(),
            denominator: v.denom().to_string(),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let r = RationalRepr::deserialize(d)?;
        let n: BigInt = r.numerator.parse().map_err(de::Error::custom)?;
        let den: BigInt = r.denominator.parse().map_err(de::Error::custom)?;
        if den.is_zero() {
            return Err(de::Error::custom("zero denominator"));
        }
        Ok(BigRational::new(n, den))
    }
}

pub mod opt_rational {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(r) => s.serialize_some(&RationalRepr {
                numerator: r.numer().to_string(),
                denominator: r.denom().to_string(),
            }),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        let r: Option<RationalRepr> = Option::deserialize(d)?;
        r.map(|r| {
            let n: BigInt = r.numerator.parse().map_err(de::Error::custom)?;
            let den: BigInt = r.denominator.parse().map_err(de::Error::custom)?;
            if den.is_zero() {
                return Err(de::Error::custom("zero denominator"));
            }
            Ok(BigRational::new(n, den))
        })
        .transpose()
    }
}
