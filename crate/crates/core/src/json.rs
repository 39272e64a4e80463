//! JSON encoding of exact numbers and matrices.
//!
//! Integers are JSON integers (decimal strings when they overflow `i64`).
//! Rationals are JSON integers when integral and `"p/q"` strings otherwise.
//! Both decoders accept either form.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exactlinalg::{fmt_rat, parse_rat, IntMat, RatMat};

/// Version tag written into every top-level document.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonRat(pub BigRational);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl Serialize for JsonRat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            JsonInt(self.0.to_integer()).serialize(s)
        } else {
            s.serialize_str(&fmt_rat(&self.0))
        }
    }
}

struct NumVisitor {
    allow_fraction: bool,
}

impl Visitor<'_> for NumVisitor {
    type Value = BigRational;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.allow_fraction {
            write!(f, "an integer or a \"p/q\" string")
        } else {
            write!(f, "an integer")
        }
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<BigRational, E> {
        Ok(BigRational::from_integer(v.into()))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<BigRational, E> {
        Ok(BigRational::from_integer(v.into()))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<BigRational, E> {
        Err(E::invalid_type(de::Unexpected::Float(v), &self))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<BigRational, E> {
        let r = parse_rat(v).ok_or_else(|| E::invalid_value(de::Unexpected::Str(v), &self))?;
        if !self.allow_fraction && !r.is_integer() {
            return Err(E::invalid_value(de::Unexpected::Str(v), &self));
        }
        Ok(r)
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = d.deserialize_any(NumVisitor {
            allow_fraction: false,
        })?;
        Ok(JsonInt(r.to_integer()))
    }
}

impl<'de> Deserialize<'de> for JsonRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(JsonRat(d.deserialize_any(NumVisitor {
            allow_fraction: true,
        })?))
    }
}

pub fn int_rows(m: &IntMat) -> Vec<Vec<JsonInt>> {
    m.to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(JsonInt).collect())
        .collect()
}

pub fn rat_rows(m: &RatMat) -> Vec<Vec<JsonRat>> {
    m.to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(JsonRat).collect())
        .collect()
}

pub fn rats(v: &[BigRational]) -> Vec<JsonRat> {
    v.iter().cloned().map(JsonRat).collect()
}

pub fn ints(v: &[BigInt]) -> Vec<JsonInt> {
    v.iter().cloned().map(JsonInt).collect()
}

pub mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        JsonInt(v.clone()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        Ok(JsonInt::deserialize(d)?.0)
    }
}

pub mod bigint_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        ints(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Ok(Vec::<JsonInt>::deserialize(d)?
            .into_iter()
            .map(|x| x.0)
            .collect())
    }
}

pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        JsonRat(v.clone()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        Ok(JsonRat::deserialize(d)?.0)
    }
}

pub mod rat_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        rats(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Ok(Vec::<JsonRat>::deserialize(d)?
            .into_iter()
            .map(|x| x.0)
            .collect())
    }
}

/// `IntMat` as a list of rows. A matrix without rows cannot record its width
/// and decodes as `0 x 0`.
pub mod intmat {
    use super::*;

    pub fn serialize<S: Serializer>(m: &IntMat, s: S) -> Result<S::Ok, S::Error> {
        int_rows(m).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<IntMat, D::Error> {
        let rows: Vec<Vec<JsonInt>> = Vec::deserialize(d)?;
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|x| x.0).collect())
            .collect();
        IntMat::try_from_big_rows(rows, 0).map_err(de::Error::custom)
    }
}

pub mod ratmat {
    use super::*;

    pub fn serialize<S: Serializer>(m: &RatMat, s: S) -> Result<S::Ok, S::Error> {
        rat_rows(m).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<RatMat, D::Error> {
        let rows: Vec<Vec<JsonRat>> = Vec::deserialize(d)?;
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|x| x.0).collect())
            .collect();
        RatMat::try_from_rows(rows, 0).map_err(de::Error::custom)
    }
}
