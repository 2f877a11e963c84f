//! Serde helpers for integers in JSON documents.
//!
//! Integers whose magnitude exceeds 2^53 are written as decimal strings so
//! that consumers parsing JSON numbers as doubles never lose precision.
//! Readers accept either form.

use serde::de::{self, Visitor};
use serde::{Deserializer, Serialize, Serializer};
use std::fmt;

pub(crate) const SAFE_MAGNITUDE: i128 = 1 << 53;

pub(crate) fn serialize_i128<S: Serializer>(v: i128, ser: S) -> Result<S::Ok, S::Error> {
    if v.abs() <= SAFE_MAGNITUDE {
        ser.serialize_i64(v as i64)
    } else {
        ser.serialize_str(&v.to_string())
    }
}

/// Token read from JSON: a finite integer or one of the infinity literals.
pub(crate) enum Token {
    Int(i128),
    PosInf,
    NegInf,
}

struct TokenVisitor;

impl<'de> Visitor<'de> for TokenVisitor {
    type Value = Token;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer, a decimal string, \"+inf\" or \"-inf\"")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Token, E> {
        Ok(Token::Int(v as i128))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Token, E> {
        Ok(Token::Int(v as i128))
    }

    fn visit_i128<E: de::Error>(self, v: i128) -> Result<Token, E> {
        Ok(Token::Int(v))
    }

    fn visit_u128<E: de::Error>(self, v: u128) -> Result<Token, E> {
        i128::try_from(v)
            .map(Token::Int)
            .map_err(|_| E::custom("integer out of range"))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Token, E> {
        match v {
            "+inf" => Ok(Token::PosInf),
            "-inf" => Ok(Token::NegInf),
            _ => v
                .parse::<i128>()
                .map(Token::Int)
                .map_err(|_| E::custom(format!("invalid integer string {v:?}"))),
        }
    }
}

pub(crate) fn deserialize_token<'de, D: Deserializer<'de>>(de: D) -> Result<Token, D::Error> {
    de.deserialize_any(TokenVisitor)
}

fn finite_i64<E: de::Error>(t: Token) -> Result<i64, E> {
    match t {
        Token::Int(v) => i64::try_from(v).map_err(|_| E::custom("integer out of i64 range")),
        _ => Err(E::custom(
            "infinite value where a finite integer is required",
        )),
    }
}

/// `#[serde(with = "json::int")]` for `i64` fields.
pub mod int {
    use super::*;

    pub fn serialize<S: Serializer>(v: &i64, ser: S) -> Result<S::Ok, S::Error> {
        serialize_i128(*v as i128, ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<i64, D::Error> {
        finite_i64(deserialize_token(de)?)
    }
}

/// `#[serde(with = "json::int128")]` for `i128` fields.
pub mod int128 {
    use super::*;

    pub fn serialize<S: Serializer>(v: &i128, ser: S) -> Result<S::Ok, S::Error> {
        serialize_i128(*v, ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<i128, D::Error> {
        match deserialize_token(de)? {
            Token::Int(v) => Ok(v),
            _ => Err(de::Error::custom(
                "infinite value where a finite integer is required",
            )),
        }
    }
}

/// Wrapper so sequences of `i64` use the same encoding as scalars.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JsonInt(pub i64);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        int::serialize(&self.0, ser)
    }
}

impl<'de> serde::Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        int::deserialize(de).map(JsonInt)
    }
}

/// `#[serde(with = "json::int_vec")]` for `Vec<i64>` fields.
pub mod int_vec {
    use super::*;
    use serde::Deserialize;

    pub fn serialize<S: Serializer>(v: &[i64], ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_seq(v.iter().map(|&x| JsonInt(x)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<i64>, D::Error> {
        let v: Vec<JsonInt> = Vec::deserialize(de)?;
        Ok(v.into_iter().map(|x| x.0).collect())
    }
}
