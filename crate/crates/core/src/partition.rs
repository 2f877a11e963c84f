//! Partitions, extended integers and merged sequences.
//!
//! All positional access is 1-based. Reading a sequence of length `w` at an
//! index `i <= 0` yields `+inf`, at `i > w` yields `-inf`, and an empty
//! summation range (`lo > hi`) sums to zero.

use crate::error::{Error, Result};
use crate::json;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;

/// An integer extended with `-inf` and `+inf`.
///
/// Variant order gives the total order `-inf < finite < +inf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtendedInt {
    NegInf,
    Finite(i128),
    PosInf,
}

impl ExtendedInt {
    pub const ZERO: ExtendedInt = ExtendedInt::Finite(0);

    pub fn finite(self) -> Option<i128> {
        match self {
            ExtendedInt::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtendedInt::Finite(_))
    }

    /// Exact addition; `+inf + -inf` is an error.
    pub fn try_add(self, other: ExtendedInt) -> Result<ExtendedInt> {
        use ExtendedInt::*;
        match (self, other) {
            (Finite(x), Finite(y)) => Ok(Finite(x + y)),
            (PosInf, NegInf) | (NegInf, PosInf) => Err(Error::UndefinedSum),
            (PosInf, _) | (_, PosInf) => Ok(PosInf),
            (NegInf, _) | (_, NegInf) => Ok(NegInf),
        }
    }

    pub fn try_sub(self, other: ExtendedInt) -> Result<ExtendedInt> {
        self.try_add(-other)
    }
}

impl std::ops::Neg for ExtendedInt {
    type Output = ExtendedInt;

    fn neg(self) -> ExtendedInt {
        match self {
            ExtendedInt::NegInf => ExtendedInt::PosInf,
            ExtendedInt::PosInf => ExtendedInt::NegInf,
            ExtendedInt::Finite(v) => ExtendedInt::Finite(-v),
        }
    }
}

impl From<i64> for ExtendedInt {
    fn from(v: i64) -> Self {
        ExtendedInt::Finite(v as i128)
    }
}

impl From<i128> for ExtendedInt {
    fn from(v: i128) -> Self {
        ExtendedInt::Finite(v)
    }
}

impl fmt::Display for ExtendedInt {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self {
            ExtendedInt::NegInf => f.write_str("-inf"),
            ExtendedInt::PosInf => f.write_str("+inf"),
            ExtendedInt::Finite(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for ExtendedInt {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtendedInt::NegInf => ser.serialize_str("-inf"),
            ExtendedInt::PosInf => ser.serialize_str("+inf"),
            ExtendedInt::Finite(v) => json::serialize_i128(*v, ser),
        }
    }
}

impl<'de> Deserialize<'de> for ExtendedInt {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        Ok(match json::deserialize_token(de)? {
            json::Token::Int(v) => ExtendedInt::Finite(v),
            json::Token::PosInf => ExtendedInt::PosInf,
            json::Token::NegInf => ExtendedInt::NegInf,
        })
    }
}

/// Sum of `values[lo..=hi]` (1-based) under the sentinel convention.
pub fn sentinel_sum(values: &[i64], lo: i64, hi: i64) -> Result<ExtendedInt> {
    if lo > hi {
        return Ok(ExtendedInt::ZERO);
    }
    let len = values.len();
    let touches_low = lo <= 0;
    let touches_high = hi > len as i64;
    match (touches_low, touches_high) {
        (true, true) => Err(Error::MixedInfinities { lo, hi, len }),
        (true, false) => Ok(ExtendedInt::PosInf),
        (false, true) => Ok(ExtendedInt::NegInf),
        (false, false) => Ok(ExtendedInt::Finite(
            values[(lo - 1) as usize..hi as usize]
                .iter()
                .map(|&v| v as i128)
                .sum(),
        )),
    }
}

/// Value at 1-based index `i` under the sentinel convention.
pub fn sentinel_value(values: &[i64], i: i64) -> ExtendedInt {
    if i <= 0 {
        ExtendedInt::PosInf
    } else if i > values.len() as i64 {
        ExtendedInt::NegInf
    } else {
        values[(i - 1) as usize].into()
    }
}

/// A finite nonincreasing sequence of integers. Entries may be zero or negative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Partition(Vec<i64>);

impl Partition {
    pub fn new(values: Vec<i64>) -> Result<Self> {
        if let Some(pos) = values.windows(2).position(|w| w[0] < w[1]) {
            return Err(Error::NotNonincreasing { index: pos + 1 });
        }
        Ok(Partition(values))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Sorts an arbitrary multiset into nonincreasing order.
    pub fn from_multiset(mut values: Vec<i64>) -> Self {
        values.sort_unstable_by(|a, b| b.cmp(a));
        Partition(values)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }

    /// 1-based access for `1 <= i <= len`.
    pub fn at(&self, i: usize) -> i64 {
        self.0[i - 1]
    }

    pub fn ext_value(&self, i: i64) -> ExtendedInt {
        sentinel_value(&self.0, i)
    }

    pub fn range_sum(&self, lo: i64, hi: i64) -> Result<ExtendedInt> {
        sentinel_sum(&self.0, lo, hi)
    }

    pub fn total(&self) -> i128 {
        self.0.iter().map(|&v| v as i128).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.iter().copied()
    }

    pub fn first(&self) -> Option<i64> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<i64> {
        self.0.last().copied()
    }
}

impl TryFrom<Vec<i64>> for Partition {
    type Error = Error;

    fn try_from(v: Vec<i64>) -> Result<Self> {
        Partition::new(v)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        json::int_vec::serialize(&self.0, ser)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let v = json::int_vec::deserialize(de)?;
        Partition::new(v).map_err(serde::de::Error::custom)
    }
}

/// Which input list a merged entry came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    Base,
    Added,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MergedEntry {
    #[serde(with = "json::int")]
    pub value: i64,
    pub origin: Origin,
    /// 1-based position inside the originating list.
    pub index: usize,
}

/// The order-preserving union of two partitions.
///
/// Ties across the two lists put every added-list entry before the base-list
/// entries of the same value; ties inside one list keep the original order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergedSequence {
    entries: Vec<MergedEntry>,
    values: Vec<i64>,
}

impl MergedSequence {
    pub fn entries(&self) -> &[MergedEntry] {
        &self.entries
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn range_sum(&self, lo: i64, hi: i64) -> Result<ExtendedInt> {
        sentinel_sum(&self.values, lo, hi)
    }

    /// 1-based position of a specific occurrence.
    pub fn position_of(&self, origin: Origin, index: usize) -> Option<usize> {
        self.entries
            .iter()
            .position(|e| e.origin == origin && e.index == index)
            .map(|p| p + 1)
    }

    /// Entries of one origin, in sequence order.
    pub fn restrict(&self, origin: Origin) -> impl Iterator<Item = &MergedEntry> {
        self.entries.iter().filter(move |e| e.origin == origin)
    }
}

pub fn merge_union(base: &Partition, added: &Partition) -> MergedSequence {
    let tag = |p: &Partition, origin: Origin| {
        p.as_slice()
            .iter()
            .enumerate()
            .map(move |(i, &value)| MergedEntry {
                value,
                origin,
                index: i + 1,
            })
            .collect::<Vec<_>>()
    };
    let mut entries = tag(base, Origin::Base);
    entries.extend(tag(added, Origin::Added));
    entries.sort_by(|x, y| {
        y.value
            .cmp(&x.value)
            .then_with(|| match (x.origin, y.origin) {
                (Origin::Added, Origin::Base) => Ordering::Less,
                (Origin::Base, Origin::Added) => Ordering::Greater,
                _ => x.index.cmp(&y.index),
            })
    });
    let values = entries.iter().map(|e| e.value).collect();
    MergedSequence { entries, values }
}
