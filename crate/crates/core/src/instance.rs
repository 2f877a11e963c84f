use crate::error::{Error, Result};
use crate::partition::Partition;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// The quadruple `(a, b, c, d)` asking for a `g` majorized by both `(d, a)` and `(c, b)`.
///
/// Lengths are `s = |a|`, `k = |b|`, `n = |c|`, `m = |d|` with `m + s = n + k`,
/// `m, n >= 1`, and no value shared between `c` and `d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Instance {
    a: Partition,
    b: Partition,
    c: Partition,
    d: Partition,
}

impl Instance {
    pub fn new(a: Partition, b: Partition, c: Partition, d: Partition) -> Result<Self> {
        if d.is_empty() {
            return Err(Error::PreconditionViolated("d must be nonempty".into()));
        }
        if c.is_empty() {
            return Err(Error::PreconditionViolated("c must be nonempty".into()));
        }
        if d.len() + a.len() != c.len() + b.len() {
            return Err(Error::PreconditionViolated(format!(
                "m + s = {} + {} differs from n + k = {} + {}",
                d.len(),
                a.len(),
                c.len(),
                b.len()
            )));
        }
        let d_values: BTreeSet<i64> = d.iter().collect();
        if let Some(shared) = c.iter().find(|v| d_values.contains(v)) {
            return Err(Error::PreconditionViolated(format!(
                "c and d share value {shared}"
            )));
        }
        // The padding value max + 1 must stay representable.
        let top = [&a, &b, &c, &d].iter().filter_map(|p| p.first()).max();
        if top == Some(i64::MAX) {
            return Err(Error::PreconditionViolated(
                "entries must be below i64::MAX".into(),
            ));
        }
        Ok(Instance { a, b, c, d })
    }

    /// Builds an instance from raw vectors, validating each partition first.
    pub fn from_vecs(a: Vec<i64>, b: Vec<i64>, c: Vec<i64>, d: Vec<i64>) -> Result<Self> {
        let part = |name: &str, v: Vec<i64>| {
            Partition::new(v).map_err(|e| match e {
                Error::NotNonincreasing { index } => Error::PreconditionViolated(format!(
                    "{name} is not nonincreasing at index {index}"
                )),
                other => other,
            })
        };
        Instance::new(part("a", a)?, part("b", b)?, part("c", c)?, part("d", d)?)
    }

    pub fn a(&self) -> &Partition {
        &self.a
    }

    pub fn b(&self) -> &Partition {
        &self.b
    }

    pub fn c(&self) -> &Partition {
        &self.c
    }

    pub fn d(&self) -> &Partition {
        &self.d
    }

    pub fn s(&self) -> usize {
        self.a.len()
    }

    pub fn k(&self) -> usize {
        self.b.len()
    }

    pub fn n(&self) -> usize {
        self.c.len()
    }

    pub fn m(&self) -> usize {
        self.d.len()
    }

    /// Length of any candidate `g`.
    pub fn witness_len(&self) -> usize {
        self.m() + self.s()
    }

    /// `max(a_1, b_1, c_1, d_1) + 1`, the padding value of the constructed witness.
    pub fn pad_value(&self) -> i64 {
        [&self.a, &self.b, &self.c, &self.d]
            .iter()
            .filter_map(|p| p.first())
            .max()
            .expect("c and d are nonempty")
            + 1
    }

    pub fn min_value(&self) -> i64 {
        [&self.a, &self.b, &self.c, &self.d]
            .iter()
            .filter_map(|p| p.last())
            .min()
            .expect("c and d are nonempty")
    }

    /// The same question with the roles of `(d, a)` and `(c, b)` exchanged.
    pub fn swapped(&self) -> Instance {
        Instance {
            a: self.b.clone(),
            b: self.a.clone(),
            c: self.d.clone(),
            d: self.c.clone(),
        }
    }
}

impl<'de> Deserialize<'de> for Instance {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            #[serde(with = "crate::json::int_vec")]
            a: Vec<i64>,
            #[serde(with = "crate::json::int_vec")]
            b: Vec<i64>,
            #[serde(with = "crate::json::int_vec")]
            c: Vec<i64>,
            #[serde(with = "crate::json::int_vec")]
            d: Vec<i64>,
        }
        let r = Raw::deserialize(de)?;
        Instance::from_vecs(r.a, r.b, r.c, r.d).map_err(serde::de::Error::custom)
    }
}
