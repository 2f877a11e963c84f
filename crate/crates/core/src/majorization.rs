//! Exact (`g ≺′ (d,a)`) and weak (`g ≺″ (d,a)`) generalized majorization checks.
//!
//! With `s = |a|` and `|g| = |d| + s`, both relations share the interlacing
//! condition `d_i >= g_{i+s}` (`gm21`). The exact relation adds prefix bounds at
//! the pivot indices `h_j` (`gm11`) and equality of totals (`gm41`). The weak
//! relation uses tail bounds at the same pivots (`gm31`) and only asks the
//! total of `g` to be at least the combined total of `d` and `a`.

use crate::error::{Error, Result};
use crate::partition::{ExtendedInt, Partition};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Condition {
    #[serde(rename = "gm21")]
    Interlacing,
    #[serde(rename = "gm41")]
    TotalEquality,
    #[serde(rename = "gm11")]
    PrefixBound,
    #[serde(rename = "gm31")]
    TailBound,
    #[serde(rename = "sum")]
    TotalAtLeast,
}

impl Condition {
    pub fn name(self) -> &'static str {
        match self {
            Condition::Interlacing => "gm21",
            Condition::TotalEquality => "gm41",
            Condition::PrefixBound => "gm11",
            Condition::TailBound => "gm31",
            Condition::TotalAtLeast => "sum",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub condition: Condition,
    /// The `i` of `gm21` or the `j` of `gm11`/`gm31`; 0 for the total-sum conditions.
    pub index: usize,
    pub lhs: ExtendedInt,
    pub rhs: ExtendedInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub holds: bool,
    pub first_violation: Option<Violation>,
}

impl Verdict {
    fn from_violation(first_violation: Option<Violation>) -> Self {
        Verdict {
            holds: first_violation.is_none(),
            first_violation,
        }
    }
}

/// `h_j = min { i : d_{i-j+1} < g_i }` for `j = 1..=s`.
///
/// Always defined when `|g| = |d| + s`, since `d_{|d|+1} = -inf`.
pub fn pivot_indices(d: &Partition, g: &Partition, s: usize) -> Vec<usize> {
    (1..=s)
        .map(|j| {
            (1..=g.len())
                .find(|&i| d.ext_value(i as i64 - j as i64 + 1) < g.at(i).into())
                .unwrap_or(g.len() + 1)
        })
        .collect()
}

fn check_lengths(g: &Partition, d: &Partition, a: &Partition) -> Result<()> {
    let expected = d.len() + a.len();
    if g.len() != expected {
        return Err(Error::LengthMismatch {
            expected,
            found: g.len(),
        });
    }
    Ok(())
}

fn interlacing_violation(g: &Partition, d: &Partition, s: usize) -> Option<Violation> {
    (1..=d.len()).find_map(|i| {
        let (lhs, rhs) = (d.at(i), g.at(i + s));
        (lhs < rhs).then(|| Violation {
            condition: Condition::Interlacing,
            index: i,
            lhs: lhs.into(),
            rhs: rhs.into(),
        })
    })
}

fn finite(x: Result<ExtendedInt>) -> ExtendedInt {
    // Every range used by the checkers stays inside the sequences.
    x.expect("checker summation range within bounds")
}

pub fn check_exact(g: &Partition, d: &Partition, a: &Partition) -> Result<Verdict> {
    check_lengths(g, d, a)?;
    let s = a.len();
    if let Some(v) = interlacing_violation(g, d, s) {
        return Ok(Verdict::from_violation(Some(v)));
    }
    let total_g = ExtendedInt::from(g.total());
    let total_da = ExtendedInt::from(d.total() + a.total());
    if total_g != total_da {
        return Ok(Verdict::from_violation(Some(Violation {
            condition: Condition::TotalEquality,
            index: 0,
            lhs: total_g,
            rhs: total_da,
        })));
    }
    let hs = pivot_indices(d, g, s);
    for (j, &h) in (1..=s).zip(&hs) {
        let (h, jj) = (h as i64, j as i64);
        let lhs = finite(g.range_sum(1, h)).try_sub(finite(d.range_sum(1, h - jj)))?;
        let rhs = finite(a.range_sum(1, jj));
        if lhs > rhs {
            return Ok(Verdict::from_violation(Some(Violation {
                condition: Condition::PrefixBound,
                index: j,
                lhs,
                rhs,
            })));
        }
    }
    Ok(Verdict::from_violation(None))
}

pub fn check_weak(g: &Partition, d: &Partition, a: &Partition) -> Result<Verdict> {
    check_lengths(g, d, a)?;
    let s = a.len();
    if let Some(v) = interlacing_violation(g, d, s) {
        return Ok(Verdict::from_violation(Some(v)));
    }
    let total_g = ExtendedInt::from(g.total());
    let total_da = ExtendedInt::from(d.total() + a.total());
    if total_g < total_da {
        return Ok(Verdict::from_violation(Some(Violation {
            condition: Condition::TotalAtLeast,
            index: 0,
            lhs: total_g,
            rhs: total_da,
        })));
    }
    let hs = pivot_indices(d, g, s);
    for (j, &h) in (1..=s).zip(&hs) {
        let (h, jj) = (h as i64, j as i64);
        let lhs = finite(g.range_sum(h + 1, g.len() as i64));
        let rhs = finite(d.range_sum(h - jj + 1, d.len() as i64))
            .try_add(finite(a.range_sum(jj + 1, s as i64)))?;
        if lhs < rhs {
            return Ok(Verdict::from_violation(Some(Violation {
                condition: Condition::TailBound,
                index: j,
                lhs,
                rhs,
            })));
        }
    }
    Ok(Verdict::from_violation(None))
}

/// Tail inequality `sum_{i>=u} g_i >= sum_{i>=u-j} d_i + sum_{i>j} a_i` for an
/// index `u` in the band `(h_j, h_{j+1}]`, with `h_0 = 0` and `h_{s+1} = |g| + 1`.
pub fn tail_inequality(
    g: &Partition,
    d: &Partition,
    a: &Partition,
    u: usize,
    j: usize,
) -> Result<bool> {
    check_lengths(g, d, a)?;
    let s = a.len();
    if j > s {
        return Err(Error::IndexOutOfBand {
            u,
            j,
            lower: 0,
            upper: 0,
        });
    }
    let hs = pivot_indices(d, g, s);
    let band = |idx: usize| match idx {
        0 => 0,
        x if x == s + 1 => g.len() + 1,
        x => hs[x - 1],
    };
    let (lower, upper) = (band(j), band(j + 1));
    if !(lower < u && u <= upper) {
        return Err(Error::IndexOutOfBand { u, j, lower, upper });
    }
    let (u, j) = (u as i64, j as i64);
    let lhs = g.range_sum(u, g.len() as i64)?;
    let rhs = d
        .range_sum(u - j, d.len() as i64)?
        .try_add(a.range_sum(j + 1, s as i64)?)?;
    Ok(lhs >= rhs)
}
