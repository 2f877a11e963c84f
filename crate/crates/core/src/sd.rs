//! Inductive classification of the entries of `c` and `d` into the sets `S`
//! (indices of `c`) and `Δ` (indices of `d`), and the counting tables derived
//! from them.
//!
//! The elements of `u = c ∪ d` are visited in ascending value order, ties
//! inside one list broken largest index first. Each element is decided from
//! the decisions already taken for strictly earlier elements only.

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::json;
use crate::partition::{merge_union, ExtendedInt, MergedSequence, Origin, Partition};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    C,
    D,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Element {
    pub side: Side,
    pub index: usize,
    #[serde(with = "json::int")]
    pub value: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// `q_j > s` (resp. `q'_j > k`).
    QExceeds,
    PartAAccepted,
    PartBPassed,
    PartBFailed,
}

/// The count test and occurrence test of part (a).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    /// Index `l` (in the other list) of the largest set member below the element.
    pub pivot: usize,
    /// `#{i : a_i > c_l}` (resp. `#{i : b_i > d_l}`).
    pub above: i64,
    /// Right-hand side of the count test.
    pub required: i64,
    /// `above - required + 1`; the window holds that many smallest entries above the pivot.
    pub size: i64,
    /// Position of the element among the merged entries above the pivot, 1 = smallest.
    pub rank: i64,
    pub contains: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub lhs: ExtendedInt,
    pub rhs: ExtendedInt,
    pub holds: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Snapshot {
    /// Members of the other set whose value is below the element.
    pub set_below: usize,
    /// Later indices of the element's own list already placed outside its set.
    pub later_outside: usize,
    pub window: Option<Window>,
    pub inequality: Option<InequalityCheck>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecisionTraceEntry {
    pub element: Element,
    pub q: i64,
    pub branch: Branch,
    /// `j ∈ Δ` for elements of `d`, `j ∈ S` for elements of `c`.
    pub in_set: bool,
    pub snapshot: Snapshot,
}

impl DecisionTraceEntry {
    /// Re-derives the decision from the snapshot alone. `bound` is `s` for
    /// elements of `d` and `k` for elements of `c`.
    pub fn replay(&self, bound: usize) -> Option<bool> {
        let q =
            bound as i64 - self.snapshot.set_below as i64 + self.snapshot.later_outside as i64 + 1;
        if q != self.q {
            return None;
        }
        if q > bound as i64 {
            return Some(true);
        }
        let window = self.snapshot.window?;
        if window.size >= 1 && window.rank <= window.size {
            return Some(false);
        }
        Some(!self.snapshot.inequality?.holds)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SdResult {
    /// Indices of `c` in `S`, ascending, 1-based.
    #[serde(rename = "S")]
    pub s_set: Vec<usize>,
    /// Indices of `d` in `Δ`, ascending, 1-based.
    #[serde(rename = "Delta")]
    pub delta: Vec<usize>,
    pub trace: Vec<DecisionTraceEntry>,
    /// `c^1 >= ... >= c^{h'}`.
    #[serde(with = "json::int_vec")]
    pub c_super: Vec<i64>,
    /// `d^1 >= ... >= d^h`.
    #[serde(with = "json::int_vec")]
    pub d_super: Vec<i64>,
    #[serde(skip)]
    in_s: Vec<bool>,
    #[serde(skip)]
    in_delta: Vec<bool>,
}

impl SdResult {
    pub fn h(&self) -> usize {
        self.delta.len()
    }

    pub fn h_prime(&self) -> usize {
        self.s_set.len()
    }

    pub fn in_s(&self, i: usize) -> bool {
        self.in_s[i - 1]
    }

    pub fn in_delta(&self, i: usize) -> bool {
        self.in_delta[i - 1]
    }

    /// `c^y` with `c^0 = +inf` and `c^{h'+1} = -inf`.
    pub fn c_sup(&self, y: usize) -> ExtendedInt {
        super_value(&self.c_super, y)
    }

    /// `d^x` with `d^0 = +inf` and `d^{h+1} = -inf`.
    pub fn d_sup(&self, x: usize) -> ExtendedInt {
        super_value(&self.d_super, x)
    }

    /// The `y` with `c^y > value > c^{y+1}`; `value` must not occur in `S`.
    pub fn gap_in_c(&self, value: i64) -> usize {
        self.c_super.iter().filter(|&&c| c > value).count()
    }

    /// The `x` with `d^x > value > d^{x+1}`; `value` must not occur in `Δ`.
    pub fn gap_in_d(&self, value: i64) -> usize {
        self.d_super.iter().filter(|&&d| d > value).count()
    }

    /// Position of `d_j` among `d^1..d^h`, for `j ∈ Δ`.
    pub fn delta_rank(&self, j: usize) -> Option<usize> {
        self.delta.iter().position(|&x| x == j).map(|p| p + 1)
    }

    /// Position of `c_j` among `c^1..c^{h'}`, for `j ∈ S`.
    pub fn s_rank(&self, j: usize) -> Option<usize> {
        self.s_set.iter().position(|&x| x == j).map(|p| p + 1)
    }

    pub fn entry_for(&self, side: Side, index: usize) -> Option<&DecisionTraceEntry> {
        self.trace
            .iter()
            .find(|t| t.element.side == side && t.element.index == index)
    }
}

fn super_value(values: &[i64], y: usize) -> ExtendedInt {
    if y == 0 {
        ExtendedInt::PosInf
    } else if y > values.len() {
        ExtendedInt::NegInf
    } else {
        values[y - 1].into()
    }
}

/// The list being decided and its counterparts.
struct SideView<'a> {
    own: &'a Partition,
    other: &'a Partition,
    extra: &'a Partition,
    merged: MergedSequence,
}

fn decide(
    view: &SideView,
    side: Side,
    j: usize,
    own_state: &[Option<bool>],
    other_state: &[Option<bool>],
) -> Result<DecisionTraceEntry> {
    let own_j = view.own.at(j);
    let bound = view.extra.len() as i64;
    let element = Element {
        side,
        index: j,
        value: own_j,
    };
    let other_in = |i: usize| other_state[i - 1] == Some(true);
    let own_out = |i: usize| own_state[i - 1] == Some(false);

    // Membership of smaller elements must already be settled.
    for i in 1..=view.other.len() {
        if view.other.at(i) < own_j && other_state[i - 1].is_none() {
            return Err(Error::InternalInvariantViolated(format!(
                "{side:?}_{j} visited before smaller element {i} of the other list"
            )));
        }
    }
    for i in j + 1..=view.own.len() {
        if own_state[i - 1].is_none() {
            return Err(Error::InternalInvariantViolated(format!(
                "{side:?}_{j} visited before later index {i}"
            )));
        }
    }

    let set_below = (1..=view.other.len())
        .filter(|&i| other_in(i) && view.other.at(i) < own_j)
        .count();
    let later_outside = (j + 1..=view.own.len()).filter(|&i| own_out(i)).count();
    let q = bound - set_below as i64 + later_outside as i64 + 1;
    let mut snapshot = Snapshot {
        set_below,
        later_outside,
        window: None,
        inequality: None,
    };

    if q > bound {
        return Ok(DecisionTraceEntry {
            element,
            q,
            branch: Branch::QExceeds,
            in_set: true,
            snapshot,
        });
    }

    let pivot = (1..=view.other.len())
        .find(|&i| other_in(i) && own_j > view.other.at(i))
        .ok_or_else(|| {
            Error::InternalInvariantViolated(format!(
                "{side:?}_{j}: q = {q} <= {bound} but no set member lies below it"
            ))
        })?;
    let pivot_value = view.other.at(pivot);
    let above = view.extra.iter().filter(|&x| x > pivot_value).count() as i64;
    let later_members = (pivot + 1..=view.other.len())
        .filter(|&i| other_in(i))
        .count() as i64;
    let outside_below = (1..=view.own.len())
        .filter(|&i| own_out(i) && view.own.at(i) < pivot_value)
        .count() as i64;
    let required = bound - later_members + outside_below;
    let size = above - required + 1;
    let above_pivot = view
        .merged
        .values()
        .iter()
        .take_while(|&&v| v > pivot_value)
        .count() as i64;
    let position = view
        .merged
        .position_of(Origin::Base, j)
        .expect("every element occurs in its merged sequence") as i64;
    let rank = above_pivot - position + 1;
    let contains = size >= 1 && rank <= size;
    snapshot.window = Some(Window {
        pivot,
        above,
        required,
        size,
        rank,
        contains,
    });
    if contains {
        return Ok(DecisionTraceEntry {
            element,
            q,
            branch: Branch::PartAAccepted,
            in_set: false,
            snapshot,
        });
    }

    let lhs: i128 = (1..=view.other.len())
        .filter(|&i| other_in(i) && view.other.at(i) < own_j)
        .map(|i| view.other.at(i) as i128)
        .sum();
    let later_outside_sum: i128 = (j + 1..=view.own.len())
        .filter(|&i| own_out(i))
        .map(|i| view.own.at(i) as i128)
        .sum();
    let rhs = ExtendedInt::from(later_outside_sum + own_j as i128)
        .try_add(view.extra.range_sum(q + 1, bound)?)?;
    let lhs = ExtendedInt::from(lhs);
    let holds = lhs >= rhs;
    snapshot.inequality = Some(InequalityCheck { lhs, rhs, holds });
    Ok(DecisionTraceEntry {
        element,
        q,
        branch: if holds {
            Branch::PartBPassed
        } else {
            Branch::PartBFailed
        },
        in_set: !holds,
        snapshot,
    })
}

/// Processing schedule: value ascending, then index descending inside one list.
pub fn schedule(inst: &Instance) -> Vec<Element> {
    let tag = |p: &Partition, side: Side| {
        p.iter()
            .enumerate()
            .map(move |(i, value)| Element {
                side,
                index: i + 1,
                value,
            })
            .collect::<Vec<_>>()
    };
    let mut order = tag(inst.c(), Side::C);
    order.extend(tag(inst.d(), Side::D));
    order.sort_by(|x, y| x.value.cmp(&y.value).then(y.index.cmp(&x.index)));
    order
}

pub fn classify(inst: &Instance) -> Result<SdResult> {
    let d_view = SideView {
        own: inst.d(),
        other: inst.c(),
        extra: inst.a(),
        merged: merge_union(inst.d(), inst.a()),
    };
    let c_view = SideView {
        own: inst.c(),
        other: inst.d(),
        extra: inst.b(),
        merged: merge_union(inst.c(), inst.b()),
    };
    let mut in_delta: Vec<Option<bool>> = vec![None; inst.m()];
    let mut in_s: Vec<Option<bool>> = vec![None; inst.n()];
    let mut trace = Vec::with_capacity(inst.m() + inst.n());

    for el in schedule(inst) {
        let entry = match el.side {
            Side::D => {
                let e = decide(&d_view, Side::D, el.index, &in_delta, &in_s)?;
                in_delta[el.index - 1] = Some(e.in_set);
                e
            }
            Side::C => {
                let e = decide(&c_view, Side::C, el.index, &in_s, &in_delta)?;
                in_s[el.index - 1] = Some(e.in_set);
                e
            }
        };
        trace.push(entry);
    }

    let in_s: Vec<bool> = in_s.into_iter().map(|x| x == Some(true)).collect();
    let in_delta: Vec<bool> = in_delta.into_iter().map(|x| x == Some(true)).collect();
    let members = |flags: &[bool]| {
        flags
            .iter()
            .enumerate()
            .filter(|(_, &f)| f)
            .map(|(i, _)| i + 1)
            .collect::<Vec<_>>()
    };
    let s_set = members(&in_s);
    let delta = members(&in_delta);
    Ok(SdResult {
        c_super: s_set.iter().map(|&i| inst.c().at(i)).collect(),
        d_super: delta.iter().map(|&i| inst.d().at(i)).collect(),
        s_set,
        delta,
        trace,
        in_s,
        in_delta,
    })
}

/// Counting tables with boundary rows.
///
/// Unprimed rows are indexed `0..=h'+1` (`w` by `0..=h'`); primed rows are
/// indexed `0..=h+1` (`w_prime` by `0..=h`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedTables {
    pub h: usize,
    pub h_prime: usize,
    pub m: Vec<i64>,
    pub t: Vec<i64>,
    pub z: Vec<i64>,
    pub w: Vec<i64>,
    pub m_prime: Vec<i64>,
    pub t_prime: Vec<i64>,
    pub z_prime: Vec<i64>,
    pub w_prime: Vec<i64>,
}

impl DerivedTables {
    /// Number of padding entries of the constructed witness.
    pub fn t0(&self) -> i64 {
        self.t[0]
    }
}

struct TableRows {
    m: Vec<i64>,
    t: Vec<i64>,
    z: Vec<i64>,
    w: Vec<i64>,
}

/// Rows for one side: thresholds are the chosen members of `pivots`, the
/// counted lists are `extra` and `own` with membership `own_in`.
fn table_rows(
    thresholds: impl Fn(usize) -> ExtendedInt,
    count: usize,
    extra: &Partition,
    own: &Partition,
    own_in: impl Fn(usize) -> bool,
) -> TableRows {
    let bound = extra.len() as i64;
    let greater = |p: &Partition, x: ExtendedInt| {
        p.iter().filter(|&v| ExtendedInt::from(v) > x).count() as i64
    };
    let outside_between = |hi: ExtendedInt, lo: ExtendedInt| {
        (1..=own.len())
            .filter(|&i| {
                let v = ExtendedInt::from(own.at(i));
                !own_in(i) && hi > v && v > lo
            })
            .count() as i64
    };
    let mut rows = TableRows {
        m: Vec::with_capacity(count + 2),
        t: Vec::with_capacity(count + 2),
        z: Vec::with_capacity(count + 2),
        w: Vec::with_capacity(count + 1),
    };
    for y in 0..=count + 1 {
        let th = thresholds(y);
        rows.m.push(greater(extra, th));
        rows.t
            .push(bound - (count as i64 - y as i64) + outside_between(th, ExtendedInt::NegInf));
        rows.z.push(greater(own, th));
        if y <= count {
            rows.w.push(outside_between(th, thresholds(y + 1)));
        }
    }
    rows
}

pub fn derived_tables(inst: &Instance, sd: &SdResult) -> DerivedTables {
    let unprimed = table_rows(
        |y| sd.c_sup(y),
        sd.h_prime(),
        inst.a(),
        inst.d(),
        |i| sd.in_delta(i),
    );
    let primed = table_rows(|x| sd.d_sup(x), sd.h(), inst.b(), inst.c(), |i| sd.in_s(i));
    DerivedTables {
        h: sd.h(),
        h_prime: sd.h_prime(),
        m: unprimed.m,
        t: unprimed.t,
        z: unprimed.z,
        w: unprimed.w,
        m_prime: primed.m,
        t_prime: primed.t,
        z_prime: primed.z,
        w_prime: primed.w,
    }
}
