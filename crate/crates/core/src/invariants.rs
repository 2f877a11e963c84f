//! Structural facts about a classification and its tables, checked after the
//! fact. Every function returns human-readable violations; an empty list means
//! the property holds. None of these are needed to decide an instance; they
//! exist so tests and the fuzz harness can audit the engine.

use crate::instance::Instance;
use crate::partition::{ExtendedInt, Partition};
use crate::sd::{Branch, DerivedTables, SdResult, Side};

/// One side of the problem seen uniformly: `own` is the list being classified,
/// `other` holds the thresholds, `extra` is the added partition.
struct Sides<'a> {
    own: &'a Partition,
    extra: &'a Partition,
    own_in: Box<dyn Fn(usize) -> bool + 'a>,
    /// `c^y` for the `d` side, `d^x` for the `c` side (with sentinels).
    threshold: Box<dyn Fn(usize) -> ExtendedInt + 'a>,
    own_rank: Box<dyn Fn(usize) -> Option<usize> + 'a>,
    gap: Box<dyn Fn(i64) -> usize + 'a>,
    count: usize,
    m: &'a [i64],
    t: &'a [i64],
    z: &'a [i64],
    w: &'a [i64],
    t_other: &'a [i64],
    z_other: &'a [i64],
    side: Side,
    name: &'static str,
}

fn d_side<'a>(inst: &'a Instance, sd: &'a SdResult, tb: &'a DerivedTables) -> Sides<'a> {
    Sides {
        own: inst.d(),
        extra: inst.a(),
        own_in: Box::new(move |i| sd.in_delta(i)),
        threshold: Box::new(move |y| sd.c_sup(y)),
        own_rank: Box::new(move |j| sd.delta_rank(j)),
        gap: Box::new(move |v| sd.gap_in_c(v)),
        count: sd.h_prime(),
        m: &tb.m,
        t: &tb.t,
        z: &tb.z,
        w: &tb.w,
        t_other: &tb.t_prime,
        z_other: &tb.z_prime,
        side: Side::D,
        name: "d",
    }
}

fn c_side<'a>(inst: &'a Instance, sd: &'a SdResult, tb: &'a DerivedTables) -> Sides<'a> {
    Sides {
        own: inst.c(),
        extra: inst.b(),
        own_in: Box::new(move |i| sd.in_s(i)),
        threshold: Box::new(move |x| sd.d_sup(x)),
        own_rank: Box::new(move |j| sd.s_rank(j)),
        gap: Box::new(move |v| sd.gap_in_d(v)),
        count: sd.h(),
        m: &tb.m_prime,
        t: &tb.t_prime,
        z: &tb.z_prime,
        w: &tb.w_prime,
        t_other: &tb.t,
        z_other: &tb.z,
        side: Side::C,
        name: "c",
    }
}

fn both<'a>(inst: &'a Instance, sd: &'a SdResult, tb: &'a DerivedTables) -> [Sides<'a>; 2] {
    [d_side(inst, sd, tb), c_side(inst, sd, tb)]
}

/// `t_0 = t'_0 = m + s - h - h' >= 0` and the boundary rows.
pub fn boundary_rows(inst: &Instance, tb: &DerivedTables) -> Vec<String> {
    let mut out = Vec::new();
    let t0 = (inst.m() + inst.s()) as i64 - tb.h as i64 - tb.h_prime as i64;
    if tb.t[0] != t0 || tb.t_prime[0] != t0 {
        out.push(format!(
            "t_0 = {}, t'_0 = {}, expected {t0}",
            tb.t[0], tb.t_prime[0]
        ));
    }
    if t0 < 0 {
        out.push(format!("t_0 = {t0} is negative"));
    }
    let checks = [
        ("m", &tb.m, tb.h_prime, 0, inst.s() as i64),
        ("z", &tb.z, tb.h_prime, 0, inst.m() as i64),
        ("t", &tb.t, tb.h_prime, t0, inst.s() as i64 + 1),
        ("m'", &tb.m_prime, tb.h, 0, inst.k() as i64),
        ("z'", &tb.z_prime, tb.h, 0, inst.n() as i64),
        ("t'", &tb.t_prime, tb.h, t0, inst.k() as i64 + 1),
    ];
    for (name, row, count, first, last) in checks {
        if row.len() != count + 2 {
            out.push(format!(
                "{name} has {} rows, expected {}",
                row.len(),
                count + 2
            ));
            continue;
        }
        if row[0] != first || row[count + 1] != last {
            out.push(format!(
                "{name} boundary rows ({}, {}), expected ({first}, {last})",
                row[0],
                row[count + 1]
            ));
        }
    }
    out
}

/// `t_{x+1} = t_x + 1 - w_x`, `t_{h'} = s`, and strict growth of `z + t`.
pub fn recurrences(inst: &Instance, sd: &SdResult, tb: &DerivedTables) -> Vec<String> {
    let mut out = Vec::new();
    for v in both(inst, sd, tb) {
        for x in 0..v.count {
            if v.t[x + 1] != v.t[x] + 1 - v.w[x] {
                out.push(format!(
                    "{}-side t[{}] = {} but t[{x}] + 1 - w[{x}] = {}",
                    v.name,
                    x + 1,
                    v.t[x + 1],
                    v.t[x] + 1 - v.w[x]
                ));
            }
        }
        if v.t[v.count] != v.extra.len() as i64 {
            out.push(format!(
                "{}-side last t row is {}, expected {}",
                v.name,
                v.t[v.count],
                v.extra.len()
            ));
        }
        for x in 0..=v.count {
            if v.z[x] + v.t[x] >= v.z[x + 1] + v.t[x + 1] {
                out.push(format!("{}-side z + t does not grow at row {x}", v.name));
            }
        }
    }
    out
}

/// The positions `z_i + t_i` and `z'_i + t'_i` tile `{t_0 + 1, ..., m + s}`.
pub fn position_cover(inst: &Instance, tb: &DerivedTables) -> Vec<String> {
    let mut pos: Vec<i64> = (1..=tb.h_prime).map(|i| tb.z[i] + tb.t[i]).collect();
    pos.extend((1..=tb.h).map(|i| tb.z_prime[i] + tb.t_prime[i]));
    pos.sort_unstable();
    let expected: Vec<i64> = (tb.t[0] + 1..=(inst.m() + inst.s()) as i64).collect();
    if pos == expected {
        Vec::new()
    } else {
        vec![format!("witness positions {pos:?}, expected {expected:?}")]
    }
}

/// For `j` in the set with rank `i` and gap `x` on the other side:
/// `z'_i + t'_i = j + t_x` (and dually).
pub fn cross_identities(inst: &Instance, sd: &SdResult, tb: &DerivedTables) -> Vec<String> {
    let mut out = Vec::new();
    for v in both(inst, sd, tb) {
        for j in 1..=v.own.len() {
            let Some(i) = (v.own_rank)(j) else { continue };
            let x = (v.gap)(v.own.at(j));
            let lhs = v.z_other[i] + v.t_other[i];
            let rhs = j as i64 + v.t[x];
            if lhs != rhs {
                out.push(format!(
                    "{}_{j}: position {lhs} differs from j + t_{x} = {rhs}",
                    v.name
                ));
            }
        }
    }
    out
}

/// `c^{h'} >= a_s` implies `t_y < s` for `y < h'` (and dually).
pub fn padding_bounds(inst: &Instance, sd: &SdResult, tb: &DerivedTables) -> Vec<String> {
    let mut out = Vec::new();
    for v in both(inst, sd, tb) {
        let bound = v.extra.len();
        if (v.threshold)(v.count) < v.extra.ext_value(bound as i64) {
            continue;
        }
        for y in 0..v.count {
            if v.t[y] >= bound as i64 {
                out.push(format!(
                    "{}-side t[{y}] = {} is not below {bound}",
                    v.name, v.t[y]
                ));
            }
        }
    }
    out
}

/// Entries of one list lying in the same gap of the other set's values: if the
/// later one is in the set, so is the earlier one.
pub fn gap_monotonicity(inst: &Instance, sd: &SdResult, tb: &DerivedTables) -> Vec<String> {
    let mut out = Vec::new();
    for v in both(inst, sd, tb) {
        for j in 1..v.own.len() {
            let same_gap = (v.gap)(v.own.at(j)) == (v.gap)(v.own.at(j + 1));
            if same_gap && (v.own_in)(j + 1) && !(v.own_in)(j) {
                out.push(format!(
                    "{0}_{1} is in the set but {0}_{j} is not",
                    v.name,
                    j + 1
                ));
            }
        }
    }
    out
}

/// Every entry below the smallest threshold belongs to the set.
pub fn below_last_threshold(inst: &Instance, sd: &SdResult, tb: &DerivedTables) -> Vec<String> {
    let mut out = Vec::new();
    for v in both(inst, sd, tb) {
        let last = (v.threshold)(v.count);
        for j in 1..=v.own.len() {
            if ExtendedInt::from(v.own.at(j)) < last && !(v.own_in)(j) {
                out.push(format!(
                    "{}_{j} lies below every threshold but is outside the set",
                    v.name
                ));
            }
        }
    }
    out
}

/// When `c^{h'} >= a_s`, every `d_j > c^{h'}` has `q_j <= s`, strictly if
/// `j` is outside the set (and dually).
pub fn q_bounds(inst: &Instance, sd: &SdResult, tb: &DerivedTables) -> Vec<String> {
    let mut out = Vec::new();
    for v in both(inst, sd, tb) {
        let bound = v.extra.len() as i64;
        let last = (v.threshold)(v.count);
        if last < v.extra.ext_value(bound) {
            continue;
        }
        for j in 1..=v.own.len() {
            if ExtendedInt::from(v.own.at(j)) <= last {
                continue;
            }
            let Some(entry) = sd.entry_for(v.side, j) else {
                out.push(format!("{}_{j} missing from the trace", v.name));
                continue;
            };
            let limit = if (v.own_in)(j) { bound } else { bound - 1 };
            if entry.q > limit {
                out.push(format!("{}_{j}: q = {} exceeds {limit}", v.name, entry.q));
            }
        }
    }
    out
}

/// The incremental counts taken during classification agree with the closed
/// forms computed from the final tables.
pub fn rewritten_forms(inst: &Instance, sd: &SdResult, tb: &DerivedTables) -> Vec<String> {
    let mut out = Vec::new();
    for v in both(inst, sd, tb) {
        let bound = v.extra.len() as i64;
        for j in 1..=v.own.len() {
            let Some(entry) = sd.entry_for(v.side, j) else {
                out.push(format!("{}_{j} missing from the trace", v.name));
                continue;
            };
            let l = (v.gap)(v.own.at(j));
            let later_outside = (j + 1..=v.own.len()).filter(|&i| !(v.own_in)(i)).count() as i64;
            let q = bound - (v.count - l) as i64 + later_outside + 1;
            if q != entry.q {
                out.push(format!(
                    "{}_{j}: q = {} but the tables give {q}",
                    v.name, entry.q
                ));
            }
            if let Some(win) = entry.snapshot.window {
                if win.above != v.m[l + 1] || win.required != v.t[l + 1] {
                    out.push(format!(
                        "{}_{j}: count test {} >= {} but the tables give {} >= {}",
                        v.name,
                        win.above,
                        win.required,
                        v.m[l + 1],
                        v.t[l + 1]
                    ));
                }
            }
            if let Some(ineq) = entry.snapshot.inequality {
                let lhs: i128 = (l + 1..=v.count)
                    .filter_map(|i| (v.threshold)(i).finite())
                    .sum();
                let later: i128 = (j + 1..=v.own.len())
                    .filter(|&i| !(v.own_in)(i))
                    .map(|i| v.own.at(i) as i128)
                    .sum();
                let rhs = v
                    .extra
                    .range_sum(q + 1, bound)
                    .and_then(|tail| ExtendedInt::from(later + v.own.at(j) as i128).try_add(tail));
                match rhs {
                    Ok(rhs) => {
                        let holds = ExtendedInt::from(lhs) >= rhs;
                        if ExtendedInt::from(lhs) != ineq.lhs
                            || rhs != ineq.rhs
                            || holds != ineq.holds
                        {
                            out.push(format!(
                                "{}_{j}: inequality {} >= {} but the tables give {lhs} >= {rhs}",
                                v.name, ineq.lhs, ineq.rhs
                            ));
                        }
                    }
                    Err(e) => out.push(format!("{}_{j}: {e}", v.name)),
                }
            }
        }
    }
    out
}

/// Membership follows from the recorded snapshot, each branch implies its
/// membership, and each snapshot counts only elements decided earlier.
pub fn trace_consistency(inst: &Instance, sd: &SdResult) -> Vec<String> {
    let mut out = Vec::new();
    if sd.trace.len() != inst.m() + inst.n() {
        out.push(format!(
            "trace has {} entries for {} elements",
            sd.trace.len(),
            inst.m() + inst.n()
        ));
    }
    for (pos, entry) in sd.trace.iter().enumerate() {
        let el = entry.element;
        let (own, other, bound) = match el.side {
            Side::D => (inst.d(), inst.c(), inst.s()),
            Side::C => (inst.c(), inst.d(), inst.k()),
        };
        let label = format!("{:?}_{}", el.side, el.index).to_lowercase();
        if entry.replay(bound) != Some(entry.in_set) {
            out.push(format!("{label}: snapshot does not reproduce the decision"));
        }
        let expected = matches!(entry.branch, Branch::QExceeds | Branch::PartBFailed);
        if entry.in_set != expected {
            out.push(format!(
                "{label}: branch {:?} with membership {}",
                entry.branch, entry.in_set
            ));
        }
        let earlier = &sd.trace[..pos];
        let decided = |side: Side, i: usize| {
            earlier
                .iter()
                .find(|t| t.element.side == side && t.element.index == i)
                .map(|t| t.in_set)
        };
        let other_side = match el.side {
            Side::D => Side::C,
            Side::C => Side::D,
        };
        let mut set_below = 0;
        for i in 1..=other.len() {
            if other.at(i) < el.value {
                match decided(other_side, i) {
                    Some(member) => set_below += member as usize,
                    None => out.push(format!("{label} decided before a smaller element")),
                }
            }
        }
        let mut later_outside = 0;
        for i in el.index + 1..=own.len() {
            match decided(el.side, i) {
                Some(member) => later_outside += !member as usize,
                None => out.push(format!("{label} decided before a later index")),
            }
        }
        if set_below != entry.snapshot.set_below || later_outside != entry.snapshot.later_outside {
            out.push(format!(
                "{label}: snapshot counts disagree with earlier decisions"
            ));
        }
    }
    out
}

/// Every table and classification invariant at once.
pub fn all(inst: &Instance, sd: &SdResult, tb: &DerivedTables) -> Vec<String> {
    let mut out = boundary_rows(inst, tb);
    out.extend(recurrences(inst, sd, tb));
    out.extend(position_cover(inst, tb));
    out.extend(cross_identities(inst, sd, tb));
    out.extend(padding_bounds(inst, sd, tb));
    out.extend(gap_monotonicity(inst, sd, tb));
    out.extend(below_last_threshold(inst, sd, tb));
    out.extend(q_bounds(inst, sd, tb));
    out.extend(rewritten_forms(inst, sd, tb));
    out.extend(trace_consistency(inst, sd));
    out
}

/// Upper bounds on any weak witness: `c^i >= g_{z_i + t_i}` and
/// `d^i >= g_{z'_i + t'_i}`.
pub fn witness_upper_bounds(g: &Partition, sd: &SdResult, tb: &DerivedTables) -> Vec<String> {
    let mut out = Vec::new();
    let rows = [
        ("c", sd.h_prime(), &tb.z, &tb.t, &sd.c_super),
        ("d", sd.h(), &tb.z_prime, &tb.t_prime, &sd.d_super),
    ];
    for (name, count, z, t, sup) in rows {
        for i in 1..=count {
            let pos = z[i] + t[i];
            let value = g.ext_value(pos);
            if value > ExtendedInt::from(sup[i - 1]) {
                out.push(format!(
                    "g_{pos} = {value} exceeds {name}^{i} = {}",
                    sup[i - 1]
                ));
            }
        }
    }
    out
}

/// `c^{h'} >= a_s` and `d^h >= b_k` for a weakly solvable instance, skipping an
/// empty set.
pub fn smallest_members(inst: &Instance, sd: &SdResult) -> Vec<String> {
    let mut out = Vec::new();
    if let (Some(&last), Some(tail)) = (sd.c_super.last(), inst.a().last()) {
        if last < tail {
            out.push(format!("c^h' = {last} is below a_s = {tail}"));
        }
    }
    if let (Some(&last), Some(tail)) = (sd.d_super.last(), inst.b().last()) {
        if last < tail {
            out.push(format!("d^h = {last} is below b_k = {tail}"));
        }
    }
    out
}
