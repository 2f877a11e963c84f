//! Brute-force existence search over bounded nonincreasing sequences, used to
//! cross-check the engine.

use crate::engine::{decide, Mode};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::majorization::{check_exact, check_weak};
use crate::partition::Partition;
use serde::{Deserialize, Serialize};
use std::ops::ControlFlow;

pub const DEFAULT_MAX_CANDIDATES: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    pub lo: i64,
    pub hi: i64,
    pub max_candidates: u64,
}

impl SearchBounds {
    pub fn new(lo: i64, hi: i64, max_candidates: u64) -> Result<Self> {
        if lo > hi {
            return Err(Error::PreconditionViolated(format!(
                "search bounds lo = {lo} exceed hi = {hi}"
            )));
        }
        Ok(SearchBounds {
            lo,
            hi,
            max_candidates,
        })
    }

    /// `[min input value - 1, max input value + 1]`.
    pub fn default_for(inst: &Instance) -> Self {
        SearchBounds {
            lo: inst.min_value() - 1,
            hi: inst.pad_value(),
            max_candidates: DEFAULT_MAX_CANDIDATES,
        }
    }

    pub fn widened(self, by: i64) -> Self {
        SearchBounds {
            lo: self.lo - by,
            hi: self.hi + by,
            ..self
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleOutcome {
    /// Lexicographically greatest witness inside the bounds.
    pub found: Option<Partition>,
    pub candidates_checked: u64,
    /// False when the candidate cap stopped the search; an absent witness is then inconclusive.
    pub exhausted: bool,
}

/// Visits every nonincreasing sequence of length `len` with entries in
/// `[lo, hi]`, lexicographically descending. With `target = Some(t)` only
/// sequences summing to `t` are visited, pruning partial sequences that
/// cannot reach `t`.
pub fn for_each_candidate<F>(len: usize, lo: i64, hi: i64, target: Option<i128>, mut visit: F)
where
    F: FnMut(&[i64]) -> ControlFlow<()>,
{
    let mut buf = Vec::with_capacity(len);
    let _ = descend(&mut buf, len, lo, hi, 0, target, &mut visit);
}

fn descend<F>(
    buf: &mut Vec<i64>,
    len: usize,
    lo: i64,
    cap: i64,
    partial: i128,
    target: Option<i128>,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[i64]) -> ControlFlow<()>,
{
    if buf.len() == len {
        return visit(buf);
    }
    let remaining = (len - buf.len()) as i128;
    for v in (lo..=cap).rev() {
        if let Some(t) = target {
            let need = t - partial - v as i128;
            let rest = remaining - 1;
            // The rest lies between rest * lo and rest * v.
            if need > rest * v as i128 {
                break;
            }
            if need < rest * lo as i128 {
                continue;
            }
        }
        buf.push(v);
        let flow = descend(buf, len, lo, v, partial + v as i128, target, visit);
        buf.pop();
        flow?;
    }
    ControlFlow::Continue(())
}

type Check = fn(&Partition, &Partition, &Partition) -> Result<crate::majorization::Verdict>;

fn search(
    inst: &Instance,
    bounds: SearchBounds,
    check: Check,
    target: Option<i128>,
) -> OracleOutcome {
    let mut checked = 0u64;
    let mut found = None;
    let mut capped = false;
    for_each_candidate(inst.witness_len(), bounds.lo, bounds.hi, target, |g| {
        if checked >= bounds.max_candidates {
            capped = true;
            return ControlFlow::Break(());
        }
        checked += 1;
        let g = Partition::new(g.to_vec()).expect("generator yields nonincreasing sequences");
        let both = check(&g, inst.d(), inst.a()).expect("length m + s").holds
            && check(&g, inst.c(), inst.b()).expect("length n + k").holds;
        if both {
            found = Some(g);
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    OracleOutcome {
        found,
        candidates_checked: checked,
        exhausted: !capped,
    }
}

pub fn enumerate_weak(inst: &Instance, bounds: SearchBounds) -> OracleOutcome {
    search(inst, bounds, check_weak, None)
}

/// Only sequences with total `sum d + sum a` are examined.
pub fn enumerate_exact(inst: &Instance, bounds: SearchBounds) -> OracleOutcome {
    let target = inst.d().total() + inst.a().total();
    search(inst, bounds, check_exact, Some(target))
}

/// Exact search without the total-sum pruning.
pub fn enumerate_exact_unpruned(inst: &Instance, bounds: SearchBounds) -> OracleOutcome {
    search(inst, bounds, check_exact, None)
}

pub fn enumerate(inst: &Instance, mode: Mode, bounds: SearchBounds) -> OracleOutcome {
    match mode {
        Mode::Weak => enumerate_weak(inst, bounds),
        Mode::Exact => enumerate_exact(inst, bounds),
    }
}

/// Every weak witness inside the bounds, in descending lexicographic order.
pub fn all_weak_witnesses(inst: &Instance, lo: i64, hi: i64) -> Vec<Partition> {
    let mut out = Vec::new();
    for_each_candidate(inst.witness_len(), lo, hi, None, |g| {
        let g = Partition::new(g.to_vec()).expect("nonincreasing");
        if check_weak(&g, inst.d(), inst.a()).expect("length").holds
            && check_weak(&g, inst.c(), inst.b()).expect("length").holds
        {
            out.push(g);
        }
        ControlFlow::Continue(())
    });
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AgreementStatus {
    Agree,
    Disagree,
    /// The oracle hit its cap without finding a witness.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeAgreement {
    pub mode: Mode,
    /// `None` when the engine reported an error.
    pub engine_exists: Option<bool>,
    pub engine_error: Option<String>,
    pub oracle: OracleOutcome,
    pub status: AgreementStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgreementReport {
    pub instance: Instance,
    pub weak: ModeAgreement,
    pub exact: ModeAgreement,
}

impl AgreementReport {
    pub fn agrees(&self) -> bool {
        self.weak.status == AgreementStatus::Agree && self.exact.status == AgreementStatus::Agree
    }

    /// A conclusive disagreement (or an engine error) worth dumping.
    pub fn is_hard_failure(&self) -> bool {
        [&self.weak, &self.exact]
            .iter()
            .any(|m| m.status == AgreementStatus::Disagree)
    }

    /// Serialized report for a failure artifact.
    pub fn dump(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn compare(inst: &Instance, mode: Mode, bounds: SearchBounds) -> ModeAgreement {
    let oracle = enumerate(inst, mode, bounds);
    let (engine_exists, engine_error) = match decide(inst, mode) {
        Ok(cert) => (Some(cert.exists()), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let status = match (engine_exists, oracle.found.is_some(), oracle.exhausted) {
        (None, _, _) => AgreementStatus::Disagree,
        (Some(e), true, _) if e => AgreementStatus::Agree,
        (Some(_), true, _) => AgreementStatus::Disagree,
        (Some(_), false, false) => AgreementStatus::Inconclusive,
        (Some(e), false, true) if !e => AgreementStatus::Agree,
        (Some(_), false, true) => AgreementStatus::Disagree,
    };
    ModeAgreement {
        mode,
        engine_exists,
        engine_error,
        oracle,
        status,
    }
}

pub fn differential_check(inst: &Instance, bounds: SearchBounds) -> AgreementReport {
    AgreementReport {
        instance: inst.clone(),
        weak: compare(inst, Mode::Weak, bounds),
        exact: compare(inst, Mode::Exact, bounds),
    }
}
