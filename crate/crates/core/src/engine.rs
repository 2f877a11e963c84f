//! Existence decisions for a partition `g` with `g ≺″ (d,a)` and `g ≺″ (c,b)`
//! (weak mode) or `g ≺′ (d,a)` and `g ≺′ (c,b)` (exact mode), with explicit
//! witnesses.

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::json;
use crate::majorization::{check_exact, check_weak, Verdict};
use crate::partition::{merge_union, ExtendedInt, Partition};
use crate::sd::{classify, derived_tables, DerivedTables, SdResult};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Weak,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Existence {
    Exists,
    NotExists,
}

/// Condition (i) is stated per member `c^y` of `S`, condition (ii) per member `d^x` of `Δ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConditionSide {
    I,
    Ii,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub side: ConditionSide,
    pub index: usize,
    /// `t_y <= m_y` (resp. `t'_x <= m'_x`); untriggered reports hold vacuously.
    pub triggered: bool,
    pub lhs: ExtendedInt,
    pub rhs: ExtendedInt,
    pub satisfied: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumCheck {
    /// `sum c + sum b`.
    #[serde(with = "json::int128")]
    pub lhs: i128,
    /// `sum d + sum a`.
    #[serde(with = "json::int128")]
    pub rhs: i128,
    pub equal: bool,
}

/// Verdicts of a witness against `(d, a)` and against `(c, b)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessVerification {
    pub d_a: Verdict,
    pub c_b: Verdict,
}

impl WitnessVerification {
    pub fn holds(&self) -> bool {
        self.d_a.holds && self.c_b.holds
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomogenizationRecord {
    #[serde(with = "json::int128")]
    pub omega: i128,
    /// First index left untouched; 1 when nothing is redistributed.
    pub f: usize,
    #[serde(with = "json::int128")]
    pub prefix_total: i128,
    pub prefix: Partition,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub mode: Mode,
    pub verdict: Existence,
    pub sd: SdResult,
    pub tables: DerivedTables,
    pub reports: Vec<ConditionReport>,
    pub sum_check: Option<SumCheck>,
    pub witness: Option<Partition>,
    pub witness_verification: Option<WitnessVerification>,
    /// The weak witness that was flattened, in exact mode.
    pub weak_witness: Option<Partition>,
    pub homogenization: Option<HomogenizationRecord>,
}

impl Certificate {
    pub fn exists(&self) -> bool {
        self.verdict == Existence::Exists
    }
}

pub fn condition_reports(
    inst: &Instance,
    tables: &DerivedTables,
    sd: &SdResult,
) -> Result<Vec<ConditionReport>> {
    let e = merge_union(inst.d(), inst.a());
    let e_prime = merge_union(inst.c(), inst.b());
    let mut reports = Vec::with_capacity(sd.h() + sd.h_prime());

    for y in 1..=sd.h_prime() {
        let (m, t, z) = (tables.m[y], tables.t[y], tables.z[y]);
        let lhs = e.range_sum(z + t, z + m)?;
        let tail_outside: i128 = (1..=inst.m())
            .filter(|&i| i as i64 > z && !sd.in_delta(i))
            .map(|i| inst.d().at(i) as i128)
            .sum();
        let chosen: i128 = sd.c_super[y - 1..].iter().map(|&v| v as i128).sum();
        let rhs = ExtendedInt::from(chosen - tail_outside)
            .try_sub(inst.a().range_sum(m + 1, inst.s() as i64)?)?;
        reports.push(report(ConditionSide::I, y, t <= m, lhs, rhs));
    }

    for x in 1..=sd.h() {
        let (m, t, z) = (tables.m_prime[x], tables.t_prime[x], tables.z_prime[x]);
        let lhs = e_prime.range_sum(z + t, z + m)?;
        let tail_outside: i128 = (1..=inst.n())
            .filter(|&i| i as i64 > z && !sd.in_s(i))
            .map(|i| inst.c().at(i) as i128)
            .sum();
        let chosen: i128 = sd.d_super[x - 1..].iter().map(|&v| v as i128).sum();
        let rhs = ExtendedInt::from(chosen - tail_outside)
            .try_sub(inst.b().range_sum(m + 1, inst.k() as i64)?)?;
        reports.push(report(ConditionSide::Ii, x, t <= m, lhs, rhs));
    }
    Ok(reports)
}

fn report(
    side: ConditionSide,
    index: usize,
    triggered: bool,
    lhs: ExtendedInt,
    rhs: ExtendedInt,
) -> ConditionReport {
    ConditionReport {
        side,
        index,
        triggered,
        lhs,
        rhs,
        satisfied: !triggered || lhs <= rhs,
    }
}

fn invariant(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InternalInvariantViolated(what()))
    }
}

/// The union `{c_i : i ∈ S} ∪ {d_i : i ∈ Δ} ∪ {M}^{t_0}` in nonincreasing order,
/// `M = max(a_1, b_1, c_1, d_1) + 1`.
///
/// Both closed forms of the same sequence (indexed through the unprimed and the
/// primed tables) and the two sum inequalities implied by the conditions are
/// checked before returning.
pub fn build_weak_witness(
    inst: &Instance,
    sd: &SdResult,
    tables: &DerivedTables,
) -> Result<Partition> {
    let t0 = tables.t0();
    invariant(t0 >= 0, || format!("t_0 = {t0} is negative"))?;
    let pad = inst.pad_value();
    let mut values: Vec<i64> = sd.c_super.iter().chain(&sd.d_super).copied().collect();
    values.extend(std::iter::repeat_n(pad, t0 as usize));
    let g = Partition::from_multiset(values);
    invariant(g.len() == inst.witness_len(), || {
        format!(
            "witness length {} != m + s = {}",
            g.len(),
            inst.witness_len()
        )
    })?;

    check_closed_form(
        &g,
        t0,
        pad,
        &sd.c_super,
        inst.d(),
        &tables.t,
        &tables.z,
        "unprimed",
    )?;
    check_closed_form(
        &g,
        t0,
        pad,
        &sd.d_super,
        inst.c(),
        &tables.t_prime,
        &tables.z_prime,
        "primed",
    )?;

    // sum c^i >= sum_{i ∉ Δ} d_i + sum_{i > t_0} a_i, and dually.
    let chosen_c: i128 = sd.c_super.iter().map(|&v| v as i128).sum();
    let outside_d: i128 = (1..=inst.m())
        .filter(|&i| !sd.in_delta(i))
        .map(|i| inst.d().at(i) as i128)
        .sum();
    let rhs = ExtendedInt::from(outside_d).try_add(inst.a().range_sum(t0 + 1, inst.s() as i64)?)?;
    invariant(ExtendedInt::from(chosen_c) >= rhs, || {
        format!("sum of c^i = {chosen_c} < {rhs}")
    })?;
    let chosen_d: i128 = sd.d_super.iter().map(|&v| v as i128).sum();
    let outside_c: i128 = (1..=inst.n())
        .filter(|&i| !sd.in_s(i))
        .map(|i| inst.c().at(i) as i128)
        .sum();
    let rhs = ExtendedInt::from(outside_c).try_add(inst.b().range_sum(t0 + 1, inst.k() as i64)?)?;
    invariant(ExtendedInt::from(chosen_d) >= rhs, || {
        format!("sum of d^i = {chosen_d} < {rhs}")
    })?;
    Ok(g)
}

/// `g_1..g_{t_0} = M`, `g_{z_x+t_x} = pivots^x`, and `g_j = others_{j-t_x}`
/// strictly between consecutive pivot positions.
#[allow(clippy::too_many_arguments)]
fn check_closed_form(
    g: &Partition,
    t0: i64,
    pad: i64,
    pivots: &[i64],
    others: &Partition,
    t: &[i64],
    z: &[i64],
    label: &str,
) -> Result<()> {
    let len = g.len() as i64;
    for j in 1..=t0 {
        invariant(g.at(j as usize) == pad, || {
            format!("{label} form: g_{j} is not the padding value")
        })?;
    }
    for x in 0..=pivots.len() {
        let start = z[x] + t[x];
        let end = z[x + 1] + t[x + 1];
        if x >= 1 {
            invariant(
                (1..=len).contains(&start) && g.at(start as usize) == pivots[x - 1],
                || format!("{label} form: g at z_{x} + t_{x} = {start} is not the pivot value"),
            )?;
        }
        for j in start + 1..end {
            let src = j - t[x];
            invariant(
                (1..=len).contains(&j)
                    && (1..=others.len() as i64).contains(&src)
                    && g.at(j as usize) == others.at(src as usize),
                || format!("{label} form: g_{j} differs from entry {src} of the other list"),
            )?;
        }
    }
    Ok(())
}

/// Lowers the largest entries of a weak witness until its total equals
/// `sum d + sum a`, keeping the lowered prefix as flat as possible.
pub fn homogenize(
    gbar: &Partition,
    d: &Partition,
    a: &Partition,
) -> Result<(Partition, HomogenizationRecord)> {
    let expected = d.len() + a.len();
    if gbar.len() != expected {
        return Err(Error::LengthMismatch {
            expected,
            found: gbar.len(),
        });
    }
    let omega = gbar.total() - d.total() - a.total();
    if omega < 0 {
        return Err(Error::NegativeOmega(omega));
    }
    if omega == 0 {
        return Ok((
            gbar.clone(),
            HomogenizationRecord {
                omega,
                f: 1,
                prefix_total: 0,
                prefix: Partition::empty(),
            },
        ));
    }
    let vals = gbar.as_slice();
    let mut prefix_sum: i128 = 0;
    let mut f = None;
    for i in 1..=vals.len() {
        prefix_sum += vals[i - 1] as i128;
        if prefix_sum - i as i128 * vals[i - 1] as i128 >= omega {
            f = Some(i);
            break;
        }
    }
    // Past the end gbar is -inf, so the condition holds at len + 1 whenever
    // there is a nonempty prefix to flatten.
    let f = match f {
        Some(f) => f,
        None if !vals.is_empty() => vals.len() + 1,
        None => return Err(Error::InfeasibleHomogenization { omega }),
    };
    let width = (f - 1) as i128;
    let prefix_total: i128 = vals[..f - 1].iter().map(|&v| v as i128).sum::<i128>() - omega;
    let low = prefix_total.div_euclid(width);
    let extra = prefix_total.rem_euclid(width) as usize;
    let prefix: Vec<i64> = (0..f - 1)
        .map(|i| if i < extra { low + 1 } else { low } as i64)
        .collect();
    let mut out = prefix.clone();
    out.extend_from_slice(&vals[f - 1..]);

    invariant(vals[f - 2] >= out[0], || "g_1 exceeds gbar_{f-1}".into())?;
    if let Some(&next) = vals.get(f - 1) {
        invariant(out[f - 2] >= next, || "g_{f-1} below gbar_f".into())?;
    }
    let g = Partition::new(out).map_err(|_| {
        Error::InternalInvariantViolated("homogenized witness not nonincreasing".into())
    })?;
    invariant(g.total() == d.total() + a.total(), || {
        "homogenized total differs from sum d + sum a".into()
    })?;
    Ok((
        g,
        HomogenizationRecord {
            omega,
            f,
            prefix_total,
            prefix: Partition::new(prefix).expect("flat prefix is nonincreasing"),
        },
    ))
}

fn verify(
    inst: &Instance,
    g: &Partition,
    check: fn(&Partition, &Partition, &Partition) -> Result<Verdict>,
) -> Result<WitnessVerification> {
    Ok(WitnessVerification {
        d_a: check(g, inst.d(), inst.a())?,
        c_b: check(g, inst.c(), inst.b())?,
    })
}

pub fn exists_weak(inst: &Instance) -> Result<Certificate> {
    decide(inst, Mode::Weak)
}

pub fn exists_exact(inst: &Instance) -> Result<Certificate> {
    decide(inst, Mode::Exact)
}

pub fn decide(inst: &Instance, mode: Mode) -> Result<Certificate> {
    let sd = classify(inst)?;
    let tables = derived_tables(inst, &sd);
    let reports = condition_reports(inst, &tables, &sd)?;
    let conditions_hold = reports.iter().all(|r| r.satisfied);
    let sum_check = (mode == Mode::Exact).then(|| {
        let lhs = inst.c().total() + inst.b().total();
        let rhs = inst.d().total() + inst.a().total();
        SumCheck {
            lhs,
            rhs,
            equal: lhs == rhs,
        }
    });
    let exists = conditions_hold && sum_check.is_none_or(|s| s.equal);

    let mut cert = Certificate {
        mode,
        verdict: if exists {
            Existence::Exists
        } else {
            Existence::NotExists
        },
        sd,
        tables,
        reports,
        sum_check,
        witness: None,
        witness_verification: None,
        weak_witness: None,
        homogenization: None,
    };
    if !exists {
        return Ok(cert);
    }

    let gbar = build_weak_witness(inst, &cert.sd, &cert.tables)?;
    let (witness, verification) = match mode {
        Mode::Weak => {
            let v = verify(inst, &gbar, check_weak)?;
            (gbar, v)
        }
        Mode::Exact => {
            let (g, record) = homogenize(&gbar, inst.d(), inst.a())?;
            let v = verify(inst, &g, check_exact)?;
            cert.weak_witness = Some(gbar);
            cert.homogenization = Some(record);
            (g, v)
        }
    };
    invariant(verification.holds(), || {
        format!("constructed witness {witness} fails verification: {verification:?}")
    })?;
    cert.witness = Some(witness);
    cert.witness_verification = Some(verification);
    Ok(cert)
}
