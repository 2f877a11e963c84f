//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test -p genmaj --test acceptance`.

mod common;

use common::{interlacing, partitions, random_population, sweep_instances, tail_bound};
use genmaj::engine::{condition_reports, ConditionSide};
use genmaj::invariants;
use genmaj::majorization::{pivot_indices, tail_inequality};
use genmaj::oracle::{all_weak_witnesses, enumerate, SearchBounds};
use genmaj::{
    check_exact, check_weak, classify, decide, derived_tables, exists_exact, exists_weak,
    homogenize, ExtendedInt, Instance, Mode, Partition,
};
use std::time::Instant;

type Outcome = Result<String, Vec<String>>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

/// Keeps the first few failures and a total count.
#[derive(Default)]
struct Failures {
    shown: Vec<String>,
    total: usize,
}

impl Failures {
    fn push(&mut self, msg: impl Into<String>) {
        self.total += 1;
        if self.shown.len() < 5 {
            self.shown.push(msg.into());
        }
    }

    fn extend(&mut self, context: &str, msgs: Vec<String>) {
        for m in msgs {
            self.push(format!("{context}: {m}"));
        }
    }

    fn finish(self, summary: String) -> Outcome {
        if self.total == 0 {
            Ok(summary)
        } else {
            let mut shown = self.shown;
            shown.insert(0, format!("{} violation(s); {summary}", self.total));
            Err(shown)
        }
    }
}

fn inst(a: &[i64], b: &[i64], c: &[i64], d: &[i64]) -> Instance {
    common::inst(a, b, c, d)
}

fn sweep_agreement(sweep: &[Instance]) -> Outcome {
    let mut fails = Failures::default();
    let mut positive = [0usize; 2];
    for inst in sweep {
        let bounds = SearchBounds::default_for(inst);
        for (slot, mode) in [Mode::Weak, Mode::Exact].into_iter().enumerate() {
            let oracle = enumerate(inst, mode, bounds);
            if !oracle.exhausted {
                fails.push(format!("{mode:?} oracle capped on {inst:?}"));
                continue;
            }
            match decide(inst, mode) {
                Ok(cert) if cert.exists() == oracle.found.is_some() => {
                    positive[slot] += cert.exists() as usize;
                }
                Ok(cert) => fails.push(format!(
                    "{mode:?} engine {} vs oracle {:?} on {inst:?}",
                    cert.exists(),
                    oracle.found
                )),
                Err(e) => fails.push(format!("{mode:?} engine error {e} on {inst:?}")),
            }
        }
    }
    fails.finish(format!(
        "{} instances, {} weak / {} exact solvable, all oracle searches exhausted",
        sweep.len(),
        positive[0],
        positive[1]
    ))
}

fn fixtures() -> Outcome {
    let mut fails = Failures::default();
    let mut check = |label: &str, ok: bool, detail: String| {
        if !ok {
            fails.push(format!("{label}: {detail}"));
        }
    };

    let i1 = inst(&[1], &[2], &[2], &[3]);
    let weak = exists_weak(&i1).unwrap();
    check(
        "I1 sets",
        weak.sd.s_set == [1] && weak.sd.delta == [1],
        format!("S={:?} Delta={:?}", weak.sd.s_set, weak.sd.delta),
    );
    check(
        "I1 weak witness",
        weak.exists() && weak.witness == Some(common::p(&[3, 2])),
        format!("{:?}", weak.witness),
    );
    let exact = exists_exact(&i1).unwrap();
    check(
        "I1 exact witness",
        exact.exists() && exact.witness == Some(common::p(&[2, 2])),
        format!("{:?}", exact.witness),
    );

    let i2 = inst(&[0], &[0], &[2], &[3]);
    check(
        "I2 weak",
        exists_weak(&i2).unwrap().exists(),
        "not-exists".into(),
    );
    let exact = exists_exact(&i2).unwrap();
    let sum = exact.sum_check.map(|s| (s.lhs, s.rhs, s.equal));
    check(
        "I2 exact",
        !exact.exists() && sum == Some((2, 3, false)),
        format!("{:?} {sum:?}", exact.verdict),
    );

    let i3 = inst(&[0], &[5], &[2], &[1]);
    let weak = exists_weak(&i3).unwrap();
    check("I3 weak verdict", !weak.exists(), "exists".into());
    let report = weak
        .reports
        .iter()
        .find(|r| r.side == ConditionSide::Ii && r.triggered && !r.satisfied);
    match report {
        None => check(
            "I3 condition (ii)",
            false,
            "no failed report on side ii".into(),
        ),
        Some(r) => {
            check(
                "I3 condition (ii) lhs",
                r.lhs == ExtendedInt::Finite(2),
                format!("expected 2, got {}", r.lhs),
            );
            check(
                "I3 condition (ii) rhs",
                r.rhs == ExtendedInt::Finite(-1),
                format!("expected -1, got {}", r.rhs),
            );
        }
    }

    // Each fixture is also confirmed by the oracle.
    for fixture in [&i1, &i2, &i3] {
        for mode in [Mode::Weak, Mode::Exact] {
            let found = enumerate(fixture, mode, SearchBounds::default_for(fixture))
                .found
                .is_some();
            let engine = decide(fixture, mode).unwrap().exists();
            check(
                "oracle confirmation",
                found == engine,
                format!("{mode:?} on {fixture:?}"),
            );
        }
    }
    fails.finish("I1, I2 and I3 fixtures".into())
}

fn witness_soundness(population: &[Instance]) -> Outcome {
    let mut fails = Failures::default();
    let (mut weak_yes, mut exact_yes) = (0, 0);
    for inst in population {
        match exists_weak(inst) {
            Ok(cert) => {
                if let Some(g) = &cert.witness {
                    weak_yes += 1;
                    if !(check_weak(g, inst.d(), inst.a()).unwrap().holds
                        && check_weak(g, inst.c(), inst.b()).unwrap().holds)
                    {
                        fails.push(format!("weak witness {g} fails on {inst:?}"));
                    }
                }
            }
            Err(e) => fails.push(format!("weak: {e} on {inst:?}")),
        }
        match exists_exact(inst) {
            Ok(cert) => {
                if let Some(g) = &cert.witness {
                    exact_yes += 1;
                    if !(check_exact(g, inst.d(), inst.a()).unwrap().holds
                        && check_exact(g, inst.c(), inst.b()).unwrap().holds)
                    {
                        fails.push(format!("exact witness {g} fails on {inst:?}"));
                    }
                }
            }
            Err(e) => fails.push(format!("exact: {e} on {inst:?}")),
        }
    }
    fails.finish(format!(
        "{} random instances, {weak_yes} weak and {exact_yes} exact witnesses verified",
        population.len()
    ))
}

fn table_invariants(population: &[Instance]) -> Outcome {
    let mut fails = Failures::default();
    for inst in population {
        let sd = classify(inst).unwrap();
        let tb = derived_tables(inst, &sd);
        fails.extend(&format!("{inst:?}"), invariants::all(inst, &sd, &tb));
    }
    fails.finish(format!("{} random instances", population.len()))
}

fn necessity(sweep: &[Instance]) -> Outcome {
    let mut fails = Failures::default();
    let mut witnesses = 0;
    for inst in sweep {
        let bounds = SearchBounds::default_for(inst);
        let found = all_weak_witnesses(inst, bounds.lo, bounds.hi);
        if found.is_empty() {
            continue;
        }
        witnesses += found.len();
        let sd = classify(inst).unwrap();
        let tb = derived_tables(inst, &sd);
        let reports = condition_reports(inst, &tb, &sd).unwrap();
        for r in reports.iter().filter(|r| !r.satisfied) {
            fails.push(format!(
                "{inst:?}: report {:?} {} unsatisfied",
                r.side, r.index
            ));
        }
        for g in &found {
            fails.extend(
                &format!("{inst:?} g={g}"),
                invariants::witness_upper_bounds(g, &sd, &tb),
            );
        }
    }
    fails.finish(format!("{witnesses} weak witnesses across the sweep"))
}

fn checker_equivalence() -> Outcome {
    let mut fails = Failures::default();
    let (mut equal_sum, mut weak_triples) = (0, 0);
    for dl in 0..=4usize {
        for al in 0..=4 - dl {
            for d in partitions(dl, 0, 3) {
                for a in partitions(al, 0, 3) {
                    for g in partitions(dl + al, 0, 3) {
                        let (gp, dp, ap) = (
                            Partition::new(g.clone()).unwrap(),
                            Partition::new(d.clone()).unwrap(),
                            Partition::new(a.clone()).unwrap(),
                        );
                        if g.iter().sum::<i64>() == d.iter().sum::<i64>() + a.iter().sum::<i64>() {
                            equal_sum += 1;
                            let exact = check_exact(&gp, &dp, &ap).unwrap().holds;
                            if exact != (interlacing(&g, &d, al) && tail_bound(&g, &d, &a)) {
                                fails.push(format!("exact {exact} on g={g:?} d={d:?} a={a:?}"));
                            }
                        }
                        if !check_weak(&gp, &dp, &ap).unwrap().holds {
                            continue;
                        }
                        weak_triples += 1;
                        let h = pivot_indices(&dp, &gp, al);
                        for j in 0..=al {
                            let lower = if j == 0 { 0 } else { h[j - 1] };
                            let upper = if j == al { gp.len() + 1 } else { h[j] };
                            for u in lower + 1..=upper {
                                if !tail_inequality(&gp, &dp, &ap, u, j).unwrap_or(false) {
                                    fails.push(format!(
                                        "tail inequality u={u} j={j} on g={g:?} d={d:?} a={a:?}"
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    fails.finish(format!(
        "{equal_sum} equal-sum triples, {weak_triples} weakly majorized triples"
    ))
}

fn homogenizer_contract(sweep: &[Instance]) -> Outcome {
    let mut fails = Failures::default();
    let mut count = 0;
    for inst in sweep {
        let cert = exists_exact(inst).unwrap();
        if !cert.exists() {
            continue;
        }
        count += 1;
        let gbar = cert.weak_witness.clone().unwrap();
        let (g, rec) = match homogenize(&gbar, inst.d(), inst.a()) {
            Ok(x) => x,
            Err(e) => {
                fails.push(format!("{e} on {inst:?}"));
                continue;
            }
        };
        let prefix = &g.as_slice()[..rec.f - 1];
        if let (Some(hi), Some(lo)) = (prefix.first(), prefix.last()) {
            if hi - lo > 1 {
                fails.push(format!("prefix {prefix:?} not flat on {inst:?}"));
            }
        }
        if g.total() != inst.d().total() + inst.a().total() {
            fails.push(format!("total of {g} wrong on {inst:?}"));
        }
        if g.as_slice()[rec.f - 1..] != gbar.as_slice()[rec.f - 1..] {
            fails.push(format!("suffix changed on {inst:?}"));
        }
        match homogenize(&g, inst.d(), inst.a()) {
            Ok((again, r)) if again == g && r.omega == 0 && r.f == 1 => {}
            other => fails.push(format!("not idempotent on {inst:?}: {other:?}")),
        }
    }
    fails.finish(format!("{count} exact-solvable sweep instances"))
}

fn main() {
    let sweep = sweep_instances();
    let population = random_population(10_000, 2024);
    let criteria: [Criterion; 7] = [
        (
            "exhaustive agreement sweep",
            Box::new(|| sweep_agreement(&sweep)),
        ),
        ("fixture instances", Box::new(fixtures)),
        (
            "witness soundness",
            Box::new(|| witness_soundness(&population)),
        ),
        (
            "table invariants",
            Box::new(|| table_invariants(&population)),
        ),
        (
            "necessity and witness bounds",
            Box::new(|| necessity(&sweep)),
        ),
        ("checker equivalence", Box::new(checker_equivalence)),
        (
            "homogenizer contract",
            Box::new(|| homogenizer_contract(&sweep)),
        ),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(summary) => println!("criterion {} {name}: PASS ({summary}; {secs:.1}s)", i + 1),
            Err(details) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({secs:.1}s)", i + 1);
                for d in details {
                    println!("    {d}");
                }
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
