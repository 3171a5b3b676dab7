//! Named check suites: fixed regression instances per preset plus
//! deterministic seeded instances, so `--seed`/`--count` reproduce byte
//! identical runs.

use num::rational::BigRational;
use num::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::checks::{
    check_associativity, check_cyclic_shift, check_reduction, check_rotation, check_selfext,
    check_split, support_condition_holds, support_set, CheckReport, Outcome,
};
use super::engine::{Engine, HallError};
use crate::derived::DObj;
use crate::objspec::{parse_objspec, print_objspec};
use crate::quiverrep::{IndecLabel, LabelMultiset, PresetKind, QuiverPreset};

pub const SUITE_NAMES: &[&str] = &[
    "oracle",
    "split",
    "rotation",
    "reduction",
    "associativity",
    "shift",
    "selfext",
    "support",
    "all",
];

/// Draw a random object: one or two catalogued summands of small total
/// dimension, shifts in {-1, 0, 1}.
pub fn random_object(
    engine: &Engine,
    rng: &mut ChaCha8Rng,
    max_label_dim: usize,
    allow_shifts: bool,
) -> DObj {
    let labels: Vec<IndecLabel> = engine
        .cx
        .cat
        .labels()
        .iter()
        .copied()
        .filter(|l| engine.cx.cat.total_dim(l) <= max_label_dim)
        .collect();
    let count = 1 + usize::from(rng.gen_ratio(2, 5));
    let mut parts = Vec::new();
    for _ in 0..count {
        let label = labels[rng.gen_range(0..labels.len())];
        let shift = if allow_shifts {
            rng.gen_range(-1..=1)
        } else {
            0
        };
        parts.push((label, shift, 1));
    }
    DObj::new(parts).expect("small shifts stay in range")
}

fn parse(preset: &QuiverPreset, s: &str) -> DObj {
    parse_objspec(preset, s).expect("fixed instance parses")
}

/// Fixed regression triples (X, Y, L) per preset for the rotation suite.
fn fixed_triples(preset: &QuiverPreset) -> Vec<(String, String, String)> {
    let t = |a: &str, b: &str, c: &str| (a.to_string(), b.to_string(), c.to_string());
    match &preset.kind {
        PresetKind::TypeA { .. } if preset.vertices == 2 => vec![
            t("I[1,1]@0", "I[2,2]@0", "I[1,2]@0"),
            t("I[1,1]@0", "I[2,2]@0", "I[1,1]@0 + I[2,2]@0"),
            t("I[1,1]@1", "I[1,1]@0", "0"),
            t("I[1,2]@0", "I[2,2]@0", "I[1,2]@0 + I[2,2]@0"),
            t("I[1,1]@0 + I[2,2]@0", "I[2,2]@0", "I[1,2]@0 + I[2,2]@0"),
            t("I[2,2]@1", "I[1,2]@0", "I[1,1]@0"),
        ],
        PresetKind::TypeA { .. } => vec![
            t("I[1,1]@0", "I[2,3]@0", "I[1,3]@0"),
            t("I[1,2]@0", "I[3,3]@0", "I[1,3]@0"),
            t("I[2,2]@0", "I[1,1]@0 + I[3,3]@0", "I[1,1]@0 + I[2,3]@0"),
            t("I[1,1]@1", "I[1,1]@0", "0"),
            t("I[1,3]@0", "I[2,2]@0", "I[1,3]@0 + I[2,2]@0"),
        ],
        PresetKind::Cyclic { m: 1 } => vec![
            t("C(1,1)@0", "C(1,1)@0", "C(1,2)@0"),
            t("C(1,1)@0", "C(1,1)@0", "2*C(1,1)@0"),
            t("C(1,1)@1", "C(1,1)@0", "0"),
            t("C(1,2)@0", "C(1,1)@0", "C(1,3)@0"),
            t("C(1,1)@0", "C(1,2)@0", "C(1,3)@0"),
            t("C(1,1)@0", "C(1,2)@0", "C(1,1)@0 + C(1,2)@0"),
        ],
        PresetKind::Cyclic { .. } => vec![
            t("C(1,1)@0", "C(2,1)@0", "C(1,2)@0"),
            t("C(2,1)@0", "C(1,1)@0", "C(2,2)@0"),
            t("C(1,1)@0", "C(2,2)@0", "C(1,3)@0"),
            t("C(1,1)@1", "C(1,1)@0", "0"),
            t("C(1,2)@0", "C(2,1)@0", "C(1,3)@0"),
        ],
        PresetKind::Kronecker => vec![
            t("P0@0", "P0@0", "2*P0@0"),
            t("R0(1)@0", "P0@0", "P1@0"),
            t("I0@0", "P0@0", "R0(1)@0"),
            t("I0@0", "P1@0", "R0(1)@0 + P0@0"),
            t("P0@1", "P0@0", "0"),
            t("R0(1)@0", "R0(1)@0", "R0(2)@0"),
        ],
        PresetKind::TildeA21 => vec![
            t("T2a(1)@0", "T2b(1)@0", "T2a(2)@0"),
            t("T2b(1)@0", "T2a(1)@0", "T2b(2)@0"),
            t("P3(0)@0", "P2(0)@0", "P2(0)@0 + P3(0)@0"),
            t("I1(0)@0", "P3(0)@0", "T2b(1)@0"),
            t("T1(1)@0", "T1(1)@0", "T1(2)@0"),
        ],
    }
}

/// Fixed (M, N, L1, L2) instances for the reduction suite.
fn fixed_reductions(preset: &QuiverPreset) -> Vec<(String, String, String, String)> {
    let t = |a: &str, b: &str, c: &str, d: &str| {
        (a.to_string(), b.to_string(), c.to_string(), d.to_string())
    };
    match &preset.kind {
        PresetKind::TypeA { .. } if preset.vertices == 2 => vec![
            t("I[1,1]@0 + I[1,1]@-1", "I[2,2]@0", "I[1,2]@0", "I[1,1]@-1"),
            t("I[1,1]@0", "I[2,2]@0 + I[1,1]@2", "I[1,2]@0", "I[1,1]@2"),
            t("I[1,1]@0 + I[2,2]@1", "I[2,2]@0", "I[1,2]@0", "I[2,2]@1"),
            t("I[1,1]@0 + I[1,2]@-1", "I[2,2]@0", "I[1,2]@0", "I[1,2]@-1"),
            t("I[1,1]@0 + I[2,2]@0", "I[2,2]@0", "I[1,2]@0", "I[2,2]@0"),
            t("I[1,1]@0", "I[2,2]@0", "I[1,2]@0", "0"),
        ],
        PresetKind::TypeA { .. } => vec![
            t("I[1,1]@0 + I[3,3]@-1", "I[2,3]@0", "I[1,3]@0", "I[3,3]@-1"),
            t("I[1,2]@0 + I[1,1]@2", "I[3,3]@0", "I[1,3]@0", "I[1,1]@2"),
            t("I[1,1]@0 + I[2,2]@1", "I[2,3]@0", "I[1,3]@0", "I[2,2]@1"),
            t("I[2,2]@0", "I[3,3]@0 + I[1,1]@-1", "I[2,3]@0", "I[1,1]@-1"),
        ],
        PresetKind::Cyclic { m: 1 } => vec![
            t("C(1,1)@0 + C(1,1)@-1", "C(1,1)@0", "C(1,2)@0", "C(1,1)@-1"),
            t("C(1,1)@0", "C(1,1)@0 + C(1,2)@2", "C(1,2)@0", "C(1,2)@2"),
            t("C(1,2)@0 + C(1,1)@1", "C(1,1)@0", "C(1,3)@0", "C(1,1)@1"),
            t("C(1,1)@0", "C(1,1)@0", "C(1,2)@0", "0"),
        ],
        PresetKind::Cyclic { .. } => vec![
            t("C(1,1)@0 + C(2,1)@-1", "C(2,1)@0", "C(1,2)@0", "C(2,1)@-1"),
            t("C(1,1)@0", "C(2,1)@0 + C(1,1)@2", "C(1,2)@0", "C(1,1)@2"),
            t("C(2,2)@0 + C(1,1)@1", "C(1,1)@0", "C(2,3)@0", "C(1,1)@1"),
        ],
        PresetKind::Kronecker => vec![
            t("R0(1)@0 + I0@-1", "P0@0", "P1@0", "I0@-1"),
            t("R0(1)@0", "P0@0 + R1(1)@2", "P1@0", "R1(1)@2"),
            t("I0@0 + P0@1", "P0@0", "R0(1)@0", "P0@1"),
            t("I0@0", "P0@0", "R0(1)@0", "0"),
        ],
        PresetKind::TildeA21 => vec![
            t("T2a(1)@0 + I1(0)@-1", "T2b(1)@0", "T2a(2)@0", "I1(0)@-1"),
            t("T2a(1)@0", "T2b(1)@0 + P3(0)@2", "T2a(2)@0", "P3(0)@2"),
            t("I1(0)@0 + T1(1)@1", "P3(0)@0", "T2b(1)@0", "T1(1)@1"),
        ],
    }
}

/// Fixed associativity quadruples (X, Y, Z, L).
fn fixed_quadruples(preset: &QuiverPreset) -> Vec<(String, String, String, String)> {
    let t = |a: &str, b: &str, c: &str, d: &str| {
        (a.to_string(), b.to_string(), c.to_string(), d.to_string())
    };
    match &preset.kind {
        PresetKind::TypeA { .. } if preset.vertices == 2 => vec![
            t("I[1,1]@0", "I[2,2]@0", "0", "I[1,1]@0 + I[2,2]@0"),
            t("I[1,1]@0", "I[2,2]@0", "I[2,2]@0", "I[1,2]@0 + I[2,2]@0"),
            t("I[1,1]@1", "I[1,1]@0", "I[1,1]@0", "I[1,1]@0"),
            t("I[1,1]@0", "I[2,2]@0", "I[2,2]@0", "2*I[2,2]@0 + I[1,1]@0"),
            t("I[2,2]@0", "I[1,1]@0", "I[2,2]@0", "I[1,2]@0 + I[2,2]@0"),
            t("I[1,1]@1", "I[1,2]@0", "I[2,2]@0", "I[2,2]@0 + I[2,2]@1"),
        ],
        PresetKind::TypeA { .. } => vec![
            t("I[1,1]@0", "I[2,2]@0", "I[3,3]@0", "I[1,3]@0"),
            t("I[1,1]@0", "I[2,3]@0", "I[3,3]@0", "I[1,3]@0 + I[3,3]@0"),
            t("I[1,2]@0", "I[2,2]@0", "I[3,3]@0", "I[1,2]@0 + I[2,3]@0"),
            t("I[1,1]@1", "I[1,1]@0", "I[2,2]@0", "I[2,2]@0"),
        ],
        PresetKind::Cyclic { m: 1 } => vec![
            t("C(1,1)@0", "C(1,1)@0", "C(1,1)@0", "C(1,3)@0"),
            t("C(1,1)@0", "C(1,1)@0", "C(1,1)@0", "C(1,2)@0 + C(1,1)@0"),
            t("C(1,1)@0", "C(1,2)@0", "C(1,1)@0", "C(1,4)@0"),
            t("C(1,1)@1", "C(1,1)@0", "C(1,1)@0", "C(1,1)@0"),
            t("C(1,1)@0", "C(1,1)@1", "C(1,1)@0", "C(1,1)@1 + C(1,1)@0"),
        ],
        PresetKind::Cyclic { .. } => vec![
            t("C(1,1)@0", "C(2,1)@0", "C(1,1)@0", "C(1,2)@0 + C(1,1)@0"),
            t("C(1,1)@0", "C(2,1)@0", "C(2,1)@0", "C(1,2)@0 + C(2,1)@0"),
            t("C(2,1)@0", "C(1,1)@0", "C(2,1)@0", "C(2,2)@0 + C(2,1)@0"),
            t("C(1,1)@1", "C(1,1)@0", "C(2,1)@0", "C(2,1)@0"),
        ],
        PresetKind::Kronecker => vec![
            t("I0@0", "P0@0", "P0@0", "R0(1)@0 + P0@0"),
            t("I0@0", "P0@0", "P0@0", "P1@0"),
            t("R0(1)@0", "P0@0", "P0@0", "P1@0 + P0@0"),
            t("R0(1)@0", "R0(1)@0", "P0@0", "R0(2)@0 + P0@0"),
            t("P0@1", "P0@0", "P0@0", "2*P0@0"),
        ],
        PresetKind::TildeA21 => vec![
            t("T2a(1)@0", "T2b(1)@0", "T2b(1)@0", "T2a(2)@0 + T2b(1)@0"),
            t("T2a(1)@0", "T2b(1)@0", "T2a(1)@0", "T2a(3)@0"),
            t("I1(0)@0", "P3(0)@0", "P3(0)@0", "T2b(1)@0 + P3(0)@0"),
        ],
    }
}

/// Fixed cyclic shift-formula instances (X1, Y, U0, L1), module multisets.
fn fixed_shift_instances(preset: &QuiverPreset) -> Vec<(String, String, String, String)> {
    let t = |a: &str, b: &str, c: &str, d: &str| {
        (a.to_string(), b.to_string(), c.to_string(), d.to_string())
    };
    match &preset.kind {
        PresetKind::Cyclic { m: 1 } => vec![
            t("C(1,1)@0", "C(1,1)@0", "C(1,1)@0", "C(1,1)@0"),
            t("C(1,2)@0", "C(1,2)@0", "C(1,2)@0", "C(1,2)@0"),
            t("C(1,2)@0", "C(1,2)@0", "C(1,1)@0", "C(1,1)@0"),
            t("C(1,1)@0", "C(1,2)@0", "C(1,2)@0", "C(1,1)@0"),
            t("C(1,2)@0", "C(1,1)@0", "C(1,1)@0", "C(1,2)@0"),
            t("2*C(1,1)@0", "C(1,2)@0", "C(1,1)@0", "C(1,1)@0"),
            t("C(1,1)@0", "C(1,2)@0", "C(1,1)@0", "C(1,1)@0"),
        ],
        PresetKind::Cyclic { m: 2 } => vec![
            t("C(1,1)@0", "C(1,1)@0", "C(1,1)@0", "C(1,1)@0"),
            t("C(2,1)@0", "C(2,1)@0", "C(2,1)@0", "C(2,1)@0"),
            t("C(1,2)@0", "C(1,2)@0", "C(1,2)@0", "C(1,2)@0"),
            t("C(1,1)@0", "C(1,2)@0", "C(2,1)@0", "C(2,1)@0"),
            t("C(2,1)@0", "C(1,2)@0", "C(1,1)@0", "C(1,1)@0"),
        ],
        _ => Vec::new(),
    }
}

/// Fixed support-stability instances (X1, X2, Y, L).
fn fixed_support_instances(preset: &QuiverPreset) -> Vec<(String, String, String, String)> {
    let t = |a: &str, b: &str, c: &str, d: &str| {
        (a.to_string(), b.to_string(), c.to_string(), d.to_string())
    };
    match &preset.kind {
        PresetKind::TypeA { .. } if preset.vertices == 2 => vec![
            t("I[1,1]@0", "I[1,1]@0", "I[2,2]@0", "I[1,1]@0 + I[1,2]@0"),
            t("I[1,2]@0", "I[1,1]@0", "I[2,2]@0", "2*I[1,2]@0"),
            t(
                "I[2,2]@0",
                "I[1,1]@0",
                "I[1,2]@0",
                "I[1,2]@0 + I[2,2]@0 + I[1,1]@0",
            ),
            t(
                "I[1,1]@0",
                "I[1,1]@1",
                "I[1,1]@0",
                "I[1,1]@1 + 2*I[1,1]@0",
            ),
        ],
        PresetKind::Kronecker => vec![
            t("P0@0", "R0(1)@0", "P0@0", "P0@0 + P1@0"),
            t("P0@0", "R0(1)@0", "P0@0", "R0(1)@0 + 2*P0@0"),
            t("R0(1)@0", "R0(1)@0", "R0(1)@0", "R0(3)@0"),
            t("R0(1)@0", "R0(1)@0", "R0(1)@0", "R0(2)@0 + R0(1)@0"),
            t("P1@0", "R0(1)@0", "R0(1)@0", "P1@0 + R0(2)@0"),
            t("R0(1)@0", "0", "P1@0", "R0(1)@0 + P1@0"),
            t("P0@0", "R0(2)@0", "P0@0", "2*P0@0 + R0(2)@0"),
        ],
        _ => Vec::new(),
    }
}

fn triple_desc(q: u64, x: &DObj, y: &DObj, l: &DObj) -> String {
    format!(
        "q={q} X={} Y={} L={}",
        print_objspec(x),
        print_objspec(y),
        print_objspec(l)
    )
}

fn run_or_report<TOk>(
    report: &mut CheckReport,
    desc: String,
    result: Result<TOk, HallError>,
    into: impl FnOnce(TOk) -> Outcome,
) {
    match result {
        Ok(v) => report.push(desc, into(v)),
        Err(HallError::BudgetExceeded { cost, budget }) => report.push(
            desc,
            Outcome::Vacuous(format!("skipped: cost {cost} over budget {budget}")),
        ),
        Err(HallError::NotInCatalogue(what)) => report.push(
            desc,
            Outcome::Vacuous(format!("skipped: outside the catalogue ({what})")),
        ),
        Err(e) => report.push(desc, Outcome::Fail(format!("error: {e}"))),
    }
}

/// Run one named suite over a list of engines (one per field).
pub fn run_suite(
    name: &str,
    engines: &[Engine],
    seed: u64,
    count: usize,
    budget: u64,
) -> Result<CheckReport, HallError> {
    match name {
        "split" => Ok(split_suite(engines, seed, count, budget)),
        "rotation" => Ok(rotation_suite(engines, seed, count, budget)),
        "reduction" => Ok(reduction_suite(engines, seed, count, budget)),
        "associativity" => Ok(associativity_suite(engines, seed, count, budget)),
        "oracle" => Ok(oracle_suite(engines, budget)),
        "shift" => Ok(shift_suite(engines, budget)),
        "selfext" => Ok(selfext_suite(engines, seed, count, budget)),
        "support" => Ok(support_suite(engines, budget)),
        "all" => {
            let mut all = CheckReport::new("all");
            for n in SUITE_NAMES.iter().filter(|n| **n != "all") {
                all.merge(run_suite(n, engines, seed, count, budget)?);
            }
            Ok(all)
        }
        other => Err(HallError::NotInCatalogue(format!("unknown suite `{other}`"))),
    }
}

pub fn split_suite(engines: &[Engine], seed: u64, count: usize, budget: u64) -> CheckReport {
    let mut report = CheckReport::new("split");
    for engine in engines {
        let preset = engine.preset().clone();
        let mut instances: Vec<(DObj, DObj)> = fixed_triples(&preset)
            .iter()
            .map(|(x, y, _)| (parse(&preset, x), parse(&preset, y)))
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..count {
            let x = random_object(engine, &mut rng, 3, true);
            let y = random_object(engine, &mut rng, 3, true);
            instances.push((x, y));
        }
        for (x, y) in instances {
            let desc = format!(
                "split q={} X={} Y={}",
                engine.q(),
                print_objspec(&x),
                print_objspec(&y)
            );
            run_or_report(&mut report, desc, check_split(engine, &x, &y, budget), |o| o);
        }
    }
    report
}

pub fn rotation_suite(engines: &[Engine], seed: u64, count: usize, budget: u64) -> CheckReport {
    let mut report = CheckReport::new("rotation");
    for engine in engines {
        let preset = engine.preset().clone();
        let mut instances: Vec<(DObj, DObj, DObj)> = fixed_triples(&preset)
            .iter()
            .map(|(x, y, l)| (parse(&preset, x), parse(&preset, y), parse(&preset, l)))
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..count {
            // draw (X, Y) and take L from the actual middle terms so the
            // instance is non-vacuous whenever possible
            let x = random_object(engine, &mut rng, 3, true);
            let y = random_object(engine, &mut rng, 3, true);
            if let Ok(ms) = engine.middle_terms(&x, &y, budget.min(1 << 14)) {
                let keys: Vec<&DObj> = ms.keys().collect();
                if !keys.is_empty() {
                    let l = keys[rng.gen_range(0..keys.len())].clone();
                    instances.push((x, y, l));
                }
            }
        }
        for (x, y, l) in instances {
            let desc = format!("rotation {}", triple_desc(engine.q(), &x, &y, &l));
            run_or_report(
                &mut report,
                desc,
                check_rotation(engine, &x, &y, &l, budget),
                |o| o,
            );
        }
    }
    report
}

pub fn reduction_suite(engines: &[Engine], seed: u64, count: usize, budget: u64) -> CheckReport {
    let mut report = CheckReport::new("reduction");
    for engine in engines {
        let preset = engine.preset().clone();
        let mut instances: Vec<(DObj, DObj, DObj, DObj)> = fixed_reductions(&preset)
            .iter()
            .map(|(m, n, l1, l2)| {
                (
                    parse(&preset, m),
                    parse(&preset, n),
                    parse(&preset, l1),
                    parse(&preset, l2),
                )
            })
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..count {
            // pick L2 far away in shift so a hypothesis holds non-vacuously
            let l2 = random_object(engine, &mut rng, 2, false)
                .shifted(if rng.gen_bool(0.5) { -3 } else { 3 })
                .expect("shift in range");
            let m = random_object(engine, &mut rng, 3, false)
                .direct_sum(&l2)
                .expect("same preset");
            let n = random_object(engine, &mut rng, 3, false);
            let l1 = random_object(engine, &mut rng, 3, false);
            instances.push((m, n, l1, l2));
        }
        for (m, n, l1, l2) in instances {
            let desc = format!(
                "reduction q={} M={} N={} L1={} L2={}",
                engine.q(),
                print_objspec(&m),
                print_objspec(&n),
                print_objspec(&l1),
                print_objspec(&l2)
            );
            run_or_report(
                &mut report,
                desc,
                check_reduction(engine, &m, &n, &l1, &l2, budget),
                |o| o,
            );
        }
    }
    report
}

pub fn associativity_suite(
    engines: &[Engine],
    seed: u64,
    count: usize,
    budget: u64,
) -> CheckReport {
    let mut report = CheckReport::new("associativity");
    for engine in engines {
        let preset = engine.preset().clone();
        let mut instances: Vec<(DObj, DObj, DObj, DObj)> = fixed_quadruples(&preset)
            .iter()
            .map(|(x, y, z, l)| {
                (
                    parse(&preset, x),
                    parse(&preset, y),
                    parse(&preset, z),
                    parse(&preset, l),
                )
            })
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        while instances.len() < fixed_quadruples(&preset).len() + count {
            let x = random_object(engine, &mut rng, 2, true);
            let y = random_object(engine, &mut rng, 2, true);
            let z = random_object(engine, &mut rng, 2, true);
            // choose L from the support of (X·Y)·Z so the left side is live
            let Ok(ws) = engine.middle_terms(&x, &y, budget.min(1 << 12)) else {
                continue;
            };
            let keys: Vec<&DObj> = ws.keys().collect();
            if keys.is_empty() {
                continue;
            }
            let w = keys[rng.gen_range(0..keys.len())].clone();
            let Ok(ls) = engine.middle_terms(&w, &z, budget.min(1 << 12)) else {
                continue;
            };
            let lkeys: Vec<&DObj> = ls.keys().collect();
            if lkeys.is_empty() {
                continue;
            }
            let l = lkeys[rng.gen_range(0..lkeys.len())].clone();
            instances.push((x, y, z, l));
        }
        for (x, y, z, l) in instances {
            let desc = format!(
                "associativity q={} X={} Y={} Z={} L={}",
                engine.q(),
                print_objspec(&x),
                print_objspec(&y),
                print_objspec(&z),
                print_objspec(&l)
            );
            run_or_report(
                &mut report,
                desc,
                check_associativity(engine, &x, &y, &z, &l, budget),
                |(o, _)| o,
            );
        }
    }
    report
}

/// Classical-count agreement: on module triples the derived Hall number is
/// the submodule count, checked exhaustively up to a dimension cap.
pub fn oracle_suite(engines: &[Engine], budget: u64) -> CheckReport {
    oracle_suite_capped(engines, budget, 5)
}

pub fn oracle_suite_capped(engines: &[Engine], budget: u64, max_dim: usize) -> CheckReport {
    let mut report = CheckReport::new("oracle");
    for engine in engines {
        let labels: Vec<IndecLabel> = engine
            .cx
            .cat
            .labels()
            .iter()
            .copied()
            .filter(|l| engine.cx.cat.total_dim(l) <= max_dim)
            .collect();
        // all multisets with total dim <= max_dim
        let mut multisets: Vec<LabelMultiset> = vec![Vec::new()];
        for label in &labels {
            let dim = engine.cx.cat.total_dim(label);
            let mut grown = Vec::new();
            for ms in &multisets {
                let total: usize = ms
                    .iter()
                    .map(|(l, m)| engine.cx.cat.total_dim(l) * m)
                    .sum();
                let mut copies = 1;
                while total + copies * dim <= max_dim {
                    let mut next = ms.clone();
                    next.push((*label, copies));
                    grown.push(next);
                    copies += 1;
                }
            }
            multisets.extend(grown);
        }
        let obj = |ms: &LabelMultiset| {
            DObj::new(ms.iter().map(|&(l, m)| (l, 0, m)).collect()).expect("module object")
        };
        for l_ms in &multisets {
            if l_ms.is_empty() {
                continue;
            }
            let l_obj = obj(l_ms);
            let l_rep = engine.cx.realize_multiset(l_ms);
            for x_ms in &multisets {
                let x_dims = engine.cx.multiset_dim_vector(x_ms);
                let l_dims = engine.cx.multiset_dim_vector(l_ms);
                if x_dims.iter().zip(l_dims.iter()).any(|(a, b)| a > b) {
                    continue;
                }
                let y_dims: Vec<usize> = l_dims
                    .iter()
                    .zip(x_dims.iter())
                    .map(|(a, b)| a - b)
                    .collect();
                for y_ms in &multisets {
                    if engine.cx.multiset_dim_vector(y_ms) != y_dims {
                        continue;
                    }
                    let x_obj = obj(x_ms);
                    let y_obj = obj(y_ms);
                    let desc = format!(
                        "oracle {}",
                        triple_desc(engine.q(), &x_obj, &y_obj, &l_obj)
                    );
                    let x_rep = engine.cx.realize_multiset(x_ms);
                    let y_rep = engine.cx.realize_multiset(y_ms);
                    let res: Result<Outcome, HallError> = (|| {
                        let derived = engine.derived_hall(&x_obj, &y_obj, &l_obj, budget)?.value;
                        let oracle = crate::quiverrep::submodule_hall_oracle(
                            &engine.cx, &x_rep, &y_rep, &l_rep, budget,
                        )?;
                        let oracle = BigRational::from_integer(oracle.into());
                        if derived != oracle {
                            return Ok(Outcome::Fail(format!(
                                "derived {derived} vs submodule count {oracle}"
                            )));
                        }
                        Ok(Outcome::Pass)
                    })();
                    run_or_report(&mut report, desc, res, |o| o);
                }
            }
        }
    }
    report
}

pub fn shift_suite(engines: &[Engine], budget: u64) -> CheckReport {
    let mut report = CheckReport::new("shift");
    for engine in engines {
        let preset = engine.preset().clone();
        let to_ms = |s: &str| -> LabelMultiset {
            let d = parse(&preset, s);
            d.part_at(0)
        };
        for (x1, y, u0, l1) in fixed_shift_instances(&preset) {
            let desc = format!(
                "shift q={} X1={x1} Y={y} U0={u0} L1={l1}",
                engine.q()
            );
            run_or_report(
                &mut report,
                desc,
                check_cyclic_shift(
                    engine,
                    &to_ms(&x1),
                    &to_ms(&y),
                    &to_ms(&u0),
                    &to_ms(&l1),
                    budget,
                ),
                |(o, value)| match o {
                    Outcome::Pass if value.is_zero() => {
                        Outcome::Vacuous("both sides vanish".into())
                    }
                    other => other,
                },
            );
        }
    }
    report
}

pub fn selfext_suite(engines: &[Engine], seed: u64, count: usize, budget: u64) -> CheckReport {
    let mut report = CheckReport::new("selfext");
    for engine in engines {
        let preset = engine.preset().clone();
        let mut instances: Vec<(DObj, DObj)> = fixed_triples(&preset)
            .iter()
            .map(|(x, y, _)| (parse(&preset, x), parse(&preset, y)))
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5e1f);
        for _ in 0..count {
            instances.push((
                random_object(engine, &mut rng, 3, true),
                random_object(engine, &mut rng, 3, true),
            ));
        }
        for (x, z) in instances {
            let desc = format!(
                "selfext q={} X={} Z={}",
                engine.q(),
                print_objspec(&x),
                print_objspec(&z)
            );
            run_or_report(
                &mut report,
                desc,
                check_selfext(engine, &x, &z, budget),
                |o| o,
            );
        }
    }
    report
}

/// Cross-field support stability: the sets are computed per engine and
/// compared across all supplied engines.
pub fn support_suite(engines: &[Engine], budget: u64) -> CheckReport {
    let mut report = CheckReport::new("support");
    if engines.is_empty() {
        return report;
    }
    let preset = engines[0].preset().clone();
    for (x1s, x2s, ys, ls) in fixed_support_instances(&preset) {
        let desc = format!("support X1={x1s} X2={x2s} Y={ys} L={ls}");
        let mut rendered: Vec<(u64, Result<Vec<String>, HallError>)> = Vec::new();
        for engine in engines {
            let x1 = parse(&preset, &x1s);
            let x2 = parse(&preset, &x2s);
            let y = parse(&preset, &ys);
            let l = parse(&preset, &ls);
            if !support_condition_holds(engine, &x1, &x2) {
                rendered.push((engine.q(), Ok(vec!["<condition fails>".into()])));
                continue;
            }
            let s = support_set(engine, &x1, &x2, &y, &l, budget)
                .map(|v| v.iter().map(print_objspec).collect::<Vec<_>>());
            rendered.push((engine.q(), s));
        }
        let mut outcome = Outcome::Pass;
        let mut first: Option<&Vec<String>> = None;
        for (q, s) in &rendered {
            match s {
                Err(e) => {
                    outcome = Outcome::Vacuous(format!("skipped at q={q}: {e}"));
                    break;
                }
                Ok(set) => match first {
                    None => first = Some(set),
                    Some(f) if f != set => {
                        outcome = Outcome::Fail(format!(
                            "support sets differ across fields: {f:?} vs {set:?} (q={q})"
                        ));
                        break;
                    }
                    _ => {}
                },
            }
        }
        report.push(desc, outcome);
    }
    report
}
