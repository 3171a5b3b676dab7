//! Acceptance suite: one test per criterion, each printing a pass line with
//! its instance counts.  Run with `cargo test --test acceptance -- --nocapture`
//! to see the per-criterion summary.

use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hallq::cli;
use hallq::derived::DObj;
use hallq::genericfit::{fit_rational, validate, SamplePoint};
use hallq::hallengine::{
    associativity_suite, oracle_suite_capped, random_object, reduction_suite, rotation_suite,
    selfext_suite, shift_suite, split_suite, support_suite, Engine, HallError, Outcome,
};
use hallq::objspec::{parse_objspec, print_objspec};
use hallq::quiverrep::preset_make;

const BUDGET: u64 = 10_000_000;

fn engine(spec: &str, q: u64) -> Engine {
    let (p, r) = cli::q_to_field(q).unwrap();
    Engine::new(Arc::new(preset_make(spec).unwrap()), p, r).unwrap()
}

fn obj(e: &Engine, s: &str) -> DObj {
    parse_objspec(e.preset(), s).unwrap()
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let full: Vec<String> = std::iter::once("hallq".to_string())
        .chain(args.iter().map(|s| s.to_string()))
        .collect();
    let mut out = String::new();
    let code = cli::run(&full, &mut out);
    (code, out)
}

/// Criterion 1: the reciprocal generic function of an exceptional simple.
/// F^0_{S1[1],S1}(q) = 1/(q-1) exactly at q in {2,3,4,5,7,9,11}, and the
/// fitted function is exactly 1/(T-1), validated at q = 13.  Under 5 s.
#[test]
fn acceptance_01_reciprocal_generic_function() {
    let start = std::time::Instant::now();
    for q in [2u64, 3, 4, 5, 7, 9, 11] {
        let e = engine("A2:1>2", q);
        let x = obj(&e, "I[1,1]@1");
        let y = obj(&e, "I[1,1]@0");
        let r = e.derived_hall(&x, &y, &DObj::zero(), BUDGET).unwrap();
        assert_eq!(
            r.value,
            BigRational::new(BigInt::one(), BigInt::from(q - 1)),
            "value at q={q}"
        );
        assert!(r.route_a.is_some() && r.route_b.is_some());
    }
    let (code, out) = run_cli(&[
        "fit", "--quiver", "A2:1>2", "--X", "I[1,1]@1", "--Y", "I[1,1]@0", "--L", "0",
        "--fit-primes", "2,3,5,7,11", "--holdout", "13", "--deg-bound", "8",
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("(1)/(T - 1)  VALIDATED"), "{out}");
    let secs = start.elapsed().as_secs_f64();
    assert!(secs < 5.0, "took {secs:.2}s, budget 5s");
    println!("acceptance 01 PASS: 1/(T-1) reproduced at 7 fields and refit+validated in {secs:.2}s");
}

/// Seeded triples with a guaranteed-nonzero Hall number: X, Y random small,
/// L drawn from the actual middle terms.
fn seeded_triples(
    e: &Engine,
    seed: u64,
    want: usize,
    max_dhom: usize,
) -> Vec<(DObj, DObj, DObj)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < want && attempts < want * 60 {
        attempts += 1;
        let x = random_object(e, &mut rng, 3, true);
        let y = random_object(e, &mut rng, 3, true);
        let Ok(ms) = e.middle_terms(&x, &y, 1 << 14) else {
            continue;
        };
        let keys: Vec<&DObj> = ms.keys().collect();
        if keys.is_empty() {
            continue;
        }
        let l = keys[rng.gen_range(0..keys.len())].clone();
        let Ok(db) = e.dhom_dim(&y, &l) else { continue };
        let Ok(da) = e.dhom_dim(&l, &x) else { continue };
        if db > max_dhom || da > max_dhom {
            continue;
        }
        out.push((x, y, l));
    }
    assert_eq!(out.len(), want, "could not seed enough triples");
    out
}

/// Criterion 2: both counting routes agree exactly on at least 200 seeded
/// triples across the four presets at q in {2,3}.  Under 10 min.
#[test]
fn acceptance_02_route_identity() {
    let start = std::time::Instant::now();
    let mut total = 0usize;
    let mut nonzero = 0usize;
    for spec in ["A2:1>2", "A3:1>2,2>3", "C1", "K"] {
        for q in [2u64, 3] {
            let e = engine(spec, q);
            for (i, (x, y, l)) in seeded_triples(&e, 42, 25, 8).iter().enumerate() {
                // derived_hall runs both routes when both fit the budget and
                // fails loudly on any disagreement
                let r = e.derived_hall(x, y, l, BUDGET).unwrap_or_else(|err| {
                    panic!("{spec} q={q} instance {i}: {err}")
                });
                assert!(
                    r.route_a.is_some() && r.route_b.is_some(),
                    "both routes must run"
                );
                total += 1;
                if !r.value.is_zero() {
                    nonzero += 1;
                }
            }
        }
    }
    assert!(total >= 200, "only {total} triples");
    assert!(nonzero == total, "middle-term construction forces F > 0");
    let secs = start.elapsed().as_secs_f64();
    assert!(secs < 600.0, "took {secs:.1}s, budget 600s");
    println!(
        "acceptance 02 PASS: route identity on {total} seeded triples ({nonzero} nonzero) in {secs:.1}s"
    );
}

/// Criterion 3: the derived engine agrees with the independent submodule
/// oracle on every module triple with dim L <= 5 on A2 and C1 at q in {2,3}.
#[test]
fn acceptance_03_classical_oracle_equivalence() {
    let start = std::time::Instant::now();
    let mut instances = 0usize;
    for spec in ["A2:1>2", "C1"] {
        for q in [2u64, 3] {
            let engines = vec![engine(spec, q)];
            let report = oracle_suite_capped(&engines, BUDGET, 5);
            assert!(
                report.pass(),
                "{spec} q={q}: {:?}",
                report
                    .instances
                    .iter()
                    .filter(|i| matches!(i.outcome, Outcome::Fail(_)))
                    .collect::<Vec<_>>()
            );
            assert_eq!(report.vacuous(), 0, "no skips allowed here");
            instances += report.passes();
        }
    }
    let secs = start.elapsed().as_secs_f64();
    assert!(secs < 600.0, "took {secs:.1}s, budget 600s");
    println!(
        "acceptance 03 PASS: derived = submodule count on {instances} module triples in {secs:.1}s"
    );
}

/// Criterion 4: split, rotation and reduction suites pass exactly with at
/// least 20 non-vacuous instances each at q in {2,3}.
#[test]
fn acceptance_04_split_rotation_reduction_suites() {
    let presets = ["A2:1>2", "A3:1>2,2>3", "C1", "C2", "K"];
    let mut engines = Vec::new();
    for spec in presets {
        for q in [2u64, 3] {
            engines.push(engine(spec, q));
        }
    }
    // oversized seeded instances are reported as skips, not failures; the
    // fixed regression sets all fit comfortably under this budget
    let budget = 1 << 16;
    let split = split_suite(&engines, 7, 2, budget);
    assert!(split.pass(), "split failures: {}", split.failures());
    assert!(split.passes() >= 20, "split non-vacuous: {}", split.passes());

    let rot = rotation_suite(&engines, 7, 2, budget);
    assert!(rot.pass(), "rotation failures: {}", rot.failures());
    assert!(rot.passes() >= 20, "rotation non-vacuous: {}", rot.passes());

    let red = reduction_suite(&engines, 7, 2, budget);
    assert!(red.pass(), "reduction failures: {}", red.failures());
    assert!(red.passes() >= 20, "reduction non-vacuous: {}", red.passes());

    println!(
        "acceptance 04 PASS: split {} / rotation {} / reduction {} non-vacuous instances",
        split.passes(),
        rot.passes(),
        red.passes()
    );
}

/// Criterion 5: associativity passes exactly on at least 50 quadruples at
/// q = 2 across the presets.
#[test]
fn acceptance_05_associativity() {
    let presets = ["A2:1>2", "A3:1>2,2>3", "C1", "C2", "K"];
    let engines: Vec<Engine> = presets.iter().map(|s| engine(s, 2)).collect();
    let report = associativity_suite(&engines, 11, 7, 1 << 16);
    assert!(report.pass(), "failures: {}", report.failures());
    let run = report.passes();
    assert!(run >= 50, "only {run} quadruples ran non-vacuously");
    println!("acceptance 05 PASS: associativity on {run} quadruples at q=2");
}

/// Criterion 6: the cyclic shift formula holds on at least 5 non-degenerate
/// instances (nonzero on both sides) through each embedding at q in {2,3}.
#[test]
fn acceptance_06_cyclic_shift_formula() {
    let mut nondegenerate = 0usize;
    for spec in ["C1", "C2"] {
        for q in [2u64, 3] {
            let engines = vec![engine(spec, q)];
            let report = shift_suite(&engines, BUDGET);
            assert!(
                report.pass(),
                "{spec} q={q} failures: {:?}",
                report
                    .instances
                    .iter()
                    .filter(|i| matches!(i.outcome, Outcome::Fail(_)))
                    .collect::<Vec<_>>()
            );
            nondegenerate += report.passes();
        }
    }
    assert!(
        nondegenerate >= 5,
        "only {nondegenerate} non-degenerate instances"
    );
    println!(
        "acceptance 06 PASS: cyclic shift formula on {nondegenerate} non-degenerate instances"
    );
}

/// Criterion 7: every brace is an integer power of q.  The exponent from the
/// Hom-dimension tables is checked against cardinalities of the actual
/// chain-map coset spaces.
#[test]
fn acceptance_07_braces_are_powers_of_q() {
    let mut checked = 0usize;
    for spec in ["A2:1>2", "K", "C1"] {
        for q in [2u64, 3] {
            let e = engine(spec, q);
            let mut rng = ChaCha8Rng::seed_from_u64(99);
            for _ in 0..12 {
                let x = random_object(&e, &mut rng, 3, true);
                let y = random_object(&e, &mut rng, 3, true);
                let (value, exponent) = e.brace(&x, &y).unwrap();
                // the claimed power of q
                let qb = BigRational::from_integer(BigInt::from(q));
                let expect = if exponent >= 0 {
                    num::pow::pow(qb, exponent as usize)
                } else {
                    BigRational::one() / num::pow::pow(qb, (-exponent) as usize)
                };
                assert_eq!(value, expect, "brace not a q power: {spec} q={q}");
                // independent cardinality route: multiply |Hom(X[i], Y)|^(±1)
                // with cardinalities counted from enumerated coset spaces
                let mut card = BigRational::one();
                for i in 1..=6 {
                    let xi = match x.shifted(i) {
                        Ok(v) => v,
                        Err(_) => break,
                    };
                    let space = e.coset_space(&xi, &y).unwrap();
                    let n = BigRational::from_integer(BigInt::from(space.count()));
                    if i % 2 == 1 {
                        card /= n;
                    } else {
                        card *= n;
                    }
                }
                assert_eq!(card, value, "counted cardinalities disagree");
                checked += 1;
            }
        }
    }
    println!("acceptance 07 PASS: {checked} braces verified as powers of q against counted Hom spaces");
}

/// Criterion 8: automorphism counts over q in {2,3,4,5,7} fit monic integer
/// polynomials of degree dim End for every catalogue label with
/// dim End <= 4.
#[test]
fn acceptance_08_aut_polynomials() {
    let qs = [2u64, 3, 4, 5, 7];
    let mut fitted = 0usize;
    for spec in ["A2:1>2", "A3:1>2,2>3", "C1", "C2", "C3", "K", "A~21"] {
        let engines: Vec<Engine> = qs.iter().map(|&q| engine(spec, q)).collect();
        let labels: Vec<_> = engines[0].cx.cat.labels().to_vec();
        for label in labels {
            let ms = vec![(label, 1)];
            let (dim_end, _) = engines[0].cx.multiset_dims(&ms, &ms);
            if dim_end > 4 {
                continue;
            }
            let points: Vec<SamplePoint> = engines
                .iter()
                .map(|e| SamplePoint {
                    q: e.q(),
                    value: BigRational::from_integer(BigInt::from(
                        e.cx.aut_order_multiset(&ms),
                    )),
                })
                .collect();
            let f = fit_rational(&points, 4).unwrap_or_else(|err| {
                panic!("no fit for |Aut {label:?}| on {spec}: {err}")
            });
            assert!(
                f.is_monic_polynomial_of_degree(dim_end),
                "{spec} {label:?}: fitted {f}, dim End = {dim_end}"
            );
            fitted += 1;
        }
    }
    assert!(fitted > 50);
    println!("acceptance 08 PASS: {fitted} automorphism counts fit monic polynomials of degree dim End");
}

/// Criterion 9: in every enumerated triangle, the cone's self-extension
/// statistic is bounded by the split one, with equality exactly on splits.
#[test]
fn acceptance_09_selfext_bound() {
    let presets = ["A2:1>2", "A3:1>2,2>3", "C1", "C2", "K"];
    let mut engines = Vec::new();
    for spec in presets {
        for q in [2u64, 3] {
            engines.push(engine(spec, q));
        }
    }
    let report = selfext_suite(&engines, 23, 4, 1 << 16);
    assert!(report.pass(), "failures: {}", report.failures());
    assert!(report.passes() >= 40);
    println!(
        "acceptance 09 PASS: self-extension bound with split-equality on {} enumerations",
        report.passes()
    );
}

/// Criterion 10: the desk-scale generic-function table.  At least 20 triples
/// spanning representation-finite, cyclic and tame presets with mixed
/// shifts; fit on q in {2,3,5,7,11} with degree bound 8 and validate at
/// q = 13 exactly.  At least 15 triples must complete; budget skips are
/// reported.  Under 30 min.
#[test]
fn acceptance_10_generic_function_table() {
    let start = std::time::Instant::now();
    // (quiver, X, Y, L)
    let table: &[(&str, &str, &str, &str)] = &[
        ("A2:1>2", "I[1,1]@1", "I[1,1]@0", "0"),
        ("A2:1>2", "I[1,2]@1", "I[1,2]@0", "0"),
        ("A2:1>2", "I[1,1]@0", "I[2,2]@0", "I[1,2]@0"),
        ("A2:1>2", "I[1,1]@0", "I[2,2]@0", "I[1,1]@0 + I[2,2]@0"),
        ("A2:1>2", "I[1,1]@0", "I[1,1]@0", "2*I[1,1]@0"),
        ("A2:1>2", "I[2,2]@1", "I[1,1]@0", "I[1,1]@0 + I[2,2]@1"),
        ("A2:1>2", "I[2,2]@1", "I[1,2]@0", "I[1,1]@0"),
        ("A3:1>2,2>3", "I[1,1]@0", "I[2,3]@0", "I[1,3]@0"),
        ("A3:1>2,2>3", "I[1,2]@0", "I[3,3]@0", "I[1,3]@0"),
        ("A3:1>2,2>3", "I[2,2]@1", "I[1,2]@0", "I[1,1]@0"),
        ("A3:1>2,2>3", "I[1,3]@0", "I[2,2]@0", "I[1,3]@0 + I[2,2]@0"),
        ("C1", "C(1,1)@0", "C(1,1)@0", "2*C(1,1)@0"),
        ("C1", "C(1,1)@0", "C(1,1)@0", "C(1,2)@0"),
        ("C1", "C(1,1)@1", "C(1,1)@0", "0"),
        ("C1", "C(1,2)@0", "C(1,1)@0", "C(1,3)@0"),
        ("C1", "C(1,1)@1", "C(1,2)@0", "C(1,1)@0"),
        ("C2", "C(1,1)@0", "C(2,1)@0", "C(1,2)@0"),
        ("C2", "C(1,1)@1", "C(1,1)@0", "0"),
        ("C2", "C(1,2)@0", "C(2,2)@0", "C(1,4)@0"),
        ("K", "P0@1", "P0@0", "0"),
        ("K", "R0(1)@0", "P0@0", "P1@0"),
        ("K", "R0(1)@1", "R0(1)@0", "0"),
        ("K", "R0(1)@0", "R0(1)@0", "R0(2)@0"),
        ("K", "I0@1", "P1@0", "R0(1)@0 + P0@0"),
        ("A~21", "T2a(1)@1", "T2a(1)@0", "0"),
        ("A~21", "T2a(1)@0", "T2b(1)@0", "T2a(2)@0"),
        ("A~21", "T1(1)@0", "T1(1)@0", "T1(2)@0"),
        ("A~21", "I1(0)@0", "P3(0)@0", "T2b(1)@0"),
        ("A~21", "I1(0)@1", "P2(0)@0", "P3(0)@0"),
    ];
    assert!(table.len() >= 20);
    let fit_qs = [2u64, 3, 5, 7, 11];
    let mut completed = 0usize;
    let mut skipped_fields = 0usize;
    for (spec, xs, ys, ls) in table {
        let mut samples = Vec::new();
        let mut skipped = false;
        for &q in fit_qs.iter().chain([13].iter()) {
            let e = engine(spec, q);
            let x = obj(&e, xs);
            let y = obj(&e, ys);
            let l = obj(&e, ls);
            match e.derived_hall(&x, &y, &l, BUDGET) {
                Ok(r) => samples.push(SamplePoint { q, value: r.value }),
                Err(HallError::BudgetExceeded { cost, .. }) => {
                    println!("  note: {spec} ({xs}; {ys}; {ls}) skipped q={q}, cost {cost}");
                    skipped_fields += 1;
                    skipped = true;
                }
                Err(other) => panic!("{spec} ({xs}; {ys}; {ls}) q={q}: {other}"),
            }
        }
        if skipped || samples.len() < 6 {
            continue;
        }
        let holdout = vec![samples.pop().unwrap()];
        let f = fit_rational(&samples, 8).unwrap_or_else(|err| {
            panic!("{spec} ({xs}; {ys}; {ls}): {err}")
        });
        let rep = validate(&f, &samples, &holdout).unwrap();
        assert!(
            rep.pass(),
            "{spec} ({xs}; {ys}; {ls}): fitted {f} fails at q=13 (value {})",
            holdout[0].value
        );
        completed += 1;
    }
    assert!(
        completed >= 15,
        "only {completed} triples completed (skipped fields: {skipped_fields})"
    );
    let secs = start.elapsed().as_secs_f64();
    assert!(secs < 1800.0, "took {secs:.0}s, budget 1800s");
    println!(
        "acceptance 10 PASS: {completed}/{} generic functions fitted on q=2..11 and validated at q=13 ({skipped_fields} field skips) in {secs:.1}s",
        table.len()
    );
}

/// Criterion 11: support sets agree between q = 2 and q = 3 on at least ten
/// instances satisfying the stability hypotheses.
#[test]
fn acceptance_11_support_stability() {
    let mut passed = 0usize;
    for spec in ["A2:1>2", "K"] {
        let engines = vec![engine(spec, 2), engine(spec, 3)];
        let report = support_suite(&engines, BUDGET);
        assert!(
            report.pass(),
            "{spec}: {:?}",
            report
                .instances
                .iter()
                .filter(|i| matches!(i.outcome, Outcome::Fail(_)))
                .collect::<Vec<_>>()
        );
        assert_eq!(report.vacuous(), 0, "{spec}: skipped instances");
        passed += report.passes();
    }
    assert!(passed >= 10, "only {passed} support instances");
    println!("acceptance 11 PASS: support sets stable across q=2,3 on {passed} instances");
}

/// The support sets themselves are worth pinning on one worked instance.
#[test]
fn support_set_worked_example() {
    let e2 = engine("K", 2);
    let e3 = engine("K", 3);
    for e in [&e2, &e3] {
        let s = hallq::hallengine::support_set(
            e,
            &obj(e, "P0@0"),
            &obj(e, "R0(1)@0"),
            &obj(e, "P0@0"),
            &obj(e, "P0@0 + P1@0"),
            BUDGET,
        )
        .unwrap();
        let rendered: Vec<String> = s.iter().map(print_objspec).collect();
        assert_eq!(rendered, vec!["P1@0".to_string()], "q={}", e.q());
    }
}
