//! The batch command-line interface: catalogue inspection, single Hall
//! number evaluation, multi-field sweeps with fitting, and identity-check
//! suites.
//!
//! Output is line-oriented `KEY: value` text with exact rationals printed as
//! `num/den`; `--records` switches to one JSON object per line for
//! downstream tooling.  Identical flags (including `--seed`) produce byte
//! identical output.
//!
//! Exit codes: 0 success, 2 argument/spec parse error, 3 budget exceeded
//! (the exact enumeration cost is printed), 4 an object left the catalogue,
//! 5 fit or validation failure, 6 identity-check failure.

use std::fmt::Write as _;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use num::rational::BigRational;

use crate::derived::DObj;
use crate::genericfit::{fit_rational, sweep, validate, FitError};
use crate::hallengine::{
    run_suite, Engine, HallError, Outcome, DEFAULT_MORPHISM_BUDGET, SUITE_NAMES,
};
use crate::objspec::{parse_objspec, print_label, print_objspec};
use crate::quiverrep::{preset_make, PriClass, QuiverPreset};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_NOT_IN_CATALOGUE: i32 = 4;
pub const EXIT_NO_FIT: i32 = 5;
pub const EXIT_CHECK_FAILED: i32 = 6;

#[derive(Parser, Debug)]
#[command(
    name = "hallq",
    about = "Exact derived Hall numbers for small quivers over finite fields",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the catalogued indecomposables of a quiver
    Catalogue(CatalogueArgs),
    /// Evaluate one derived Hall number with both-route diagnostics
    Hall(HallArgs),
    /// Sweep fields, fit the rational function, validate on held-out fields
    Fit(FitArgs),
    /// Run a named identity-check suite
    Check(CheckArgs),
}

#[derive(Args, Debug)]
struct CatalogueArgs {
    /// Quiver spec: A<n>:<orientation>, C<m>, K, A~21
    #[arg(long)]
    quiver: String,
    /// Only list labels of total dimension at most this bound
    #[arg(long = "dim-bound")]
    dim_bound: Option<usize>,
    #[arg(long)]
    records: bool,
}

#[derive(Args, Debug)]
struct HallArgs {
    #[arg(long)]
    quiver: String,
    #[arg(long = "X")]
    x: String,
    #[arg(long = "Y")]
    y: String,
    #[arg(long = "L")]
    l: String,
    /// Field cardinality (a prime power)
    #[arg(long)]
    q: u64,
    /// Morphism enumeration budget (overrides HALLQ_BUDGET)
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    records: bool,
}

#[derive(Args, Debug)]
struct FitArgs {
    #[arg(long)]
    quiver: String,
    #[arg(long = "X")]
    x: String,
    #[arg(long = "Y")]
    y: String,
    #[arg(long = "L")]
    l: String,
    /// Comma list of fit-field cardinalities (prime powers)
    #[arg(long = "fit-primes", default_value = "2,3,5,7,11")]
    fit_primes: String,
    /// Comma list of held-out cardinalities
    #[arg(long, default_value = "13")]
    holdout: String,
    #[arg(long = "deg-bound", default_value_t = 8)]
    deg_bound: usize,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    records: bool,
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// One of: oracle, split, rotation, reduction, associativity, shift,
    /// selfext, support, all
    #[arg(long)]
    suite: String,
    #[arg(long)]
    quiver: String,
    /// Comma list of field cardinalities
    #[arg(long, default_value = "2,3")]
    q: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of seeded instances added to the fixed regression set
    #[arg(long, default_value_t = 10)]
    count: usize,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    records: bool,
}

/// Resolve the morphism budget: flag, then HALLQ_BUDGET, then the default.
fn resolve_budget(flag: Option<u64>) -> u64 {
    if let Some(b) = flag {
        return b;
    }
    if let Ok(env) = std::env::var("HALLQ_BUDGET") {
        if let Ok(v) = env.parse::<u64>() {
            return v;
        }
    }
    DEFAULT_MORPHISM_BUDGET
}

/// Factor a prime power `q` into (p, r).
pub fn q_to_field(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut v = q;
            let mut r = 0;
            while v % p == 0 {
                v /= p;
                r += 1;
            }
            return if v == 1 { Some((p, r)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

fn parse_q_list(text: &str) -> Result<Vec<(u64, u32)>, String> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let q: u64 = part
            .trim()
            .parse()
            .map_err(|_| format!("bad field cardinality `{part}`"))?;
        let pr = q_to_field(q).ok_or_else(|| format!("{q} is not a prime power"))?;
        out.push(pr);
    }
    if out.is_empty() {
        return Err("empty field list".into());
    }
    Ok(out)
}

fn hall_error_exit(e: &HallError) -> i32 {
    match e {
        HallError::BudgetExceeded { .. } => EXIT_BUDGET,
        HallError::NotInCatalogue(_) | HallError::Recognize(_) => EXIT_NOT_IN_CATALOGUE,
        _ => EXIT_PARSE,
    }
}

/// Run the CLI on explicit arguments, writing all output to `out`.
/// Returns the process exit code.
pub fn run(args: &[String], out: &mut String) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(out, "{e}");
            // clap exits 0 for --help/--version renderings
            return if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
        }
    };
    match cli.command {
        Command::Catalogue(a) => cmd_catalogue(&a, out),
        Command::Hall(a) => cmd_hall(&a, out),
        Command::Fit(a) => cmd_fit(&a, out),
        Command::Check(a) => cmd_check(&a, out),
    }
}

fn load_preset(spec: &str, out: &mut String) -> Result<Arc<QuiverPreset>, i32> {
    match preset_make(spec) {
        Ok(p) => Ok(Arc::new(p)),
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            Err(EXIT_PARSE)
        }
    }
}

fn load_obj(preset: &QuiverPreset, text: &str, out: &mut String) -> Result<DObj, i32> {
    match parse_objspec(preset, text) {
        Ok(d) => Ok(d),
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            Err(EXIT_PARSE)
        }
    }
}

fn class_name(c: PriClass) -> &'static str {
    match c {
        PriClass::Preprojective => "preprojective",
        PriClass::Regular => "regular",
        PriClass::Preinjective => "preinjective",
        PriClass::Dynkin => "dynkin",
    }
}

fn cmd_catalogue(a: &CatalogueArgs, out: &mut String) -> i32 {
    let preset = match load_preset(&a.quiver, out) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let cat = crate::quiverrep::Catalogue::new(preset.clone());
    let mut count = 0usize;
    for label in cat.labels() {
        let dim = cat.dim_vector(label);
        let total: usize = dim.iter().sum();
        if let Some(bound) = a.dim_bound {
            if total > bound {
                continue;
            }
        }
        count += 1;
        let dims = dim
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(",");
        if a.records {
            let _ = writeln!(
                out,
                "{{\"label\":\"{}\",\"dim\":[{}],\"class\":\"{}\"}}",
                print_label(label),
                dims,
                class_name(label.pri_class())
            );
        } else {
            let _ = writeln!(
                out,
                "{}  dim=({})  class={}",
                print_label(label),
                dims,
                class_name(label.pri_class())
            );
        }
    }
    if !a.records {
        let _ = writeln!(out, "labels: {count}");
    }
    EXIT_OK
}

fn make_engine(preset: &Arc<QuiverPreset>, q: u64, out: &mut String) -> Result<Engine, i32> {
    let Some((p, r)) = q_to_field(q) else {
        let _ = writeln!(out, "error: {q} is not a prime power");
        return Err(EXIT_PARSE);
    };
    Engine::new(preset.clone(), p, r).map_err(|e| {
        let _ = writeln!(out, "error: {e}");
        hall_error_exit(&e)
    })
}

fn cmd_hall(a: &HallArgs, out: &mut String) -> i32 {
    let preset = match load_preset(&a.quiver, out) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let (x, y, l) = match (
        load_obj(&preset, &a.x, out),
        load_obj(&preset, &a.y, out),
        load_obj(&preset, &a.l, out),
    ) {
        (Ok(x), Ok(y), Ok(l)) => (x, y, l),
        _ => return EXIT_PARSE,
    };
    let engine = match make_engine(&preset, a.q, out) {
        Ok(e) => e,
        Err(code) => return code,
    };
    let budget = resolve_budget(a.budget);
    match engine.derived_hall(&x, &y, &l, budget) {
        Ok(r) => {
            if a.records {
                let _ = writeln!(
                    out,
                    "{{\"F\":\"{}\",\"q\":{},\"route_a\":{},\"route_b\":{}}}",
                    r.value,
                    r.q,
                    r.route_a
                        .as_ref()
                        .map(|d| format!(
                            "{{\"count\":\"{}\",\"aut\":\"{}\",\"value\":\"{}\"}}",
                            d.cone_count, d.aut, d.value
                        ))
                        .unwrap_or_else(|| "null".into()),
                    r.route_b
                        .as_ref()
                        .map(|d| format!(
                            "{{\"count\":\"{}\",\"aut\":\"{}\",\"value\":\"{}\"}}",
                            d.cone_count, d.aut, d.value
                        ))
                        .unwrap_or_else(|| "null".into()),
                );
            } else {
                let _ = writeln!(out, "F = {}", r.value);
                let _ = writeln!(out, "q: {}", r.q);
                for (name, route) in [("route_a", &r.route_a), ("route_b", &r.route_b)] {
                    match route {
                        Some(d) => {
                            let _ = writeln!(out, "{name}_count: {}", d.cone_count);
                            let _ = writeln!(out, "{name}_aut: {}", d.aut);
                            let _ = writeln!(out, "{name}_brace: {}", d.brace_ratio);
                            let _ = writeln!(out, "{name}_value: {}", d.value);
                        }
                        None => {
                            let _ = writeln!(out, "{name}: skipped (over budget)");
                        }
                    }
                }
            }
            EXIT_OK
        }
        Err(e) => {
            if let HallError::BudgetExceeded { cost, budget } = &e {
                let _ = writeln!(out, "error: budget exceeded");
                let _ = writeln!(out, "cost: {cost}");
                let _ = writeln!(out, "budget: {budget}");
            } else {
                let _ = writeln!(out, "error: {e}");
            }
            hall_error_exit(&e)
        }
    }
}

fn cmd_fit(a: &FitArgs, out: &mut String) -> i32 {
    let preset = match load_preset(&a.quiver, out) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let (x, y, l) = match (
        load_obj(&preset, &a.x, out),
        load_obj(&preset, &a.y, out),
        load_obj(&preset, &a.l, out),
    ) {
        (Ok(x), Ok(y), Ok(l)) => (x, y, l),
        _ => return EXIT_PARSE,
    };
    let fit_fields = match parse_q_list(&a.fit_primes) {
        Ok(v) => v,
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            return EXIT_PARSE;
        }
    };
    let holdout_fields = match parse_q_list(&a.holdout) {
        Ok(v) => v,
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            return EXIT_PARSE;
        }
    };
    let budget = resolve_budget(a.budget);
    let mut hard_error: Option<(i32, String)> = None;
    let mut eval = |p: u64, r: u32| -> Result<BigRational, u64> {
        match Engine::new(preset.clone(), p, r)
            .and_then(|e| e.derived_hall(&x, &y, &l, budget).map(|h| h.value))
        {
            Ok(v) => Ok(v),
            Err(HallError::BudgetExceeded { cost, .. }) => Err(cost),
            Err(e) => {
                hard_error = Some((hall_error_exit(&e), format!("{e}")));
                Err(0)
            }
        }
    };
    let fit_sweep = sweep(&fit_fields, &mut eval);
    let holdout_sweep = sweep(&holdout_fields, &mut eval);
    if let Some((code, msg)) = hard_error {
        let _ = writeln!(out, "error: {msg}");
        return code;
    }
    for (q, cost) in fit_sweep.skipped.iter().chain(holdout_sweep.skipped.iter()) {
        let _ = writeln!(out, "skipped: q={q} cost={cost}");
    }
    if fit_sweep.samples.len() < 2 {
        let _ = writeln!(out, "error: not enough in-budget fit fields");
        return EXIT_BUDGET;
    }
    for s in &fit_sweep.samples {
        let _ = writeln!(out, "sample: q={} F={}", s.q, s.value);
    }
    let f = match fit_rational(&fit_sweep.samples, a.deg_bound) {
        Ok(f) => f,
        Err(e @ (FitError::NoFit { .. } | FitError::SpuriousPole(_))) => {
            let _ = writeln!(out, "error: {e}");
            return EXIT_NO_FIT;
        }
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            return EXIT_PARSE;
        }
    };
    let report = match validate(&f, &fit_sweep.samples, &holdout_sweep.samples) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            return EXIT_PARSE;
        }
    };
    let verdict = if report.pass() && !holdout_sweep.samples.is_empty() {
        "VALIDATED"
    } else if holdout_sweep.samples.is_empty() {
        "UNVALIDATED (no holdout samples)"
    } else {
        "VALIDATION FAILED"
    };
    if a.records {
        let residuals: Vec<String> = report
            .checked
            .iter()
            .map(|(q, ok)| format!("{{\"q\":{q},\"match\":{ok}}}"))
            .collect();
        let _ = writeln!(
            out,
            "{{\"fit\":\"{f}\",\"verdict\":\"{verdict}\",\"holdout\":[{}]}}",
            residuals.join(",")
        );
    } else {
        let _ = writeln!(out, "{f}  {verdict}");
        for h in &holdout_sweep.samples {
            let residual = f
                .eval(h.q)
                .map(|v| v - h.value.clone())
                .map(|d| d.to_string())
                .unwrap_or_else(|| "pole".to_string());
            let _ = writeln!(out, "holdout q={}: residual {}", h.q, residual);
        }
    }
    if report.pass() {
        EXIT_OK
    } else {
        EXIT_NO_FIT
    }
}

fn cmd_check(a: &CheckArgs, out: &mut String) -> i32 {
    if !SUITE_NAMES.contains(&a.suite.as_str()) {
        let _ = writeln!(
            out,
            "error: unknown suite `{}` (expected one of {})",
            a.suite,
            SUITE_NAMES.join(", ")
        );
        return EXIT_PARSE;
    }
    let preset = match load_preset(&a.quiver, out) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let fields = match parse_q_list(&a.q) {
        Ok(v) => v,
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            return EXIT_PARSE;
        }
    };
    let budget = resolve_budget(a.budget);
    let mut engines = Vec::new();
    for (p, r) in fields {
        match Engine::new(preset.clone(), p, r) {
            Ok(e) => engines.push(e),
            Err(e) => {
                let _ = writeln!(out, "error: {e}");
                return hall_error_exit(&e);
            }
        }
    }
    let report = match run_suite(&a.suite, &engines, a.seed, a.count, budget) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            return hall_error_exit(&e);
        }
    };
    for inst in &report.instances {
        let (tag, detail) = match &inst.outcome {
            Outcome::Pass => ("PASS", String::new()),
            Outcome::Fail(w) => ("FAIL", format!("  {w}")),
            Outcome::Vacuous(w) => ("VACUOUS", format!("  {w}")),
        };
        if a.records {
            let _ = writeln!(
                out,
                "{{\"suite\":\"{}\",\"instance\":\"{}\",\"outcome\":\"{}\"}}",
                report.name,
                inst.desc.replace('"', "'"),
                tag
            );
        } else {
            let _ = writeln!(out, "{tag} {}{}", inst.desc, detail);
        }
    }
    if !a.records {
        let _ = writeln!(
            out,
            "summary: {} pass, {} fail, {} vacuous",
            report.passes(),
            report.failures(),
            report.vacuous()
        );
    }
    if report.pass() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

/// Print an object spec (re-exported for binaries and examples).
pub fn render_obj(d: &DObj) -> String {
    print_objspec(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String) {
        let full: Vec<String> = std::iter::once("hallq".to_string())
            .chain(args.iter().map(|s| s.to_string()))
            .collect();
        let mut out = String::new();
        let code = run(&full, &mut out);
        (code, out)
    }

    #[test]
    fn catalogue_counts() {
        let (code, out) = run_args(&["catalogue", "--quiver", "A2:1>2"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("labels: 3"), "{out}");

        let (code, out) = run_args(&["catalogue", "--quiver", "K", "--dim-bound", "3"]);
        assert_eq!(code, EXIT_OK);
        for want in ["P0", "P1", "I0", "I1", "R0(1)", "R1(1)", "Rinf(1)"] {
            assert!(out.lines().any(|l| l.starts_with(want)), "missing {want}: {out}");
        }

        let (code, out) = run_args(&["catalogue", "--quiver", "C1", "--dim-bound", "2"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("labels: 2"), "{out}");

        let (code, _) = run_args(&["catalogue", "--quiver", "B9"]);
        assert_eq!(code, EXIT_PARSE);
    }

    #[test]
    fn hall_command_examples() {
        let (code, out) = run_args(&[
            "hall", "--quiver", "A2:1>2", "--X", "I[1,1]@1", "--Y", "I[1,1]@0", "--L", "0",
            "--q", "3",
        ]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.starts_with("F = 1/2"), "{out}");

        let (code, out) = run_args(&[
            "hall", "--quiver", "A2:1>2", "--X", "I[1,1]@0", "--Y", "0", "--L", "I[1,1]@0",
            "--q", "2",
        ]);
        assert_eq!(code, EXIT_OK);
        assert!(out.starts_with("F = 1\n"), "{out}");

        let (code, out) = run_args(&[
            "hall", "--quiver", "A2:1>2", "--X", "I[1,1]@0", "--Y", "I[2,2]@0", "--L",
            "I[1,2]@0", "--q", "2",
        ]);
        assert_eq!(code, EXIT_OK);
        assert!(out.starts_with("F = 1\n"), "{out}");

        // parse error -> 2
        let (code, _) = run_args(&[
            "hall", "--quiver", "A2:1>2", "--X", "nope", "--Y", "0", "--L", "0", "--q", "2",
        ]);
        assert_eq!(code, EXIT_PARSE);

        // budget error -> 3 with cost line
        let (code, out) = run_args(&[
            "hall", "--quiver", "A2:1>2", "--X", "2*I[1,1]@0", "--Y", "2*I[1,1]@0", "--L",
            "4*I[1,1]@0", "--q", "3", "--budget", "2",
        ]);
        assert_eq!(code, EXIT_BUDGET);
        assert!(out.contains("cost: "), "{out}");
    }

    #[test]
    fn fit_command_reproduces_known_functions() {
        let (code, out) = run_args(&[
            "fit", "--quiver", "A2:1>2", "--X", "I[1,1]@1", "--Y", "I[1,1]@0", "--L", "0",
        ]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.contains("(1)/(T - 1)  VALIDATED"), "{out}");

        let (code, out) = run_args(&[
            "fit", "--quiver", "C1", "--X", "C(1,1)@0", "--Y", "C(1,1)@0", "--L",
            "2*C(1,1)@0",
        ]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.contains("(T + 1)/(1)  VALIDATED"), "{out}");

        let (code, out) = run_args(&[
            "fit", "--quiver", "A2:1>2", "--X", "I[1,2]@0", "--Y", "0", "--L", "I[1,2]@0",
        ]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.contains("(1)/(1)  VALIDATED"), "{out}");
    }

    #[test]
    fn check_command_passes_and_is_deterministic() {
        let args = [
            "check", "--suite", "rotation", "--quiver", "A2:1>2", "--q", "2", "--seed", "7",
            "--count", "3",
        ];
        let (code, out1) = run_args(&args);
        assert_eq!(code, EXIT_OK, "{out1}");
        let (_, out2) = run_args(&args);
        assert_eq!(out1, out2, "seeded runs must be byte identical");
        assert!(out1.contains("summary:"));

        let (code, _) = run_args(&["check", "--suite", "bogus", "--quiver", "A2:1>2"]);
        assert_eq!(code, EXIT_PARSE);
    }
}
