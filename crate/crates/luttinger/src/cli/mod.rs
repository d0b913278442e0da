//! Subcommands behind the `luttinger` binary. Each returns its exit code with
//! the text meant for stdout and stderr, so they can be tested in-process.

use crate::blocks::{show_block, ManifoldModel, Status};
use crate::fpgroup::{Budget, BudgetUsed};
use crate::recipes::{
    block_model, builtin_recipes, find_builtin, geography_scan, instantiate, parse_block_spec, parse_recipe,
    run_recipe, Outcome, Params, Recipe, RunReport, ScanDirection, ScanRow,
};
use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde_json::{json, Map, Value};
use std::fmt::Write;
use std::path::Path;
use std::time::{Duration, Instant};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct Options {
    pub budget: Budget,
    pub format: Format,
    /// `-P key=val` overrides.
    pub params: Vec<(String, BigInt)>,
    /// Reserved; the engine is deterministic.
    pub seed: Option<u64>,
    pub jobs: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { budget: Budget::default(), format: Format::Text, params: vec![], seed: None, jobs: 1 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CmdOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CmdOutput {
    fn error(message: impl Into<String>) -> Self {
        CmdOutput { code: 1, stdout: String::new(), stderr: format!("error: {}\n", message.into()) }
    }
}

/// 0 pass, 1 fail, 2 unknown.
pub fn exit_code(o: Outcome) -> i32 {
    match o {
        Outcome::Pass => 0,
        Outcome::Fail => 1,
        Outcome::Unknown => 2,
    }
}

/// `key=value` with an integer value.
pub fn parse_param(s: &str) -> Result<(String, BigInt), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected key=value, got `{s}`"))?;
    let v: BigInt = v.trim().parse().map_err(|_| format!("`{v}` is not an integer"))?;
    Ok((k.trim().to_string(), v))
}

/// `lo..hi`, inclusive.
pub fn parse_range(s: &str) -> Result<Vec<i64>, String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected LO..HI, got `{s}`"))?;
    let lo: i64 = a.trim().parse().map_err(|_| format!("bad bound `{a}`"))?;
    let hi: i64 = b.trim().parse().map_err(|_| format!("bad bound `{b}`"))?;
    if lo > hi || hi - lo > 64 {
        return Err(format!("range `{s}` is empty or too wide"));
    }
    Ok((lo..=hi).collect())
}

/// A recipe file if `source` names one, otherwise a built-in.
pub fn load_recipe(source: &str, params: &[(String, BigInt)]) -> Result<Recipe, String> {
    let path = Path::new(source);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{source}: {e}"))?;
        return parse_recipe(&text).map_err(|e| format!("{source}: {e}"));
    }
    if find_builtin(source).is_none() {
        return Err(format!("`{source}` is neither a recipe file nor a built-in recipe"));
    }
    instantiate(source, params).map_err(|e| e.to_string())
}

fn int_value(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(i) => json!(i),
        None => json!(v.to_string()),
    }
}

fn rational_value(r: &Rational64) -> Value {
    if r.is_integer() {
        json!(r.to_integer())
    } else {
        json!(r.to_string())
    }
}

fn budget_value(u: &BudgetUsed) -> Value {
    json!({
        "cosets": u.cosets,
        "tietze_passes": u.tietze_passes,
        "derivation_depth": u.derivation_depth,
        "search_nodes": u.search_nodes,
    })
}

/// Canonical report: fixed key order, integers exact, no floats, no timings.
pub fn report_document(rep: &RunReport) -> Value {
    let params: Map<String, Value> = rep.params.iter().map(|(k, v)| (k.clone(), int_value(v))).collect();
    let steps: Vec<Value> = rep
        .steps
        .iter()
        .map(|s| {
            let log: Vec<Value> = s
                .entries
                .iter()
                .map(|e| {
                    json!({
                        "op": e.op,
                        "relators_added": e.relators_added,
                        "delta_e": e.delta_e,
                        "delta_sigma": e.delta_sigma,
                        "b1_before": e.b1_before,
                        "b1_after": e.b1_after,
                    })
                })
                .collect();
            json!({ "directive": s.directive, "log": log })
        })
        .collect();
    let assertions: Vec<Value> = rep
        .assertions
        .iter()
        .map(|a| {
            json!({
                "kind": a.kind,
                "expected": a.expected,
                "actual": a.actual,
                "outcome": a.outcome,
                "exact": a.exact,
                "method": a.method,
                "budget_used": budget_value(&a.budget_used),
            })
        })
        .collect();
    let mut doc = Map::new();
    doc.insert("recipe".into(), json!(rep.recipe));
    doc.insert("params".into(), Value::Object(params));
    doc.insert("model".into(), json!(rep.model));
    doc.insert("steps".into(), Value::Array(steps));
    let r = rep.report.as_ref();
    doc.insert("e".into(), json!(r.map(|r| r.e)));
    doc.insert("sigma".into(), json!(r.map(|r| r.sigma)));
    doc.insert("b1".into(), json!(r.map(|r| r.b1)));
    doc.insert(
        "h1".into(),
        r.map(|r| json!({ "rank": r.h1.free_rank, "torsion": r.h1.torsion.iter().map(int_value).collect::<Vec<_>>() }))
            .unwrap_or(Value::Null),
    );
    doc.insert("b2".into(), json!(r.map(|r| r.b2)));
    doc.insert("chi_h".into(), r.map(|r| rational_value(&r.chi_h)).unwrap_or(Value::Null));
    doc.insert("c1sq".into(), json!(r.map(|r| r.c1sq)));
    doc.insert(
        "freedman".into(),
        r.and_then(|r| r.freedman).map(|(m, n)| json!({ "m": m, "n": n })).unwrap_or(Value::Null),
    );
    doc.insert(
        "pi1".into(),
        r.map(|r| {
            json!({
                "claim": r.certificate.claim.to_string(),
                "method": r.certificate.method.to_string(),
                "exactness": r.exactness.to_string(),
            })
        })
        .unwrap_or(Value::Null),
    );
    doc.insert("trusted".into(), json!(rep.trusted));
    doc.insert("assertions".into(), Value::Array(assertions));
    doc.insert("budget_used".into(), budget_value(&rep.budget_used));
    doc.insert("outcome".into(), json!(rep.outcome()));
    Value::Object(doc)
}

/// Human-readable report.
pub fn render_text(rep: &RunReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "recipe {}", rep.recipe);
    if !rep.params.is_empty() {
        let ps: Vec<String> = rep.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(out, "params: {}", ps.join(" "));
    }
    if !rep.steps.is_empty() {
        let _ = writeln!(out, "steps:");
    }
    for (i, s) in rep.steps.iter().enumerate() {
        let _ = writeln!(out, "  {:>2}. {}", i + 1, s.directive);
        for e in &s.entries {
            let _ = write!(out, "      b1 {} -> {}", e.b1_before, e.b1_after);
            if e.delta_e != 0 || e.delta_sigma != 0 {
                let _ = write!(out, ", de {:+}, dsigma {:+}", e.delta_e, e.delta_sigma);
            }
            if !e.relators_added.is_empty() {
                let _ = write!(out, ", adds {}", e.relators_added.join(", "));
            }
            out.push('\n');
        }
    }
    if let (Some(var), Some(r)) = (&rep.model, &rep.report) {
        let _ = writeln!(out, "model {var}:");
        let _ = writeln!(out, "  e = {}, sigma = {}, b1 = {}, b2 = {}", r.e, r.sigma, r.b1, r.b2);
        let _ = writeln!(out, "  H1 = {}, chi_h = {}, c1^2 = {}", r.h1, r.chi_h, r.c1sq);
        let _ = writeln!(out, "  pi1: {} ({}, {})", r.certificate.claim, r.certificate.method, r.exactness);
        match r.freedman {
            Some((m, n)) => {
                let _ = writeln!(out, "  freedman: ({m},{n})");
            }
            None => {
                let _ = writeln!(out, "  freedman: -");
            }
        }
    }
    if !rep.trusted.is_empty() {
        let _ = writeln!(out, "trusted: {}", rep.trusted.join(", "));
    }
    if !rep.assertions.is_empty() {
        let _ = writeln!(out, "assertions:");
    }
    for a in &rep.assertions {
        let _ = writeln!(out, "  {:<8}{} [{}; {}]", a.outcome.to_string(), a.expected, a.actual, a.method);
    }
    let u = &rep.budget_used;
    let _ = writeln!(
        out,
        "budget used: {} cosets, {} tietze passes, depth {}, {} nodes",
        u.cosets, u.tietze_passes, u.derivation_depth, u.search_nodes
    );
    let _ = writeln!(out, "outcome: {}", rep.outcome());
    out
}

fn ms(d: Duration) -> u128 {
    d.as_millis()
}

/// `run`: one recipe file or built-in.
pub fn cmd_run(source: &str, opts: &Options) -> CmdOutput {
    let recipe = match load_recipe(source, &opts.params) {
        Ok(r) => r,
        Err(e) => return CmdOutput::error(e),
    };
    let rep = match run_recipe(&recipe, &opts.params, &opts.budget) {
        Ok(r) => r,
        Err(e) => return CmdOutput::error(e.to_string()),
    };
    let stdout = match opts.format {
        Format::Text => render_text(&rep),
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&report_document(&rep)).expect("plain json")),
    };
    CmdOutput { code: exit_code(rep.outcome()), stdout, stderr: format!("wall time: {} ms\n", ms(rep.wall_time)) }
}

struct Verified {
    name: String,
    result: Result<RunReport, String>,
    wall: Duration,
}

/// `verify-all`: every built-in at its defaults, optionally filtered by a glob.
pub fn cmd_verify_all(filter: Option<&str>, opts: &Options) -> CmdOutput {
    let pattern = match filter.map(glob::Pattern::new).transpose() {
        Ok(p) => p,
        Err(e) => return CmdOutput::error(format!("bad filter: {e}")),
    };
    let names: Vec<&'static str> =
        builtin_recipes().iter().map(|b| b.name).filter(|n| pattern.as_ref().is_none_or(|p| p.matches(n))).collect();
    if names.is_empty() {
        return CmdOutput::error("no built-in recipe matches the filter");
    }
    let run_one = |name: &&'static str| {
        let start = Instant::now();
        let result = instantiate(name, &[])
            .and_then(|r| run_recipe(&r, &[], &opts.budget))
            .map_err(|e| e.to_string());
        Verified { name: name.to_string(), result, wall: start.elapsed() }
    };
    let results: Vec<Verified> = match rayon::ThreadPoolBuilder::new().num_threads(opts.jobs.max(1)).build() {
        Ok(pool) => pool.install(|| names.par_iter().map(run_one).collect()),
        Err(e) => return CmdOutput::error(format!("thread pool: {e}")),
    };
    let mut worst = Outcome::Pass;
    let mut stdout = String::new();
    let mut rows = Vec::new();
    for v in &results {
        let (outcome, passed, total) = match &v.result {
            Ok(r) => {
                let passed = r.assertions.iter().filter(|a| a.outcome == Outcome::Pass).count();
                (r.outcome(), passed, r.assertions.len())
            }
            Err(_) => (Outcome::Fail, 0, 0),
        };
        worst = worst.max(outcome);
        match opts.format {
            Format::Text => {
                let _ = write!(stdout, "{:<12} {:<8} {passed:>2}/{total:<2} {:>7} ms", v.name, outcome.to_string(), ms(v.wall));
                if let Err(e) = &v.result {
                    let _ = write!(stdout, "  {e}");
                }
                stdout.push('\n');
            }
            Format::Json => rows.push(json!({
                "recipe": v.name,
                "outcome": outcome,
                "passed": passed,
                "assertions": total,
                "wall_time_ms": ms(v.wall) as u64,
                "error": v.result.as_ref().err(),
            })),
        }
    }
    match opts.format {
        Format::Text => {
            let total: Duration = results.iter().map(|v| v.wall).sum();
            let _ = writeln!(stdout, "{} recipes, {}; {} ms", results.len(), worst, ms(total));
        }
        Format::Json => {
            stdout = format!("{}\n", serde_json::to_string_pretty(&Value::Array(rows)).expect("plain json"));
        }
    }
    let code = if worst == Outcome::Pass { 0 } else { exit_code(worst) };
    CmdOutput { code, stdout, stderr: String::new() }
}

fn block_value(m: &ManifoldModel) -> Value {
    let p = &m.presentation;
    let status = |s: Status| match s {
        Status::Available => "available",
        Status::Surgered => "surgered",
        Status::Filled => "filled",
    };
    let tori: Vec<Value> = m
        .tori
        .iter()
        .map(|t| {
            json!({
                "name": t.name,
                "mu": p.format_word_pretty(&t.mu),
                "m": p.format_word_pretty(&t.m),
                "l": p.format_word_pretty(&t.ell),
                "status": status(t.status),
            })
        })
        .collect();
    let surfaces: Vec<Value> = m
        .surfaces
        .iter()
        .map(|s| {
            json!({
                "name": s.name,
                "genus": s.genus,
                "mu": p.format_word_pretty(&s.mu),
                "loops": s.loop_words.iter().map(|w| p.format_word_pretty(w)).collect::<Vec<_>>(),
                "status": status(s.status),
            })
        })
        .collect();
    json!({
        "block": m.name,
        "generators": p.symbols(),
        "relators": p.relators().iter().map(|r| p.format_word_pretty(r)).collect::<Vec<_>>(),
        "tori": tori,
        "surfaces": surfaces,
        "e": m.e,
        "sigma": m.sigma,
        "exactness": m.exactness.to_string(),
    })
}

/// `show-block`: generator, relator and torus tables of a block.
pub fn cmd_show_block(id: &str, opts: &Options) -> CmdOutput {
    let model = parse_block_spec(id)
        .map_err(|e| e.message)
        .and_then(|spec| block_model(&spec, &Params::new()));
    match model {
        Ok(m) => {
            let stdout = match opts.format {
                Format::Text => show_block(&m),
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&block_value(&m)).expect("plain json")),
            };
            CmdOutput { code: 0, stdout, stderr: String::new() }
        }
        Err(e) => CmdOutput::error(e),
    }
}

/// Small budget for scans: unknown cells are expected and cheap.
pub fn scan_budget() -> Budget {
    Budget { max_cosets: 2_000, max_depth: 4, max_tietze_passes: 64, max_nodes: 50 }
}

fn scan_row_text(r: &ScanRow) -> String {
    let cs: Vec<String> = r.choices.iter().map(|(t, c)| format!("{t}:{c}")).collect();
    format!("{}  H1={}  e={} sigma={} c1^2={} chi_h={}  {} ({})", cs.join(" "), r.h1, r.e, r.sigma, r.c1sq, r.chi_h, r.claim, r.method)
}

fn scan_row_value(r: &ScanRow) -> Value {
    let choices: Map<String, Value> = r.choices.iter().map(|(t, c)| (t.clone(), json!(c.to_string()))).collect();
    json!({
        "choices": choices,
        "h1": { "rank": r.h1.free_rank, "torsion": r.h1.torsion.iter().map(int_value).collect::<Vec<_>>() },
        "e": r.e,
        "sigma": r.sigma,
        "c1sq": r.c1sq,
        "chi_h": rational_value(&r.chi_h),
        "claim": r.claim.to_string(),
        "method": r.method.to_string(),
    })
}

/// `scan`: the geography table of a catalog block.
pub fn cmd_scan(base: &str, ks: &[i64], dirs: &[ScanDirection], opts: &Options) -> CmdOutput {
    let id = match base.parse() {
        Ok(id) => id,
        Err(e) => return CmdOutput::error(format!("{e}")),
    };
    let rows = match geography_scan(id, ks, dirs, &opts.budget, opts.jobs) {
        Ok(r) => r,
        Err(e) => return CmdOutput::error(e.to_string()),
    };
    let mut stdout = String::new();
    match opts.format {
        Format::Text => {
            for r in &rows {
                stdout.push_str(&scan_row_text(r));
                stdout.push('\n');
            }
        }
        Format::Json => {
            // one object per line, so the table streams
            for r in &rows {
                stdout.push_str(&serde_json::to_string(&scan_row_value(r)).expect("plain json"));
                stdout.push('\n');
            }
        }
    }
    CmdOutput { code: 0, stdout, stderr: format!("{} cells\n", rows.len()) }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_and_ranges() {
        assert_eq!(parse_param("p=-2").unwrap(), ("p".to_string(), BigInt::from(-2)));
        assert!(parse_param("p").is_err());
        assert_eq!(parse_range("-1..1").unwrap(), vec![-1, 0, 1]);
        assert!(parse_range("2..1").is_err());
    }

    #[test]
    fn run_cool_passes() {
        let out = cmd_run("cool", &Options::default());
        assert_eq!(out.code, 0, "{}", out.stdout);
        assert!(out.stdout.contains("freedman: (1,3)"));
    }

    #[test]
    fn starved_budget_is_unknown() {
        let opts = Options { budget: Budget { max_cosets: 1, ..Budget::default() }, ..Options::default() };
        assert_eq!(cmd_run("cool", &opts).code, 2);
    }

    #[test]
    fn json_report_key_order() {
        let opts = Options { format: Format::Json, ..Options::default() };
        let out = cmd_run("cool", &opts);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(&keys[..5], &["recipe", "params", "model", "steps", "e"]);
        assert_eq!(v["freedman"], json!({ "m": 1, "n": 3 }));
        assert_eq!(cmd_run("cool", &opts).stdout, out.stdout);
    }

    #[test]
    fn unknown_sources_and_blocks() {
        assert_eq!(cmd_run("no-such-recipe", &Options::default()).code, 1);
        assert_eq!(cmd_show_block("Q", &Options::default()).code, 1);
        assert_eq!(cmd_show_block("sym2(4)", &Options::default()).code, 0);
    }
}
