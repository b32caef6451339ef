//! `skewgt`: command-line front end for skew GT-patterns, their snake
//! structure, saturation runs, enumeration and stretch-polynomial sweeps.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use rayon::prelude::*;
use serde_json::{json, Value};

use skew_gt::cycles::{find_simple_cycle, SnakeGraph};
use skew_gt::enumeration::{all_families, Extreme, GtFamily};
use skew_gt::figures::fixture_documents;
use skew_gt::poly::{self, check_nonnegativity, default_degree_cap};
use skew_gt::saturation::{check_k_fulton, check_saturation, project, saturate, Direction};
use skew_gt::snakes::{canonical_with_tiling, SnakeScope};
use skew_gt::tableau::{to_tableau, SkewTableau};
use skew_gt::tiling::{check_tile_properties, Tiling};
use skew_gt::{Composition, GtPattern, Partition};

#[derive(Parser)]
#[command(name = "skewgt", version, about = "Skew GT-patterns, snakes, saturation and stretched Kostka numbers")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for the parallel modes. Results do not depend on it.
    #[arg(long, global = true, env = "GT_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Scope {
    NonMultiples,
    AllFreeTiles,
}

impl From<Scope> for SnakeScope {
    fn from(s: Scope) -> Self {
        match s {
            Scope::NonMultiples => SnakeScope::NonMultiples,
            Scope::AllFreeTiles => SnakeScope::AllFreeTiles,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Dir {
    Up,
    Down,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Enumerate,
    Dp,
    Tableaux,
}

#[derive(Args)]
struct FamilyArgs {
    /// Outer partition, e.g. 6,4,3,3.
    #[arg(long, value_parser = parse_partition)]
    lambda: Partition,
    /// Inner partition; empty by default.
    #[arg(long, value_parser = parse_partition, default_value = "")]
    mu: Partition,
    /// Content composition, e.g. 2,3,2,3.
    #[arg(long, value_parser = parse_composition)]
    nu: Composition,
}

impl FamilyArgs {
    fn family(&self) -> Result<GtFamily, Failure> {
        let f = GtFamily::new(self.lambda.clone(), self.mu.clone(), self.nu.clone())
            .map_err(|e| Failure::Input(format!("--mu: {e}")))?;
        if !f.sizes_match() {
            return Err(Failure::Input(format!(
                "--nu: sum {} differs from |lambda| - |mu| = {}",
                self.nu.size(),
                self.lambda.size() - self.mu.size()
            )));
        }
        Ok(f)
    }
}

#[derive(Args)]
struct PatternArg {
    /// Pattern as a JSON file path or inline JSON: either
    /// {"rows_top_to_bottom": [...], "n": .., "m": ..} or a list of rows, top row first.
    #[arg(long)]
    pattern: String,
}

#[derive(Args)]
struct StretchArg {
    /// Stretch factor.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    k: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Pattern to tableau, or tableau to pattern.
    Convert {
        #[arg(long, conflicts_with = "tableau", required_unless_present = "tableau")]
        pattern: Option<String>,
        /// Tableau rows as JSON, top row first, with 0 marking inner cells.
        #[arg(long)]
        tableau: Option<String>,
        /// Number of pattern rows; defaults to one more than the largest entry.
        #[arg(long)]
        m: Option<usize>,
    },
    /// Tiles of a pattern.
    Tile {
        #[command(flatten)]
        pattern: PatternArg,
    },
    /// Canonical snake partition.
    Snakes {
        #[command(flatten)]
        pattern: PatternArg,
        #[command(flatten)]
        k: StretchArg,
        #[arg(long, value_enum, default_value_t = Scope::NonMultiples)]
        scope: Scope,
    },
    /// Snake graph as an edge list, or DOT with --dot.
    Graph {
        #[command(flatten)]
        pattern: PatternArg,
        #[command(flatten)]
        k: StretchArg,
        #[arg(long, value_enum, default_value_t = Scope::NonMultiples)]
        scope: Scope,
        #[arg(long)]
        dot: bool,
    },
    /// Apply snake cycles until every entry is a multiple of k, then divide by k.
    Saturate {
        #[command(flatten)]
        pattern: PatternArg,
        #[command(flatten)]
        k: StretchArg,
        #[arg(long, value_enum, default_value_t = Dir::Up)]
        direction: Dir,
    },
    /// Number of patterns in a family.
    Count {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value_t = Method::Dp)]
        method: Method,
    },
    /// Members of a family in lexicographic order.
    Enumerate {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Lexicographically largest member.
    Lexmax {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Lexicographically smallest member.
    Lexmin {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Stretched members lexicographically at most k times the pattern.
    Pg {
        #[command(flatten)]
        pattern: PatternArg,
        #[command(flatten)]
        k: StretchArg,
    },
    /// Fit the stretched Kostka numbers for k = 1..kmax.
    Poly {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 10)]
        kmax: u64,
    },
    /// Fit the lex-rank function of every member of a family.
    PgSweep {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 8)]
        kmax: u64,
    },
    /// Saturation and K = 1 checks over every small family.
    Verify {
        #[arg(long, default_value_t = 4)]
        max_size: u64,
        /// Comma-separated stretch factors.
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        k: Vec<u64>,
    },
    /// Write the figure fixtures as JSON files.
    SeedFigures {
        #[arg(long)]
        out: PathBuf,
    },
}

enum Failure {
    Input(String),
    Internal(String),
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    s.parse::<Partition>().map_err(|e| e.to_string())
}

fn parse_composition(s: &str) -> Result<Composition, String> {
    s.parse::<Composition>().map_err(|e| e.to_string())
}

fn read_json(flag: &str, arg: &str) -> Result<Value, Failure> {
    let trimmed = arg.trim_start();
    let text = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Failure::Input(format!("{flag}: cannot read {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{flag}: invalid JSON: {e}")))
}

fn load_pattern(arg: &str) -> Result<GtPattern, Failure> {
    let value = read_json("--pattern", arg)?;
    // figure fixtures wrap the pattern as {"data": {"pattern": ...}}
    let value = match value.get("data") {
        Some(data) => data.clone(),
        None => value,
    };
    let value = match value.get("pattern") {
        Some(p) => p.clone(),
        None => value,
    };
    let parsed = if value.is_array() {
        serde_json::from_value::<Vec<Vec<i64>>>(value)
            .map_err(|e| e.to_string())
            .and_then(|rows| GtPattern::from_top_down(rows).map_err(|e| e.to_string()))
    } else {
        serde_json::from_value::<GtPattern>(value).map_err(|e| e.to_string())
    };
    parsed.map_err(|e| Failure::Input(format!("--pattern: {e}")))
}

fn pattern_json(g: &GtPattern) -> Value {
    serde_json::to_value(g).expect("patterns serialise")
}

fn big(v: &BigUint) -> Value {
    Value::String(v.to_string())
}

fn render(format: Format, text: String, doc: Value) -> String {
    match format {
        Format::Text => text,
        Format::Json => doc.to_string() + "\n",
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    let format = cli.format;
    match cli.command {
        Command::Convert { pattern, tableau, m } => {
            if let Some(p) = pattern {
                let g = load_pattern(&p)?;
                let t = to_tableau(&g);
                let doc = json!({
                    "tableau": t.rows_with_inner(),
                    "lambda": g.outer().parts(),
                    "mu": g.inner().parts(),
                    "nu": g.content().parts(),
                });
                Ok(render(format, t.to_string(), doc))
            } else {
                let arg = tableau.expect("clap requires one of the two");
                let rows: Vec<Vec<u32>> = serde_json::from_value(read_json("--tableau", &arg)?)
                    .map_err(|e| Failure::Input(format!("--tableau: {e}")))?;
                let max = rows.iter().flatten().copied().max().unwrap_or(0) as usize;
                let t = SkewTableau::from_rows_with_inner(rows).map_err(|e| Failure::Input(format!("--tableau: {e}")))?;
                let g = t
                    .to_pattern(m.unwrap_or(max + 1))
                    .map_err(|e| Failure::Input(format!("--tableau: {e}")))?;
                Ok(render(format, g.render(), pattern_json(&g)))
            }
        }
        Command::Tile { pattern } => {
            let g = load_pattern(&pattern.pattern)?;
            let tiling = Tiling::new(&g);
            let violations = check_tile_properties(&tiling, &g);
            let tiles: Vec<Value> = tiling
                .tiles()
                .iter()
                .map(|t| {
                    json!({
                        "id": t.id,
                        "content": t.content,
                        "free": t.is_free,
                        "cells": t.cells.iter().map(|c| [c.row, c.col]).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let doc = json!({
                "tiles": tiles,
                "violations": violations.iter().map(|(id, v)| json!({"tile": id, "violation": v})).collect::<Vec<_>>(),
            });
            let mut text = tiling.render(&g);
            for (id, v) in &violations {
                writeln!(text, "tile {id}: {v:?}").unwrap();
            }
            Ok(render(format, text, doc))
        }
        Command::Snakes { pattern, k, scope } => {
            let g = load_pattern(&pattern.pattern)?;
            let tiling = Tiling::new(&g);
            let sp = canonical_with_tiling(&g, &tiling, k.k as i64, scope.into());
            let snakes: Vec<Value> = sp
                .snakes()
                .iter()
                .map(|s| {
                    json!({
                        "id": s.id,
                        "tile": s.host_tile,
                        "content": s.content,
                        "start": s.start_row(),
                        "end": s.end_row(),
                        "cells": s.cells.iter().map(|c| [c.row, c.col]).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let doc = json!({"proper": sp.is_proper(), "snakes": snakes});
            Ok(render(format, sp.render(&g), doc))
        }
        Command::Graph { pattern, k, scope, dot } => {
            let g = load_pattern(&pattern.pattern)?;
            let tiling = Tiling::new(&g);
            let sp = canonical_with_tiling(&g, &tiling, k.k as i64, scope.into());
            let graph = SnakeGraph::new(&sp);
            let cycle = find_simple_cycle(&graph);
            let text = if dot { graph.to_dot(cycle.as_ref()) } else { graph.edge_list() };
            let doc = json!({
                "rows": g.m(),
                "edges": graph.edges.iter().map(|e| [e.snake, e.start, e.end]).collect::<Vec<_>>(),
                "cycle": cycle.map(|c| c.snakes()),
            });
            Ok(render(format, text, doc))
        }
        Command::Saturate { pattern, k, direction } => {
            let g = load_pattern(&pattern.pattern)?;
            let dir = match direction {
                Dir::Up => Direction::Up,
                Dir::Down => Direction::Down,
            };
            let kk = k.k as i64;
            let trace = saturate(&g, kk, dir).map_err(|e| match e {
                skew_gt::saturation::SaturationError::NotStretched { .. } => Failure::Input(format!("--k: {e}")),
                other => Failure::Internal(other.to_string()),
            })?;
            let projected = project(&trace.final_pattern, kk).map_err(|e| Failure::Internal(e.to_string()))?;
            let mut text = String::new();
            for (i, step) in trace.steps.iter().enumerate() {
                writeln!(text, "step {}: cycle {:?}", i + 1, step.cycle.snakes()).unwrap();
            }
            writeln!(text, "saturated:\n{}", trace.final_pattern.render()).unwrap();
            writeln!(text, "projected:\n{}", projected.render()).unwrap();
            let doc = json!({
                "steps": trace.steps.iter().map(|s| s.cycle.snakes()).collect::<Vec<_>>(),
                "saturated": pattern_json(&trace.final_pattern),
                "projected": pattern_json(&projected),
            });
            Ok(render(format, text, doc))
        }
        Command::Count { family, method } => {
            let f = family.family()?;
            let count = match method {
                Method::Enumerate => f.count(),
                Method::Dp => f.count_dp(),
                Method::Tableaux => f.count_via_tableaux(),
            };
            Ok(render(format, format!("{count}\n"), json!({"count": big(&count)})))
        }
        Command::Enumerate { family, limit } => {
            let f = family.family()?;
            let mut out = String::new();
            for g in f.iter().take(limit.unwrap_or(usize::MAX)) {
                match format {
                    Format::Text => writeln!(out, "{}", g.render()).unwrap(),
                    Format::Json => writeln!(out, "{}", pattern_json(&g)).unwrap(),
                }
            }
            Ok(out)
        }
        Command::Lexmax { family } => extreme(format, &family.family()?, Extreme::Max),
        Command::Lexmin { family } => extreme(format, &family.family()?, Extreme::Min),
        Command::Pg { pattern, k } => {
            let g = load_pattern(&pattern.pattern)?;
            let v = GtFamily::p_g(&g, k.k as i64).map_err(|e| Failure::Input(format!("--pattern: {e}")))?;
            Ok(render(format, format!("{v}\n"), json!({"k": k.k, "p_g": big(&v)})))
        }
        Command::Poly { family, kmax } => {
            let f = family.family()?;
            let values = poly::kostka_values(&f, kmax);
            let mut doc = match poly::fit(&values, default_degree_cap(&f)) {
                Ok(p) => p.to_json(&check_nonnegativity(&p)),
                Err(e) => json!({"coeffs": [], "quasi_period": null, "violations": [], "error": e.to_string()}),
            };
            doc["values"] = json!(values.iter().map(|(_, v)| v.to_string()).collect::<Vec<_>>());
            let text = poly_text(&doc);
            Ok(render(format, text, doc))
        }
        Command::PgSweep { family, kmax } => {
            let f = family.family()?;
            let entries = poly::pg_sweep(&f, kmax);
            let mut out = String::new();
            for e in &entries {
                let doc = e.to_json();
                match format {
                    Format::Json => writeln!(out, "{doc}").unwrap(),
                    Format::Text => writeln!(out, "{}: {}", serde_json::to_string(&e.pattern.rows_top_down()).unwrap(), poly_text(&doc).trim_end()).unwrap(),
                }
            }
            let deviations = entries.iter().filter(|e| !e.is_clean()).count();
            if format == Format::Text {
                writeln!(out, "{} patterns, {} deviations", entries.len(), deviations).unwrap();
            }
            let top_ok = entries.iter().filter(|e| e.is_lex_max).all(|e| {
                let kostka = poly::fit(&poly::kostka_values(&f, kmax), default_degree_cap(&f));
                match (&e.fit, kostka) {
                    (Ok(a), Ok(b)) => a.pieces == b.pieces,
                    (Err(_), Err(_)) => true,
                    _ => false,
                }
            });
            if !top_ok {
                return Err(Failure::Internal("lex-max fit differs from the stretched count fit".into()));
            }
            Ok(out)
        }
        Command::Verify { max_size, k } => verify(format, max_size, &k),
        Command::SeedFigures { out } => seed_figures(format, &out),
    }
}

fn poly_text(doc: &Value) -> String {
    if let Some(err) = doc.get("error") {
        return format!("no fit: {}\n", err.as_str().unwrap_or_default());
    }
    let period = doc["quasi_period"].as_u64().unwrap_or(1);
    let mut text = String::new();
    for (r, piece) in doc["pieces"].as_array().into_iter().flatten().enumerate() {
        let terms: Vec<String> = piece
            .as_array()
            .into_iter()
            .flatten()
            .enumerate()
            .filter(|(_, c)| c.as_str() != Some("0"))
            .map(|(d, c)| match d {
                0 => c.as_str().unwrap_or_default().to_string(),
                1 => format!("({})k", c.as_str().unwrap_or_default()),
                _ => format!("({})k^{d}", c.as_str().unwrap_or_default()),
            })
            .collect();
        let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        if period == 1 {
            writeln!(text, "{body}").unwrap();
        } else {
            writeln!(text, "k = {r} mod {period}: {body}").unwrap();
        }
    }
    let violations = doc["violations"].as_array().map_or(0, Vec::len);
    if violations > 0 {
        writeln!(text, "negative coefficients: {violations}").unwrap();
    }
    text
}

fn extreme(format: Format, f: &GtFamily, which: Extreme) -> Result<String, Failure> {
    Ok(match f.lex_extreme(which) {
        Some(g) => render(format, g.render(), pattern_json(&g)),
        None => render(format, "none\n".into(), Value::Null),
    })
}

fn verify(format: Format, max_size: u64, ks: &[u64]) -> Result<String, Failure> {
    if let Some(bad) = ks.iter().find(|&&k| k == 0) {
        return Err(Failure::Input(format!("--k: stretch factor {bad} must be positive")));
    }
    let families = all_families(max_size);
    let jobs: Vec<(GtFamily, u64)> = ks.iter().flat_map(|&k| families.iter().map(move |f| (f.clone(), k))).collect();
    let results: Vec<(String, bool)> = jobs
        .par_iter()
        .map(|(f, k)| {
            let sat = check_saturation(f, *k);
            let kf = check_k_fulton(f, *k);
            let ok = sat.ok && kf.ok;
            let mut line: Value = serde_json::from_str(&sat.to_json_line()).expect("report lines are JSON");
            line["k_fulton_ok"] = json!(kf.ok);
            line["ok"] = json!(ok);
            (line.to_string(), ok)
        })
        .collect();
    let failures: Vec<&String> = results.iter().filter(|(_, ok)| !ok).map(|(l, _)| l).collect();
    let mut out = String::new();
    if format == Format::Json {
        for (line, _) in &results {
            writeln!(out, "{line}").unwrap();
        }
    } else {
        for line in &failures {
            writeln!(out, "violation: {line}").unwrap();
        }
    }
    if failures.is_empty() {
        if format == Format::Text {
            writeln!(out, "checked {} families for k in {:?}", families.len(), ks).unwrap();
            out.push_str("ok: all equivalences hold\n");
        }
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Internal(format!("{} violations", failures.len())))
    }
}

fn seed_figures(format: Format, out: &Path) -> Result<String, Failure> {
    std::fs::create_dir_all(out).map_err(|e| Failure::Input(format!("--out: {e}")))?;
    let mut names = Vec::new();
    for (name, text) in fixture_documents() {
        let path = out.join(&name);
        std::fs::write(&path, text).map_err(|e| Failure::Input(format!("--out: {}: {e}", path.display())))?;
        names.push(name);
    }
    let text = names.iter().map(|n| format!("wrote {n}\n")).collect();
    Ok(render(format, text, json!({"written": names})))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(1);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: --jobs: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(2)
        }
    }
}
