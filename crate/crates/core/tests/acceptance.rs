//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero when the set of failing criteria differs from the documented one.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use skew_gt::cycles::{
    apply_cycle, apply_signs, find_simple_cycle, ordering_check, CycleError, SignedCycle, SnakeGraph,
};
use skew_gt::enumeration::{all_families, Extreme, GtFamily};
use skew_gt::figures;
use skew_gt::poly::{fit, int, kostka_values, pg_sweep};
use skew_gt::saturation::{check_k_fulton, check_saturation, saturate_and_project};
use skew_gt::snakes::{canonical_snake_partition_in, canonical_with_tiling, start_end_balance_violations, SnakeScope};
use skew_gt::tableau::{to_tableau, SkewTableau};
use skew_gt::tiling::Tiling;
use skew_gt::{Composition, GtPattern, Partition, SkewShape};

/// Criteria whose printed data cannot be met; each is analysed in the
/// project notes. Criterion 1: the printed tableau has content (2,3,2,3)
/// while the stated type is (3,2,3,2).
const EXPECTED_FAILURES: &[u32] = &[1];

const GRID_SIZE: u64 = 6;
const STRETCHES: [u64; 2] = [2, 3];

struct Outcome {
    violations: Vec<String>,
    summary: String,
}

impl Outcome {
    fn new(summary: impl Into<String>) -> Self {
        Self {
            violations: Vec::new(),
            summary: summary.into(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.violations.push(what());
        }
    }
}

fn stretched_grid() -> Vec<(GtFamily, u64, GtFamily)> {
    let families = all_families(GRID_SIZE);
    STRETCHES
        .iter()
        .flat_map(|&k| families.iter().map(move |f| (f.clone(), k, f.stretch(k).unwrap())))
        .collect()
}

fn criterion_1() -> Outcome {
    let g = figures::bijection_pattern();
    let printed = SkewTableau::from_rows_with_inner(figures::BIJECTION_TABLEAU.iter().map(|r| r.to_vec()).collect())
        .expect("printed tableau is a skew tableau");
    let mut out = Outcome::new("bijection pattern <-> printed tableau");
    let t = to_tableau(&g);
    out.check(t == printed, || format!("pattern converts to\n{t}"));
    let back = printed.to_pattern(g.m());
    out.check(back.as_ref() == Ok(&g), || format!("tableau converts back to {back:?}"));
    let shape = SkewShape::new(Partition::new(vec![6, 4, 3, 3]).unwrap(), Partition::new(vec![3, 2, 1]).unwrap()).unwrap();
    out.check(g.shape() == shape, || format!("shape {}", g.shape()));
    let stated = Composition::new(vec![3, 2, 3, 2]);
    out.check(g.content() == stated, || {
        format!(
            "type is {} (tableau content {}), stated type is {stated}",
            g.content(),
            printed.content(4)
        )
    });
    out
}

fn criterion_2() -> Outcome {
    let families = all_families(GRID_SIZE);
    let mismatches: Vec<String> = families
        .par_iter()
        .filter_map(|f| {
            let (a, b, c) = (f.count(), f.count_via_tableaux(), f.count_dp());
            (a != b || b != c).then(|| format!("{f:?}: enumeration {a}, tableaux {b}, dp {c}"))
        })
        .collect();
    let mut out = Outcome::new(format!("{} families, three counters", families.len()));
    out.violations = mismatches;
    out
}

fn criterion_3(grid: &[(GtFamily, u64, GtFamily)]) -> Outcome {
    let results: Vec<(Vec<String>, usize)> = grid
        .par_iter()
        .map(|(f, k, stretched)| {
            let mut bad = Vec::new();
            let report = check_saturation(f, *k);
            if !report.ok {
                bad.push(report.to_json_line());
            }
            let base_nonempty = !f.count_dp().is_zero();
            let mut witnesses = 0;
            for g in stretched.iter() {
                match saturate_and_project(&g, *k as i64) {
                    Ok((w, _)) if f.contains(&w) => witnesses += 1,
                    Ok((w, _)) => bad.push(format!("{:?} k={k}: witness {:?} outside the family", g.rows_top_down(), w.rows_top_down())),
                    Err(e) => bad.push(format!("{:?} k={k}: {e}", g.rows_top_down())),
                }
            }
            if witnesses > 0 && !base_nonempty {
                bad.push(format!("{f:?} k={k}: witnesses for an empty base family"));
            }
            (bad, witnesses)
        })
        .collect();
    let total: usize = results.iter().map(|r| r.1).sum();
    let mut out = Outcome::new(format!("{} (family, k) pairs, {total} stretched patterns saturated and projected", grid.len()));
    out.violations = results.into_iter().flat_map(|r| r.0).collect();
    out
}

fn criterion_4(grid: &[(GtFamily, u64, GtFamily)]) -> Outcome {
    let results: Vec<Option<String>> = grid
        .par_iter()
        .map(|(f, k, stretched)| {
            let lo = stretched.lex_extreme(Extreme::Min)?;
            let hi = stretched.lex_extreme(Extreme::Max)?;
            let mut members = stretched.iter();
            let first = members.next();
            let last = members.last().or_else(|| first.clone());
            let kk = *k as i64;
            let ok = lo.all_divisible_by(kk) && hi.all_divisible_by(kk) && first.as_ref() == Some(&lo) && last.as_ref() == Some(&hi);
            Some((!ok).then(|| format!("{f:?} k={k}: min {:?} max {:?}", lo.rows_top_down(), hi.rows_top_down())))
                .flatten()
        })
        .collect();
    let nonempty = grid.iter().filter(|(_, _, s)| !s.count_dp().is_zero()).count();
    let mut out = Outcome::new(format!("{nonempty} nonempty stretched families"));
    out.violations = results.into_iter().flatten().collect();
    out
}

fn criterion_5(grid: &[(GtFamily, u64, GtFamily)]) -> Outcome {
    let bad: Vec<String> = grid
        .par_iter()
        .filter_map(|(f, k, _)| {
            let r = check_k_fulton(f, *k);
            (!r.ok).then(|| format!("{f:?} k={k}: base {} stretched {} extremes_ok {}", r.base_count, r.stretched_count, r.extremes_ok))
        })
        .collect();
    let ones = grid.iter().filter(|(f, _, _)| f.count_dp().is_one()).count();
    let mut out = Outcome::new(format!("{} pairs, {ones} with a single base member", grid.len()));
    out.violations = bad;
    out
}

fn criterion_6() -> Outcome {
    let g = figures::signed_snakes_pattern();
    let sp = canonical_snake_partition_in(&g, figures::SNAKES_K, SnakeScope::AllFreeTiles);
    let graph = SnakeGraph::new(&sp);
    let mut out = Outcome::new("highlighted cycle on the signed snake figure");
    let cycle = match SignedCycle::from_snake_sequence(&graph, &figures::HIGHLIGHTED_CYCLE) {
        Ok(c) => c,
        Err(e) => {
            out.violations.push(format!("cycle not in the graph: {e}"));
            return out;
        }
    };
    out.check(cycle.signs() == figures::highlighted_signs(), || format!("signs {:?}", cycle.signs()));
    match apply_cycle(&g, &sp, &cycle) {
        Ok(result) => {
            let expected = figures::cycle_action_result();
            out.check(result == expected, || format!("result\n{}", result.render()));
            out.check(result.lex_key() > g.lex_key(), || "result is not lex-larger".into());
        }
        Err(e) => out.violations.push(e.to_string()),
    }
    out
}

fn criterion_7() -> Outcome {
    let g = figures::cycle_problem_pattern();
    let sp = canonical_snake_partition_in(&g, 3, SnakeScope::NonMultiples);
    let mut out = Outcome::new("non-simple cycle on the cycle-problem figure");
    match apply_signs(&g, &sp, &figures::cycle_problem_signs()) {
        Err(CycleError::PostValidationFailed { rows, .. }) => {
            out.check(rows == figures::cycle_problem_result_rows(), || format!("rows {rows:?}"));
            out.check(GtPattern::new(rows.clone()).is_err(), || "validate accepted the rows".into());
        }
        other => out.violations.push(format!("expected a validation failure, got {other:?}")),
    }
    out
}

fn snake_suite(g: &GtPattern, k: i64, scope: SnakeScope) -> Vec<String> {
    let mut bad = Vec::new();
    let tag = || format!("{:?} k={k} {scope:?}", g.rows_top_down());
    let tiling = Tiling::new(g);
    let sp = canonical_with_tiling(g, &tiling, k, scope);
    if !sp.is_proper() {
        bad.push(format!("{}: not proper", tag()));
    }
    let balance = start_end_balance_violations(&sp, &tiling);
    if !balance.is_empty() {
        bad.push(format!("{}: start/end balance {balance:?}", tag()));
    }
    // Tiles of divisible content may hold a lone snake, so the degree and
    // cycle claims only concern the snakes of non-divisible tiles.
    if scope != SnakeScope::NonMultiples {
        return bad;
    }
    if let Some(row) = sp.events_per_row().iter().position(|&e| e == 1) {
        bad.push(format!("{}: row {row} has one start/end event", tag()));
    }
    let graph = SnakeGraph::new(&sp);
    if let Some(v) = graph.degrees().iter().position(|&d| d == 1) {
        bad.push(format!("{}: vertex {v} has degree 1", tag()));
    }
    if let Some(cycle) = find_simple_cycle(&graph) {
        match ordering_check(g, &sp, &cycle) {
            Ok(check) => {
                for r in [&check.forward, &check.reversed] {
                    if r.shape_type() != g.shape_type() {
                        bad.push(format!("{}: cycle {:?} changes shape or type", tag(), cycle.snakes()));
                    }
                }
                if !check.is_strict_sandwich(g) {
                    bad.push(format!("{}: cycle {:?} is not a strict sandwich", tag(), cycle.snakes()));
                }
            }
            Err(e) => bad.push(format!("{}: cycle {:?}: {e}", tag(), cycle.snakes())),
        }
    } else if !sp.is_empty() {
        bad.push(format!("{}: snakes but no cycle", tag()));
    }
    bad
}

fn criterion_8(grid: &[(GtFamily, u64, GtFamily)]) -> Outcome {
    let patterns: Vec<(GtPattern, i64)> = grid
        .iter()
        .flat_map(|(_, k, s)| s.iter().map(move |g| (g, *k as i64)))
        .collect();
    let bad: Vec<String> = patterns
        .par_iter()
        .flat_map_iter(|(g, k)| {
            let mut v = snake_suite(g, *k, SnakeScope::NonMultiples);
            v.extend(snake_suite(g, *k, SnakeScope::AllFreeTiles));
            v
        })
        .collect();
    let mut out = Outcome::new(format!("{} stretched patterns; properness also with every free tile", patterns.len()));
    out.violations = bad;
    out
}

fn criterion_9() -> Outcome {
    let f = GtFamily::new(Partition::new(vec![2, 1]).unwrap(), Partition::empty(), Composition::new(vec![1, 1, 1])).unwrap();
    let values = kostka_values(&f, 5);
    let mut out = Outcome::new("stretched counts of (2,1) with content (1,1,1)");
    let expected: Vec<(u64, BigUint)> = (1..=5u64).map(|k| (k, BigUint::from(k + 1))).collect();
    out.check(values == expected, || format!("values {values:?}"));
    match fit(&values, 3) {
        Ok(p) => {
            out.check(p.quasi_period == 1 && p.coeffs() == [int(1), int(1)], || format!("fit {:?}", p.pieces));
        }
        Err(e) => out.violations.push(e.to_string()),
    }
    out
}

fn criterion_10() -> Outcome {
    let families: Vec<GtFamily> = all_families(5).into_iter().filter(|f| !f.count_dp().is_zero()).collect();
    let results: Vec<(usize, Vec<String>)> = families
        .par_iter()
        .map(|f| {
            let entries = pg_sweep(f, 8);
            let kostka = fit(&kostka_values(f, 8), skew_gt::poly::default_degree_cap(f));
            let mut bad = Vec::new();
            for e in &entries {
                let tag = format!("{f:?} G={:?}", e.pattern.rows_top_down());
                match &e.fit {
                    Ok(p) => {
                        if p.quasi_period != 1 {
                            bad.push(format!("{tag}: quasi-period {}", p.quasi_period));
                        }
                        if !e.negative.is_empty() {
                            bad.push(format!("{tag}: negative coefficients {:?}", e.negative));
                        }
                        if e.degree_anomaly {
                            bad.push(format!("{tag}: degree {} above the interior count", p.degree()));
                        }
                    }
                    Err(err) => bad.push(format!("{tag}: {err}")),
                }
                if e.is_lex_max {
                    let same = match (&e.fit, &kostka) {
                        (Ok(a), Ok(b)) => a.pieces == b.pieces,
                        _ => false,
                    };
                    if !same {
                        bad.push(format!("{tag}: lex-max fit differs from the stretched count fit"));
                    }
                }
            }
            (entries.len(), bad)
        })
        .collect();
    let patterns: usize = results.iter().map(|r| r.0).sum();
    let mut out = Outcome::new(format!("{} families, {patterns} patterns, k <= 8", families.len()));
    out.violations = results.into_iter().flat_map(|r| r.1).collect();
    out
}

fn main() {
    // `cargo test` passes harness flags such as `--nocapture` or a filter; a
    // filter that does not name this suite skips it.
    let args: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    if !args.is_empty() && !args.iter().any(|a| "acceptance".contains(a.as_str())) {
        return;
    }
    let grid_start = Instant::now();
    let grid = stretched_grid();
    let grid_time = grid_start.elapsed();
    type Run<'a> = Box<dyn Fn() -> Outcome + 'a>;
    let criteria: Vec<(u32, &str, Duration, Run)> = vec![
        (1, "bijection golden test", Duration::from_millis(1), Box::new(criterion_1)),
        (2, "oracle equivalence", Duration::from_secs(300), Box::new(criterion_2)),
        (3, "saturation audit", Duration::from_secs(900), Box::new(|| criterion_3(&grid))),
        (4, "lex-extreme divisibility", Duration::from_secs(900), Box::new(|| criterion_4(&grid))),
        (5, "K-Fulton audit", Duration::from_secs(900), Box::new(|| criterion_5(&grid))),
        (6, "cycle-action golden test", Duration::from_secs(1), Box::new(criterion_6)),
        (7, "non-simple cycle rejected", Duration::from_secs(1), Box::new(criterion_7)),
        (8, "snake-structure suite", Duration::from_secs(900), Box::new(|| criterion_8(&grid))),
        (9, "stretch polynomial k+1", Duration::from_secs(1), Box::new(criterion_9)),
        (10, "conjecture evidence sweep", Duration::from_secs(1800), Box::new(criterion_10)),
    ];
    println!("acceptance: grid of {} (family, k) pairs built in {grid_time:.2?}", grid.len());
    let mut failed = BTreeSet::new();
    for (id, name, limit, run) in &criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let on_time = elapsed <= *limit;
        let pass = outcome.violations.is_empty() && on_time;
        if !pass {
            failed.insert(*id);
        }
        println!(
            "{} criterion {id:>2} {name}: {} ({} violations, {elapsed:.2?} of {limit:?})",
            if pass { "PASS" } else { "FAIL" },
            outcome.summary,
            outcome.violations.len(),
        );
        for v in outcome.violations.iter().take(10) {
            println!("       {}", v.replace('\n', "\n       "));
        }
        if outcome.violations.len() > 10 {
            println!("       ... {} more", outcome.violations.len() - 10);
        }
    }
    let expected: BTreeSet<u32> = EXPECTED_FAILURES.iter().copied().collect();
    println!(
        "acceptance: {} of {} criteria pass; failing {:?}, documented {:?}",
        criteria.len() - failed.len(),
        criteria.len(),
        failed,
        expected
    );
    if failed != expected {
        std::process::exit(1);
    }
}
