//! Driving a stretched pattern to one with every entry a multiple of `k`,
//! and exhaustive checks of the saturation and `K = 1` equivalences.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cycles::{find_simple_cycle, ordering_check, CycleError, SignedCycle, SnakeGraph};
use crate::enumeration::{Extreme, GtFamily};
use crate::pattern::{GtPattern, PatternError};
use crate::snakes::canonical_snake_partition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Direction {
    /// Keep the lexicographically larger result of each cycle.
    Up,
    /// Keep the lexicographically smaller result.
    Down,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SaturationError {
    #[error("shape and type are not all divisible by {k}")]
    NotStretched { k: i64 },
    #[error("invariant broken: {0}")]
    Internal(String),
    #[error("no fixed point after {0} steps")]
    StepBudget(usize),
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SaturationStep {
    pub cycle: SignedCycle,
    pub direction: Direction,
    pub key: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaturationTrace {
    pub initial: GtPattern,
    pub steps: Vec<SaturationStep>,
    pub final_pattern: GtPattern,
}

fn is_stretched(g: &GtPattern, k: i64) -> bool {
    let (shape, nu) = g.shape_type();
    let k = k as u64;
    let div = |parts: &[u64]| parts.iter().all(|p| p % k == 0);
    div(shape.outer().parts()) && div(shape.inner().parts()) && div(nu.parts())
}

/// Applies simple snake cycles until no snake is left. The step budget is
/// one more than the size of the family.
pub fn saturate(g: &GtPattern, k: i64, direction: Direction) -> Result<SaturationTrace, SaturationError> {
    if k < 1 || !is_stretched(g, k) {
        return Err(SaturationError::NotStretched { k });
    }
    let size = GtFamily::of(g).count_dp();
    let budget = (size + BigUint::one()).to_usize().unwrap_or(usize::MAX);
    saturate_within(g, k, direction, budget)
}

/// [`saturate`] with an explicit step budget.
pub fn saturate_within(g: &GtPattern, k: i64, direction: Direction, budget: usize) -> Result<SaturationTrace, SaturationError> {
    if k < 1 || !is_stretched(g, k) {
        return Err(SaturationError::NotStretched { k });
    }
    let mut current = g.clone();
    let mut steps = Vec::new();
    loop {
        let sp = canonical_snake_partition(&current, k);
        if sp.is_empty() {
            if !current.all_divisible_by(k) {
                return Err(SaturationError::Internal("no snakes but an entry is not a multiple of k".into()));
            }
            return Ok(SaturationTrace {
                initial: g.clone(),
                steps,
                final_pattern: current,
            });
        }
        if steps.len() >= budget {
            return Err(SaturationError::StepBudget(steps.len()));
        }
        let graph = SnakeGraph::new(&sp);
        let cycle = find_simple_cycle(&graph)
            .ok_or_else(|| SaturationError::Internal("snakes exist but the snake graph has no cycle".into()))?;
        let check = ordering_check(&current, &sp, &cycle)?;
        if !check.is_strict_sandwich(&current) {
            return Err(SaturationError::Internal("cycle results do not surround the pattern".into()));
        }
        let (next, used) = match direction {
            Direction::Up if check.larger() == &check.forward => (check.forward, cycle),
            Direction::Up => (check.reversed, cycle.reverse()),
            Direction::Down if check.smaller() == &check.forward => (check.forward, cycle),
            Direction::Down => (check.reversed, cycle.reverse()),
        };
        steps.push(SaturationStep {
            cycle: used,
            direction,
            key: next.lex_key(),
        });
        current = next;
    }
}

/// Divides every entry by `k`.
pub fn project(g: &GtPattern, k: i64) -> Result<GtPattern, PatternError> {
    g.divide(k)
}

/// Stretched pattern to unstretched pattern, through saturation upwards.
pub fn saturate_and_project(g: &GtPattern, k: i64) -> Result<(GtPattern, usize), SaturationError> {
    let trace = saturate(g, k, Direction::Up)?;
    Ok((project(&trace.final_pattern, k)?, trace.steps.len()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaturationReport {
    pub family: GtFamily,
    pub k: u64,
    pub stretched_count: BigUint,
    pub base_count: BigUint,
    /// Saturation steps used for the witness.
    pub steps: Option<usize>,
    pub witness: Option<GtPattern>,
    pub error: Option<String>,
    pub ok: bool,
}

impl SaturationReport {
    pub fn to_json_line(&self) -> String {
        #[derive(Serialize)]
        struct Line<'a> {
            lambda: &'a [u64],
            mu: &'a [u64],
            nu: &'a [u64],
            k: u64,
            stretched_count: String,
            base_count: String,
            ok: bool,
            steps: Option<usize>,
        }
        serde_json::to_string(&Line {
            lambda: self.family.lambda.parts(),
            mu: self.family.mu.parts(),
            nu: self.family.nu.parts(),
            k: self.k,
            stretched_count: self.stretched_count.to_string(),
            base_count: self.base_count.to_string(),
            ok: self.ok,
            steps: self.steps,
        })
        .expect("plain data serialises")
    }
}

/// Checks that the stretched family is nonempty exactly when the base family
/// is, and turns the middle stretched member into a base member.
pub fn check_saturation(family: &GtFamily, k: u64) -> SaturationReport {
    let base_count = family.count_dp();
    let stretched = family.stretch(k).expect("small stretch factors do not overflow");
    let stretched_count = stretched.count_dp();
    let mut report = SaturationReport {
        family: family.clone(),
        k,
        ok: base_count.is_zero() == stretched_count.is_zero(),
        stretched_count: stretched_count.clone(),
        base_count,
        steps: None,
        witness: None,
        error: None,
    };
    if stretched_count.is_zero() {
        return report;
    }
    let middle = (&stretched_count / 2u32).to_usize().unwrap_or(0);
    let start = stretched.iter().nth(middle).expect("index below the count");
    match saturate_and_project(&start, k as i64) {
        Ok((w, steps)) => {
            report.ok &= family.contains(&w);
            report.steps = Some(steps);
            report.witness = Some(w);
        }
        Err(e) => {
            report.ok = false;
            report.error = Some(e.to_string());
        }
    }
    report
}

/// How the map from the stretched family to the base family behaves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollisionStats {
    pub stretched: usize,
    pub distinct_images: usize,
    pub failures: usize,
}

impl CollisionStats {
    pub fn is_injective(&self) -> bool {
        self.failures == 0 && self.distinct_images == self.stretched
    }
}

pub fn collision_stats(family: &GtFamily, k: u64) -> CollisionStats {
    let stretched = family.stretch(k).expect("small stretch factors do not overflow");
    let members: Vec<GtPattern> = stretched.iter().collect();
    let images: Vec<Option<Vec<i64>>> = members
        .par_iter()
        .map(|g| saturate_and_project(g, k as i64).ok().map(|(w, _)| w.lex_key()))
        .collect();
    let failures = images.iter().filter(|i| i.is_none()).count();
    let distinct: BTreeSet<_> = images.into_iter().flatten().collect();
    CollisionStats {
        stretched: members.len(),
        distinct_images: distinct.len(),
        failures,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KFultonReport {
    pub family: GtFamily,
    pub k: u64,
    pub stretched_count: BigUint,
    pub base_count: BigUint,
    /// When the stretched family has several members: its extremes are
    /// distinct, consist of multiples of `k`, and project to distinct base
    /// members.
    pub extremes_ok: bool,
    pub ok: bool,
}

pub fn check_k_fulton(family: &GtFamily, k: u64) -> KFultonReport {
    let base_count = family.count_dp();
    let stretched = family.stretch(k).expect("small stretch factors do not overflow");
    let stretched_count = stretched.count_dp();
    let one = BigUint::one();
    let equivalence = (base_count == one) == (stretched_count == one);
    let extremes_ok = if stretched_count > one {
        match (stretched.lex_extreme(Extreme::Min), stretched.lex_extreme(Extreme::Max)) {
            (Some(lo), Some(hi)) => {
                let kk = k as i64;
                lo != hi
                    && lo.all_divisible_by(kk)
                    && hi.all_divisible_by(kk)
                    && matches!((lo.divide(kk), hi.divide(kk)), (Ok(a), Ok(b)) if a != b)
            }
            _ => false,
        }
    } else {
        true
    };
    KFultonReport {
        family: family.clone(),
        k,
        stretched_count,
        base_count,
        extremes_ok,
        ok: equivalence && extremes_ok,
    }
}
