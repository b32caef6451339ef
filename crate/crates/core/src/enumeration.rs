//! Exhaustive generation of pattern families: counts, lexicographic extremes
//! and the prefix counts `p_G(k)`.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::pattern::{GtPattern, PatternError};
use crate::shapes::{Composition, Partition, ShapeError, SkewShape};
use crate::tableau::for_each_filling;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error("the pattern does not belong to the family")]
    NotAMember,
}

/// All patterns with top row `lambda`, bottom row `mu` and type `nu`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GtFamily {
    pub lambda: Partition,
    pub mu: Partition,
    pub nu: Composition,
}

impl GtFamily {
    /// Requires `mu` inside `lambda`. A size mismatch gives an empty family.
    pub fn new(lambda: Partition, mu: Partition, nu: Composition) -> Result<Self, FamilyError> {
        SkewShape::new(lambda.clone(), mu.clone())?;
        Ok(Self { lambda, mu, nu })
    }

    pub fn m(&self) -> usize {
        self.nu.len() + 1
    }

    pub fn n(&self) -> usize {
        self.lambda.len().max(self.mu.len()).max(1)
    }

    pub fn shape(&self) -> SkewShape {
        SkewShape::new(self.lambda.clone(), self.mu.clone()).expect("containment checked on construction")
    }

    pub fn sizes_match(&self) -> bool {
        self.lambda.size() == self.mu.size() + self.nu.size()
    }

    pub fn stretch(&self, k: u64) -> Result<Self, FamilyError> {
        Ok(Self {
            lambda: self.lambda.stretch(k)?,
            mu: self.mu.stretch(k)?,
            nu: self.nu.stretch(k)?,
        })
    }

    /// The family of a pattern.
    pub fn of(g: &GtPattern) -> Self {
        let (shape, nu) = g.shape_type();
        Self {
            lambda: shape.outer().clone(),
            mu: shape.inner().clone(),
            nu,
        }
    }

    pub fn contains(&self, g: &GtPattern) -> bool {
        g.m() == self.m() && g.n() == self.n() && Self::of(g) == *self
    }

    fn plan(&self) -> Option<Plan> {
        if !self.sizes_match() {
            return None;
        }
        let n = self.n();
        let to_row = |p: &Partition| p.padded(n).into_iter().map(|v| v as i64).collect::<Vec<_>>();
        let lambda = to_row(&self.lambda);
        let mu = to_row(&self.mu);
        let mut sums = vec![mu.iter().sum::<i64>()];
        for &part in self.nu.parts() {
            let next = sums[sums.len() - 1] + part as i64;
            sums.push(next);
        }
        Some(Plan {
            m: self.m(),
            n,
            lambda,
            mu,
            sums,
        })
    }

    /// Streams members in increasing lexicographic order.
    pub fn iter(&self) -> FamilyIter {
        FamilyIter::new(self.plan())
    }

    /// Number of members, counted by a parallel depth-first search split at
    /// the second row.
    pub fn count(&self) -> BigUint {
        let Some(plan) = self.plan() else {
            return BigUint::zero();
        };
        if plan.m == 1 {
            return BigUint::one();
        }
        let seconds = plan.candidates(1, &plan.mu);
        let parts: Vec<u64> = seconds.par_iter().map(|row| plan.count_from(2, row)).collect();
        parts.into_iter().map(BigUint::from).sum()
    }

    /// Number of members, by memoised completion counts.
    pub fn count_dp(&self) -> BigUint {
        let Some(plan) = self.plan() else {
            return BigUint::zero();
        };
        let mut memo = Memo::default();
        plan.completions(1, &plan.mu.clone(), &mut memo)
    }

    /// Number of semistandard fillings, by direct tableau search.
    pub fn count_via_tableaux(&self) -> BigUint {
        let mut count: u64 = 0;
        for_each_filling(&self.shape(), &self.nu, |_| {
            count += 1;
            true
        });
        BigUint::from(count)
    }

    /// Lexicographically smallest or largest member.
    pub fn lex_extreme(&self, which: Extreme) -> Option<GtPattern> {
        let plan = self.plan()?;
        let mut memo = Memo::default();
        let mut rows = vec![plan.mu.clone()];
        for level in 1..plan.m {
            let mut candidates = plan.candidates(level, &rows[level - 1]);
            if which == Extreme::Max {
                candidates.reverse();
            }
            let pick = candidates
                .into_iter()
                .find(|row| !plan.completions(level + 1, row, &mut memo).is_zero())?;
            rows.push(pick);
        }
        Some(GtPattern::new(rows).expect("generated rows satisfy every inequality"))
    }

    /// Number of members of the `k`-stretched family that are
    /// lexicographically at most `k * g`.
    pub fn p_g(g: &GtPattern, k: i64) -> Result<BigUint, FamilyError> {
        let bound = g.scale(k)?;
        let family = Self::of(&bound);
        let plan = family.plan().ok_or(FamilyError::NotAMember)?;
        let mut memo = Memo::default();
        let mut total = BigUint::zero();
        for level in 1..plan.m {
            let target = bound.row(level + 1);
            let mut on_path = false;
            for row in plan.candidates(level, bound.row(level)) {
                match row.as_slice().cmp(target) {
                    std::cmp::Ordering::Less => total += plan.completions(level + 1, &row, &mut memo),
                    std::cmp::Ordering::Equal => {
                        on_path = true;
                        break;
                    }
                    std::cmp::Ordering::Greater => break,
                }
            }
            if !on_path {
                return Err(FamilyError::NotAMember);
            }
        }
        Ok(total + BigUint::one())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Extreme {
    Min,
    Max,
}

type Memo = HashMap<(usize, Vec<i64>), BigUint>;

/// Row data for generating a family.
#[derive(Debug, Clone)]
struct Plan {
    m: usize,
    n: usize,
    lambda: Vec<i64>,
    mu: Vec<i64>,
    /// `sums[i]` is the required sum of row `i + 1`.
    sums: Vec<i64>,
}

impl Plan {
    /// Entrywise bounds for row `level + 1` above `below` (row `level`).
    fn bounds(&self, level: usize, below: &[i64]) -> Option<(Vec<i64>, Vec<i64>)> {
        let n = self.n;
        let gap = self.m - level - 1;
        let mut lo = Vec::with_capacity(n);
        let mut hi = Vec::with_capacity(n);
        for j in 0..n {
            let from_top = self.lambda.get(j + gap).copied().unwrap_or(0);
            let l = below[j].max(from_top);
            let mut h = self.lambda[j];
            if j > 0 {
                h = h.min(below[j - 1]);
            }
            if l > h {
                return None;
            }
            lo.push(l);
            hi.push(h);
        }
        Some((lo, hi))
    }

    /// Candidate rows `level + 1` above `below`, in lexicographic order.
    fn candidates(&self, level: usize, below: &[i64]) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        let Some(b) = RowBox::new(self, level, below) else {
            return out;
        };
        let mut cur = b.first();
        while let Some(row) = cur {
            cur = b.next(&row);
            out.push(row);
        }
        out
    }

    /// Number of completions once row `level` is fixed to `row`.
    fn count_from(&self, level: usize, row: &[i64]) -> u64 {
        if level == self.m {
            return 1;
        }
        let Some(b) = RowBox::new(self, level, row) else {
            return 0;
        };
        let mut total = 0;
        let mut cur = b.first();
        while let Some(next) = cur {
            total += self.count_from(level + 1, &next);
            cur = b.next(&next);
        }
        total
    }

    fn completions(&self, level: usize, row: &[i64], memo: &mut Memo) -> BigUint {
        if level == self.m {
            return BigUint::one();
        }
        if let Some(v) = memo.get(&(level, row.to_vec())) {
            return v.clone();
        }
        let mut total = BigUint::zero();
        for next in self.candidates(level, row) {
            total += self.completions(level + 1, &next, memo);
        }
        memo.insert((level, row.to_vec()), total.clone());
        total
    }
}

/// Integer vectors between `lo` and `hi` with a fixed sum, walked in
/// lexicographic order.
struct RowBox {
    lo: Vec<i64>,
    hi: Vec<i64>,
    sum: i64,
    /// `lo_suffix[j]` is the sum of `lo[j..]`; likewise `hi_suffix`.
    lo_suffix: Vec<i64>,
    hi_suffix: Vec<i64>,
}

impl RowBox {
    fn new(plan: &Plan, level: usize, below: &[i64]) -> Option<Self> {
        let (lo, hi) = plan.bounds(level, below)?;
        let suffix = |v: &[i64]| {
            let mut s = vec![0; v.len() + 1];
            for j in (0..v.len()).rev() {
                s[j] = s[j + 1] + v[j];
            }
            s
        };
        let lo_suffix = suffix(&lo);
        let hi_suffix = suffix(&hi);
        Some(Self {
            sum: plan.sums[level],
            lo,
            hi,
            lo_suffix,
            hi_suffix,
        })
    }

    /// Smallest completion of positions `from..` summing to `rest`.
    fn fill_min(&self, row: &mut Vec<i64>, from: usize, mut rest: i64) {
        row.truncate(from);
        for j in from..self.lo.len() {
            let v = self.lo[j].max(rest - self.hi_suffix[j + 1]);
            row.push(v);
            rest -= v;
        }
    }

    fn first(&self) -> Option<Vec<i64>> {
        if self.sum < self.lo_suffix[0] || self.sum > self.hi_suffix[0] {
            return None;
        }
        let mut row = Vec::with_capacity(self.lo.len());
        self.fill_min(&mut row, 0, self.sum);
        Some(row)
    }

    fn next(&self, cur: &[i64]) -> Option<Vec<i64>> {
        let n = self.lo.len();
        let mut prefix: i64 = cur.iter().sum();
        for j in (0..n).rev() {
            prefix -= cur[j];
            let v = cur[j] + 1;
            if v > self.hi[j] {
                continue;
            }
            let rest = self.sum - prefix - v;
            if rest < self.lo_suffix[j + 1] || rest > self.hi_suffix[j + 1] {
                continue;
            }
            let mut row = cur[..j].to_vec();
            row.push(v);
            self.fill_min(&mut row, j + 1, rest);
            return Some(row);
        }
        None
    }
}

/// Lexicographic stream over a family, built one row at a time from the
/// bottom up.
pub struct FamilyIter {
    plan: Option<Plan>,
    rows: Vec<Vec<i64>>,
    started: bool,
}

impl FamilyIter {
    fn new(plan: Option<Plan>) -> Self {
        let rows = plan.as_ref().map(|p| vec![p.mu.clone()]).unwrap_or_default();
        Self {
            plan,
            rows,
            started: false,
        }
    }
}

/// Extends the prefix with first candidates, backtracking on dead ends.
/// Returns false when the search is exhausted.
fn descend(plan: &Plan, rows: &mut Vec<Vec<i64>>) -> bool {
    while rows.len() < plan.m {
        let level = rows.len();
        match RowBox::new(plan, level, &rows[level - 1]).and_then(|b| b.first()) {
            Some(row) => rows.push(row),
            None => {
                if !advance(plan, rows) {
                    return false;
                }
            }
        }
    }
    true
}

/// Replaces the deepest row by its successor, popping exhausted rows.
fn advance(plan: &Plan, rows: &mut Vec<Vec<i64>>) -> bool {
    while rows.len() > 1 {
        let last = rows.pop().expect("nonempty");
        let level = rows.len();
        if let Some(row) = RowBox::new(plan, level, &rows[level - 1]).and_then(|b| b.next(&last)) {
            rows.push(row);
            return true;
        }
    }
    false
}

impl Iterator for FamilyIter {
    type Item = GtPattern;

    fn next(&mut self) -> Option<GtPattern> {
        let plan = self.plan.as_ref()?;
        let ok = if self.started {
            advance(plan, &mut self.rows) && descend(plan, &mut self.rows)
        } else {
            self.started = true;
            descend(plan, &mut self.rows)
        };
        if !ok {
            self.plan = None;
            return None;
        }
        Some(GtPattern::new(self.rows.clone()).expect("generated rows satisfy every inequality"))
    }
}

/// Every family with `|lambda| <= max_size`, `mu` inside `lambda` and `nu` a
/// composition of `|lambda| - |mu|` into positive parts.
pub fn all_families(max_size: u64) -> Vec<GtFamily> {
    let mut out = Vec::new();
    for size in 0..=max_size {
        for lambda in Partition::all_of_size(size) {
            for mu in lambda.subpartitions() {
                for nu in Composition::all_positive_of_size(size - mu.size()) {
                    out.push(GtFamily {
                        lambda: lambda.clone(),
                        mu: mu.clone(),
                        nu,
                    });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::figures;
    use proptest::prelude::*;

    fn fam(lambda: &[u64], mu: &[u64], nu: &[u64]) -> GtFamily {
        GtFamily::new(
            Partition::new(lambda.to_vec()).unwrap(),
            Partition::new(mu.to_vec()).unwrap(),
            Composition::new(nu.to_vec()),
        )
        .unwrap()
    }

    /// Brute force over every matrix with entries in `0..=lambda_1`.
    fn brute_force(f: &GtFamily) -> Vec<GtPattern> {
        let (m, n) = (f.m(), f.n());
        let top = f.lambda.part(0) as i64;
        let cells = m * n;
        let mut out = Vec::new();
        let mut digits = vec![0i64; cells];
        loop {
            let rows: Vec<Vec<i64>> = digits.chunks(n).map(<[i64]>::to_vec).collect();
            if let Ok(g) = GtPattern::new(rows) {
                if f.contains(&g) {
                    out.push(g);
                }
            }
            let mut idx = 0;
            while idx < cells && digits[idx] == top {
                digits[idx] = 0;
                idx += 1;
            }
            if idx == cells {
                break;
            }
            digits[idx] += 1;
        }
        out.sort_by_key(GtPattern::lex_key);
        out
    }

    #[test]
    fn two_fillings_of_21() {
        let f = fam(&[2, 1], &[], &[1, 1, 1]);
        assert_eq!(f.count(), BigUint::from(2u32));
        assert_eq!(f.count_dp(), BigUint::from(2u32));
        assert_eq!(f.count_via_tableaux(), BigUint::from(2u32));
    }

    #[test]
    fn bijection_family_contains_the_example() {
        let f = fam(&[6, 4, 3, 3], &[3, 2, 1], &[2, 3, 2, 3]);
        let g = figures::bijection_pattern();
        assert!(f.iter().any(|h| h == g));
        assert_eq!(f.count(), f.count_via_tableaux());
    }

    #[test]
    fn lambda_equal_to_nu_has_one_member() {
        let f = fam(&[3, 2, 2], &[], &[3, 2, 2]);
        assert_eq!(f.count(), BigUint::one());
        assert_eq!(f.count_via_tableaux(), BigUint::one());
        assert_eq!(fam(&[3, 1], &[3, 1], &[]).count(), BigUint::one());
        assert_eq!(fam(&[3, 1], &[3, 1], &[]).count_via_tableaux(), BigUint::one());
    }

    #[test]
    fn size_mismatch_is_empty() {
        let f = fam(&[3, 1], &[], &[1, 1]);
        assert!(f.count().is_zero());
        assert!(f.iter().next().is_none());
        assert!(f.lex_extreme(Extreme::Min).is_none());
    }

    #[test]
    fn matches_brute_force_on_tiny_families() {
        for f in all_families(4) {
            let expected = brute_force(&f);
            let got: Vec<GtPattern> = f.iter().collect();
            assert_eq!(got, expected, "{f:?}");
            assert_eq!(f.count(), BigUint::from(expected.len()));
            assert_eq!(f.count_dp(), BigUint::from(expected.len()));
            assert_eq!(f.lex_extreme(Extreme::Min).as_ref(), expected.first());
            assert_eq!(f.lex_extreme(Extreme::Max).as_ref(), expected.last());
        }
    }

    #[test]
    fn stream_is_strictly_increasing() {
        for f in all_families(5) {
            let keys: Vec<Vec<i64>> = f.iter().map(|g| g.lex_key()).collect();
            assert!(keys.windows(2).all(|w| w[0] < w[1]), "{f:?}");
            assert_eq!(BigUint::from(keys.len()), f.count());
        }
    }

    #[test]
    fn count_ignores_order_of_nu() {
        let lambda = [4, 2, 1];
        for nu in [[1, 2, 4], [2, 1, 4], [4, 2, 1], [1, 4, 2], [2, 4, 1], [4, 1, 2]] {
            assert_eq!(fam(&lambda, &[], &nu).count(), BigUint::from(1u32));
        }
        let skew = [[1, 2, 3], [3, 2, 1], [2, 3, 1]];
        let counts: Vec<BigUint> = skew.iter().map(|nu| fam(&[4, 3, 1], &[2], nu).count()).collect();
        assert!(counts.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn positivity_matches_dominance() {
        for size in 0..=8 {
            for lambda in Partition::all_of_size(size) {
                for nu in Partition::all_of_size(size) {
                    let f = GtFamily::new(lambda.clone(), Partition::empty(), Composition::new(nu.parts().to_vec())).unwrap();
                    assert_eq!(!f.count_dp().is_zero(), lambda.dominates(&nu), "{lambda} {nu}");
                }
            }
        }
    }

    #[test]
    fn p_g_at_one_is_the_rank() {
        for f in all_families(4) {
            for (rank, g) in f.iter().enumerate() {
                assert_eq!(GtFamily::p_g(&g, 1).unwrap(), BigUint::from(rank + 1));
            }
        }
    }

    #[test]
    fn p_g_matches_filtering() {
        for f in all_families(3) {
            for g in f.iter() {
                for k in 2..=3 {
                    let bound = g.scale(k).unwrap().lex_key();
                    let stretched = f.stretch(k as u64).unwrap();
                    let expected = stretched.iter().filter(|h| h.lex_key() <= bound).count();
                    assert_eq!(GtFamily::p_g(&g, k).unwrap(), BigUint::from(expected));
                }
            }
        }
    }

    #[test]
    fn p_g_of_the_maximum_is_the_count() {
        let f = fam(&[2, 1], &[], &[1, 1, 1]);
        let top = f.lex_extreme(Extreme::Max).unwrap();
        for k in 1..=5u64 {
            assert_eq!(
                GtFamily::p_g(&top, k as i64).unwrap(),
                f.stretch(k).unwrap().count()
            );
        }
        let low = f.lex_extreme(Extreme::Min).unwrap();
        assert_eq!(GtFamily::p_g(&low, 1).unwrap(), BigUint::one());
    }

    proptest! {
        #[test]
        fn three_counters_agree(idx in 0usize..2000) {
            let families = all_families(5);
            let f = &families[idx % families.len()];
            let c = f.count();
            prop_assert_eq!(&c, &f.count_dp());
            prop_assert_eq!(&c, &f.count_via_tableaux());
        }
    }
}
