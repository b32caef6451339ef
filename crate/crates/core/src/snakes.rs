//! Snakes inside free tiles: the canonical snake partition, properness,
//! membership interchange, extremal shifts and mixed tiles.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::pattern::{render_staircase, CellRef, GtPattern, PatternError};
use crate::tiling::{adjacent, is_connected, shape_violations, TileViolation, Tiling};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Snake {
    /// Ids start at 1.
    pub id: usize,
    /// One cell per row, sorted by ascending row.
    pub cells: Vec<CellRef>,
    pub host_tile: usize,
    pub content: i64,
}

impl Snake {
    /// Row of the topmost cell.
    pub fn start_row(&self) -> usize {
        self.cells[self.cells.len() - 1].row
    }

    /// One below the row of the lowest cell.
    pub fn end_row(&self) -> usize {
        self.cells[0].row - 1
    }

    pub fn cell_in_row(&self, row: usize) -> Option<CellRef> {
        self.cells.iter().copied().find(|c| c.row == row)
    }

    /// Whether the cells occupy consecutive rows with adjacent neighbours.
    pub fn is_connected_chain(&self) -> bool {
        self.cells
            .windows(2)
            .all(|w| w[1].row == w[0].row + 1 && adjacent(w[0], w[1]))
    }
}

/// `(start, end)` rows of a snake.
pub fn start_end_rows(s: &Snake) -> (usize, usize) {
    (s.start_row(), s.end_row())
}

/// Sign attached to a snake by a signed cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn delta(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

/// Snake id to sign; absent ids are unsigned.
pub type Signs = BTreeMap<usize, Sign>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SnakeError {
    #[error("no snake with id {0}")]
    UnknownSnake(usize),
    #[error("snakes {0} and {1} lie in different tiles")]
    DifferentTiles(usize, usize),
    #[error("snakes {0} and {1} are not immediately adjacent")]
    NotImmediatelyAdjacent(usize, usize),
    #[error("the snake partition of the tile is not proper")]
    NotProper,
    #[error("snake {0} is not extremal in its tile for this shift")]
    NotExtremalSnake(usize),
    #[error("shifting snake {snake} breaks the pattern: {source}")]
    WouldViolate { snake: usize, source: PatternError },
    #[error("sorting did not settle within {0} interchanges")]
    SortDidNotSettle(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnakePartition {
    m: usize,
    n: usize,
    snakes: Vec<Snake>,
    /// `membership[i-1][j-1]` is the snake id covering the cell.
    membership: Vec<Vec<Option<usize>>>,
}

impl SnakePartition {
    fn from_snakes(m: usize, n: usize, snakes: Vec<Snake>) -> Self {
        let mut membership = vec![vec![None; n]; m];
        for s in &snakes {
            for c in &s.cells {
                membership[c.row - 1][c.col - 1] = Some(s.id);
            }
        }
        Self {
            m,
            n,
            snakes,
            membership,
        }
    }

    pub fn snakes(&self) -> &[Snake] {
        &self.snakes
    }

    pub fn len(&self) -> usize {
        self.snakes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.snakes.is_empty()
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn snake(&self, id: usize) -> Result<&Snake, SnakeError> {
        id.checked_sub(1)
            .and_then(|k| self.snakes.get(k))
            .ok_or(SnakeError::UnknownSnake(id))
    }

    pub fn member_of(&self, c: CellRef) -> Option<usize> {
        self.membership[c.row - 1][c.col - 1]
    }

    /// Snake ids grouped by host tile.
    pub fn by_tile(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for s in &self.snakes {
            out.entry(s.host_tile).or_default().push(s.id);
        }
        out
    }

    /// Every tile has at most one start-or-end event per row.
    pub fn is_proper(&self) -> bool {
        self.by_tile().values().all(|ids| self.group_is_proper(ids))
    }

    fn group_is_proper(&self, ids: &[usize]) -> bool {
        let mut rows = BTreeSet::new();
        ids.iter().all(|&id| {
            let s = &self.snakes[id - 1];
            rows.insert(s.start_row()) && rows.insert(s.end_row())
        })
    }

    /// Number of snakes starting or ending at each row `0..=m`.
    pub fn events_per_row(&self) -> Vec<usize> {
        let mut out = vec![0; self.m + 1];
        for s in &self.snakes {
            out[s.start_row()] += 1;
            out[s.end_row()] += 1;
        }
        out
    }

    /// `a` has a cell left of a cell of `b` in some shared row.
    fn left_of(&self, a: usize, b: usize) -> bool {
        let (sa, sb) = (&self.snakes[a - 1], &self.snakes[b - 1]);
        sa.cells
            .iter()
            .any(|ca| sb.cell_in_row(ca.row).is_some_and(|cb| ca.col < cb.col))
    }

    /// `left` is immediately to the left of `right` within `group`.
    fn immediately_left(&self, group: &[usize], left: usize, right: usize) -> bool {
        self.left_of(left, right)
            && !group
                .iter()
                .any(|&s3| s3 != left && s3 != right && self.left_of(left, s3) && self.left_of(s3, right))
    }

    /// Swaps membership of `s1` and `s2` in shared rows, treating `group` as
    /// the tile that contains both.
    fn interchange_in(&self, group: &[usize], s1: usize, s2: usize) -> Result<Self, SnakeError> {
        if !self.group_is_proper(group) {
            return Err(SnakeError::NotProper);
        }
        let adjacent_pair = (self.immediately_left(group, s1, s2) && !self.left_of(s2, s1))
            || (self.immediately_left(group, s2, s1) && !self.left_of(s1, s2));
        if !adjacent_pair {
            return Err(SnakeError::NotImmediatelyAdjacent(s1, s2));
        }
        let (a, b) = (&self.snakes[s1 - 1], &self.snakes[s2 - 1]);
        let mut cells_a = Vec::new();
        let mut cells_b = Vec::new();
        for &c in &a.cells {
            match b.cell_in_row(c.row) {
                Some(d) => cells_a.push(d),
                None => cells_a.push(c),
            }
        }
        for &c in &b.cells {
            match a.cell_in_row(c.row) {
                Some(d) => cells_b.push(d),
                None => cells_b.push(c),
            }
        }
        let mut snakes = self.snakes.clone();
        snakes[s1 - 1].cells = cells_a;
        snakes[s2 - 1].cells = cells_b;
        let out = Self::from_snakes(self.m, self.n, snakes);
        let chains_ok = out.snakes[s1 - 1].is_connected_chain() && out.snakes[s2 - 1].is_connected_chain();
        if !chains_ok || !out.group_is_proper(group) {
            return Err(SnakeError::NotProper);
        }
        Ok(out)
    }

    /// Sorts `group` by interchanges so that lower ranks sit to the left.
    fn sort_group(&self, group: &[usize], rank: impl Fn(usize) -> u8) -> Result<Self, SnakeError> {
        let budget = 4 * group.len() * group.len() + 4;
        let mut current = self.clone();
        for _ in 0..budget {
            let swap = group.iter().find_map(|&a| {
                group.iter().find_map(|&b| {
                    (a != b && rank(a) > rank(b) && current.immediately_left(group, a, b)).then_some((a, b))
                })
            });
            match swap {
                None => return Ok(current),
                Some((a, b)) => current = current.interchange_in(group, a, b)?,
            }
        }
        Err(SnakeError::SortDidNotSettle(budget))
    }

    /// Staircase grid with `value_id` on snake cells.
    pub fn render(&self, g: &GtPattern) -> String {
        render_staircase(self.m, self.n, |c| match self.member_of(c) {
            Some(id) => format!("{}_{}", g.at(c), id),
            None => g.at(c).to_string(),
        })
    }
}

/// Which free tiles receive snakes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum SnakeScope {
    /// Free tiles whose content is not a multiple of `k`. Once no such tile
    /// is left every entry is a multiple of `k`.
    #[default]
    NonMultiples,
    /// Every free tile, including those whose content is a multiple of `k`.
    /// This is the numbering used by the worked snake figures.
    AllFreeTiles,
}

/// The canonical snake partition of every free tile whose content is not a
/// multiple of `k`.
pub fn canonical_snake_partition(g: &GtPattern, k: i64) -> SnakePartition {
    canonical_with_tiling(g, &Tiling::new(g), k, SnakeScope::NonMultiples)
}

/// The canonical snake partition over the tiles selected by `scope`.
pub fn canonical_snake_partition_in(g: &GtPattern, k: i64, scope: SnakeScope) -> SnakePartition {
    canonical_with_tiling(g, &Tiling::new(g), k, scope)
}

pub fn canonical_with_tiling(g: &GtPattern, tiling: &Tiling, k: i64, scope: SnakeScope) -> SnakePartition {
    let (m, n) = (g.m(), g.n());
    let mut runs: Vec<(usize, i64, Vec<CellRef>)> = Vec::new();
    for tile in tiling.free_tiles() {
        if scope == SnakeScope::NonMultiples && tile.content.rem_euclid(k) == 0 {
            continue;
        }
        let rows: Vec<Vec<CellRef>> = (tile.lowest_row()..=tile.top_row()).map(|r| tile.row_cells(r)).collect();
        let widest = rows.iter().map(Vec::len).max().unwrap_or(0);
        for t in 0..widest {
            let mut current: Vec<CellRef> = Vec::new();
            for row in &rows {
                match row.get(t) {
                    Some(&c) if current.last().is_some_and(|&p| adjacent(p, c)) => current.push(c),
                    Some(&c) => {
                        if !current.is_empty() {
                            runs.push((tile.id, tile.content, std::mem::take(&mut current)));
                        }
                        current.push(c);
                    }
                    None => {
                        if !current.is_empty() {
                            runs.push((tile.id, tile.content, std::mem::take(&mut current)));
                        }
                    }
                }
            }
            if !current.is_empty() {
                runs.push((tile.id, tile.content, current));
            }
        }
    }
    // number runs by first encounter scanning rows top-down, left to right
    let mut run_of_cell: BTreeMap<CellRef, usize> = BTreeMap::new();
    for (idx, (_, _, cells)) in runs.iter().enumerate() {
        for &c in cells {
            run_of_cell.insert(c, idx);
        }
    }
    let mut order: Vec<usize> = Vec::with_capacity(runs.len());
    let mut seen = vec![false; runs.len()];
    for i in (1..=m).rev() {
        for j in 1..=n {
            if let Some(&idx) = run_of_cell.get(&CellRef::new(i, j)) {
                if !seen[idx] {
                    seen[idx] = true;
                    order.push(idx);
                }
            }
        }
    }
    let snakes = order
        .into_iter()
        .enumerate()
        .map(|(pos, idx)| {
            let (host_tile, content, cells) = runs[idx].clone();
            Snake {
                id: pos + 1,
                cells,
                host_tile,
                content,
            }
        })
        .collect();
    SnakePartition::from_snakes(m, n, snakes)
}

/// Interchanges two immediately adjacent snakes of one tile.
pub fn interchange(sp: &SnakePartition, s1: usize, s2: usize) -> Result<SnakePartition, SnakeError> {
    let (a, b) = (sp.snake(s1)?, sp.snake(s2)?);
    if a.host_tile != b.host_tile {
        return Err(SnakeError::DifferentTiles(s1, s2));
    }
    let group = sp.by_tile().remove(&a.host_tile).unwrap_or_default();
    sp.interchange_in(&group, s1, s2)
}

/// Adds `delta` to every cell of snake `s`, which must be leftmost in its
/// tile for `+1` and rightmost for `-1`.
pub fn shift_snake(g: &GtPattern, sp: &SnakePartition, s: usize, delta: i64) -> Result<GtPattern, SnakeError> {
    let snake = sp.snake(s)?;
    let group = sp.by_tile().remove(&snake.host_tile).unwrap_or_default();
    if !sp.group_is_proper(&group) {
        return Err(SnakeError::NotProper);
    }
    let blocked = group.iter().any(|&o| {
        o != s
            && match delta {
                1 => sp.left_of(o, s),
                -1 => sp.left_of(s, o),
                _ => true,
            }
    });
    if blocked || !(delta == 1 || delta == -1) {
        return Err(SnakeError::NotExtremalSnake(s));
    }
    let mut rows = g.rows().to_vec();
    for c in &snake.cells {
        rows[c.row - 1][c.col - 1] += delta;
    }
    GtPattern::new(rows).map_err(|source| SnakeError::WouldViolate { snake: s, source })
}

fn rank_of(signs: &Signs, id: usize) -> u8 {
    match signs.get(&id) {
        Some(Sign::Positive) => 0,
        None => 1,
        Some(Sign::Negative) => 2,
    }
}

/// Interchanges within one tile until positive snakes sit left of unsigned
/// ones and unsigned ones left of negative ones.
pub fn sign_sort_tile(sp: &SnakePartition, tile: usize, signs: &Signs) -> Result<SnakePartition, SnakeError> {
    let group = sp.by_tile().remove(&tile).unwrap_or_default();
    sp.sort_group(&group, |id| rank_of(signs, id))
}

/// Sign-sorts every tile.
pub fn sign_sort(sp: &SnakePartition, signs: &Signs) -> Result<SnakePartition, SnakeError> {
    let mut current = sp.clone();
    for tile in sp.by_tile().keys() {
        current = sign_sort_tile(&current, *tile, signs)?;
    }
    Ok(current)
}

/// A connected union of positive snakes of content `c` and negative snakes
/// of content `c + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MixedTile {
    pub lower_content: i64,
    pub snake_ids: Vec<usize>,
    pub cells: Vec<CellRef>,
    pub shape_violations: Vec<TileViolation>,
    pub proper: bool,
}

impl MixedTile {
    pub fn has_both_signs(&self, signs: &Signs) -> bool {
        let set: BTreeSet<_> = self.snake_ids.iter().filter_map(|id| signs.get(id)).collect();
        set.len() == 2
    }
}

/// Mixed tiles of a (usually sign-sorted) partition.
pub fn mixed_tiles(sp: &SnakePartition, signs: &Signs) -> Vec<MixedTile> {
    let mut by_level: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (&id, &sign) in signs {
        let Ok(s) = sp.snake(id) else { continue };
        let level = match sign {
            Sign::Positive => s.content,
            Sign::Negative => s.content - 1,
        };
        by_level.entry(level).or_default().push(id);
    }
    let mut out = Vec::new();
    for (level, ids) in by_level {
        let touches = |a: usize, b: usize| {
            let (sa, sb) = (&sp.snakes[a - 1], &sp.snakes[b - 1]);
            sa.cells.iter().any(|&x| sb.cells.iter().any(|&y| adjacent(x, y)))
        };
        let mut seen = vec![false; ids.len()];
        for start in 0..ids.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut component = vec![ids[start]];
            let mut frontier = vec![start];
            while let Some(p) = frontier.pop() {
                for q in 0..ids.len() {
                    if !seen[q] && touches(ids[p], ids[q]) {
                        seen[q] = true;
                        component.push(ids[q]);
                        frontier.push(q);
                    }
                }
            }
            component.sort_unstable();
            let mut cells: Vec<CellRef> = component
                .iter()
                .flat_map(|&id| sp.snakes[id - 1].cells.iter().copied())
                .collect();
            cells.sort();
            let mut violations = shape_violations(&cells);
            if !is_connected(&cells) && !violations.contains(&TileViolation::Disconnected) {
                violations.push(TileViolation::Disconnected);
            }
            out.push(MixedTile {
                lower_content: level,
                proper: sp.group_is_proper(&component),
                snake_ids: component,
                cells,
                shape_violations: violations,
            });
        }
    }
    out
}

/// Sorts each mixed tile so its positive snakes sit left of its negative ones.
pub fn sort_mixed_tiles(sp: &SnakePartition, signs: &Signs) -> Result<SnakePartition, SnakeError> {
    let mut current = sp.clone();
    for tile in mixed_tiles(sp, signs) {
        current = current.sort_group(&tile.snake_ids, |id| rank_of(signs, id))?;
    }
    Ok(current)
}

/// Rows `i` where a tile's snake events disagree with its row widths:
/// `max(0, r_i - r_{i+1})` snakes should start at `i`, `max(0, r_{i+1} - r_i)`
/// should end at `i`, and rows of equal width should pair up position by
/// position.
pub fn start_end_balance_violations(sp: &SnakePartition, tiling: &Tiling) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (tile_id, ids) in sp.by_tile() {
        let tile = tiling.tile(tile_id);
        let (low, top) = (tile.lowest_row(), tile.top_row());
        for i in (low - 1)..=top {
            let below = if i >= low { tile.width(i) } else { 0 };
            let above = if i < top { tile.width(i + 1) } else { 0 };
            let starts = ids.iter().filter(|&&id| sp.snakes[id - 1].start_row() == i).count();
            let ends = ids.iter().filter(|&&id| sp.snakes[id - 1].end_row() == i).count();
            let mut ok = starts == below.saturating_sub(above) && ends == above.saturating_sub(below);
            if ok && below == above && below > 0 && i >= low {
                let lower = tile.row_cells(i);
                let upper = tile.row_cells(i + 1);
                ok = lower
                    .iter()
                    .zip(&upper)
                    .all(|(&a, &b)| sp.member_of(a).is_some() && sp.member_of(a) == sp.member_of(b));
            }
            if !ok {
                out.push((tile_id, i));
            }
        }
    }
    out
}

/// Pairs of free tiles with contents `c + 1` and `c` where snakes of both
/// start, or both end, at the same row. Reported as `(tile_hi, tile_lo, row)`.
pub fn shared_event_rows(sp: &SnakePartition, tiling: &Tiling) -> Vec<(usize, usize, usize)> {
    let groups = sp.by_tile();
    let events = |ids: &[usize], pick: fn(&Snake) -> usize| -> BTreeSet<usize> {
        ids.iter().map(|&id| pick(&sp.snakes[id - 1])).collect()
    };
    let mut out = Vec::new();
    for (&hi, hi_ids) in &groups {
        for (&lo, lo_ids) in &groups {
            if tiling.tile(hi).content != tiling.tile(lo).content + 1 {
                continue;
            }
            for pick in [Snake::start_row as fn(&Snake) -> usize, Snake::end_row] {
                for row in events(hi_ids, pick).intersection(&events(lo_ids, pick)) {
                    out.push((hi, lo, *row));
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

    fn move_tile_partition() -> (GtPattern, SnakePartition) {
        let (g, _) = figures::move_tile_pattern();
        let sp = canonical_snake_partition(&g, figures::MOVE_TILE_K);
        (g, sp)
    }

    fn membership_of(sp: &SnakePartition, states: &[Vec<CellRef>]) -> bool {
        states
            .iter()
            .enumerate()
            .all(|(idx, cells)| cells.iter().all(|&c| sp.member_of(c) == Some(idx + 1)))
    }

    #[test]
    fn example_snakes_match_figure() {
        let g = figures::snakes_pattern();
        let sp = canonical_snake_partition_in(&g, figures::SNAKES_K, SnakeScope::AllFreeTiles);
        assert_eq!(sp.len(), 16);
        for (idx, &(row, col)) in figures::SNAKE_TOP_CELLS.iter().enumerate() {
            let s = sp.snake(idx + 1).unwrap();
            assert_eq!(s.cells.last(), Some(&CellRef::new(row, col)), "snake {}", idx + 1);
        }
        let five = sp.snake(5).unwrap();
        assert_eq!(start_end_rows(five), (9, 2));
        assert_eq!(five.cells.len(), 7);
        assert!(sp.is_proper());
    }

    #[test]
    fn multiples_are_skipped_by_default() {
        let g = figures::snakes_pattern();
        let sp = canonical_snake_partition(&g, figures::SNAKES_K);
        // the two free singletons holding 12 and 6 carry no snake
        assert_eq!(sp.len(), 14);
        assert_eq!(sp.member_of(CellRef::new(8, 1)), None);
        assert_eq!(sp.member_of(CellRef::new(4, 2)), None);
        assert!(sp.snakes().iter().all(|s| s.content % 3 != 0));
        assert!(sp.is_proper());
    }

    #[test]
    fn start_end_of_small_snakes() {
        let single = Snake {
            id: 1,
            cells: vec![CellRef::new(3, 1)],
            host_tile: 0,
            content: 1,
        };
        assert_eq!(start_end_rows(&single), (3, 2));
        let pair = Snake {
            id: 2,
            cells: vec![CellRef::new(4, 1), CellRef::new(5, 1)],
            host_tile: 0,
            content: 1,
        };
        assert_eq!(start_end_rows(&pair), (5, 3));
    }

    #[test]
    fn multiples_of_k_give_no_snakes() {
        let g = figures::bijection_pattern().scale(3).unwrap();
        assert!(canonical_snake_partition(&g, 3).is_empty());
    }

    #[test]
    fn example_has_no_lonely_snake_cell_rows() {
        let g = figures::snakes_pattern();
        let sp = canonical_snake_partition(&g, 3);
        for i in 1..=g.m() {
            let count = (1..=g.n())
                .filter(|&j| sp.member_of(CellRef::new(i, j)).is_some())
                .count();
            assert_ne!(count, 1, "row {i}");
        }
        assert!(sp.events_per_row().iter().all(|&e| e != 1));
        let tiling = Tiling::new(&g);
        assert!(start_end_balance_violations(&sp, &tiling).is_empty());
        assert!(shared_event_rows(&sp, &tiling).is_empty());
    }

    #[test]
    fn move_tile_states() {
        let (_, sp) = move_tile_partition();
        let (canonical, after_12, after_2324) = figures::move_tile_states();
        assert_eq!(sp.len(), canonical.len());
        assert!(membership_of(&sp, &canonical));
        let one = interchange(&sp, 1, 2).unwrap();
        assert!(membership_of(&one, &after_12));
        let two = interchange(&interchange(&sp, 2, 3).unwrap(), 2, 4).unwrap();
        assert!(membership_of(&two, &after_2324));
        assert_eq!(interchange(&one, 1, 2).unwrap(), sp);
    }

    #[test]
    fn interchange_requires_immediate_neighbours() {
        let (_, sp) = move_tile_partition();
        let far = (1..=sp.len())
            .flat_map(|a| (1..=sp.len()).map(move |b| (a, b)))
            .find(|&(a, b)| a != b && interchange(&sp, a, b).is_err());
        let (a, b) = far.expect("some pair is not adjacent");
        assert!(matches!(
            interchange(&sp, a, b),
            Err(SnakeError::NotImmediatelyAdjacent(..))
        ));
        assert_eq!(interchange(&sp, 1, 99), Err(SnakeError::UnknownSnake(99)));
    }

    #[test]
    fn shifts_of_extremal_snakes() {
        let g = figures::snakes_pattern();
        let sp = canonical_snake_partition(&g, 3);
        for ids in sp.by_tile().values() {
            for &s in ids {
                let leftmost = ids.iter().all(|&o| o == s || !sp.left_of(o, s));
                let rightmost = ids.iter().all(|&o| o == s || !sp.left_of(s, o));
                match shift_snake(&g, &sp, s, 1) {
                    Ok(up) => {
                        assert!(leftmost);
                        let sp_up = SnakePartition::from_snakes(g.m(), g.n(), sp.snakes.clone());
                        assert_eq!(
                            {
                                let mut rows = up.rows().to_vec();
                                for c in &sp_up.snakes[s - 1].cells {
                                    rows[c.row - 1][c.col - 1] -= 1;
                                }
                                rows
                            },
                            g.rows().to_vec()
                        );
                    }
                    Err(e) => {
                        assert!(!leftmost);
                        assert_eq!(e, SnakeError::NotExtremalSnake(s));
                    }
                }
                assert_eq!(shift_snake(&g, &sp, s, -1).is_ok(), rightmost);
            }
        }
    }

    #[test]
    fn sign_sort_single_swap() {
        let (_, sp) = move_tile_partition();
        let signs: Signs = (1..=6)
            .map(|id| (id, if id == 2 { Sign::Positive } else { Sign::Negative }))
            .collect();
        let tile = sp.snake(1).unwrap().host_tile;
        let sorted = sign_sort_tile(&sp, tile, &signs).unwrap();
        assert_eq!(sorted, interchange(&sp, 1, 2).unwrap());
        assert_eq!(sign_sort_tile(&sp, tile, &Signs::new()).unwrap(), sp);
    }

    #[test]
    fn cycle_problem_mixed_tile_is_not_proper() {
        let g = figures::cycle_problem_pattern();
        let sp = canonical_snake_partition(&g, 3);
        assert_eq!(sp.len(), 4);
        let signs = figures::cycle_problem_signs();
        let sorted = sign_sort(&sp, &signs).unwrap();
        let mixed = mixed_tiles(&sorted, &signs);
        let bad = mixed.iter().find(|t| t.snake_ids == vec![2, 4]).expect("mixed tile of snakes 2 and 4");
        assert!(!bad.proper);
    }

    #[test]
    fn render_shows_snake_ids() {
        let g = figures::snakes_pattern();
        let sp = canonical_snake_partition(&g, 3);
        let text = sp.render(&g);
        assert!(text.contains("10_1"));
        assert_eq!(text.lines().count(), 11);
    }
}
