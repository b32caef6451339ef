//! Tiles: maximal sets of equal entries connected through the four diagonal
//! adjacencies, and the structural properties of free tiles.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::pattern::{render_staircase, CellRef, GtPattern};

/// The four diagonal neighbours of `x[i][j]`: `x[i+1][j]`, `x[i+1][j+1]`,
/// `x[i-1][j-1]` and `x[i-1][j]`. Same-row cells are never adjacent.
pub fn adjacent(a: CellRef, b: CellRef) -> bool {
    let (ai, aj, bi, bj) = (a.row as i64, a.col as i64, b.row as i64, b.col as i64);
    (bi == ai + 1 && (bj == aj || bj == aj + 1)) || (bi == ai - 1 && (bj == aj - 1 || bj == aj))
}

/// Adjacent cells of `c` inside an `m x n` pattern.
pub fn neighbours(c: CellRef, m: usize, n: usize) -> impl Iterator<Item = CellRef> {
    let (i, j) = (c.row as i64, c.col as i64);
    [(i + 1, j), (i + 1, j + 1), (i - 1, j - 1), (i - 1, j)]
        .into_iter()
        .filter(move |&(r, s)| r >= 1 && r <= m as i64 && s >= 1 && s <= n as i64)
        .map(|(r, s)| CellRef::new(r as usize, s as usize))
}

struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    fn new(len: usize) -> Self {
        Self {
            parent: (0..len).collect(),
            rank: vec![0; len],
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tile {
    pub id: usize,
    pub content: i64,
    /// Cells sorted by row, then column.
    pub cells: Vec<CellRef>,
    pub is_free: bool,
}

impl Tile {
    pub fn lowest_row(&self) -> usize {
        self.cells[0].row
    }

    pub fn top_row(&self) -> usize {
        self.cells[self.cells.len() - 1].row
    }

    /// Cells of one row, left to right.
    pub fn row_cells(&self, row: usize) -> Vec<CellRef> {
        self.cells.iter().copied().filter(|c| c.row == row).collect()
    }

    pub fn width(&self, row: usize) -> usize {
        self.cells.iter().filter(|c| c.row == row).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tiling {
    m: usize,
    n: usize,
    /// `tile_id[i-1][j-1]`
    tile_id: Vec<Vec<usize>>,
    tiles: Vec<Tile>,
}

impl Tiling {
    /// Tiles of `g`. Ids are dense and follow first encounter scanning from
    /// the top row down, left to right.
    pub fn new(g: &GtPattern) -> Self {
        let (m, n) = (g.m(), g.n());
        let index = |c: CellRef| (c.row - 1) * n + (c.col - 1);
        let mut sets = DisjointSet::new(m * n);
        for c in g.cells() {
            for d in neighbours(c, m, n) {
                if g.at(c) == g.at(d) {
                    sets.union(index(c), index(d));
                }
            }
        }
        let mut id_of_root: BTreeMap<usize, usize> = BTreeMap::new();
        let mut tile_id = vec![vec![0; n]; m];
        let mut tiles: Vec<Tile> = Vec::new();
        for i in (1..=m).rev() {
            for j in 1..=n {
                let c = CellRef::new(i, j);
                let root = sets.find(index(c));
                let next = id_of_root.len();
                let id = *id_of_root.entry(root).or_insert(next);
                if id == tiles.len() {
                    tiles.push(Tile {
                        id,
                        content: g.at(c),
                        cells: Vec::new(),
                        is_free: true,
                    });
                }
                tile_id[i - 1][j - 1] = id;
                let tile = &mut tiles[id];
                tile.cells.push(c);
                if i == 1 || i == m {
                    tile.is_free = false;
                }
            }
        }
        for tile in &mut tiles {
            tile.cells.sort();
        }
        Self { m, n, tile_id, tiles }
    }

    pub fn tile_of(&self, c: CellRef) -> usize {
        self.tile_id[c.row - 1][c.col - 1]
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn tile(&self, id: usize) -> &Tile {
        &self.tiles[id]
    }

    pub fn free_tiles(&self) -> impl Iterator<Item = &Tile> {
        self.tiles.iter().filter(|t| t.is_free)
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    /// Staircase grid of `value:tile_id`, with `*` after free tiles.
    pub fn render(&self, g: &GtPattern) -> String {
        render_staircase(self.m, self.n, |c| {
            let id = self.tile_of(c);
            let star = if self.tiles[id].is_free { "*" } else { "" };
            format!("{}:{}{}", g.at(c), id, star)
        })
    }
}

/// A violated free-tile property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum TileViolation {
    /// Cells of one row are not contiguous.
    RowGap { row: usize },
    /// `x[i][j]` and `x[i][j+1]` are present but a closing cell is missing.
    MissingClosure { row: usize, col: usize, missing: CellRef },
    /// More than one topmost or lowest cell.
    NotUniqueExtreme { row: usize },
    /// Widths of adjacent rows differ by more than one.
    WidthJump { row: usize, below: usize, above: usize },
    /// Cells that are not a single connected set.
    Disconnected,
}

/// Checks the four free-tile properties on an arbitrary cell set.
pub fn shape_violations(cells: &[CellRef]) -> Vec<TileViolation> {
    let mut out = Vec::new();
    if cells.is_empty() {
        return out;
    }
    let mut by_row: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for c in cells {
        by_row.entry(c.row).or_default().push(c.col);
    }
    for cols in by_row.values_mut() {
        cols.sort_unstable();
        cols.dedup();
    }
    let contains = |c: CellRef| by_row.get(&c.row).is_some_and(|cols| cols.binary_search(&c.col).is_ok());

    for (&row, cols) in &by_row {
        if cols.windows(2).any(|w| w[1] != w[0] + 1) {
            out.push(TileViolation::RowGap { row });
        }
        for w in cols.windows(2) {
            if w[1] != w[0] + 1 {
                continue;
            }
            let col = w[0];
            let above = CellRef::new(row + 1, col + 1);
            if !contains(above) {
                out.push(TileViolation::MissingClosure { row, col, missing: above });
            }
            if row > 1 {
                let below = CellRef::new(row - 1, col);
                if !contains(below) {
                    out.push(TileViolation::MissingClosure { row, col, missing: below });
                }
            } else {
                out.push(TileViolation::MissingClosure {
                    row,
                    col,
                    missing: CellRef::new(0, col),
                });
            }
        }
    }
    let (&low, low_cols) = by_row.iter().next().expect("nonempty");
    let (&top, top_cols) = by_row.iter().next_back().expect("nonempty");
    if low_cols.len() != 1 {
        out.push(TileViolation::NotUniqueExtreme { row: low });
    }
    if top_cols.len() != 1 {
        out.push(TileViolation::NotUniqueExtreme { row: top });
    }
    for row in low..top {
        let below = by_row.get(&row).map_or(0, Vec::len);
        let above = by_row.get(&(row + 1)).map_or(0, Vec::len);
        if below.abs_diff(above) > 1 {
            out.push(TileViolation::WidthJump { row, below, above });
        }
    }
    if !is_connected(cells) {
        out.push(TileViolation::Disconnected);
    }
    out
}

/// Whether `cells` form one component under adjacency.
pub fn is_connected(cells: &[CellRef]) -> bool {
    if cells.is_empty() {
        return true;
    }
    let mut seen = vec![false; cells.len()];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(k) = stack.pop() {
        for (idx, &other) in cells.iter().enumerate() {
            if !seen[idx] && adjacent(cells[k], other) {
                seen[idx] = true;
                stack.push(idx);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Self-check of every free tile. A nonempty result points at a bug.
pub fn check_tile_properties(tiling: &Tiling, g: &GtPattern) -> Vec<(usize, TileViolation)> {
    let mut out = Vec::new();
    for tile in tiling.free_tiles() {
        if tile.cells.iter().any(|&c| g.at(c) != tile.content) {
            out.push((tile.id, TileViolation::Disconnected));
        }
        out.extend(shape_violations(&tile.cells).into_iter().map(|v| (tile.id, v)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::figures;

    #[test]
    fn adjacency() {
        assert!(adjacent(CellRef::new(2, 1), CellRef::new(3, 1)));
        assert!(!adjacent(CellRef::new(2, 1), CellRef::new(2, 2)));
        assert!(adjacent(CellRef::new(2, 2), CellRef::new(1, 1)));
        assert!(adjacent(CellRef::new(2, 2), CellRef::new(3, 3)));
        assert!(!adjacent(CellRef::new(2, 2), CellRef::new(3, 1)));
        assert!(!adjacent(CellRef::new(2, 2), CellRef::new(1, 3)));
    }

    #[test]
    fn example_tiling() {
        let g = figures::snakes_pattern();
        let t = Tiling::new(&g);
        // eleven outlined free tiles and seven shaded tiles touching the boundary
        assert_eq!(t.tiles().len(), 18);
        assert_eq!(t.free_tiles().count(), 11);
        assert!(check_tile_properties(&t, &g).is_empty());
        // the 2-tile runs from row 10 down to row 2 without touching the boundary
        let two = t.tile(t.tile_of(CellRef::new(10, 7)));
        assert_eq!(two.content, 2);
        assert!(two.is_free);
        assert_eq!((two.lowest_row(), two.top_row()), (2, 10));
    }

    #[test]
    fn constant_pattern_is_one_tile() {
        let g = GtPattern::new(vec![vec![4; 3]; 4]).unwrap();
        let t = Tiling::new(&g);
        assert_eq!(t.tiles().len(), 1);
        assert!(!t.tiles()[0].is_free);
    }

    #[test]
    fn strict_pattern_has_singleton_tiles() {
        let g = GtPattern::new(vec![vec![4, 2, 0], vec![5, 3, 1], vec![6, 4, 2]]).unwrap();
        let t = Tiling::new(&g);
        assert_eq!(t.tiles().len(), 9);
        assert_eq!(t.free_tiles().count(), 3);
        assert_eq!(t.tile_of(CellRef::new(3, 1)), 0);
        assert_eq!(t.tile_of(CellRef::new(1, 3)), 8);
    }

    #[test]
    fn violations_are_detected() {
        let gap = [CellRef::new(2, 1), CellRef::new(2, 3)];
        assert!(shape_violations(&gap).contains(&TileViolation::RowGap { row: 2 }));
        let open = [CellRef::new(2, 1), CellRef::new(2, 2)];
        let v = shape_violations(&open);
        assert!(v.iter().any(|x| matches!(x, TileViolation::MissingClosure { .. })));
        assert!(v.contains(&TileViolation::NotUniqueExtreme { row: 2 }));
        assert!(shape_violations(&[CellRef::new(3, 2)]).is_empty());
    }

    #[test]
    fn render_marks_free_tiles() {
        let g = GtPattern::new(vec![vec![2, 0], vec![3, 1], vec![4, 2]]).unwrap();
        let t = Tiling::new(&g);
        let text = t.render(&g);
        assert!(text.contains('*'));
        assert_eq!(text.lines().count(), 3);
    }
}
