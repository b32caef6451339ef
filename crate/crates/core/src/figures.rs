//! Worked examples used as golden fixtures.
//!
//! Patterns are written top row first, the way they are usually drawn.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::pattern::{CellRef, GtPattern};
use crate::snakes::{Sign, Signs};
use crate::tableau::SkewTableau;

/// Pattern with shape (6,4,3,3)/(3,2,1) and type (2,3,2,3).
pub const BIJECTION_TOP_DOWN: [[i64; 4]; 5] = [
    [6, 4, 3, 3],
    [6, 3, 3, 1],
    [6, 3, 1, 1],
    [4, 2, 1, 1],
    [3, 2, 1, 0],
];

/// Rows of the matching tableau; `0` marks a cell of the inner shape.
pub const BIJECTION_TABLEAU: [&[u32]; 4] = [&[0, 0, 0, 1, 2, 2], &[0, 0, 2, 4], &[0, 3, 3], &[1, 4, 4]];

/// A member of the 3-stretched family with
/// lambda = (5,5,3,3,2,1,1), mu = (2,1,1), nu = (1,1,2,2,1,2,1,2,2,2).
pub const SNAKES_TOP_DOWN: [[i64; 7]; 11] = [
    [15, 15, 9, 9, 6, 3, 3],
    [15, 10, 9, 9, 6, 3, 2],
    [14, 9, 9, 7, 5, 2, 2],
    [12, 9, 7, 5, 5, 2, 2],
    [11, 7, 7, 5, 5, 2, 2],
    [8, 7, 5, 5, 5, 2, 1],
    [8, 7, 5, 5, 2, 2, 1],
    [8, 6, 5, 2, 2, 1, 0],
    [7, 5, 3, 2, 1, 0, 0],
    [7, 3, 3, 2, 0, 0, 0],
    [6, 3, 3, 0, 0, 0, 0],
];

pub const SNAKES_K: i64 = 3;

/// Topmost cell `(row, col)` of each numbered snake in the canonical
/// partition of [`SNAKES_TOP_DOWN`], indexed by snake id - 1.
pub const SNAKE_TOP_CELLS: [(usize, usize); 16] = [
    (10, 2),
    (10, 7),
    (9, 1),
    (9, 4),
    (9, 5),
    (9, 7),
    (8, 1),
    (8, 5),
    (7, 1),
    (7, 3),
    (6, 1),
    (6, 5),
    (6, 7),
    (5, 6),
    (4, 2),
    (3, 1),
];

/// Snake graph of [`SNAKES_TOP_DOWN`]: `(snake id, row, row)`.
pub const SNAKE_GRAPH_EDGES: [(usize, usize, usize); 16] = [
    (1, 9, 10),
    (2, 1, 10),
    (3, 8, 9),
    (4, 4, 9),
    (5, 2, 9),
    (6, 6, 9),
    (7, 7, 8),
    (8, 4, 8),
    (9, 6, 7),
    (10, 6, 7),
    (11, 3, 6),
    (12, 5, 6),
    (13, 2, 6),
    (14, 3, 5),
    (15, 3, 4),
    (16, 1, 3),
];

/// The highlighted simple cycle, as a snake sequence.
pub const HIGHLIGHTED_CYCLE: [usize; 6] = [4, 15, 14, 12, 13, 5];

/// Signs of the highlighted cycle in its drawn orientation.
pub const HIGHLIGHTED_SIGNS: [(usize, i8); 6] = [(4, -1), (15, -1), (14, 1), (12, 1), (13, -1), (5, 1)];

/// Result of applying the highlighted cycle to [`SNAKES_TOP_DOWN`].
pub const CYCLE_RESULT_TOP_DOWN: [[i64; 7]; 11] = [
    [15, 15, 9, 9, 6, 3, 3],
    [15, 10, 9, 9, 6, 3, 2],
    [14, 9, 9, 6, 6, 2, 2],
    [12, 9, 6, 6, 5, 2, 2],
    [11, 7, 6, 6, 5, 2, 2],
    [8, 6, 6, 6, 5, 2, 0],
    [8, 6, 6, 5, 3, 2, 0],
    [8, 6, 5, 3, 2, 0, 0],
    [7, 6, 3, 2, 0, 0, 0],
    [7, 3, 3, 2, 0, 0, 0],
    [6, 3, 3, 0, 0, 0, 0],
];

/// A 3-stretched pattern whose four snakes admit a closed walk that revisits
/// row 2.
pub const CYCLE_PROBLEM_TOP_DOWN: [[i64; 3]; 4] = [[12, 12, 9], [12, 10, 5], [12, 8, 4], [9, 6, 3]];

/// Signs of the non-simple walk on [`CYCLE_PROBLEM_TOP_DOWN`].
pub const CYCLE_PROBLEM_SIGNS: [(usize, i8); 4] = [(1, 1), (2, -1), (3, -1), (4, 1)];

/// The invalid matrix produced by the non-simple walk.
pub const CYCLE_PROBLEM_RESULT_TOP_DOWN: [[i64; 3]; 4] = [[12, 12, 9], [12, 11, 4], [12, 7, 5], [9, 6, 3]];

/// Display x-coordinates of the snake-move tile, one list per row, top row
/// first. Adjacent cells sit on neighbouring diagonals.
pub const MOVE_TILE_ROWS: [&[i64]; 15] = [
    &[17],
    &[16, 18],
    &[15, 17, 19],
    &[14, 16, 18, 20],
    &[15, 17, 19, 21],
    &[16, 18, 20, 22],
    &[17, 19, 21],
    &[18, 20],
    &[17, 19],
    &[18],
    &[17, 19],
    &[16, 18, 20],
    &[15, 17, 19],
    &[16, 18],
    &[17],
];

/// Snake ids of the tile cells in canonical position, row by row as in
/// [`MOVE_TILE_ROWS`].
pub const MOVE_TILE_CANONICAL: [&[usize]; 15] = [
    &[1],
    &[1, 2],
    &[1, 2, 3],
    &[1, 2, 3, 4],
    &[1, 2, 3, 4],
    &[1, 2, 3, 4],
    &[1, 2, 3],
    &[1, 2],
    &[1, 2],
    &[1],
    &[1, 5],
    &[1, 5, 6],
    &[1, 5, 6],
    &[1, 5],
    &[1],
];

/// After interchanging snakes 1 and 2.
pub const MOVE_TILE_AFTER_1_2: [&[usize]; 15] = [
    &[1],
    &[2, 1],
    &[2, 1, 3],
    &[2, 1, 3, 4],
    &[2, 1, 3, 4],
    &[2, 1, 3, 4],
    &[2, 1, 3],
    &[2, 1],
    &[2, 1],
    &[1],
    &[1, 5],
    &[1, 5, 6],
    &[1, 5, 6],
    &[1, 5],
    &[1],
];

/// After interchanging snakes 2 and 3, then 2 and 4.
pub const MOVE_TILE_AFTER_2_3_2_4: [&[usize]; 15] = [
    &[1],
    &[1, 2],
    &[1, 3, 2],
    &[1, 3, 4, 2],
    &[1, 3, 4, 2],
    &[1, 3, 4, 2],
    &[1, 3, 2],
    &[1, 2],
    &[1, 2],
    &[1],
    &[1, 5],
    &[1, 5, 6],
    &[1, 5, 6],
    &[1, 5],
    &[1],
];

/// Stretch factor used with [`move_tile_pattern`].
pub const MOVE_TILE_K: i64 = 2;

fn top_down<const N: usize>(rows: &[[i64; N]]) -> GtPattern {
    GtPattern::from_top_down(rows.iter().map(|r| r.to_vec()).collect())
        .expect("fixture patterns are valid")
}

pub fn bijection_pattern() -> GtPattern {
    top_down(&BIJECTION_TOP_DOWN)
}

pub fn bijection_tableau() -> SkewTableau {
    SkewTableau::from_rows_with_inner(BIJECTION_TABLEAU.iter().map(|r| r.to_vec()).collect())
        .expect("fixture tableau is well formed")
}

pub fn snakes_pattern() -> GtPattern {
    top_down(&SNAKES_TOP_DOWN)
}

/// The same pattern, used for the tiling and the signed-cycle examples.
pub fn signed_snakes_pattern() -> GtPattern {
    snakes_pattern()
}

pub fn cycle_action_result() -> GtPattern {
    top_down(&CYCLE_RESULT_TOP_DOWN)
}

pub fn cycle_problem_pattern() -> GtPattern {
    top_down(&CYCLE_PROBLEM_TOP_DOWN)
}

/// Bottom-row-first rows of the invalid result matrix.
pub fn cycle_problem_result_rows() -> Vec<Vec<i64>> {
    CYCLE_PROBLEM_RESULT_TOP_DOWN.iter().rev().map(|r| r.to_vec()).collect()
}

/// Embeds the snake-move tile as a free tile of content 51 in a pattern whose
/// other entries are even, so the tile carries the only snakes for `k = 2`.
///
/// Returns the pattern and the tile's cells, grouped by row top row first and
/// ordered left to right.
pub fn move_tile_pattern() -> (GtPattern, Vec<Vec<CellRef>>) {
    const CONTENT: i64 = 51;
    const X0: i64 = 2;
    let tile_rows = MOVE_TILE_ROWS.len() as i64;
    // one extra row above and below the tile; display row y = 1 is the top
    let m = tile_rows as usize + 2;
    let n = 10usize;
    let y_of = |i: usize| i as i64 - (m as i64 - 1);
    let x_of = |i: usize, j: usize| X0 + (1 - y_of(i)) + 2 * (j as i64 - 1);
    let tile_row = |y: i64| -> Option<&'static [i64]> {
        if y <= 0 && -y < tile_rows {
            Some(MOVE_TILE_ROWS[(-y) as usize])
        } else {
            None
        }
    };
    let top_x = MOVE_TILE_ROWS[0][0];

    let mut rows = vec![vec![0i64; n]; m];
    let mut cells = vec![Vec::new(); MOVE_TILE_ROWS.len()];
    for i in 1..=m {
        let y = y_of(i);
        for j in 1..=n {
            let x = x_of(i, j);
            let (left_edge, right_edge) = match tile_row(y) {
                Some(xs) => (xs[0], *xs.last().expect("nonempty tile row")),
                None => (top_x, top_x),
            };
            rows[i - 1][j - 1] = if x < left_edge {
                52 + 2 * (60 - x)
            } else if x > right_edge {
                80 - 2 * x
            } else {
                cells[(-y) as usize].push(CellRef::new(i, j));
                CONTENT
            };
        }
    }
    let pattern = GtPattern::new(rows).expect("embedding is monotone in display x");
    (pattern, cells)
}

/// Snake cells of one move-tile state, indexed by snake id minus one.
fn move_tile_state(labels: &[&[usize]; 15]) -> Vec<Vec<CellRef>> {
    let (_, cells) = move_tile_pattern();
    let mut out: Vec<Vec<CellRef>> = Vec::new();
    for (row_cells, row_labels) in cells.iter().zip(labels.iter()) {
        for (&c, &id) in row_cells.iter().zip(row_labels.iter()) {
            if out.len() < id {
                out.resize(id, Vec::new());
            }
            out[id - 1].push(c);
        }
    }
    for snake in &mut out {
        snake.sort();
    }
    out
}

/// Cells of each snake, indexed by snake id minus one.
pub type SnakeCells = Vec<Vec<CellRef>>;

/// The canonical state, the state after interchanging 1 and 2, and the state
/// after interchanging 2 and 3 and then 2 and 4.
pub fn move_tile_states() -> (SnakeCells, SnakeCells, SnakeCells) {
    (
        move_tile_state(&MOVE_TILE_CANONICAL),
        move_tile_state(&MOVE_TILE_AFTER_1_2),
        move_tile_state(&MOVE_TILE_AFTER_2_3_2_4),
    )
}

fn to_signs(pairs: &[(usize, i8)]) -> Signs {
    pairs
        .iter()
        .map(|&(id, s)| (id, if s > 0 { Sign::Positive } else { Sign::Negative }))
        .collect()
}

/// Signs of the highlighted cycle on the snakes example.
pub fn highlighted_signs() -> Signs {
    to_signs(&HIGHLIGHTED_SIGNS)
}

/// Signs of the non-simple walk on the cycle-problem pattern.
pub fn cycle_problem_signs() -> Signs {
    to_signs(&CYCLE_PROBLEM_SIGNS)
}

#[derive(Serialize)]
struct Fixture<'a> {
    name: &'a str,
    data: Value,
}

/// Every fixture as `(file name, JSON document)`, in a fixed order.
pub fn fixture_documents() -> Vec<(String, String)> {
    let signs = |pairs: &[(usize, i8)]| -> BTreeMap<String, i8> {
        pairs.iter().map(|&(s, v)| (s.to_string(), v)).collect()
    };
    let tableau = bijection_tableau();
    let (tile_pattern, _) = move_tile_pattern();
    let fixtures = vec![
        Fixture {
            name: "bijection",
            data: json!({
                "pattern": bijection_pattern(),
                "tableau": tableau.rows_with_inner(),
                "lambda": [6, 4, 3, 3],
                "mu": [3, 2, 1],
                "nu": [2, 3, 2, 3],
            }),
        },
        Fixture {
            name: "tiling",
            data: json!({ "pattern": snakes_pattern() }),
        },
        Fixture {
            name: "snake_moves",
            data: json!({
                "k": MOVE_TILE_K,
                "pattern": tile_pattern,
                "tile_display_x": MOVE_TILE_ROWS,
                "canonical": MOVE_TILE_CANONICAL,
                "after_1_2": MOVE_TILE_AFTER_1_2,
                "after_2_3_then_2_4": MOVE_TILE_AFTER_2_3_2_4,
            }),
        },
        Fixture {
            name: "snakes",
            data: json!({
                "k": SNAKES_K,
                "pattern": snakes_pattern(),
                "lambda": [5, 5, 3, 3, 2, 1, 1],
                "mu": [2, 1, 1],
                "nu": [1, 1, 2, 2, 1, 2, 1, 2, 2, 2],
                "snake_top_cells": SNAKE_TOP_CELLS,
            }),
        },
        Fixture {
            name: "signed_cycle",
            data: json!({
                "k": SNAKES_K,
                "pattern": signed_snakes_pattern(),
                "cycle": HIGHLIGHTED_CYCLE,
                "signs": signs(&HIGHLIGHTED_SIGNS),
            }),
        },
        Fixture {
            name: "snake_graph",
            data: json!({ "edges": SNAKE_GRAPH_EDGES }),
        },
        Fixture {
            name: "cycle_action",
            data: json!({
                "k": SNAKES_K,
                "before": signed_snakes_pattern(),
                "after": cycle_action_result(),
            }),
        },
        Fixture {
            name: "cycle_problem",
            data: json!({
                "k": SNAKES_K,
                "pattern": cycle_problem_pattern(),
                "signs": signs(&CYCLE_PROBLEM_SIGNS),
                "result_rows_top_to_bottom": CYCLE_PROBLEM_RESULT_TOP_DOWN,
            }),
        },
    ];
    fixtures
        .into_iter()
        .map(|f| {
            let text = serde_json::to_string_pretty(&f).expect("fixtures serialize") + "\n";
            (format!("{}.json", f.name), text)
        })
        .collect()
}
