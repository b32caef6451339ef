//! Skew Gelfand-Tsetlin patterns.
//!
//! A pattern is an `m x n` array `x[i][j]` with rows indexed `1..=m` from the
//! bottom (`i = 1`, the inner shape) to the top (`i = m`, the outer shape).
//! Validity means
//!
//! * every entry is nonnegative,
//! * `x[i+1][j] >= x[i][j]` (up-right diagonals),
//! * `x[i][j] >= x[i+1][j+1]` (down-right diagonals),
//! * and each row is weakly decreasing (implied by the two diagonal families
//!   for every row that has a neighbour, checked directly regardless).
//!
//! The lexicographic key concatenates the rows bottom row first.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::shapes::{Composition, Partition, SkewShape};

/// A cell position, 1-based, with row 1 at the bottom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellRef {
    pub row: usize,
    pub col: usize,
}

impl CellRef {
    pub const fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }
}

impl fmt::Display for CellRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Diagonal {
    UpRight,
    DownRight,
}

impl fmt::Display for Diagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagonal::UpRight => write!(f, "up-right"),
            Diagonal::DownRight => write!(f, "down-right"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("a pattern needs at least one row and one column (got {rows}x{cols})")]
    TooSmall { rows: usize, cols: usize },
    #[error("row {row} has {len} entries, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
    #[error("negative entry {value} at {cell}")]
    NegativeEntry { cell: CellRef, value: i64 },
    #[error("row {row} is not weakly decreasing at column {col}")]
    RowNotDecreasing { row: usize, col: usize },
    #[error("{kind} diagonal violated at row {row}, column {col}")]
    DiagonalViolation { kind: Diagonal, row: usize, col: usize },
    #[error("entry at {cell} is not divisible by {k}")]
    NotDivisible { cell: CellRef, k: i64 },
    #[error("pattern dimensions differ: {left:?} vs {right:?}")]
    DimensionMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("scaling factor must be positive")]
    NonPositiveFactor,
    #[error("arithmetic overflow")]
    Overflow,
}

/// A validated skew GT-pattern.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GtPattern {
    /// `rows[0]` is the bottom row.
    rows: Vec<Vec<i64>>,
}

/// Checks the validity conditions on a raw matrix given bottom row first.
///
/// Returns the first violation found scanning rows bottom-up and columns
/// left to right.
pub fn check_rows(rows: &[Vec<i64>]) -> Result<(), PatternError> {
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    if m < 1 || n < 1 {
        return Err(PatternError::TooSmall { rows: m, cols: n });
    }
    for (idx, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(PatternError::Ragged {
                row: idx + 1,
                len: row.len(),
                expected: n,
            });
        }
    }
    for i in 0..m {
        for j in 0..n {
            let v = rows[i][j];
            if v < 0 {
                return Err(PatternError::NegativeEntry {
                    cell: CellRef::new(i + 1, j + 1),
                    value: v,
                });
            }
            if j + 1 < n && v < rows[i][j + 1] {
                return Err(PatternError::RowNotDecreasing { row: i + 1, col: j + 1 });
            }
            if i + 1 < m {
                if rows[i + 1][j] < v {
                    return Err(PatternError::DiagonalViolation {
                        kind: Diagonal::UpRight,
                        row: i + 1,
                        col: j + 1,
                    });
                }
                if j + 1 < n && v < rows[i + 1][j + 1] {
                    return Err(PatternError::DiagonalViolation {
                        kind: Diagonal::DownRight,
                        row: i + 1,
                        col: j + 1,
                    });
                }
            }
        }
    }
    Ok(())
}

fn to_part(v: i64) -> u64 {
    u64::try_from(v).expect("validated patterns have nonnegative entries")
}

impl GtPattern {
    /// Validates a matrix given bottom row first.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self, PatternError> {
        check_rows(&rows)?;
        Ok(Self { rows })
    }

    /// Validates a matrix given top row first, as patterns are usually drawn.
    pub fn from_top_down(mut rows: Vec<Vec<i64>>) -> Result<Self, PatternError> {
        rows.reverse();
        Self::new(rows)
    }

    /// Number of rows `m`.
    pub fn m(&self) -> usize {
        self.rows.len()
    }

    /// Number of columns `n`.
    pub fn n(&self) -> usize {
        self.rows[0].len()
    }

    /// Entry `x[i][j]`, 1-based with row 1 at the bottom.
    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.rows[row - 1][col - 1]
    }

    pub fn at(&self, cell: CellRef) -> i64 {
        self.get(cell.row, cell.col)
    }

    /// Row `i` (1-based).
    pub fn row(&self, row: usize) -> &[i64] {
        &self.rows[row - 1]
    }

    /// All rows, bottom row first.
    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn rows_top_down(&self) -> Vec<Vec<i64>> {
        self.rows.iter().rev().cloned().collect()
    }

    pub fn into_rows(self) -> Vec<Vec<i64>> {
        self.rows
    }

    pub fn cells(&self) -> impl Iterator<Item = CellRef> + '_ {
        let n = self.n();
        (1..=self.m()).flat_map(move |i| (1..=n).map(move |j| CellRef::new(i, j)))
    }

    pub fn row_sum(&self, row: usize) -> i64 {
        self.rows[row - 1].iter().sum()
    }

    pub fn outer(&self) -> Partition {
        Partition::new(self.rows[self.m() - 1].iter().map(|&v| to_part(v)).collect())
            .expect("rows of a valid pattern are partitions")
    }

    pub fn inner(&self) -> Partition {
        Partition::new(self.rows[0].iter().map(|&v| to_part(v)).collect())
            .expect("rows of a valid pattern are partitions")
    }

    pub fn shape(&self) -> SkewShape {
        SkewShape::new(self.outer(), self.inner()).expect("top row dominates bottom row entrywise")
    }

    /// Row-sum increments `|x^{i+1}| - |x^i|`. Up-right interleaving makes
    /// each increment nonnegative.
    pub fn content(&self) -> Composition {
        Composition::new(
            (1..self.m())
                .map(|i| to_part(self.row_sum(i + 1) - self.row_sum(i)))
                .collect(),
        )
    }

    /// The shape `top / bottom` and the type of the pattern.
    pub fn shape_type(&self) -> (SkewShape, Composition) {
        (self.shape(), self.content())
    }

    /// The lexicographic key: rows concatenated bottom row first.
    pub fn lex_key(&self) -> Vec<i64> {
        self.rows.iter().flatten().copied().collect()
    }

    pub fn lex_cmp(&self, other: &GtPattern) -> Result<Ordering, PatternError> {
        if self.m() != other.m() || self.n() != other.n() {
            return Err(PatternError::DimensionMismatch {
                left: (self.m(), self.n()),
                right: (other.m(), other.n()),
            });
        }
        Ok(self.rows.iter().flatten().cmp(other.rows.iter().flatten()))
    }

    pub fn scale(&self, k: i64) -> Result<GtPattern, PatternError> {
        if k <= 0 {
            return Err(PatternError::NonPositiveFactor);
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&v| v.checked_mul(k).ok_or(PatternError::Overflow))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { rows })
    }

    pub fn divide(&self, k: i64) -> Result<GtPattern, PatternError> {
        if k <= 0 {
            return Err(PatternError::NonPositiveFactor);
        }
        if let Some(cell) = self.cells().find(|&c| self.at(c) % k != 0) {
            return Err(PatternError::NotDivisible { cell, k });
        }
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&v| v / k).collect())
            .collect();
        Ok(Self { rows })
    }

    pub fn all_divisible_by(&self, k: i64) -> bool {
        self.rows.iter().flatten().all(|&v| v % k == 0)
    }

    pub fn to_json(&self) -> PatternJson {
        PatternJson {
            rows_top_to_bottom: self.rows_top_down(),
            n: self.n(),
            m: self.m(),
        }
    }

    /// Staircase layout: top row first, each lower row shifted right by half
    /// a column.
    pub fn render(&self) -> String {
        render_staircase(self.m(), self.n(), |c| self.at(c).to_string())
    }
}

impl fmt::Display for GtPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Wire format for patterns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternJson {
    pub rows_top_to_bottom: Vec<Vec<i64>>,
    pub n: usize,
    pub m: usize,
}

impl TryFrom<PatternJson> for GtPattern {
    type Error = PatternError;

    fn try_from(json: PatternJson) -> Result<Self, Self::Error> {
        let rows = json.rows_top_to_bottom;
        let cols = rows.first().map_or(0, Vec::len);
        if rows.len() != json.m || cols != json.n {
            return Err(PatternError::DimensionMismatch {
                left: (json.m, json.n),
                right: (rows.len(), cols),
            });
        }
        GtPattern::from_top_down(rows)
    }
}

impl Serialize for GtPattern {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GtPattern {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let json = PatternJson::deserialize(deserializer)?;
        GtPattern::try_from(json).map_err(serde::de::Error::custom)
    }
}

/// Lays out per-cell labels in the staircase shape. `label` receives 1-based
/// cells with row 1 at the bottom.
pub fn render_staircase(m: usize, n: usize, label: impl Fn(CellRef) -> String) -> String {
    let labels: Vec<Vec<String>> = (1..=m)
        .rev()
        .map(|i| (1..=n).map(|j| label(CellRef::new(i, j))).collect())
        .collect();
    let width = labels.iter().flatten().map(String::len).max().unwrap_or(1);
    let half = width / 2 + 1;
    let mut out = String::new();
    for (depth, row) in labels.iter().enumerate() {
        let mut line = " ".repeat(depth * half);
        for (j, cell) in row.iter().enumerate() {
            if j > 0 {
                line.push_str(&" ".repeat(2 * half - width));
            }
            line.push_str(&format!("{cell:>width$}"));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}
