//! Skew semistandard tableaux and the bijection with GT-patterns.
//!
//! Content `i` of a tableau occupies exactly the cells of `x^{i+1} / x^i`.

use std::fmt;

use thiserror::Error;

use crate::pattern::{GtPattern, PatternError};
use crate::shapes::{Composition, Partition, ShapeError, SkewShape};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableauError {
    #[error("row {row} is not weakly increasing at column {col}")]
    RowNotIncreasing { row: usize, col: usize },
    #[error("column {col} is not strictly increasing at row {row}")]
    ColumnNotIncreasing { row: usize, col: usize },
    #[error("content {value} at row {row}, column {col} is outside 1..={max}")]
    ContentOutOfRange { row: usize, col: usize, value: u32, max: u32 },
    #[error("tableau row {row} has {got} cells, shape expects {expected}")]
    WrongRowLength { row: usize, got: usize, expected: usize },
    #[error("inner cells must form a left-justified prefix of row {row}")]
    InnerNotPrefix { row: usize },
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

/// A filling of a skew shape. `rows[r]` holds the contents of the skew cells
/// of row `r` (top row first), left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewTableau {
    shape: SkewShape,
    rows: Vec<Vec<u32>>,
}

impl SkewTableau {
    pub fn new(shape: SkewShape, rows: Vec<Vec<u32>>) -> Result<Self, TableauError> {
        let n = shape.rows().max(rows.len());
        let mut rows = rows;
        rows.resize(n, Vec::new());
        for (r, row) in rows.iter().enumerate() {
            let expected = (shape.outer().part(r) - shape.inner().part(r)) as usize;
            if row.len() != expected {
                return Err(TableauError::WrongRowLength {
                    row: r + 1,
                    got: row.len(),
                    expected,
                });
            }
        }
        Ok(Self { shape, rows })
    }

    /// Builds a tableau from full rows in which `0` marks inner cells.
    pub fn from_rows_with_inner(full: Vec<Vec<u32>>) -> Result<Self, TableauError> {
        let mut outer = Vec::with_capacity(full.len());
        let mut inner = Vec::with_capacity(full.len());
        let mut rows = Vec::with_capacity(full.len());
        for (r, row) in full.into_iter().enumerate() {
            let skip = row.iter().take_while(|&&v| v == 0).count();
            if row[skip..].contains(&0) {
                return Err(TableauError::InnerNotPrefix { row: r + 1 });
            }
            outer.push(row.len() as u64);
            inner.push(skip as u64);
            rows.push(row[skip..].to_vec());
        }
        let shape = SkewShape::new(Partition::new(outer)?, Partition::new(inner)?)?;
        Self::new(shape, rows)
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Full rows with `0` for inner cells.
    pub fn rows_with_inner(&self) -> Vec<Vec<u32>> {
        self.rows
            .iter()
            .enumerate()
            .map(|(r, row)| {
                let mut full = vec![0; self.shape.inner().part(r) as usize];
                full.extend_from_slice(row);
                full
            })
            .collect()
    }

    /// Content at 0-based diagram position, `None` for inner or absent cells.
    pub fn get(&self, row: usize, col: usize) -> Option<u32> {
        let inner = self.shape.inner().part(row) as usize;
        self.rows.get(row)?.get(col.checked_sub(inner)?).copied()
    }

    pub fn content(&self, max_value: u32) -> Composition {
        let mut counts = vec![0u64; max_value as usize];
        for &v in self.rows.iter().flatten() {
            if (1..=max_value).contains(&v) {
                counts[v as usize - 1] += 1;
            }
        }
        Composition::new(counts)
    }

    pub fn check_semistandard(&self) -> Result<(), TableauError> {
        for (r, row) in self.rows.iter().enumerate() {
            let inner = self.shape.inner().part(r) as usize;
            for (offset, pair) in row.windows(2).enumerate() {
                if pair[0] > pair[1] {
                    return Err(TableauError::RowNotIncreasing {
                        row: r + 1,
                        col: inner + offset + 2,
                    });
                }
            }
            if r == 0 {
                continue;
            }
            for (offset, &v) in row.iter().enumerate() {
                let col = inner + offset;
                if let Some(above) = self.get(r - 1, col) {
                    if above >= v {
                        return Err(TableauError::ColumnNotIncreasing { row: r + 1, col: col + 1 });
                    }
                }
            }
        }
        Ok(())
    }

    /// Inverse of [`to_tableau`]: row `i` of the pattern is the inner shape
    /// together with every cell of content less than `i`.
    pub fn to_pattern(&self, m: usize) -> Result<GtPattern, TableauError> {
        let max = m.saturating_sub(1) as u32;
        for (r, row) in self.rows.iter().enumerate() {
            let inner = self.shape.inner().part(r) as usize;
            for (offset, &value) in row.iter().enumerate() {
                if value == 0 || value > max {
                    return Err(TableauError::ContentOutOfRange {
                        row: r + 1,
                        col: inner + offset + 1,
                        value,
                        max,
                    });
                }
            }
        }
        self.check_semistandard()?;
        let n = self.rows.len().max(1);
        let rows = (1..=m)
            .map(|i| {
                (0..n)
                    .map(|r| {
                        let inner = self.shape.inner().part(r) as i64;
                        let below = self
                            .rows
                            .get(r)
                            .map_or(0, |row| row.iter().filter(|&&v| (v as usize) < i).count());
                        inner + below as i64
                    })
                    .collect()
            })
            .collect();
        Ok(GtPattern::new(rows)?)
    }
}

/// The tableau of a pattern: content `i` fills `x^{i+1} / x^i`.
pub fn to_tableau(g: &GtPattern) -> SkewTableau {
    let n = g.n();
    let rows = (1..=n)
        .map(|col| {
            let mut row = Vec::new();
            for i in 1..g.m() {
                let count = g.get(i + 1, col) - g.get(i, col);
                row.extend(std::iter::repeat_n(i as u32, count as usize));
            }
            row
        })
        .collect();
    SkewTableau::new(g.shape(), rows).expect("pattern rows give matching row lengths")
}

/// English-notation rendering with `.` for inner cells.
impl fmt::Display for SkewTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .rows
            .iter()
            .flatten()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        for (r, row) in self.rows_with_inner().iter().enumerate() {
            let inner = self.shape.inner().part(r) as usize;
            let cells: Vec<String> = row
                .iter()
                .enumerate()
                .map(|(c, v)| {
                    if c < inner {
                        format!("{:>width$}", ".")
                    } else {
                        format!("{v:>width$}")
                    }
                })
                .collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Visits every semistandard filling of `shape` with content `nu`, filling
/// cells row by row, top row first. The callback receives the partial rows
/// and returns `false` to stop early.
pub fn for_each_filling(shape: &SkewShape, nu: &Composition, mut visit: impl FnMut(&[Vec<u32>]) -> bool) {
    let n = shape.rows();
    let inner: Vec<usize> = (0..n).map(|r| shape.inner().part(r) as usize).collect();
    let outer: Vec<usize> = (0..n).map(|r| shape.outer().part(r) as usize).collect();
    if nu.size() != shape.cell_count() {
        return;
    }
    let cells: Vec<(usize, usize)> = (0..n)
        .flat_map(|r| (inner[r]..outer[r]).map(move |c| (r, c)))
        .collect();
    let mut remaining: Vec<u64> = nu.parts().to_vec();
    let mut rows: Vec<Vec<u32>> = (0..n).map(|r| Vec::with_capacity(outer[r] - inner[r])).collect();

    struct Ctx<'a> {
        cells: &'a [(usize, usize)],
        inner: &'a [usize],
        remaining: &'a mut [u64],
        rows: &'a mut [Vec<u32>],
    }

    fn rec(ctx: &mut Ctx<'_>, idx: usize, visit: &mut dyn FnMut(&[Vec<u32>]) -> bool) -> bool {
        if idx == ctx.cells.len() {
            return visit(ctx.rows);
        }
        let (r, c) = ctx.cells[idx];
        let mut lower = 1u32;
        if c > ctx.inner[r] {
            lower = lower.max(ctx.rows[r][c - ctx.inner[r] - 1]);
        }
        if r > 0 && c >= ctx.inner[r - 1] {
            lower = lower.max(ctx.rows[r - 1][c - ctx.inner[r - 1]] + 1);
        }
        for v in lower..=ctx.remaining.len() as u32 {
            if ctx.remaining[v as usize - 1] == 0 {
                continue;
            }
            ctx.remaining[v as usize - 1] -= 1;
            ctx.rows[r].push(v);
            let go_on = rec(ctx, idx + 1, visit);
            ctx.rows[r].pop();
            ctx.remaining[v as usize - 1] += 1;
            if !go_on {
                return false;
            }
        }
        true
    }

    let mut ctx = Ctx {
        cells: &cells,
        inner: &inner,
        remaining: &mut remaining,
        rows: &mut rows,
    };
    rec(&mut ctx, 0, &mut visit);
}

/// All semistandard tableaux of `shape` with content `nu`.
pub fn all_fillings(shape: &SkewShape, nu: &Composition) -> Vec<SkewTableau> {
    let mut out = Vec::new();
    for_each_filling(shape, nu, |rows| {
        out.push(SkewTableau {
            shape: shape.clone(),
            rows: rows.to_vec(),
        });
        true
    });
    out
}
