//! Skew Gelfand-Tsetlin patterns: bijection with skew tableaux, tiles and
//! snakes, the snake-cycle action, a constructive saturation procedure for
//! skew Kostka numbers, exhaustive enumeration and stretch polynomials.

pub mod cycles;
pub mod enumeration;
pub mod figures;
pub mod pattern;
pub mod poly;
pub mod saturation;
pub mod shapes;
pub mod snakes;
pub mod tableau;
pub mod tiling;

pub use pattern::{CellRef, GtPattern, PatternError};
pub use shapes::{Composition, Partition, SkewShape};
