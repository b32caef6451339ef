//! Partitions, compositions and skew shapes.
//!
//! These are plain value types. Sequences are stored exactly as given (zero
//! padding is kept), but equality ignores trailing zeros.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("partition is not weakly decreasing at index {index}: {left} < {right}")]
    NotDecreasing { index: usize, left: u64, right: u64 },
    #[error("inner shape is not contained in outer shape at row {row}: {inner} > {outer}")]
    NotContained { row: usize, inner: u64, outer: u64 },
    #[error("stretch factor must be positive")]
    ZeroStretch,
    #[error("malformed part {0:?}: expected a nonnegative integer")]
    Malformed(String),
    #[error("arithmetic overflow while stretching")]
    Overflow,
}

fn strip(parts: &[u64]) -> &[u64] {
    let end = parts.iter().rposition(|&p| p != 0).map_or(0, |i| i + 1);
    &parts[..end]
}

fn parse_parts(s: &str) -> Result<Vec<u64>, ShapeError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let parts = s
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<u64>()
                .map_err(|_| ShapeError::Malformed(tok.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    // "0" spells the empty sequence
    if parts == [0] {
        return Ok(Vec::new());
    }
    Ok(parts)
}

fn write_parts(f: &mut fmt::Formatter<'_>, parts: &[u64]) -> fmt::Result {
    let parts = strip(parts);
    if parts.is_empty() {
        return write!(f, "0");
    }
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{p}")?;
    }
    Ok(())
}

fn stretch_parts(parts: &[u64], k: u64) -> Result<Vec<u64>, ShapeError> {
    if k == 0 {
        return Err(ShapeError::ZeroStretch);
    }
    parts
        .iter()
        .map(|&p| p.checked_mul(k).ok_or(ShapeError::Overflow))
        .collect()
}

/// A weakly decreasing sequence of nonnegative integers.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    pub fn new(parts: Vec<u64>) -> Result<Self, ShapeError> {
        for (index, w) in parts.windows(2).enumerate() {
            if w[0] < w[1] {
                return Err(ShapeError::NotDecreasing {
                    index: index + 1,
                    left: w[0],
                    right: w[1],
                });
            }
        }
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// Number of stored parts, including trailing zeros.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        strip(&self.parts).is_empty()
    }

    /// Part `i` (0-based), zero beyond the stored length.
    pub fn part(&self, i: usize) -> u64 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn padded(&self, len: usize) -> Vec<u64> {
        (0..len.max(self.parts.len())).map(|i| self.part(i)).collect()
    }

    pub fn stretch(&self, k: u64) -> Result<Self, ShapeError> {
        Ok(Self {
            parts: stretch_parts(&self.parts, k)?,
        })
    }

    /// Dominance order. Shorter sequences are padded with zeros.
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let len = self.parts.len().max(other.parts.len());
        let (mut a, mut b) = (0u64, 0u64);
        for i in 0..len {
            a += self.part(i);
            b += other.part(i);
            if a < b {
                return false;
            }
        }
        true
    }

    /// Every partition of `n`, in reverse lexicographic order.
    pub fn all_of_size(n: u64) -> Vec<Partition> {
        fn rec(rest: u64, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=max.min(rest)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// Partitions contained in `self` (as diagrams), including the empty one.
    pub fn subpartitions(&self) -> Vec<Partition> {
        fn rec(outer: &[u64], i: usize, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Partition>) {
            out.push(Partition { parts: cur.clone() });
            if i == outer.len() {
                return;
            }
            for p in 1..=outer[i].min(max) {
                cur.push(p);
                rec(outer, i + 1, p, cur, out);
                cur.pop();
            }
        }
        let outer = strip(&self.parts).to_vec();
        let mut out = Vec::new();
        rec(&outer, 0, u64::MAX, &mut Vec::new(), &mut out);
        out
    }
}

impl PartialEq for Partition {
    fn eq(&self, other: &Self) -> bool {
        strip(&self.parts) == strip(&other.parts)
    }
}

impl Eq for Partition {}

impl std::hash::Hash for Partition {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        strip(&self.parts).hash(state);
    }
}

impl TryFrom<Vec<u64>> for Partition {
    type Error = ShapeError;
    fn try_from(parts: Vec<u64>) -> Result<Self, Self::Error> {
        Self::new(parts)
    }
}

impl From<Partition> for Vec<u64> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl FromStr for Partition {
    type Err = ShapeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::new(parse_parts(s)?)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, &self.parts)
    }
}

/// A sequence of nonnegative integers with no ordering constraint.
///
/// Unlike [`Partition`], equality is exact: the length of a content vector
/// fixes the number of pattern rows.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<u64>", into = "Vec<u64>")]
pub struct Composition {
    parts: Vec<u64>,
}

impl Composition {
    pub fn new(parts: Vec<u64>) -> Self {
        Self { parts }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn stretch(&self, k: u64) -> Result<Self, ShapeError> {
        Ok(Self {
            parts: stretch_parts(&self.parts, k)?,
        })
    }

    /// The parts sorted decreasingly.
    pub fn sorted(&self) -> Partition {
        let mut parts = self.parts.clone();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// Compositions of `n` into positive parts, in lexicographic order.
    pub fn all_positive_of_size(n: u64) -> Vec<Composition> {
        fn rec(rest: u64, cur: &mut Vec<u64>, out: &mut Vec<Composition>) {
            if rest == 0 {
                out.push(Composition::new(cur.clone()));
                return;
            }
            for p in 1..=rest {
                cur.push(p);
                rec(rest - p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, &mut Vec::new(), &mut out);
        out
    }
}

impl From<Vec<u64>> for Composition {
    fn from(parts: Vec<u64>) -> Self {
        Self { parts }
    }
}

impl From<Composition> for Vec<u64> {
    fn from(c: Composition) -> Self {
        c.parts
    }
}

impl From<Partition> for Composition {
    fn from(p: Partition) -> Self {
        Self { parts: p.parts }
    }
}

impl FromStr for Composition {
    type Err = ShapeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(Self::new(parse_parts(s)?))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let shown: Vec<String> = self.parts.iter().map(u64::to_string).collect();
        write!(f, "{}", shown.join(","))
    }
}

/// The skew shape `outer / inner`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self, ShapeError> {
        let len = outer.len().max(inner.len());
        for row in 0..len {
            if inner.part(row) > outer.part(row) {
                return Err(ShapeError::NotContained {
                    row,
                    inner: inner.part(row),
                    outer: outer.part(row),
                });
            }
        }
        Ok(Self { outer, inner })
    }

    pub fn straight(outer: Partition) -> Self {
        Self {
            outer,
            inner: Partition::empty(),
        }
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    /// Number of rows, i.e. the longer of the two stored lengths.
    pub fn rows(&self) -> usize {
        self.outer.len().max(self.inner.len())
    }

    pub fn cell_count(&self) -> u64 {
        self.outer.size() - self.inner.size()
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.outer, self.inner)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u64]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn stretch_examples() {
        assert_eq!(p(&[6, 4, 3, 3]).stretch(1).unwrap(), p(&[6, 4, 3, 3]));
        assert_eq!(p(&[2, 1, 1]).stretch(3).unwrap(), p(&[6, 3, 3]));
        assert_eq!(p(&[2, 1]).stretch(4).unwrap(), p(&[8, 4]));
        assert_eq!(p(&[2, 1]).stretch(0), Err(ShapeError::ZeroStretch));
        assert_eq!(p(&[2, 1, 0]).stretch(2).unwrap().len(), 3);
    }

    #[test]
    fn dominance_examples() {
        assert!(p(&[2, 1]).dominates(&p(&[1, 1, 1])));
        assert!(!p(&[1, 1, 1]).dominates(&p(&[2, 1])));
        assert!(p(&[3, 1]).dominates(&p(&[3, 1])));
        assert!(!p(&[3]).dominates(&p(&[1, 1])));
    }

    #[test]
    fn dominance_is_a_partial_order() {
        for n in 0..=8 {
            let all = Partition::all_of_size(n);
            for a in &all {
                assert!(a.dominates(a));
                for b in &all {
                    if a.dominates(b) && b.dominates(a) {
                        assert_eq!(a, b);
                    }
                    for c in &all {
                        if a.dominates(b) && b.dominates(c) {
                            assert!(a.dominates(c));
                        }
                    }
                    for k in 1..=3 {
                        assert_eq!(
                            a.stretch(k).unwrap().dominates(&b.stretch(k).unwrap()),
                            a.dominates(b)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=8).map(|n| Partition::all_of_size(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(Composition::all_positive_of_size(4).len(), 8);
        assert_eq!(Composition::all_positive_of_size(0).len(), 1);
    }

    #[test]
    fn subpartitions_of_21() {
        let subs = p(&[2, 1]).subpartitions();
        let mut shown: Vec<String> = subs.iter().map(|s| s.to_string()).collect();
        shown.sort();
        assert_eq!(shown, vec!["0", "1", "1,1", "2", "2,1"]);
    }

    #[test]
    fn skew_cell_count() {
        let s = SkewShape::new(p(&[6, 4, 3, 3]), p(&[3, 2, 1])).unwrap();
        assert_eq!(s.cell_count(), 10);
        let l = p(&[3, 2]);
        assert_eq!(SkewShape::new(l.clone(), l).unwrap().cell_count(), 0);
        assert_eq!(SkewShape::straight(p(&[2, 1])).cell_count(), 3);
        assert!(SkewShape::new(p(&[2]), p(&[1, 1])).is_err());
    }

    #[test]
    fn equality_ignores_trailing_zeros() {
        assert_eq!(p(&[3, 1, 0, 0]), p(&[3, 1]));
        assert_ne!(p(&[3, 1]), p(&[3, 1, 1]));
    }

    #[test]
    fn validation_names_first_bad_index() {
        assert_eq!(
            Partition::new(vec![3, 1, 2, 5]),
            Err(ShapeError::NotDecreasing { index: 2, left: 1, right: 2 })
        );
    }

    #[test]
    fn text_syntax() {
        assert_eq!("6,4,3,3".parse::<Partition>().unwrap(), p(&[6, 4, 3, 3]));
        assert!("0".parse::<Partition>().unwrap().is_empty());
        assert!("".parse::<Partition>().unwrap().is_empty());
        assert!("1,x".parse::<Partition>().is_err());
        assert_eq!(p(&[6, 4, 3, 3]).to_string(), "6,4,3,3");
        assert_eq!(Partition::empty().to_string(), "0");
        assert_eq!(
            "1,0,2".parse::<Composition>().unwrap().parts(),
            &[1, 0, 2]
        );
    }

    proptest::proptest! {
        #[test]
        fn stretch_composes(parts in proptest::collection::vec(0u64..20, 0..6), a in 1u64..5, b in 1u64..5) {
            let mut parts = parts;
            parts.sort_unstable_by(|x, y| y.cmp(x));
            let q = Partition::new(parts).unwrap();
            proptest::prop_assert_eq!(q.stretch(a).unwrap().stretch(b).unwrap(), q.stretch(a * b).unwrap());
        }
    }
}
