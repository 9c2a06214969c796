//! Partitions, strict partitions, flags, and (skew) diagrams.
//!
//! A strict partition is identified with its shifted Young diagram: row `i`
//! (1-based) occupies absolute columns `i ..= i + lambda_i - 1`. Skew shapes
//! are ordinary (unshifted) diagrams of a pair of partitions padded to equal
//! length.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Strictly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StrictPartition {
    parts: Vec<u32>,
}

impl StrictPartition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        for w in parts.windows(2) {
            if w[0] <= w[1] {
                return Err(Error::InvalidShape(format!(
                    "parts must be strictly decreasing, got {:?}",
                    parts
                )));
            }
        }
        if parts.last().is_some_and(|&p| p == 0) {
            return Err(Error::InvalidShape("parts must be positive".into()));
        }
        Ok(StrictPartition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of boxes.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Part at 1-based row `i`, zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// Componentwise containment, padding with zeros.
    pub fn contains(&self, other: &StrictPartition) -> bool {
        (1..=other.len()).all(|i| other.part(i) <= self.part(i))
    }

    /// The barred partition `(lambda_1, lambda_2+1, ..., lambda_r+r-1)`
    /// turning the shifted diagram into an ordinary one. `self` may carry
    /// trailing zero rows via `pad_len` (>= length); the result is a valid
    /// partition only if at most the last row is zero, which callers check
    /// via [`Partition::new`].
    pub fn barred(&self, pad_len: usize) -> Vec<u32> {
        (1..=pad_len.max(self.len()))
            .map(|i| self.part(i) + i as u32 - 1)
            .collect()
    }
}

impl std::fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A strict partition with a per-row cap vector of equal length.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FlaggedStrictPartition {
    pub lambda: StrictPartition,
    pub flag: Vec<u32>,
}

impl FlaggedStrictPartition {
    pub fn new(lambda: Vec<u32>, flag: Vec<u32>) -> Result<Self> {
        let lambda = StrictPartition::new(lambda)?;
        if flag.len() != lambda.len() {
            return Err(Error::InvalidShape(format!(
                "flag length {} does not match partition length {}",
                flag.len(),
                lambda.len()
            )));
        }
        Ok(FlaggedStrictPartition { lambda, flag })
    }

    pub fn len(&self) -> usize {
        self.lambda.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambda.is_empty()
    }

    /// Flag at 1-based row `i`.
    pub fn flag_at(&self, i: usize) -> u32 {
        self.flag[i - 1]
    }
}

/// Weakly decreasing nonnegative parts (trailing zeros allowed and kept,
/// so a skew pair can share an explicit common length).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::InvalidShape(format!(
                    "parts must be weakly decreasing, got {:?}",
                    parts
                )));
            }
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Rows including explicit zero rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.iter().all(|&p| p == 0)
    }

    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i - 1).copied().unwrap_or(0)
    }
}

/// An unshifted skew diagram `outer/inner`, both padded to the same length.
/// Row `i` occupies columns `inner_i + 1 ..= outer_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SkewShape {
    pub outer: Partition,
    pub inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Vec<u32>, inner: Vec<u32>) -> Result<Self> {
        let rows = outer.len().max(inner.len());
        let mut outer = outer;
        let mut inner = inner;
        outer.resize(rows, 0);
        inner.resize(rows, 0);
        let outer = Partition::new(outer)?;
        let inner = Partition::new(inner)?;
        for i in 1..=rows {
            if inner.part(i) > outer.part(i) {
                return Err(Error::InvalidShape(format!(
                    "inner part {} exceeds outer part {} in row {}",
                    inner.part(i),
                    outer.part(i),
                    i
                )));
            }
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn rows(&self) -> usize {
        self.outer.len()
    }

    /// Boxes in row `i` (1-based).
    pub fn row_len(&self, i: usize) -> u32 {
        self.outer.part(i) - self.inner.part(i)
    }

    pub fn size(&self) -> u32 {
        (1..=self.rows()).map(|i| self.row_len(i)).sum()
    }
}

/// A skew shape with a per-row cap vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FlaggedSkewShape {
    pub skew: SkewShape,
    pub flag: Vec<u32>,
}

impl FlaggedSkewShape {
    pub fn new(outer: Vec<u32>, inner: Vec<u32>, flag: Vec<u32>) -> Result<Self> {
        let skew = SkewShape::new(outer, inner)?;
        if flag.len() != skew.rows() {
            return Err(Error::InvalidShape(format!(
                "flag length {} does not match skew shape with {} rows",
                flag.len(),
                skew.rows()
            )));
        }
        Ok(FlaggedSkewShape { skew, flag })
    }

    pub fn rows(&self) -> usize {
        self.skew.rows()
    }

    pub fn flag_at(&self, i: usize) -> u32 {
        self.flag[i - 1]
    }
}

/// The barred skew shape of a flagged strict partition: `barlambda/barmu`
/// with `barmu_i = mu_i + i - 1`, the ordinary diagram left over when the
/// shifted diagram of `mu` is removed from the shifted diagram of `lambda`.
pub fn barred_skew(
    lambda: &StrictPartition,
    mu: &StrictPartition,
    flag: &[u32],
) -> Result<FlaggedSkewShape> {
    let rows = lambda.len();
    FlaggedSkewShape::new(lambda.barred(rows), mu.barred(rows), flag.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strict_partition_validation() {
        assert!(StrictPartition::new(vec![5, 3, 1]).is_ok());
        assert!(StrictPartition::new(vec![]).is_ok());
        assert!(StrictPartition::new(vec![3, 3]).is_err());
        assert!(StrictPartition::new(vec![3, 0]).is_err());
        assert!(StrictPartition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn barred_shapes() {
        let l = StrictPartition::new(vec![5, 3, 1]).unwrap();
        assert_eq!(l.barred(3), vec![5, 4, 3]);
        let m = StrictPartition::new(vec![3, 1]).unwrap();
        assert_eq!(m.barred(3), vec![3, 2, 2]);
    }

    #[test]
    fn skew_validation() {
        assert!(SkewShape::new(vec![3, 2, 1], vec![1, 1], ).is_ok());
        assert!(SkewShape::new(vec![2, 1], vec![3, 0]).is_err());
        let s = SkewShape::new(vec![3, 2, 1], vec![1, 1, 0]).unwrap();
        assert_eq!(s.row_len(1), 2);
        assert_eq!(s.row_len(2), 1);
        assert_eq!(s.size(), 4);
    }

    #[test]
    fn flag_length_checked() {
        assert!(FlaggedStrictPartition::new(vec![3, 1], vec![1]).is_err());
        assert!(FlaggedStrictPartition::new(vec![3, 1], vec![1, 0]).is_ok());
    }
}
