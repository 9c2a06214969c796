//! Lattice-path form of row-strict skew tableaux.
//!
//! Paths live on the grid `Z x Z_{>=0}` with two step kinds, both dropping
//! the height by one: vertical (column unchanged) and diagonal (column drops
//! by one). Row `i` of a flagged skew shape corresponds to the path from
//! `u_i = (lambda_i - i, f_i)` down to `v_i = (mu_i - i, 0)` whose `k`-th
//! diagonal step starts at `(lambda_i - i - k + 1, j_k)`, where
//! `j_1 > j_2 > ...` are the entries of the row read in decreasing order. A
//! diagonal step with source `(s, t)` weighs `z_t + b_{t-s}`; vertical steps
//! weigh 1, so the tuple weight equals the tableau weight.
//!
//! The correspondence is a weight-preserving bijection between row-strict
//! tableaux and tuples of pairwise vertex-disjoint paths; converting a
//! crossing tuple back to a tableau is an error.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::shapes::FlaggedSkewShape;
use crate::tableaux::RowStrictTableau;

/// A tuple of lattice paths for a flagged skew shape, one per row, each
/// recorded by the heights of its diagonal-step sources in strictly
/// decreasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathTuple {
    pub shape: FlaggedSkewShape,
    diag_heights: Vec<Vec<u32>>,
}

impl PathTuple {
    /// Build a tuple, checking per-path structure (step counts, height
    /// bounds, strict decrease) but not disjointness.
    pub fn new(shape: FlaggedSkewShape, diag_heights: Vec<Vec<u32>>) -> Result<Self> {
        if diag_heights.len() != shape.rows() {
            return Err(Error::ShapeMismatch(format!(
                "{} paths for a shape with {} rows",
                diag_heights.len(),
                shape.rows()
            )));
        }
        for i in 1..=shape.rows() {
            let hs = &diag_heights[i - 1];
            if hs.len() != shape.skew.row_len(i) as usize {
                return Err(Error::ShapeMismatch(format!(
                    "path {i} has {} diagonal steps, expected {}",
                    hs.len(),
                    shape.skew.row_len(i)
                )));
            }
            for w in hs.windows(2) {
                if w[0] <= w[1] {
                    return Err(Error::ShapeMismatch(format!(
                        "path {i} diagonal heights must strictly decrease"
                    )));
                }
            }
            if let Some(&first) = hs.first() {
                if first > shape.flag_at(i) {
                    return Err(Error::ShapeMismatch(format!(
                        "path {i} starts a diagonal above its flag {}",
                        shape.flag_at(i)
                    )));
                }
            }
            if hs.last().is_some_and(|&h| h == 0) {
                return Err(Error::ShapeMismatch(format!(
                    "path {i} has a diagonal at height 0"
                )));
            }
        }
        Ok(PathTuple { shape, diag_heights })
    }

    pub fn diag_heights(&self) -> &[Vec<u32>] {
        &self.diag_heights
    }

    /// Start vertex `(lambda_i - i, f_i)` of path `i` (1-based).
    pub fn start(&self, i: usize) -> (i64, i64) {
        (
            self.shape.skew.outer.part(i) as i64 - i as i64,
            self.shape.flag_at(i) as i64,
        )
    }

    /// End vertex `(mu_i - i, 0)` of path `i` (1-based).
    pub fn end(&self, i: usize) -> (i64, i64) {
        (self.shape.skew.inner.part(i) as i64 - i as i64, 0)
    }

    /// All vertices of path `i`, from start down to end.
    pub fn vertices(&self, i: usize) -> Vec<(i64, i64)> {
        let (mut x, start_y) = self.start(i);
        let mut verts = vec![(x, start_y)];
        let mut diag = self.diag_heights[i - 1].iter().peekable();
        let mut y = start_y;
        while y > 0 {
            if diag.peek().is_some_and(|&&h| h as i64 == y) {
                let _ = diag.next();
                x -= 1;
            }
            y -= 1;
            verts.push((x, y));
        }
        verts
    }

    /// True when no two paths share a vertex.
    pub fn is_disjoint(&self) -> bool {
        self.first_crossing().is_none()
    }

    fn first_crossing(&self) -> Option<(i64, i64)> {
        let mut seen = HashSet::new();
        for i in 1..=self.shape.rows() {
            for v in self.vertices(i) {
                if !seen.insert(v) {
                    return Some(v);
                }
            }
        }
        None
    }

    /// Product of the diagonal-edge weights `z_t + b_{t-s}` over all paths.
    /// Signed b indices, no star.
    pub fn weight(&self) -> Polynomial {
        let mut w = Polynomial::one();
        for i in 1..=self.shape.rows() {
            let (x0, _) = self.start(i);
            for (k, &t) in self.diag_heights[i - 1].iter().enumerate() {
                let s = x0 - k as i64;
                let factor =
                    &Polynomial::z(t as i32) + &Polynomial::b(t as i32 - s as i32);
                w = &w * &factor;
            }
        }
        w
    }
}

/// The path tuple of a row-strict tableau: row entries, read in decreasing
/// order, become the diagonal-source heights.
pub fn tableau_to_paths(t: &RowStrictTableau) -> PathTuple {
    let heights = t
        .rows()
        .iter()
        .map(|row| row.iter().rev().copied().collect())
        .collect();
    PathTuple::new(t.shape.clone(), heights).expect("tableau rows satisfy path structure")
}

/// Inverse of [`tableau_to_paths`]; fails on a crossing tuple.
pub fn paths_to_tableau(p: &PathTuple) -> Result<RowStrictTableau> {
    if let Some((x, y)) = p.first_crossing() {
        return Err(Error::IntersectingPaths(x, y));
    }
    let rows = p
        .diag_heights
        .iter()
        .map(|hs| hs.iter().rev().copied().collect())
        .collect();
    RowStrictTableau::from_rows(p.shape.clone(), rows)
}
