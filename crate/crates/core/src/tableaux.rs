//! Marked shifted tableaux of flagged strict partitions, row-strict skew
//! tableaux, their weights, and the tableau-side definitions of the flagged
//! factorial Q-functions.
//!
//! A marked shifted tableau fills the shifted diagram with the alphabet
//! `1' < 1 < 2' < 2 < ... < 1o < 2o < ...` subject to
//!
//! 1. entries weakly increase along rows and columns;
//! 2. unmarked numbers strictly increase down columns;
//! 3. primed numbers strictly increase along rows;
//! 4. circled numbers strictly increase along rows;
//! 5. circled values in row `i` are at most the flag `f_i` (so a row with
//!    `f_i = 0` holds no circled entry).
//!
//! The factorial weight of a tableau multiplies one degree-1 factor per box:
//! `x_k + b_{c-r}` for unmarked `k`, `x_k - b_{c-r}` for primed `k`, and
//! `z_k + b_{k+r-c}` for circled `k`, where `r`,`c` are the box's row and
//! (absolute) column and the star substitution `b_{-i} -> -b_{i+1}` is
//! applied. Truncation to finitely many x-variables caps unmarked and primed
//! values at `n_x`; circled values are capped by the flag already.
//!
//! Enumeration is deterministic: boxes are filled in row-major order and
//! candidates tried in alphabet order, so streams are reproducible and the
//! parallel chunking (over fillings of the first row) is stable.

use std::fmt;
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::exec;
use crate::poly::Polynomial;
use crate::shapes::{barred_skew, FlaggedSkewShape, FlaggedStrictPartition, StrictPartition};

/// One cell entry: an unmarked, primed, or circled positive integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Entry {
    Primed(u32),
    Unmarked(u32),
    Circled(u32),
}

impl Entry {
    pub fn value(self) -> u32 {
        match self {
            Entry::Primed(k) | Entry::Unmarked(k) | Entry::Circled(k) => k,
        }
    }

    fn rank(self) -> (u8, u32, u8) {
        match self {
            Entry::Primed(k) => (0, k, 0),
            Entry::Unmarked(k) => (0, k, 1),
            Entry::Circled(k) => (1, k, 0),
        }
    }

    pub fn is_unmarked(self) -> bool {
        matches!(self, Entry::Unmarked(_))
    }
    pub fn is_primed(self) -> bool {
        matches!(self, Entry::Primed(_))
    }
    pub fn is_circled(self) -> bool {
        matches!(self, Entry::Circled(_))
    }
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Unmarked(k) => write!(f, "{k}"),
            Entry::Primed(k) => write!(f, "{k}'"),
            Entry::Circled(k) => write!(f, "{k}o"),
        }
    }
}

impl FromStr for Entry {
    type Err = Error;
    fn from_str(s: &str) -> Result<Entry> {
        let bad = || Error::Parse(format!("invalid tableau entry `{s}`"));
        let (digits, kind) = match s.as_bytes().last() {
            Some(b'\'') => (&s[..s.len() - 1], 1),
            Some(b'o') => (&s[..s.len() - 1], 2),
            _ => (s, 0),
        };
        let k: u32 = digits.parse().map_err(|_| bad())?;
        if k == 0 {
            return Err(bad());
        }
        Ok(match kind {
            1 => Entry::Primed(k),
            2 => Entry::Circled(k),
            _ => Entry::Unmarked(k),
        })
    }
}

/// The tableau rules, numbered as in the definition; used to report the
/// first violated rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MstRule {
    WeakIncrease = 1,
    UnmarkedColumnsStrict = 2,
    PrimedRowsStrict = 3,
    CircledRowsStrict = 4,
    FlagBound = 5,
}

impl MstRule {
    pub fn number(self) -> u8 {
        self as u8
    }
}

/// A filling of the shifted diagram of a flagged strict partition. Row `i`
/// (1-based) occupies absolute columns `i ..= i + lambda_i - 1`.
///
/// Construction only checks that the filling covers the diagram; rule
/// validity is a separate query so that invalid candidates can be inspected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedShiftedTableau {
    pub shape: FlaggedStrictPartition,
    rows: Vec<Vec<Entry>>,
}

impl MarkedShiftedTableau {
    pub fn from_rows(shape: FlaggedStrictPartition, rows: Vec<Vec<Entry>>) -> Result<Self> {
        if rows.len() != shape.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} rows for a shape of length {}",
                rows.len(),
                shape.len()
            )));
        }
        for (i, row) in rows.iter().enumerate() {
            let want = shape.lambda.part(i + 1) as usize;
            if row.len() != want {
                return Err(Error::ShapeMismatch(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    want
                )));
            }
        }
        Ok(MarkedShiftedTableau { shape, rows })
    }

    pub fn rows(&self) -> &[Vec<Entry>] {
        &self.rows
    }

    /// Entry at 1-based row `i` and absolute column `j`.
    fn entry(&self, i: usize, j: usize) -> Option<Entry> {
        let row = self.rows.get(i - 1)?;
        if j < i {
            return None;
        }
        row.get(j - i).copied()
    }

    /// The lowest-numbered violated rule, or `None` for a valid tableau.
    pub fn first_violation(&self) -> Option<MstRule> {
        let r = self.rows.len();
        // rule 1: weak increase along rows and columns
        for i in 1..=r {
            for (jj, pair) in self.rows[i - 1].windows(2).enumerate() {
                let _ = jj;
                if pair[1] < pair[0] {
                    return Some(MstRule::WeakIncrease);
                }
            }
            if i >= 2 {
                for jj in 0..self.rows[i - 1].len() {
                    let j = i + jj;
                    if let Some(above) = self.entry(i - 1, j) {
                        if self.rows[i - 1][jj] < above {
                            return Some(MstRule::WeakIncrease);
                        }
                    }
                }
            }
        }
        // rule 2: unmarked strictly increasing down each column
        let max_col = self.shape.lambda.part(1) as usize;
        for j in 1..=max_col {
            let mut last: Option<u32> = None;
            for i in 1..=r {
                if let Some(Entry::Unmarked(k)) = self.entry(i, j) {
                    if last.is_some_and(|p| p >= k) {
                        return Some(MstRule::UnmarkedColumnsStrict);
                    }
                    last = Some(k);
                }
            }
        }
        // rules 3 and 4: primed/circled strictly increasing along each row
        for kind in [3u8, 4u8] {
            for row in &self.rows {
                let mut last: Option<u32> = None;
                for e in row {
                    let hit = match (kind, e) {
                        (3, Entry::Primed(k)) => Some(*k),
                        (4, Entry::Circled(k)) => Some(*k),
                        _ => None,
                    };
                    if let Some(k) = hit {
                        if last.is_some_and(|p| p >= k) {
                            return Some(if kind == 3 {
                                MstRule::PrimedRowsStrict
                            } else {
                                MstRule::CircledRowsStrict
                            });
                        }
                        last = Some(k);
                    }
                }
            }
        }
        // rule 5: circled values bounded by the row flag
        for (i, row) in self.rows.iter().enumerate() {
            let cap = self.shape.flag_at(i + 1);
            for e in row {
                if let Entry::Circled(k) = e {
                    if *k > cap {
                        return Some(MstRule::FlagBound);
                    }
                }
            }
        }
        None
    }

    pub fn is_valid(&self) -> bool {
        self.first_violation().is_none()
    }

    /// The factorial weight, with the star substitution already applied.
    pub fn weight(&self) -> Polynomial {
        let mut w = Polynomial::one();
        for (i0, row) in self.rows.iter().enumerate() {
            let i = i0 + 1;
            for (jj, &e) in row.iter().enumerate() {
                let j = i + jj;
                w = &w * &factorial_factor(e, i, j);
            }
        }
        w
    }

    /// JSON form `{"shape":{"lambda":[...],"flag":[...]},"rows":[["1","2'"],...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                serde_json::Value::Array(
                    row.iter()
                        .map(|e| serde_json::Value::String(e.to_string()))
                        .collect(),
                )
            })
            .collect();
        serde_json::json!({
            "shape": {
                "lambda": self.shape.lambda.parts(),
                "flag": self.shape.flag,
            },
            "rows": rows,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("tableau json: {msg}"));
        let shape = v.get("shape").ok_or_else(|| bad("missing `shape`"))?;
        let nums = |key: &str| -> Result<Vec<u32>> {
            shape
                .get(key)
                .and_then(|a| a.as_array())
                .ok_or_else(|| bad(&format!("missing `shape.{key}`")))?
                .iter()
                .map(|x| {
                    x.as_u64()
                        .and_then(|n| u32::try_from(n).ok())
                        .ok_or_else(|| bad(&format!("bad entry in `shape.{key}`")))
                })
                .collect()
        };
        let shape = FlaggedStrictPartition::new(nums("lambda")?, nums("flag")?)?;
        let rows = v
            .get("rows")
            .and_then(|a| a.as_array())
            .ok_or_else(|| bad("missing `rows`"))?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| bad("row is not an array"))?
                    .iter()
                    .map(|e| {
                        e.as_str()
                            .ok_or_else(|| bad("entry is not a string"))
                            .and_then(Entry::from_str)
                    })
                    .collect::<Result<Vec<Entry>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        MarkedShiftedTableau::from_rows(shape, rows)
    }
}

/// Weight factor of a single box at 1-based row `i`, absolute column `j`.
fn factorial_factor(e: Entry, i: usize, j: usize) -> Polynomial {
    let (i, j) = (i as i32, j as i32);
    match e {
        Entry::Unmarked(k) => &Polynomial::x(k as i32) + &b_star(j - i),
        Entry::Primed(k) => &Polynomial::x(k as i32) - &b_star(j - i),
        Entry::Circled(k) => &Polynomial::z(k as i32) + &b_star(k as i32 + i - j),
    }
}

/// `b_idx` with the star substitution applied: `b_idx` when `idx >= 1`,
/// `-b_{1-idx}` otherwise.
fn b_star(idx: i32) -> Polynomial {
    if idx >= 1 {
        Polynomial::b(idx)
    } else {
        -Polynomial::b(1 - idx)
    }
}

#[derive(Clone, Copy)]
enum WeightKind {
    /// Factorial binomials, star applied.
    Factorial,
    /// Plain monomials: `x_k` per unmarked/primed, `b_k` per circled.
    Monomial,
}

fn row_weight(row: &[Entry], i: usize, kind: WeightKind) -> Polynomial {
    let mut w = Polynomial::one();
    for (jj, &e) in row.iter().enumerate() {
        let factor = match kind {
            WeightKind::Factorial => factorial_factor(e, i, i + jj),
            WeightKind::Monomial => match e {
                Entry::Unmarked(k) | Entry::Primed(k) => Polynomial::x(k as i32),
                Entry::Circled(k) => Polynomial::b(k as i32),
            },
        };
        w = &w * &factor;
    }
    w
}

/// `true` when `e` may sit directly right of `left`.
fn ok_right_of(left: Entry, e: Entry) -> bool {
    match e.cmp(&left) {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Equal => e.is_unmarked(),
        std::cmp::Ordering::Less => false,
    }
}

/// `true` when `e` may sit directly below `above`.
fn ok_below(above: Entry, e: Entry) -> bool {
    match e.cmp(&above) {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Equal => !e.is_unmarked(),
        std::cmp::Ordering::Less => false,
    }
}

/// All valid fillings of row `i` given the row above, in alphabet order per
/// box (backtracking left to right).
fn fill_row(n_x: usize, flag_i: u32, width: usize, prev: Option<&[Entry]>) -> Vec<Vec<Entry>> {
    let mut candidates: Vec<Entry> = Vec::with_capacity(2 * n_x + flag_i as usize);
    for v in 1..=n_x as u32 {
        candidates.push(Entry::Primed(v));
        candidates.push(Entry::Unmarked(v));
    }
    for c in 1..=flag_i {
        candidates.push(Entry::Circled(c));
    }

    let mut out = Vec::new();
    let mut cur: Vec<Entry> = Vec::with_capacity(width);
    fn rec(
        candidates: &[Entry],
        width: usize,
        prev: Option<&[Entry]>,
        cur: &mut Vec<Entry>,
        out: &mut Vec<Vec<Entry>>,
    ) {
        if cur.len() == width {
            out.push(cur.clone());
            return;
        }
        let jj = cur.len();
        for &e in candidates {
            if let Some(&left) = jj.checked_sub(1).and_then(|p| cur.get(p)) {
                if !ok_right_of(left, e) {
                    continue;
                }
            }
            // In a shifted diagram of a strict partition, every box below
            // the first row has a box above it, at local index jj+1 of the
            // previous row.
            if let Some(prev) = prev {
                if !ok_below(prev[jj + 1], e) {
                    continue;
                }
            }
            cur.push(e);
            rec(candidates, width, prev, cur, out);
            cur.pop();
        }
    }
    rec(&candidates, width, prev, &mut cur, &mut out);
    out
}

fn visit_rows<F: FnMut(&[Vec<Entry>])>(
    shape: &FlaggedStrictPartition,
    n_x: usize,
    i: usize,
    rows: &mut Vec<Vec<Entry>>,
    f: &mut F,
) {
    if i > shape.len() {
        f(rows);
        return;
    }
    let width = shape.lambda.part(i) as usize;
    let prev = rows.last().map(|r| r.as_slice());
    for row in fill_row(n_x, shape.flag_at(i), width, prev) {
        rows.push(row);
        visit_rows(shape, n_x, i + 1, rows, f);
        rows.pop();
    }
}

/// All marked shifted tableaux of the shape with unmarked/primed values at
/// most `n_x`, in deterministic row-major/alphabet order.
pub fn enumerate_mst(shape: &FlaggedStrictPartition, n_x: usize) -> Vec<MarkedShiftedTableau> {
    let mut out = Vec::new();
    let mut rows = Vec::new();
    visit_rows(shape, n_x, 1, &mut rows, &mut |rows| {
        out.push(MarkedShiftedTableau {
            shape: shape.clone(),
            rows: rows.to_vec(),
        });
    });
    out
}

/// Weight sum over fillings of rows `i..` given the previous row, with the
/// weight of rows `< i` already accumulated in `prefix`.
fn sum_tail(
    shape: &FlaggedStrictPartition,
    n_x: usize,
    kind: WeightKind,
    i: usize,
    prev: Option<&[Entry]>,
    prefix: Polynomial,
) -> Polynomial {
    if i > shape.len() {
        return prefix;
    }
    let width = shape.lambda.part(i) as usize;
    let mut acc = Polynomial::zero();
    for row in fill_row(n_x, shape.flag_at(i), width, prev) {
        let w = &prefix * &row_weight(&row, i, kind);
        acc = acc + sum_tail(shape, n_x, kind, i + 1, Some(&row), w);
    }
    acc
}

/// Direct enumeration: every tableau visited once, weights multiplied along
/// the recursion.
fn sum_mst_direct(
    shape: &FlaggedStrictPartition,
    n_x: usize,
    kind: WeightKind,
    parallel: bool,
) -> Polynomial {
    // a row i > n_x with lambda_i - f_i > 0 admits no filling at all
    for i in (n_x + 1)..=shape.len() {
        if shape.lambda.part(i) > shape.flag_at(i) {
            return Polynomial::zero();
        }
    }
    if shape.is_empty() {
        return Polynomial::one();
    }
    let width = shape.lambda.part(1) as usize;
    let seeds = fill_row(n_x, shape.flag_at(1), width, None);
    let per_seed = |row: Vec<Entry>| {
        let w = row_weight(&row, 1, kind);
        sum_tail(shape, n_x, kind, 2, Some(&row), w)
    };
    if parallel {
        exec::map_sum(seeds, Polynomial::zero, per_seed)
    } else {
        seeds.into_iter().map(per_seed).sum()
    }
}

/// True when removing the circled region of every tableau leaves an
/// unshifted skew diagram, i.e. when the weight sum factors over the
/// unmarked-part shape. Holds in particular whenever the Pfaffian validity
/// conditions do.
fn splits_over_unmarked_shapes(shape: &FlaggedStrictPartition) -> bool {
    let r = shape.len();
    r < 2
        || shape.lambda.part(r - 1) > shape.flag_at(r - 1)
        || shape.lambda.part(r) > shape.flag_at(r)
}

/// Grouped summation: the tableau set is partitioned by the shape `mu` of
/// the unmarked/primed part, and the weight of a tableau is the product of
/// its two parts' weights, so the sum factors as
/// `sum_mu (no-circle sum over mu) * (circled-part sum over the skew
/// complement)`. Both factors are tableau enumerations; this is the same
/// sum as [`sum_mst_direct`] with the redundancy between tableaux sharing a
/// part removed. Only valid under [`splits_over_unmarked_shapes`].
fn sum_mst_grouped(
    shape: &FlaggedStrictPartition,
    n_x: usize,
    kind: WeightKind,
    parallel: bool,
) -> Polynomial {
    let mus = unmarked_part_shapes(&shape.lambda);
    let per_mu = |mu_parts: Vec<u32>| {
        let positive: Vec<u32> = mu_parts.iter().copied().filter(|&p| p > 0).collect();
        let inner = zero_flag_sum_cached(&positive, n_x, kind);
        if inner.is_zero() {
            return Polynomial::zero();
        }
        let mu = StrictPartition::new(positive).expect("strict by construction");
        let skew = barred_skew(&shape.lambda, &mu, &shape.flag)
            .expect("barred pair is a valid skew shape");
        let circled = rst_sum(&skew, kind);
        inner * circled
    };
    if parallel {
        exec::map_sum(mus, Polynomial::zero, per_mu)
    } else {
        mus.into_iter().map(per_mu).sum()
    }
}

/// Memo for the zero-flag (no-circle) weight sums, which recur across every
/// grouped summation on a grid. Last write wins; the values are
/// deterministic, so a racing recomputation is benign.
fn zero_flag_sum_cached(parts: &[u32], n_x: usize, kind: WeightKind) -> Polynomial {
    type Cache = RwLock<FxHashMap<(Vec<u32>, usize, u8), Polynomial>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(FxHashMap::default()));
    let key = (parts.to_vec(), n_x, kind as u8);
    if let Some(hit) = cache.read().expect("cache lock").get(&key) {
        return hit.clone();
    }
    let shape = FlaggedStrictPartition::new(parts.to_vec(), vec![0; parts.len()])
        .expect("strict by construction");
    let value = sum_mst_direct(&shape, n_x, kind, false);
    let _ = cache
        .write()
        .expect("cache lock")
        .insert(key, value.clone());
    value
}

fn sum_mst(shape: &FlaggedStrictPartition, n_x: usize, kind: WeightKind, parallel: bool) -> Polynomial {
    // A row i > n_x with lambda_i - f_i > 0 forces more than f_i circled
    // entries or an unmarked/primed value exceeding n_x; either way no
    // tableau exists.
    for i in (n_x + 1)..=shape.len() {
        if shape.lambda.part(i) > shape.flag_at(i) {
            return Polynomial::zero();
        }
    }
    if splits_over_unmarked_shapes(shape) {
        sum_mst_grouped(shape, n_x, kind, parallel)
    } else {
        sum_mst_direct(shape, n_x, kind, parallel)
    }
}

/// Weight sum by direct enumeration regardless of shape; the grouped and
/// direct routes are cross-checked in the verification suites.
pub(crate) fn q_flagged_tableau_direct(shape: &FlaggedStrictPartition, n_x: usize) -> Polynomial {
    sum_mst_direct(shape, n_x, WeightKind::Factorial, true)
}

/// Circled-part weight sum over the row-strict tableaux of a skew shape:
/// the starred factorial weight, or plain `b_v` monomials.
fn rst_sum(shape: &FlaggedSkewShape, kind: WeightKind) -> Polynomial {
    let tableaux = enumerate_row_strict(shape);
    match kind {
        WeightKind::Factorial => tableaux
            .iter()
            .map(|t| t.weight())
            .sum::<Polynomial>()
            .star(),
        WeightKind::Monomial => tableaux
            .iter()
            .map(|t| {
                let mut w = Polynomial::one();
                for row in t.rows() {
                    for &v in row {
                        w = &w * &Polynomial::b(v as i32);
                    }
                }
                w
            })
            .sum(),
    }
}

/// The flagged factorial Q-function in `n_x` x-variables: the weight sum
/// over all marked shifted tableaux of the shape. Symmetric in the
/// x-variables and homogeneous of degree `|lambda|`.
pub fn q_flagged_tableau(shape: &FlaggedStrictPartition, n_x: usize) -> Polynomial {
    sum_mst(shape, n_x, WeightKind::Factorial, true)
}

/// Sequential reference path of [`q_flagged_tableau`] (used by the benches
/// to compare against the rayon path; identical output).
pub fn q_flagged_tableau_seq(shape: &FlaggedStrictPartition, n_x: usize) -> Polynomial {
    sum_mst(shape, n_x, WeightKind::Factorial, false)
}

/// The monomial-weight tableau sum: `x_k` per unmarked or primed entry,
/// `b_k` per circled entry.
pub fn mst_monomial_sum(shape: &FlaggedStrictPartition, n_x: usize) -> Polynomial {
    sum_mst(shape, n_x, WeightKind::Monomial, true)
}

// ---- Row-strict skew tableaux ----

/// A row-strict flagged tableau of an unshifted skew shape: rows strictly
/// increase left to right, columns weakly increase top to bottom, and row
/// `i` uses values at most `f_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowStrictTableau {
    pub shape: FlaggedSkewShape,
    rows: Vec<Vec<u32>>,
}

impl RowStrictTableau {
    pub fn from_rows(shape: FlaggedSkewShape, rows: Vec<Vec<u32>>) -> Result<Self> {
        if rows.len() != shape.rows() {
            return Err(Error::ShapeMismatch(format!(
                "{} rows for a shape with {} rows",
                rows.len(),
                shape.rows()
            )));
        }
        for i in 1..=shape.rows() {
            let row = &rows[i - 1];
            if row.len() != shape.skew.row_len(i) as usize {
                return Err(Error::ShapeMismatch(format!(
                    "row {i} has {} entries, expected {}",
                    row.len(),
                    shape.skew.row_len(i)
                )));
            }
            for w in row.windows(2) {
                if w[0] >= w[1] {
                    return Err(Error::ShapeMismatch(format!(
                        "row {i} is not strictly increasing"
                    )));
                }
            }
            for (idx, &v) in row.iter().enumerate() {
                if v == 0 || v > shape.flag_at(i) {
                    return Err(Error::ShapeMismatch(format!(
                        "entry {v} at row {i} exceeds flag {}",
                        shape.flag_at(i)
                    )));
                }
                // column constraint against the row above
                if i >= 2 {
                    let j = shape.skew.inner.part(i) as usize + idx + 1;
                    if j > shape.skew.inner.part(i - 1) as usize {
                        let above_idx = j - shape.skew.inner.part(i - 1) as usize - 1;
                        if let Some(&a) = rows[i - 2].get(above_idx) {
                            if v < a {
                                return Err(Error::ShapeMismatch(format!(
                                    "column {j} decreases from row {} to {i}",
                                    i - 1
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(RowStrictTableau { shape, rows })
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Weight `prod (z_v + b_{v + r - c})` over entries `v` at row `r`,
    /// column `c`; b indices are signed and the star substitution is NOT
    /// applied.
    pub fn weight(&self) -> Polynomial {
        let mut w = Polynomial::one();
        for i in 1..=self.shape.rows() {
            let inner = self.shape.skew.inner.part(i) as i32;
            for (idx, &v) in self.rows[i - 1].iter().enumerate() {
                let j = inner + idx as i32 + 1;
                let factor = &Polynomial::z(v as i32) + &Polynomial::b(v as i32 + i as i32 - j);
                w = &w * &factor;
            }
        }
        w
    }
}

/// All row-strict tableaux of a flagged skew shape, in deterministic
/// row-major order. Finite because row `i` holds at most `f_i` values.
pub fn enumerate_row_strict(shape: &FlaggedSkewShape) -> Vec<RowStrictTableau> {
    fn fill(
        shape: &FlaggedSkewShape,
        i: usize,
        rows: &mut Vec<Vec<u32>>,
        out: &mut Vec<RowStrictTableau>,
    ) {
        if i > shape.rows() {
            out.push(RowStrictTableau {
                shape: shape.clone(),
                rows: rows.clone(),
            });
            return;
        }
        let width = shape.skew.row_len(i) as usize;
        let flag = shape.flag_at(i);
        let inner = shape.skew.inner.part(i) as usize;
        let mut cur: Vec<u32> = Vec::with_capacity(width);
        fn rec(
            shape: &FlaggedSkewShape,
            i: usize,
            width: usize,
            flag: u32,
            inner: usize,
            rows: &mut Vec<Vec<u32>>,
            cur: &mut Vec<u32>,
            out: &mut Vec<RowStrictTableau>,
        ) {
            if cur.len() == width {
                rows.push(cur.clone());
                fill(shape, i + 1, rows, out);
                rows.pop();
                return;
            }
            let lo = cur.last().map_or(1, |&l| l + 1);
            // column constraint: the box above (if any) is a lower bound
            let j = inner + cur.len() + 1;
            let above = if i >= 2 && j > shape.skew.inner.part(i - 1) as usize {
                let above_idx = j - shape.skew.inner.part(i - 1) as usize - 1;
                rows[i - 2].get(above_idx).copied().unwrap_or(0)
            } else {
                0
            };
            for v in lo.max(above).max(1)..=flag {
                cur.push(v);
                rec(shape, i, width, flag, inner, rows, cur, out);
                cur.pop();
            }
        }
        rec(shape, i, width, flag, inner, rows, &mut cur, out);
    }
    let mut out = Vec::new();
    let mut rows = Vec::new();
    fill(shape, 1, &mut rows, &mut out);
    out
}

/// The row-strict flagged skew factorial Schur polynomial: weight sum over
/// all row-strict tableaux of the shape. Contains signed b indices; the
/// star substitution is not applied.
pub fn row_strict_skew_schur(shape: &FlaggedSkewShape) -> Polynomial {
    let tableaux = enumerate_row_strict(shape);
    exec::map_sum(tableaux, Polynomial::zero, |t| t.weight())
}

// ---- Decomposition into zero-flag Q-functions ----

/// All strict `mu` inside `lambda` (padded with trailing zeros to length r)
/// whose barred vector is a partition, i.e. at most one trailing zero row:
/// the possible shapes of the unmarked/primed part of a tableau. Ordered
/// lexicographically descending.
fn unmarked_part_shapes(lambda: &StrictPartition) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = Vec::new();
    fn gen(lambda: &StrictPartition, i: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i > lambda.len() {
            out.push(cur.clone());
            return;
        }
        let hi = lambda
            .part(i)
            .min(cur.last().map_or(u32::MAX, |&p| p.saturating_sub(1)));
        let lo = if i == lambda.len() { 0 } else { 1 };
        // descending order gives lexicographically descending output
        for v in (lo..=hi).rev() {
            cur.push(v);
            gen(lambda, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut cur = Vec::new();
    gen(lambda, 1, &mut cur, &mut out);
    out
}

/// Decompose a flagged Q-function over the unmarked/primed sub-shapes: the
/// returned pairs `(mu, coeff)` satisfy
/// `Q_{lambda,f} = sum_mu Q_mu(x|b) * coeff_mu` where `coeff_mu` is the
/// starred row-strict skew Schur polynomial of `barlambda/barmu` and only
/// nonzero coefficients are kept. Pairs are ordered lexicographically
/// descending in `mu`.
///
/// Requires, for shapes of length `r >= 2`, that `lambda_{r-1} > f_{r-1}`
/// or `lambda_r > f_r`: otherwise removing the circled region need not
/// leave an unshifted skew diagram and the expansion is not defined.
pub fn decompose_q(shape: &FlaggedStrictPartition) -> Result<Vec<(StrictPartition, Polynomial)>> {
    let r = shape.len();
    if r >= 2 {
        let ok = shape.lambda.part(r - 1) > shape.flag_at(r - 1)
            || shape.lambda.part(r) > shape.flag_at(r);
        if !ok {
            return Err(Error::Hypothesis(format!(
                "decomposition needs lambda_{}={} > f_{}={} or lambda_{}={} > f_{}={}",
                r - 1,
                shape.lambda.part(r - 1),
                r - 1,
                shape.flag_at(r - 1),
                r,
                shape.lambda.part(r),
                r,
                shape.flag_at(r)
            )));
        }
    }

    let results = exec::map_collect(unmarked_part_shapes(&shape.lambda), |mu_parts| {
        let positive: Vec<u32> = mu_parts.iter().copied().filter(|&p| p > 0).collect();
        let mu = StrictPartition::new(positive).expect("strict by construction");
        let skew = barred_skew(&shape.lambda, &mu, &shape.flag)
            .expect("barred pair is a valid skew shape");
        let coeff = row_strict_skew_schur(&skew).star();
        (mu, coeff)
    });
    Ok(results.into_iter().filter(|(_, c)| !c.is_zero()).collect())
}
