//! Schur-Pfaffians of coefficient families, by two independent routes, and
//! the Pfaffian/determinant closed forms for the Q-functions.
//!
//! For integer exponents `alpha` and sequences `c^(1), ..., c^(r)`, the
//! Schur-Pfaffian substitutes `c^(1)_{m_1} ... c^(r)_{m_r}` for each monomial
//! `t_1^{m_1} ... t_r^{m_r}` of the Laurent series
//!
//! ```text
//! f^alpha(t) = t_1^{a_1} ... t_r^{a_r} prod_{i<j} (1 - t_i/t_j)/(1 + t_i/t_j)
//! ```
//!
//! with `1/(1 + t_i/t_j)` expanded as a geometric series, and every sequence
//! vanishing in negative degree. [`schur_pfaffian`] evaluates this through
//! the pairwise skew-symmetric matrix
//!
//! ```text
//! P_ij = c^(i)_{a_i} c^(j)_{a_j} + 2 sum_{k>=1} (-1)^k c^(i)_{a_i+k} c^(j)_{a_j-k}
//! ```
//!
//! and a first-row-expansion matrix Pfaffian (odd families are padded with
//! the delta sequence and a trailing zero exponent). [`schur_pfaffian_laurent`]
//! multiplies the pair factors out directly and substitutes at the end; it
//! exists purely as an independent cross-check and must agree everywhere.

use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::exec;
use crate::poly::Polynomial;
use crate::series::{e_kl_coeff, series_table, SeriesSpec};
use crate::shapes::{FlaggedSkewShape, FlaggedStrictPartition, StrictPartition};

/// One coefficient sequence of a family: either a generating-function-backed
/// series (star substitution applied on materialization) or the delta
/// sequence used to pad odd families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoeffSeq {
    Series(SeriesSpec),
    Delta,
}

impl CoeffSeq {
    /// Prefix table of the sequence for degrees `0 ..= max_m`.
    pub fn materialize(&self, max_m: i64) -> CoeffTable {
        let max_m = max_m.max(0) as usize;
        let polys = match self {
            CoeffSeq::Series(spec) => series_table(spec, max_m)
                .into_iter()
                .map(|p| p.star())
                .collect(),
            CoeffSeq::Delta => {
                let mut t = vec![Polynomial::zero(); max_m + 1];
                t[0] = Polynomial::one();
                t
            }
        };
        CoeffTable { polys, zero: Polynomial::zero() }
    }
}

/// Materialized prefix of a coefficient sequence; every sequence is zero in
/// negative degree.
pub struct CoeffTable {
    polys: Vec<Polynomial>,
    zero: Polynomial,
}

impl CoeffTable {
    pub fn get(&self, m: i64) -> &Polynomial {
        if m < 0 {
            &self.zero
        } else {
            &self.polys[m as usize]
        }
    }
}

/// Memo over the starred series prefixes, shared across grid cases; a table
/// is extended (recomputed longer and replaced) when a caller needs more
/// coefficients than the cached copy holds. Last write wins.
fn materialize_cached(seq: &CoeffSeq, max_m: i64) -> CoeffTable {
    let spec = match seq {
        CoeffSeq::Series(spec) => *spec,
        CoeffSeq::Delta => return seq.materialize(max_m),
    };
    type Cache = RwLock<FxHashMap<SeriesSpec, Arc<Vec<Polynomial>>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(FxHashMap::default()));
    let want = max_m.max(0) as usize;
    if let Some(hit) = cache.read().expect("cache lock").get(&spec) {
        if hit.len() > want {
            return CoeffTable {
                polys: hit[..=want].to_vec(),
                zero: Polynomial::zero(),
            };
        }
    }
    let full: Vec<Polynomial> = series_table(&spec, want)
        .into_iter()
        .map(|p| p.star())
        .collect();
    let _ = cache
        .write()
        .expect("cache lock")
        .insert(spec, Arc::new(full.clone()));
    CoeffTable { polys: full, zero: Polynomial::zero() }
}

/// The pair value `c_a d_b + 2 sum_{k=1..b} (-1)^k c_{a+k} d_{b-k}`.
pub fn schur_pfaffian_pair(c: &CoeffTable, alpha: i64, d: &CoeffTable, beta: i64) -> Polynomial {
    let mut acc = c.get(alpha) * d.get(beta);
    for k in 1..=beta.max(0) {
        let prod = &(c.get(alpha + k) * d.get(beta - k)) * 2;
        if k % 2 == 1 {
            acc = acc - prod;
        } else {
            acc = acc + prod;
        }
    }
    acc
}

/// Pfaffian of a skew-symmetric matrix of polynomials by expansion along the
/// first row with alternating signs. Checks skew-symmetry and evenness.
pub fn matrix_pfaffian(m: &[Vec<Polynomial>]) -> Result<Polynomial> {
    let n = m.len();
    if n % 2 != 0 {
        return Err(Error::OddDimension(n));
    }
    for (i, row) in m.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotSquare);
        }
        for j in i..n {
            if m[i][j] != -&m[j][i] {
                return Err(Error::NotSkewSymmetric(i, j));
            }
        }
    }
    Ok(pf_expand(m))
}

fn pf_expand(m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return Polynomial::one();
    }
    if n == 2 {
        return m[0][1].clone();
    }
    let mut acc = Polynomial::zero();
    for j in 1..n {
        if m[0][j].is_zero() {
            continue;
        }
        let sub: Vec<Vec<Polynomial>> = (1..n)
            .filter(|&r| r != j)
            .map(|r| {
                (1..n)
                    .filter(|&c| c != j)
                    .map(|c| m[r][c].clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * &pf_expand(&sub);
        if j % 2 == 1 {
            acc = acc + term;
        } else {
            acc = acc - term;
        }
    }
    acc
}

/// Exact determinant by cofactor expansion along the first row (division
/// free, so valid over the polynomial ring).
pub fn determinant(m: &[Vec<Polynomial>]) -> Result<Polynomial> {
    let n = m.len();
    for row in m {
        if row.len() != n {
            return Err(Error::NotSquare);
        }
    }
    Ok(det_expand(m))
}

fn det_expand(m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return Polynomial::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Polynomial::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let sub: Vec<Vec<Polynomial>> = (1..n)
            .map(|r| {
                (0..n)
                    .filter(|&c| c != j)
                    .map(|c| m[r][c].clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * &det_expand(&sub);
        if j % 2 == 0 {
            acc = acc + term;
        } else {
            acc = acc - term;
        }
    }
    acc
}

/// The Schur-Pfaffian of a family along `alpha`, evaluated through the
/// pairwise matrix. Odd families are padded with the delta sequence and a
/// trailing zero exponent, which does not change the value.
pub fn schur_pfaffian(family: &[CoeffSeq], alpha: &[i64]) -> Polynomial {
    assert_eq!(family.len(), alpha.len(), "family/exponent length mismatch");
    let mut family = family.to_vec();
    let mut alpha = alpha.to_vec();
    if family.is_empty() {
        return Polynomial::one();
    }
    if family.len() % 2 == 1 {
        family.push(CoeffSeq::Delta);
        alpha.push(0);
    }
    let n = family.len();
    let amax = alpha.iter().copied().max().unwrap_or(0).max(0);
    let tables: Vec<CoeffTable> = family
        .iter()
        .zip(&alpha)
        .map(|(s, &a)| materialize_cached(s, a.max(0) + amax))
        .collect();

    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let entries = exec::map_collect(pairs.clone(), |(i, j)| {
        schur_pfaffian_pair(&tables[i], alpha[i], &tables[j], alpha[j])
    });

    let mut m = vec![vec![Polynomial::zero(); n]; n];
    for ((i, j), e) in pairs.into_iter().zip(entries) {
        m[j][i] = -&e;
        m[i][j] = e;
    }
    pf_expand(&m)
}

/// Direct-expansion oracle for [`schur_pfaffian`]: multiplies out every pair
/// factor of `f^alpha(t)` as a Laurent polynomial, truncating each geometric
/// factor at `N = sum |alpha_i|` (any deeper contribution leaves some final
/// exponent negative, hence a vanishing coefficient), then substitutes the
/// family. Slower by construction; must agree with the matrix route on all
/// inputs.
pub fn schur_pfaffian_laurent(family: &[CoeffSeq], alpha: &[i64]) -> Polynomial {
    assert_eq!(family.len(), alpha.len(), "family/exponent length mismatch");
    let r = family.len();
    if r == 0 {
        return Polynomial::one();
    }
    let bound: i64 = alpha.iter().map(|a| a.abs()).sum();

    // expand prod_{i<j} (1 + 2 sum_{m=1..N} (-1)^m (t_i/t_j)^m)
    let mut acc: FxHashMap<Vec<i64>, BigInt> = FxHashMap::default();
    let _ = acc.insert(vec![0; r], BigInt::one());
    for i in 0..r {
        for j in (i + 1)..r {
            let mut next: FxHashMap<Vec<i64>, BigInt> = FxHashMap::default();
            for (mono, c) in &acc {
                for m in 0..=bound {
                    let mut m2 = mono.clone();
                    m2[i] += m;
                    m2[j] -= m;
                    let coef = if m == 0 {
                        c.clone()
                    } else if m % 2 == 1 {
                        c * -2
                    } else {
                        c * 2
                    };
                    use std::collections::hash_map::Entry;
                    match next.entry(m2) {
                        Entry::Vacant(e) => {
                            let _ = e.insert(coef);
                        }
                        Entry::Occupied(mut e) => {
                            *e.get_mut() += coef;
                        }
                    }
                }
            }
            next.retain(|_, c| !c.is_zero());
            acc = next;
        }
    }

    // shift by alpha and keep monomials with all exponents nonnegative
    let mut entries: Vec<(Vec<i64>, BigInt)> = acc
        .into_iter()
        .filter_map(|(mut mono, c)| {
            for (e, a) in mono.iter_mut().zip(alpha) {
                *e += a;
                if *e < 0 {
                    return None;
                }
            }
            Some((mono, c))
        })
        .collect();
    entries.sort_unstable_by(|a, b| a.0.cmp(&b.0));

    let tables: Vec<CoeffTable> = family.iter().map(|s| materialize_cached(s, bound)).collect();

    // substitute along a prefix trie so partial products are shared
    fn subst(tables: &[CoeffTable], level: usize, entries: &[(Vec<i64>, BigInt)]) -> Polynomial {
        if entries.is_empty() {
            return Polynomial::zero();
        }
        if level == tables.len() - 1 {
            // last level: integer-scale table entries, no polynomial product
            let mut acc = Polynomial::zero();
            for (mono, c) in entries {
                let scaled: Polynomial = tables[level]
                    .get(mono[level])
                    .terms()
                    .map(|(m, tc)| Polynomial::term(m.clone(), tc * c))
                    .sum();
                acc = acc + scaled;
            }
            return acc;
        }
        let mut acc = Polynomial::zero();
        let mut start = 0;
        while start < entries.len() {
            let v = entries[start].0[level];
            let mut end = start;
            while end < entries.len() && entries[end].0[level] == v {
                end += 1;
            }
            let inner = subst(tables, level + 1, &entries[start..end]);
            acc = acc + tables[level].get(v) * &inner;
            start = end;
        }
        acc
    }
    subst(&tables, 0, &entries)
}

/// Validity conditions of the flagged Pfaffian formula: (a) the gaps
/// `lambda_i - f_i` weakly decrease, and (b) `lambda_{r-1} - f_{r-1} > 0`
/// (single rows are exempt from (b)).
pub fn flagged_pfaffian_hypotheses(shape: &FlaggedStrictPartition) -> Result<()> {
    let r = shape.len();
    let gap = |i: usize| shape.lambda.part(i) as i64 - shape.flag_at(i) as i64;
    for i in 1..r {
        if gap(i) < gap(i + 1) {
            return Err(Error::Hypothesis(format!(
                "(a) lambda_{i}-f_{i} = {} < lambda_{}-f_{} = {}",
                gap(i),
                i + 1,
                i + 1,
                gap(i + 1)
            )));
        }
    }
    if r >= 2 && gap(r - 1) <= 0 {
        return Err(Error::Hypothesis(format!(
            "(b) lambda_{}-f_{} = {} is not positive",
            r - 1,
            r - 1,
            gap(r - 1)
        )));
    }
    Ok(())
}

/// The flagged factorial Q-function by its Schur-Pfaffian closed form: the
/// family `c^(i)_m = q_m^[f_i | lambda_i-f_i-1](x;z|b)` along
/// `alpha = lambda`. Errors if the validity conditions fail; equals
/// [`crate::tableaux::q_flagged_tableau`] on the same truncation.
pub fn q_flagged_pfaffian(shape: &FlaggedStrictPartition, n_x: usize) -> Result<Polynomial> {
    flagged_pfaffian_hypotheses(shape)?;
    Ok(q_flagged_pfaffian_unchecked(shape, n_x))
}

/// The same Pfaffian without the validity check; outside the hypotheses the
/// result need not match the tableau sum.
pub fn q_flagged_pfaffian_unchecked(shape: &FlaggedStrictPartition, n_x: usize) -> Polynomial {
    let (family, alpha): (Vec<CoeffSeq>, Vec<i64>) = (1..=shape.len())
        .map(|i| {
            let l = shape.lambda.part(i) as i64;
            let f = shape.flag_at(i) as i64;
            let spec = SeriesSpec { n_x, z_cap: f, b_cap: l - f - 1, b_shift: 0 };
            (CoeffSeq::Series(spec), l)
        })
        .unzip();
    schur_pfaffian(&family, &alpha)
}

/// Ivanov's factorial Q-function by its Pfaffian: the zero-flag case, with
/// family `c^(i)_m = q_m^[lambda_i - 1](x|b)`.
pub fn ivanov_q_pfaffian(lambda: &StrictPartition, n_x: usize) -> Polynomial {
    let (family, alpha): (Vec<CoeffSeq>, Vec<i64>) = lambda
        .parts()
        .iter()
        .map(|&l| {
            (CoeffSeq::Series(SeriesSpec::q_b(n_x, l as i64 - 1)), l as i64)
        })
        .unzip();
    schur_pfaffian(&family, &alpha)
}

/// Validity condition of the flagged Jacobi-Trudi determinant:
/// `lambda_i - i - f_i` weakly decreases down the rows.
pub fn jacobi_trudi_hypotheses(shape: &FlaggedSkewShape) -> Result<()> {
    let r = shape.rows();
    let key = |i: usize| {
        shape.skew.outer.part(i) as i64 - i as i64 - shape.flag_at(i) as i64
    };
    for i in 1..r {
        if key(i) < key(i + 1) {
            return Err(Error::Hypothesis(format!(
                "lambda_{i}-{i}-f_{i} = {} < lambda_{}-{}-f_{} = {}",
                key(i),
                i + 1,
                i + 1,
                i + 1,
                key(i + 1)
            )));
        }
    }
    Ok(())
}

/// The row-strict flagged skew Schur polynomial as a Jacobi-Trudi type
/// determinant with entries
/// `e^[f_i | d-f_i-1]_d (z | tau^{j - mu_j - 1} b)` where
/// `d = lambda_i - mu_j + j - i`. Signed b indices, no star; equals
/// [`crate::tableaux::row_strict_skew_schur`] under the hypothesis.
pub fn jacobi_trudi_row_strict(shape: &FlaggedSkewShape) -> Result<Polynomial> {
    jacobi_trudi_hypotheses(shape)?;
    let r = shape.rows();
    let m: Vec<Vec<Polynomial>> = (1..=r)
        .map(|i| {
            (1..=r)
                .map(|j| {
                    let d = shape.skew.outer.part(i) as i64 - shape.skew.inner.part(j) as i64
                        + j as i64
                        - i as i64;
                    let f = shape.flag_at(i) as i64;
                    let shift = j as i64 - shape.skew.inner.part(j) as i64 - 1;
                    e_kl_coeff(f, d - f - 1, shift, d)
                })
                .collect()
        })
        .collect();
    determinant(&m)
}
