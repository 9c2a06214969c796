//! Exact cross-check grids between the independent computation routes.
//!
//! Every suite enumerates a finite grid of inputs, computes each object by
//! two (or more) routes that share no code path (tableau enumeration vs.
//! Pfaffian/determinant algebra, matrix evaluation vs. direct Laurent
//! expansion), and records one [`CaseResult`] per grid point with exact
//! equality as the pass condition. Cases run in parallel and the report is
//! sorted by case key, so output is deterministic regardless of thread
//! count.

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::Result;
use crate::exec;
use crate::paths::{paths_to_tableau, tableau_to_paths};
use crate::pfaffian::{
    self, determinant, matrix_pfaffian, schur_pfaffian, schur_pfaffian_laurent,
    schur_pfaffian_pair, CoeffSeq,
};
use crate::poly::{Monomial, Polynomial, Variable};
use crate::series::{one_row_expansion_holds, telescope_identity_holds, SeriesSpec};
use crate::shapes::{FlaggedSkewShape, FlaggedStrictPartition, StrictPartition};
use crate::tableaux::{decompose_q, enumerate_row_strict, q_flagged_tableau};
use crate::vexillary::{ivanov_q_monomial, schubert_vexillary, Method, Triple};

/// Outcome of one grid point.
#[derive(Debug, Clone)]
pub struct CaseResult {
    pub key: String,
    pub pass: bool,
    pub detail: String,
}

impl CaseResult {
    fn check(key: String, pass: bool, detail: &str) -> Self {
        CaseResult {
            key,
            pass,
            detail: if pass { String::new() } else { detail.to_string() },
        }
    }

    fn fail(key: String, detail: String) -> Self {
        CaseResult { key, pass: false, detail }
    }
}

/// Number of failing cases.
pub fn failures(results: &[CaseResult]) -> usize {
    results.iter().filter(|r| !r.pass).count()
}

fn finish(mut results: Vec<CaseResult>) -> Vec<CaseResult> {
    results.sort_by(|a, b| a.key.cmp(&b.key));
    results
}

fn fmt_vec(v: &[u32]) -> String {
    let inner: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", inner.join(","))
}

/// All nonempty strict partitions with bounded first part and length.
pub fn strict_partitions(max_part: u32, max_rows: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    fn rec(max_next: u32, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if left == 0 {
            return;
        }
        for v in (1..=max_next).rev() {
            cur.push(v);
            rec(v.saturating_sub(1), left - 1, cur, out);
            cur.pop();
        }
    }
    let mut cur = Vec::new();
    rec(max_part, max_rows, &mut cur, &mut out);
    out.sort();
    out.dedup();
    out
}

/// All nonempty partitions (weakly decreasing, positive parts) with bounded
/// first part and length.
fn partitions(max_part: u32, max_rows: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    fn rec(max_next: u32, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if left == 0 {
            return;
        }
        for v in (1..=max_next).rev() {
            cur.push(v);
            rec(v, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut cur = Vec::new();
    rec(max_part, max_rows, &mut cur, &mut out);
    out
}

/// All weakly decreasing vectors fitting under `outer` componentwise,
/// padded to the same length (zeros allowed).
fn inner_partitions(outer: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    fn rec(outer: &[u32], i: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == outer.len() {
            out.push(cur.clone());
            return;
        }
        let hi = outer[i].min(cur.last().copied().unwrap_or(u32::MAX));
        for v in (0..=hi).rev() {
            cur.push(v);
            rec(outer, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut cur = Vec::new();
    rec(outer, 0, &mut cur, &mut out);
    out
}

fn flag_tuples(len: usize, max_flag: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=max_flag).map(move |f| {
                    let mut w = v.clone();
                    w.push(f);
                    w
                })
            })
            .collect();
    }
    out
}

// ---- Suite: flagged Q, Pfaffian route vs tableau route ----

/// For every flagged strict partition within the bounds that satisfies the
/// Pfaffian validity conditions, and every `n_x` in the list, check
/// `q_flagged_tableau = q_flagged_pfaffian` exactly.
pub fn suite_pfaffian_eq(
    max_lambda: u32,
    max_rows: usize,
    max_flag: u32,
    nx_list: &[usize],
) -> Vec<CaseResult> {
    let mut cases = Vec::new();
    for lambda in strict_partitions(max_lambda, max_rows) {
        for flag in flag_tuples(lambda.len(), max_flag) {
            let shape = FlaggedStrictPartition::new(lambda.clone(), flag)
                .expect("lengths match");
            if pfaffian::flagged_pfaffian_hypotheses(&shape).is_err() {
                continue;
            }
            for &nx in nx_list {
                cases.push((shape.clone(), nx));
            }
        }
    }
    finish(exec::map_collect(cases, |(shape, nx)| {
        let key = format!(
            "lambda={} f={} nx={}",
            fmt_vec(shape.lambda.parts()),
            fmt_vec(&shape.flag),
            nx
        );
        let by_tableaux = q_flagged_tableau(&shape, nx);
        match pfaffian::q_flagged_pfaffian(&shape, nx) {
            Ok(by_pf) => CaseResult::check(key, by_tableaux == by_pf, "tableau != pfaffian"),
            Err(e) => CaseResult::fail(key, e.to_string()),
        }
    }))
}

// ---- Suite: Ivanov Q, monomial tableau formula ----

/// For every strict partition within the bounds and every `n_x`, check that
/// the monomial tableau sum, the Pfaffian, and the zero-flag tableau sum
/// produce the same polynomial.
pub fn suite_ivanov_tableau(
    max_lambda: u32,
    max_rows: usize,
    nx_list: &[usize],
) -> Vec<CaseResult> {
    let mut cases = Vec::new();
    for lambda in strict_partitions(max_lambda, max_rows) {
        for &nx in nx_list {
            cases.push((lambda.clone(), nx));
        }
    }
    finish(exec::map_collect(cases, |(parts, nx)| {
        let key = format!("lambda={} nx={}", fmt_vec(&parts), nx);
        let lambda = StrictPartition::new(parts.clone()).expect("strict");
        let monomial = ivanov_q_monomial(&lambda, nx);
        let pf = pfaffian::ivanov_q_pfaffian(&lambda, nx);
        if monomial != pf {
            return CaseResult::fail(key, "monomial formula != pfaffian".into());
        }
        let zero_flag = FlaggedStrictPartition::new(parts.clone(), vec![0; parts.len()])
            .expect("lengths match");
        CaseResult::check(
            key,
            pf == q_flagged_tableau(&zero_flag, nx),
            "pfaffian != zero-flag tableau sum",
        )
    }))
}

// ---- Suite: flagged Jacobi-Trudi determinant and the path bijection ----

/// For every flagged skew shape within the bounds satisfying the
/// determinant's validity condition: the determinant equals the tableau
/// sum, and the lattice-path correspondence is a weight-preserving
/// round-trip on every tableau of the shape.
pub fn suite_jacobi_trudi(max_outer: u32, max_rows: usize, max_flag: u32) -> Vec<CaseResult> {
    let mut cases = Vec::new();
    for outer in partitions(max_outer, max_rows) {
        for inner in inner_partitions(&outer) {
            for flag in flag_tuples(outer.len(), max_flag) {
                let shape = FlaggedSkewShape::new(outer.clone(), inner.clone(), flag)
                    .expect("valid skew pair");
                if pfaffian::jacobi_trudi_hypotheses(&shape).is_err() {
                    continue;
                }
                cases.push(shape);
            }
        }
    }
    finish(exec::map_collect(cases, |shape| {
        let key = format!(
            "outer={} inner={} f={}",
            fmt_vec(shape.skew.outer.parts()),
            fmt_vec(shape.skew.inner.parts()),
            fmt_vec(&shape.flag)
        );
        let tableaux = enumerate_row_strict(&shape);
        let by_sum: Polynomial = tableaux.iter().map(|t| t.weight()).sum();
        let by_det = match pfaffian::jacobi_trudi_row_strict(&shape) {
            Ok(d) => d,
            Err(e) => return CaseResult::fail(key, e.to_string()),
        };
        if by_sum != by_det {
            return CaseResult::fail(key, "determinant != tableau sum".into());
        }
        for t in &tableaux {
            let p = tableau_to_paths(t);
            if !p.is_disjoint() {
                return CaseResult::fail(key, "image path tuple crosses".into());
            }
            if p.weight() != t.weight() {
                return CaseResult::fail(key, "path weight != tableau weight".into());
            }
            match paths_to_tableau(&p) {
                Ok(back) if &back == t => {}
                _ => return CaseResult::fail(key, "path round-trip failed".into()),
            }
        }
        CaseResult::check(key, true, "")
    }))
}

// ---- Suite: Schur-Pfaffian calculus ----

fn qb_family(alpha: &[i64], n_x: usize) -> Vec<CoeffSeq> {
    alpha
        .iter()
        .map(|&a| CoeffSeq::Series(SeriesSpec::q_b(n_x, a - 1)))
        .collect()
}

fn permutations(v: &[i64]) -> Vec<Vec<i64>> {
    if v.len() <= 1 {
        return vec![v.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..v.len() {
        let mut rest = v.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn perm_sign(perm: &[i64], sorted_desc: &[i64]) -> i64 {
    // sign by counting inversions relative to the descending reference
    let pos: Vec<usize> = perm
        .iter()
        .map(|x| sorted_desc.iter().position(|y| y == x).expect("member"))
        .collect();
    let mut inv = 0;
    for i in 0..pos.len() {
        for j in (i + 1)..pos.len() {
            if pos[i] > pos[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Oracle agreement (matrix route vs direct Laurent expansion), pair
/// antisymmetry, the permutation sign rule, and the trailing-exponent rules,
/// all over the `q^[a-1](x|b)` family in `n_x` x-variables.
pub fn suite_schur_pfaffian(max_alpha: i64, n_x: usize) -> Vec<CaseResult> {
    let mut cases: Vec<Box<dyn FnOnce() -> CaseResult + Send>> = Vec::new();

    // strictly decreasing exponent tuples, ranks 1..=4
    let mut alphas: Vec<Vec<i64>> = Vec::new();
    fn desc(max_next: i64, left: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if left == 0 {
            return;
        }
        for v in (1..=max_next).rev() {
            cur.push(v);
            desc(v - 1, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut cur = Vec::new();
    desc(max_alpha, 4, &mut cur, &mut alphas);

    for alpha in alphas {
        cases.push(Box::new(move || {
            let key = format!("oracle alpha={alpha:?}");
            let fam = qb_family(&alpha, n_x);
            let fast = schur_pfaffian(&fam, &alpha);
            let slow = schur_pfaffian_laurent(&fam, &alpha);
            CaseResult::check(key, fast == slow, "matrix route != laurent expansion")
        }));
    }

    // pair antisymmetry over 1 <= k, l <= 6
    for k in 1..=6i64 {
        for l in 1..=6i64 {
            cases.push(Box::new(move || {
                let key = format!("pair-antisym k={k} l={l}");
                let ck = CoeffSeq::Series(SeriesSpec::q_b(n_x, k - 1)).materialize(k + l);
                let cl = CoeffSeq::Series(SeriesSpec::q_b(n_x, l - 1)).materialize(k + l);
                let sum = schur_pfaffian_pair(&ck, k, &cl, l)
                    + schur_pfaffian_pair(&cl, l, &ck, k);
                CaseResult::check(key, sum.is_zero(), "pair sum nonzero")
            }));
        }
    }

    // sign rule under all permutations of (3,2,1); repeated entries vanish
    let base = vec![3i64, 2, 1];
    let reference = schur_pfaffian(&qb_family(&base, n_x), &base);
    for perm in permutations(&base) {
        let reference = reference.clone();
        cases.push(Box::new(move || {
            let key = format!("sign-rule alpha={perm:?}");
            let value = schur_pfaffian(&qb_family(&perm, n_x), &perm);
            let sign = perm_sign(&perm, &[3, 2, 1]);
            let expected = if sign == 1 { reference.clone() } else { -&reference };
            CaseResult::check(key, value == expected, "permuted value != sign * reference")
        }));
    }
    for repeated in [vec![3i64, 3, 1], vec![2i64, 2], vec![4i64, 2, 2, 1]] {
        cases.push(Box::new(move || {
            let key = format!("repeated-vanishes alpha={repeated:?}");
            let value = schur_pfaffian(&qb_family(&repeated, n_x), &repeated);
            CaseResult::check(key, value.is_zero(), "repeated exponents gave nonzero")
        }));
    }

    // trailing-exponent rules
    for a in [vec![3i64, 2], vec![4i64, 3, 1]] {
        cases.push(Box::new(move || {
            let key = format!("trailing-zero alpha={a:?}");
            let mut with = a.clone();
            with.push(0);
            let dropped = schur_pfaffian(&qb_family(&a, n_x), &a);
            let kept = schur_pfaffian(&qb_family(&with, n_x), &with);
            CaseResult::check(key, dropped == kept, "trailing zero changed the value")
        }));
    }
    for a in [vec![3i64, -1], vec![4i64, 2, -2]] {
        cases.push(Box::new(move || {
            let key = format!("trailing-negative alpha={a:?}");
            let value = schur_pfaffian(&qb_family(&a, n_x), &a);
            CaseResult::check(key, value.is_zero(), "negative trailing exponent gave nonzero")
        }));
    }

    finish(exec::map_collect(cases, |f| f()))
}

// ---- Suite: generating-function identities ----

/// The telescope identity over `s, t` in `[-1, 4]`, caps in `[0, 3]`,
/// `n` in `[0, 3]`, and the one-row expansion over `r, f` in `[0, 4]`,
/// `a` in `[-1, 2]`, at each `n_x` in the list.
pub fn suite_series_identities(nx_list: &[usize]) -> Vec<CaseResult> {
    let mut cases: Vec<(String, Box<dyn FnOnce() -> bool + Send>)> = Vec::new();
    for &nx in nx_list {
        for s in -1..=4i64 {
            for t in -1..=4i64 {
                for cap in 0..=3i64 {
                    for n in 0..=3i64 {
                        let key =
                            format!("telescope s={s} t={t} cap={cap} n={n} nx={nx}");
                        cases.push((
                            key,
                            Box::new(move || telescope_identity_holds(s, t, cap, n, nx)),
                        ));
                    }
                }
            }
        }
        for r in 0..=4i64 {
            for f in 0..=4i64 {
                for a in -1..=2i64 {
                    let key = format!("one-row r={r} f={f} a={a} nx={nx}");
                    cases.push((
                        key,
                        Box::new(move || one_row_expansion_holds(r, f, a, nx)),
                    ));
                }
            }
        }
    }
    finish(exec::map_collect(cases, |(key, f)| {
        CaseResult::check(key, f(), "identity failed")
    }))
}

// ---- Suite: vexillary triples ----

/// Build an equivalent non-essential triple by inserting the interpolated
/// row at the first unspecified position of the shape, when one exists.
fn insertion_variant(t: &Triple, shape: &FlaggedStrictPartition) -> Option<Triple> {
    let rows = shape.len();
    let l = (1..=rows).find(|l| !t.k().contains(&(*l as u32)))?;
    let lam = shape.lambda.part(l);
    let f = shape.flag_at(l);
    let mut k = t.k().to_vec();
    let mut p = t.p().to_vec();
    let mut q = t.q().to_vec();
    let at = k.iter().position(|&ki| ki as usize > l).unwrap_or(k.len());
    k.insert(at, l as u32);
    p.insert(at, f + 1);
    q.insert(at, lam - f);
    // the interpolated row always yields a valid triple; a failure here is
    // a bug in the shape filling
    Some(Triple::new(k, p, q).expect("interpolated row is a valid triple entry"))
}

/// For every essential triple with `k_r <= k_max` and `p_1, q_1 <= pq_max`:
/// the shape satisfies the Pfaffian validity conditions, both evaluation
/// routes agree, exchanging z and b matches the inverted triple, and an
/// equivalent (reducible) variant produces the identical polynomial.
pub fn suite_vexillary(k_max: u32, pq_max: u32, n_x: usize) -> Vec<CaseResult> {
    let mut weakly_desc: Vec<Vec<u32>> = Vec::new();
    fn desc(max_next: u32, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if left == 0 {
            return;
        }
        for v in (1..=max_next).rev() {
            cur.push(v);
            desc(v, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut cur = Vec::new();
    desc(pq_max, k_max as usize, &mut cur, &mut weakly_desc);

    let mut k_vectors: Vec<Vec<u32>> = Vec::new();
    for mask in 1u32..(1 << k_max) {
        let ks: Vec<u32> = (1..=k_max).filter(|i| mask & (1 << (i - 1)) != 0).collect();
        k_vectors.push(ks);
    }

    let mut triples = Vec::new();
    for ks in &k_vectors {
        let r = ks.len();
        for p in weakly_desc.iter().filter(|v| v.len() == r) {
            for q in weakly_desc.iter().filter(|v| v.len() == r) {
                if let Ok(t) = Triple::new(ks.clone(), p.clone(), q.clone()) {
                    if t.is_essential() {
                        triples.push(t);
                    }
                }
            }
        }
    }

    finish(exec::map_collect(triples, |t| {
        let key = format!(
            "k={} p={} q={}",
            fmt_vec(t.k()),
            fmt_vec(t.p()),
            fmt_vec(t.q())
        );
        let shape = match t.reduce().shape() {
            Ok(s) => s,
            Err(e) => return CaseResult::fail(key, e.to_string()),
        };
        let by_tableaux = q_flagged_tableau(&shape, n_x);
        let by_pf = match pfaffian::q_flagged_pfaffian(&shape, n_x) {
            Ok(p) => p,
            Err(e) => return CaseResult::fail(key, e.to_string()),
        };
        if by_tableaux != by_pf {
            return CaseResult::fail(key, "tableau route != pfaffian route".into());
        }
        // z/b exchange matches the inverted triple
        let swapped = match by_tableaux.swap_zb() {
            Ok(s) => s,
            Err(e) => return CaseResult::fail(key, e.to_string()),
        };
        let inverted = match schubert_vexillary(&t.invert(), n_x, Method::Tableau) {
            Ok(p) => p,
            Err(e) => return CaseResult::fail(key, e.to_string()),
        };
        if swapped != inverted {
            return CaseResult::fail(key, "z/b swap != inverted triple".into());
        }
        // an equivalent reducible variant gives the identical polynomial
        if let Some(variant) = insertion_variant(&t, &shape) {
            if !variant.equivalent(&t) {
                return CaseResult::fail(key, "insertion variant not equivalent".into());
            }
            match schubert_vexillary(&variant, n_x, Method::Tableau) {
                Ok(p) if p == by_tableaux => {}
                Ok(_) => {
                    return CaseResult::fail(key, "equivalent triple differs".into());
                }
                Err(e) => return CaseResult::fail(key, e.to_string()),
            }
        }
        CaseResult::check(key, true, "")
    }))
}

// ---- Suite: decomposition recombination ----

/// For every flagged strict partition within the bounds admitting the
/// decomposition, recombine `sum_mu Q_mu * coeff_mu` and compare with the
/// direct tableau sum.
pub fn suite_decompose(
    max_lambda: u32,
    max_rows: usize,
    max_flag: u32,
    n_x: usize,
) -> Vec<CaseResult> {
    let mut cases = Vec::new();
    for lambda in strict_partitions(max_lambda, max_rows) {
        for flag in flag_tuples(lambda.len(), max_flag) {
            let shape = FlaggedStrictPartition::new(lambda.clone(), flag)
                .expect("lengths match");
            let r = shape.len();
            let admissible = r < 2
                || shape.lambda.part(r - 1) > shape.flag_at(r - 1)
                || shape.lambda.part(r) > shape.flag_at(r);
            if admissible {
                cases.push(shape);
            }
        }
    }
    finish(exec::map_collect(cases, |shape| {
        let key = format!(
            "lambda={} f={} nx={}",
            fmt_vec(shape.lambda.parts()),
            fmt_vec(&shape.flag),
            n_x
        );
        // direct enumeration on the left, so the recombination check does
        // not share the grouped fast path of q_flagged_tableau
        let direct = crate::tableaux::q_flagged_tableau_direct(&shape, n_x);
        let pairs = match decompose_q(&shape) {
            Ok(p) => p,
            Err(e) => return CaseResult::fail(key, e.to_string()),
        };
        let mut recombined = Polynomial::zero();
        for (mu, coeff) in pairs {
            let zero_flag = FlaggedStrictPartition::new(mu.parts().to_vec(), vec![0; mu.len()])
                .expect("lengths match");
            recombined = recombined + q_flagged_tableau(&zero_flag, n_x) * coeff;
        }
        CaseResult::check(key, direct == recombined, "recombination differs")
    }))
}

// ---- Suite: structural properties ----

fn random_poly(rng: &mut StdRng) -> Polynomial {
    let vars = [
        Variable::x(1),
        Variable::x(2),
        Variable::z(1),
        Variable::b(1),
        Variable::b(2),
    ];
    let mut p = Polynomial::zero();
    for _ in 0..rng.gen_range(1..4) {
        let mut pairs = Vec::new();
        for _ in 0..rng.gen_range(0..3) {
            pairs.push((vars[rng.gen_range(0..vars.len())], rng.gen_range(1..3u32)));
        }
        let c = rng.gen_range(-3..=3i64);
        p = p + Polynomial::term(Monomial::from_pairs(pairs), BigInt::from(c));
    }
    p
}

/// Homogeneity and x-symmetry of every flagged Q-function over the grid,
/// serialization round-trips on the computed values, and `Pf^2 = det` on
/// seeded random skew matrices up to 6x6.
pub fn suite_structural(
    max_lambda: u32,
    max_rows: usize,
    max_flag: u32,
    nx_list: &[usize],
) -> Vec<CaseResult> {
    let mut cases = Vec::new();
    for lambda in strict_partitions(max_lambda, max_rows) {
        for flag in flag_tuples(lambda.len(), max_flag) {
            for &nx in nx_list {
                cases.push((lambda.clone(), flag.clone(), nx));
            }
        }
    }
    let mut results = exec::map_collect(cases, |(lambda, flag, nx)| {
        let key = format!(
            "structure lambda={} f={} nx={}",
            fmt_vec(&lambda),
            fmt_vec(&flag),
            nx
        );
        let size: u32 = lambda.iter().sum();
        let shape = FlaggedStrictPartition::new(lambda, flag).expect("lengths match");
        let q = q_flagged_tableau(&shape, nx);
        if !q.is_homogeneous_of(size) {
            return CaseResult::fail(key, "not homogeneous".into());
        }
        if !q.is_symmetric_x(nx) {
            return CaseResult::fail(key, "not symmetric in x".into());
        }
        let text_ok = Polynomial::parse_text(&q.to_text()).map(|p| p == q);
        if text_ok != Ok(true) {
            return CaseResult::fail(key, "text round-trip failed".into());
        }
        let json_ok = Polynomial::from_json_str(&q.to_json_string()).map(|p| p == q);
        CaseResult::check(key, json_ok == Ok(true), "json round-trip failed")
    });

    // Pf^2 = det on seeded random skew-symmetric matrices
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for n in [2usize, 4, 6] {
        for instance in 0..3 {
            let key = format!("pf-squared n={n} instance={instance}");
            let mut m = vec![vec![Polynomial::zero(); n]; n];
            for i in 0..n {
                for j in (i + 1)..n {
                    let e = random_poly(&mut rng);
                    m[j][i] = -&e;
                    m[i][j] = e;
                }
            }
            let result = match (matrix_pfaffian(&m), determinant(&m)) {
                (Ok(pf), Ok(det)) => CaseResult::check(key, &pf * &pf == det, "Pf^2 != det"),
                _ => CaseResult::fail(key, "construction rejected".into()),
            };
            results.push(result);
        }
    }
    finish(results)
}

/// Convenience wrapper for tests: asserts a suite is all-pass and returns
/// the case count.
pub fn assert_all_pass(results: &[CaseResult]) -> Result<usize> {
    for r in results {
        if !r.pass {
            return Err(crate::Error::InvalidShape(format!(
                "case `{}` failed: {}",
                r.key, r.detail
            )));
        }
    }
    Ok(results.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_generators() {
        let sp = strict_partitions(3, 2);
        assert!(sp.contains(&vec![3, 2]));
        assert!(sp.contains(&vec![1]));
        assert!(!sp.contains(&vec![2, 2]));
        assert_eq!(sp.len(), 6); // (1),(2),(3),(2,1),(3,1),(3,2)

        let ps = partitions(2, 2);
        assert_eq!(ps.len(), 5); // (1),(2),(1,1),(2,1),(2,2)

        assert_eq!(inner_partitions(&[1, 1]).len(), 3); // (0,0),(1,0),(1,1)
        assert_eq!(flag_tuples(2, 1).len(), 4);
    }

    #[test]
    fn permutation_helpers() {
        assert_eq!(permutations(&[3, 2, 1]).len(), 6);
        assert_eq!(perm_sign(&[3, 2, 1], &[3, 2, 1]), 1);
        assert_eq!(perm_sign(&[2, 3, 1], &[3, 2, 1]), -1);
    }

    #[test]
    fn small_grids_pass() {
        assert!(assert_all_pass(&suite_pfaffian_eq(3, 2, 1, &[1, 2])).is_ok());
        assert!(assert_all_pass(&suite_ivanov_tableau(3, 2, &[2])).is_ok());
        assert!(assert_all_pass(&suite_jacobi_trudi(2, 2, 2)).is_ok());
        assert!(assert_all_pass(&suite_schur_pfaffian(3, 1)).is_ok());
        assert!(assert_all_pass(&suite_vexillary(2, 2, 2)).is_ok());
        assert!(assert_all_pass(&suite_decompose(3, 2, 1, 2)).is_ok());
        assert!(assert_all_pass(&suite_structural(3, 2, 1, &[1, 2])).is_ok());
    }

    #[test]
    fn series_identity_grid_is_exact() {
        let results = suite_series_identities(&[1]);
        assert!(assert_all_pass(&results).is_ok());
        assert_eq!(results.len(), 6 * 6 * 4 * 4 + 5 * 5 * 4);
    }
}
