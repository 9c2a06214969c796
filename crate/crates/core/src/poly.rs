//! Exact sparse multivariate polynomials over the three variable alphabets
//! `x`, `z`, `b`.
//!
//! Coefficients are arbitrary-precision integers; there is no floating or
//! modular arithmetic anywhere, so every identity check in this crate is an
//! exact comparison of canonical forms.
//!
//! Representation invariants:
//! * a [`Monomial`] stores its variables sorted ascending with no zero
//!   exponents;
//! * a [`Polynomial`] maps monomials to nonzero coefficients, so equality of
//!   the underlying maps is equality of polynomials;
//! * the term order is graded lexicographic over the variable order
//!   `x1 < x2 < ... < z1 < z2 < ... < b_i` (b indices ascending, negative
//!   indices allowed), fixed once so that rendered output is bit-exact.
//!
//! `x` and `z` indices start at 1. `b` indices range over all integers: the
//! shift operator on the `b` alphabet produces `b0`, `b-1`, ... and the star
//! substitution [`Polynomial::star`] rewrites those back into positive
//! indices via `b_{-i} -> -b_{i+1}`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Variable alphabet. The derived order (`X < Z < B`) is the class order
/// used by the monomial comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarClass {
    X,
    Z,
    B,
}

/// A single variable, e.g. `x3`, `z1`, `b-2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable {
    pub class: VarClass,
    pub index: i32,
}

impl Variable {
    /// `x_i`, `i >= 1`.
    pub fn x(index: i32) -> Self {
        assert!(index >= 1, "x index must be >= 1, got {index}");
        Variable { class: VarClass::X, index }
    }

    /// `z_i`, `i >= 1`.
    pub fn z(index: i32) -> Self {
        assert!(index >= 1, "z index must be >= 1, got {index}");
        Variable { class: VarClass::Z, index }
    }

    /// `b_i`, any integer index.
    pub fn b(index: i32) -> Self {
        Variable { class: VarClass::B, index }
    }

    fn parse(key: &str) -> Result<Variable> {
        let bad = || Error::Parse(format!("invalid variable `{key}`"));
        let mut chars = key.chars();
        let class = match chars.next() {
            Some('x') => VarClass::X,
            Some('z') => VarClass::Z,
            Some('b') => VarClass::B,
            _ => return Err(bad()),
        };
        let index: i32 = chars.as_str().parse().map_err(|_| bad())?;
        if class != VarClass::B && index < 1 {
            return Err(Error::Parse(format!("index of `{key}` must be >= 1")));
        }
        Ok(Variable { class, index })
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.class {
            VarClass::X => 'x',
            VarClass::Z => 'z',
            VarClass::B => 'b',
        };
        write!(f, "{}{}", c, self.index)
    }
}

type VarExps = SmallVec<[(Variable, u32); 6]>;

/// A power product of variables, kept sorted with positive exponents only.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    vars: VarExps,
}

impl Monomial {
    /// The empty product.
    pub fn unit() -> Self {
        Monomial::default()
    }

    pub fn var(v: Variable) -> Self {
        Monomial { vars: smallvec::smallvec![(v, 1)] }
    }

    /// Build from arbitrary (variable, exponent) pairs: sorts, merges
    /// duplicates, drops zero exponents.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Variable, u32)>) -> Self {
        let mut vars: VarExps = pairs.into_iter().filter(|&(_, e)| e > 0).collect();
        vars.sort_unstable_by_key(|&(v, _)| v);
        let mut merged: VarExps = SmallVec::new();
        for (v, e) in vars {
            match merged.last_mut() {
                Some((lv, le)) if *lv == v => *le += e,
                _ => merged.push((v, e)),
            }
        }
        Monomial { vars: merged }
    }

    pub fn iter(&self) -> impl Iterator<Item = (Variable, u32)> + '_ {
        self.vars.iter().copied()
    }

    pub fn degree(&self) -> u32 {
        self.vars.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.vars.is_empty()
    }

    /// Product of two monomials (merge of sorted exponent lists).
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out: VarExps = SmallVec::with_capacity(self.vars.len() + other.vars.len());
        let (mut i, mut j) = (0, 0);
        while i < self.vars.len() && j < other.vars.len() {
            let (va, ea) = self.vars[i];
            let (vb, eb) = other.vars[j];
            match va.cmp(&vb) {
                Ordering::Less => {
                    out.push((va, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((vb, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((va, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.vars[i..]);
        out.extend_from_slice(&other.vars[j..]);
        Monomial { vars: out }
    }
}

/// Graded-lexicographic order: first by total degree, then at the first
/// variable (taken in ascending variable order) where the exponents differ,
/// the monomial with the larger exponent is the larger monomial. This is a
/// strict total order on distinct monomials.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.vars.get(i), other.vars.get(j)) {
                (None, None) => return Ordering::Equal,
                // The side that still has a variable carries a positive
                // exponent where the other has zero.
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.vars.is_empty() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.vars.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A sparse polynomial in canonical form: no zero coefficients stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::int(1)
    }

    pub fn int(c: i64) -> Self {
        Polynomial::constant(BigInt::from(c))
    }

    pub fn constant(c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(), c);
        }
        Polynomial { terms }
    }

    pub fn var(v: Variable) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(v), BigInt::one());
        Polynomial { terms }
    }

    /// Shorthands used all over the tests.
    pub fn x(i: i32) -> Self {
        Polynomial::var(Variable::x(i))
    }
    pub fn z(i: i32) -> Self {
        Polynomial::var(Variable::z(i))
    }
    pub fn b(i: i32) -> Self {
        Polynomial::var(Variable::b(i))
    }

    /// Single term `c * m`.
    pub fn term(m: Monomial, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Maximum total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// True when every term has total degree `d` (vacuously for zero).
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    fn insert_add(terms: &mut BTreeMap<Monomial, BigInt>, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn add_assign_ref(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            Self::insert_add(&mut self.terms, m.clone(), c.clone());
        }
    }

    fn mul_impl(a: &Polynomial, b: &Polynomial) -> Polynomial {
        if a.is_zero() || b.is_zero() {
            return Polynomial::zero();
        }
        // Fast path: multiplication by a single term needs no hashing.
        if a.terms.len() == 1 || b.terms.len() == 1 {
            let (single, other) = if a.terms.len() == 1 { (a, b) } else { (b, a) };
            let (sm, sc) = single.terms.iter().next().expect("nonzero");
            let terms = other
                .terms
                .iter()
                .map(|(m, c)| (sm.mul(m), sc * c))
                .collect();
            return Polynomial { terms };
        }
        let (small, big) = if a.terms.len() <= b.terms.len() { (a, b) } else { (b, a) };
        let mut acc: FxHashMap<Monomial, BigInt> =
            FxHashMap::with_capacity_and_hasher(big.terms.len() * 2, Default::default());
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                use std::collections::hash_map::Entry;
                match acc.entry(m) {
                    Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    Entry::Occupied(mut e) => {
                        *e.get_mut() += c;
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Polynomial { terms }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one();
        for _ in 0..e {
            out = Self::mul_impl(&out, self);
        }
        out
    }

    /// Substitute a polynomial for every variable selected by `subst`;
    /// unselected variables stay untouched.
    pub fn substitute(&self, subst: impl Fn(Variable) -> Option<Polynomial>) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut kept: VarExps = SmallVec::new();
            let mut replaced = Polynomial::constant(c.clone());
            for (v, e) in m.iter() {
                match subst(v) {
                    None => kept.push((v, e)),
                    Some(p) => replaced = &replaced * &p.pow(e),
                }
            }
            let keep_mono = Monomial { vars: kept };
            for (m2, c2) in &replaced.terms {
                Self::insert_add(&mut out.terms, keep_mono.mul(m2), c2.clone());
            }
        }
        out
    }

    /// The star substitution `b_{-i} -> -b_{i+1}` for all `i >= 0`; the
    /// result contains only positive b indices. Idempotent, and a ring
    /// homomorphism.
    pub fn star(&self) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut vars: VarExps = SmallVec::new();
            let mut negate = false;
            for (v, e) in m.iter() {
                if v.class == VarClass::B && v.index <= 0 {
                    vars.push((Variable::b(1 - v.index), e));
                    if e % 2 == 1 {
                        negate = !negate;
                    }
                } else {
                    vars.push((v, e));
                }
            }
            // Images may collide (b0*b1 -> -b1^2), so re-canonicalize and
            // accumulate.
            let m2 = Monomial::from_pairs(vars);
            let c2 = if negate { -c.clone() } else { c.clone() };
            Self::insert_add(&mut out.terms, m2, c2);
        }
        out
    }

    /// Exchange the z and b alphabets (`z_i <-> b_i`). Requires every b
    /// index to be positive; apply [`Polynomial::star`] first.
    pub fn swap_zb(&self) -> Result<Polynomial> {
        for m in self.terms.keys() {
            for (v, _) in m.iter() {
                if v.class == VarClass::B && v.index <= 0 {
                    return Err(Error::SignedBIndex(v.index as i64));
                }
            }
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let swapped = m.iter().map(|(v, e)| {
                    let v2 = match v.class {
                        VarClass::Z => Variable::b(v.index),
                        VarClass::B => Variable::z(v.index),
                        VarClass::X => v,
                    };
                    (v2, e)
                });
                (Monomial::from_pairs(swapped), c.clone())
            })
            .collect();
        Ok(Polynomial { terms })
    }

    /// Exchange two variables everywhere.
    pub fn swap_vars(&self, a: Variable, b: Variable) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let swapped = m.iter().map(|(v, e)| {
                    let v2 = if v == a {
                        b
                    } else if v == b {
                        a
                    } else {
                        v
                    };
                    (v2, e)
                });
                (Monomial::from_pairs(swapped), c.clone())
            })
            .collect();
        Polynomial { terms }
    }

    /// Substitute zero for every variable selected by `pred`.
    pub fn subst_zero(&self, pred: impl Fn(Variable) -> bool) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| !m.iter().any(|(v, _)| pred(v)))
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Polynomial { terms }
    }

    /// True iff the polynomial is invariant under every adjacent
    /// transposition `x_i <-> x_{i+1}` for `1 <= i < n_x`.
    pub fn is_symmetric_x(&self, n_x: usize) -> bool {
        (1..n_x as i32).all(|i| {
            self.swap_vars(Variable::x(i), Variable::x(i + 1)) == *self
        })
    }

    // ---- Canonical text form ----

    /// Canonical text rendering: terms descending in graded-lex order,
    /// variables ascending within each monomial, e.g. `2*x1^2*b-1 - 3*z1`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse_text(input: &str) -> Result<Polynomial> {
        TextParser::new(input).parse()
    }

    // ---- Canonical JSON form ----

    /// Canonical JSON encoding:
    /// `{"terms":[{"c":"<decimal>","m":{"x1":2,"b-1":1}}, ...]}` with terms
    /// descending in graded-lex order and monomial keys ascending.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let mut mono = serde_json::Map::new();
                for (v, e) in m.iter() {
                    let _ = mono.insert(v.to_string(), serde_json::Value::from(e));
                }
                let mut obj = serde_json::Map::new();
                let _ = obj.insert("c".into(), serde_json::Value::String(c.to_string()));
                let _ = obj.insert("m".into(), serde_json::Value::Object(mono));
                serde_json::Value::Object(obj)
            })
            .collect();
        let mut root = serde_json::Map::new();
        let _ = root.insert("terms".into(), serde_json::Value::Array(terms));
        serde_json::Value::Object(root)
    }

    pub fn to_json_string(&self) -> String {
        self.to_json().to_string()
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Polynomial> {
        let bad = |msg: &str| Error::Parse(format!("polynomial json: {msg}"));
        let terms = v
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| bad("missing `terms` array"))?;
        let mut out = Polynomial::zero();
        for t in terms {
            let c_str = t
                .get("c")
                .and_then(|c| c.as_str())
                .ok_or_else(|| bad("term missing string `c`"))?;
            let c: BigInt = c_str
                .parse()
                .map_err(|_| bad(&format!("bad coefficient `{c_str}`")))?;
            let m_obj = t
                .get("m")
                .and_then(|m| m.as_object())
                .ok_or_else(|| bad("term missing object `m`"))?;
            let mut pairs = Vec::new();
            for (key, exp) in m_obj {
                let v = Variable::parse(key)?;
                let e = exp
                    .as_u64()
                    .filter(|&e| e > 0 && e <= u32::MAX as u64)
                    .ok_or_else(|| bad(&format!("bad exponent for `{key}`")))?;
                pairs.push((v, e as u32));
            }
            Self::insert_add(&mut out.terms, Monomial::from_pairs(pairs), c);
        }
        Ok(out)
    }

    pub fn from_json_str(s: &str) -> Result<Polynomial> {
        let v: serde_json::Value =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("json: {e}")))?;
        Self::from_json(&v)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.magnitude();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_unit() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

// ---- Arithmetic operators ----
//
// The reference-based forms are the primitive ones; owned forms delegate.

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl std::ops::Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        for (m, c) in rhs.terms {
            Polynomial::insert_add(&mut self.terms, m, c);
        }
        self
    }
}

impl std::ops::AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        self.add_assign_ref(rhs);
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Polynomial { terms }
    }
}

impl std::ops::Neg for Polynomial {
    type Output = Polynomial;
    fn neg(mut self) -> Polynomial {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            Polynomial::insert_add(&mut out.terms, m.clone(), -c);
        }
        out
    }
}

impl std::ops::Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::mul_impl(self, rhs)
    }
}

impl std::ops::Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        Polynomial::mul_impl(&self, &rhs)
    }
}

impl std::ops::Mul<i64> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: i64) -> Polynomial {
        if rhs == 0 {
            return Polynomial::zero();
        }
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c * rhs)).collect();
        Polynomial { terms }
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Polynomial {
        iter.fold(Polynomial::zero(), |a, b| a + b)
    }
}

// ---- Text parser ----

struct TextParser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> TextParser<'a> {
    fn new(input: &'a str) -> Self {
        TextParser { bytes: input.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at byte {}", self.pos))
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii");
        s.parse().map_err(|_| self.err("bad integer"))
    }

    fn signed_index(&mut self) -> Result<i32> {
        let neg = if self.bytes.get(self.pos) == Some(&b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected variable index"));
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii");
        let v: i32 = s.parse().map_err(|_| self.err("bad variable index"))?;
        Ok(if neg { -v } else { v })
    }

    /// factor := integer | variable ['^' integer]
    fn factor(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(Polynomial::constant(self.integer()?)),
            Some(c @ (b'x' | b'z' | b'b')) => {
                self.pos += 1;
                let index = self.signed_index()?;
                let v = match c {
                    b'x' => {
                        if index < 1 {
                            return Err(self.err("x index must be >= 1"));
                        }
                        Variable::x(index)
                    }
                    b'z' => {
                        if index < 1 {
                            return Err(self.err("z index must be >= 1"));
                        }
                        Variable::z(index)
                    }
                    _ => Variable::b(index),
                };
                let exp = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let e = self.integer()?;
                    u32::try_from(e).map_err(|_| self.err("exponent out of range"))?
                } else {
                    1
                };
                Ok(Polynomial::term(
                    Monomial::from_pairs([(v, exp)]),
                    BigInt::one(),
                ))
            }
            _ => Err(self.err("expected integer or variable")),
        }
    }

    /// term := factor ('*' factor)*
    fn term(&mut self) -> Result<Polynomial> {
        let mut p = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            p = &p * &self.factor()?;
        }
        Ok(p)
    }

    fn parse(&mut self) -> Result<Polynomial> {
        let mut out = Polynomial::zero();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            out += &(&t * sign);
            match self.peek() {
                None => return Ok(out),
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1;
                }
                Some(_) => return Err(self.err("expected `+` or `-`")),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x(i: i32) -> Polynomial {
        Polynomial::x(i)
    }
    fn z(i: i32) -> Polynomial {
        Polynomial::z(i)
    }
    fn b(i: i32) -> Polynomial {
        Polynomial::b(i)
    }

    #[test]
    fn additive_inverse_cancels() {
        let p = &x(1) + &(-&x(1));
        assert!(p.is_zero());
    }

    #[test]
    fn add_merges_terms() {
        let p = &(&x(1) + &b(1)) + &(&x(1) - &b(1));
        assert_eq!(p, &x(1) * 2);
    }

    #[test]
    fn mul_identity_and_difference_of_squares() {
        let p = &(&x(1) + &b(0)) * &Polynomial::one();
        assert_eq!(p, &x(1) + &b(0));
        let q = &(&z(1) - &b(2)) * &(&z(1) + &b(2));
        assert_eq!(q, &z(1).pow(2) - &b(2).pow(2));
    }

    /// Independent term-by-term expansion oracle for the quartic product
    /// (x1+b1)(x1-b1)(x2+b1)(x2-b1).
    #[test]
    fn quartic_product_matches_naive_expansion() {
        let factors = [
            (&x(1) + &b(1)),
            (&x(1) - &b(1)),
            (&x(2) + &b(1)),
            (&x(2) - &b(1)),
        ];
        let fast = factors.iter().fold(Polynomial::one(), |p, f| &p * f);

        // Naive oracle: distribute by picking one term from each factor.
        let mut naive = Polynomial::zero();
        let term_lists: Vec<Vec<(Monomial, BigInt)>> = factors
            .iter()
            .map(|f| f.terms().map(|(m, c)| (m.clone(), c.clone())).collect())
            .collect();
        let mut pick = [0usize; 4];
        loop {
            let mut m = Monomial::unit();
            let mut c = BigInt::one();
            for (i, &p) in pick.iter().enumerate() {
                let (tm, tc) = &term_lists[i][p];
                m = m.mul(tm);
                c *= tc;
            }
            naive += &Polynomial::term(m, c);
            let mut k = 0;
            loop {
                pick[k] += 1;
                if pick[k] < term_lists[k].len() {
                    break;
                }
                pick[k] = 0;
                k += 1;
                if k == 4 {
                    break;
                }
            }
            if k == 4 {
                break;
            }
        }
        assert_eq!(fast, naive);
        // (x1^2-b1^2)(x2^2-b1^2), spot check one coefficient
        assert!(fast.is_homogeneous_of(4));
    }

    #[test]
    fn star_examples() {
        assert_eq!(b(0).star(), -b(1));
        assert_eq!(b(-2).pow(2).star(), b(3).pow(2));
        let p = &b(0) * &b(1);
        assert_eq!(p.star(), -(&b(1) * &b(1)));
    }

    #[test]
    fn star_can_cancel_terms() {
        // b0*b1 + b1^2 -> -b1^2 + b1^2 = 0
        let p = &(&b(0) * &b(1)) + &b(1).pow(2);
        assert!(p.star().is_zero());
    }

    #[test]
    fn swap_zb_examples() {
        let p = &z(1) - &b(2);
        assert_eq!(p.swap_zb().unwrap(), &b(1) - &z(2));
        assert_eq!(x(1).swap_zb().unwrap(), x(1));
        assert_eq!(b(0).swap_zb(), Err(Error::SignedBIndex(0)));
    }

    #[test]
    fn symmetry_check() {
        let p = &(&x(1) + &x(2)) * 2;
        assert!(p.is_symmetric_x(2));
        assert!(!x(1).is_symmetric_x(2));
    }

    #[test]
    fn display_matches_canonical_examples() {
        let p = &(&x(1) * 2) + &(&x(2) * 2);
        assert_eq!(p.to_string(), "2*x1 + 2*x2");
        let q = &z(1) - &b(2);
        assert_eq!(q.to_string(), "z1 - b2");
        let r = &(&x(1).pow(2) * &b(-1)) * 2 - (&z(1) * 3);
        assert_eq!(r.to_string(), "2*x1^2*b-1 - 3*z1");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    #[test]
    fn parse_canonical_examples() {
        for s in ["2*x1 + 2*x2", "z1 - b2", "2*x1^2*b-1 - 3*z1", "0", "-x1 + 4"] {
            let p = Polynomial::parse_text(s).unwrap();
            assert_eq!(p.to_string(), s.trim_start_matches('+'));
        }
        assert!(Polynomial::parse_text("x0").is_err());
        assert!(Polynomial::parse_text("q1").is_err());
    }

    #[test]
    fn json_roundtrip_example() {
        let p = &(&x(1).pow(2) * &b(-1)) * 2 - (&z(1) * 3);
        let s = p.to_json_string();
        assert_eq!(
            s,
            r#"{"terms":[{"c":"2","m":{"x1":2,"b-1":1}},{"c":"-3","m":{"z1":1}}]}"#
        );
        assert_eq!(Polynomial::from_json_str(&s).unwrap(), p);
    }

    // ---- Property tests ----

    fn arb_variable() -> impl Strategy<Value = Variable> {
        prop_oneof![
            (1..4i32).prop_map(Variable::x),
            (1..3i32).prop_map(Variable::z),
            (-2..4i32).prop_map(Variable::b),
        ]
    }

    fn arb_monomial() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec((arb_variable(), 1..3u32), 0..4).prop_map(Monomial::from_pairs)
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec((arb_monomial(), -5..6i64), 0..6).prop_map(|ts| {
            ts.into_iter()
                .map(|(m, c)| Polynomial::term(m, BigInt::from(c)))
                .sum()
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        }

        #[test]
        fn star_is_ring_hom_and_idempotent(p in arb_poly(), q in arb_poly()) {
            prop_assert_eq!((&p + &q).star(), &p.star() + &q.star());
            prop_assert_eq!((&p * &q).star(), &p.star() * &q.star());
            prop_assert_eq!(p.star().star(), p.star());
        }

        #[test]
        fn swap_zb_is_involution(p in arb_poly()) {
            let s = p.star();
            prop_assert_eq!(s.swap_zb().unwrap().swap_zb().unwrap(), s);
        }

        #[test]
        fn term_order_is_total_and_antisymmetric(a in arb_monomial(), b in arb_monomial()) {
            prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
            prop_assert_eq!(a.cmp(&b) == Ordering::Equal, a == b);
        }

        #[test]
        fn term_order_transitive(a in arb_monomial(), b in arb_monomial(), c in arb_monomial()) {
            let mut v = vec![a, b, c];
            v.sort();
            prop_assert!(v[0] <= v[1] && v[1] <= v[2] && v[0] <= v[2]);
        }

        #[test]
        fn text_roundtrip(p in arb_poly()) {
            let rendered = p.to_string();
            let reparsed = Polynomial::parse_text(&rendered).unwrap();
            prop_assert_eq!(&reparsed, &p);
            prop_assert_eq!(reparsed.to_string(), rendered);
        }

        #[test]
        fn json_roundtrip(p in arb_poly()) {
            let s = p.to_json_string();
            let reparsed = Polynomial::from_json_str(&s).unwrap();
            prop_assert_eq!(&reparsed, &p);
            prop_assert_eq!(reparsed.to_json_string(), s);
        }
    }
}
