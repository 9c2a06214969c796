//! Coefficient extraction for the generating-function families.
//!
//! The families are built from two kinds of factors in a formal variable `u`:
//!
//! * `q_u(x) = prod_{i=1..n_x} (1+x_i u)/(1-x_i u)`, whose coefficients
//!   `q_m(x)` are twice the Schur Q one-row functions;
//! * `e^[k]_u(a) = prod_{i=1..k} (1+a_i u)` for `k >= 0` and
//!   `prod_{i=1..|k|} 1/(1-a_i u)` for `k <= 0`, so `e^[k]_m` is the
//!   elementary and `e^[-k]_m` the complete homogeneous symmetric polynomial
//!   of degree `m` in the first `k` letters.
//!
//! The combined family `q^[k|l]_u(x;z|b) = q_u(x) e^[k]_u(z) e^[l]_u(b)` is
//! what the Schur-Pfaffian closed forms consume. The `b` alphabet may be
//! shifted: `tau^s(b) = (b_{1+s}, b_{2+s}, ...)`, which is how nonpositive
//! b indices enter.
//!
//! Everything is computed as a prefix of series coefficients up to an
//! explicit cutoff; all functions return zero for negative degree, which the
//! Pfaffian pair formula relies on.

use crate::poly::{Polynomial, Variable};

/// The `b` alphabet shifted by `tau^shift`: letter `i` is `b_{i+shift}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BAlphabet {
    pub shift: i64,
}

impl BAlphabet {
    pub fn new(shift: i64) -> Self {
        BAlphabet { shift }
    }

    /// Shift composition: `tau^j (tau^k b) = tau^{j+k} b`.
    pub fn shifted(self, by: i64) -> Self {
        BAlphabet { shift: self.shift + by }
    }

    /// The `i`-th letter (1-based).
    pub fn letter(self, i: i64) -> Variable {
        Variable::b((i + self.shift) as i32)
    }
}

/// Which alphabet an `e`-factor acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Alphabet {
    Z,
    B(BAlphabet),
}

impl Alphabet {
    fn letter(self, i: i64) -> Variable {
        match self {
            Alphabet::Z => Variable::z(i as i32),
            Alphabet::B(b) => b.letter(i),
        }
    }
}

/// Parameters of one `q^[k|l]`-type series: `q_u(x_1..x_{n_x}) e^[z_cap]_u(z)
/// e^[b_cap]_u(tau^{b_shift} b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeriesSpec {
    pub n_x: usize,
    pub z_cap: i64,
    pub b_cap: i64,
    pub b_shift: i64,
}

impl SeriesSpec {
    /// `q_m(x)` only: no z or b factor.
    pub fn plain_q(n_x: usize) -> Self {
        SeriesSpec { n_x, z_cap: 0, b_cap: 0, b_shift: 0 }
    }

    /// `q^[l]_m(x|b)`: no z factor.
    pub fn q_b(n_x: usize, b_cap: i64) -> Self {
        SeriesSpec { n_x, z_cap: 0, b_cap, b_shift: 0 }
    }
}

/// Coefficients `0..=max_m` of `prod_{i=1..n_x} (1+x_i u)/(1-x_i u)`.
fn q_table(n_x: usize, max_m: usize) -> Vec<Polynomial> {
    let mut c = unit_series(max_m);
    for i in 1..=n_x {
        let v = Polynomial::var(Variable::x(i as i32));
        mul_one_plus(&mut c, &v);
        mul_geometric(&mut c, &v);
    }
    c
}

/// Coefficients `0..=max_m` of `e^[cap]_u` over the given alphabet.
fn e_table(cap: i64, alphabet: Alphabet, max_m: usize) -> Vec<Polynomial> {
    let mut c = unit_series(max_m);
    if cap >= 0 {
        for i in 1..=cap {
            mul_one_plus(&mut c, &Polynomial::var(alphabet.letter(i)));
        }
    } else {
        for i in 1..=(-cap) {
            mul_geometric(&mut c, &Polynomial::var(alphabet.letter(i)));
        }
    }
    c
}

fn unit_series(max_m: usize) -> Vec<Polynomial> {
    let mut c = vec![Polynomial::zero(); max_m + 1];
    c[0] = Polynomial::one();
    c
}

/// In-place multiply by `(1 + v u)`.
fn mul_one_plus(c: &mut [Polynomial], v: &Polynomial) {
    for m in (1..c.len()).rev() {
        let add = &c[m - 1] * v;
        c[m] += &add;
    }
}

/// In-place multiply by `1/(1 - v u) = sum_j v^j u^j`.
fn mul_geometric(c: &mut [Polynomial], v: &Polynomial) {
    for m in 1..c.len() {
        let add = &c[m - 1] * v;
        c[m] += &add;
    }
}

fn convolve(a: &[Polynomial], b: &[Polynomial], max_m: usize) -> Vec<Polynomial> {
    let mut c = vec![Polynomial::zero(); max_m + 1];
    for (i, ai) in a.iter().enumerate().take(max_m + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(max_m + 1 - i) {
            if bj.is_zero() {
                continue;
            }
            let prod = ai * bj;
            c[i + j] += &prod;
        }
    }
    c
}

/// Coefficients `0..=max_m` of the full series described by `spec`.
pub fn series_table(spec: &SeriesSpec, max_m: usize) -> Vec<Polynomial> {
    let mut t = q_table(spec.n_x, max_m);
    if spec.z_cap != 0 {
        t = convolve(&t, &e_table(spec.z_cap, Alphabet::Z, max_m), max_m);
    }
    if spec.b_cap != 0 {
        let b = Alphabet::B(BAlphabet::new(spec.b_shift));
        t = convolve(&t, &e_table(spec.b_cap, b, max_m), max_m);
    }
    t
}

/// `q_m(x_1..x_{n_x})`; zero for `m < 0`.
pub fn q_coeff(m: i64, n_x: usize) -> Polynomial {
    if m < 0 {
        return Polynomial::zero();
    }
    q_table(n_x, m as usize).pop().expect("nonempty table")
}

/// `e^[cap]_m` over `z` or a shifted `b` alphabet; zero for `m < 0`.
pub fn e_coeff(cap: i64, m: i64, alphabet: Alphabet) -> Polynomial {
    if m < 0 {
        return Polynomial::zero();
    }
    e_table(cap, alphabet, m as usize).pop().expect("nonempty table")
}

/// `e^[k|l]_m(z | tau^shift b)`, the convolution of the two `e`-factors;
/// zero for `m < 0`.
pub fn e_kl_coeff(z_cap: i64, b_cap: i64, b_shift: i64, m: i64) -> Polynomial {
    if m < 0 {
        return Polynomial::zero();
    }
    let spec = SeriesSpec { n_x: 0, z_cap, b_cap, b_shift };
    series_table(&spec, m as usize).pop().expect("nonempty table")
}

/// `q^[k|l]_m(x; z | tau^shift b)`; zero for `m < 0`.
pub fn q_kl_coeff(spec: &SeriesSpec, m: i64) -> Polynomial {
    if m < 0 {
        return Polynomial::zero();
    }
    series_table(spec, m as usize).pop().expect("nonempty table")
}

/// The telescoping identity that peels one letter off both the `q`- and the
/// `e`-factor (all in `n_x` x-variables, b-caps acting on `b`):
///
/// ```text
/// sum_{l<=s} q_l^[c] e_{t-l}^[-n-1](tau^{-c} b)*
///   = q_s^[c-1] e_{t-s}^[-n-1](tau^{-c} b)*
///   + sum_{l<=s-1} q_l^[c-1] e_{t-l}^[-n](tau^{1-c} b)*
/// ```
///
/// where `*` is the star substitution. Both sums are finite because every
/// coefficient vanishes in negative degree. Returns true iff the two sides
/// are equal as polynomials.
pub fn telescope_identity_holds(s: i64, t: i64, cap: i64, n: i64, n_x: usize) -> bool {
    assert!(n >= 0, "n must be nonnegative");
    let q = |m: i64, c: i64| q_kl_coeff(&SeriesSpec::q_b(n_x, c), m);
    let e = |c: i64, m: i64, shift: i64| {
        e_coeff(c, m, Alphabet::B(BAlphabet::new(shift))).star()
    };

    let mut lhs = Polynomial::zero();
    for l in 0..=s.min(t) {
        lhs = lhs + &q(l, cap) * &e(-n - 1, t - l, -cap);
    }

    let mut rhs = &q(s, cap - 1) * &e(-n - 1, t - s, -cap);
    for l in 0..=(s - 1).min(t) {
        rhs = rhs + &q(l, cap - 1) * &e(-n, t - l, 1 - cap);
    }
    lhs == rhs
}

/// The one-row expansion of a `q^[f|r-f-1]` coefficient into plain
/// `q^[r-k-1]`-factors with shifted, starred `e^[f|k-1-f]`-coefficients:
///
/// ```text
/// q_{r+a}^[f|r-f-1](x;z|b)
///   = sum_{k=0..f} q_{r-k+a}^[r-k-1](x|b) e_k^[f|k-1-f](z|tau^{k-r} b)*
/// ```
///
/// Returns true iff the identity holds in `n_x` x-variables.
pub fn one_row_expansion_holds(r: i64, f: i64, a: i64, n_x: usize) -> bool {
    assert!(r >= 0 && f >= 0, "r and f must be nonnegative");
    let lhs = q_kl_coeff(
        &SeriesSpec { n_x, z_cap: f, b_cap: r - f - 1, b_shift: 0 },
        r + a,
    );
    let mut rhs = Polynomial::zero();
    for k in 0..=f {
        let qpart = q_kl_coeff(&SeriesSpec::q_b(n_x, r - k - 1), r - k + a);
        if qpart.is_zero() {
            continue;
        }
        let epart = e_kl_coeff(f, k - 1 - f, k - r, k).star();
        rhs = rhs + &qpart * &epart;
    }
    lhs == rhs
}
