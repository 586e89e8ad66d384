//! Designs, arithmetic existence tests and Hadamard matrices.

use crate::error::{Error, Result};
use crate::incidence::IncidenceStructure;
use serde::Serialize;

/// Outcome of the Bruck–Chowla–Ryser test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "reason", rename_all = "lowercase")]
pub enum BcrVerdict {
    Pass,
    Fail(String),
}

impl BcrVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, BcrVerdict::Pass)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DesignReport {
    pub is_design: bool,
    pub lambda: Option<usize>,
    /// For symmetric structures: whether every two blocks also meet in `λ` points.
    pub symmetric_dual_lambda_holds: Option<bool>,
    pub bcr_verdict: Option<BcrVerdict>,
}

/// Decides whether a tactical structure is a design and returns its type `λ`.
pub fn design_lambda(s: &IncidenceStructure) -> Result<DesignReport> {
    let p = s.params()?;
    let mut lambda = None;
    let mut uniform = s.v() >= 2;
    'outer: for x in 0..s.v() {
        for y in x + 1..s.v() {
            let c = s.common_blocks(x, y);
            match lambda {
                None => lambda = Some(c),
                Some(l) if l != c => {
                    uniform = false;
                    break 'outer;
                }
                _ => {}
            }
        }
    }
    let is_design = uniform && lambda.is_some_and(|l| l > 0);
    if !is_design {
        return Ok(DesignReport {
            is_design: false,
            lambda: None,
            symmetric_dual_lambda_holds: None,
            bcr_verdict: None,
        });
    }
    let l = lambda.unwrap();
    let (dual, bcr) = if p.is_symmetric() {
        let holds = (0..s.b()).all(|i| (i + 1..s.b()).all(|j| s.common_points(i, j) == l));
        (Some(holds), bruck_chowla_ryser(p.v as i64, p.k as i64, l as i64).ok())
    } else {
        (None, None)
    };
    Ok(DesignReport { is_design: true, lambda: Some(l), symmetric_dual_lambda_holds: dual, bcr_verdict: bcr })
}

/// `vk = br` and `k(r-1) = λ(v-1)`, where `k` is the point degree and `r` the block size.
pub fn check_design_equations(v: u64, k: u64, b: u64, r: u64, lambda: u64) -> bool {
    let lhs = k.checked_mul(r.saturating_sub(1));
    let rhs = lambda.checked_mul(v.saturating_sub(1));
    v.checked_mul(k) == b.checked_mul(r) && r >= 1 && lhs.is_some() && lhs == rhs
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn prime_factors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut p = 2u128;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Signed squarefree part.
fn squarefree(n: i128) -> i128 {
    let sign = n.signum();
    let mut m = n.unsigned_abs();
    let mut out = 1u128;
    let mut p = 2u128;
    while p * p <= m {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= p;
        }
        p += 1;
    }
    sign * (out * m) as i128
}

fn pow_mod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// `n` is a square modulo the squarefree modulus `m`.
fn is_square_mod(n: i128, m: u128) -> bool {
    prime_factors(m).into_iter().all(|p| {
        let r = n.rem_euclid(p as i128) as u128;
        p == 2 || r == 0 || pow_mod(r, (p - 1) / 2, p) == 1
    })
}

/// Whether `ax² + by² + cz² = 0` has a nontrivial integer solution (Legendre).
pub fn legendre_solvable(a: i64, b: i64, c: i64) -> bool {
    if a == 0 || b == 0 || c == 0 {
        return true;
    }
    let (mut a, mut b, mut c) = (squarefree(a as i128), squarefree(b as i128), squarefree(c as i128));
    if (a > 0 && b > 0 && c > 0) || (a < 0 && b < 0 && c < 0) {
        return false;
    }
    // Divide common factors out of two coefficients and move them onto the third.
    loop {
        let g = gcd(a, b);
        if g > 1 {
            a /= g;
            b /= g;
            c = squarefree(c * g);
            continue;
        }
        let g = gcd(a, c);
        if g > 1 {
            a /= g;
            c /= g;
            b = squarefree(b * g);
            continue;
        }
        let g = gcd(b, c);
        if g > 1 {
            b /= g;
            c /= g;
            a = squarefree(a * g);
            continue;
        }
        break;
    }
    is_square_mod(-b * c, a.unsigned_abs())
        && is_square_mod(-a * c, b.unsigned_abs())
        && is_square_mod(-a * b, c.unsigned_abs())
}

fn is_perfect_square(n: i64) -> bool {
    if n < 0 {
        return false;
    }
    let r = (n as f64).sqrt() as i64;
    (r.saturating_sub(1)..=r + 1).any(|s| s >= 0 && s * s == n)
}

/// Bruck–Chowla–Ryser necessary condition for a symmetric `(v, k, λ)` design.
pub fn bruck_chowla_ryser(v: i64, k: i64, lambda: i64) -> Result<BcrVerdict> {
    if v < 2 || k < 1 || lambda < 0 || k * (k - 1) != lambda * (v - 1) {
        return Err(Error::InvalidParams(format!(
            "k(k-1) = λ(v-1) fails for (v,k,λ) = ({v},{k},{lambda})"
        )));
    }
    let n = k - lambda;
    if v % 2 == 0 {
        return Ok(if is_perfect_square(n) {
            BcrVerdict::Pass
        } else {
            BcrVerdict::Fail(format!("v even and k-λ = {n} is not a square"))
        });
    }
    let sign = if ((v - 1) / 2) % 2 == 0 { 1 } else { -1 };
    Ok(if legendre_solvable(n, sign * lambda, -1) {
        BcrVerdict::Pass
    } else {
        BcrVerdict::Fail(format!("{n}x² + {}y² - z² has no nontrivial zero", sign * lambda))
    })
}

/// A square matrix with entries in `{+1, -1}`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignMatrix {
    n: usize,
    entries: Vec<i8>,
}

impl SignMatrix {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> i8) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let e = f(i, j);
                assert!(e == 1 || e == -1, "sign matrix entries must be ±1");
                entries.push(e);
            }
        }
        SignMatrix { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.n + j]
    }

    fn row(&self, i: usize) -> &[i8] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.n {
            let cells: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// Adds a leading row and column of `+1`.
    pub fn bordered(&self) -> Self {
        Self::from_fn(self.n + 1, |i, j| if i == 0 || j == 0 { 1 } else { self.get(i - 1, j - 1) })
    }
}

pub fn hadamard_check(m: &SignMatrix) -> bool {
    let n = m.n();
    for i in 0..n {
        for j in i + 1..n {
            let dot: i64 = m.row(i).iter().zip(m.row(j)).map(|(&a, &b)| (a * b) as i64).sum();
            if dot != 0 {
                return false;
            }
        }
    }
    debug_assert!(n <= 2 || n.is_multiple_of(4));
    true
}

/// Sylvester's Hadamard matrix of order `2^k`.
pub fn sylvester(k: u32) -> Result<SignMatrix> {
    if k > 12 {
        return Err(Error::InvalidOrder(format!("sylvester order 2^{k} exceeds 2^12")));
    }
    let n = 1usize << k;
    Ok(SignMatrix::from_fn(n, |i, j| if (i & j).count_ones() % 2 == 0 { 1 } else { -1 }))
}

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|p| p * p <= q).all(|p| !q.is_multiple_of(p))
}

/// Paley's first construction, order `q + 1` for a prime `q ≡ 3 (mod 4)`.
pub fn paley(q: u64) -> Result<SignMatrix> {
    if !is_prime(q) || q % 4 != 3 || q > 4093 {
        return Err(Error::InvalidOrder(format!("paley needs a prime q ≡ 3 mod 4 below 4096, got {q}")));
    }
    let q = q as usize;
    let mut chi = vec![-1i8; q];
    chi[0] = 0;
    for x in 1..q {
        chi[x * x % q] = 1;
    }
    Ok(SignMatrix::from_fn(q + 1, |i, j| match (i, j) {
        (0, _) => 1,
        (_, 0) => -1,
        _ if i == j => 1,
        _ => chi[(j + q - i) % q],
    }))
}

#[derive(Debug, Clone)]
pub struct HadamardDesign {
    pub structure: IncidenceStructure,
    pub t: usize,
    pub lambda: usize,
    /// `t = 1`: the result is `3_1` with `λ = 0`, not a design.
    pub degenerate: bool,
}

/// Normalizes a Hadamard matrix, deletes its first row and column and reads `+1` as incidence.
pub fn hadamard_to_design(m: &SignMatrix) -> Result<HadamardDesign> {
    if !hadamard_check(m) {
        return Err(Error::NotHadamard);
    }
    let n = m.n();
    if n < 4 {
        return Err(Error::InvalidOrder(format!("need order 4t ≥ 4, got {n}")));
    }
    let col_sign: Vec<i8> = (0..n).map(|j| m.get(0, j)).collect();
    let row_sign: Vec<i8> = (0..n).map(|i| m.get(i, 0) * col_sign[0]).collect();
    let s = IncidenceStructure::from_fn(n - 1, n - 1, |x, j| {
        m.get(x + 1, j + 1) * col_sign[j + 1] * row_sign[x + 1] == 1
    })?;
    let t = n / 4;
    Ok(HadamardDesign { structure: s, t, lambda: t - 1, degenerate: t == 1 })
}

/// `(−1, 1)`-incidence matrix: incident entries `+1`.
pub fn design_to_sign_matrix(s: &IncidenceStructure) -> Result<SignMatrix> {
    if s.v() != s.b() {
        let p = s.params().ok();
        return Err(Error::NotSymmetric {
            v: s.v(),
            b: s.b(),
            k: p.map_or(0, |p| p.k),
            r: p.map_or(0, |p| p.r),
        });
    }
    Ok(SignMatrix::from_fn(s.v(), |i, j| if s.incident(i, j) { 1 } else { -1 }))
}
