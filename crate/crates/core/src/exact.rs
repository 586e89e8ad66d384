//! Exact integer linear algebra (Bareiss elimination) and incidence extraction
//! from homogeneous coordinates.

use crate::error::{Error, Result};
use crate::incidence::IncidenceStructure;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

/// Rank by fraction-free Gaussian elimination.
pub fn rank(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::from(1);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..m.len() {
            for j in c + 1..cols {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Determinant of a square matrix by Bareiss elimination.
pub fn determinant(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut m = rows.to_vec();
    let mut prev = BigInt::from(1);
    let mut sign = 1;
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else { return BigInt::zero() };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    &m[n - 1][n - 1] * sign
}

/// Divides by the gcd and makes the first nonzero entry positive.
pub fn normalize(v: &[BigInt]) -> Result<Vec<BigInt>> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    let first_neg = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    Ok(v.iter().map(|x| if first_neg { -(x / &g) } else { x / &g }).collect())
}

pub fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Normal vector of the hyperplane spanned by `n` independent points of `P^n`
/// (as `n` rows of length `n + 1`), by signed maximal minors.
pub fn hyperplane_through(points: &[Vec<BigInt>]) -> Result<Vec<BigInt>> {
    let cols = points.first().map_or(0, Vec::len);
    if points.len() + 1 != cols {
        return Err(Error::DimensionMismatch(format!("{} points do not span a hyperplane of P^{}", points.len(), cols.saturating_sub(1))));
    }
    let coeffs: Vec<BigInt> = (0..cols)
        .map(|j| {
            let minor: Vec<Vec<BigInt>> = points
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let d = determinant(&minor);
            if j % 2 == 0 { d } else { -d }
        })
        .collect();
    normalize(&coeffs).map_err(|_| Error::DegeneratePlane("points are dependent".into()))
}

/// Integer points of a projective space, gcd-reduced with positive leading entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPointSet {
    pub n: usize,
    pub points: Vec<Vec<BigInt>>,
}

impl RationalPointSet {
    pub fn new(n: usize, points: Vec<Vec<BigInt>>) -> Result<Self> {
        let mut out = Vec::with_capacity(points.len());
        for p in points {
            if p.len() != n + 1 {
                return Err(Error::DimensionMismatch(format!("point of length {} in P^{n}", p.len())));
            }
            out.push(normalize(&p)?);
        }
        let mut sorted = out.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParams("repeated point".into()));
        }
        Ok(RationalPointSet { n, points: out })
    }
}

/// A linear subspace given by spanning points or by one linear equation.
#[derive(Debug, Clone)]
pub enum BlockSpec {
    Span(Vec<Vec<BigInt>>),
    Hyperplane(Vec<BigInt>),
}

/// Incidence of points with subspaces, decided by exact rank or dot-product tests.
pub fn extract_incidence(points: &RationalPointSet, blocks: &[BlockSpec]) -> Result<IncidenceStructure> {
    let width = points.n + 1;
    let mut span_rank = Vec::with_capacity(blocks.len());
    for blk in blocks {
        match blk {
            BlockSpec::Span(rows) => {
                if rows.is_empty() || rows.iter().any(|r| r.len() != width) {
                    return Err(Error::DimensionMismatch("spanning point of wrong length".into()));
                }
                span_rank.push(rank(rows));
            }
            BlockSpec::Hyperplane(c) => {
                if c.len() != width {
                    return Err(Error::DimensionMismatch("hyperplane of wrong length".into()));
                }
                span_rank.push(0);
            }
        }
    }
    let rows: Vec<Vec<bool>> = points
        .points
        .par_iter()
        .map(|x| {
            blocks
                .iter()
                .zip(&span_rank)
                .map(|(blk, &rk)| match blk {
                    BlockSpec::Hyperplane(c) => dot(c, x).is_zero(),
                    BlockSpec::Span(rows) => {
                        let mut m = rows.clone();
                        m.push(x.clone());
                        rank(&m) == rk
                    }
                })
                .collect()
        })
        .collect();
    IncidenceStructure::from_fn(points.points.len(), blocks.len(), |x, j| rows[x][j])
}
