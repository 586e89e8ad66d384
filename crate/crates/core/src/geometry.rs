//! Projective geometry over finite fields: subspaces in reduced row-echelon
//! form, Gaussian binomials, the configurations `PG(n, r, s; q)` and the
//! Hermitian-type incidence on `P²(F_{q²})`.

use crate::canon;
use crate::error::{Error, Result};
use crate::field::FieldTable;
use crate::incidence::{ConfigParams, IncidenceStructure};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::HashMap;

/// Cap on the total number of subspaces a PG configuration may have.
pub const MAX_SUBSPACES: u64 = 1_000_000;

/// Number `m(r, n; q)` of projective `r`-subspaces of `P^n(F_q)`.
///
/// `m(-1, n; q) = 1` (the empty subspace) and `m(r, n; q) = 0` for `r > n`.
pub fn gaussian_binomial(r: i64, n: i64, q: u64) -> BigUint {
    if r < -1 || r > n {
        return BigUint::zero();
    }
    let (top, choose) = ((n + 1) as usize, (r + 1) as usize);
    // q-Pascal: [m, j] = [m-1, j-1] + q^j [m-1, j].
    let q = BigUint::from(q);
    let mut row: Vec<BigUint> = vec![BigUint::one()];
    for m in 1..=top {
        let mut next = vec![BigUint::zero(); m + 1];
        for j in 0..=m {
            let left = if j >= 1 { row[j - 1].clone() } else { BigUint::zero() };
            let right = if j < m { row[j].clone() * q.pow(j as u32) } else { BigUint::zero() };
            next[j] = left + right;
        }
        row = next;
    }
    row[choose].clone()
}

fn m_u64(r: i64, n: i64, q: u64) -> u64 {
    gaussian_binomial(r, n, q).to_u64().unwrap_or(u64::MAX)
}

/// A projective `d`-subspace of `P^n`, stored as its RREF basis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subspace {
    pub n: usize,
    pub d: usize,
    pub basis: Vec<Vec<u16>>,
}

impl Subspace {
    /// Whether vector `x` lies in the span.
    pub fn contains_vector(&self, f: &FieldTable, x: &[u16]) -> bool {
        let mut x = x.to_vec();
        for row in &self.basis {
            let c = row.iter().position(|&e| e != 0).unwrap();
            let t = x[c];
            if t != 0 {
                for (xi, &ri) in x.iter_mut().zip(row) {
                    *xi = f.sub(*xi, f.mul(t, ri));
                }
            }
        }
        x.iter().all(|&e| e == 0)
    }

    pub fn contains(&self, f: &FieldTable, other: &Subspace) -> bool {
        other.basis.iter().all(|r| self.contains_vector(f, r))
    }

    pub fn label(&self) -> String {
        let rows: Vec<String> = self
            .basis
            .iter()
            .map(|r| r.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        format!("<{}>", rows.join(";"))
    }
}

/// Reduced row-echelon form of the given rows; zero rows dropped.
pub fn rref(f: &FieldTable, rows: &[Vec<u16>]) -> Vec<Vec<u16>> {
    let mut m: Vec<Vec<u16>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(rank, piv);
        let inv = f.inv(m[rank][c]);
        for e in m[rank].iter_mut() {
            *e = f.mul(*e, inv);
        }
        for i in 0..m.len() {
            if i != rank && m[i][c] != 0 {
                let t = m[i][c];
                for j in 0..cols {
                    let sub = f.mul(t, m[rank][j]);
                    m[i][j] = f.sub(m[i][j], sub);
                }
            }
        }
        rank += 1;
    }
    m.truncate(rank);
    m
}

/// Canonical representative of a projective point: first nonzero entry 1.
pub fn normalize_point(f: &FieldTable, x: &[u16]) -> Result<Vec<u16>> {
    let c = x.iter().position(|&e| e != 0).ok_or(Error::ZeroVector)?;
    let inv = f.inv(x[c]);
    Ok(x.iter().map(|&e| f.mul(e, inv)).collect())
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All projective `d`-subspaces of `P^n(F)` as RREF bases, lexicographically sorted.
pub fn enumerate_subspaces(n: usize, d: usize, f: &FieldTable) -> Result<Vec<Subspace>> {
    if d > n {
        return Err(Error::InvalidDims(format!("d={d} exceeds n={n}")));
    }
    let count = m_u64(d as i64, n as i64, f.q() as u64);
    if count > MAX_SUBSPACES {
        return Err(Error::InvalidDims(format!("{count} subspaces exceed the cap {MAX_SUBSPACES}")));
    }
    let (rows, cols, q) = (d + 1, n + 1, f.q() as u16);
    let mut out = Vec::with_capacity(count as usize);
    for pivots in combinations(cols, rows) {
        let free: Vec<(usize, usize)> = (0..rows)
            .flat_map(|i| {
                let pv = pivots.clone();
                (pv[i] + 1..cols).filter(move |c| !pv.contains(c)).map(move |c| (i, c))
            })
            .collect();
        let mut vals = vec![0u16; free.len()];
        loop {
            let mut basis = vec![vec![0u16; cols]; rows];
            for (i, &p) in pivots.iter().enumerate() {
                basis[i][p] = 1;
            }
            for (&(i, c), &val) in free.iter().zip(&vals) {
                basis[i][c] = val;
            }
            out.push(Subspace { n, d, basis });
            // Odometer over the free entries.
            let mut pos = 0;
            loop {
                if pos == vals.len() {
                    break;
                }
                vals[pos] += 1;
                if vals[pos] < q {
                    break;
                }
                vals[pos] = 0;
                pos += 1;
            }
            if pos == vals.len() {
                break;
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Projective points of `P^n(F)` in the order of [`enumerate_subspaces`].
pub fn projective_points(n: usize, f: &FieldTable) -> Result<Vec<Vec<u16>>> {
    Ok(enumerate_subspaces(n, 0, f)?.into_iter().map(|s| s.basis[0].clone()).collect())
}

/// Parameters of `PG(n, r, s; q)` from the Gaussian-binomial formulas.
pub fn pg_expected_params(n: usize, r: usize, s: usize, q: u64) -> ConfigParams {
    let (n, r, s) = (n as i64, r as i64, s as i64);
    ConfigParams {
        v: m_u64(r, n, q) as usize,
        k: m_u64(s - r - 1, n - r - 1, q) as usize,
        b: m_u64(s, n, q) as usize,
        r: m_u64(r, s, q) as usize,
        lambda: (r == 0).then(|| m_u64(s - 2, n - 2, q) as usize),
    }
}

/// Points are `r`-subspaces, blocks `s`-subspaces, incidence is containment.
pub fn pg_configuration(n: usize, r: usize, s: usize, q: u64) -> Result<IncidenceStructure> {
    if r >= s || s > n {
        return Err(Error::InvalidDims(format!("need 0 ≤ r < s ≤ n, got n={n} r={r} s={s}")));
    }
    let f = FieldTable::new(q)?;
    let total = m_u64(r as i64, n as i64, q).saturating_add(m_u64(s as i64, n as i64, q));
    if total > MAX_SUBSPACES {
        return Err(Error::InvalidDims(format!("{total} subspaces exceed the cap {MAX_SUBSPACES}")));
    }
    let pts = enumerate_subspaces(n, r, &f)?;
    let blks = enumerate_subspaces(n, s, &f)?;
    let st = IncidenceStructure::from_fn(pts.len(), blks.len(), |x, j| blks[j].contains(&f, &pts[x]))?;
    Ok(st
        .with_point_labels(pts.iter().map(Subspace::label).collect())
        .with_block_labels(blks.iter().map(Subspace::label).collect()))
}

/// `PG(n, r, s; q)` is isomorphic to the point/block dual of `PG(n, n-s-1, n-r-1; q)`.
pub fn check_pg_duality(n: usize, r: usize, s: usize, q: u64) -> Result<bool> {
    if r >= s || s + 1 > n {
        return Err(Error::InvalidDims(format!("need 0 ≤ r < s ≤ n-1, got n={n} r={r} s={s}")));
    }
    let a = pg_configuration(n, r, s, q)?;
    let b = pg_configuration(n, n - s - 1, n - r - 1, q)?.dual();
    Ok(canon::is_isomorphic(&a, &b))
}

/// Coordinate-wise `p^k`-th power, renormalized.
pub fn frobenius_power(f: &FieldTable, pt: &[u16], k: u32) -> Vec<u16> {
    let img: Vec<u16> = pt
        .iter()
        .map(|&x| (0..k).fold(x, |acc, _| f.frobenius(acc)))
        .collect();
    normalize_point(f, &img).expect("nonzero point maps to nonzero point")
}

/// The field `GF(q²)` and the points of `P²` over it.
pub fn mukai_points(q: u64) -> Result<(FieldTable, Vec<Vec<u16>>)> {
    let qq = q.checked_mul(q).ok_or(Error::UnsupportedField(q))?;
    if FieldTable::new(q).is_err() {
        return Err(Error::UnsupportedField(q));
    }
    let f = FieldTable::new(qq)?;
    let pts = projective_points(2, &f)?;
    Ok((f, pts))
}

/// Points and blocks are both `P²(F_{q²})`; `a` lies on `b` iff `Σ a_i b_i^q = 0`.
pub fn mukai_incidence(q: u64) -> Result<IncidenceStructure> {
    let (f, pts) = mukai_points(q)?;
    let conj: Vec<Vec<u16>> = pts.iter().map(|b| b.iter().map(|&x| f.pow(x, q)).collect()).collect();
    let s = IncidenceStructure::from_fn(pts.len(), pts.len(), |x, j| {
        let a = &pts[x];
        let bq = &conj[j];
        (0..3).fold(0u16, |acc, i| f.add(acc, f.mul(a[i], bq[i]))) == 0
    })?;
    let labels: Vec<String> = pts
        .iter()
        .map(|p| format!("({})", p.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    Ok(s.with_point_labels(labels.clone()).with_block_labels(labels))
}

/// Index permutation of `P²(F_{q²})` induced by the Frobenius `x ↦ x^p`.
pub fn mukai_frobenius_permutation(q: u64) -> Result<Vec<usize>> {
    let (f, pts) = mukai_points(q)?;
    let index: HashMap<&Vec<u16>, usize> = pts.iter().enumerate().map(|(i, p)| (p, i)).collect();
    Ok(pts.iter().map(|p| index[&frobenius_power(&f, p, 1)]).collect())
}

/// The explicit isomorphism onto `PG(2, 0, 1; q²)`: point `a` goes to `F^k(a)`
/// (the `q`-th power map) and block `b` to the line with coefficient vector `b`.
///
/// Returns `(point map, block map)` as index vectors into `pg_configuration(2, 0, 1, q²)`.
pub fn mukai_to_pg_map(q: u64) -> Result<(Vec<usize>, Vec<usize>)> {
    let (f, pts) = mukai_points(q)?;
    let k = f.k() / 2;
    let index: HashMap<&Vec<u16>, usize> = pts.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let point_map: Vec<usize> = pts.iter().map(|p| index[&frobenius_power(&f, p, k)]).collect();
    let lines = enumerate_subspaces(2, 1, &f)?;
    let line_index: HashMap<Vec<usize>, usize> = lines
        .iter()
        .enumerate()
        .map(|(j, l)| {
            let on: Vec<usize> = (0..pts.len()).filter(|&x| l.contains_vector(&f, &pts[x])).collect();
            (on, j)
        })
        .collect();
    let block_map = pts
        .iter()
        .map(|b| {
            let on: Vec<usize> = (0..pts.len())
                .filter(|&x| (0..3).fold(0u16, |acc, i| f.add(acc, f.mul(b[i], pts[x][i]))) == 0)
                .collect();
            line_index[&on]
        })
        .collect();
    Ok((point_map, block_map))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_values() {
        assert_eq!(gaussian_binomial(0, 2, 2), BigUint::from(7u32));
        assert_eq!(gaussian_binomial(1, 3, 2), BigUint::from(35u32));
        assert_eq!(gaussian_binomial(0, 2, 9), BigUint::from(91u32));
        for q in 2..10 {
            assert_eq!(gaussian_binomial(0, 0, q), BigUint::one());
            assert_eq!(gaussian_binomial(-1, 3, q), BigUint::one());
        }
    }

    #[test]
    fn p1_over_f3() {
        let f = FieldTable::new(3).unwrap();
        let pts = projective_points(1, &f).unwrap();
        assert_eq!(pts, vec![vec![0, 1], vec![1, 0], vec![1, 1], vec![1, 2]]);
    }

    #[test]
    fn pg_params_match_formulas() {
        for (n, r, s, q) in [(2, 0, 1, 2), (3, 0, 1, 2), (2, 0, 1, 3), (3, 1, 2, 2), (3, 0, 2, 3), (4, 1, 2, 2)] {
            let st = pg_configuration(n, r, s, q).unwrap();
            let mut got = st.params().unwrap();
            let want = pg_expected_params(n, r, s, q);
            got.lambda = want.lambda;
            assert_eq!(got, want, "PG({n},{r},{s};{q})");
        }
        assert!(pg_configuration(2, 1, 1, 2).is_err());
        assert!(pg_configuration(2, 0, 1, 6).is_err());
    }

    #[test]
    fn frobenius_on_f4_plane() {
        let f = FieldTable::new(4).unwrap();
        // ω is the element x, encoded 2; ω² = ω + 1 encoded 3.
        assert_eq!(frobenius_power(&f, &[1, 2, 0], 1), vec![1, 3, 0]);
        let pts = projective_points(2, &f).unwrap();
        let fixed = pts.iter().filter(|p| frobenius_power(&f, p, 1) == **p).count();
        assert_eq!(fixed, 7);
        assert!(pts.iter().all(|p| frobenius_power(&f, p, 2) == *p));
    }

    #[test]
    fn mukai_small() {
        let s = mukai_incidence(2).unwrap();
        let p = s.params().unwrap();
        assert_eq!((p.v, p.k, p.b, p.r), (21, 5, 21, 5));
        for x in 0..21 {
            for j in 0..21 {
                assert_eq!(s.incident(x, j), s.incident(j, x));
            }
        }
        let (pm, bm) = mukai_to_pg_map(2).unwrap();
        let pg = pg_configuration(2, 0, 1, 4).unwrap();
        for x in 0..21 {
            for j in 0..21 {
                assert_eq!(s.incident(x, j), pg.incident(pm[x], bm[j]));
            }
        }
        let fr = mukai_frobenius_permutation(2).unwrap();
        for x in 0..21 {
            for j in 0..21 {
                assert_eq!(s.incident(x, j), s.incident(fr[x], fr[j]));
            }
        }
    }
}
