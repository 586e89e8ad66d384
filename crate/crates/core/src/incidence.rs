//! The incidence structure carrier type and its structural operations.
//!
//! Incidence is stored twice as packed bit rows: one row per point over the
//! blocks and one row per block over the points, so that both point-pair and
//! block-pair intersection counts are a popcount of a word-wise conjunction.

use crate::error::{Error, Result};
use serde::Serialize;

const WORD: usize = 64;

fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

fn set_bit(row: &mut [u64], i: usize) {
    row[i / WORD] |= 1u64 << (i % WORD);
}

fn get_bit(row: &[u64], i: usize) -> bool {
    row[i / WORD] >> (i % WORD) & 1 == 1
}

fn and_count(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

fn ones(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(w, &word)| {
        let mut rest = word;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let t = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * WORD + t)
            }
        })
    })
}

/// A finite incidence structure `(A, B, R)` with `v` points and `b` blocks.
///
/// Labels are provenance metadata and never take part in equality.
#[derive(Debug, Clone)]
pub struct IncidenceStructure {
    v: usize,
    b: usize,
    rows: Vec<Vec<u64>>,
    cols: Vec<Vec<u64>>,
    point_labels: Option<Vec<String>>,
    block_labels: Option<Vec<String>>,
}

impl PartialEq for IncidenceStructure {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v && self.b == other.b && self.rows == other.rows
    }
}

impl Eq for IncidenceStructure {}

/// Parameters `(v, k, b, r)` of a tactical configuration, plus `λ` for designs.
///
/// `k` is the number of blocks through a point and `r` the number of points on
/// a block, so that `vk = br`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConfigParams {
    pub v: usize,
    pub k: usize,
    pub b: usize,
    pub r: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<usize>,
}

impl ConfigParams {
    pub fn is_symmetric(&self) -> bool {
        self.v == self.b && self.k == self.r
    }
}

impl std::fmt::Display for ConfigParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_symmetric() {
            write!(f, "{}_{}", self.v, self.k)?;
        } else {
            write!(f, "({}_{}, {}_{})", self.v, self.k, self.b, self.r)?;
        }
        if let Some(l) = self.lambda {
            write!(f, " λ={l}")?;
        }
        Ok(())
    }
}

/// Result of [`IncidenceStructure::validate_tactical`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TacticalReport {
    pub params: ConfigParams,
    /// No two points share a block set and no two blocks share a point set.
    pub distinct: bool,
}

/// S-equivalence classes of points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SClasses {
    /// Class index of each point; classes are numbered by their smallest point.
    pub class_of: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
}

impl SClasses {
    /// Class sizes sorted in decreasing order.
    pub fn sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.classes.iter().map(Vec::len).collect();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }
}

impl IncidenceStructure {
    /// Builds a structure from block point lists.
    pub fn from_blocks(v: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let b = blocks.len();
        if v == 0 || b == 0 {
            return Err(Error::InvalidDims(format!("v={v}, b={b}; both must be positive")));
        }
        let mut s = Self::empty(v, b);
        for (j, blk) in blocks.iter().enumerate() {
            for &x in blk {
                if x >= v {
                    return Err(Error::IndexOutOfRange { index: x, limit: v });
                }
                s.set(x, j);
            }
        }
        Ok(s)
    }

    /// Builds a structure from an incidence predicate.
    pub fn from_fn(v: usize, b: usize, mut f: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        if v == 0 || b == 0 {
            return Err(Error::InvalidDims(format!("v={v}, b={b}; both must be positive")));
        }
        let mut s = Self::empty(v, b);
        for x in 0..v {
            for j in 0..b {
                if f(x, j) {
                    s.set(x, j);
                }
            }
        }
        Ok(s)
    }

    fn empty(v: usize, b: usize) -> Self {
        IncidenceStructure {
            v,
            b,
            rows: vec![vec![0; words_for(b)]; v],
            cols: vec![vec![0; words_for(v)]; b],
            point_labels: None,
            block_labels: None,
        }
    }

    fn set(&mut self, x: usize, j: usize) {
        set_bit(&mut self.rows[x], j);
        set_bit(&mut self.cols[j], x);
    }

    pub fn with_point_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.v);
        self.point_labels = Some(labels);
        self
    }

    pub fn with_block_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.b);
        self.block_labels = Some(labels);
        self
    }

    pub fn point_labels(&self) -> Option<&[String]> {
        self.point_labels.as_deref()
    }

    pub fn block_labels(&self) -> Option<&[String]> {
        self.block_labels.as_deref()
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn incident(&self, x: usize, j: usize) -> bool {
        get_bit(&self.rows[x], j)
    }

    /// Points of block `j`, ascending.
    pub fn block(&self, j: usize) -> Vec<usize> {
        ones(&self.cols[j]).collect()
    }

    /// All blocks as ascending point lists.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        (0..self.b).map(|j| self.block(j)).collect()
    }

    /// Blocks through point `x`, ascending.
    pub fn point_blocks(&self, x: usize) -> Vec<usize> {
        ones(&self.rows[x]).collect()
    }

    pub fn point_degree(&self, x: usize) -> usize {
        self.rows[x].iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn block_size(&self, j: usize) -> usize {
        self.cols[j].iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of blocks through both `x` and `y`.
    pub fn common_blocks(&self, x: usize, y: usize) -> usize {
        and_count(&self.rows[x], &self.rows[y])
    }

    /// Number of points on both blocks `i` and `j`.
    pub fn common_points(&self, i: usize, j: usize) -> usize {
        and_count(&self.cols[i], &self.cols[j])
    }

    pub fn num_incidences(&self) -> usize {
        (0..self.v).map(|x| self.point_degree(x)).sum()
    }

    /// Checks constant point degree and block size and returns the parameters.
    pub fn validate_tactical(&self) -> Result<TacticalReport> {
        let k = self.point_degree(0);
        for x in 1..self.v {
            let d = self.point_degree(x);
            if d != k {
                return Err(Error::NotTactical { axis: "point", index: x, found: d, expected: k });
            }
        }
        let r = self.block_size(0);
        for j in 1..self.b {
            let d = self.block_size(j);
            if d != r {
                return Err(Error::NotTactical { axis: "block", index: j, found: d, expected: r });
            }
        }
        Ok(TacticalReport {
            params: ConfigParams { v: self.v, k, b: self.b, r, lambda: None },
            distinct: self.is_distinct(),
        })
    }

    pub fn params(&self) -> Result<ConfigParams> {
        Ok(self.validate_tactical()?.params)
    }

    /// True iff no two points have the same block set and no two blocks the same point set.
    pub fn is_distinct(&self) -> bool {
        let mut rows: Vec<&Vec<u64>> = self.rows.iter().collect();
        rows.sort();
        let mut cols: Vec<&Vec<u64>> = self.cols.iter().collect();
        cols.sort();
        rows.windows(2).all(|w| w[0] != w[1]) && cols.windows(2).all(|w| w[0] != w[1])
    }

    /// The transpose: points and blocks exchange roles.
    pub fn dual(&self) -> Self {
        IncidenceStructure {
            v: self.b,
            b: self.v,
            rows: self.cols.clone(),
            cols: self.rows.clone(),
            point_labels: self.block_labels.clone(),
            block_labels: self.point_labels.clone(),
        }
    }

    /// Entry-wise negation of a symmetric configuration `v_k`, giving `v_{v-k}`.
    pub fn complement(&self) -> Result<Self> {
        let p = self.params()?;
        if !p.is_symmetric() {
            return Err(Error::NotSymmetric { v: p.v, b: p.b, k: p.k, r: p.r });
        }
        let mut out = Self::from_fn(self.v, self.b, |x, j| !self.incident(x, j))?;
        out.point_labels = self.point_labels.clone();
        out.block_labels = self.block_labels.clone();
        Ok(out)
    }

    /// Block-diagonal sum of two tactical structures with equal `k` and `r`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let p = self.params()?;
        let q = other.params()?;
        if p.k != q.k || p.r != q.r {
            return Err(Error::IncompatibleParams(format!(
                "direct sum needs equal degrees, got k={},{} r={},{}",
                p.k, q.k, p.r, q.r
            )));
        }
        let (v, b) = (self.v, self.b);
        Self::from_fn(v + other.v, b + other.b, |x, j| match (x < v, j < b) {
            (true, true) => self.incident(x, j),
            (false, false) => other.incident(x - v, j - b),
            _ => false,
        })
    }

    /// True iff the Levi graph is connected.
    pub fn is_connected(&self) -> bool {
        let n = self.v + self.b;
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            let nbrs: Vec<usize> = if u < self.v {
                ones(&self.rows[u]).map(|j| self.v + j).collect()
            } else {
                ones(&self.cols[u - self.v]).collect()
            };
            for w in nbrs {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// Classes of the transitive closure of "distinct points sharing no block".
    pub fn s_equivalence_classes(&self) -> SClasses {
        let v = self.v;
        let mut parent: Vec<usize> = (0..v).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for x in 0..v {
            for y in x + 1..v {
                if self.common_blocks(x, y) == 0 {
                    let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut class_of = vec![usize::MAX; v];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut root_class = vec![usize::MAX; v];
        for x in 0..v {
            let r = find(&mut parent, x);
            if root_class[r] == usize::MAX {
                root_class[r] = classes.len();
                classes.push(Vec::new());
            }
            class_of[x] = root_class[r];
            classes[root_class[r]].push(x);
        }
        SClasses { class_of, classes }
    }

    /// Removes point `x` and every block through it.
    pub fn delete_point(&self, x: usize) -> Result<Self> {
        if x >= self.v {
            return Err(Error::IndexOutOfRange { index: x, limit: self.v });
        }
        let pts: Vec<usize> = (0..self.v).filter(|&y| y != x).collect();
        let blks: Vec<usize> = (0..self.b).filter(|&j| !self.incident(x, j)).collect();
        let mut out = Self::from_fn(pts.len(), blks.len(), |a, c| self.incident(pts[a], blks[c]))?;
        if let Some(l) = &self.point_labels {
            out.point_labels = Some(pts.iter().map(|&i| l[i].clone()).collect());
        }
        if let Some(l) = &self.block_labels {
            out.block_labels = Some(blks.iter().map(|&i| l[i].clone()).collect());
        }
        Ok(out)
    }

    /// True iff every two distinct points share at most one block.
    pub fn is_lineal(&self) -> bool {
        (0..self.v).all(|x| (x + 1..self.v).all(|y| self.common_blocks(x, y) <= 1))
    }

    /// Applies relabelings: point `x` becomes `point_perm[x]`, block `j` becomes `block_perm[j]`.
    pub fn relabel(&self, point_perm: &[usize], block_perm: &[usize]) -> Self {
        assert_eq!(point_perm.len(), self.v);
        assert_eq!(block_perm.len(), self.b);
        let mut out = Self::empty(self.v, self.b);
        for x in 0..self.v {
            for j in ones(&self.rows[x]) {
                out.set(point_perm[x], block_perm[j]);
            }
        }
        if let Some(l) = &self.point_labels {
            let mut nl = vec![String::new(); self.v];
            for x in 0..self.v {
                nl[point_perm[x]] = l[x].clone();
            }
            out.point_labels = Some(nl);
        }
        if let Some(l) = &self.block_labels {
            let mut nl = vec![String::new(); self.b];
            for j in 0..self.b {
                nl[block_perm[j]] = l[j].clone();
            }
            out.block_labels = Some(nl);
        }
        out
    }

    /// Packed row of point `x` over the blocks.
    pub fn point_row(&self, x: usize) -> &[u64] {
        &self.rows[x]
    }

    /// Packed column of block `j` over the points.
    pub fn block_col(&self, j: usize) -> &[u64] {
        &self.cols[j]
    }
}
