//! Exhaustive enumeration of symmetric `v_3` configurations up to isomorphism.
//!
//! Incidence matrices are generated row by row with rows and columns in
//! decreasing lexicographic order (every matrix has such a form), then
//! reduced to one representative per canonical certificate.

use crate::canon;
use crate::error::{Error, Result};
use crate::incidence::IncidenceStructure;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

const K: usize = 3;

type Found = BTreeMap<Vec<u8>, IncidenceStructure>;

/// Options for [`enumerate_v3_with`].
#[derive(Debug, Clone, Copy)]
pub struct EnumOptions {
    pub lineal_only: bool,
    /// Maximum number of search nodes; `None` for no limit.
    pub budget: Option<u64>,
    /// Reverses the order in which candidate rows are tried.
    pub reverse_order: bool,
}

#[derive(Debug, Clone)]
pub struct Enumeration {
    pub v: usize,
    pub lineal_only: bool,
    /// Sorted, pairwise distinct canonical certificates.
    pub certificates: Vec<Vec<u8>>,
    /// One structure per certificate, in certificate order.
    pub representatives: Vec<IncidenceStructure>,
    /// Matrices reaching the last row, before isomorphism reduction.
    pub leaves: u64,
    pub nodes: u64,
}

impl Enumeration {
    pub fn count(&self) -> usize {
        self.certificates.len()
    }
}

pub fn enumerate_v3(v: usize, lineal_only: bool) -> Result<Enumeration> {
    enumerate_v3_with(v, EnumOptions { lineal_only, budget: None, reverse_order: false })
}

struct State {
    v: usize,
    lineal: bool,
    rows: Vec<[u8; K]>,
    col_sum: Vec<u8>,
    /// `tied[j]`: columns `j` and `j + 1` agree on all rows so far.
    tied: Vec<bool>,
    /// Column pairs already sharing a row (lineal mode).
    pair: Vec<bool>,
}

impl State {
    fn new(v: usize, lineal: bool) -> Self {
        State { v, lineal, rows: Vec::new(), col_sum: vec![0; v], tied: vec![true; v.saturating_sub(1)], pair: vec![false; v * v] }
    }

    fn fits(&self, r: &[u8; K]) -> bool {
        let v = self.v;
        let remaining_after = v - self.rows.len() - 1;
        if r.iter().any(|&c| self.col_sum[c as usize] as usize >= K) {
            return false;
        }
        if self.lineal {
            for a in 0..K {
                for b in a + 1..K {
                    if self.pair[r[a] as usize * v + r[b] as usize] {
                        return false;
                    }
                }
            }
        }
        let has = |c: usize| r.contains(&(c as u8));
        for j in 0..v - 1 {
            if self.tied[j] && !has(j) && has(j + 1) {
                return false;
            }
        }
        for c in 0..v {
            let after = self.col_sum[c] as usize + usize::from(has(c));
            if K - after > remaining_after {
                return false;
            }
        }
        true
    }

    fn push(&mut self, r: [u8; K]) -> Vec<usize> {
        let v = self.v;
        for &c in &r {
            self.col_sum[c as usize] += 1;
        }
        if self.lineal {
            for a in 0..K {
                for b in 0..K {
                    if a != b {
                        self.pair[r[a] as usize * v + r[b] as usize] = true;
                    }
                }
            }
        }
        let has = |c: usize| r.contains(&(c as u8));
        let mut untied = Vec::new();
        for j in 0..v - 1 {
            if self.tied[j] && has(j) != has(j + 1) {
                self.tied[j] = false;
                untied.push(j);
            }
        }
        self.rows.push(r);
        untied
    }

    fn pop(&mut self, untied: &[usize]) {
        let v = self.v;
        let r = self.rows.pop().unwrap();
        for &c in &r {
            self.col_sum[c as usize] -= 1;
        }
        if self.lineal {
            for a in 0..K {
                for b in 0..K {
                    if a != b {
                        self.pair[r[a] as usize * v + r[b] as usize] = false;
                    }
                }
            }
        }
        for &j in untied {
            self.tied[j] = true;
        }
    }

    fn structure(&self) -> IncidenceStructure {
        IncidenceStructure::from_fn(self.v, self.v, |x, j| self.rows[x].contains(&(j as u8))).unwrap()
    }
}

/// 3-subsets of `0..v` in decreasing lex order of their 0/1 row vectors.
fn all_rows(v: usize) -> Vec<[u8; K]> {
    let mut out = Vec::new();
    for a in 0..v {
        for b in a + 1..v {
            for c in b + 1..v {
                out.push([a as u8, b as u8, c as u8]);
            }
        }
    }
    out
}

struct Search<'a> {
    rows: &'a [[u8; K]],
    opts: EnumOptions,
    nodes: &'a AtomicU64,
    found: Found,
    leaves: u64,
}

impl Search<'_> {
    /// Tries rows with index at least `from` (rows must not increase).
    fn rec(&mut self, st: &mut State, from: usize) -> Result<()> {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if let Some(b) = self.opts.budget {
            if n > b {
                return Err(Error::BudgetExceeded(b));
            }
        }
        if st.rows.len() == st.v {
            self.leaves += 1;
            let s = st.structure();
            if s.is_distinct() {
                self.found.entry(canon::canonical_form(&s)).or_insert(s);
            }
            return Ok(());
        }
        let idx: Vec<usize> = if self.opts.reverse_order { (from..self.rows.len()).rev().collect() } else { (from..self.rows.len()).collect() };
        for i in idx {
            let r = self.rows[i];
            // Equal consecutive rows would violate distinctness.
            if st.rows.last() == Some(&r) || !st.fits(&r) {
                continue;
            }
            let untied = st.push(r);
            let res = self.rec(st, i);
            st.pop(&untied);
            res?;
        }
        Ok(())
    }
}

pub fn enumerate_v3_with(v: usize, opts: EnumOptions) -> Result<Enumeration> {
    if !(4..=16).contains(&v) {
        return Err(Error::InvalidV(v));
    }
    let rows = all_rows(v);
    let nodes = AtomicU64::new(0);
    // Split on the first two rows; the first is forced to be {0, 1, 2}.
    let mut prefixes: Vec<([u8; K], usize)> = Vec::new();
    {
        let mut st = State::new(v, opts.lineal_only);
        st.push(rows[0]);
        for (i, r) in rows.iter().enumerate() {
            if *r != rows[0] && st.fits(r) {
                prefixes.push((*r, i));
            }
        }
    }
    let parts: Vec<Result<(Found, u64)>> = prefixes
        .par_iter()
        .map(|&(r, i)| {
            let mut st = State::new(v, opts.lineal_only);
            st.push(rows[0]);
            st.push(r);
            let mut s = Search { rows: &rows, opts, nodes: &nodes, found: BTreeMap::new(), leaves: 0 };
            s.rec(&mut st, i)?;
            Ok((s.found, s.leaves))
        })
        .collect();
    let mut all = Found::new();
    let mut leaves = 0;
    for p in parts {
        let (found, l) = p?;
        leaves += l;
        for (c, s) in found {
            all.entry(c).or_insert(s);
        }
    }
    let (certificates, representatives) = all.into_iter().unzip();
    Ok(Enumeration { v, lineal_only: opts.lineal_only, certificates, representatives, leaves, nodes: nodes.into_inner() })
}
