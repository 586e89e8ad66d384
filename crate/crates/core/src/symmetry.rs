//! Levi graphs, symmetry groups with switches and polarities, s-regularity.

use crate::canon::{self, Graph};
use crate::error::{Error, Result};
use crate::group::{Perm, PermGroup};
use crate::incidence::IncidenceStructure;
use num_bigint::BigUint;
use serde::Serialize;
use std::collections::VecDeque;

/// Node budget for the polarity search.
pub const POLARITY_BUDGET: u64 = 2_000_000;

/// Bipartite incidence graph; vertex `x < v` is point `x`, vertex `v + j` is block `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeviGraph {
    pub v: usize,
    pub b: usize,
    pub adjacency: Vec<Vec<u32>>,
}

impl LeviGraph {
    pub fn n(&self) -> usize {
        self.v + self.b
    }

    pub fn is_black(&self, u: usize) -> bool {
        u < self.v
    }

    pub fn num_edges(&self) -> usize {
        self.adjacency[..self.v].iter().map(Vec::len).sum()
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adjacency[u].len()
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let n = self.n();
        let mut best: Option<usize> = None;
        for s in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            dist[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(x) = q.pop_front() {
                if best.is_some_and(|b| 2 * dist[x] + 1 >= b) {
                    break;
                }
                for &w in &self.adjacency[x] {
                    let w = w as usize;
                    if dist[w] == usize::MAX {
                        dist[w] = dist[x] + 1;
                        parent[w] = x;
                        q.push_back(w);
                    } else if parent[x] != w {
                        let c = dist[x] + dist[w] + 1;
                        best = Some(best.map_or(c, |b| b.min(c)));
                    }
                }
            }
        }
        best
    }

    pub fn to_graph(&self) -> Graph {
        Graph::new(
            self.n(),
            self.adjacency.iter().enumerate().flat_map(|(u, l)| l.iter().filter(move |&&w| (w as usize) > u).map(move |&w| (u as u32, w))),
        )
    }
}

pub fn levi_graph(s: &IncidenceStructure) -> LeviGraph {
    let v = s.v();
    let mut adjacency: Vec<Vec<u32>> = (0..v).map(|x| s.point_blocks(x).into_iter().map(|j| (v + j) as u32).collect()).collect();
    adjacency.extend((0..s.b()).map(|j| s.block(j).into_iter().map(|x| x as u32).collect()));
    LeviGraph { v, b: s.b(), adjacency }
}

/// Symmetry group of a configuration with switch and polarity information.
#[derive(Debug, Clone)]
pub struct SymmetryGroup {
    /// Proper group, or the full group when switches were requested.
    pub group: PermGroup,
    pub proper: PermGroup,
    pub has_switch: bool,
    /// `None` when the polarity search ran out of budget.
    pub has_polarity: Option<bool>,
    pub switch: Option<Perm>,
    pub polarity: Option<Perm>,
}

impl SymmetryGroup {
    pub fn order(&self) -> BigUint {
        self.group.order()
    }
}

/// A color-swapping Levi automorphism built from an isomorphism onto the dual.
pub fn find_switch(s: &IncidenceStructure) -> Option<Perm> {
    if s.v() != s.b() {
        return None;
    }
    let (pm, bm) = canon::isomorphism(s, &s.dual())?;
    let v = s.v();
    let mut p: Perm = pm.iter().map(|&y| (v + y) as u32).collect();
    p.extend(bm.iter().map(|&x| x as u32));
    Some(p)
}

/// True iff the Levi-vertex permutation `p` maps incidences to incidences.
pub fn preserves_incidence(s: &IncidenceStructure, p: &[usize]) -> bool {
    let g = levi_graph(s).to_graph();
    let p: Vec<u32> = p.iter().map(|&x| x as u32).collect();
    p.len() == g.n() && {
        let mut seen = vec![false; p.len()];
        p.iter().all(|&x| !std::mem::replace(&mut seen[x as usize], true))
    } && g.is_automorphism(&p)
}

/// Proper group (`allow_switch = false`) or full group of symmetries.
pub fn automorphism_group(s: &IncidenceStructure, allow_switch: bool) -> SymmetryGroup {
    automorphism_group_with_budget(s, allow_switch, POLARITY_BUDGET)
}

pub fn automorphism_group_with_budget(s: &IncidenceStructure, allow_switch: bool, polarity_budget: u64) -> SymmetryGroup {
    let proper = canon::canonical_levi(s).group;
    let switch = find_switch(s);
    let (has_polarity, polarity) = match &switch {
        None => (Some(false), None),
        Some(sw) => match proper.find_involution_in_coset(sw, polarity_budget) {
            Ok(p) => (Some(p.is_some()), p),
            Err(_) => (None, None),
        },
    };
    let group = match (&switch, allow_switch) {
        (Some(sw), true) => {
            let mut gens = proper.strong_generators().to_vec();
            gens.push(sw.clone());
            PermGroup::new(s.v() + s.b(), gens)
        }
        _ => proper.clone(),
    };
    SymmetryGroup { group, proper, has_switch: switch.is_some(), has_polarity, switch, polarity }
}

/// True iff the proper group is transitive on points and on blocks.
pub fn is_regular_configuration(s: &IncidenceStructure) -> bool {
    let g = automorphism_group(s, false).group;
    let v = s.v() as u32;
    (s.v() == 0 || g.orbit_of(0).iter().filter(|&&x| x < v).count() == s.v())
        && (s.b() == 0 || g.orbit_of(v).len() == s.b())
}

pub const MAX_S: u32 = 7;

/// Largest `s <= 7` such that the full group is transitive on the s-arcs of
/// the Levi graph. `Ok(None)` when the group is not even vertex-transitive.
pub fn s_regularity(s: &IncidenceStructure) -> Result<Option<u32>> {
    let levi = levi_graph(s);
    if levi.n() == 0 || (0..levi.n()).any(|u| levi.degree(u) < 2) {
        return Err(Error::Undefined("Levi graph has a vertex of degree below 2".into()));
    }
    if !s.is_connected() {
        return Err(Error::Undefined("Levi graph is disconnected".into()));
    }
    let g = automorphism_group(s, true).group;
    Ok(s_regularity_of(&levi, &g))
}

/// Arc-transitivity degree of `g` acting on the Levi graph.
pub fn s_regularity_of(levi: &LeviGraph, g: &PermGroup) -> Option<u32> {
    if g.orbit_of(0).len() != levi.n() {
        return None;
    }
    let mut arc: Vec<u32> = vec![0];
    let mut s = 0;
    while s < MAX_S {
        let last = *arc.last().unwrap();
        let prev = arc.len().checked_sub(2).map(|i| arc[i]);
        let ext: Vec<u32> = levi.adjacency[last as usize].iter().copied().filter(|&w| Some(w) != prev).collect();
        let stab = g.stabilizer(&arc);
        let orbit = stab.orbit_of(ext[0]);
        if !ext.iter().all(|w| orbit.binary_search(w).is_ok()) {
            break;
        }
        arc.push(ext[0]);
        s += 1;
    }
    Some(s)
}
