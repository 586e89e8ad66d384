//! Canonical labeling and automorphism groups of vertex-colored graphs.
//!
//! The search tree is the usual individualization-refinement tree: equitable
//! refinement of an ordered partition, then branching on the vertices of the
//! first smallest non-singleton cell. A first pass collects generators of the
//! automorphism group by comparing leaves with the first leaf; a second pass
//! explores one child per orbit of the exact point stabilizer (from the
//! stabilizer chain) and keeps the lexicographically smallest leaf.

use crate::group::{orbits_of, Perm, PermGroup};
use crate::incidence::IncidenceStructure;
use std::collections::VecDeque;

/// Undirected simple graph with sorted adjacency lists.
#[derive(Debug, Clone)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (a, b) in edges {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        for l in &mut adj {
            l.sort_unstable();
            l.dedup();
        }
        Graph { adj }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn is_automorphism(&self, p: &[u32]) -> bool {
        self.adj.iter().enumerate().all(|(u, l)| {
            let pu = p[u] as usize;
            let mut img: Vec<u32> = l.iter().map(|&w| p[w as usize]).collect();
            img.sort_unstable();
            img == self.adj[pu]
        })
    }
}

fn mix(h: u64, x: u64) -> u64 {
    (h ^ x.wrapping_mul(0x9E37_79B9_7F4A_7C15)).rotate_left(27).wrapping_mul(0x94D0_49BB_1331_11EB)
}

/// Ordered partition of `0..n` into contiguous cells of `elems`.
#[derive(Debug, Clone)]
struct Partition {
    elems: Vec<u32>,
    pos: Vec<u32>,
    /// Start of the cell containing each position.
    cell_of: Vec<u32>,
    /// Length of the cell, valid at cell starts.
    len: Vec<u32>,
    singletons: usize,
}

impl Partition {
    /// Cells ordered by ascending color value.
    fn from_colors(colors: &[u64]) -> Self {
        let n = colors.len();
        let mut elems: Vec<u32> = (0..n as u32).collect();
        elems.sort_by_key(|&v| (colors[v as usize], v));
        let mut p = Partition { elems, pos: vec![0; n], cell_of: vec![0; n], len: vec![0; n], singletons: 0 };
        let mut start = 0;
        while start < n {
            let c = colors[p.elems[start] as usize];
            let mut end = start + 1;
            while end < n && colors[p.elems[end] as usize] == c {
                end += 1;
            }
            for i in start..end {
                p.cell_of[i] = start as u32;
            }
            p.len[start] = (end - start) as u32;
            if end - start == 1 {
                p.singletons += 1;
            }
            start = end;
        }
        for (i, &v) in p.elems.iter().enumerate() {
            p.pos[v as usize] = i as u32;
        }
        p
    }

    fn n(&self) -> usize {
        self.elems.len()
    }

    fn is_discrete(&self) -> bool {
        self.singletons == self.n()
    }

    fn cell_starts(&self) -> Vec<u32> {
        let mut out = Vec::new();
        let mut s = 0;
        while s < self.n() {
            out.push(s as u32);
            s += self.len[s] as usize;
        }
        out
    }

    /// First smallest non-singleton cell.
    fn target_cell(&self) -> Option<u32> {
        let mut best: Option<(u32, u32)> = None;
        let mut s = 0;
        while s < self.n() {
            let l = self.len[s];
            if l > 1 && best.is_none_or(|(bl, _)| l < bl) {
                best = Some((l, s as u32));
            }
            s += l as usize;
        }
        best.map(|(_, s)| s)
    }

    fn cell(&self, start: u32) -> &[u32] {
        &self.elems[start as usize..(start + self.len[start as usize]) as usize]
    }

    /// Splits `v` off the front of its cell; returns the start of the remainder.
    fn individualize(&mut self, v: u32) -> u32 {
        let p = self.pos[v as usize] as usize;
        let s = self.cell_of[p] as usize;
        let l = self.len[s] as usize;
        debug_assert!(l > 1);
        let other = self.elems[s];
        self.elems.swap(s, p);
        self.pos[other as usize] = p as u32;
        self.pos[v as usize] = s as u32;
        self.len[s] = 1;
        self.len[s + 1] = (l - 1) as u32;
        for i in s + 1..s + l {
            self.cell_of[i] = (s + 1) as u32;
        }
        self.singletons += 1;
        if l == 2 {
            self.singletons += 1;
        }
        (s + 1) as u32
    }

    /// Equitable refinement; returns a hash of the refinement trace.
    fn refine(&mut self, g: &Graph, initial: &[u32], count: &mut [u32]) -> u64 {
        let n = self.n();
        let mut h = 0x51_7C_C1_B7_27_22_0A_95u64;
        let mut in_queue = vec![false; n];
        let mut queue: VecDeque<u32> = VecDeque::new();
        for &c in initial {
            if !in_queue[c as usize] {
                in_queue[c as usize] = true;
                queue.push_back(c);
            }
        }
        let mut touched: Vec<u32> = Vec::new();
        let mut touched_cells: Vec<u32> = Vec::new();
        while let Some(sc) = queue.pop_front() {
            if self.is_discrete() {
                break;
            }
            in_queue[sc as usize] = false;
            let verts: Vec<u32> = self.cell(sc).to_vec();
            for &u in &verts {
                for &w in g.neighbors(u) {
                    if count[w as usize] == 0 {
                        touched.push(w);
                    }
                    count[w as usize] += 1;
                }
            }
            for &w in &touched {
                touched_cells.push(self.cell_of[self.pos[w as usize] as usize]);
            }
            touched_cells.sort_unstable();
            touched_cells.dedup();
            h = mix(h, sc as u64);
            for &cs in &touched_cells {
                let s = cs as usize;
                let l = self.len[s] as usize;
                let seg = &mut self.elems[s..s + l];
                seg.sort_by_key(|&v| count[v as usize]);
                let mut frags: Vec<(usize, u32)> = Vec::new();
                let mut i = 0;
                while i < l {
                    let c = count[seg[i] as usize];
                    let mut j = i + 1;
                    while j < l && count[seg[j] as usize] == c {
                        j += 1;
                    }
                    frags.push((s + i, c));
                    i = j;
                }
                h = mix(h, cs as u64);
                h = mix(h, frags.len() as u64);
                for (k, &(fs, c)) in frags.iter().enumerate() {
                    h = mix(h, c as u64);
                    let fe = frags.get(k + 1).map_or(s + l, |f| f.0);
                    h = mix(h, (fe - fs) as u64);
                }
                if frags.len() == 1 {
                    continue;
                }
                for i in s..s + l {
                    self.pos[self.elems[i] as usize] = i as u32;
                }
                let mut largest = 0;
                let mut largest_len = 0;
                for (k, &(fs, _)) in frags.iter().enumerate() {
                    let fe = frags.get(k + 1).map_or(s + l, |f| f.0);
                    let fl = fe - fs;
                    for i in fs..fe {
                        self.cell_of[i] = fs as u32;
                    }
                    self.len[fs] = fl as u32;
                    if fl == 1 {
                        self.singletons += 1;
                    }
                    if fl > largest_len {
                        largest_len = fl;
                        largest = k;
                    }
                }
                let was_queued = in_queue[s];
                for (k, &(fs, _)) in frags.iter().enumerate() {
                    if (was_queued || k != largest) && !in_queue[fs] {
                        in_queue[fs] = true;
                        queue.push_back(fs as u32);
                    }
                }
            }
            for &w in &touched {
                count[w as usize] = 0;
            }
            touched.clear();
            touched_cells.clear();
        }
        h
    }
}

struct Searcher<'a> {
    g: &'a Graph,
    count: Vec<u32>,
}

impl<'a> Searcher<'a> {
    fn new(g: &'a Graph) -> Self {
        Searcher { g, count: vec![0; g.n()] }
    }

    fn child(&mut self, part: &Partition, parent_trace: u64, v: u32) -> (Partition, u64) {
        let mut p = part.clone();
        let cell = p.cell_of[p.pos[v as usize] as usize];
        let rest = p.individualize(v);
        let h = p.refine(self.g, &[cell, rest], &mut self.count);
        (p, mix(mix(parent_trace, cell as u64), h))
    }

    /// Adjacency matrix of the graph relabeled by the discrete partition.
    fn certificate(&self, part: &Partition) -> Vec<u64> {
        let n = self.g.n();
        let words = n.div_ceil(64);
        let mut cert = vec![0u64; n * words];
        for (i, &v) in part.elems.iter().enumerate() {
            for &w in self.g.neighbors(v) {
                let j = part.pos[w as usize] as usize;
                cert[i * words + j / 64] |= 1 << (63 - j % 64);
            }
        }
        cert
    }
}

struct FirstPath {
    /// Trace after each depth, root included.
    traces: Vec<u64>,
    cert: Vec<u64>,
    leaf_elems: Vec<u32>,
}

fn fixing(gens: &[Perm], prefix: &[u32]) -> Vec<Perm> {
    gens.iter().filter(|g| prefix.iter().all(|&x| g[x as usize] == x)).cloned().collect()
}

fn same_orbit_as_any(n: usize, gens: &[Perm], w: u32, others: &[u32]) -> bool {
    if others.is_empty() || gens.is_empty() {
        return false;
    }
    let orbits = orbits_of(n, gens);
    let orbit = orbits.iter().find(|o| o.binary_search(&w).is_ok()).unwrap();
    others.iter().any(|o| orbit.binary_search(o).is_ok())
}

/// Collects automorphism generators; returns them with the first-path data.
fn find_automorphisms(s: &mut Searcher, root: &Partition, root_trace: u64) -> (Vec<Perm>, FirstPath) {
    let n = s.g.n();
    let mut path: Vec<(Partition, u64, u32)> = Vec::new();
    let mut traces = vec![root_trace];
    let mut node = root.clone();
    let mut trace = root_trace;
    while let Some(t) = node.target_cell() {
        let v0 = node.cell(t)[0];
        let (child, ct) = s.child(&node, trace, v0);
        path.push((node, trace, v0));
        traces.push(ct);
        node = child;
        trace = ct;
    }
    let first = FirstPath { traces, cert: s.certificate(&node), leaf_elems: node.elems.clone() };
    let mut gens: Vec<Perm> = Vec::new();
    for level in (0..path.len()).rev() {
        let (part, ptrace, v0) = &path[level];
        let prefix: Vec<u32> = path[..level].iter().map(|p| p.2).collect();
        let t = part.target_cell().unwrap();
        let cell: Vec<u32> = part.cell(t).to_vec();
        let mut processed = vec![*v0];
        for &w in &cell {
            if w == *v0 {
                continue;
            }
            let stab = fixing(&gens, &prefix);
            if same_orbit_as_any(n, &stab, w, &processed) {
                continue;
            }
            let (child, ct) = s.child(part, *ptrace, w);
            if ct == first.traces[level + 1] {
                let mut pre = prefix.clone();
                pre.push(w);
                if let Some(a) = explore(s, &child, ct, level + 1, &mut pre, &first, &gens) {
                    gens.push(a);
                }
            }
            processed.push(w);
        }
    }
    (gens, first)
}

fn explore(
    s: &mut Searcher,
    node: &Partition,
    trace: u64,
    depth: usize,
    prefix: &mut Vec<u32>,
    first: &FirstPath,
    gens: &[Perm],
) -> Option<Perm> {
    let n = s.g.n();
    let Some(t) = node.target_cell() else {
        if s.certificate(node) != first.cert {
            return None;
        }
        // Vertex at position i of the first leaf goes to the vertex at position i here.
        let mut a = vec![0u32; n];
        for (i, &v) in first.leaf_elems.iter().enumerate() {
            a[v as usize] = node.elems[i];
        }
        debug_assert!(s.g.is_automorphism(&a));
        return Some(a);
    };
    if depth + 1 >= first.traces.len() {
        return None;
    }
    let cell: Vec<u32> = node.cell(t).to_vec();
    let stab = fixing(gens, prefix);
    let mut failed: Vec<u32> = Vec::new();
    for &w in &cell {
        if same_orbit_as_any(n, &stab, w, &failed) {
            continue;
        }
        let (child, ct) = s.child(node, trace, w);
        if ct == first.traces[depth + 1] {
            prefix.push(w);
            let found = explore(s, &child, ct, depth + 1, prefix, first, gens);
            prefix.pop();
            if found.is_some() {
                return found;
            }
        }
        failed.push(w);
    }
    None
}

fn canon_search(s: &mut Searcher, node: &Partition, trace: u64, group: &PermGroup, best: &mut Option<(Vec<u64>, Vec<u32>)>) {
    let Some(t) = node.target_cell() else {
        let cert = s.certificate(node);
        if best.as_ref().is_none_or(|(b, _)| cert < *b) {
            *best = Some((cert, node.elems.clone()));
        }
        return;
    };
    let cell: Vec<u32> = node.cell(t).to_vec();
    let orbits = orbits_of(s.g.n(), group.generators());
    let mut orbit_id = vec![u32::MAX; s.g.n()];
    for (k, o) in orbits.iter().enumerate() {
        for &x in o {
            orbit_id[x as usize] = k as u32;
        }
    }
    let mut used = std::collections::HashSet::new();
    for &w in &cell {
        if !used.insert(orbit_id[w as usize]) {
            continue;
        }
        let (child, ct) = s.child(node, trace, w);
        let sub = if group.is_trivial() { group.clone() } else { group.stabilizer(&[w]) };
        canon_search(s, &child, ct, &sub, best);
    }
}

/// Canonical labeling of a colored graph.
#[derive(Debug, Clone)]
pub struct Canon {
    /// Adjacency matrix in canonical order, packed.
    pub certificate: Vec<u64>,
    /// `labeling[v]` is the canonical position of vertex `v`.
    pub labeling: Vec<u32>,
    pub group: PermGroup,
}

/// Canonical form and automorphism group of `g` with initial vertex colors.
///
/// Only automorphisms and relabelings preserving color values are considered,
/// and vertices of smaller color come first in the canonical order.
pub fn canonical_graph(g: &Graph, colors: &[u64]) -> Canon {
    let n = g.n();
    let mut s = Searcher::new(g);
    let mut root = Partition::from_colors(colors);
    let starts = root.cell_starts();
    let mut h = mix(0, n as u64);
    for &c in &starts {
        h = mix(h, root.len[c as usize] as u64);
    }
    let rt = mix(h, root.refine(g, &starts, &mut s.count));
    let (gens, _) = find_automorphisms(&mut s, &root, rt);
    let group = PermGroup::new(n, gens);
    let mut best = None;
    canon_search(&mut s, &root, rt, &group, &mut best);
    let (certificate, elems) = best.unwrap();
    let mut labeling = vec![0u32; n];
    for (i, &v) in elems.iter().enumerate() {
        labeling[v as usize] = i as u32;
    }
    Canon { certificate, labeling, group }
}

/// Levi graph: vertex `x < v` is point `x`, vertex `v + j` is block `j`.
pub fn levi(s: &IncidenceStructure) -> Graph {
    let v = s.v() as u32;
    Graph::new(
        s.v() + s.b(),
        (0..s.v()).flat_map(|x| s.point_blocks(x).into_iter().map(move |j| (x as u32, v + j as u32))),
    )
}

/// Isomorphism-invariant vertex colors: side (unless switching is allowed),
/// degree, distance profile and S-class size.
pub fn levi_colors(s: &IncidenceStructure, g: &Graph, allow_switch: bool) -> Vec<u64> {
    let n = g.n();
    let pts = s.s_equivalence_classes();
    let blks = s.dual().s_equivalence_classes();
    let mut keys: Vec<(u64, usize, Vec<u32>)> = Vec::with_capacity(n);
    for u in 0..n {
        let mut dist = vec![u32::MAX; n];
        dist[u] = 0;
        let mut q = VecDeque::from([u as u32]);
        let mut profile: Vec<u32> = vec![1];
        while let Some(x) = q.pop_front() {
            for &w in g.neighbors(x) {
                if dist[w as usize] == u32::MAX {
                    let d = dist[x as usize] + 1;
                    dist[w as usize] = d;
                    if profile.len() <= d as usize {
                        profile.push(0);
                    }
                    profile[d as usize] += 1;
                    q.push_back(w);
                }
            }
        }
        let (side, class) = if u < s.v() {
            (0, pts.classes[pts.class_of[u]].len())
        } else {
            (1, blks.classes[blks.class_of[u - s.v()]].len())
        };
        let side = if allow_switch { 0 } else { side };
        keys.push((side, class, profile));
    }
    let mut sorted = keys.clone();
    sorted.sort();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).unwrap() as u64).collect()
}

/// Canonical data of an incidence structure (points stay points).
pub fn canonical_levi(s: &IncidenceStructure) -> Canon {
    let g = levi(s);
    let colors = levi_colors(s, &g, false);
    canonical_graph(&g, &colors)
}

/// Certificate invariant under point and block relabelings.
pub fn canonical_form(s: &IncidenceStructure) -> Vec<u8> {
    let c = canonical_levi(s);
    certificate_bytes(s.v(), s.b(), &c.certificate)
}

fn certificate_bytes(v: usize, b: usize, words: &[u64]) -> Vec<u8> {
    let mut out = Vec::with_capacity(8 + words.len() * 8);
    out.extend_from_slice(&(v as u32).to_be_bytes());
    out.extend_from_slice(&(b as u32).to_be_bytes());
    for w in words {
        out.extend_from_slice(&w.to_be_bytes());
    }
    out
}

pub fn is_isomorphic(a: &IncidenceStructure, b: &IncidenceStructure) -> bool {
    a.v() == b.v() && a.b() == b.b() && a.num_incidences() == b.num_incidences() && canonical_form(a) == canonical_form(b)
}

/// True iff the structure is isomorphic to its dual.
pub fn is_self_dual(s: &IncidenceStructure) -> bool {
    is_isomorphic(s, &s.dual())
}

/// An explicit isomorphism `(point map, block map)` from `a` to `b`, verified incidence by incidence.
pub fn isomorphism(a: &IncidenceStructure, b: &IncidenceStructure) -> Option<(Vec<usize>, Vec<usize>)> {
    if a.v() != b.v() || a.b() != b.b() {
        return None;
    }
    let ca = canonical_levi(a);
    let cb = canonical_levi(b);
    if ca.certificate != cb.certificate {
        return None;
    }
    let n = a.v() + a.b();
    let mut inv_b = vec![0usize; n];
    for (v, &p) in cb.labeling.iter().enumerate() {
        inv_b[p as usize] = v;
    }
    let map: Vec<usize> = (0..n).map(|v| inv_b[ca.labeling[v] as usize]).collect();
    let pm: Vec<usize> = map[..a.v()].to_vec();
    let bm: Vec<usize> = map[a.v()..].iter().map(|&x| x - a.v()).collect();
    let ok = (0..a.v()).all(|x| (0..a.b()).all(|j| a.incident(x, j) == b.incident(pm[x], bm[j])));
    ok.then_some((pm, bm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn cycle_graph(n: usize) -> Graph {
        Graph::new(n, (0..n as u32).map(|i| (i, (i + 1) % n as u32)))
    }

    #[test]
    fn cycle_groups() {
        for n in 3..12 {
            let c = canonical_graph(&cycle_graph(n), &vec![0; n]);
            assert_eq!(c.group.order(), BigUint::from(2 * n));
        }
    }

    #[test]
    fn petersen_group() {
        let mut e = Vec::new();
        for i in 0..5u32 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((i + 5, (i + 2) % 5 + 5));
        }
        let c = canonical_graph(&Graph::new(10, e), &[0; 10]);
        assert_eq!(c.group.order(), BigUint::from(120u32));
    }

    #[test]
    fn relabeled_cycles_share_certificate() {
        let a = cycle_graph(8);
        let perm = [3u32, 7, 1, 0, 6, 2, 5, 4];
        let b = Graph::new(8, (0..8u32).map(|i| (perm[i as usize], perm[((i + 1) % 8) as usize])));
        assert_eq!(canonical_graph(&a, &[0; 8]).certificate, canonical_graph(&b, &[0; 8]).certificate);
        let path = Graph::new(8, (0..7u32).map(|i| (i, i + 1)));
        assert_ne!(canonical_graph(&a, &[0; 8]).certificate, canonical_graph(&path, &[0; 8]).certificate);
    }
}
