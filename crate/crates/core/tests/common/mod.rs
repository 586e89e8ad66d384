//! Brute-force oracles shared by the integration tests. They deliberately avoid
//! the library's canonical labeling, group and number-theory code.

#![allow(dead_code)]

use confgeo::IncidenceStructure;
use std::collections::{BTreeSet, HashSet};

/// Lexicographic successor; false after the last permutation.
pub fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn block_masks(s: &IncidenceStructure) -> Vec<u64> {
    (0..s.b()).map(|j| s.block(j).iter().fold(0u64, |m, &x| m | 1 << x)).collect()
}

fn point_masks(s: &IncidenceStructure) -> Vec<u64> {
    (0..s.v()).map(|x| s.point_blocks(x).iter().fold(0u64, |m, &j| m | 1 << j)).collect()
}

/// Levi permutations (points `0..v`, blocks `v..v+b`) of all incidence-preserving
/// maps, by trying every point permutation; with `switches`, also every
/// point-to-block bijection. Needs distinct blocks and `v <= 8`.
pub fn brute_levi_group(s: &IncidenceStructure, switches: bool) -> Vec<Vec<usize>> {
    let (v, b) = (s.v(), s.b());
    assert!(v <= 8, "brute force is limited to v <= 8");
    let blocks = block_masks(s);
    let points = point_masks(s);
    let map_mask = |m: u64, p: &[usize]| (0..p.len()).filter(|&i| m >> i & 1 == 1).fold(0u64, |a, i| a | 1 << p[i]);
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..v).collect();
    loop {
        // Proper: point x -> p[x], block j -> block with point set p(B_j).
        let mut perm: Vec<usize> = p.clone();
        let ok = blocks.iter().all(|&m| {
            let img = map_mask(m, &p);
            blocks.iter().position(|&o| o == img).map(|k| perm.push(v + k)).is_some()
        });
        if ok && perm.iter().collect::<HashSet<_>>().len() == v + b {
            out.push(perm);
        }
        // Switch: point x -> block p[x], block j -> point with block set p(B_j).
        if switches && v == b {
            let mut perm: Vec<usize> = p.iter().map(|&k| v + k).collect();
            let ok = blocks.iter().all(|&m| {
                let img = map_mask(m, &p);
                points.iter().position(|&o| o == img).map(|y| perm.push(y)).is_some()
            });
            if ok && perm.iter().collect::<HashSet<_>>().len() == 2 * v {
                out.push(perm);
            }
        }
        if !next_permutation(&mut p) {
            break;
        }
    }
    out
}

pub fn levi_adjacency(s: &IncidenceStructure) -> Vec<Vec<usize>> {
    let v = s.v();
    let mut adj: Vec<Vec<usize>> = (0..v).map(|x| s.point_blocks(x).iter().map(|j| v + j).collect()).collect();
    adj.extend((0..s.b()).map(|j| s.block(j)));
    adj
}

fn arcs(adj: &[Vec<usize>], s: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<Vec<usize>> = (0..adj.len()).map(|u| vec![u]).collect();
    for _ in 0..s {
        let mut next = Vec::new();
        for a in &cur {
            let last = *a.last().unwrap();
            let prev = a.len().checked_sub(2).map(|i| a[i]);
            for &w in &adj[last] {
                if Some(w) != prev {
                    let mut b = a.clone();
                    b.push(w);
                    next.push(b);
                }
            }
        }
        cur = next;
    }
    cur
}

/// Largest `s <= max_s` with `group` transitive on s-arcs, counted explicitly.
/// `None` when not vertex-transitive.
pub fn brute_s_regularity(adj: &[Vec<usize>], group: &[Vec<usize>], max_s: usize) -> Option<usize> {
    let orbit0: HashSet<usize> = group.iter().map(|g| g[0]).collect();
    if orbit0.len() != adj.len() {
        return None;
    }
    let mut best = 0;
    for s in 1..=max_s {
        let all = arcs(adj, s);
        let orbit: HashSet<Vec<usize>> = group.iter().map(|g| all[0].iter().map(|&x| g[x]).collect()).collect();
        if orbit.len() != all.len() {
            break;
        }
        best = s;
    }
    Some(best)
}

/// Canonical form of a block multiset: the minimum over all point relabelings.
fn brute_canon(v: usize, blocks: &[u64]) -> Vec<u64> {
    let mut p: Vec<usize> = (0..v).collect();
    let mut best: Option<Vec<u64>> = None;
    loop {
        let mut img: Vec<u64> =
            blocks.iter().map(|&m| (0..v).filter(|&i| m >> i & 1 == 1).fold(0u64, |a, i| a | 1 << p[i])).collect();
        img.sort_unstable();
        if best.as_ref().is_none_or(|b| img < *b) {
            best = Some(img);
        }
        if !next_permutation(&mut p) {
            break;
        }
    }
    best.unwrap()
}

/// Isomorphism classes of symmetric `v_3` with distinct points and blocks, by
/// choosing `v` distinct triples and reducing by [`brute_canon`].
pub fn brute_v3_classes(v: usize, lineal: bool) -> usize {
    let triples: Vec<u64> = (0..v)
        .flat_map(|a| (a + 1..v).flat_map(move |b| (b + 1..v).map(move |c| 1u64 << a | 1 << b | 1 << c)))
        .collect();
    let mut classes: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut chosen: Vec<u64> = Vec::new();
    fn rec(v: usize, lineal: bool, triples: &[u64], from: usize, deg: &mut Vec<u8>, chosen: &mut Vec<u64>, out: &mut BTreeSet<Vec<u64>>) {
        if chosen.len() == v {
            let pts: HashSet<u64> =
                (0..v).map(|x| chosen.iter().enumerate().filter(|(_, &m)| m >> x & 1 == 1).fold(0u64, |a, (j, _)| a | 1 << j)).collect();
            if pts.len() == v {
                out.insert(brute_canon(v, chosen));
            }
            return;
        }
        for i in from..triples.len() {
            let t = triples[i];
            if (0..v).any(|x| t >> x & 1 == 1 && deg[x] == 3) {
                continue;
            }
            if lineal && chosen.iter().any(|&c| (c & t).count_ones() >= 2) {
                continue;
            }
            for x in 0..v {
                if t >> x & 1 == 1 {
                    deg[x] += 1;
                }
            }
            chosen.push(t);
            rec(v, lineal, triples, i + 1, deg, chosen, out);
            chosen.pop();
            for x in 0..v {
                if t >> x & 1 == 1 {
                    deg[x] -= 1;
                }
            }
        }
    }
    rec(v, lineal, &triples, 0, &mut vec![0; v], &mut chosen, &mut classes);
    classes.len()
}

pub fn is_square(n: i64) -> bool {
    n >= 0 && {
        let r = (n as f64).sqrt().round() as i64;
        (r - 1..=r + 1).any(|s| s >= 0 && s * s == n)
    }
}

/// Nontrivial zero of `ax² + by² + cz²` searched inside Holzer's box
/// `|x| <= √|bc|`, `|y| <= √|ac|` (then `z` is solved for).
pub fn legendre_brute(a: i64, b: i64, c: i64) -> bool {
    if a == 0 || b == 0 || c == 0 {
        return true;
    }
    let bx = ((b * c).abs() as f64).sqrt().floor() as i64;
    let by = ((a * c).abs() as f64).sqrt().floor() as i64;
    for x in 0..=bx {
        for y in 0..=by {
            if x == 0 && y == 0 {
                continue;
            }
            let t = -(a * x * x + b * y * y);
            if t % c == 0 && is_square(t / c) {
                return true;
            }
        }
    }
    false
}

/// `m(d, n; q)` from the product formula.
pub fn gaussian_product(d: u32, n: u32, q: u128) -> u128 {
    let (num_top, k) = (n + 1, d + 1);
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= q.pow(num_top - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

/// Number of cyclic subgroups of order `n` in `(Z/n)^2`: elements of order `n` over `φ(n)`.
pub fn cyclic_subgroups_brute(n: usize) -> usize {
    let gcd = |mut a: usize, mut b: usize| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    let order_n = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| gcd(gcd(a, b), n) == 1).count();
    let phi = (1..=n).filter(|&k| gcd(k, n) == 1).count();
    order_n / phi
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Pair counts `#{blocks ⊇ {x, y}}` when they are all equal.
pub fn brute_lambda(s: &IncidenceStructure) -> Option<usize> {
    let blocks = block_masks(s);
    let mut seen = None;
    for x in 0..s.v() {
        for y in x + 1..s.v() {
            let c = blocks.iter().filter(|&&m| m >> x & 1 == 1 && m >> y & 1 == 1).count();
            match seen {
                None => seen = Some(c),
                Some(l) if l != c => return None,
                _ => {}
            }
        }
    }
    seen
}
