//! Permutation groups with a deterministic Schreier–Sims stabilizer chain.
//!
//! Permutations act on the right: `compose(g, h)` is "first `g`, then `h`".

use num_bigint::BigUint;
use num_traits::One;

pub type Perm = Vec<u32>;

pub fn identity(n: usize) -> Perm {
    (0..n as u32).collect()
}

pub fn is_identity(p: &[u32]) -> bool {
    p.iter().enumerate().all(|(i, &x)| i as u32 == x)
}

/// First `g`, then `h`.
pub fn compose(g: &[u32], h: &[u32]) -> Perm {
    g.iter().map(|&x| h[x as usize]).collect()
}

pub fn inverse(g: &[u32]) -> Perm {
    let mut inv = vec![0u32; g.len()];
    for (i, &x) in g.iter().enumerate() {
        inv[x as usize] = i as u32;
    }
    inv
}

#[derive(Debug, Clone)]
struct Level {
    base: u32,
    /// Strong generators fixing every earlier base point.
    gens: Vec<Perm>,
    /// `transversal[x]` maps the base point to `x`; `inv_transversal[x]` is its inverse.
    transversal: Vec<Option<Perm>>,
    inv_transversal: Vec<Option<Perm>>,
    orbit: Vec<u32>,
}

impl Level {
    fn new(degree: usize, base: u32) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base as usize] = Some(identity(degree));
        Level { base, gens: Vec::new(), inv_transversal: transversal.clone(), transversal, orbit: vec![base] }
    }
}

/// A permutation group with its stabilizer chain.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    levels: Vec<Level>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Self {
        Self::with_base_prefix(degree, generators, &[])
    }

    /// Builds the chain so that its base starts with `prefix`.
    pub fn with_base_prefix(degree: usize, generators: Vec<Perm>, prefix: &[u32]) -> Self {
        let mut g = PermGroup { degree, generators: Vec::new(), levels: Vec::new() };
        for &b in prefix {
            g.levels.push(Level::new(degree, b));
        }
        let mut work: Vec<(usize, u32, usize)> = Vec::new();
        for gen in generators {
            assert_eq!(gen.len(), degree);
            if is_identity(&gen) {
                continue;
            }
            g.generators.push(gen.clone());
            let (res, lvl) = g.sift_from(&gen, 0);
            if !is_identity(&res) {
                g.add_strong(lvl, res, &mut work);
                g.complete(&mut work);
            }
        }
        g
    }

    /// Adds a strong generator fixing the first `lvl` base points and queues new Schreier pairs.
    fn add_strong(&mut self, lvl: usize, g: Perm, work: &mut Vec<(usize, u32, usize)>) {
        if lvl == self.levels.len() {
            let b = g.iter().enumerate().find(|&(x, &y)| x as u32 != y).map(|(x, _)| x as u32).unwrap();
            self.levels.push(Level::new(self.degree, b));
        }
        for j in 0..=lvl {
            let level = &mut self.levels[j];
            level.gens.push(g.clone());
            let s = level.gens.len() - 1;
            for &x in &level.orbit {
                work.push((j, x, s));
            }
            // Extend the orbit with the new generator; new points get every generator.
            let mut k = 0;
            while k < level.orbit.len() {
                let x = level.orbit[k];
                for si in 0..level.gens.len() {
                    let y = level.gens[si][x as usize];
                    if level.transversal[y as usize].is_none() {
                        let t = compose(level.transversal[x as usize].as_ref().unwrap(), &level.gens[si]);
                        level.inv_transversal[y as usize] = Some(inverse(&t));
                        level.transversal[y as usize] = Some(t);
                        level.orbit.push(y);
                        for s2 in 0..level.gens.len() {
                            work.push((j, y, s2));
                        }
                    }
                }
                k += 1;
            }
        }
    }

    fn complete(&mut self, work: &mut Vec<(usize, u32, usize)>) {
        while let Some((j, x, s)) = work.pop() {
            let level = &self.levels[j];
            let gen = &level.gens[s];
            let y = gen[x as usize];
            let tx = level.transversal[x as usize].as_ref().unwrap();
            let ity = level.inv_transversal[y as usize].as_ref().unwrap();
            let schreier = compose(&compose(tx, gen), ity);
            if is_identity(&schreier) {
                continue;
            }
            let (res, lvl) = self.sift_from(&schreier, j + 1);
            if !is_identity(&res) {
                self.add_strong(lvl, res, work);
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn strong_generators(&self) -> &[Perm] {
        self.levels.first().map_or(&[], |l| &l.gens)
    }

    fn sift_from(&self, g: &[u32], start: usize) -> (Perm, usize) {
        let mut g = g.to_vec();
        for i in start..self.levels.len() {
            let lvl = &self.levels[i];
            let y = g[lvl.base as usize];
            match &lvl.inv_transversal[y as usize] {
                Some(t) => g = compose(&g, t),
                None => return (g, i),
            }
        }
        let n = self.levels.len();
        (g, n)
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.iter().all(|l| l.orbit.len() == 1)
    }

    pub fn contains(&self, g: &[u32]) -> bool {
        g.len() == self.degree && is_identity(&self.sift_from(g, 0).0)
    }

    /// Orbits of the whole group, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        orbits_of(self.degree, &self.generators)
    }

    pub fn orbit_of(&self, x: u32) -> Vec<u32> {
        let mut seen = vec![false; self.degree];
        seen[x as usize] = true;
        let mut out = vec![x];
        let mut k = 0;
        while k < out.len() {
            for g in &self.generators {
                let y = g[out[k] as usize];
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                }
            }
            k += 1;
        }
        out.sort_unstable();
        out
    }

    /// Pointwise stabilizer of the sequence `points`.
    pub fn stabilizer(&self, points: &[u32]) -> PermGroup {
        let chain = PermGroup::with_base_prefix(self.degree, self.strong_generators().to_vec(), points);
        let k = points.len();
        let levels = chain.levels[k..].to_vec();
        let generators = levels.first().map_or_else(Vec::new, |l| l.gens.clone());
        PermGroup { degree: self.degree, generators, levels }
    }

    /// Searches the coset `sigma * G` ("first `sigma`, then `g`") for an involution.
    ///
    /// Elements are built base point by base point; partial images are pruned
    /// as soon as they contradict `tau(tau(x)) = x`. `Err` means the node budget ran out.
    pub fn find_involution_in_coset(&self, sigma: &[u32], budget: u64) -> std::result::Result<Option<Perm>, u64> {
        let n = self.degree;
        let mut sigma_inv = vec![0u32; n];
        for (i, &x) in sigma.iter().enumerate() {
            sigma_inv[x as usize] = i as u32;
        }
        let base = self.base();
        let mut nodes = 0u64;

        #[allow(clippy::too_many_arguments)]
        fn rec(
            grp: &PermGroup,
            sigma: &[u32],
            sigma_inv: &[u32],
            base: &[u32],
            i: usize,
            h: &Perm,
            nodes: &mut u64,
            budget: u64,
        ) -> std::result::Result<Option<Perm>, u64> {
            *nodes += 1;
            if *nodes > budget {
                return Err(*nodes);
            }
            // g agrees with h on base[..i]
            let known = |x: u32| -> Option<u32> { base[..i].iter().position(|&b| b == x).map(|_| h[x as usize]) };
            for &b in &base[..i] {
                let x = sigma_inv[b as usize];
                let y = h[b as usize];
                if let Some(z) = known(sigma[y as usize]) {
                    if z != x {
                        return Ok(None);
                    }
                }
            }
            if i == base.len() {
                let tau = compose(sigma, h);
                let ok = (0..tau.len()).all(|x| tau[tau[x] as usize] == x as u32);
                return Ok(ok.then_some(tau));
            }
            let lvl = &grp.levels[i];
            for &x in &lvl.orbit {
                let t = lvl.transversal[x as usize].as_ref().unwrap();
                let h2 = compose(t, h);
                if let Some(p) = rec(grp, sigma, sigma_inv, base, i + 1, &h2, nodes, budget)? {
                    return Ok(Some(p));
                }
            }
            Ok(None)
        }
        rec(self, sigma, &sigma_inv, &base, 0, &identity(n), &mut nodes, budget)
    }

    /// Calls `f` on every element; intended for small groups.
    pub fn for_each_element(&self, mut f: impl FnMut(&[u32])) {
        fn rec(levels: &[Level], acc: Perm, f: &mut dyn FnMut(&[u32])) {
            match levels.split_last() {
                None => f(&acc),
                Some((last, rest)) => {
                    for &x in &last.orbit {
                        let t = last.transversal[x as usize].as_ref().unwrap();
                        rec(rest, compose(&acc, t), f);
                    }
                }
            }
        }
        rec(&self.levels, identity(self.degree), &mut f);
    }
}

/// Orbits of the group generated by `gens` on `0..n`.
pub fn orbits_of(n: usize, gens: &[Perm]) -> Vec<Vec<u32>> {
    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn find(p: &mut [u32], mut x: u32) -> u32 {
        while p[x as usize] != x {
            p[x as usize] = p[p[x as usize] as usize];
            x = p[x as usize];
        }
        x
    }
    for g in gens {
        for x in 0..n as u32 {
            let (a, b) = (find(&mut parent, x), find(&mut parent, g[x as usize]));
            if a != b {
                parent[a.max(b) as usize] = a.min(b);
            }
        }
    }
    let mut groups: std::collections::BTreeMap<u32, Vec<u32>> = Default::default();
    for x in 0..n as u32 {
        let r = find(&mut parent, x);
        groups.entry(r).or_default().push(x);
    }
    groups.into_values().collect()
}
