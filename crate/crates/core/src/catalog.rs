//! Named configurations and their exact coordinate realizations.

use crate::canon;
use crate::error::{Error, Result};
use crate::exact::{self, BlockSpec, RationalPointSet};
use crate::field::FieldTable;
use crate::geometry;
use crate::incidence::{ConfigParams, IncidenceStructure};
use crate::{design, io, symplectic};
use num_bigint::BigInt;
use num_traits::Zero;

/// The Fano plane, lines `{i, i+1, i+3} mod 7`.
pub fn fano() -> IncidenceStructure {
    let blocks: Vec<Vec<usize>> = (0..7).map(|i| vec![i, (i + 1) % 7, (i + 3) % 7]).collect();
    IncidenceStructure::from_blocks(7, &blocks).unwrap()
}

/// The Möbius–Kantor `8_3`, lines `{i, i+1, i+3} mod 8`.
pub fn mobius_kantor() -> IncidenceStructure {
    let blocks: Vec<Vec<usize>> = (0..8).map(|i| vec![i, (i + 1) % 8, (i + 3) % 8]).collect();
    IncidenceStructure::from_blocks(8, &blocks).unwrap()
}

/// Ceva(n): points `(a, b, c)` in `(Z/n)^3` with `a + b + c = 0`, blocks `(i, α)`.
pub fn ceva(n: usize) -> Result<IncidenceStructure> {
    if n < 2 {
        return Err(Error::InvalidN(n));
    }
    let pts: Vec<[usize; 3]> = (0..n).flat_map(|a| (0..n).map(move |b| [a, b, (2 * n - a - b) % n])).collect();
    let s = IncidenceStructure::from_fn(pts.len(), 3 * n, |x, j| pts[x][j / n] == j % n)?;
    Ok(s.with_point_labels(pts.iter().map(|p| format!("({},{},{})", p[0], p[1], p[2])).collect())
        .with_block_labels((0..3 * n).map(|j| format!("L{},{}", j / n, j % n)).collect()))
}

/// Ceva(n) constructed over GF(q) from coordinates.
#[derive(Debug, Clone)]
pub struct CevaRealization {
    pub n: usize,
    pub q: u64,
    /// The n-th roots of unity, in the order used for line indices.
    pub roots: Vec<u16>,
    /// Coefficient vectors of `L_{i,α}`, block `i*n + k` for `α = roots[k]`.
    pub lines: Vec<Vec<u16>>,
    /// Concurrency points, normalized.
    pub points: Vec<Vec<u16>>,
    pub structure: IncidenceStructure,
    /// The value of `αβγ` over concurrent triples, if it is constant.
    pub constant: Option<u16>,
    pub isomorphic_to_abstract: bool,
}

fn cross(f: &FieldTable, a: &[u16], b: &[u16]) -> Vec<u16> {
    let c = |i: usize, j: usize| f.sub(f.mul(a[i], b[j]), f.mul(a[j], b[i]));
    vec![c(1, 2), c(2, 0), c(0, 1)]
}

fn fdot(f: &FieldTable, a: &[u16], b: &[u16]) -> u16 {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

pub fn ceva_realize(n: usize, q: u64) -> Result<CevaRealization> {
    if n < 2 {
        return Err(Error::InvalidN(n));
    }
    let f = FieldTable::new(q)?;
    if !(q - 1).is_multiple_of(n as u64) {
        return Err(Error::RootsUnavailable { n, q });
    }
    let roots: Vec<u16> = f.elements().filter(|&a| a != 0 && f.pow(a, n as u64) == 1).collect();
    debug_assert_eq!(roots.len(), n);
    let vertex = |i: usize| -> Vec<u16> { (0..3).map(|c| u16::from(c == i)).collect() };
    let through = |i: usize, a: u16| -> Vec<u16> {
        match i {
            0 => vec![0, 1, a],
            1 => vec![a, 0, 1],
            _ => vec![1, a, 0],
        }
    };
    let lines: Vec<Vec<u16>> =
        (0..3).flat_map(|i| roots.iter().map(move |&a| (i, a))).map(|(i, a)| cross(&f, &vertex(i), &through(i, a))).collect();
    let mut points: Vec<Vec<u16>> = Vec::new();
    let mut constants: Vec<u16> = Vec::new();
    for (ka, &a) in roots.iter().enumerate() {
        for (kb, &b) in roots.iter().enumerate() {
            let p = cross(&f, &lines[ka], &lines[n + kb]);
            if p.iter().all(|&x| x == 0) {
                continue;
            }
            let p = geometry::normalize_point(&f, &p)?;
            for (kc, &c) in roots.iter().enumerate() {
                if fdot(&f, &p, &lines[2 * n + kc]) == 0 {
                    constants.push(f.mul(f.mul(a, b), c));
                    if !points.contains(&p) {
                        points.push(p.clone());
                    }
                }
            }
        }
    }
    points.sort();
    let structure = IncidenceStructure::from_fn(points.len(), lines.len(), |x, j| fdot(&f, &points[x], &lines[j]) == 0)?;
    constants.sort_unstable();
    constants.dedup();
    let constant = (constants.len() == 1).then(|| constants[0]);
    let isomorphic_to_abstract = canon::is_isomorphic(&structure, &ceva(n)?);
    Ok(CevaRealization { n, q, roots, lines, points, structure, constant, isomorphic_to_abstract })
}

/// `N * prod_{p | N} (1 + 1/p)`, evaluated in integers.
pub fn s_formula(n: usize) -> usize {
    let mut num = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            num = num / p * (p + 1);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        num = num / m * (m + 1);
    }
    num
}

/// Cyclic order-N subgroups of `(Z/N)^2` and their cosets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularCosetSystem {
    pub n: usize,
    /// Sorted element lists, elements encoded as `a * N + b`.
    pub subgroups: Vec<Vec<usize>>,
    /// `(subgroup index, sorted elements)`.
    pub cosets: Vec<(usize, Vec<usize>)>,
}

impl ModularCosetSystem {
    pub fn new(n: usize) -> Result<Self> {
        if !(2..=12).contains(&n) {
            return Err(Error::NOutOfRange(n));
        }
        let mut subgroups: Vec<Vec<usize>> = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let mut h: Vec<usize> = (0..n).map(|k| (k * a % n) * n + k * b % n).collect();
                h.sort_unstable();
                h.dedup();
                if h.len() == n && !subgroups.contains(&h) {
                    subgroups.push(h);
                }
            }
        }
        subgroups.sort();
        let mut cosets = Vec::new();
        for (i, h) in subgroups.iter().enumerate() {
            let mut seen = vec![false; n * n];
            for g in 0..n * n {
                if seen[g] {
                    continue;
                }
                let mut c: Vec<usize> = h.iter().map(|&e| ((g / n + e / n) % n) * n + (g % n + e % n) % n).collect();
                c.sort_unstable();
                for &e in &c {
                    seen[e] = true;
                }
                cosets.push((i, c));
            }
        }
        Ok(ModularCosetSystem { n, subgroups, cosets })
    }

    pub fn s(&self) -> usize {
        self.subgroups.len()
    }
}

/// Points are cosets, blocks are group elements, incidence is membership.
pub fn modular_config(n: usize) -> Result<IncidenceStructure> {
    let sys = ModularCosetSystem::new(n)?;
    let s = IncidenceStructure::from_fn(sys.cosets.len(), n * n, |x, g| sys.cosets[x].1.binary_search(&g).is_ok())?;
    let el = |g: usize| format!("({},{})", g / n, g % n);
    Ok(s.with_point_labels(sys.cosets.iter().map(|(i, c)| format!("H{}+{}", i, el(c[0]))).collect())
        .with_block_labels((0..n * n).map(el).collect()))
}

fn subset_label(s: &[usize]) -> String {
    s.iter().map(|x| x.to_string()).collect()
}

/// Points are 2-subsets of `{1..5}`, blocks 3-subsets, incidence is containment.
pub fn desargues() -> IncidenceStructure {
    let pairs: Vec<Vec<usize>> = (1..=5).flat_map(|i| (i + 1..=5).map(move |j| vec![i, j])).collect();
    let triples: Vec<Vec<usize>> =
        (1..=5).flat_map(|i| (i + 1..=5).flat_map(move |j| (j + 1..=5).map(move |k| vec![i, j, k]))).collect();
    IncidenceStructure::from_fn(10, 10, |x, j| pairs[x].iter().all(|e| triples[j].contains(e)))
        .unwrap()
        .with_point_labels(pairs.iter().map(|p| subset_label(p)).collect())
        .with_block_labels(triples.iter().map(|t| subset_label(t)).collect())
}

/// Points with spanning data for blocks, and the extracted incidence.
#[derive(Debug, Clone)]
pub struct Realization {
    pub points: RationalPointSet,
    pub blocks: Vec<BlockSpec>,
    pub structure: IncidenceStructure,
    pub isomorphic_to_abstract: bool,
}

pub const DESARGUES_PLANE: [i64; 4] = [1, 2, 4, 8];

/// Cuts the lines `<e_i, e_j>` (with `e_5 = e_1 + ... + e_4`) by the plane `plane`.
pub fn desargues_realize_with(plane: [i64; 4]) -> Result<Realization> {
    let e = |i: usize| -> Vec<BigInt> { (0..4).map(|c| BigInt::from(i64::from(i == 5 || c + 1 == i))).collect() };
    let h = exact::to_big(&plane);
    let abs = desargues();
    let mut pts = Vec::new();
    for i in 1..=5 {
        for j in i + 1..=5 {
            let (ei, ej) = (e(i), e(j));
            let (hi, hj) = (exact::dot(&h, &ei), exact::dot(&h, &ej));
            let p: Vec<BigInt> = ei.iter().zip(&ej).map(|(a, b)| &hj * a - &hi * b).collect();
            if p.iter().all(Zero::is_zero) {
                return Err(Error::DegeneratePlane(format!("plane contains L{i}{j}")));
            }
            pts.push(p);
        }
    }
    let points = RationalPointSet::new(3, pts).map_err(|e| Error::DegeneratePlane(e.to_string()))?;
    let idx = |a: usize, b: usize| abs.point_labels().unwrap().iter().position(|l| *l == format!("{a}{b}")).unwrap();
    let mut blocks = Vec::new();
    for j in 0..10 {
        let t: Vec<usize> = abs.block_labels().unwrap()[j].chars().map(|c| c.to_digit(10).unwrap() as usize).collect();
        let rows = vec![points.points[idx(t[0], t[1])].clone(), points.points[idx(t[0], t[2])].clone()];
        if exact::rank(&rows) != 2 {
            return Err(Error::DegeneratePlane(format!("cut line l{} collapses", subset_label(&t))));
        }
        blocks.push(BlockSpec::Span(rows));
    }
    let structure = exact::extract_incidence(&points, &blocks)?;
    let isomorphic_to_abstract = canon::is_isomorphic(&structure, &abs);
    Ok(Realization { points, blocks, structure, isomorphic_to_abstract })
}

pub fn desargues_realize() -> Result<Realization> {
    desargues_realize_with(DESARGUES_PLANE)
}

/// Cube vertices, center and three points at infinity; 12 edges and 4 diagonals.
pub fn reye_realization() -> Realization {
    let mut pts: Vec<Vec<i64>> = Vec::new();
    let mut labels = Vec::new();
    for sx in [1, -1] {
        for sy in [1, -1] {
            for sz in [1, -1] {
                pts.push(vec![1, sx, sy, sz]);
                let sg = |s: i64| if s > 0 { '+' } else { '-' };
                labels.push(format!("v{}{}{}", sg(sx), sg(sy), sg(sz)));
            }
        }
    }
    pts.push(vec![1, 0, 0, 0]);
    labels.push("o".into());
    for i in 1..=3 {
        let mut p = vec![0; 4];
        p[i] = 1;
        pts.push(p);
        labels.push(format!("inf{i}"));
    }
    let big: Vec<Vec<BigInt>> = pts.iter().map(|p| exact::to_big(p)).collect();
    let points = RationalPointSet::new(3, big.clone()).unwrap();
    let mut blocks = Vec::new();
    let mut block_labels = Vec::new();
    for a in 0..8 {
        for b in a + 1..8 {
            let diff = (1..4).filter(|&c| pts[a][c] != pts[b][c]).count();
            if diff == 1 || diff == 3 {
                blocks.push(BlockSpec::Span(vec![big[a].clone(), big[b].clone()]));
                block_labels.push(format!("{}-{}", labels[a], labels[b]));
            }
        }
    }
    let structure = exact::extract_incidence(&points, &blocks)
        .unwrap()
        .with_point_labels(labels)
        .with_block_labels(block_labels);
    Realization { points, blocks, structure, isomorphic_to_abstract: true }
}

pub fn reye() -> IncidenceStructure {
    reye_realization().structure
}

/// Twelve contact points `A_i, B_i, C_i` and the sixteen collinear triples.
pub fn hesse_salmon() -> IncidenceStructure {
    // (i, j, k) stands for the triple A_i + B_j + C_k = 0.
    const TRIPLES: [[usize; 3]; 16] = [
        [1, 1, 1], [1, 2, 4], [1, 3, 2], [1, 4, 3],
        [2, 1, 3], [2, 2, 2], [2, 3, 4], [2, 4, 1],
        [3, 1, 4], [3, 2, 1], [3, 3, 3], [3, 4, 2],
        [4, 1, 2], [4, 2, 3], [4, 3, 1], [4, 4, 4],
    ];
    let blocks: Vec<Vec<usize>> = TRIPLES.iter().map(|t| vec![t[0] - 1, t[1] + 3, t[2] + 7]).collect();
    let labels = ["A", "B", "C"].iter().flat_map(|c| (1..=4).map(move |i| format!("{c}{i}"))).collect();
    IncidenceStructure::from_blocks(12, &blocks)
        .unwrap()
        .with_point_labels(labels)
        .with_block_labels(TRIPLES.iter().map(|t| format!("A{}B{}C{}", t[0], t[1], t[2])).collect())
}

/// The unique `v_{v-1}`: point `x` lies on block `j` iff `x != j`.
pub fn complete_configuration(v: usize) -> Result<IncidenceStructure> {
    if v < 2 {
        return Err(Error::InvalidV(v));
    }
    IncidenceStructure::from_fn(v, v, |x, j| x != j)
}

/// Point-hyperplane realization on the moment curve.
#[derive(Debug, Clone)]
pub struct HyperplaneRealization {
    pub points: RationalPointSet,
    pub hyperplanes: Vec<Vec<BigInt>>,
    pub structure: IncidenceStructure,
    pub matches_input: bool,
}

/// Point `i` goes to `(1, t, ..., t^r)` with `t = i + 1`, each block to the
/// hyperplane spanned by its `r` points.
pub fn generic_point_hyperplane_realization(s: &IncidenceStructure) -> Result<HyperplaneRealization> {
    let params = s.validate_tactical()?.params;
    let r = params.r;
    if r < 2 {
        return Err(Error::DegreeTooSmall(r));
    }
    let mut sorted = s.blocks();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidParams("blocks with equal point sets".into()));
    }
    let pts: Vec<Vec<BigInt>> =
        (0..s.v()).map(|i| (0..=r as u32).map(|e| BigInt::from(i as u64 + 1).pow(e)).collect()).collect();
    let points = RationalPointSet::new(r, pts)?;
    let hyperplanes = (0..s.b())
        .map(|j| {
            let rows: Vec<Vec<BigInt>> = s.block(j).into_iter().map(|x| points.points[x].clone()).collect();
            exact::hyperplane_through(&rows)
        })
        .collect::<Result<Vec<_>>>()?;
    let blocks: Vec<BlockSpec> = hyperplanes.iter().cloned().map(BlockSpec::Hyperplane).collect();
    let structure = exact::extract_incidence(&points, &blocks)?;
    let matches_input = structure == *s;
    Ok(HyperplaneRealization { points, hyperplanes, structure, matches_input })
}

const GOLDEN: [(&str, &str); 7] = [
    ("brianchon", include_str!("../golden/brianchon.json")),
    ("nine3_2", include_str!("../golden/nine3_2.json")),
    ("nine3_3", include_str!("../golden/nine3_3.json")),
    ("hesse", include_str!("../golden/hesse.json")),
    ("tetrahedron", include_str!("../golden/tetrahedron.json")),
    ("five3", include_str!("../golden/five3.json")),
    ("six3", include_str!("../golden/six3.json")),
];

pub fn golden_names() -> Vec<&'static str> {
    GOLDEN.iter().map(|g| g.0).collect()
}

/// A bundled reference structure by name.
pub fn golden(name: &str) -> Result<IncidenceStructure> {
    let text = GOLDEN.iter().find(|g| g.0 == name).ok_or_else(|| Error::InvalidParams(format!("no golden structure {name:?}")))?.1;
    io::from_json(text)
}

/// Builder arguments; unused fields are ignored by a given builder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildArgs {
    pub n: usize,
    pub g: usize,
    pub v: usize,
    pub q: u64,
    pub r: usize,
    pub s: usize,
}

impl Default for BuildArgs {
    fn default() -> Self {
        BuildArgs { n: 3, g: 2, v: 6, q: 2, r: 0, s: 1 }
    }
}

/// A catalog builder with the parameters it is expected to produce.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub flags: &'static str,
    pub expected: &'static str,
    pub summary: &'static str,
}

pub fn catalog_entries() -> Vec<CatalogEntry> {
    let e = |name, flags, expected, summary| CatalogEntry { name, flags, expected, summary };
    vec![
        e("fano", "", "7_3, lambda=1", "Fano plane"),
        e("mobius-kantor", "", "8_3", "Moebius-Kantor configuration"),
        e("ceva", "--n", "(n^2_3, 3n_n)", "Ceva configuration"),
        e("modular", "--n (2..12)", "(N s(N)_N, N^2_s(N))", "cosets of cyclic order-N subgroups of (Z/N)^2"),
        e("desargues", "[--realize]", "10_3", "Desargues configuration"),
        e("reye", "", "(12_4, 16_3)", "Reye configuration from the cube"),
        e("hesse-salmon", "", "(12_4, 16_3)", "contact points of tangents to a plane cubic"),
        e("complete", "--v", "v_(v-1)", "points against complements of points"),
        e("kummer", "--g (1..3)", "2^2g_(2^(g-1)(2^g-1))", "Kummer configuration over F_2"),
        e("cremona-richmond", "", "15_3", "duads and synthemes of a 6-set"),
        e("isotropic", "", "(15_4, 10_6)", "isotropic against anisotropic planes"),
        e("pg", "--n --r --s --q", "PG(n,r,s;q)", "subspaces of a finite projective space"),
        e("mukai", "--q", "(q^2+q+1)_(q+1)", "Mukai's symmetric model of PG(2,q)"),
        e("hadamard", "--q (Paley) or --n (Sylvester 2^n)", "(4t-1)_(2t-1)", "Hadamard design"),
        e("golden", "--name", "as stored", "bundled reference structures"),
    ]
}

/// Builds a catalog structure by name.
pub fn build(name: &str, a: &BuildArgs) -> Result<IncidenceStructure> {
    match name {
        "fano" => Ok(fano()),
        "mobius-kantor" => Ok(mobius_kantor()),
        "ceva" => ceva(a.n),
        "modular" => modular_config(a.n),
        "desargues" => Ok(desargues()),
        "reye" => Ok(reye()),
        "hesse-salmon" => Ok(hesse_salmon()),
        "complete" => complete_configuration(a.v),
        "kummer" => symplectic::kummer_configuration(a.g),
        "cremona-richmond" => Ok(symplectic::cremona_richmond()),
        "isotropic" => Ok(symplectic::isotropic_anisotropic_config()),
        "pg" => geometry::pg_configuration(a.n, a.r, a.s, a.q),
        "mukai" => geometry::mukai_incidence(a.q),
        "hadamard" => {
            let m = if a.q > 2 { design::paley(a.q)? } else { design::sylvester(a.n as u32)? };
            Ok(design::hadamard_to_design(&m)?.structure)
        }
        other => golden(other),
    }
}

/// Default-argument instances of the catalog, used by reports and tests.
pub fn standard_catalog() -> Vec<(String, IncidenceStructure)> {
    let mut out: Vec<(String, IncidenceStructure)> = vec![
        ("fano".into(), fano()),
        ("mobius-kantor".into(), mobius_kantor()),
        ("desargues".into(), desargues()),
        ("reye".into(), reye()),
        ("hesse-salmon".into(), hesse_salmon()),
        ("cremona-richmond".into(), symplectic::cremona_richmond()),
        ("isotropic".into(), symplectic::isotropic_anisotropic_config()),
        ("kummer-2".into(), symplectic::kummer_configuration(2).unwrap()),
        ("pg-2-0-1-3".into(), geometry::pg_configuration(2, 0, 1, 3).unwrap()),
        ("mukai-2".into(), geometry::mukai_incidence(2).unwrap()),
    ];
    for n in 2..=4 {
        out.push((format!("ceva-{n}"), ceva(n).unwrap()));
    }
    for n in [2, 3, 4] {
        out.push((format!("modular-{n}"), modular_config(n).unwrap()));
    }
    for v in [4, 5, 6] {
        out.push((format!("complete-{v}"), complete_configuration(v).unwrap()));
    }
    for g in golden_names() {
        out.push((g.to_string(), golden(g).unwrap()));
    }
    out
}

/// Advertised parameters of a builder for the parameter table.
pub fn ceva_params(n: usize) -> ConfigParams {
    ConfigParams { v: n * n, k: 3, b: 3 * n, r: n, lambda: None }
}

pub fn modular_params(n: usize) -> ConfigParams {
    let s = s_formula(n);
    ConfigParams { v: n * s, k: n, b: n * n, r: s, lambda: None }
}
