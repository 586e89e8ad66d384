//! Acceptance suite: one PASS/FAIL line per criterion, with pinned runtime limits.
//!
//! Runs without the libtest harness so the table is always printed:
//! `cargo test -p confgeo --test acceptance`.

mod common;

use common::*;
use confgeo::catalog;
use confgeo::design::{self, BcrVerdict};
use confgeo::enumerate::{self, EnumOptions};
use confgeo::exact::{self, BlockSpec};
use confgeo::field::FieldTable;
use confgeo::geometry;
use confgeo::symmetry;
use confgeo::symplectic::{self, CharClass, EvenClass, ThetaType};
use confgeo::{canon, io, IncidenceStructure};
use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use std::time::{Duration, Instant};

/// Node budget for the v = 12 census run (the full search needs about 4.2M nodes).
const CENSUS_12_BUDGET: u64 = 20_000_000;
/// Historical count for v = 12, reported but not enforced.
const CENSUS_12_HISTORICAL: usize = 228;
const RELABELINGS: usize = 10;
const SEED: u64 = 0x5eed_c0f1;

#[derive(Default)]
struct Outcome {
    checks: Vec<(String, bool)>,
    notes: Vec<String>,
}

impl Outcome {
    fn check(&mut self, what: impl Into<String>, ok: bool) {
        self.checks.push((what.into(), ok));
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, got: T, want: T) {
        let ok = got == want;
        self.checks.push((if ok { what.to_string() } else { format!("{what}: got {got:?}, want {want:?}") }, ok));
    }

    fn note(&mut self, n: impl Into<String>) {
        self.notes.push(n.into());
    }
}

struct Criterion {
    id: &'static str,
    title: &'static str,
    limit: Duration,
    run: fn(&mut Outcome),
    /// Expected to fail; the reason is printed and recorded in the decisions ledger.
    known_red: Option<&'static str>,
}

fn params(s: &IncidenceStructure) -> (usize, usize, usize, usize) {
    let p = s.params().expect("tactical");
    (p.v, p.k, p.b, p.r)
}

fn c1_parameters(o: &mut Outcome) {
    o.eq("fano", params(&catalog::fano()), (7, 3, 7, 3));
    for n in 2..=6 {
        o.eq(&format!("ceva({n})"), params(&catalog::ceva(n).unwrap()), (n * n, 3, 3 * n, n));
    }
    for n in 2..=12 {
        let s_brute = cyclic_subgroups_brute(n);
        o.eq(&format!("s({n}) formula vs brute force"), catalog::s_formula(n), s_brute);
        o.eq(&format!("modular({n}) coset system"), catalog::ModularCosetSystem::new(n).unwrap().s(), s_brute);
        o.eq(&format!("modular({n})"), params(&catalog::modular_config(n).unwrap()), (n * s_brute, n, n * n, s_brute));
    }
    o.eq("desargues", params(&catalog::desargues()), (10, 3, 10, 3));
    o.eq("reye", params(&catalog::reye()), (12, 4, 16, 3));
    o.eq("hesse-salmon", params(&catalog::hesse_salmon()), (12, 4, 16, 3));
    o.eq("cremona-richmond", params(&symplectic::cremona_richmond()), (15, 3, 15, 3));
    o.eq("isotropic/anisotropic", params(&symplectic::isotropic_anisotropic_config()), (15, 4, 10, 6));
    for v in 3..=9 {
        o.eq(&format!("complete({v})"), params(&catalog::complete_configuration(v).unwrap()), (v, v - 1, v, v - 1));
    }
    for g in 2..=3u32 {
        let k = (1usize << (g - 1)) * ((1 << g) - 1);
        o.eq(&format!("kummer({g})"), params(&symplectic::kummer_configuration(g as usize).unwrap()), (1 << (2 * g), k, 1 << (2 * g), k));
    }
}

fn c2_lambda(o: &mut Outcome) {
    let hesse = catalog::golden("hesse").unwrap();
    let cases = [
        ("fano", catalog::fano(), 1),
        ("hesse", hesse, 1),
        ("kummer(2)", symplectic::kummer_configuration(2).unwrap(), 2),
        ("kummer(3)", symplectic::kummer_configuration(3).unwrap(), 12),
    ];
    for (name, s, lam) in cases {
        let d = design::design_lambda(&s).unwrap();
        o.eq(&format!("{name} lambda"), d.lambda, Some(lam));
        o.eq(&format!("{name} lambda by pair count"), brute_lambda(&s), Some(lam));
        let (v, k, b, r) = params(&s);
        o.check(format!("{name} vk = br"), v * k == b * r);
        o.check(format!("{name} k(r-1) = λ(v-1)"), k * (r - 1) == lam * (v - 1));
        o.check(format!("{name} design equations"), design::check_design_equations(v as u64, k as u64, b as u64, r as u64, lam as u64));
    }
    let g = 3;
    o.eq("kummer(3) λ = 2^{g-1}(2^{g-1}-1)", (1 << (g - 1)) * ((1 << (g - 1)) - 1), 12);
}

fn c3_bcr(o: &mut Outcome) {
    o.eq("(7,3,1)", design::bruck_chowla_ryser(7, 3, 1).unwrap().passed(), true);
    o.eq("(22,7,2)", design::bruck_chowla_ryser(22, 7, 2).unwrap().passed(), false);
    o.eq("(43,7,1)", design::bruck_chowla_ryser(43, 7, 1).unwrap().passed(), false);
    if let BcrVerdict::Fail(r) = design::bruck_chowla_ryser(43, 7, 1).unwrap() {
        o.note(format!("(43,7,1): {r}"));
    }
    // The brute force is keyed on the sign/permutation class, then compared on every triple.
    let mut memo = std::collections::HashMap::new();
    let mut mismatches = Vec::new();
    let mut total = 0;
    for a in -50i64..=50 {
        for b in -50i64..=50 {
            for c in -50i64..=50 {
                let mut k1 = [a, b, c];
                let mut k2 = [-a, -b, -c];
                k1.sort_unstable();
                k2.sort_unstable();
                let key = k1.min(k2);
                let want = *memo.entry(key).or_insert_with(|| legendre_brute(key[0], key[1], key[2]));
                total += 1;
                if design::legendre_solvable(a, b, c) != want {
                    mismatches.push((a, b, c));
                }
            }
        }
    }
    o.check(format!("legendre_solvable vs bounded search on {total} triples ({} mismatches)", mismatches.len()), mismatches.is_empty());
    if let Some(m) = mismatches.first() {
        o.note(format!("first mismatch {m:?}"));
    }
}

fn c4_gaussian(o: &mut Outcome) {
    for q in [2u64, 3, 4, 5] {
        let f = FieldTable::new(q).unwrap();
        for n in 0..=4usize {
            for d in 0..=n {
                let got = geometry::enumerate_subspaces(n, d, &f).unwrap().len() as u128;
                let formula = geometry::gaussian_binomial(d as i64, n as i64, q).to_u128().unwrap();
                let product = gaussian_product(d as u32, n as u32, q as u128);
                o.check(format!("m({d},{n};{q}) = {product}"), got == formula && formula == product);
            }
        }
    }
}

fn c5_isomorphisms(o: &mut Outcome) {
    let brianchon = catalog::golden("brianchon").unwrap();
    o.check("ceva(3) ≅ Brianchon-Pascal", canon::is_isomorphic(&catalog::ceva(3).unwrap(), &brianchon));
    o.check("hesse_salmon ≅ reye", canon::is_isomorphic(&catalog::hesse_salmon(), &catalog::reye()));
    let hesse = catalog::golden("hesse").unwrap();
    o.check("modular(3)^dual ≅ Hesse", canon::is_isomorphic(&catalog::modular_config(3).unwrap().dual(), &hesse));
    for (n, q) in [(2, 2), (2, 3), (3, 2)] {
        for r in 0..n {
            for s in r + 1..n {
                o.check(format!("PG({n},{r},{s};{q}) ≅ dual of PG({n},{},{};{q})", n - s - 1, n - r - 1), geometry::check_pg_duality(n, r, s, q).unwrap());
            }
        }
    }
    o.check(
        "mukai(2) ≅ PG(2,0,1;4)",
        canon::is_isomorphic(&geometry::mukai_incidence(2).unwrap(), &geometry::pg_configuration(2, 0, 1, 4).unwrap()),
    );
    let had = design::hadamard_to_design(&design::sylvester(3).unwrap()).unwrap().structure;
    o.check("hadamard(sylvester(3)) ≅ fano", canon::is_isomorphic(&had, &catalog::fano()));
    o.check("nine3 classes are distinct", !canon::is_isomorphic(&catalog::golden("nine3_2").unwrap(), &catalog::golden("nine3_3").unwrap()));
}

fn order(s: &IncidenceStructure, full: bool) -> BigUint {
    symmetry::automorphism_group(s, full).order()
}

fn c6a_symmetry(o: &mut Outcome) {
    let fano = catalog::fano();
    let g = symmetry::automorphism_group(&fano, true);
    o.eq("fano proper", g.proper.order(), BigUint::from(168u32));
    o.eq("fano full", g.order(), BigUint::from(336u32));
    o.eq("fano polarity", g.has_polarity, Some(true));
    let brute = brute_levi_group(&fano, true);
    o.eq("fano full order by brute force", brute.len(), 336);
    o.eq("fano s by brute force", brute_s_regularity(&levi_adjacency(&fano), &brute, 7), Some(4));
    // Full order 2^s * 3v where the structure is s-arc-transitive with s >= 1.
    for (name, s) in [("fano", fano.clone()), ("4_3", catalog::golden("tetrahedron").unwrap()), ("desargues", catalog::desargues()), ("mobius-kantor", catalog::mobius_kantor()), ("pappus", catalog::ceva(3).unwrap()), ("cremona-richmond", symplectic::cremona_richmond())] {
        let sr = symmetry::s_regularity(&s).unwrap().unwrap();
        let v = s.v() as u64;
        o.eq(&format!("{name}: full = 2^s·3v with s={sr}"), order(&s, true), BigUint::from((1u64 << sr) * 3 * v));
    }
    for v in 3..=7u64 {
        let s = catalog::complete_configuration(v as usize).unwrap();
        o.eq(&format!("complete({v}) proper = v!"), order(&s, false), BigUint::from(factorial(v)));
    }
    for v in 3..=6u64 {
        let s = catalog::complete_configuration(v as usize).unwrap();
        o.eq(&format!("complete({v}) proper by brute force"), brute_levi_group(&s, false).len() as u64, factorial(v));
    }
    for n in [2usize, 4, 5] {
        let ord = order(&catalog::ceva(n).unwrap(), false);
        o.check(format!("ceva({n}) proper {ord} ≥ 6n² = {}", 6 * n * n), ord >= BigUint::from(6 * n * n));
    }
    o.eq("ceva(3) full", order(&catalog::ceva(3).unwrap(), true), BigUint::from(216u32));
    let k2 = order(&symplectic::kummer_configuration(2).unwrap(), false);
    o.check(format!("kummer(2) proper {k2} divisible by 11520"), (&k2 % BigUint::from(11520u32)).is_zero());
    o.note(format!("reye proper order {}", order(&catalog::reye(), false)));
}

/// s-values stated for the small symmetric configurations 4_3, 5_3, 6_3.
fn c6b_stated_s_values(o: &mut Outcome) {
    for (name, stated) in [("tetrahedron", 1usize), ("five3", 2), ("six3", 2)] {
        let s = catalog::golden(name).unwrap();
        let full = brute_levi_group(&s, true);
        let brute = brute_s_regularity(&levi_adjacency(&s), &full, 7);
        let lib = symmetry::s_regularity(&s).unwrap().map(|x| x as usize);
        o.eq(&format!("{name}: library s agrees with brute force"), lib, brute);
        let want = (1u64 << stated) * 3 * s.v() as u64;
        o.eq(&format!("{name}: s = {stated} and full order 2^s·3v = {want}"), (brute, full.len() as u64), (Some(stated), want));
    }
    o.note("computed: 4_3 has s = 2 (full 48), 5_3 has s = 0 (full 20), 6_3 has s = 0 (full 48)");
    o.note("5_3 and 6_3 Levi graphs are vertex- but not edge-transitive; no s >= 1 is possible");
}

fn c7_kummer(o: &mut Outcome) {
    for g in 1..=3usize {
        let full = (1u32 << (2 * g + 2)) - 1;
        let raw = |s: u32, t: u32| ((t.count_ones() / 2 + (t & s).count_ones()) % 2) as u8;
        let mut rep_ok = true;
        let mut polar_ok = true;
        let mut zero_ok = true;
        let (mut even, mut odd) = (0, 0);
        let points = symplectic::even_classes(g);
        for s in symplectic::char_classes(g) {
            let mut zeros = 0;
            for t in &points {
                let q = symplectic::quad_eval(&s, t).unwrap();
                // Every representative pair of (S, T) gives the same value.
                for sm in [s.rep(), s.rep() ^ full] {
                    for tm in [t.rep(), t.rep() ^ full] {
                        rep_ok &= raw(sm, tm) == q;
                    }
                }
                zeros += usize::from(q == 0);
                for u in &points {
                    let lhs = symplectic::quad_eval(&s, &t.add(u).unwrap()).unwrap();
                    let rhs = (q + symplectic::quad_eval(&s, u).unwrap() + symplectic::symplectic_form(t, u).unwrap()) % 2;
                    polar_ok &= lhs == rhs;
                }
            }
            let (want, is_even) = match s.theta_type() {
                ThetaType::Even => ((1 << (2 * g - 1)) + (1 << (g - 1)), true),
                ThetaType::Odd => ((1 << (2 * g - 1)) - (1 << (g - 1)), false),
            };
            zero_ok &= zeros == want;
            if is_even {
                even += 1;
            } else {
                odd += 1;
            }
            let _ = CharClass::new(g, s.rep() ^ full).map(|c| rep_ok &= c == s);
        }
        o.check(format!("g={g}: quad_eval independent of representatives"), rep_ok);
        o.check(format!("g={g}: polarization identity"), polar_ok);
        o.check(format!("g={g}: zero count matches theta type"), zero_ok);
        o.eq(&format!("g={g}: even/odd counts"), (even, odd), ((1 << (g - 1)) * ((1 << g) + 1), (1 << (g - 1)) * ((1 << g) - 1)));
    }
    let s = symplectic::kummer_configuration(2).unwrap();
    let all: Vec<EvenClass> = symplectic::even_classes(2);
    let translations_ok = all.iter().all(|t| symmetry::preserves_incidence(&s, &symplectic::translation_symmetry(2, t).unwrap()));
    o.check("g=2: all 16 translations preserve incidence", translations_ok);
    let transvections: Vec<Vec<usize>> = all.iter().filter(|v| !v.is_zero()).map(|v| symplectic::transvection_symmetry(2, v).unwrap()).collect();
    o.check("g=2: all 15 transvections preserve incidence", transvections.iter().all(|p| symmetry::preserves_incidence(&s, p)));
    let gens: Vec<Vec<u32>> = transvections.iter().map(|p| p.iter().map(|&x| x as u32).collect()).collect();
    let sp = confgeo::group::PermGroup::new(32, gens);
    o.eq("g=2: transvections generate Sp(4,2) of order 720", sp.order(), BigUint::from(720u32));
}

fn c8_census(o: &mut Outcome) {
    for (v, want) in [(7, 1), (8, 1), (9, 3), (10, 10), (11, 31)] {
        o.eq(&format!("lineal v={v}"), enumerate::enumerate_v3(v, true).unwrap().count(), want);
    }
    for v in 4..=6 {
        o.eq(&format!("all v={v} vs brute force"), enumerate::enumerate_v3(v, false).unwrap().count(), brute_v3_classes(v, false));
    }
    o.eq("lineal v=7 vs brute force", brute_v3_classes(7, true), 1);
    let opts = EnumOptions { lineal_only: true, budget: Some(CENSUS_12_BUDGET), reverse_order: false };
    match enumerate::enumerate_v3_with(12, opts) {
        Ok(e) => o.note(format!(
            "lineal v=12: {} classes ({} nodes); historical figure {CENSUS_12_HISTORICAL}, deviation {:+}",
            e.count(),
            e.nodes,
            e.count() as i64 - CENSUS_12_HISTORICAL as i64
        )),
        Err(e) => o.note(format!("lineal v=12 skipped: {e}")),
    }
}

/// Reye's configuration built combinatorially from the cube.
fn reye_oracle() -> IncidenceStructure {
    // Points 0..8 cube vertices (bits = coordinates), 8 center, 9..12 directions.
    let mut blocks = Vec::new();
    for a in 0..8usize {
        for b in a + 1..8 {
            match (a ^ b).count_ones() {
                1 => blocks.push(vec![a, b, 9 + (a ^ b).trailing_zeros() as usize]),
                3 => blocks.push(vec![a, b, 8]),
                _ => {}
            }
        }
    }
    IncidenceStructure::from_blocks(12, &blocks).unwrap()
}

fn big(x: &BigInt) -> i128 {
    x.to_i128().expect("coordinate fits i128")
}

/// Point `p` on the span of `rows` (one or two points in P^3): all maximal minors vanish.
fn on_span(rows: &[Vec<BigInt>], p: &[BigInt]) -> bool {
    let m: Vec<Vec<i128>> = rows.iter().chain(std::iter::once(&p.to_vec())).map(|r| r.iter().map(big).collect()).collect();
    let k = m.len();
    let cols = m[0].len();
    let combos: Vec<Vec<usize>> = match k {
        2 => (0..cols).flat_map(|a| (a + 1..cols).map(move |b| vec![a, b])).collect(),
        3 => (0..cols).flat_map(|a| (a + 1..cols).flat_map(move |b| (b + 1..cols).map(move |c| vec![a, b, c]))).collect(),
        _ => unreachable!(),
    };
    combos.iter().all(|c| {
        let e = |i: usize, j: usize| m[i][c[j]];
        if k == 2 {
            e(0, 0) * e(1, 1) - e(0, 1) * e(1, 0) == 0
        } else {
            e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
                + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0))
                == 0
        }
    })
}

fn reextract(points: &[Vec<BigInt>], blocks: &[BlockSpec]) -> IncidenceStructure {
    IncidenceStructure::from_fn(points.len(), blocks.len(), |x, j| match &blocks[j] {
        BlockSpec::Span(rows) => on_span(rows, &points[x]),
        BlockSpec::Hyperplane(h) => exact::dot(h, &points[x]).is_zero(),
    })
    .unwrap()
}

fn c9_realizations(o: &mut Outcome) {
    let d = catalog::desargues_realize().unwrap();
    let again = reextract(&d.points.points, &d.blocks);
    o.check("desargues re-extracts to the abstract structure", d.isomorphic_to_abstract && canon::is_isomorphic(&again, &catalog::desargues()));
    let r = catalog::reye_realization();
    let again = reextract(&r.points.points, &r.blocks);
    o.check("reye re-extracts to the cube oracle", canon::is_isomorphic(&again, &reye_oracle()) && again == r.structure);
    let c = catalog::ceva_realize(3, 7).unwrap();
    let f = FieldTable::new(7).unwrap();
    let ceva_again = IncidenceStructure::from_fn(c.points.len(), c.lines.len(), |x, j| {
        c.points[x].iter().zip(&c.lines[j]).fold(0u16, |acc, (&a, &b)| f.add(acc, f.mul(a, b))) == 0
    })
    .unwrap();
    o.check("ceva(3) over GF(7) re-extracts to ceva(3)", c.isomorphic_to_abstract && canon::is_isomorphic(&ceva_again, &catalog::ceva(3).unwrap()));
    o.note(format!("ceva(3) over GF(7): αβγ over concurrent triples = {:?}", c.constant));
    let cases = [
        ("fano", catalog::fano()),
        ("cremona-richmond", symplectic::cremona_richmond()),
        ("complete(5)", catalog::complete_configuration(5).unwrap()),
        ("desargues", catalog::desargues()),
    ];
    for (name, s) in cases {
        let h = catalog::generic_point_hyperplane_realization(&s).unwrap();
        let blocks: Vec<BlockSpec> = h.hyperplanes.iter().cloned().map(BlockSpec::Hyperplane).collect();
        let again = reextract(&h.points.points, &blocks);
        o.check(format!("{name}: moment-curve realization re-extracts exactly"), h.matches_input && again == s);
    }
}

fn c10_properties(o: &mut Outcome) {
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut entries = catalog::standard_catalog();
    entries.push(("kummer-3".into(), symplectic::kummer_configuration(3).unwrap()));
    for (name, s) in &entries {
        let cert = canon::canonical_form(s);
        let g = symmetry::automorphism_group(s, true);
        let classes = s.s_equivalence_classes().sizes();
        let lam = s.params().ok().and_then(|_| design::design_lambda(s).ok()).and_then(|d| d.lambda);
        let mut ok = true;
        for _ in 0..RELABELINGS {
            let mut pp: Vec<usize> = (0..s.v()).collect();
            let mut bp: Vec<usize> = (0..s.b()).collect();
            pp.shuffle(&mut rng);
            bp.shuffle(&mut rng);
            let t = s.relabel(&pp, &bp);
            let h = symmetry::automorphism_group(&t, true);
            ok &= canon::canonical_form(&t) == cert
                && h.proper.order() == g.proper.order()
                && h.order() == g.order()
                && t.s_equivalence_classes().sizes() == classes
                && t.params().ok().and_then(|_| design::design_lambda(&t).ok()).and_then(|d| d.lambda) == lam;
        }
        o.check(format!("{name}: invariants under {RELABELINGS} relabelings"), ok);
        o.check(format!("{name}: dual involution"), s.dual().dual() == *s);
        if let Ok(c) = s.complement() {
            o.check(format!("{name}: complement involution"), c.complement().unwrap() == *s);
        }
        let json = io::to_json(s);
        let back = io::from_json(&json).unwrap();
        o.check(format!("{name}: JSON round trip byte-stable"), io::to_json(&back) == json && canon::canonical_form(&back) == cert);
    }
}

fn criteria() -> Vec<Criterion> {
    let c = |id, title, secs, run, known_red| Criterion { id, title, limit: Duration::from_secs(secs), run, known_red };
    vec![
        c("1", "parameter table", 60, c1_parameters as fn(&mut Outcome), None),
        c("2", "design identities", 60, c2_lambda, None),
        c("3", "Bruck-Chowla-Ryser and Legendre", 30, c3_bcr, None),
        c("4", "Gaussian binomials vs enumeration", 60, c4_gaussian, None),
        c("5", "isomorphism claims", 60, c5_isomorphisms, None),
        c("6a", "symmetry orders", 600, c6a_symmetry, None),
        c(
            "6b",
            "stated s-values of 4_3, 5_3, 6_3",
            600,
            c6b_stated_s_values,
            Some("stated values contradict exhaustive arc counts; see decisions ledger"),
        ),
        c("7", "Kummer structural suite", 60, c7_kummer, None),
        c("8", "census", 600, c8_census, None),
        c("9", "realization soundness", 60, c9_realizations, None),
        c("10", "property and metamorphic suite", 120, c10_properties, None),
    ]
}

fn main() {
    let mut unexpected = Vec::new();
    println!();
    for c in criteria() {
        let mut o = Outcome::default();
        let t = Instant::now();
        (c.run)(&mut o);
        let dt = t.elapsed();
        let failed: Vec<&String> = o.checks.iter().filter(|(_, ok)| !ok).map(|(w, _)| w).collect();
        let in_time = dt <= c.limit;
        let pass = failed.is_empty() && in_time && !o.checks.is_empty();
        println!(
            "{} {:<4} {:<36} {:>4} checks  {:>7.2} s (limit {} s)",
            if pass { "PASS" } else { "FAIL" },
            c.id,
            c.title,
            o.checks.len(),
            dt.as_secs_f64(),
            c.limit.as_secs()
        );
        for f in &failed {
            println!("       - {f}");
        }
        for n in &o.notes {
            println!("       note: {n}");
        }
        match (pass, c.known_red) {
            (false, Some(why)) => println!("       known red: {why}"),
            (true, Some(_)) => unexpected.push(format!("{} now passes; update the ledger", c.id)),
            (false, None) => unexpected.push(format!("{} failed", c.id)),
            (true, None) => {}
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected results: {unexpected:?}");
        std::process::exit(1);
    }
}
