//! The boolean model of the symplectic space `W_g` and its quadratic forms.
//!
//! Elements of `W_g` are even subsets of the ground set `{1, …, 2g+2}` modulo
//! complementation; theta characteristics `Q_g` are subsets of parity `g+1`
//! modulo complementation. Both are stored as bitmasks (bit `i` is element
//! `i+1`) canonicalized to the representative that omits `2g+2`.

use crate::error::{Error, Result};
use crate::incidence::IncidenceStructure;
use serde::Serialize;
use std::collections::HashMap;

pub const MAX_GENUS: usize = 3;

fn full_mask(g: usize) -> u32 {
    (1u32 << (2 * g + 2)) - 1
}

fn top_bit(g: usize) -> u32 {
    1u32 << (2 * g + 1)
}

fn canonical(g: usize, mask: u32) -> u32 {
    if mask & top_bit(g) != 0 {
        mask ^ full_mask(g)
    } else {
        mask
    }
}

fn elements_of(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

fn set_label(mask: u32) -> String {
    let e: Vec<String> = elements_of(mask).iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", e.join(","))
}

fn check_genus(g: usize) -> Result<()> {
    if g == 0 || g > 4 {
        return Err(Error::GenusOutOfRange(g));
    }
    Ok(())
}

/// An element of `W_g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EvenClass {
    g: usize,
    rep: u32,
}

impl EvenClass {
    pub fn new(g: usize, mask: u32) -> Result<Self> {
        check_genus(g)?;
        if mask & !full_mask(g) != 0 || !mask.count_ones().is_multiple_of(2) {
            return Err(Error::InvalidParams(format!("{mask:#b} is not an even subset of [1,{}]", 2 * g + 2)));
        }
        Ok(EvenClass { g, rep: canonical(g, mask) })
    }

    /// Class of the subset with the given 1-based elements.
    pub fn from_elements(g: usize, elems: &[usize]) -> Result<Self> {
        let mask = elems.iter().try_fold(0u32, |m, &e| {
            if e == 0 || e > 2 * g + 2 {
                Err(Error::IndexOutOfRange { index: e, limit: 2 * g + 2 })
            } else {
                Ok(m | 1 << (e - 1))
            }
        })?;
        Self::new(g, mask)
    }

    pub fn zero(g: usize) -> Self {
        EvenClass { g, rep: 0 }
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn rep(&self) -> u32 {
        self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep == 0
    }

    pub fn elements(&self) -> Vec<usize> {
        elements_of(self.rep)
    }

    pub fn add(&self, other: &EvenClass) -> Result<EvenClass> {
        if self.g != other.g {
            return Err(Error::GenusMismatch(self.g, other.g));
        }
        Ok(EvenClass { g: self.g, rep: canonical(self.g, self.rep ^ other.rep) })
    }

    pub fn label(&self) -> String {
        set_label(self.rep)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ThetaType {
    Even,
    Odd,
}

/// An element of `Q_g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CharClass {
    g: usize,
    rep: u32,
}

impl CharClass {
    pub fn new(g: usize, mask: u32) -> Result<Self> {
        check_genus(g)?;
        if mask & !full_mask(g) != 0 || mask.count_ones() as usize % 2 != (g + 1) % 2 {
            return Err(Error::InvalidParams(format!("{mask:#b} does not have parity g+1")));
        }
        Ok(CharClass { g, rep: canonical(g, mask) })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn rep(&self) -> u32 {
        self.rep
    }

    pub fn theta_type(&self) -> ThetaType {
        if self.rep.count_ones() as usize % 4 == (self.g + 1) % 4 {
            ThetaType::Even
        } else {
            ThetaType::Odd
        }
    }

    /// `S + t`, again a theta characteristic.
    pub fn translate(&self, t: &EvenClass) -> Result<CharClass> {
        if self.g != t.g {
            return Err(Error::GenusMismatch(self.g, t.g));
        }
        Ok(CharClass { g: self.g, rep: canonical(self.g, self.rep ^ t.rep) })
    }

    pub fn label(&self) -> String {
        set_label(self.rep)
    }
}

/// All `2^{2g}` elements of `W_g`, by ascending representative.
pub fn even_classes(g: usize) -> Vec<EvenClass> {
    (0..top_bit(g)).filter(|m| m.count_ones() % 2 == 0).map(|rep| EvenClass { g, rep }).collect()
}

/// All `2^{2g}` theta characteristics, by ascending representative.
pub fn char_classes(g: usize) -> Vec<CharClass> {
    (0..top_bit(g))
        .filter(|m| m.count_ones() as usize % 2 == (g + 1) % 2)
        .map(|rep| CharClass { g, rep })
        .collect()
}

/// `⟨a, b⟩ = #(a ∩ b) mod 2`.
pub fn symplectic_form(a: &EvenClass, b: &EvenClass) -> Result<u8> {
    if a.g != b.g {
        return Err(Error::GenusMismatch(a.g, b.g));
    }
    Ok(((a.rep & b.rep).count_ones() % 2) as u8)
}

/// `q_S(T) = #T/2 + #(T ∩ S) mod 2`.
pub fn quad_eval(s: &CharClass, t: &EvenClass) -> Result<u8> {
    if s.g != t.g {
        return Err(Error::GenusMismatch(s.g, t.g));
    }
    Ok(quad_raw(s.rep, t.rep))
}

fn quad_raw(s: u32, t: u32) -> u8 {
    ((t.count_ones() / 2 + (t & s).count_ones()) % 2) as u8
}

fn incident(s: &CharClass, t: &EvenClass) -> bool {
    let want = match s.theta_type() {
        ThetaType::Even => 1,
        ThetaType::Odd => 0,
    };
    quad_raw(s.rep, t.rep) == want
}

/// The Kummer configuration `2^{2g}_{2^{g-1}(2^g-1)}` for `1 ≤ g ≤ 3`.
pub fn kummer_configuration(g: usize) -> Result<IncidenceStructure> {
    if g == 0 || g > MAX_GENUS {
        return Err(Error::GenusOutOfRange(g));
    }
    kummer_unchecked(g)
}

/// Like [`kummer_configuration`] but also accepts `g = 4`.
pub fn kummer_configuration_extended(g: usize) -> Result<IncidenceStructure> {
    check_genus(g)?;
    kummer_unchecked(g)
}

fn kummer_unchecked(g: usize) -> Result<IncidenceStructure> {
    let pts = even_classes(g);
    let blks = char_classes(g);
    let s = IncidenceStructure::from_fn(pts.len(), blks.len(), |x, j| incident(&blks[j], &pts[x]))?;
    Ok(s
        .with_point_labels(pts.iter().map(EvenClass::label).collect())
        .with_block_labels(blks.iter().map(CharClass::label).collect()))
}

/// Levi-vertex permutation (points first, then blocks) of the translation by `t`.
pub fn translation_symmetry(g: usize, t: &EvenClass) -> Result<Vec<usize>> {
    if t.g != g {
        return Err(Error::GenusMismatch(g, t.g));
    }
    let pts = even_classes(g);
    let blks = char_classes(g);
    let pi: HashMap<u32, usize> = pts.iter().enumerate().map(|(i, p)| (p.rep, i)).collect();
    let bi: HashMap<u32, usize> = blks.iter().enumerate().map(|(i, b)| (b.rep, i)).collect();
    let n = pts.len();
    let mut perm: Vec<usize> = pts.iter().map(|p| pi[&p.add(t).unwrap().rep]).collect();
    perm.extend(blks.iter().map(|s| n + bi[&s.translate(t).unwrap().rep]));
    Ok(perm)
}

/// Levi-vertex permutation of the transvection `x ↦ x + ⟨x, v⟩ v`, with blocks
/// transported so that `q_{S'} = q_S ∘ τ`.
pub fn transvection_symmetry(g: usize, v: &EvenClass) -> Result<Vec<usize>> {
    if v.g != g {
        return Err(Error::GenusMismatch(g, v.g));
    }
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let pts = even_classes(g);
    let blks = char_classes(g);
    let pi: HashMap<u32, usize> = pts.iter().enumerate().map(|(i, p)| (p.rep, i)).collect();
    let tau: Vec<usize> = pts
        .iter()
        .map(|x| {
            let img = if symplectic_form(x, v).unwrap() == 1 { x.add(v).unwrap() } else { *x };
            pi[&img.rep]
        })
        .collect();
    let table = |s: u32, map: &dyn Fn(usize) -> usize| -> Vec<u8> {
        (0..pts.len()).map(|y| quad_raw(s, pts[map(y)].rep)).collect()
    };
    let by_values: HashMap<Vec<u8>, usize> =
        blks.iter().enumerate().map(|(j, s)| (table(s.rep, &|y| y), j)).collect();
    let n = pts.len();
    let mut perm = tau.clone();
    for s in &blks {
        // τ is an involution, so q_S ∘ τ⁻¹ = q_S ∘ τ.
        let vals = table(s.rep, &|y| tau[y]);
        perm.push(n + by_values[&vals]);
    }
    Ok(perm)
}

/// The Cremona–Richmond `15_3`: duads of `{1..6}` against synthemes.
pub fn cremona_richmond() -> IncidenceStructure {
    let duads = duads();
    let synthemes = synthemes();
    let s = IncidenceStructure::from_fn(15, 15, |x, j| synthemes[j].contains(&duads[x])).unwrap();
    s.with_point_labels(duads.iter().map(|d| format!("{}{}", d.0, d.1)).collect())
        .with_block_labels(synthemes.iter().map(syntheme_label).collect())
}

fn duads() -> Vec<(usize, usize)> {
    (1..=6).flat_map(|a| (a + 1..=6).map(move |b| (a, b))).collect()
}

/// The 15 perfect matchings of `{1..6}`, lexicographically ordered.
pub fn synthemes() -> Vec<[(usize, usize); 3]> {
    let mut out = Vec::new();
    for b in 2..=6 {
        let rest: Vec<usize> = (2..=6).filter(|&x| x != b).collect();
        let c = rest[0];
        for &d in &rest[1..] {
            let rem: Vec<usize> = rest.iter().copied().filter(|&x| x != c && x != d).collect();
            out.push([(1, b), (c, d), (rem[0], rem[1])]);
        }
    }
    out
}

fn syntheme_label(s: &[(usize, usize); 3]) -> String {
    s.iter().map(|(a, b)| format!("{a}{b}")).collect::<Vec<_>>().join("|")
}

/// Duad of `{1..6}` represented by a nonzero element of `W_2`.
fn class_duad(c: &EvenClass) -> (usize, usize) {
    let mask = if c.rep.count_ones() == 2 { c.rep } else { c.rep ^ full_mask(2) };
    let e = elements_of(mask);
    (e[0], e[1])
}

/// A 2-dimensional linear subspace of `W_2`, given by its three nonzero elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Plane {
    pub elements: [u32; 3],
    pub isotropic: bool,
}

impl Plane {
    pub fn duads(&self) -> Vec<(usize, usize)> {
        let mut d: Vec<_> = self.elements.iter().map(|&r| class_duad(&EvenClass { g: 2, rep: r })).collect();
        d.sort();
        d
    }

    pub fn label(&self) -> String {
        let d = self.duads();
        let parts: Vec<String> = d.iter().map(|(a, b)| format!("{a}{b}")).collect();
        parts.join(if self.isotropic { "|" } else { "," })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PlaneCensus {
    pub total: usize,
    pub isotropic: usize,
    pub nondegenerate: usize,
    /// Planes whose form has a one-dimensional radical (always 0 for alternating forms).
    pub degenerate_radical: usize,
    /// Anisotropic planes whose representatives are literally `{ab, bc, ac}`.
    pub stated_form: usize,
    pub planes: Vec<Plane>,
}

/// Every 2-dimensional subspace of `W_2`, classified by the restricted form.
pub fn plane_census_g2() -> PlaneCensus {
    let nonzero: Vec<EvenClass> = even_classes(2).into_iter().filter(|c| !c.is_zero()).collect();
    let mut planes: Vec<Plane> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (i, a) in nonzero.iter().enumerate() {
        for b in &nonzero[i + 1..] {
            let c = a.add(b).unwrap();
            let mut el = [a.rep, b.rep, c.rep];
            el.sort_unstable();
            if seen.insert(el) {
                planes.push(Plane { elements: el, isotropic: symplectic_form(a, b).unwrap() == 0 });
            }
        }
    }
    planes.sort_by_key(|x| (!x.isotropic, x.duads()));
    let isotropic = planes.iter().filter(|p| p.isotropic).count();
    let stated_form = planes
        .iter()
        .filter(|p| !p.isotropic && p.elements.iter().all(|r| r.count_ones() == 2))
        .count();
    PlaneCensus {
        total: planes.len(),
        isotropic,
        nondegenerate: planes.len() - isotropic,
        degenerate_radical: 0,
        stated_form,
        planes,
    }
}

/// Cremona–Richmond rebuilt from the isotropic planes of `W_2`: duad `I` lies on plane `L` iff `I ∈ L`.
pub fn cremona_richmond_from_planes() -> IncidenceStructure {
    let census = plane_census_g2();
    let iso: Vec<&Plane> = census.planes.iter().filter(|p| p.isotropic).collect();
    let duads = duads();
    let s = IncidenceStructure::from_fn(15, iso.len(), |x, j| iso[j].duads().contains(&duads[x])).unwrap();
    s.with_point_labels(duads.iter().map(|d| format!("{}{}", d.0, d.1)).collect())
        .with_block_labels(iso.iter().map(|p| p.label()).collect())
}

/// Points are the 15 isotropic planes, blocks the 10 anisotropic planes
/// `{ab, bc, ac}` with `a, b, c ≤ 5`; incidence is trivial intersection.
pub fn isotropic_anisotropic_config() -> IncidenceStructure {
    let census = plane_census_g2();
    let iso: Vec<&Plane> = census.planes.iter().filter(|p| p.isotropic).collect();
    let aniso: Vec<&Plane> = census
        .planes
        .iter()
        .filter(|p| !p.isotropic && p.elements.iter().all(|r| r.count_ones() == 2))
        .collect();
    let s = IncidenceStructure::from_fn(iso.len(), aniso.len(), |x, j| {
        iso[x].elements.iter().all(|e| !aniso[j].elements.contains(e))
    })
    .unwrap();
    let tri = |p: &Plane| {
        let mut e: Vec<usize> = p.duads().iter().flat_map(|&(a, b)| [a, b]).collect();
        e.sort_unstable();
        e.dedup();
        format!("C({})", e.iter().map(|x| x.to_string()).collect::<String>())
    };
    s.with_point_labels(iso.iter().map(|p| p.label()).collect())
        .with_block_labels(aniso.iter().map(|p| tri(p)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn form_examples() {
        let a = EvenClass::from_elements(2, &[1, 2]).unwrap();
        let b = EvenClass::from_elements(2, &[2, 3]).unwrap();
        let c = EvenClass::from_elements(2, &[3, 4]).unwrap();
        assert_eq!(symplectic_form(&a, &b).unwrap(), 1);
        assert_eq!(symplectic_form(&a, &c).unwrap(), 0);
        assert!(symplectic_form(&a, &EvenClass::zero(3)).is_err());
    }

    #[test]
    fn quad_example() {
        let s = CharClass::new(2, 0b1).unwrap();
        let t = EvenClass::from_elements(2, &[1, 2]).unwrap();
        assert_eq!(quad_eval(&s, &t).unwrap(), 0);
    }

    #[test]
    fn class_counts() {
        for g in 1..=3 {
            assert_eq!(even_classes(g).len(), 1 << (2 * g));
            assert_eq!(char_classes(g).len(), 1 << (2 * g));
        }
        let even = char_classes(2).iter().filter(|c| c.theta_type() == ThetaType::Even).count();
        assert_eq!(even, 10);
    }

    #[test]
    fn cremona_richmond_point_12() {
        let s = cremona_richmond();
        let labels = s.block_labels().unwrap();
        let got: Vec<&str> = s.point_blocks(0).iter().map(|&j| labels[j].as_str()).collect();
        assert_eq!(got, vec!["12|34|56", "12|35|46", "12|36|45"]);
        assert_eq!(cremona_richmond_from_planes(), s);
    }

    #[test]
    fn census_counts() {
        let c = plane_census_g2();
        assert_eq!((c.total, c.isotropic, c.nondegenerate, c.stated_form), (35, 15, 20, 10));
    }

    #[test]
    fn isotropic_anisotropic() {
        let s = isotropic_anisotropic_config();
        let p = s.params().unwrap();
        assert_eq!((p.v, p.k, p.b, p.r), (15, 4, 10, 6));
        let pl = s.point_labels().unwrap();
        let bl = s.block_labels().unwrap();
        let x = pl.iter().position(|l| l == "12|34|56").unwrap();
        let j = bl.iter().position(|l| l == "C(123)").unwrap();
        // Both planes contain the class of {1,2}.
        assert!(!s.incident(x, j));
        let y = pl.iter().position(|l| l == "14|25|36").unwrap();
        assert!(s.incident(y, j));
        let mut in_123: Vec<&str> = s.block(j).iter().map(|&x| pl[x].as_str()).collect();
        in_123.sort();
        assert_eq!(in_123, vec!["14|25|36", "14|26|35", "15|24|36", "15|26|34", "16|24|35", "16|25|34"]);
    }
}
