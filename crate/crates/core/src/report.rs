//! The `analyze` report.

use crate::design::{self, BcrVerdict};
use crate::incidence::{ConfigParams, IncidenceStructure};
use crate::symmetry;
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};
use std::fmt::Write;

pub const SCHEMA: &str = "confgeo.analyze/1";

/// Exact integer: a JSON number up to 2^53, a decimal string beyond.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exact(pub BigUint);

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_u64() {
            Some(x) if x <= 1 << 53 => s.serialize_u64(x),
            _ => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl std::fmt::Display for Exact {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DesignSection {
    pub is_design: bool,
    pub lambda: Option<usize>,
    pub symmetric_dual_lambda_holds: Option<bool>,
    pub bcr: Option<BcrVerdict>,
    /// Parameters `(4t-1, 2t-1, t-1)`.
    pub hadamard_design: bool,
    /// The `±1` incidence matrix is a Hadamard matrix.
    pub sign_matrix_hadamard: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SymmetrySection {
    pub proper_order: Exact,
    pub full_order: Exact,
    pub has_switch: bool,
    /// `null` when the search budget ran out.
    pub has_polarity: Option<bool>,
    pub point_orbits: usize,
    pub block_orbits: usize,
    pub regular: bool,
    /// `null` when the group is not vertex-transitive or the Levi graph is degenerate.
    pub s_regularity: Option<u32>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub v: usize,
    pub b: usize,
    pub params: Option<ConfigParams>,
    pub tactical_error: Option<String>,
    pub distinct: bool,
    pub lineal: bool,
    pub connected: bool,
    pub s_classes: Vec<usize>,
    pub girth: Option<usize>,
    pub design: Option<DesignSection>,
    pub symmetry: Option<SymmetrySection>,
}

/// Options controlling the expensive parts of the analysis.
#[derive(Debug, Clone, Copy)]
pub struct AnalyzeOptions {
    pub symmetry: bool,
    pub polarity_budget: u64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions { symmetry: true, polarity_budget: symmetry::POLARITY_BUDGET }
    }
}

pub fn analyze(s: &IncidenceStructure, opts: AnalyzeOptions) -> Report {
    let tactical = s.validate_tactical();
    let (params, tactical_error) = match &tactical {
        Ok(t) => (Some(t.params), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let design = params.map(|p| {
        let d = design::design_lambda(s).expect("tactical");
        let hadamard_design = d.lambda.is_some_and(|l| p.is_symmetric() && p.v + 1 == 4 * (l + 1) && p.k + 1 == 2 * (l + 1));
        let sign_matrix_hadamard = design::design_to_sign_matrix(s).is_ok_and(|m| design::hadamard_check(&m));
        DesignSection {
            is_design: d.is_design,
            lambda: d.lambda,
            symmetric_dual_lambda_holds: d.symmetric_dual_lambda_holds,
            bcr: d.bcr_verdict,
            hadamard_design,
            sign_matrix_hadamard,
        }
    });
    let params = params.map(|mut p| {
        p.lambda = design.as_ref().and_then(|d| d.lambda);
        p
    });
    let symmetry = opts.symmetry.then(|| {
        let full = symmetry::automorphism_group_with_budget(s, true, opts.polarity_budget);
        let proper = &full.proper;
        let v = s.v() as u32;
        let orbits = proper.orbits();
        let point_orbits = orbits.iter().filter(|o| o[0] < v).count();
        let block_orbits = orbits.len() - point_orbits;
        let levi = symmetry::levi_graph(s);
        let degenerate = levi.n() == 0 || (0..levi.n()).any(|u| levi.degree(u) < 2) || !s.is_connected();
        SymmetrySection {
            proper_order: Exact(proper.order()),
            full_order: Exact(full.order()),
            has_switch: full.has_switch,
            has_polarity: full.has_polarity,
            point_orbits,
            block_orbits,
            regular: point_orbits <= 1 && block_orbits <= 1,
            s_regularity: if degenerate { None } else { symmetry::s_regularity_of(&levi, &full.group) },
        }
    });
    Report {
        schema: SCHEMA,
        v: s.v(),
        b: s.b(),
        params,
        tactical_error,
        distinct: s.is_distinct(),
        lineal: s.is_lineal(),
        connected: s.is_connected(),
        s_classes: s.s_equivalence_classes().sizes(),
        girth: symmetry::levi_graph(s).girth(),
        design,
        symmetry,
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    pub fn to_text(&self) -> String {
        let mut t = String::new();
        let yn = |b: bool| if b { "yes" } else { "no" };
        match &self.params {
            Some(p) => writeln!(t, "parameters      {p}  (v={}, k={}, b={}, r={})", p.v, p.k, p.b, p.r).unwrap(),
            None => writeln!(t, "parameters      not tactical: {}", self.tactical_error.as_deref().unwrap_or("")).unwrap(),
        }
        writeln!(t, "distinct        {}", yn(self.distinct)).unwrap();
        writeln!(t, "lineal          {}", yn(self.lineal)).unwrap();
        writeln!(t, "connected       {}", yn(self.connected)).unwrap();
        writeln!(t, "S-classes       {:?}", self.s_classes).unwrap();
        writeln!(t, "Levi girth      {}", self.girth.map_or("none".into(), |g| g.to_string())).unwrap();
        if let Some(d) = &self.design {
            let lam = d.lambda.map_or("-".into(), |l| l.to_string());
            writeln!(t, "design          {} (lambda {lam})", yn(d.is_design)).unwrap();
            if let Some(b) = &d.bcr {
                let v = match b {
                    BcrVerdict::Pass => "pass".to_string(),
                    BcrVerdict::Fail(r) => format!("fail ({r})"),
                };
                writeln!(t, "BCR             {v}").unwrap();
            }
            writeln!(t, "Hadamard        design {}, sign matrix {}", yn(d.hadamard_design), yn(d.sign_matrix_hadamard)).unwrap();
        }
        if let Some(s) = &self.symmetry {
            writeln!(t, "proper order    {}", s.proper_order).unwrap();
            writeln!(t, "full order      {}", s.full_order).unwrap();
            writeln!(t, "switch          {}", yn(s.has_switch)).unwrap();
            writeln!(t, "polarity        {}", s.has_polarity.map_or("undetermined", yn)).unwrap();
            writeln!(t, "orbits          {} on points, {} on blocks", s.point_orbits, s.block_orbits).unwrap();
            writeln!(t, "regular         {}", yn(s.regular)).unwrap();
            writeln!(t, "s-regularity    {}", s.s_regularity.map_or("undefined".into(), |x| x.to_string())).unwrap();
        }
        t
    }
}
