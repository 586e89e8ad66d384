use clap::{Args, Parser, Subcommand, ValueEnum};
use confgeo::catalog::{self, BuildArgs};
use confgeo::design::{self, BcrVerdict};
use confgeo::enumerate::{self, EnumOptions};
use confgeo::exact::{BlockSpec, RationalPointSet};
use confgeo::report::{self, AnalyzeOptions};
use confgeo::{canon, io, Error, IncidenceStructure, Result};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use std::io::{Read, Write};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "confgeo", version, about = "Finite incidence configurations: build, analyze, compare, enumerate, realize")]
struct Cli {
    /// Worker threads for search operations (results do not depend on it).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Accepted for reproducible scheduling; never changes results.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct BuildFlags {
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    g: usize,
    #[arg(long, default_value_t = 6)]
    v: usize,
    #[arg(long, default_value_t = 2)]
    q: u64,
    #[arg(long, default_value_t = 0)]
    r: usize,
    #[arg(long, default_value_t = 1)]
    s: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a named configuration and write it as JSON.
    Build {
        name: String,
        #[command(flatten)]
        flags: BuildFlags,
        /// Emit an exact coordinate realization (desargues, reye, ceva with --q).
        #[arg(long)]
        realize: bool,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Report parameters, design data, S-classes and symmetry groups.
    Analyze {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long, value_enum, default_value = "json")]
        format: ReportFormat,
        /// Skip the symmetry section.
        #[arg(long)]
        no_symmetry: bool,
        #[arg(long, default_value_t = confgeo::symmetry::POLARITY_BUDGET)]
        polarity_budget: u64,
    },
    /// Exit 0 iff the two structures are isomorphic.
    Iso { a: String, b: String },
    /// Enumerate symmetric v_3 configurations up to isomorphism.
    Enumerate {
        #[arg(long)]
        v: usize,
        #[arg(long)]
        lineal: bool,
        /// Maximum number of search nodes.
        #[arg(long)]
        budget: Option<u64>,
        /// Include one block list per class.
        #[arg(long)]
        list: bool,
    },
    /// Lineal v_3 counts for 7 <= v <= max-v.
    Census {
        #[arg(long, default_value_t = 11)]
        max_v: usize,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Point-hyperplane realization on the moment curve.
    Realize {
        #[arg(long, default_value = "-")]
        input: String,
    },
    /// Convert between interchange formats.
    Export {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// List the available builders and their parameters.
    Catalog,
    /// Check the design equations and the Bruck-Chowla-Ryser condition.
    Designcheck {
        #[arg(long)]
        v: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        lambda: u64,
        /// Number of blocks; defaults to v (symmetric case).
        #[arg(long)]
        b: Option<u64>,
        /// Block size; defaults to k (symmetric case).
        #[arg(long)]
        r: Option<u64>,
    },
    /// Construct a Hadamard matrix (`sylvester:K` or `paley:Q`).
    Hadamard {
        #[arg(long)]
        construct: String,
        /// Output the derived design as JSON instead of the matrix as CSV.
        #[arg(long)]
        design: bool,
    },
}

fn read_input(path: &str) -> Result<String> {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin().read_to_string(&mut text).map_err(|e| Error::Parse(e.to_string()))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    }
    Ok(text)
}

fn load(path: &str) -> Result<IncidenceStructure> {
    let text = read_input(path)?;
    if text.trim_start().starts_with('{') {
        io::from_json(&text)
    } else {
        io::from_csv(&text)
    }
}

fn int_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) if v.abs() <= 1 << 53 => json!(v),
        _ => json!(x.to_string()),
    }
}

fn vec_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_json).collect())
}

fn realization_json(points: &RationalPointSet, blocks: &[BlockSpec], s: &IncidenceStructure, iso: bool) -> Value {
    let blocks: Vec<Value> = blocks
        .iter()
        .map(|b| match b {
            BlockSpec::Span(rows) => json!({ "span": rows.iter().map(|r| vec_json(r)).collect::<Vec<_>>() }),
            BlockSpec::Hyperplane(c) => json!({ "hyperplane": vec_json(c) }),
        })
        .collect();
    json!({
        "ambient_dimension": points.n,
        "points": points.points.iter().map(|p| vec_json(p)).collect::<Vec<_>>(),
        "blocks": blocks,
        "structure": serde_json::from_str::<Value>(&io::to_json(s)).unwrap(),
        "isomorphic_to_abstract": iso,
    })
}

fn emit(text: &str, output: Option<&str>) -> Result<()> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Parse(format!("{p}: {e}"))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| Error::Parse(e.to_string()))
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).unwrap();
    s.push('\n');
    s
}

fn build_args(f: &BuildFlags) -> BuildArgs {
    BuildArgs { n: f.n, g: f.g, v: f.v, q: f.q, r: f.r, s: f.s }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Build { name, flags, realize, output } => {
            let text = if realize {
                let v = match name.as_str() {
                    "desargues" => {
                        let r = catalog::desargues_realize()?;
                        realization_json(&r.points, &r.blocks, &r.structure, r.isomorphic_to_abstract)
                    }
                    "reye" => {
                        let r = catalog::reye_realization();
                        realization_json(&r.points, &r.blocks, &r.structure, r.isomorphic_to_abstract)
                    }
                    "ceva" => {
                        let r = catalog::ceva_realize(flags.n, flags.q)?;
                        json!({
                            "field": r.q,
                            "roots_of_unity": r.roots,
                            "lines": r.lines,
                            "points": r.points,
                            "concurrency_constant": r.constant,
                            "structure": serde_json::from_str::<Value>(&io::to_json(&r.structure)).unwrap(),
                            "isomorphic_to_abstract": r.isomorphic_to_abstract,
                        })
                    }
                    other => return Err(Error::InvalidParams(format!("no coordinate realization for {other:?}"))),
                };
                pretty(&v)
            } else {
                io::to_json(&catalog::build(&name, &build_args(&flags))?)
            };
            emit(&text, output.as_deref())?;
        }
        Cmd::Analyze { input, format, no_symmetry, polarity_budget } => {
            let s = load(&input)?;
            let r = report::analyze(&s, AnalyzeOptions { symmetry: !no_symmetry, polarity_budget });
            emit(&match format {
                ReportFormat::Json => r.to_json(),
                ReportFormat::Text => r.to_text(),
            }, None)?;
        }
        Cmd::Iso { a, b } => {
            let (sa, sb) = (load(&a)?, load(&b)?);
            let w = canon::isomorphism(&sa, &sb);
            let v = json!({
                "isomorphic": w.is_some(),
                "point_map": w.as_ref().map(|w| w.0.clone()),
                "block_map": w.as_ref().map(|w| w.1.clone()),
            });
            emit(&pretty(&v), None)?;
            return Ok(if w.is_some() { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Cmd::Enumerate { v, lineal, budget, list } => {
            let e = enumerate::enumerate_v3_with(v, EnumOptions { lineal_only: lineal, budget, reverse_order: false })?;
            let mut out = json!({ "v": v, "lineal": lineal, "count": e.count(), "nodes": e.nodes });
            if list {
                out["structures"] = Value::Array(e.representatives.iter().map(|s| json!(s.blocks())).collect());
            }
            emit(&pretty(&out), None)?;
        }
        Cmd::Census { max_v, budget } => {
            let mut rows = Vec::new();
            for v in 7..=max_v {
                let e = enumerate::enumerate_v3_with(v, EnumOptions { lineal_only: true, budget, reverse_order: false })?;
                rows.push(json!({ "v": v, "count": e.count() }));
            }
            emit(&pretty(&Value::Array(rows)), None)?;
        }
        Cmd::Realize { input } => {
            let s = load(&input)?;
            let r = catalog::generic_point_hyperplane_realization(&s)?;
            let blocks: Vec<BlockSpec> = r.hyperplanes.iter().cloned().map(BlockSpec::Hyperplane).collect();
            emit(&pretty(&realization_json(&r.points, &blocks, &r.structure, r.matches_input)), None)?;
        }
        Cmd::Export { input, format } => {
            let s = load(&input)?;
            emit(&match format {
                Format::Json => io::to_json(&s),
                Format::Csv => io::to_csv(&s),
                Format::Dot => io::to_dot(&s),
            }, None)?;
        }
        Cmd::Catalog => {
            let mut t = String::new();
            for e in catalog::catalog_entries() {
                t.push_str(&format!("{:<18} {:<36} {:<24} {}\n", e.name, e.flags, e.expected, e.summary));
            }
            for g in catalog::golden_names() {
                let s = catalog::golden(g)?;
                let p = s.params().map(|p| p.to_string()).unwrap_or_else(|_| "-".into());
                t.push_str(&format!("{:<18} {:<36} {:<24} {}\n", g, "", p, "bundled"));
            }
            emit(&t, None)?;
        }
        Cmd::Designcheck { v, k, lambda, b, r } => {
            let (b, r) = (b.unwrap_or(v), r.unwrap_or(k));
            let equations = design::check_design_equations(v, k, b, r, lambda);
            let bcr = if v == b && k == r {
                Some(design::bruck_chowla_ryser(v as i64, k as i64, lambda as i64)?)
            } else {
                None
            };
            let ok = equations && bcr.as_ref().is_none_or(BcrVerdict::passed);
            emit(&pretty(&json!({ "equations_hold": equations, "bcr": bcr, "feasible": ok })), None)?;
            return Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Cmd::Hadamard { construct, design: as_design } => {
            let (kind, arg) = construct.split_once(':').ok_or_else(|| Error::InvalidParams("expected sylvester:K or paley:Q".into()))?;
            let arg: u64 = arg.parse().map_err(|_| Error::InvalidParams(format!("bad number {arg:?}")))?;
            let m = match kind {
                "sylvester" => design::sylvester(arg as u32)?,
                "paley" => design::paley(arg)?,
                other => return Err(Error::InvalidParams(format!("unknown construction {other:?}"))),
            };
            if as_design {
                emit(&io::to_json(&design::hadamard_to_design(&m)?.structure), None)?;
            } else {
                emit(&m.to_csv(), None)?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = cli.workers {
        // Fails only if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(w.max(1)).build_global();
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}", json!({ "error": e.kind(), "message": e.to_string() }));
            ExitCode::from(2)
        }
    }
}
