//! Thin command-line frontend over the library. Subcommands mirror the
//! library's capabilities: `colorings`, `invariant`, `palette`, `verify`.
//! Output is JSON (or CSV with --csv). Exit codes: 0 success, 1 a
//! verification suite found a counterexample, 2 invalid input, 3 an
//! enumeration exceeded its budget.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use dehncol::coloring::{
    classify_coloring, coloring_affine_classes, enumerate_colorings_with_budget,
    enumeration_budget, solve_coloring_space, ColoringKind,
};
use dehncol::error::{Error, Result};
use dehncol::invariant::{mincol_bounds, phi_invariant, verify_weights, ColoringFilter};
use dehncol::palette::{analyze_all, kernel_analysis, KernelAnalysis};
use dehncol::store::{inputs_hash, RecordKey, ResultsStore};
use dehncol::table::{find_knot, load_knot_table, parse_table_pd, KnotTableEntry};
use dehncol::topology::{extract_topology, DiagramTopology};
use dehncol::{verify_chain_complex, verify_theta_cocycle, PDCode};

#[derive(Parser)]
#[command(
    name = "dehncol",
    version,
    about = "Dehn p-colorings, cocycle invariants, and minimum-color bounds for knot diagrams"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve and count the Dehn p-colorings of one diagram
    Colorings {
        #[command(flatten)]
        diagram: DiagramArgs,
        /// Odd prime modulus
        #[arg(long)]
        p: u64,
        /// Include every coloring in the output
        #[arg(long)]
        enumerate: bool,
        /// Include the affine equivalence classes of nontrivial colorings
        #[arg(long)]
        classes: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Compute the cocycle invariant multiset and minimum-color bounds
    Invariant {
        #[command(flatten)]
        diagram: DiagramArgs,
        /// Odd prime modulus
        #[arg(long)]
        p: u64,
        /// Which colorings enter the multiset
        #[arg(long, value_enum, default_value_t = Flavor::Nt)]
        flavor: Flavor,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Analyze palettes for the kernel-vanishing argument
    Palette {
        /// Odd prime modulus
        #[arg(long)]
        p: u64,
        /// Comma-separated color set, e.g. 0,1,2,4
        #[arg(long, conflicts_with = "all_candidates")]
        set: Option<String>,
        /// Analyze every candidate minimal palette for this prime
        #[arg(long)]
        all_candidates: bool,
        /// Emit CSV instead of JSON
        #[arg(long)]
        csv: bool,
    },
    /// Run exhaustive verification suites
    Verify {
        /// Odd prime modulus
        #[arg(long)]
        p: u64,
        /// Which suite to run; `weights` needs a diagram
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[command(flatten)]
        diagram: OptionalDiagramArgs,
        /// Enumeration budget override for the weights suite
        #[arg(long)]
        budget: Option<u128>,
    },
}

#[derive(Args)]
struct DiagramArgs {
    /// PD code text, e.g. "X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)"
    #[arg(long, group = "diagram")]
    pd: Option<String>,
    /// File containing a PD code (text or JSON)
    #[arg(long, group = "diagram")]
    pd_file: Option<PathBuf>,
    /// Name from the built-in table or from --table
    #[arg(long, group = "diagram")]
    knot: Option<String>,
    /// Extra knot table (CSV `name,pd[,determinant]` or JSON)
    #[arg(long)]
    table: Option<PathBuf>,
}

#[derive(Args)]
struct OptionalDiagramArgs {
    /// PD code text (for the weights suite)
    #[arg(long, group = "diagram")]
    pd: Option<String>,
    /// File containing a PD code
    #[arg(long, group = "diagram")]
    pd_file: Option<PathBuf>,
    /// Name from the built-in table or from --table
    #[arg(long, group = "diagram")]
    knot: Option<String>,
    /// Extra knot table
    #[arg(long)]
    table: Option<PathBuf>,
}

#[derive(Args)]
struct OutputArgs {
    /// Emit CSV instead of JSON
    #[arg(long)]
    csv: bool,
    /// Results store file; identical reruns are served from it
    #[arg(long)]
    store: Option<PathBuf>,
    /// Enumeration budget override (default: DEHNCOL_BUDGET or 10^8)
    #[arg(long)]
    budget: Option<u128>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Flavor {
    /// Nontrivial colorings only
    Nt,
    /// Every coloring
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Cocycle,
    Chain,
    Weights,
    All,
}

/// A named diagram resolved from the command line.
struct ResolvedDiagram {
    name: String,
    pd: PDCode,
    topo: DiagramTopology,
}

fn resolve_diagram(
    pd: &Option<String>,
    pd_file: &Option<PathBuf>,
    knot: &Option<String>,
    table: &Option<PathBuf>,
) -> Result<ResolvedDiagram> {
    let extra: Vec<KnotTableEntry> = match table {
        Some(path) => load_knot_table(path)?,
        None => Vec::new(),
    };
    let (name, code) = match (pd, pd_file, knot) {
        (Some(text), None, None) => {
            let code = parse_table_pd(text)?;
            (
                format!("pd-{}", &inputs_hash(&[&code.to_json()])[..8]),
                code,
            )
        }
        (None, Some(path), None) => {
            let text = std::fs::read_to_string(path)?;
            let code = parse_table_pd(text.trim())?;
            (
                format!("pd-{}", &inputs_hash(&[&code.to_json()])[..8]),
                code,
            )
        }
        (None, None, Some(name)) => {
            let entry = find_knot(name, &extra)?;
            entry.validate()?;
            (entry.name, entry.pd)
        }
        _ => {
            return Err(Error::InvalidInput(
                "give exactly one of --pd, --pd-file, --knot".into(),
            ))
        }
    };
    let topo = extract_topology(&code)?;
    Ok(ResolvedDiagram {
        name,
        pd: code,
        topo,
    })
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Colorings {
            diagram,
            p,
            enumerate,
            classes,
            out,
        } => {
            let d = resolve_diagram(&diagram.pd, &diagram.pd_file, &diagram.knot, &diagram.table)?;
            let kind = format!(
                "colorings{}{}",
                if enumerate { "+enumerate" } else { "" },
                if classes { "+classes" } else { "" }
            );
            let payload = with_store(&out, &d, p, &kind, || {
                colorings_payload(&d, p, enumerate, classes, out.budget)
            })?;
            if out.csv {
                let mut w = csv_writer();
                w.write_record([
                    "knot",
                    "p",
                    "regions",
                    "rank",
                    "dimension",
                    "total",
                    "trivial",
                    "nontrivial",
                ])
                .map_err(csv_err)?;
                w.write_record([
                    d.name.clone(),
                    p.to_string(),
                    str_of(&payload, "regions"),
                    str_of(&payload, "rank"),
                    str_of(&payload, "dimension"),
                    str_of(&payload, "total"),
                    str_of(&payload, "trivial"),
                    str_of(&payload, "nontrivial"),
                ])
                .map_err(csv_err)?;
                w.flush()?;
            } else {
                println!("{}", serde_json::to_string_pretty(&payload)?);
            }
        }
        Command::Invariant {
            diagram,
            p,
            flavor,
            out,
        } => {
            let d = resolve_diagram(&diagram.pd, &diagram.pd_file, &diagram.knot, &diagram.table)?;
            let kind = match flavor {
                Flavor::Nt => "invariant-nontrivial",
                Flavor::All => "invariant-all",
            };
            let payload = with_store(&out, &d, p, kind, || {
                invariant_payload(&d, p, flavor, out.budget)
            })?;
            if out.csv {
                let mut w = csv_writer();
                w.write_record(["value", "count"]).map_err(csv_err)?;
                if let Some(values) = payload["phi"]["counts"].as_object() {
                    for (v, m) in values {
                        let count = m
                            .as_str()
                            .map(str::to_string)
                            .unwrap_or_else(|| m.to_string());
                        w.write_record([v.clone(), count]).map_err(csv_err)?;
                    }
                }
                w.flush()?;
            } else {
                println!("{}", serde_json::to_string_pretty(&payload)?);
            }
        }
        Command::Palette {
            p,
            set,
            all_candidates,
            csv,
        } => {
            let analyses: Vec<KernelAnalysis> = if all_candidates {
                analyze_all(p)?
            } else {
                let set = set
                    .ok_or_else(|| Error::InvalidInput("give --set or --all-candidates".into()))?;
                let colors = parse_color_set(&set)?;
                vec![kernel_analysis(&colors, p)?]
            };
            if csv {
                let mut w = csv_writer();
                w.write_record([
                    "p",
                    "palette",
                    "free_generators",
                    "kernel_dim",
                    "theta_trivial",
                    "relations",
                ])
                .map_err(csv_err)?;
                for a in &analyses {
                    w.write_record([
                        a.p.to_string(),
                        join_u64(&a.palette),
                        a.free_generators.len().to_string(),
                        a.kernel_basis.len().to_string(),
                        a.theta_trivial.to_string(),
                        a.relations.join("; "),
                    ])
                    .map_err(csv_err)?;
                }
                w.flush()?;
            } else {
                let all_trivial = analyses.iter().all(|a| a.theta_trivial);
                let payload = json!({
                    "p": p,
                    "analyses": analyses,
                    "all_theta_trivial": all_trivial,
                });
                println!("{}", serde_json::to_string_pretty(&payload)?);
            }
        }
        Command::Verify {
            p,
            suite,
            diagram,
            budget,
        } => {
            let mut report = Vec::new();
            if matches!(suite, Suite::Cocycle | Suite::All) {
                let cert = verify_theta_cocycle(p)?;
                report.push(json!({
                    "suite": "cocycle",
                    "status": "pass",
                    "diagonal_checks": cert.diagonal_checks,
                    "symmetry_checks": cert.symmetry_checks,
                    "coboundary_checks": cert.coboundary_checks,
                }));
            }
            if matches!(suite, Suite::Chain | Suite::All) {
                let cert = verify_chain_complex(p)?;
                report.push(json!({
                    "suite": "chain",
                    "status": "pass",
                    "boundary_square_checks": cert.boundary_square_checks,
                    "degeneracy_checks": cert.degeneracy_checks,
                    "presentation_checks": cert.presentation_checks,
                    "diagonal_checks": cert.diagonal_checks,
                }));
            }
            let has_diagram =
                diagram.pd.is_some() || diagram.pd_file.is_some() || diagram.knot.is_some();
            if matches!(suite, Suite::Weights) && !has_diagram {
                return Err(Error::InvalidInput(
                    "the weights suite needs a diagram (--pd, --pd-file, or --knot)".into(),
                ));
            }
            if matches!(suite, Suite::Weights) || (matches!(suite, Suite::All) && has_diagram) {
                let d =
                    resolve_diagram(&diagram.pd, &diagram.pd_file, &diagram.knot, &diagram.table)?;
                let cert = verify_weights(&d.topo, p, budget)?;
                report.push(json!({
                    "suite": "weights",
                    "status": "pass",
                    "diagram": d.name,
                    "cycle_checks": cert.cycle_checks.to_string(),
                    "corner_checks": cert.corner_checks.to_string(),
                    "affine_checks": cert.affine_checks.to_string(),
                }));
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({ "p": p, "suites": report }))?
            );
        }
    }
    Ok(())
}

/// Runs `compute` through the results store when one was requested.
fn with_store(
    out: &OutputArgs,
    d: &ResolvedDiagram,
    p: u64,
    kind: &str,
    compute: impl FnOnce() -> Result<serde_json::Value>,
) -> Result<serde_json::Value> {
    match &out.store {
        None => compute(),
        Some(path) => {
            let mut store = ResultsStore::open(path)?;
            let hash = inputs_hash(&[&d.pd.to_json(), &p.to_string(), kind]);
            let (payload, hit) =
                store.get_or_compute(RecordKey::new(&d.name, p, kind), &hash, compute)?;
            if hit {
                eprintln!("(served from results store)");
            }
            Ok(payload)
        }
    }
}

fn colorings_payload(
    d: &ResolvedDiagram,
    p: u64,
    enumerate: bool,
    classes: bool,
    budget: Option<u128>,
) -> Result<serde_json::Value> {
    let budget = budget.unwrap_or_else(enumeration_budget);
    let space = solve_coloring_space(&d.topo, p)?;
    let mut total: u128 = 0;
    let mut trivial: u128 = 0;
    let mut listing = Vec::new();
    for c in enumerate_colorings_with_budget(&space, budget)? {
        total += 1;
        let kind = classify_coloring(&d.topo, &c);
        if kind == ColoringKind::Trivial {
            trivial += 1;
        }
        if enumerate {
            listing.push(json!({
                "colors": c.colors,
                "kind": if kind == ColoringKind::Trivial { "trivial" } else { "nontrivial" },
            }));
        }
    }
    let nontrivial = total - trivial;
    let mut payload = json!({
        "knot": d.name,
        "p": p,
        "crossings": d.topo.n_crossings(),
        "regions": d.topo.n_regions(),
        "rank": space.rank,
        "dimension": space.dim(),
        "total": total.to_string(),
        "trivial": trivial.to_string(),
        "nontrivial": nontrivial.to_string(),
    });
    if nontrivial == 0 {
        payload["note"] = json!(format!(
            "not Dehn {p}-colorable on this diagram (trivial colorings only)"
        ));
    }
    if enumerate {
        payload["colorings"] = json!(listing);
    }
    if classes {
        let cls = coloring_affine_classes(&d.topo, &space, Some(budget))?;
        payload["affine_classes"] = json!(cls
            .iter()
            .map(|c| json!({
                "representative": c.representative.colors,
                "size": c.size,
            }))
            .collect::<Vec<_>>());
    }
    Ok(payload)
}

fn invariant_payload(
    d: &ResolvedDiagram,
    p: u64,
    flavor: Flavor,
    budget: Option<u128>,
) -> Result<serde_json::Value> {
    let filter = match flavor {
        Flavor::Nt => ColoringFilter::Nontrivial,
        Flavor::All => ColoringFilter::All,
    };
    let phi = phi_invariant(&d.topo, p, filter, budget)?;
    let bounds = mincol_bounds(&d.topo, p, budget)?;
    let mut payload = json!({
        "knot": d.name,
        "p": p,
        "flavor": match flavor { Flavor::Nt => "nontrivial", Flavor::All => "all" },
        "phi": {
            "counts": phi.values.iter().map(|(k, v)| (k.to_string(), json!(v.to_string()))).collect::<serde_json::Map<_, _>>(),
            "multiset": phi.multiset_string(),
            "total_colorings": phi.total_colorings.to_string(),
            "trivial_colorings": phi.trivial_colorings.to_string(),
            "nontrivial_colorings": phi.nontrivial_colorings().to_string(),
        },
        "bounds": bounds,
        "mirror": "values negate: the mirror image of the diagram yields the multiset with every value replaced by its negative mod p",
    });
    if !bounds_colorable(&payload) {
        payload["note"] = json!(format!(
            "not Dehn {p}-colorable on this diagram (trivial colorings only)"
        ));
    }
    Ok(payload)
}

fn bounds_colorable(payload: &serde_json::Value) -> bool {
    payload["bounds"]["nontrivially_colorable"]
        .as_bool()
        .unwrap_or(false)
}

fn parse_color_set(text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<u64>()
                .map_err(|e| Error::InvalidInput(format!("bad color {s:?}: {e}")))
        })
        .collect()
}

fn join_u64(xs: &[u64]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn csv_writer() -> csv::Writer<std::io::Stdout> {
    csv::Writer::from_writer(std::io::stdout())
}

fn csv_err(e: csv::Error) -> Error {
    Error::InvalidInput(format!("csv output: {e}"))
}

fn str_of(payload: &serde_json::Value, key: &str) -> String {
    match &payload[key] {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
