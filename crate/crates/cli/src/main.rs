mod input;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use parallelotope::cell::{adjacency_check, CellSummary};
use parallelotope::extension::{self, CheckOptions, Direction};
use parallelotope::lattice::{self, ContactVectorSet, FormDocument};
use parallelotope::polytope::{self, HPolytope, ParallelotopeVerdict, DEFAULT_VREP_CAP};
use parallelotope::{off, LatticeVector, Strategy, VPolytope, Vector, VoronoiCell};
use serde::Serialize;
use serde_json::Value;

use input::{emit, to_json, Source};

#[derive(Parser)]
#[command(name = "parallelotope", version, about = "Exact Voronoi parallelotopes and segment extensions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Run on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Args, Clone, Default)]
struct InputArgs {
    /// JSON file holding a form (`{"dim", "gram"}`), a Gram matrix, or a `cell` document.
    #[arg(long)]
    form: Option<PathBuf>,
    /// Catalog lattice such as `A2`, `D4*`, `E6`, or a family name with `--n`.
    #[arg(long)]
    lattice: Option<String>,
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Write JSON here instead of stdout.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Largest dimension for vertex enumeration.
    #[arg(long, default_value_t = DEFAULT_VREP_CAP)]
    vcap: usize,
}

#[derive(Subcommand)]
enum Command {
    /// H- and V-representation of the Voronoi cell.
    Cell {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: OutputArgs,
        /// Also write an OFF file (d <= 3).
        #[arg(long)]
        off: Option<PathBuf>,
    },
    /// Parity-class minima and facet normals.
    Relevant {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Integer directions with products 0 or ±1 against every facet normal.
    DualSet {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Minkowski sum of the cell with the segment b·[-e, e].
    Extend {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: OutputArgs,
        #[arg(long, allow_hyphen_values = true)]
        e: String,
        #[arg(long, default_value = "1")]
        b: String,
        /// Also write the sum as an OFF file (d <= 3).
        #[arg(long)]
        off: Option<PathBuf>,
    },
    /// Both directions of the segment-extension equivalence; exit 1 on a violated invariant.
    Check {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: OutputArgs,
        #[arg(long, allow_hyphen_values = true)]
        e: Option<String>,
        /// Comma-separated weights (default 1/2,1,3).
        #[arg(long)]
        b: Option<String>,
        /// JSON job `{form | catalogName, n?, e, b?}` in place of the flags.
        #[arg(long)]
        job: Option<PathBuf>,
    },
    /// Facet, adjacency, parallelotope and irreducibility checks on one cell; exit 1 on failure.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Lattice names understood by --lattice.
    CatalogList {
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Markdown table over catalog lattices, with the rows as JSON via --json.
    Report {
        /// Comma-separated labels (default: a fixed list up to E8).
        #[arg(long)]
        lattices: Option<String>,
        #[command(flatten)]
        out: OutputArgs,
    },
}

fn strategy(cli_sequential: bool) -> Strategy {
    if cli_sequential {
        Strategy::Sequential
    } else {
        Strategy::default()
    }
}

fn load(input: &InputArgs) -> Result<Source> {
    input::resolve(input.form.as_deref(), input.lattice.as_deref(), input.n)
}

fn build(src: &Source, vcap: usize, s: Strategy) -> Result<VoronoiCell> {
    Ok(VoronoiCell::with_strategy(src.form.clone(), vcap, s)?)
}

#[derive(Serialize)]
struct CellDoc<'a> {
    form: FormDocument,
    summary: CellSummary,
    #[serde(rename = "facetNormals")]
    facet_normals: &'a [LatticeVector],
    h: &'a HPolytope,
    v: Option<&'a VPolytope>,
    #[serde(skip_serializing_if = "Option::is_none")]
    notice: Option<String>,
}

fn cap_notice(cell: &VoronoiCell) -> Option<String> {
    cell.v.is_none().then(|| {
        format!(
            "vertex enumeration skipped: dimension {} exceeds the cap {}",
            cell.dim(),
            cell.vcap
        )
    })
}

fn write_off(v: Option<&VPolytope>, path: &PathBuf, dim: usize) -> Result<()> {
    let Some(v) = v else {
        bail!("--off needs vertices, which are not available in dimension {dim}");
    };
    fs::write(path, off::to_off(v)?).with_context(|| format!("writing {}", path.display()))
}

fn cmd_cell(input: &InputArgs, out: &OutputArgs, off_path: Option<&PathBuf>, s: Strategy) -> Result<bool> {
    let src = load(input)?;
    if off_path.is_some() && src.form.dim() > off::OFF_MAX_DIM {
        bail!("OFF export is limited to dimension {}", off::OFF_MAX_DIM);
    }
    let cell = build(&src, out.vcap, s)?;
    let doc = CellDoc {
        form: cell.form.to_document(),
        summary: cell.summary(),
        facet_normals: &cell.normals,
        h: &cell.h,
        v: cell.v.as_ref(),
        notice: cap_notice(&cell),
    };
    emit(&to_json(&doc)?, out.json.as_ref())?;
    if let Some(p) = off_path {
        write_off(cell.v.as_ref(), p, cell.dim())?;
    }
    Ok(true)
}

#[derive(Serialize)]
struct RelevantDoc {
    dim: usize,
    #[serde(rename = "facetNormals")]
    facet_normals: Vec<LatticeVector>,
    #[serde(rename = "contactVectors")]
    contact_vectors: usize,
    classes: ContactVectorSet,
}

fn cmd_relevant(input: &InputArgs, out: &OutputArgs, s: Strategy) -> Result<bool> {
    let src = load(input)?;
    let cs = lattice::coset_minima_with(&src.form, lattice::DEFAULT_ENUMERATION_CAP, s)?;
    let doc = RelevantDoc {
        dim: cs.dim,
        facet_normals: cs.facet_normals(),
        contact_vectors: cs.contact_vectors().len(),
        classes: cs,
    };
    emit(&to_json(&doc)?, out.json.as_ref())?;
    Ok(true)
}

#[derive(Serialize)]
struct DualSetDoc {
    dim: usize,
    count: usize,
    members: Vec<LatticeVector>,
    #[serde(rename = "basisUsed")]
    basis_used: Vec<LatticeVector>,
}

fn cmd_dual_set(input: &InputArgs, out: &OutputArgs, s: Strategy) -> Result<bool> {
    let src = load(input)?;
    let normals = lattice::coset_minima_with(&src.form, lattice::DEFAULT_ENUMERATION_CAP, s)?.facet_normals();
    let ds = extension::dual_set_with(&normals, s)?;
    let doc = DualSetDoc {
        dim: src.form.dim(),
        count: ds.len(),
        members: ds.members,
        basis_used: ds.basis_used,
    };
    emit(&to_json(&doc)?, out.json.as_ref())?;
    Ok(true)
}

#[derive(Serialize)]
struct ExtendDoc<'a> {
    direction: &'a Direction,
    h: &'a HPolytope,
    v: &'a VPolytope,
    /// Facets swept out of codimension-2 faces.
    swept: &'a [polytope::Inequality],
    parallelotope: ParallelotopeVerdict,
}

fn cmd_extend(input: &InputArgs, out: &OutputArgs, e: &str, b: &str, off_path: Option<&PathBuf>, s: Strategy) -> Result<bool> {
    let src = load(input)?;
    let cell = build(&src, out.vcap, s)?;
    let v = cell.vertices()?;
    let mut b = input::parse_rational_list(b)?;
    if b.len() != 1 {
        bail!("--b takes a single weight here");
    }
    let b = b.remove(0);
    let dir = Direction::new(input::parse_vector(e)?, b)?;
    let sum = extension::sum_with_segment(v, &dir)?;
    let doc = ExtendDoc {
        direction: &dir,
        h: &sum.h,
        v: &sum.v,
        swept: &sum.swept,
        parallelotope: polytope::is_parallelotope(&sum.v),
    };
    emit(&to_json(&doc)?, out.json.as_ref())?;
    if let Some(p) = off_path {
        write_off(Some(&sum.v), p, cell.dim())?;
    }
    Ok(true)
}

fn job_source(job: &Value) -> Result<Source> {
    let n = job.get("n").and_then(Value::as_u64).map(|k| k as usize);
    match (job.get("form"), job.get("catalogName")) {
        (Some(f), None) => Ok(Source {
            form: input::form_from_value(f)?,
            label: None,
        }),
        (None, Some(Value::String(name))) => input::from_catalog(name, n),
        _ => bail!("a job needs exactly one of `form` and `catalogName`"),
    }
}

fn cmd_check(
    input: &InputArgs,
    out: &OutputArgs,
    e: Option<&str>,
    b: Option<&str>,
    job: Option<&PathBuf>,
    s: Strategy,
) -> Result<bool> {
    let (src, e, b) = match job {
        Some(path) => {
            if input.form.is_some() || input.lattice.is_some() || e.is_some() {
                bail!("--job replaces --form, --lattice and --e");
            }
            let job = input::read_json(path)?;
            let e = Vector(input::rationals_from_value(job.get("e").context("job is missing `e`")?)?);
            let b = match job.get("b") {
                Some(v) => input::rationals_from_value(v)?,
                None => extension::default_b_samples(),
            };
            (job_source(&job)?, e, b)
        }
        None => {
            let e = input::parse_vector(e.context("--e is required")?)?;
            let b = match b {
                Some(csv) => input::parse_rational_list(csv)?,
                None => extension::default_b_samples(),
            };
            (load(input)?, e, b)
        }
    };
    let opts = CheckOptions {
        vcap: out.vcap,
        strategy: s,
        lattice: src.label.clone(),
    };
    let report = extension::check_theorem(&src.form, &e, &b, &opts)?;
    emit(&to_json(&report)?, out.json.as_ref())?;
    if !report.invariants_hold {
        for v in &report.violations {
            eprintln!("violation: {v}");
        }
    }
    Ok(report.invariants_hold)
}

#[derive(Serialize)]
struct VerifyDoc {
    summary: CellSummary,
    /// Every facet normal defines a facet of the H-representation.
    #[serde(rename = "normalsAreFacets")]
    normals_are_facets: bool,
    /// Facet normals whose translate `P + 2Ap` does not meet `P` in `F(p)`.
    #[serde(rename = "adjacencyFailures")]
    adjacency_failures: Vec<LatticeVector>,
    parallelotope: ParallelotopeVerdict,
    irreducible: bool,
    ok: bool,
}

fn cmd_verify(input: &InputArgs, out: &OutputArgs, s: Strategy) -> Result<bool> {
    let src = load(input)?;
    let cell = build(&src, out.vcap, s)?;
    let v = cell.vertices()?;
    let normals_are_facets = v.facets().len() == cell.h.ineqs.len();
    let checks = parallelotope::par::map(s, &cell.normals, |p| adjacency_check(&cell, p));
    let mut adjacency_failures = Vec::new();
    for (p, r) in cell.normals.iter().zip(checks) {
        if !r? {
            adjacency_failures.push(p.clone());
        }
    }
    let parallelotope = polytope::is_parallelotope(v);
    let irreducible = polytope::irreducibility_graph(v)?.connected;
    let ok = normals_are_facets && adjacency_failures.is_empty() && parallelotope.ok;
    let doc = VerifyDoc {
        summary: cell.summary(),
        normals_are_facets,
        adjacency_failures,
        parallelotope,
        irreducible,
        ok,
    };
    emit(&to_json(&doc)?, out.json.as_ref())?;
    Ok(ok)
}

#[derive(Serialize)]
struct CatalogEntry {
    name: &'static str,
    dimension: String,
}

fn cmd_catalog_list(json: Option<&PathBuf>) -> Result<bool> {
    let entries: Vec<CatalogEntry> = lattice::CATALOG_NAMES
        .iter()
        .map(|&name| CatalogEntry {
            name,
            dimension: match name {
                "Zn" | "An" | "An*" => "n >= 1".into(),
                "Dn" | "Dn*" => "n >= 3".into(),
                _ => name[1..2].to_string(),
            },
        })
        .collect();
    match json {
        Some(_) => emit(&to_json(&entries)?, json)?,
        None => {
            for e in &entries {
                println!("{:<4} {}", e.name, e.dimension);
            }
        }
    }
    Ok(true)
}

const REPORT_LATTICES: [&str; 15] = [
    "Z2", "Z3", "A2", "A3", "A4", "A2*", "A3*", "D4", "D5", "D4*", "E6", "E6*", "E7", "E7*", "E8",
];

#[derive(Serialize)]
struct ReportRow {
    lattice: String,
    dim: usize,
    facets: usize,
    contacts: usize,
    #[serde(rename = "dualSet")]
    dual_set: usize,
    /// Unknown above the vertex enumeration cap.
    irreducible: Option<bool>,
    #[serde(rename = "sampleDirection")]
    sample_direction: Option<LatticeVector>,
}

fn report_row(label: &str, vcap: usize) -> Result<ReportRow> {
    let src = input::from_catalog(label, None)?;
    let cell = VoronoiCell::with_strategy(src.form, vcap, Strategy::Sequential)?;
    let ds = extension::dual_set_with(&cell.normals, Strategy::Sequential)?;
    let irreducible = match &cell.v {
        Some(v) => Some(polytope::irreducibility_graph(v)?.connected),
        None => None,
    };
    Ok(ReportRow {
        lattice: src.label.unwrap_or_else(|| label.to_string()),
        dim: cell.dim(),
        facets: cell.normals.len(),
        contacts: cell.contacts.contact_vectors().len(),
        dual_set: ds.len(),
        irreducible,
        sample_direction: ds.members.iter().rev().find(|e| e.canonical_sign() == **e).cloned(),
    })
}

fn markdown(rows: &[ReportRow]) -> String {
    let mut s = String::from(
        "| lattice | dim | facets | contacts | dual set | irreducible | sample direction |\n\
         |---|---|---|---|---|---|---|\n",
    );
    for r in rows {
        let irr = match r.irreducible {
            Some(true) => "yes",
            Some(false) => "no",
            None => "n/a",
        };
        let sample = r.sample_direction.as_ref().map_or("none".to_string(), |e| e.to_string());
        s.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} | {} |\n",
            r.lattice, r.dim, r.facets, r.contacts, r.dual_set, irr, sample
        ));
    }
    s
}

fn cmd_report(lattices: Option<&str>, out: &OutputArgs, s: Strategy) -> Result<bool> {
    let labels: Vec<String> = match lattices {
        Some(csv) => csv.split(',').map(|x| x.trim().to_string()).collect(),
        None => REPORT_LATTICES.iter().map(|x| x.to_string()).collect(),
    };
    let rows = parallelotope::par::map(s, &labels, |l| report_row(l, out.vcap))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    print!("{}", markdown(&rows));
    if let Some(path) = &out.json {
        emit(&to_json(&rows)?, Some(path))?;
    }
    Ok(true)
}

fn run(cli: Cli) -> Result<bool> {
    let s = strategy(cli.sequential);
    match &cli.command {
        Command::Cell { input, out, off } => cmd_cell(input, out, off.as_ref(), s),
        Command::Relevant { input, out } => cmd_relevant(input, out, s),
        Command::DualSet { input, out } => cmd_dual_set(input, out, s),
        Command::Extend { input, out, e, b, off } => cmd_extend(input, out, e, b, off.as_ref(), s),
        Command::Check { input, out, e, b, job } => {
            cmd_check(input, out, e.as_deref(), b.as_deref(), job.as_ref(), s)
        }
        Command::Verify { input, out } => cmd_verify(input, out, s),
        Command::CatalogList { json } => cmd_catalog_list(json.as_ref()),
        Command::Report { lattices, out } => cmd_report(lattices.as_deref(), out, s),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

