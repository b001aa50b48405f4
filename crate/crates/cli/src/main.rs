//! Command-line interface: parse polytope and direction specifications,
//! compute edge-skeletons, and emit machine-readable results.
//!
//! All rationals cross the wire as strings `"p/q"` (or `"p"`); plain JSON
//! integers are accepted on input. Exit codes: 0 success, 2 when `--check`
//! raises the direction-superset diagnostic, 1 for every other error.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use edgeskel::gkz::{
    circuit_directions_resultant, circuit_directions_secondary, CayleyConfiguration,
    PointConfiguration, ResultantOracle, SecondaryOracle,
};
use edgeskel::oracle::{
    HPolytopeOracle, MinkowskiOracle, Oracle, SignedTerm, TermSign, VPolytopeOracle,
};
use edgeskel::rsearch::{rs_edge_skeleton, CollectSink, LineSink, SearchOrder};
use edgeskel::skeleton::{check_direction_completeness, edge_skeleton, SkeletonGraph};
use edgeskel::verify::{bf_skeleton, certify_edge, cross_check, ExplicitPolytope};
use edgeskel::{DirectionSet, DirectionSource, Vector};

#[derive(Parser)]
#[command(name = "edgeskel", about = "Exact polytope edge-skeletons from optimization oracles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the edge-skeleton of a polytope.
    Skeleton {
        /// Polytope or job JSON file.
        #[arg(long)]
        input: PathBuf,
        /// Direction file, or "auto" to derive a superset from the input.
        #[arg(long)]
        directions: Option<String>,
        /// Treat explicit directions as undirected (expand each to ±e).
        #[arg(long)]
        undirected: bool,
        /// Use the space-efficient reverse-search traversal.
        #[arg(long)]
        reverse_search: bool,
        /// Output file (stdout when omitted).
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Run post-certification LPs and the direction-completeness check.
        #[arg(long)]
        check: bool,
        /// Cap for parallel fan-out (1 forces sequential).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Emit a direction-superset for a polytope without computing the skeleton.
    Directions {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a single optimization-oracle call.
    Oracle {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated objective, e.g. "1,0,-2/3".
        #[arg(long)]
        objective: String,
    },
    /// Brute-force a small explicit polytope and optionally cross-check a
    /// previously computed skeleton.
    Verify {
        #[arg(long)]
        input: PathBuf,
        /// Skeleton JSON to compare against.
        #[arg(long)]
        against: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

// ---------------------------------------------------------------------------
// Wire formats
// ---------------------------------------------------------------------------

/// A rational that arrives as "p/q", "p", or a bare JSON integer.
#[derive(Deserialize, Serialize, Clone, Debug)]
#[serde(untagged)]
enum WireScalar {
    Text(String),
    Int(i64),
}

impl WireScalar {
    fn parse(&self) -> Result<edgeskel::Scalar> {
        match self {
            WireScalar::Text(t) => {
                edgeskel::exact::parse_scalar(t).map_err(|e| anyhow!(e.to_string()))
            }
            WireScalar::Int(n) => Ok(edgeskel::exact::int(*n)),
        }
    }
}

fn parse_matrix(rows: &[Vec<WireScalar>]) -> Result<Vec<Vector>> {
    rows.iter()
        .map(|r| r.iter().map(WireScalar::parse).collect())
        .collect()
}

#[derive(Deserialize, Clone, Debug)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum PolytopeSpec {
    Vpolytope {
        points: Vec<Vec<WireScalar>>,
    },
    Hpolytope {
        #[serde(rename = "A")]
        a: Vec<Vec<WireScalar>>,
        b: Vec<WireScalar>,
    },
    Minkowski {
        terms: Vec<TermSpec>,
    },
    Secondary {
        points: Vec<Vec<WireScalar>>,
    },
    Resultant {
        supports: Vec<Vec<Vec<WireScalar>>>,
    },
}

#[derive(Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
struct TermSpec {
    sign: i8,
    polytope: PolytopeSpec,
}

#[derive(Deserialize, Clone, Debug)]
#[serde(untagged)]
enum DirectionsSpec {
    Auto(String),
    List(Vec<Vec<WireScalar>>),
    Flagged {
        directions: Vec<Vec<WireScalar>>,
        #[serde(default)]
        undirected: bool,
    },
}

/// Top-level job file: either a bare polytope (tagged by "type") or a job
/// object with optional directions / mode / output settings.
#[derive(Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
struct JobSpec {
    polytope: PolytopeSpec,
    #[serde(default)]
    directions: Option<DirectionsSpec>,
    #[serde(default)]
    mode: Option<String>,
    #[serde(default)]
    output: Option<PathBuf>,
    #[serde(default)]
    format: Option<String>,
}

#[derive(Serialize)]
struct SkeletonJson {
    vertices: Vec<Vec<String>>,
    edges: Vec<(usize, usize)>,
}

impl SkeletonJson {
    fn from_graph(g: &SkeletonGraph) -> Self {
        Self {
            vertices: g
                .vertices
                .iter()
                .map(|v| v.iter().map(edgeskel::exact::format_scalar).collect())
                .collect(),
            edges: g.edges.clone(),
        }
    }
}

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

fn build_oracle(spec: &PolytopeSpec) -> Result<Box<dyn Oracle>> {
    match spec {
        PolytopeSpec::Vpolytope { points } => {
            let pts = parse_matrix(points)?;
            Ok(Box::new(VPolytopeOracle::new(pts)?))
        }
        PolytopeSpec::Hpolytope { a, b } => {
            let rows = parse_matrix(a)?;
            let rhs: Vector = b.iter().map(WireScalar::parse).collect::<Result<_>>()?;
            Ok(Box::new(HPolytopeOracle::new(rows, rhs)?))
        }
        PolytopeSpec::Minkowski { terms } => {
            let mut built = Vec::with_capacity(terms.len());
            for t in terms {
                let sign = match t.sign {
                    1 => TermSign::Positive,
                    -1 => TermSign::Negative,
                    s => bail!("term sign must be 1 or -1, got {s}"),
                };
                built.push(SignedTerm {
                    sign,
                    oracle: build_oracle(&t.polytope)?,
                });
            }
            Ok(Box::new(MinkowskiOracle::new(built)?))
        }
        PolytopeSpec::Secondary { points } => {
            let config = PointConfiguration::new(parse_matrix(points)?)?;
            Ok(Box::new(SecondaryOracle::new(config)?))
        }
        PolytopeSpec::Resultant { supports } => {
            let sup: Vec<Vec<Vector>> = supports
                .iter()
                .map(|s| parse_matrix(s))
                .collect::<Result<_>>()?;
            let cayley = CayleyConfiguration::new(sup)?;
            Ok(Box::new(ResultantOracle::new(cayley)?))
        }
    }
}

/// Direction superset derived from the representation: pairwise vertex
/// differences for V-polytopes (via brute-forced vertices for small
/// H-polytopes), the union over positive terms for Minkowski sums, and
/// circuit enumeration for secondary / resultant polytopes.
fn auto_directions(spec: &PolytopeSpec) -> Result<DirectionSet> {
    match spec {
        PolytopeSpec::Vpolytope { points } => {
            let pts = parse_matrix(points)?;
            Ok(DirectionSet::pairwise_differences(&pts)?)
        }
        PolytopeSpec::Hpolytope { a, b } => {
            let rows = parse_matrix(a)?;
            let rhs: Vector = b.iter().map(WireScalar::parse).collect::<Result<_>>()?;
            let d = rows.first().map(Vec::len).unwrap_or(0);
            if d > 6 {
                bail!(
                    "auto directions for H-polytopes enumerate vertices and support \
                     dimension <= 6; pass --directions <file> instead"
                );
            }
            let vertices = edgeskel::verify::bf_vertices(&ExplicitPolytope::Inequalities {
                a: rows,
                b: rhs,
            })?;
            Ok(DirectionSet::pairwise_differences(&vertices)?)
        }
        PolytopeSpec::Minkowski { terms } => {
            let mut acc: Option<DirectionSet> = None;
            for t in terms {
                if t.sign != 1 {
                    continue;
                }
                let d = auto_directions(&t.polytope)?;
                acc = Some(match acc {
                    None => d,
                    Some(prev) => prev.union(&d),
                });
            }
            acc.ok_or_else(|| anyhow!("signed sum needs at least one positive term"))
        }
        PolytopeSpec::Secondary { points } => {
            let config = PointConfiguration::new(parse_matrix(points)?)?;
            Ok(circuit_directions_secondary(&config)?)
        }
        PolytopeSpec::Resultant { supports } => {
            let sup: Vec<Vec<Vector>> = supports
                .iter()
                .map(|s| parse_matrix(s))
                .collect::<Result<_>>()?;
            let cayley = CayleyConfiguration::new(sup)?;
            Ok(circuit_directions_resultant(&cayley)?)
        }
    }
}

fn load_job(path: &Path) -> Result<JobSpec> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .with_context(|| format!("malformed JSON in {}", path.display()))?;
    if value.get("polytope").is_some() {
        Ok(serde_json::from_value(value)?)
    } else {
        Ok(JobSpec {
            polytope: serde_json::from_value(value)?,
            directions: None,
            mode: None,
            output: None,
            format: None,
        })
    }
}

fn resolve_directions(
    spec: &PolytopeSpec,
    cli_directions: Option<&str>,
    job_directions: Option<&DirectionsSpec>,
    undirected_flag: bool,
) -> Result<DirectionSet> {
    // command line wins over the job file
    if let Some(arg) = cli_directions {
        if arg == "auto" {
            return auto_directions(spec);
        }
        let text = std::fs::read_to_string(arg).with_context(|| format!("cannot read {arg}"))?;
        let parsed: DirectionsSpec = serde_json::from_str(&text)?;
        return directions_from_spec(spec, &parsed, undirected_flag);
    }
    match job_directions {
        Some(ds) => directions_from_spec(spec, ds, undirected_flag),
        None => auto_directions(spec),
    }
}

fn directions_from_spec(
    spec: &PolytopeSpec,
    ds: &DirectionsSpec,
    undirected_flag: bool,
) -> Result<DirectionSet> {
    match ds {
        DirectionsSpec::Auto(s) if s == "auto" => auto_directions(spec),
        DirectionsSpec::Auto(s) => bail!("unknown directions keyword {s:?}"),
        DirectionsSpec::List(rows) => {
            let vecs = parse_matrix(rows)?;
            if undirected_flag {
                Ok(DirectionSet::undirected(vecs, DirectionSource::UserProvided)?)
            } else {
                Ok(DirectionSet::directed(vecs, DirectionSource::UserProvided)?)
            }
        }
        DirectionsSpec::Flagged {
            directions,
            undirected,
        } => {
            let vecs = parse_matrix(directions)?;
            if *undirected || undirected_flag {
                Ok(DirectionSet::undirected(vecs, DirectionSource::UserProvided)?)
            } else {
                Ok(DirectionSet::directed(vecs, DirectionSource::UserProvided)?)
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

fn render(graph: &SkeletonGraph, format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let json = serde_json::to_string(&SkeletonJson::from_graph(graph))?;
            Ok(format!("{json}\n"))
        }
        Format::Dot => {
            let mut out = String::from("graph skeleton {\n");
            for (i, v) in graph.vertices.iter().enumerate() {
                out.push_str(&format!(
                    "  v{i} [label=\"{}\"];\n",
                    edgeskel::exact::format_vector(v)
                ));
            }
            for (i, j) in &graph.edges {
                out.push_str(&format!("  v{i} -- v{j};\n"));
            }
            out.push_str("}\n");
            Ok(out)
        }
    }
}

fn write_output(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{text}");
            std::io::stdout().flush().ok();
            Ok(())
        }
    }
}

/// Post-certification: the completeness diagnostic plus one edge LP per
/// reported edge. Failures exit with code 2.
fn run_checks(graph: &SkeletonGraph) -> std::result::Result<(), String> {
    check_direction_completeness(graph)?;
    for &(i, j) in &graph.edges {
        match certify_edge(&graph.vertices, i, j) {
            Ok(true) => {}
            Ok(false) => {
                return Err(format!(
                    "directions likely incomplete: reported edge {}--{} failed certification",
                    edgeskel::exact::format_vector(&graph.vertices[i]),
                    edgeskel::exact::format_vector(&graph.vertices[j]),
                ))
            }
            Err(e) => return Err(format!("edge certification error: {e}")),
        }
    }
    Ok(())
}

fn cmd_skeleton(
    input: &Path,
    directions: Option<&str>,
    undirected: bool,
    reverse_search: bool,
    output: Option<PathBuf>,
    format: Format,
    check: bool,
) -> Result<u8> {
    let job = load_job(input)?;
    let oracle = build_oracle(&job.polytope)?;
    let dirs = resolve_directions(&job.polytope, directions, job.directions.as_ref(), undirected)?;

    let reverse = reverse_search || job.mode.as_deref() == Some("reverse-search");
    let output = output.or(job.output);
    let format = match job.format.as_deref() {
        Some("dot") if format == Format::Json => Format::Dot,
        _ => format,
    };

    let graph = if reverse {
        let order = SearchOrder::new(edgeskel::exact::ones(oracle.ambient_dim()));
        if output.is_none() && format == Format::Json {
            // no file requested: stream V/E lines live instead
            let stdout = std::io::stdout();
            let mut sink = LineSink::new(stdout.lock());
            rs_edge_skeleton(oracle.as_ref(), &dirs, &order, &mut sink)?;
            return Ok(0);
        }
        let mut sink = CollectSink::default();
        rs_edge_skeleton(oracle.as_ref(), &dirs, &order, &mut sink)?;
        sink.into_graph()?
    } else {
        edge_skeleton(oracle.as_ref(), &dirs)?
    };

    let text = render(&graph, format)?;
    write_output(&text, output.as_deref())?;

    if check {
        if let Err(message) = run_checks(&graph) {
            eprintln!("{message}");
            return Ok(2);
        }
    }
    Ok(0)
}

fn cmd_directions(input: &Path, output: Option<&Path>) -> Result<u8> {
    let job = load_job(input)?;
    let dirs = match job.directions.as_ref() {
        Some(ds) => directions_from_spec(&job.polytope, ds, false)?,
        None => auto_directions(&job.polytope)?,
    };
    #[derive(Serialize)]
    struct DirectionsJson {
        directions: Vec<Vec<String>>,
        source: String,
    }
    let json = serde_json::to_string(&DirectionsJson {
        directions: dirs
            .directions()
            .iter()
            .map(|v| v.iter().map(edgeskel::exact::format_scalar).collect())
            .collect(),
        source: format!("{:?}", dirs.source),
    })?;
    write_output(&format!("{json}\n"), output)?;
    Ok(0)
}

fn cmd_oracle(input: &Path, objective: &str) -> Result<u8> {
    let job = load_job(input)?;
    let oracle = build_oracle(&job.polytope)?;
    let c: Vector = objective
        .split(',')
        .map(|t| edgeskel::exact::parse_scalar(t).map_err(|e| anyhow!(e.to_string())))
        .collect::<Result<_>>()?;
    let vertex = oracle.optimize(&c)?;
    #[derive(Serialize)]
    struct OracleJson {
        vertex: Vec<String>,
    }
    let json = serde_json::to_string(&OracleJson {
        vertex: vertex.iter().map(edgeskel::exact::format_scalar).collect(),
    })?;
    println!("{json}");
    Ok(0)
}

fn explicit_from_spec(spec: &PolytopeSpec) -> Result<ExplicitPolytope> {
    match spec {
        PolytopeSpec::Vpolytope { points } => Ok(ExplicitPolytope::Points(parse_matrix(points)?)),
        PolytopeSpec::Hpolytope { a, b } => Ok(ExplicitPolytope::Inequalities {
            a: parse_matrix(a)?,
            b: b.iter().map(WireScalar::parse).collect::<Result<_>>()?,
        }),
        _ => bail!("verify needs an explicit vpolytope or hpolytope input"),
    }
}

fn cmd_verify(input: &Path, against: Option<&Path>) -> Result<u8> {
    let job = load_job(input)?;
    let explicit = explicit_from_spec(&job.polytope)?;
    match against {
        None => {
            let graph = bf_skeleton(&explicit)?;
            let json = serde_json::to_string(&SkeletonJson::from_graph(&graph))?;
            println!("{json}");
            Ok(0)
        }
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("cannot read {}", path.display()))?;
            #[derive(Deserialize)]
            struct SkeletonIn {
                vertices: Vec<Vec<WireScalar>>,
                edges: Vec<(usize, usize)>,
            }
            let parsed: SkeletonIn = serde_json::from_str(&text)?;
            let vertices = parse_matrix(&parsed.vertices)?;
            let dimension = if vertices.is_empty() {
                0
            } else {
                edgeskel::linalg::affine_rank(&vertices)?
            };
            let graph = SkeletonGraph {
                vertices,
                edges: parsed.edges,
                dimension,
            };
            let report = cross_check(&explicit, &graph)?;
            println!("{report}");
            Ok(if report.ok() { 0 } else { 1 })
        }
    }
}

fn run() -> Result<u8> {
    let cli = Cli::parse();
    match cli.command {
        Command::Skeleton {
            input,
            directions,
            undirected,
            reverse_search,
            output,
            format,
            check,
            threads,
        } => {
            if let Some(n) = threads {
                edgeskel::configure_threads(n);
            }
            cmd_skeleton(
                &input,
                directions.as_deref(),
                undirected,
                reverse_search,
                output,
                format,
                check,
            )
        }
        Command::Directions { input, output } => cmd_directions(&input, output.as_deref()),
        Command::Oracle { input, objective } => cmd_oracle(&input, &objective),
        Command::Verify {
            input,
            against,
            threads,
        } => {
            if let Some(n) = threads {
                edgeskel::configure_threads(n);
            }
            cmd_verify(&input, against.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
