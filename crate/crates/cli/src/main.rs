//! Batch front end over the laboratory crate: every census, audit and
//! embedding behind one binary with JSON/CSV reports and CI-friendly
//! exit codes (0 = all checks passed, 1 = violations found, 2 =
//! usage/parse/I-O error with a machine-readable reason on stderr).
//!
//! Reports are deterministic for a fixed invocation once the timestamp
//! header is suppressed with `--no-timestamp`; worker counts come from
//! `VC_GAP_LAB_THREADS` and never change any reported value.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use vc_gap_lab::charikar::{self, CharikarParams, CharikarSolution};
use vc_gap_lab::graph::{self, Graph};
use vc_gap_lab::isoperimetry::{self, IsoperimetryRecord, PoincareConstants};
use vc_gap_lab::metric::{self, FiniteMetric};
use vc_gap_lab::pentagon::{self, PentagonalCharikarReport};
use vc_gap_lab::relaxations::{Tier, PENTAGONAL_SAMPLES};
use vc_gap_lab::{sdp_io, Error, Rat};

#[derive(Parser)]
#[command(
    name = "vc-gap-lab",
    version,
    about = "Vertex cover SDP gap laboratory: censuses, audits and embeddings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: RunFlags,
}

#[derive(Args)]
struct RunFlags {
    /// Feasibility tolerance for float-mode audits.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Seed mixed into sampling censuses (0 keeps the canonical stream).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the report (or exported instance) here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Report encoding.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Suppress the timestamp header so identical runs are byte-identical.
    #[arg(long, global = true)]
    no_timestamp: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// The implicit gap construction: tier audits and its l1 embedding.
    Charikar {
        #[command(subcommand)]
        cmd: CharikarCmd,
    },
    /// (2,3)-hypermetric censuses on metrics or the gap construction.
    Pentagonal {
        #[command(subcommand)]
        cmd: PentagonalCmd,
    },
    /// Generalized edge-isoperimetry censuses on the hypercube.
    Isoperimetry {
        #[command(subcommand)]
        cmd: IsoCmd,
    },
    /// The cube-plus-a-point Poincare inequality over symmetric sets.
    Poincare {
        #[command(subcommand)]
        cmd: PoincareCmd,
    },
    /// The one-variable minimum behind the Poincare prefactor.
    Lemma {
        #[command(subcommand)]
        cmd: LemmaCmd,
    },
    /// The squared-tensor metric and its distortion lower bound.
    Tensor {
        #[command(subcommand)]
        cmd: TensorCmd,
    },
    /// Minimum-distortion l1 embeddings of finite metrics.
    Embed {
        #[command(subcommand)]
        cmd: EmbedCmd,
    },
    /// Exact graph quantities.
    Graph {
        #[command(subcommand)]
        cmd: GraphCmd,
    },
    /// Sparse SDP instance export and solution validation.
    Sdp {
        #[command(subcommand)]
        cmd: SdpCmd,
    },
}

#[derive(Subcommand)]
enum CharikarCmd {
    /// Audit the construction against constraint tiers.
    Verify {
        #[arg(long)]
        t: u32,
        #[arg(long)]
        n: u32,
        /// Comma-separated tiers (edge|standard, triangle, karakostas, pentagonal).
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "standard,triangle,karakostas,pentagonal"
        )]
        tiers: Vec<Tier>,
    },
    /// Emit the explicit l1 embedding and its distortion data.
    Embed {
        #[arg(long)]
        t: u32,
        #[arg(long)]
        n: u32,
    },
}

#[derive(Subcommand)]
enum PentagonalCmd {
    /// Minimum (2,3) slack over 5-subsets.
    Census {
        /// Metric JSON file ({"labels": [...], "dist": [[...]]}).
        #[arg(long, conflicts_with = "charikar", required_unless_present = "charikar")]
        metric: Option<PathBuf>,
        /// Audit the implicit construction instead: "T,N".
        #[arg(long)]
        charikar: Option<String>,
    },
}

#[derive(Subcommand)]
enum IsoCmd {
    /// Audit every subset (or every symmetric subset) of the n-cube.
    Census {
        #[arg(long)]
        n: u32,
        /// Only antipodally closed sets.
        #[arg(long)]
        symmetric: bool,
        /// Judge only sets of at most half the cube.
        #[arg(long)]
        restrict_small: bool,
    },
}

#[derive(Subcommand)]
enum PoincareCmd {
    /// Audit every symmetric subset of the n-cube.
    Census {
        #[arg(long)]
        n: u32,
    },
}

#[derive(Subcommand)]
enum LemmaCmd {
    /// Locate the minimum of the prefactor function on [1, 64].
    Scan {
        /// Coarse grid resolution before refinement.
        #[arg(long, default_value_t = 20_000)]
        grid: usize,
    },
}

#[derive(Subcommand)]
enum TensorCmd {
    /// Metric identities, negative type, and the distortion bound.
    Analyze {
        #[arg(long)]
        n: u32,
        /// Also solve the exact cut-cone LP for c1 (rational mode).
        #[arg(long)]
        exact_c1: bool,
    },
}

#[derive(Subcommand)]
enum EmbedCmd {
    /// Minimum l1 distortion of a metric via the cut-cone LP.
    C1 {
        /// Metric JSON file.
        #[arg(long)]
        metric: PathBuf,
        /// Solve in exact rational arithmetic.
        #[arg(long)]
        exact: bool,
    },
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Exact minimum vertex cover by branch and bound.
    Vc {
        /// Graph JSON file.
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum SdpCmd {
    /// Render a tier as a sparse SDP instance file.
    Export {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        tier: Tier,
    },
    /// Audit a solution file against a tier.
    Validate {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        tier: Tier,
        #[arg(long)]
        solution: PathBuf,
    },
}

// ------------------------------------------------------------- reporting ----

struct Report {
    body: Value,
    /// CSV lines when the command has a natural tabular form.
    table: Option<Vec<String>>,
    violations: bool,
    /// Raw artifact text that takes the --out slot instead of the
    /// report (`sdp export` writes the instance file there).
    artifact: Option<String>,
}

impl Report {
    fn new(body: Value, violations: bool) -> Self {
        Report {
            body,
            table: None,
            violations,
            artifact: None,
        }
    }
}

fn now_ms() -> u128 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis())
        .unwrap_or(0)
}

fn flatten_csv(value: &Value, path: String, out: &mut Vec<String>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let next = if path.is_empty() {
                    k.clone()
                } else {
                    format!("{path}.{k}")
                };
                flatten_csv(v, next, out);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten_csv(v, format!("{path}[{i}]"), out);
            }
        }
        leaf => out.push(format!("{path},{leaf}")),
    }
}

fn render(flags: &RunFlags, report: &Report) -> String {
    match flags.format {
        Format::Json => {
            let mut body = report.body.clone();
            if !flags.no_timestamp {
                if let Value::Object(map) = &mut body {
                    map.insert("generated_unix_ms".into(), json!(now_ms() as u64));
                }
            }
            let mut text =
                serde_json::to_string_pretty(&body).expect("reports always serialize");
            text.push('\n');
            text
        }
        Format::Csv => {
            let mut lines = Vec::new();
            if !flags.no_timestamp {
                lines.push(format!("# generated_unix_ms,{}", now_ms()));
            }
            match &report.table {
                Some(table) => lines.extend(table.iter().cloned()),
                None => flatten_csv(&report.body, String::new(), &mut lines),
            }
            let mut text = lines.join("\n");
            text.push('\n');
            text
        }
    }
}

/// Downstream `head`-style consumers close the pipe early; that is not
/// an error worth exit code 2.
fn write_stdout(text: &str) -> Result<(), Error> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Error::from(e)),
        _ => Ok(()),
    }
}

fn emit(flags: &RunFlags, report: &Report) -> Result<(), Error> {
    if let Some(artifact) = &report.artifact {
        match &flags.out {
            Some(path) => {
                fs::write(path, artifact)?;
                write_stdout(&render(flags, report))?;
            }
            None => write_stdout(artifact)?,
        }
        return Ok(());
    }
    let text = render(flags, report);
    match &flags.out {
        Some(path) => fs::write(path, text)?,
        None => write_stdout(&text)?,
    }
    Ok(())
}

// -------------------------------------------------------------- commands ----

fn threads() -> usize {
    std::env::var("VC_GAP_LAB_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&t| t >= 1)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
}

fn read(path: &PathBuf) -> Result<String, Error> {
    fs::read_to_string(path).map_err(Error::from)
}

fn run(cli: &Cli) -> Result<Report, Error> {
    let flags = &cli.flags;
    let workers = threads();
    match &cli.command {
        Command::Charikar {
            cmd: CharikarCmd::Verify { t, n, tiers },
        } => {
            let params = CharikarParams::<f64>::new(*t, *n)?;
            let gap = charikar::gap_report(&params);
            let reports = charikar::verify_construction(&params, tiers, flags.tol, workers)?;
            let violations = reports.iter().any(|r| !r.feasible);
            Ok(Report::new(
                json!({"command": "charikar-verify", "reports": reports, "gap": gap}),
                violations,
            ))
        }
        Command::Charikar {
            cmd: CharikarCmd::Embed { t, n },
        } => {
            let params = CharikarParams::<f64>::new(*t, *n)?;
            let embedding = charikar::explicit_l1_embedding(&CharikarSolution::new(params))?;
            Ok(Report::new(
                json!({"command": "charikar-embed", "embedding": embedding}),
                false,
            ))
        }
        Command::Pentagonal {
            cmd: PentagonalCmd::Census { metric, charikar },
        } => match (metric, charikar) {
            (Some(path), None) => {
                let m = FiniteMetric::<f64>::from_json_str(&read(path)?)?;
                let census = pentagon::pentagonal_census_seeded(&m, workers, flags.seed)?;
                let violations = census.min_slack < -flags.tol;
                Ok(Report::new(
                    json!({"command": "pentagonal-census", "mode": "metric", "census": census}),
                    violations,
                ))
            }
            (None, Some(spec)) => {
                let (t, n) = parse_tn(spec)?;
                let params = CharikarParams::<f64>::new(t, n)?;
                let census = pentagon::charikar_pentagonal_census_seeded(
                    &params,
                    workers,
                    PENTAGONAL_SAMPLES,
                    flags.seed,
                )?;
                let report = PentagonalCharikarReport::from_census(&census, flags.tol);
                let violations = !report.feasible;
                Ok(Report::new(
                    json!({"command": "pentagonal-census", "mode": "charikar", "report": report}),
                    violations,
                ))
            }
            _ => Err(Error::Invalid(
                "pass exactly one of --metric FILE or --charikar T,N".into(),
            )),
        },
        Command::Isoperimetry {
            cmd:
                IsoCmd::Census {
                    n,
                    symmetric,
                    restrict_small,
                },
        } => {
            let census =
                isoperimetry::census_generalized(*n, *symmetric, *restrict_small, workers)?;
            let violations = !census.violations.is_empty();
            let mut table = vec![IsoperimetryRecord::CSV_HEADER.to_string()];
            table.extend(census.violations.iter().map(|r| r.csv_row()));
            let mut report = Report::new(
                json!({
                    "command": "isoperimetry-census",
                    "n": n,
                    "symmetric": symmetric,
                    "restrict_small": restrict_small,
                    "census": census,
                }),
                violations,
            );
            report.table = Some(table);
            Ok(report)
        }
        Command::Poincare {
            cmd: PoincareCmd::Census { n },
        } => {
            let constants = PoincareConstants::standard();
            let census = isoperimetry::poincare_census(*n, &constants, workers)?;
            let violations = !census.violations.is_empty();
            Ok(Report::new(
                json!({
                    "command": "poincare-census",
                    "n": n,
                    "constants": constants,
                    "census": census,
                }),
                violations,
            ))
        }
        Command::Lemma {
            cmd: LemmaCmd::Scan { grid },
        } => {
            let constants = PoincareConstants::standard();
            let scan = isoperimetry::calculus_lemma_scan(*grid, &constants)?;
            Ok(Report::new(
                json!({"command": "lemma-scan", "constants": constants, "scan": scan}),
                false,
            ))
        }
        Command::Tensor {
            cmd: TensorCmd::Analyze { n, exact_c1 },
        } => {
            let constants = PoincareConstants::standard();
            let m = metric::tensor_metric::<f64>(*n, true)?;
            let triangles = metric::triangle_census(&m);
            let negative_type = metric::is_negative_type(&m, 0)?;
            let bound = if *n >= 2 {
                Some(metric::poincare_distortion_bound(*n, &constants)?)
            } else {
                None
            };
            let c1 = if *exact_c1 {
                let exact = metric::tensor_metric::<Rat>(*n, true)?;
                Some(metric::min_distortion_l1(&exact)?.to_json_value())
            } else {
                None
            };
            let violations = !triangles.violations.is_empty() || !negative_type;
            Ok(Report::new(
                json!({
                    "command": "tensor-analyze",
                    "n": n,
                    "points": m.size(),
                    "triangles": triangles,
                    "is_negative_type": negative_type,
                    "poincare_distortion_bound": bound,
                    "exact_c1": c1,
                }),
                violations,
            ))
        }
        Command::Embed {
            cmd: EmbedCmd::C1 { metric: path, exact },
        } => {
            let text = read(path)?;
            let report = if *exact {
                metric::min_distortion_l1(&FiniteMetric::<Rat>::from_json_str(&text)?)?
                    .to_json_value()
            } else {
                metric::min_distortion_l1(&FiniteMetric::<f64>::from_json_str(&text)?)?
                    .to_json_value()
            };
            Ok(Report::new(
                json!({"command": "embed-c1", "exact": exact, "report": report}),
                false,
            ))
        }
        Command::Graph {
            cmd: GraphCmd::Vc { input },
        } => {
            let g = Graph::from_json_str(&read(input)?)?;
            let cover = graph::min_vertex_cover(&g)?;
            Ok(Report::new(
                json!({
                    "command": "graph-vc",
                    "order": g.order(),
                    "edges": g.size(),
                    "vertex_cover": cover.size,
                    "cover_mask": format!("{:#x}", cover.mask),
                }),
                false,
            ))
        }
        Command::Sdp {
            cmd: SdpCmd::Export { graph, tier },
        } => {
            let g = Graph::from_json_str(&read(graph)?)?;
            let instance = sdp_io::SdpInstance::build(&g, *tier)?;
            let text = instance.render();
            let mut report = Report::new(
                json!({
                    "command": "sdp-export",
                    "tier": tier,
                    "rows": instance.emitted_rows(),
                    "census_constraints": instance.census_constraints(),
                    "points": instance.points,
                }),
                false,
            );
            report.artifact = Some(text);
            Ok(report)
        }
        Command::Sdp {
            cmd:
                SdpCmd::Validate {
                    graph,
                    tier,
                    solution,
                },
        } => {
            let g = Graph::from_json_str(&read(graph)?)?;
            let (sol, audit) = sdp_io::import_solution(&read(solution)?, &g, *tier, flags.tol)?;
            let violations = !audit.feasible;
            Ok(Report::new(
                json!({
                    "command": "sdp-validate",
                    "points": sol.points(),
                    "report": audit,
                }),
                violations,
            ))
        }
    }
}

fn parse_tn(spec: &str) -> Result<(u32, u32), Error> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::Invalid(format!(
            "expected \"T,N\" after --charikar, got {spec:?}"
        )));
    }
    let t = parts[0]
        .trim()
        .parse()
        .map_err(|_| Error::Invalid(format!("cannot read t from {:?}", parts[0])))?;
    let n = parts[1]
        .trim()
        .parse()
        .map_err(|_| Error::Invalid(format!("cannot read n from {:?}", parts[1])))?;
    Ok((t, n))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(report) => report,
        Err(e) => return fail(e),
    };
    if let Err(e) = emit(&cli.flags, &report) {
        return fail(e);
    }
    if report.violations {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn fail(e: Error) -> ExitCode {
    eprintln!("{}", json!({ "error": e.to_string() }));
    ExitCode::from(2)
}
