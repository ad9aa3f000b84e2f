//! The `starpcg` command line.
//!
//! [`run_cli`] does all the work and returns the exit code with the text to
//! print, so the binary is a thin wrapper and tests can call it in-process.
//!
//! Exit codes: 0 success, 1 invalid certificate, 2 parse or usage error,
//! 3 resource limit.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use starpcg::census::all_labeled_graphs;
use starpcg::constructors::{
    acyclic_witness, caterpillar_witness_with, lobster_witness_with, path_witness,
};
use starpcg::format::{parse_graph, GraphFormat};
use starpcg::json::{certificate_to_json, witness_from_annotated, witness_to_json_pretty};
use starpcg::operations::{
    add_false_twins, add_isolated, add_pendants, add_true_twins, add_universal, complement_witness,
    OpReport,
};
use starpcg::rational::{denominator_lcm, parse_rational};
use starpcg::solver::{is_star_k_with, star_number_with, Mode, Outcome, SolverOptions};
use starpcg::transforms::{mirror, normalize};
use starpcg::{
    canonicalize, check_normal_form, classify_free, verify, Error, Graph, Interval, IntervalSet,
    Rational, Witness,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

const EDGELESS_NOTE: &str =
    "note: edgeless graph; the witness uses 0 intervals and gamma is reported as max(k, 1)";

#[derive(Parser, Debug)]
#[command(
    name = "starpcg",
    version,
    about = "Build, transform and check star-k-PCG witnesses"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Graph input format; by default taken from the file extension.
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,

    /// Also write the resulting witness JSON to this file.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Scale emitted witnesses by the LCM of all denominators.
    #[arg(long, global = true)]
    integerize: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Graph6,
    EdgeList,
}

impl From<FormatArg> for GraphFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Graph6 => GraphFormat::Graph6,
            FormatArg::EdgeList => GraphFormat::EdgeList,
        }
    }
}

#[derive(Args, Debug)]
struct WitnessArg {
    /// Witness JSON file, or `-` for standard input.
    #[arg(long)]
    witness: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a witness against its graph.
    Verify(WitnessArg),
    /// Merge removable interval gaps and tighten intervals.
    Canonicalize(WitnessArg),
    /// Report the freeness class and normal-form status.
    Classify(WitnessArg),
    /// Exact star number, or feasibility at a given k.
    Solve {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value = "any", value_parser = parse_mode)]
        mode: Mode,
        /// Node budget; defaults to STARPCG_BUDGET or 10^7.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Apply a graph operation to a witness.
    Op {
        #[arg(value_enum)]
        kind: OpKind,
        #[command(flatten)]
        witness: WitnessArg,
        /// Comma-separated anchor vertices for `pendant`.
        #[arg(long, value_delimiter = ',')]
        anchors: Vec<usize>,
        /// Vertex to copy for the twin operations.
        #[arg(long)]
        vertex: Option<usize>,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Build a witness for a tree family.
    Construct {
        #[arg(value_enum)]
        family: Family,
        #[arg(long, conflicts_with = "n", required_unless_present = "n")]
        graph: Option<PathBuf>,
        /// Use the path on N vertices.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Reflect weights and intervals about a center.
    Mirror {
        #[command(flatten)]
        witness: WitnessArg,
        /// Center c; defaults to the library's choice.
        #[arg(long)]
        center: Option<String>,
    },
    /// Bring a witness into normal form.
    Normalize(WitnessArg),
    /// Star numbers of all labeled graphs on N vertices.
    Census {
        #[arg(long)]
        n: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum OpKind {
    Isolated,
    Universal,
    Pendant,
    FalseTwin,
    TrueTwin,
    Complement,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Family {
    Path,
    Caterpillar,
    Lobster,
    Forest,
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failures carry their exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::Graph(_) | Error::Structure(_) | Error::Argument(_) => {
                EXIT_USAGE
            }
            Error::Resource(_) => EXIT_RESOURCE,
            Error::InvalidWitness(_) | Error::Internal(_) => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type CmdResult = Result<i32, Failure>;

/// Runs one invocation. `argv` excludes the program name.
pub fn run_cli<I, S>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args = std::iter::once("starpcg".to_string()).chain(argv.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return (code, e.to_string());
        }
    };
    let mut out = String::new();
    match execute(&cli, &mut out) {
        Ok(code) => (code, out),
        Err(f) => {
            let _ = writeln!(out, "error: {}", f.message);
            (f.code, out)
        }
    }
}

fn execute(cli: &Cli, out: &mut String) -> CmdResult {
    match &cli.command {
        Command::Verify(a) => {
            let w = read_witness(&a.witness)?;
            let report = verify(&w);
            let _ = writeln!(out, "{report}");
            Ok(if report.valid { EXIT_OK } else { EXIT_INVALID })
        }
        Command::Canonicalize(a) => {
            let w = read_witness(&a.witness)?;
            let c = canonicalize(&w)?;
            let _ = writeln!(out, "k: {} -> {}", w.k(), c.k());
            emit(cli, out, &c)
        }
        Command::Classify(a) => {
            let w = read_witness(&a.witness)?;
            let class = classify_free(&w)?;
            let nf = check_normal_form(w.weights());
            let _ = writeln!(out, "k: {}", w.k());
            let _ = writeln!(out, "free_class: {class}");
            if nf.is_normal {
                let _ = writeln!(out, "normal_form: yes");
            } else {
                let list: Vec<String> = nf.violators.iter().map(ToString::to_string).collect();
                let _ = writeln!(out, "normal_form: no (violators: {})", list.join(", "));
            }
            Ok(EXIT_OK)
        }
        Command::Solve {
            graph,
            k,
            mode,
            budget,
            threads,
        } => {
            let g = read_graph(graph, cli.format)?;
            let mut opts = SolverOptions::default();
            if let Some(b) = budget {
                opts.budget = *b;
            }
            opts.threads = *threads;
            solve(cli, out, &g, *k, *mode, &opts)
        }
        Command::Op {
            kind,
            witness,
            anchors,
            vertex,
            count,
        } => {
            let w = read_witness(&witness.witness)?;
            let need_vertex = || vertex.ok_or_else(|| usage("twin operations need --vertex"));
            let (res, report) = match kind {
                OpKind::Isolated => add_isolated(&w)?,
                OpKind::Universal => add_universal(&w)?,
                OpKind::Pendant => {
                    if anchors.is_empty() {
                        return Err(usage("pendant needs --anchors"));
                    }
                    add_pendants(&w, anchors)?
                }
                OpKind::FalseTwin => add_false_twins(&w, need_vertex()?, *count)?,
                OpKind::TrueTwin => add_true_twins(&w, need_vertex()?, *count)?,
                OpKind::Complement => complement_witness(&w)?,
            };
            write_report(out, &report);
            emit(cli, out, &res)
        }
        Command::Construct { family, graph, n } => {
            let g = match (graph, n) {
                (Some(path), _) => read_graph(path, cli.format)?,
                (None, Some(n)) => Graph::path(*n)?,
                (None, None) => return Err(usage("construct needs --graph or --n")),
            };
            let opts = SolverOptions::default();
            let w = match family {
                Family::Path => construct_path(&g)?,
                Family::Caterpillar => caterpillar_witness_with(&g, &opts)?,
                Family::Lobster => {
                    let (w, report) = lobster_witness_with(&g, &opts)?;
                    write_report(out, &report);
                    w
                }
                Family::Forest => {
                    let (w, report) = acyclic_witness(&g)?;
                    write_report(out, &report);
                    w
                }
            };
            emit(cli, out, &w)
        }
        Command::Mirror { witness, center } => {
            let w = read_witness(&witness.witness)?;
            let c = center.as_deref().map(parse_rational).transpose()?;
            let m = mirror(&w, c)?;
            emit(cli, out, &m)
        }
        Command::Normalize(a) => {
            let w = read_witness(&a.witness)?;
            let m = normalize(&w)?;
            emit(cli, out, &m)
        }
        Command::Census { n } => census(out, *n),
    }
}

fn construct_path(g: &Graph) -> Result<Witness, Failure> {
    let n = g.n();
    if *g != Graph::path(n)? {
        return Err(usage(
            "construct path expects the path 0-1-...-(n-1); use caterpillar for relabeled paths",
        ));
    }
    Ok(path_witness(n)?)
}

fn solve(
    cli: &Cli,
    out: &mut String,
    g: &Graph,
    k: Option<usize>,
    mode: Mode,
    opts: &SolverOptions,
) -> CmdResult {
    if let Some(k) = k {
        let cert = is_star_k_with(g, k, mode, opts)?;
        let doc = serde_json::to_string_pretty(&certificate_to_json(&cert))
            .expect("json values serialize");
        match &cert.outcome {
            Outcome::Witness(w) => {
                let _ = writeln!(
                    out,
                    "feasible: k = {k}, mode = {mode}, nodes = {}",
                    cert.nodes_explored
                );
                emit(cli, out, w)
            }
            Outcome::Infeasible => {
                let _ = writeln!(
                    out,
                    "infeasible: k = {k}, mode = {mode}, nodes = {}",
                    cert.nodes_explored
                );
                let _ = writeln!(out, "{doc}");
                Ok(EXIT_OK)
            }
        }
    } else {
        let (k, w) = match mode {
            Mode::Any => star_number_with(g, None, opts)?,
            _ => smallest_in_mode(g, mode, opts)?,
        };
        let gamma = k.max(1);
        let label = if mode == Mode::Any {
            "gamma".to_string()
        } else {
            format!("gamma ({mode})")
        };
        let _ = writeln!(out, "{label}: {gamma}");
        if k == 0 {
            let _ = writeln!(out, "{EDGELESS_NOTE}");
        }
        if mode == Mode::Any {
            let _ = writeln!(out, "threshold number upper bound: {}", 2 * gamma);
        }
        emit(cli, out, &w)
    }
}

fn smallest_in_mode(
    g: &Graph,
    mode: Mode,
    opts: &SolverOptions,
) -> Result<(usize, Witness), Failure> {
    if g.is_edgeless() {
        return Ok(star_number_with(g, None, opts)?);
    }
    for k in 1..=g.edge_count() {
        if let Outcome::Witness(w) = is_star_k_with(g, k, mode, opts)?.outcome {
            return Ok((k, w));
        }
    }
    Err(Failure {
        code: EXIT_INVALID,
        message: format!(
            "no {mode} witness with at most {} intervals",
            g.edge_count()
        ),
    })
}

fn census(out: &mut String, n: usize) -> CmdResult {
    let opts = SolverOptions::default();
    let graphs: Vec<Graph> = all_labeled_graphs(n)?.collect();
    let mut gammas = Vec::with_capacity(graphs.len());
    let mut violations = 0usize;
    for g in &graphs {
        let (k, w) = star_number_with(g, None, &opts)?;
        if !verify(&w).valid || (!g.is_edgeless() && k > g.edge_count()) {
            violations += 1;
            let _ = writeln!(out, "bad witness or bound for {g:?}");
        }
        gammas.push(k.max(1));
    }
    // Graphs are ordered by edge mask, so the complement sits at the mirrored index.
    let last = graphs.len() - 1;
    let mut pairs = 0usize;
    for (i, &a) in gammas.iter().enumerate() {
        let b = gammas[last - i];
        if i <= last - i {
            pairs += 1;
        }
        if a.abs_diff(b) > 1 {
            violations += 1;
            let _ = writeln!(
                out,
                "complement bound fails for {:?}: {a} vs {b}",
                graphs[i]
            );
        }
    }
    let max = gammas.iter().copied().max().unwrap_or(1);
    let _ = writeln!(out, "graphs: {}", graphs.len());
    for k in 1..=max {
        let count = gammas.iter().filter(|&&g| g == k).count();
        let _ = writeln!(out, "gamma {k}: {count}");
    }
    let _ = writeln!(out, "complement pairs checked: {pairs}");
    if violations == 0 {
        let _ = writeln!(out, "all bounds hold");
        Ok(EXIT_OK)
    } else {
        let _ = writeln!(out, "violations: {violations}");
        Ok(EXIT_INVALID)
    }
}

fn write_report(out: &mut String, r: &OpReport) {
    let _ = writeln!(out, "op: {}", r.op);
    let _ = writeln!(out, "case: {}", r.case);
    let _ = writeln!(
        out,
        "k: {} -> {} (bound {})",
        r.k_before,
        r.k_after,
        r.k_bound()
    );
    if r.fallback_used {
        let _ = writeln!(out, "fallback: used");
    }
}

/// Prints the witness with its verification and writes `--output`.
fn emit(cli: &Cli, out: &mut String, w: &Witness) -> CmdResult {
    let w = if cli.integerize {
        integerize(w)?
    } else {
        w.clone()
    };
    let json = witness_to_json_pretty(&w);
    let _ = writeln!(out, "{json}");
    let report = verify(&w);
    let _ = writeln!(out, "verification: {report}");
    if let Some(path) = &cli.output {
        fs::write(path, format!("{json}\n"))
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(if report.valid { EXIT_OK } else { EXIT_INVALID })
}

/// Multiplies weights and endpoints by the LCM of their denominators.
pub fn integerize(w: &Witness) -> Result<Witness, Error> {
    let endpoints = w.intervals().endpoints();
    let factor = Rational::from_integer(denominator_lcm(w.weights().iter().chain(endpoints)));
    let weights = w.weights().iter().map(|x| x * &factor).collect();
    let intervals = w
        .intervals()
        .iter()
        .map(|iv| Interval::new(iv.lo() * &factor, iv.hi() * &factor))
        .collect::<Result<Vec<_>, _>>()?;
    Witness::new(w.graph().clone(), weights, IntervalSet::new(intervals)?)
}

fn read_text(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
            .map_err(|e| usage(format!("cannot read standard input: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

/// Accepts bare witness JSON or the annotated output of another subcommand.
fn read_witness(path: &Path) -> Result<Witness, Failure> {
    Ok(witness_from_annotated(&read_text(path)?)?)
}

fn read_graph(path: &Path, format: Option<FormatArg>) -> Result<Graph, Failure> {
    let text = read_text(path)?;
    let format = match format {
        Some(f) => f.into(),
        None => detect_format(path, &text),
    };
    Ok(parse_graph(&text, format)?)
}

/// Extension first (`.g6`, `.graph6`; `.el`, `.edges`, `.txt`), then content:
/// an edge list starts with its `n <count>` header.
fn detect_format(path: &Path, text: &str) -> GraphFormat {
    match path.extension().and_then(|e| e.to_str()) {
        Some("g6" | "graph6") => GraphFormat::Graph6,
        Some("el" | "edges" | "edgelist" | "txt") => GraphFormat::EdgeList,
        _ => {
            let first = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty() && !l.starts_with('#'))
                .unwrap_or("");
            if first.starts_with("n ") || first == "n" {
                GraphFormat::EdgeList
            } else {
                GraphFormat::Graph6
            }
        }
    }
}
