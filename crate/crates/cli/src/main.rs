//! `subcubic`: build the extremal families, compute spectral radii and
//! bounds, run exhaustive searches and print the limit table.
//!
//! Exit status: 0 when every requested check passes, 1 when a check fails,
//! 2 for usage and input errors.

mod output;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use subcubic::bounds::{bound_report, lemma5_bounds};
use subcubic::constructions::{b_graph, FamilySpec};
use subcubic::enumerate::{
    extremal_search_with_workers, generate_with_workers, Objective, SearchSpec,
};
use subcubic::graph::{graph6_decode, graph6_encode, parse_edge_list, write_edge_list};
use subcubic::spectral::{spectral_radius, DEFAULT_TOL};
use subcubic::tridiagonal::{
    m_least_eigenvalue_closed, m_matrix, tridiag_eigenvalues_numeric, willms_eigenvalues,
    TridiagSpec,
};
use subcubic::{enumerate::verify_extremal_structure, Error, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Graph6,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "subcubic",
    version,
    about = "Spectral radius of irregular bipartite graphs"
)]
struct Cli {
    /// Convergence tolerance for eigenvalue computations.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for exhaustive search (0 = available parallelism).
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a named graph: `path N`, `K A B`, `H N DELTA` or `B N`.
    Construct {
        family: String,
        #[arg(num_args = 1..=2, required = true)]
        params: Vec<usize>,
    },
    /// Spectral radius, Perron vector and residual.
    Spectral(GraphInput),
    /// Eigenvalues of a uniform tridiagonal matrix, checked against the
    /// closed form when `alpha = d` and `beta = 0`.
    Tridiag(TridiagArgs),
    /// Every applicable gap bound for one or more graphs.
    Bounds(GraphInput),
    /// Exhaustive extremal search over connected bipartite graphs.
    Search(SearchArgs),
    /// n²(3 − ρ(B_n)) against its bracket, ending with π².
    LimitTable {
        #[arg(default_values_t = [64usize, 128, 256, 512, 1024])]
        n: Vec<usize>,
    },
    /// Structure certificate of a candidate extremal graph.
    Verify {
        #[command(flatten)]
        input: GraphInput,
        /// Maximum degree to check against (defaults to the graph's).
        #[arg(long)]
        max_degree: Option<usize>,
    },
}

#[derive(Debug, Args)]
struct GraphInput {
    /// Graph in graph6 format; may be repeated.
    #[arg(long)]
    graph6: Vec<String>,
    /// Edge-list file: a "n m" header, then one "u v" line per edge.
    #[arg(long)]
    edges: Option<PathBuf>,
    /// Named family: path, K, H or B.
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// Maximum degree for H, second part size for K.
    #[arg(long)]
    delta: Option<usize>,
}

#[derive(Debug, Args)]
struct TridiagArgs {
    /// Use M_n instead of a uniform matrix.
    #[arg(long, conflicts_with_all = ["n", "b", "d", "alpha", "beta", "negative_off"])]
    m: Option<usize>,
    #[arg(long, required_unless_present = "m")]
    n: Option<usize>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    b: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    d: f64,
    /// Defaults to `d`.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    beta: f64,
    /// Off-diagonal entries `−d` instead of `d`.
    #[arg(long)]
    negative_off: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    MaxRho,
    MinAc,
}

#[derive(Debug, Args)]
struct SearchArgs {
    n: usize,
    delta: usize,
    #[arg(value_enum, default_value_t = ObjectiveArg::MaxRho)]
    objective: ObjectiveArg,
    /// Restrict to k-regular graphs (required by min-ac).
    #[arg(long)]
    regular: Option<usize>,
    /// Allow maximum degree below `delta`.
    #[arg(long)]
    at_most: bool,
    /// Print every generated graph (graph6 format) instead of the winner.
    #[arg(long)]
    population: bool,
}

enum Failure {
    Check(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NoConvergence { .. } => Failure::Check(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

struct Sink {
    format: Option<Format>,
    out: Box<dyn Write>,
}

impl Sink {
    fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    fn value<T: Serialize>(&mut self, data: &T, default: Format) -> Result<(), Failure> {
        let v = output::to_value(data);
        output::emit(&v, self.format_or(default), &mut self.out).map_err(Failure::Usage)
    }

    fn lines(&mut self, lines: &[String]) -> Result<(), Failure> {
        for line in lines {
            writeln!(self.out, "{line}").map_err(|e| Failure::Usage(e.to_string()))?;
        }
        Ok(())
    }
}

fn family_graph(family: &str, params: &[usize]) -> Result<Graph, Failure> {
    let spec = match (family.to_ascii_lowercase().as_str(), params) {
        ("path" | "p", [n]) => FamilySpec::Path { n: *n },
        ("k" | "complete-bipartite", [a, b]) => FamilySpec::CompleteBipartite { a: *a, b: *b },
        ("h", [n, delta]) => FamilySpec::H { n: *n, delta: *delta },
        ("b", [n]) => FamilySpec::B { n: *n },
        _ => {
            return Err(Failure::Usage(format!(
                "unknown family or wrong parameters: {family} {params:?} (expected path N, K A B, H N DELTA or B N)"
            )))
        }
    };
    Ok(spec.build()?)
}

impl GraphInput {
    fn graphs(&self) -> Result<Vec<Graph>, Failure> {
        let mut graphs = Vec::new();
        for text in &self.graph6 {
            graphs.push(graph6_decode(text)?);
        }
        if let Some(path) = &self.edges {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            graphs.push(parse_edge_list(&text)?);
        }
        if let Some(family) = &self.family {
            let n = self
                .n
                .ok_or_else(|| Failure::Usage("--family needs --n".into()))?;
            let params: Vec<usize> = std::iter::once(n).chain(self.delta).collect();
            graphs.push(family_graph(family, &params)?);
        }
        if graphs.is_empty() {
            return Err(Failure::Usage(
                "no input graph: use --graph6, --edges or --family".into(),
            ));
        }
        Ok(graphs)
    }
}

fn construct(sink: &mut Sink, family: &str, params: &[usize]) -> Outcome {
    let g = family_graph(family, params)?;
    match sink.format_or(Format::Graph6) {
        Format::Graph6 => sink.lines(&[graph6_encode(&g)])?,
        Format::Text => sink.lines(&[write_edge_list(&g).trim_end().to_string()])?,
        format => {
            let edges: Vec<(usize, usize)> = g.edges().collect();
            let data =
                json!({"graph6": graph6_encode(&g), "n": g.order(), "m": g.size(), "edges": edges});
            sink.value(&data, format)?;
        }
    }
    Ok(true)
}

fn spectral(sink: &mut Sink, input: &GraphInput, tol: f64) -> Outcome {
    let mut results = Vec::new();
    for g in input.graphs()? {
        let r = spectral_radius(&g, tol)?;
        results.push(json!({
            "graph6": graph6_encode(&g),
            "n": g.order(),
            "m": g.size(),
            "max_degree": g.max_degree(),
            "rho": r.rho,
            "gap": g.max_degree() as f64 - r.rho,
            "residual": r.residual,
            "iterations": r.iterations,
            "w_hat": r.w_hat,
            "w_check": r.w_check,
            "x": r.x,
        }));
    }
    let data = if results.len() == 1 {
        results.remove(0)
    } else {
        Value::Array(results)
    };
    sink.value(&data, Format::Text)?;
    Ok(true)
}

fn tridiag(sink: &mut Sink, args: &TridiagArgs, tol: f64) -> Outcome {
    let (spec, least_closed) = match args.m {
        Some(n) => (m_matrix(n)?, Some(m_least_eigenvalue_closed(n)?)),
        None => {
            let n = args.n.expect("clap requires n without m");
            let mut spec =
                TridiagSpec::uniform(n, args.b, args.d, args.alpha.unwrap_or(args.d), args.beta)?;
            if args.negative_off {
                let off = vec![-args.d; n.saturating_sub(1)];
                spec = TridiagSpec::new(
                    spec.b(),
                    spec.d(),
                    spec.alpha(),
                    spec.beta(),
                    off.clone(),
                    off,
                )?;
            }
            (spec, None)
        }
    };
    let numeric = tridiag_eigenvalues_numeric(&spec, tol.min(1e-13))?;
    let closed = willms_eigenvalues(&spec).ok();
    let max_error = closed.as_ref().map(|c| {
        c.iter()
            .zip(&numeric)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    });
    let least_error = least_closed.map(|l| (l - numeric[0]).abs());
    let ok = max_error.is_none_or(|e| e <= 1e-10) && least_error.is_none_or(|e| e <= 1e-10);
    let data = json!({
        "n": spec.order(),
        "b": spec.b(),
        "d": spec.d(),
        "alpha": spec.alpha(),
        "beta": spec.beta(),
        "eigenvalues": numeric,
        "closed_form": closed,
        "max_abs_error": max_error,
        "least_closed_form": least_closed,
        "passed": ok,
    });
    sink.value(&data, Format::Text)?;
    Ok(ok)
}

fn bounds(sink: &mut Sink, input: &GraphInput, tol: f64) -> Outcome {
    let mut reports = Vec::new();
    for g in input.graphs()? {
        reports.push(bound_report(&g, tol)?);
    }
    let ok = reports.iter().all(|r| r.all_satisfied());
    sink.value(&reports, Format::Text)?;
    Ok(ok)
}

fn search(sink: &mut Sink, args: &SearchArgs, workers: usize) -> Outcome {
    let mut spec = SearchSpec::irregular_bipartite(args.n, args.delta);
    spec.max_degree_exact = !args.at_most;
    if let Some(k) = args.regular {
        spec.regularity = Some(k);
        spec.require_irregular = false;
    }
    if let ObjectiveArg::MinAc = args.objective {
        if args.regular.is_none() {
            return Err(Failure::Usage(
                "min-ac is only available with --regular K".into(),
            ));
        }
        spec.objective = Objective::MinAlgebraicConnectivity;
    }
    if args.population {
        let graphs = generate_with_workers(&spec, workers)?;
        sink.lines(&graphs.iter().map(graph6_encode).collect::<Vec<_>>())?;
        return Ok(true);
    }
    let result = extremal_search_with_workers(&spec, workers)?;
    let ok = result.certificates.iter().all(|c| c.passed);
    match sink.format_or(Format::Json) {
        Format::Graph6 => {
            let mut lines = vec![result.winner_graph6.clone()];
            lines.extend(result.tie_set.iter().map(|t| t.graph6.clone()));
            sink.lines(&lines)?;
        }
        Format::Csv => {
            let row = json!({
                "n": spec.n,
                "delta": spec.delta_max,
                "winner_graph6": result.winner_graph6,
                "objective_value": result.objective_value,
                "runner_up_value": result.runner_up_value,
                "ties": result.tie_set.len(),
                "graphs_considered": result.graphs_considered,
                "certificates_passed": ok,
            });
            sink.value(&row, Format::Csv)?;
        }
        format => {
            let mut v = output::to_value(&result);
            v["unique"] = Value::Bool(result.is_unique());
            output::emit(&v, format, &mut sink.out).map_err(Failure::Usage)?;
        }
    }
    Ok(ok)
}

fn limit_table(sink: &mut Sink, ns: &[usize], tol: f64) -> Outcome {
    if let Some(bad) = ns.iter().find(|&&n| n < 6) {
        return Err(Failure::Usage(format!(
            "limit-table needs n >= 6, got {bad}"
        )));
    }
    let mut rows = Vec::new();
    let mut ok = true;
    for &n in ns {
        let rho = spectral_radius(&b_graph(n)?, tol)?.rho;
        let nn = (n * n) as f64;
        let scaled = nn * (3.0 - rho);
        let (lower, upper, inside) = match lemma5_bounds(n) {
            Ok((lo, hi)) => {
                let inside = nn * lo <= scaled && scaled <= nn * hi;
                (Some(nn * lo), Some(nn * hi), Some(inside))
            }
            Err(_) => (None, None, None),
        };
        ok &= inside.unwrap_or(true);
        rows.push(json!({
            "n": n,
            "rho": rho,
            "scaled_gap": scaled,
            "scaled_lower": lower,
            "scaled_upper": upper,
            "in_bracket": inside,
        }));
    }
    rows.push(json!({
        "n": "pi^2",
        "rho": null,
        "scaled_gap": std::f64::consts::PI.powi(2),
        "scaled_lower": null,
        "scaled_upper": null,
        "in_bracket": null,
    }));
    sink.value(&rows, Format::Text)?;
    Ok(ok)
}

fn verify(sink: &mut Sink, input: &GraphInput, delta: Option<usize>) -> Outcome {
    let mut certificates = Vec::new();
    for g in input.graphs()? {
        certificates.push(verify_extremal_structure(
            &g,
            delta.unwrap_or(g.max_degree()),
        )?);
    }
    let ok = certificates.iter().all(|c| c.passed);
    if certificates.len() == 1 {
        sink.value(&certificates[0], Format::Json)?;
    } else {
        sink.value(&certificates, Format::Json)?;
    }
    Ok(ok)
}

fn run(cli: Cli) -> Outcome {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(Failure::Usage(format!(
            "--tol must be positive, got {}",
            cli.tol
        )));
    }
    let out: Box<dyn Write> = match &cli.out {
        Some(path) => Box::new(
            fs::File::create(path)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
        ),
        None => Box::new(std::io::stdout().lock()),
    };
    let mut sink = Sink {
        format: cli.format,
        out,
    };
    let result = match &cli.command {
        Command::Construct { family, params } => construct(&mut sink, family, params),
        Command::Spectral(input) => spectral(&mut sink, input, cli.tol),
        Command::Tridiag(args) => tridiag(&mut sink, args, cli.tol),
        Command::Bounds(input) => bounds(&mut sink, input, cli.tol),
        Command::Search(args) => search(&mut sink, args, cli.workers),
        Command::LimitTable { n } => limit_table(&mut sink, n, cli.tol),
        Command::Verify { input, max_degree } => verify(&mut sink, input, *max_degree),
    };
    sink.out
        .flush()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    result
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("subcubic: check failed");
            ExitCode::from(1)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("subcubic: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("subcubic: {msg}");
            ExitCode::from(2)
        }
    }
}
