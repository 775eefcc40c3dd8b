//! `walk`: classical and quantum walk sweeps, mixing analysis and
//! consistency checks on Cayley graph products.

mod output;
mod sweep;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use cayleywalk::graphs::build;
use cayleywalk::mixing::{
    average_mixing_check, exact_mixing_claims, instantaneous_mixing_search, MixingReport,
};
use cayleywalk::quantum::hamiltonian;
use cayleywalk::verify::{self, Suite, VerifyOptions};
use cayleywalk::{AmplitudeVector, GeneratorConvention, Graph, GraphSpec, HamiltonianConvention};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "walk",
    version,
    about = "Continuous-time walks on Cayley graph products"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the classical walk P(t) = e^{tH} P(0)
    Classical(SweepArgs),
    /// Sweep the quantum walk |psi_t> = e^{-iHt}|psi_0>
    Quantum(QuantumArgs),
    /// Search for uniform mixing
    Mixing(MixingArgs),
    /// Check closed forms, factorization and numerical invariants
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Convention {
    /// A - D
    Laplacian,
    /// A/k - I (classical) or A/k (quantum)
    Normalized,
    /// A
    Adjacency,
    /// (1/d) sum of A_i/k_i over the factors
    ProductAveraged,
}

impl Convention {
    fn name(self) -> &'static str {
        match self {
            Convention::Laplacian => "laplacian",
            Convention::Normalized => "normalized",
            Convention::Adjacency => "adjacency",
            Convention::ProductAveraged => "product-averaged",
        }
    }

    fn classical(self) -> Result<GeneratorConvention, Failure> {
        match self {
            Convention::Laplacian => Ok(GeneratorConvention::CombinatorialLaplacian),
            Convention::Normalized => Ok(GeneratorConvention::NormalizedLaplacian),
            other => Err(Failure::Usage(format!(
                "convention '{}' does not apply to classical walks (use laplacian or normalized)",
                other.name()
            ))),
        }
    }

    fn quantum(self) -> Result<HamiltonianConvention, Failure> {
        match self {
            Convention::Adjacency => Ok(HamiltonianConvention::Adjacency),
            Convention::Normalized => Ok(HamiltonianConvention::NormalizedAdjacency),
            Convention::ProductAveraged => Ok(HamiltonianConvention::ProductAveraged),
            Convention::Laplacian => Err(Failure::Usage(
                "convention 'laplacian' does not apply to quantum walks".into(),
            )),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Csv,
    Json,
}

#[derive(Args)]
struct SweepArgs {
    /// Graph spec as inline JSON, or @path to a JSON file
    #[arg(long)]
    graph: String,
    /// Defaults to laplacian for classical and normalized for quantum sweeps
    #[arg(long, value_enum)]
    convention: Option<Convention>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    t_min: f64,
    #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
    t_max: f64,
    /// Number of rows; the grid includes both endpoints
    #[arg(long, default_value_t = 101)]
    steps: usize,
    /// Starting vertex
    #[arg(long, default_value_t = 0)]
    start: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write to this file instead of standard output
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct QuantumArgs {
    #[command(flatten)]
    sweep: SweepArgs,
    /// Append real and imaginary amplitude columns
    #[arg(long)]
    amplitudes: bool,
}

#[derive(Args)]
struct MixingArgs {
    /// Graph spec as inline JSON, or @path to a JSON file
    #[arg(long, required_unless_present = "claims")]
    graph: Option<String>,
    #[arg(long, value_enum, default_value = "normalized")]
    convention: Convention,
    #[arg(long, default_value_t = 200.0)]
    t_max: f64,
    /// Coarse grid points before refinement
    #[arg(long, default_value_t = 20_000)]
    steps: usize,
    #[arg(long, default_value_t = 0)]
    start: usize,
    #[arg(long, default_value_t = 1e-6)]
    epsilon: f64,
    /// Check the time-averaged distribution instead of searching
    #[arg(long, conflicts_with = "claims")]
    average: bool,
    /// Run the built-in exact-mixing survey
    #[arg(long)]
    claims: bool,
    /// Include every evaluated (t, tv) pair
    #[arg(long)]
    trace: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run one suite: closedforms, factorization or hygiene
    #[arg(long)]
    only: Option<String>,
    /// Override every per-check tolerance
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long, default_value_t = 6)]
    max_n: usize,
    #[arg(long, default_value_t = 3)]
    max_d: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: ReportFormat,
    #[arg(long)]
    output: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Invalid(String),
    Verification(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Invalid(_) => 2,
            Failure::Verification(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Invalid(m) | Failure::Verification(m) => m,
        }
    }
}

impl From<cayleywalk::Error> for Failure {
    fn from(e: cayleywalk::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

fn read_graph(arg: &str) -> Result<(GraphSpec, Graph), Failure> {
    let text = match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| Failure::Invalid(format!("cannot read graph file {path}: {e}")))?,
        None => arg.to_string(),
    };
    let spec: GraphSpec = serde_json::from_str(&text)
        .map_err(|e| Failure::Invalid(format!("invalid graph spec JSON: {e}")))?;
    let graph = build(&spec)?;
    Ok((spec, graph))
}

fn check_start(g: &Graph, start: usize) -> Result<(), Failure> {
    if start >= g.vertex_count() {
        return Err(Failure::Invalid(format!(
            "start vertex {start} out of range for a graph on {} vertices",
            g.vertex_count()
        )));
    }
    Ok(())
}

fn emit(text: &str, path: Option<&PathBuf>) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text)
            .map_err(|e| Failure::Invalid(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct SweepOutput<'a> {
    graph: &'a GraphSpec,
    convention: &'static str,
    #[serde(flatten)]
    sweep: &'a sweep::Sweep,
}

fn write_sweep(
    args: &SweepArgs,
    convention: Convention,
    spec: &GraphSpec,
    s: &sweep::Sweep,
) -> Result<(), Failure> {
    let text = match args.format {
        Format::Csv => output::sweep_csv(s),
        Format::Json => output::json(&SweepOutput {
            graph: spec,
            convention: convention.name(),
            sweep: s,
        }),
    };
    emit(&text, args.output.as_ref())
}

fn cmd_classical(args: &SweepArgs) -> Result<(), Failure> {
    let chosen = args.convention.unwrap_or(Convention::Laplacian);
    let convention = chosen.classical()?;
    let (spec, g) = read_graph(&args.graph)?;
    check_start(&g, args.start)?;
    let times = sweep::time_grid(args.t_min, args.t_max, args.steps)?;
    let s = sweep::classical(&g, convention, args.start, &times)?;
    write_sweep(args, chosen, &spec, &s)
}

fn cmd_quantum(args: &QuantumArgs) -> Result<(), Failure> {
    let a = &args.sweep;
    let chosen = a.convention.unwrap_or(Convention::Normalized);
    let convention = chosen.quantum()?;
    let (spec, g) = read_graph(&a.graph)?;
    check_start(&g, a.start)?;
    let times = sweep::time_grid(a.t_min, a.t_max, a.steps)?;
    let s = sweep::quantum(&g, convention, a.start, &times, args.amplitudes)?;
    write_sweep(a, chosen, &spec, &s)
}

#[derive(Serialize)]
struct SearchOutput<'a> {
    graph: &'a GraphSpec,
    convention: &'static str,
    start: usize,
    t_max: f64,
    grid_points: usize,
    #[serde(flatten)]
    report: &'a MixingReport,
}

#[derive(Serialize)]
struct AverageOutput<'a> {
    graph: &'a GraphSpec,
    convention: &'static str,
    start: usize,
    #[serde(flatten)]
    average: &'a cayleywalk::mixing::AverageMixing,
}

fn cmd_mixing(args: &MixingArgs) -> Result<(), Failure> {
    if args.claims {
        let claims = exact_mixing_claims()?;
        emit(&output::json(&claims), args.output.as_ref())?;
        let failed: Vec<_> = claims
            .iter()
            .filter(|c| !c.verified)
            .map(|c| c.claim.as_str())
            .collect();
        if !failed.is_empty() {
            return Err(Failure::Verification(format!(
                "unverified claims: {}",
                failed.join("; ")
            )));
        }
        return Ok(());
    }
    let graph_arg = args
        .graph
        .as_deref()
        .ok_or_else(|| Failure::Usage("--graph is required unless --claims is given".into()))?;
    let convention = args.convention.quantum()?;
    let (spec, g) = read_graph(graph_arg)?;
    check_start(&g, args.start)?;
    let h = hamiltonian(&g, convention)?;
    let psi0 = AmplitudeVector::basis(g.vertex_count(), args.start)?;
    let text = if args.average {
        let average = average_mixing_check(&h, &psi0)?;
        output::json(&AverageOutput {
            graph: &spec,
            convention: args.convention.name(),
            start: args.start,
            average: &average,
        })
    } else {
        let mut report =
            instantaneous_mixing_search(&h, &psi0, args.t_max, args.steps, args.epsilon)?;
        if !args.trace {
            report = report.without_trace();
        }
        output::json(&SearchOutput {
            graph: &spec,
            convention: args.convention.name(),
            start: args.start,
            t_max: args.t_max,
            grid_points: args.steps,
            report: &report,
        })
    };
    emit(&text, args.output.as_ref())
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), Failure> {
    let only = args
        .only
        .as_deref()
        .map(str::parse::<Suite>)
        .transpose()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let options = VerifyOptions {
        only,
        tolerance: args.tolerance,
        max_n: args.max_n,
        max_d: args.max_d,
    };
    let report = verify::run(&options)?;
    let text = match args.format {
        ReportFormat::Text => output::verify_text(&report),
        ReportFormat::Csv => output::verify_csv(&report),
        ReportFormat::Json => output::json(&report),
    };
    emit(&text, args.output.as_ref())?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "{} of {} checks failed",
            report.failures().count(),
            report.checks.len()
        )))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match &cli.command {
        Command::Classical(args) => cmd_classical(args),
        Command::Quantum(args) => cmd_quantum(args),
        Command::Mixing(args) => cmd_mixing(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("walk: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
