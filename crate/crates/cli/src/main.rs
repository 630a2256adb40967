mod commands;
mod io;
mod manifest;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use netcoherence::TraceMethod;

/// First-order coherence of noisy consensus networks.
#[derive(Debug, Parser)]
#[command(name = "netcoherence", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a network and write it as an edge list.
    Generate(GenerateArgs),
    /// Report coherence, bounds and basic statistics of an edge-list file.
    Analyze(AnalyzeArgs),
    /// Replicated coherence sweep over BA or HDRAN networks (long-format CSV).
    Sweep(SweepArgs),
    /// Exact closed-form values for the pseudofractal and 4-clique families.
    ClosedForm(ClosedFormArgs),
    /// Estimate coherence by simulating the noisy consensus dynamics.
    Simulate(SimulateArgs),
    /// Check Foster's theorem, the sum rule, the spectrum and the bounds.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Ba,
    Hdran,
    Pseudofractal,
    Clique4,
    Path,
    Cycle,
    Star,
    Complete,
    RingLattice,
    Torus,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Number of vertices.
    #[arg(long)]
    n: Option<usize>,
    /// Edges added per new vertex (ba).
    #[arg(long)]
    m: Option<usize>,
    /// Dimension (hdran, torus).
    #[arg(long)]
    d: Option<usize>,
    /// Iteration index (pseudofractal, clique4).
    #[arg(long)]
    g: Option<u32>,
    /// Neighbours per vertex (ring-lattice).
    #[arg(long)]
    k: Option<usize>,
    /// Side length (torus).
    #[arg(long)]
    side: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Size of the initial complete graph (ba).
    #[arg(long, default_value_t = netcoherence::generators::BA_SEED_CLIQUE)]
    seed_clique: usize,
    /// Output path, '-' for standard output.
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Spectrum,
    DenseInverse,
    DeflatedSolve,
}

impl From<Method> for TraceMethod {
    fn from(m: Method) -> TraceMethod {
        match m {
            Method::Spectrum => TraceMethod::Spectrum,
            Method::DenseInverse => TraceMethod::DenseInverse,
            Method::DeflatedSolve => TraceMethod::DeflatedSolve,
        }
    }
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    /// Edge-list file, '-' for standard input.
    input: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// How tr(L†) is computed.
    #[arg(long, value_enum, default_value_t = Method::Spectrum)]
    method: Method,
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepFamilyArg {
    Ba,
    Hdran,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    family: SweepFamilyArg,
    /// Comma-separated values of m (ba) or d (hdran).
    #[arg(long, value_delimiter = ',', required = true)]
    params: Vec<usize>,
    /// Comma-separated network sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 5)]
    replicas: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Method::DeflatedSolve)]
    method: Method,
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClosedFormFamilyArg {
    Pseudofractal,
    Clique4,
}

#[derive(Debug, Args)]
struct ClosedFormArgs {
    #[arg(long, value_enum)]
    family: ClosedFormFamilyArg,
    /// Largest iteration index in the table.
    #[arg(long, default_value_t = 12)]
    g_max: u32,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Add the commonly quoted pseudofractal coherence expression, which is
    /// half of R/(2N²), as an extra column.
    #[arg(long)]
    as_printed: bool,
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SchemeArg {
    #[value(alias = "exact_gaussian")]
    ExactGaussian,
    #[value(alias = "euler_maruyama")]
    EulerMaruyama,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// Edge-list file, '-' for standard input.
    input: String,
    #[arg(long, value_enum, default_value_t = SchemeArg::ExactGaussian)]
    scheme: SchemeArg,
    /// Time step; defaults to 0.1/λ_max (euler-maruyama) or 0.5/λ_1 (exact-gaussian).
    #[arg(long)]
    dt: Option<f64>,
    /// Defaults to ten mixing times, 10/λ_1.
    #[arg(long)]
    burn_in_steps: Option<u64>,
    #[arg(long, default_value_t = 100_000)]
    sample_steps: u64,
    #[arg(long, default_value_t = 10)]
    replicas: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    /// Edge-list file, '-' for standard input.
    input: String,
    /// Seed for the random vertex pairs checked against the sum rule.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "-")]
    out: String,
}

/// Failure classes, each with its own exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
    Numerical(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::Numerical(m) => m,
        }
    }
}

impl From<netcoherence::Error> for CliError {
    fn from(e: netcoherence::Error) -> CliError {
        use netcoherence::Error as E;
        match e {
            _ if e.is_numerical() => CliError::Numerical(e.to_string()),
            E::InvalidParameter(_) | E::InvalidArgument(_) | E::Capacity { .. } => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Data(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::Data(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Generate(a) => commands::generate(a),
        Command::Analyze(a) => commands::analyze(a),
        Command::Sweep(a) => commands::sweep(a),
        Command::ClosedForm(a) => commands::closed_form(a),
        Command::Simulate(a) => commands::simulate(a),
        Command::Validate(a) => commands::validate(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
