mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use gyrokit::einstein::DEFAULT_SEED;

#[derive(Debug, Parser)]
#[command(name = "gyrokit", version, about = "Verify and explore gyrogroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,

    /// Largest carrier order the command will process.
    #[arg(long, env = "GYROKIT_LIMIT", global = true)]
    limit: Option<usize>,

    /// Include wall-clock timing in the report. Timed reports are not
    /// reproducible byte for byte.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Structured,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
enum Command {
    /// Check a Cayley table against the gyrogroup axioms.
    Verify(TableArgs),
    /// Enumerate and classify subgyrogroups, or classify one subset.
    Subgyro(SubgyroArgs),
    /// Left cosets of an L-subgyrogroup.
    Cosets(CosetArgs),
    /// Identity suite for Einstein addition on random velocities.
    Einstein(EinsteinArgs),
    /// Subset-level identities and inclusion chains.
    Setcheck(SetcheckArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
#[group(required = true, multiple = false)]
struct TableArgs {
    /// Table file.
    #[arg(long)]
    input: Option<PathBuf>,
    /// A bundled table: trivial, z4, klein4, z6 or gyro8.
    #[arg(long)]
    fixture: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Strategy {
    Closure,
    Powerset,
}

#[derive(Debug, Args, Serialize)]
struct SubgyroArgs {
    #[command(flatten)]
    table: TableArgs,
    /// Classify this subset instead of enumerating, e.g. "0,2".
    #[arg(long)]
    subset: Option<String>,
    #[arg(long, value_enum, default_value_t = Strategy::Closure)]
    strategy: Strategy,
}

#[derive(Debug, Args, Serialize)]
struct CosetArgs {
    #[command(flatten)]
    table: TableArgs,
    /// The subgyrogroup H, e.g. "0,2".
    #[arg(long)]
    subset: String,
}

#[derive(Debug, Args, Serialize)]
struct EinsteinArgs {
    /// Radius of the velocity ball.
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Sampled speeds are below max_beta·c.
    #[arg(long, default_value_t = 0.99)]
    max_beta: f64,
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Check {
    All,
    Reassociation,
    InverseCoset,
    Neutrality,
    ProductChain,
    CoaddChain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Scope {
    /// Exhaustive for small tables, sampled otherwise.
    Auto,
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum SearchArg {
    Greedy,
    Exhaustive,
}

#[derive(Debug, Args, Serialize)]
struct SetcheckArgs {
    #[command(flatten)]
    table: TableArgs,
    #[arg(long, value_enum, default_value_t = Check::All)]
    check: Check,
    #[arg(long)]
    w: Option<String>,
    #[arg(long)]
    u: Option<String>,
    #[arg(long)]
    v: Option<String>,
    #[arg(long)]
    h: Option<String>,
    /// The element `a` of the coaddition chain.
    #[arg(long)]
    element: Option<usize>,
    /// Evaluate even when a hypothesis fails, listing the unmet ones.
    #[arg(long)]
    diagnostic: bool,
    /// How to search for W (inverse-coset) when none is supplied.
    #[arg(long, value_enum, default_value_t = SearchArg::Greedy)]
    search: SearchArg,
    /// Scan scope when no subsets are supplied.
    #[arg(long, value_enum, default_value_t = Scope::Auto)]
    scope: Scope,
    /// Tuples per check for sampled scans.
    #[arg(long, default_value_t = 2000)]
    samples: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

impl Command {
    fn title(&self) -> &'static str {
        match self {
            Command::Verify(_) => "verify",
            Command::Subgyro(_) => "subgyro",
            Command::Cosets(_) => "cosets",
            Command::Einstein(_) => "einstein",
            Command::Setcheck(_) => "setcheck",
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = match commands::run(&cli.command, cli.limit) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("gyrokit: {e:#}");
            return ExitCode::from(2);
        }
    };
    let timing = cli.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
    let text = match cli.format {
        Format::Human => report::render_human(cli.command.title(), &outcome, timing),
        Format::Structured => {
            let mut echo = report::to_value(&cli.command);
            if let Some(map) = echo.as_object_mut() {
                map.insert("limit".into(), report::to_value(&cli.limit));
            }
            report::render_structured(&report::document(echo, &outcome, timing))
        }
    };
    print!("{text}");
    if outcome.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
