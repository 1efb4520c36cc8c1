//! `hylag`: build constructions, compute Lagrangians, draw locally sparse
//! graphs, check claims and print sweeps.
//!
//! Exit codes: 0 pass, 1 claim failure, 2 usage or input error.

mod commands;
mod table;

use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hylag_core::{Error, FamilyChoice};

#[derive(Parser, Debug)]
#[command(
    name = "hylag",
    version,
    about = "Hypergraph Lagrangians and non-jump constructions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format on stdout.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,

    /// Seed for every randomized step.
    #[arg(long, env = "HYLAG_SEED", default_value_t = 0, global = true)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build G(ℓ,q,t), optionally with a sparse graph on V₁ and lifted to r > 5.
    Build(BuildArgs),
    /// Maximize the Lagrangian of a graph read from a HYG v1 file.
    Lagrangian(LagrangianArgs),
    /// Draw a locally sparse r-graph on t vertices.
    Sparse(SparseArgs),
    /// Check one claim, or the standard set with `--claim all`.
    Verify(VerifyArgs),
    /// Print sweeps of N(ℓ,q), the 151/(6rʳ) targets, or construction densities.
    Report(ReportArgs),
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[arg(long, value_parser = parse_family)]
    pub family: FamilyChoice,
    /// Defaults to 5 for the ℓ = 5 families and 2 otherwise.
    #[arg(long)]
    pub ell: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub q: usize,
    #[arg(long)]
    pub t: usize,
    #[arg(long, default_value_t = 5)]
    pub r: usize,
    /// Attach a locally sparse graph with this edge density σ on the first part.
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Sparsity window for `--sigma`.
    #[arg(long, default_value_t = 7, requires = "sigma")]
    pub k: usize,
    /// Graph file; the JSON sidecar goes next to it with extension `.json`.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct LagrangianArgs {
    pub file: PathBuf,
    #[arg(long, default_value_t = 32)]
    pub restarts: usize,
    #[arg(long, default_value_t = 100_000)]
    pub max_iterations: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub step_tolerance: f64,
    #[arg(long, default_value_t = 1e-12)]
    pub value_tolerance: f64,
    /// Skip the extra starts that share weight across equivalent vertices.
    #[arg(long)]
    pub no_symmetrize: bool,
}

#[derive(Args, Debug)]
pub struct SparseArgs {
    #[arg(long, default_value_t = 5)]
    pub r: usize,
    #[arg(long)]
    pub t: usize,
    #[arg(long, default_value_t = 7)]
    pub k: usize,
    #[arg(long)]
    pub sigma: f64,
    #[arg(long, default_value_t = 16)]
    pub max_attempts: usize,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// f_bound, g_max, h_max, f_a1, rho_block, F, H, claim8, case_a … case_e,
    /// subgraph, or all.
    #[arg(long)]
    pub claim: String,
    #[arg(long, value_parser = parse_family)]
    pub family: Option<FamilyChoice>,
    /// A value or an inclusive range `a..b`.
    #[arg(long, value_parser = parse_range)]
    pub ell: Option<RangeInclusive<usize>>,
    #[arg(long = "L", value_parser = parse_range)]
    pub big_l: Option<RangeInclusive<usize>>,
    #[arg(long, value_parser = parse_range)]
    pub q: Option<RangeInclusive<usize>>,
    /// Part size for `subgraph`.
    #[arg(long, default_value_t = 3)]
    pub t: usize,
    /// Random restarts per search.
    #[arg(long, default_value_t = 64)]
    pub budget: usize,
    #[arg(long, default_value_t = 100_000)]
    pub max_iterations: usize,
    /// Random points for claim8 (default 100) or subsets for subgraph (default 500).
    #[arg(long)]
    pub samples: Option<usize>,
    /// Grid resolution for f_a1 and rho_block.
    #[arg(long, default_value_t = 1000)]
    pub grid: usize,
    /// Largest sampled subset for subgraph.
    #[arg(long, default_value_t = 7)]
    pub k: usize,
    /// For subgraph: attach a sparse graph of density σ on the first part.
    #[arg(long)]
    pub sigma: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Sweep {
    /// N(ℓ,q) with the condition on it.
    N,
    /// 151r!/(6rʳ) and its Lagrangian target 151/(6rʳ).
    Jumps,
    /// Exact densities of built graphs against their limit.
    Density,
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    #[arg(long, value_enum, default_value_t = Sweep::N)]
    pub sweep: Sweep,
    #[arg(long, value_parser = parse_family, default_value = "alpha")]
    pub family: FamilyChoice,
    #[arg(long, value_parser = parse_range)]
    pub ell: Option<RangeInclusive<usize>>,
    #[arg(long, value_parser = parse_range, default_value = "1")]
    pub q: RangeInclusive<usize>,
    #[arg(long, value_parser = parse_range, default_value = "5..8")]
    pub r: RangeInclusive<usize>,
    #[arg(long, value_parser = parse_range, default_value = "2..10")]
    pub t: RangeInclusive<usize>,
}

fn parse_family(s: &str) -> Result<FamilyChoice, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// `a`, `a..b` or `a..=b`, inclusive either way.
fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |v: &str| v.trim().parse::<usize>().map_err(|e| format!("{v:?}: {e}"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let v = num(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range {s}"));
    }
    Ok(lo..=hi)
}

/// What a command hands back to `main`.
pub enum Failure {
    /// Bad flags, unreadable input, or a claim outside its region.
    Usage(String),
    /// Ran to completion but something did not hold.
    Claim,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Retryable { .. } => {
                eprintln!("error: {e}");
                Failure::Claim
            }
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = commands::Context {
        format: cli.format,
        seed: cli.seed,
    };
    let res = match &cli.command {
        Command::Build(a) => commands::build(&ctx, a),
        Command::Lagrangian(a) => commands::lagrangian(&ctx, a),
        Command::Sparse(a) => commands::sparse(&ctx, a),
        Command::Verify(a) => commands::verify(&ctx, a),
        Command::Report(a) => commands::report(&ctx, a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Claim) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3").unwrap(), 3..=3);
        assert_eq!(parse_range("2..50").unwrap(), 2..=50);
        assert_eq!(parse_range("2..=5").unwrap(), 2..=5);
        assert!(parse_range("5..2").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn cli_shape() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
