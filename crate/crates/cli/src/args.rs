use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use tv4_core::tvr::DEFAULT_BUDGET;

#[derive(Parser, Debug)]
#[command(name = "tv4", version, about = "Exact Turaev-Viro invariants TV(4,q) of closed 3-manifold triangulations")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Emit JSON Lines instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub jobs: Option<u32>,
    /// Include wall-clock time per input.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct QArg {
    /// Root of unity parameter.
    #[arg(long, default_value_t = 1, value_parser = parse_q)]
    pub q: u32,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct BudgetArg {
    /// Search-node limit for brute-force enumeration.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
}

fn parse_q(s: &str) -> Result<u32, String> {
    match s.parse::<u32>() {
        Ok(q @ (1 | 3 | 5 | 7)) => Ok(q),
        _ => Err(format!("expected one of 1, 3, 5, 7, got {s:?}")),
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Full TV(4,q) report for each file.
    Compute {
        #[command(flatten)]
        q: QArg,
        /// Also run the brute-force enumeration and report whether it agrees.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        budget: BudgetArg,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// The three class-bucket sums of TV(4,q).
    Triple {
        #[command(flatten)]
        q: QArg,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// The Laurent polynomial P_T(z) and its values at z = ∓√2.
    Poly {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Brute-force state sums: exact for r = 4, floating point for any r.
    Oracle {
        #[command(flatten)]
        q: OracleQ,
        /// Level of the complex state sum.
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(3..))]
        r: u32,
        #[command(flatten)]
        budget: BudgetArg,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Z2 Betti numbers and integral first homology.
    Homology {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Write a triangulation of a lens space.
    Gen {
        #[arg(value_enum)]
        family: Family,
        p: u64,
        #[arg(allow_hyphen_values = true)]
        q: i64,
        /// Output file; standard output if omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Apply random 2-3 moves reproducibly.
    Move {
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Group the .tri files of a directory by H1, then by both TV triples.
    CensusGroup { dir: PathBuf },
}

#[derive(Args, Debug, Clone, Copy)]
pub struct OracleQ {
    /// Root of unity parameter; must be coprime to 2r.
    #[arg(long, default_value_t = 1)]
    pub q: u32,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// One-vertex layered construction.
    Lens,
    /// Two-vertex construction from p tetrahedra around an axis.
    Bipyramid,
}
