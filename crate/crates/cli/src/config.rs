use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use ptorsion_core::Budget;

#[derive(Parser, Debug)]
#[command(name = "ptorsion", version, about = "Division-polynomial structure checks in characteristic p")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Directory for cached division polynomials.
    #[arg(long, global = true, env = "PTORSION_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,

    /// Write output here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RingArg {
    #[value(name = "Z", alias = "z")]
    Integers,
    #[value(name = "Fp", alias = "fp")]
    Prime,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BudgetArg {
    Low,
    Default,
    High,
}

impl From<BudgetArg> for Budget {
    fn from(b: BudgetArg) -> Budget {
        match b {
            BudgetArg::Low => Budget::Low,
            BudgetArg::Default => Budget::Default,
            BudgetArg::High => Budget::High,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the m-th division polynomial.
    Divpoly {
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum, default_value_t = RingArg::Integers)]
        ring: RingArg,
        /// Reduce mod p (implies `--ring Fp`).
        #[arg(long)]
        p: Option<u64>,
    },
    /// Coefficients a_k of theta for p.
    Theta {
        #[arg(long)]
        p: u64,
    },
    /// Coefficients b_k, c_k of eta for p.
    Eta {
        #[arg(long)]
        p: u64,
    },
    /// Supersingular j-invariants and f_ss for p.
    Ssj {
        #[arg(long)]
        p: u64,
    },
    /// Run every structural check for each prime.
    Verify(VerifyArgs),
    /// Compare unit-root orders with torsion field degrees on random curves.
    Specialize(SpecializeArgs),
}

#[derive(clap::Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub primes: Vec<u64>,
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = BudgetArg::Default)]
    pub budget: BudgetArg,
    /// Points per zero family in the vanishing check.
    #[arg(long, default_value_t = 4)]
    pub samples: usize,
    /// Record per-check wall-clock times (output is then not reproducible).
    #[arg(long)]
    pub timings: bool,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(clap::Args, Debug)]
pub struct SpecializeArgs {
    #[arg(long)]
    pub p: u64,
    /// Field size; defaults to p.
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest field size for point counting.
    #[arg(long, default_value_t = ptorsion_core::specializer::COUNT_BUDGET)]
    pub count_budget: u64,
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

pub fn emit(cli: &Cli, text: &str) -> io::Result<()> {
    match &cli.output {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}
