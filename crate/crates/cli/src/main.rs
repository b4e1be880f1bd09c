mod commands;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::{Failure, Format};

/// Unitary bases from latin squares and Hadamard matrices, their fans and
/// invariants, and the measurements and PPT matrices built from them.
#[derive(Parser, Debug)]
#[command(name = "fanweave", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Global {
    /// Seed for every randomized step; echoed in all output.
    #[arg(long, env = "FANWEAVE_SEED", default_value_t = 0, global = true)]
    pub seed: u64,
    /// Tolerance override, e.g. `commutation=1e-8`. Repeatable.
    #[arg(long = "tol", value_name = "NAME=VALUE", global = true)]
    pub tol: Vec<String>,
    /// Output format. Defaults to json with --out and text otherwise.
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Write the result here; the text report then goes to stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a unitary basis and check unitarity and trace orthogonality.
    Construct(ConstructArgs),
    /// Fan (all MASSs) of a basis at one tag, every tag, or untagged.
    Fans(FansArgs),
    /// Compare the fan invariants of two bases. Exits 3 when inequivalent.
    Compare(CompareArgs),
    /// Mutually unbiased bases from a fan that partitions the tag system.
    Mub(TagArgs),
    /// Informationally complete pure POVM from a minimal cover of a fan.
    Povm(PovmArgs),
    /// Positive block matrix with positive partial transpose.
    Ppt(PptArgs),
    /// Partial Hadamard matrices diagonalizing each MASS of a fan.
    HadamardFan(TagArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Weyl,
    Pauli2,
    ShiftMultiply,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Dimension of a Weyl basis.
    #[arg(long)]
    pub d: Option<usize>,
    /// Group: `s3`, `z<N>`, a product such as `z2xz2`, or a JSON file.
    #[arg(long)]
    pub group: Option<String>,
    /// Which of the six group-induced latin squares to use.
    #[arg(long, default_value = "e")]
    pub variant: String,
    /// Latin square JSON file; replaces --group and --variant.
    #[arg(long)]
    pub latin: Option<PathBuf>,
    /// `fourier` or a Hadamard family JSON file.
    #[arg(long, default_value = "fourier")]
    pub hadamard: String,
}

#[derive(Args, Debug)]
pub struct TagArgs {
    /// Basis JSON file.
    pub basis: PathBuf,
    /// Tag label, e.g. `(0,0)` or `II`. Defaults to the first label.
    #[arg(long)]
    pub tag: Option<String>,
    #[arg(long, default_value = "numeric")]
    pub mode: String,
}

#[derive(Args, Debug)]
pub struct FansArgs {
    #[command(flatten)]
    pub target: TagArgs,
    /// One fan per tag.
    #[arg(long, conflicts_with_all = ["tag", "untagged"])]
    pub all_tags: bool,
    /// Fan of the basis itself rather than of a tag.
    #[arg(long, conflicts_with = "tag")]
    pub untagged: bool,
    /// Also write the fan as DOT to this path.
    #[arg(long)]
    pub dot: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    pub left: PathBuf,
    pub right: PathBuf,
    /// `cue` (one conjugating unitary) or `pcue` (up to phases as well).
    #[arg(long, default_value = "cue")]
    pub variant: String,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Crude,
    Refined,
}

#[derive(Args, Debug)]
pub struct PovmArgs {
    #[command(flatten)]
    pub target: TagArgs,
    #[arg(long, value_enum, default_value = "crude")]
    pub strategy: Strategy,
    /// Hub label for the refined strategy, e.g. `2,2`.
    #[arg(long)]
    pub hub: Option<String>,
}

#[derive(Args, Debug)]
pub struct PptArgs {
    /// Number of block rows.
    #[arg(long)]
    pub n: usize,
    /// Blocks are 2·half-dim square. Defaults to n.
    #[arg(long)]
    pub half_dim: Option<usize>,
    /// Diagonal shift; must be at least the least positivity shift.
    #[arg(long)]
    pub shift: Option<f64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
