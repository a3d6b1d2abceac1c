use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "sdepth",
    version,
    about = "Exact Stanley depth of edge ideals of clutters"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Worker threads for searches and sweeps.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: u16,
    /// Seed for random antichain checks.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Human-readable output instead of JSON/CSV.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate the d-uniform complete clutter on blocks of the given sizes.
    Gen(GenArgs),
    /// Exact Stanley depth of a clutter's edge ideal, with certificate.
    Sdepth(InputArgs),
    /// Closed-form bounds and counts for a complete k-partite clutter.
    Bounds(BoundsArgs),
    /// Split a uniform clutter into disjoint unit vertex covers.
    Decompose(InputArgs),
    /// Sweep complete families and compare exact depth with the bounds.
    VerifyFamily(FamilyArgs),
}

#[derive(Debug, Args)]
pub struct FamilyParams {
    /// Edge size.
    #[arg(long)]
    pub d: usize,
    /// Comma-separated block sizes, e.g. 2,2,2.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub parts: Vec<usize>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub family: FamilyParams,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Clutter JSON file; stdin when absent or `-`.
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// Generator JSON (clutter plus `d` and `partition`); stdin when absent.
    pub input: Option<PathBuf>,
    /// Generate the instance instead of reading it.
    #[arg(long, requires = "parts")]
    pub d: Option<usize>,
    #[arg(long, value_delimiter = ',', num_args = 1.., requires = "d")]
    pub parts: Option<Vec<usize>>,
    /// Also compute the exact Stanley depth.
    #[arg(long)]
    pub exact: bool,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long)]
    pub d: usize,
    /// Number of blocks.
    #[arg(long)]
    pub k: usize,
    /// Largest total vertex count swept.
    #[arg(long)]
    pub max_n: usize,
    /// Smallest block size swept.
    #[arg(long, default_value_t = 2)]
    pub min_part: usize,
    /// Also compare the search against the exhaustive oracle on this many
    /// seeded random antichains.
    #[arg(long, default_value_t = 0)]
    pub oracle_samples: usize,
    /// Vertex count for the random antichains.
    #[arg(long, default_value_t = 5)]
    pub oracle_n: usize,
}
