use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use skeletonkit::skeleton::Length;
use skeletonkit::{BigRational, Scalar};

pub type Q = BigRational;

#[derive(Debug, Parser)]
#[command(name = "skeletonkit", version, about = "Exact computations on curve skeletons, wild covers, Bruhat-Tits trees and graphs of finite groups")]
pub struct Cli {
    /// Input file; repeat for batch runs. Reads stdin when absent.
    #[arg(long, global = true, value_name = "PATH")]
    pub input: Vec<PathBuf>,
    /// Write reports here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads; parallelizes over input files only.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Indent JSON reports.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Ascii,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decorated skeletons.
    #[command(subcommand)]
    Skeleton(SkeletonOp),
    /// Harmonic cochains and the rank of H^1.
    #[command(subcommand)]
    Harm(HarmOp),
    /// Wild and Kummer covers of annuli.
    #[command(subcommand)]
    Wild(WildOp),
    /// Balls in Bruhat-Tits trees.
    #[command(subcommand)]
    Bt(BtOp),
    /// Graphs of finite groups.
    #[command(subcommand)]
    Gog(GogOp),
    /// Render inputs.
    #[command(subcommand)]
    Export(ExportOp),
    /// Randomized self-checks seeded by SKELETONKIT_SEED.
    Selftest(SelftestArgs),
}

#[derive(Debug, Subcommand)]
pub enum SkeletonOp {
    /// Per-vertex node data, minimal triangulation and classification.
    Analyze,
    /// Removes superfluous points from a triangulation.
    Minimize(MinimizeArgs),
    /// Hyperbolicity and anabelian certificate.
    Classify,
    /// Skeleton of the curve with marked points removed.
    Mark(MarkArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Order {
    First,
    Last,
}

#[derive(Debug, Args)]
pub struct MinimizeArgs {
    /// Starting vertex ids, comma separated; defaults to every vertex.
    #[arg(long, value_delimiter = ',')]
    pub set: Option<Vec<String>>,
    /// Which superfluous point to remove at each step.
    #[arg(long, value_enum, default_value_t = Order::First)]
    pub order: Order,
}

#[derive(Debug, Args)]
pub struct MarkArgs {
    /// JSON array of markings.
    #[arg(long, value_name = "PATH")]
    pub markings: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum HarmOp {
    /// Generators of the harmonic cochains mod N.
    Basis {
        #[arg(long)]
        modulus: u64,
    },
    /// Harmonic cochain with values a, a' and -a-a' on three open edges.
    Construct {
        #[arg(long)]
        modulus: u64,
        /// Three open edge ids, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        open: Vec<String>,
        #[arg(long)]
        a: u64,
        #[arg(long = "a-prime")]
        a_prime: u64,
    },
    /// Rank of H^1 with mu_ell coefficients of a skeleton.
    H1rank {
        #[arg(long)]
        ell: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum WildOp {
    /// Number of points above a disc point in the mu_{p^h} torsor.
    FiberCount {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        h: u32,
        #[arg(long = "T", allow_hyphen_values = true, value_parser = rational)]
        t: Q,
        #[arg(long = "S", allow_hyphen_values = true, value_parser = rational)]
        s: Q,
    },
    /// Step function of the fiber count along a split annulus.
    Profile {
        #[arg(long = "L", value_parser = rational)]
        length: Q,
        #[arg(long, value_parser = rational)]
        eps: Q,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        h: u32,
    },
    /// Kummer cover of an annulus.
    Kummer {
        /// Annulus length, a rational or "inf".
        #[arg(long = "L", value_parser = length)]
        length: Length<Q>,
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        class: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum BtOp {
    /// Ball of the given radius around the standard vertex.
    Generate {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        f: u32,
        #[arg(long, default_value_t = 1)]
        e: u64,
        #[arg(long)]
        radius: usize,
        /// Base field of equal characteristic.
        #[arg(long)]
        equal_characteristic: bool,
    },
    /// Reads q, p and f back off a ball.
    Recover,
}

#[derive(Debug, Subcommand)]
pub enum GogOp {
    /// Checks a graph of groups; optionally screens vertex types.
    Validate {
        /// JSON object mapping vertex ids to {"g":..,"n":..}.
        #[arg(long, value_name = "PATH")]
        symbolic: Option<PathBuf>,
    },
    /// Finite cover defined by a permutation action.
    Cover {
        #[arg(long, value_name = "PATH")]
        action: PathBuf,
    },
    /// Ball in the Bass-Serre tree.
    Ball {
        #[arg(long)]
        radius: usize,
    },
    /// Quotient graph from a ball; with --radius the input is a graph of groups.
    Reconstruct {
        #[arg(long)]
        radius: Option<usize>,
    },
    /// Ranks along a tower of covers, one action file per level.
    Tower {
        #[arg(long, value_name = "PATH", required = true)]
        action: Vec<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Auto,
    Semigraph,
    Skeleton,
    Gog,
}

#[derive(Debug, Subcommand)]
pub enum ExportOp {
    /// Graphviz rendering.
    Dot {
        #[arg(long, value_enum, default_value_t = Kind::Auto)]
        kind: Kind,
    },
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Random cases per check.
    #[arg(long, default_value_t = 50)]
    pub cases: usize,
}

fn rational(s: &str) -> Result<Q, String> {
    Q::parse_ratio(s).ok_or_else(|| format!("{s:?} is not a rational number"))
}

fn length(s: &str) -> Result<Length<Q>, String> {
    Length::parse_token(s).ok_or_else(|| format!("{s:?} is not a rational number or \"inf\""))
}
