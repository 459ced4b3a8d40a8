use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact orders and Sylow subgroups of finite simple groups of Lie type,
/// and verification scans of the bound on their Sylow subgroups.
#[derive(Debug, Parser)]
#[command(name = "sylowcheck", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Worker threads for scans [default: available parallelism]
    #[arg(long, global = true, env = "SYLOWCHECK_JOBS")]
    pub jobs: Option<usize>,

    /// Output format
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Configuration file of `key = value` lines
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print |T| and the cyclotomic factorization of d|T|
    Order(GroupArgs),
    /// Print one Sylow order, or the whole spectrum
    Sylow(SylowArgs),
    /// Run a verification scan
    Check(CheckArgs),
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    /// Family tag: A, 2A, B, C, D, 2D, 2B2, 3D4, E6, 2E6, E7, E8, F4, 2F4d, G2, 2G2, ALT
    #[arg(long)]
    pub family: String,
    /// Rank for classical families, degree for ALT
    #[arg(long)]
    pub n: Option<u32>,
    /// Field size
    #[arg(long)]
    pub q: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SylowArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    /// Prime; omit for the whole spectrum
    #[arg(long)]
    pub r: Option<String>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub name: CheckName,

    #[arg(long, value_enum)]
    pub families: Option<FamilySet>,

    /// Exceptional families at every valid q below their q0
    #[arg(long)]
    pub below_q0: bool,

    /// Largest classical rank, or largest degree for `alt`
    #[arg(long)]
    pub n_max: Option<u32>,

    /// Largest field size
    #[arg(long)]
    pub q_max: Option<u64>,

    /// Treat the listed exceptions as expected (default)
    #[arg(long, overrides_with = "no_allow_expected")]
    pub allow_expected: bool,

    /// Count the listed exceptions as violations
    #[arg(long, overrides_with = "allow_expected")]
    pub no_allow_expected: bool,
}

impl CheckArgs {
    pub fn allow_expected(&self) -> bool {
        !self.no_allow_expected
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckName {
    Theorem1,
    FactorCount,
    Qbound,
    Table3,
    Remark2,
    Artin,
    Buekenhout,
    Alt,
    Identities,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilySet {
    Classical,
    Exceptional,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Jsonl,
    Csv,
}
