use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use quatfree::pingpong::WKind;

#[derive(Parser, Debug)]
#[command(name = "quatfree", version, about = "Exact certificates for free subgroups and semigroups of quaternion units")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Fundamental units of Z[sqrt d].
    Pell(RangeArgs),
    /// Quaternion units of one family.
    Units(UnitsArgs),
    #[command(subcommand)]
    Certify(Certify),
    /// Bounded search for relations among words in a generator pair.
    Oracle(OracleArgs),
    /// Every recipe over a range of d.
    Sweep(RangeArgs),
    /// Sampled search for a ping-pong table for the d = 2 pair (u, w).
    Infeasibility(InfeasibilityArgs),
}

#[derive(Args, Debug)]
pub struct RangeArgs {
    #[arg(long)]
    pub d: Option<u64>,
    #[arg(long, default_value_t = 2)]
    pub d_min: u64,
    #[arg(long)]
    pub d_max: Option<u64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Pell2,
    Pell3,
    Pell4,
    Pell4sq,
    Gauss,
    Pp1,
}

#[derive(Args, Debug)]
pub struct UnitsArgs {
    #[arg(long)]
    pub d: u64,
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub m: i64,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub sign: i32,
    /// Comma-separated basis slots, e.g. `i,1`; all orderings when omitted.
    #[arg(long)]
    pub slots: Option<String>,
    /// With pell4: the sign choice, `+` or `-`; both when omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub pm: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    W1,
    W2,
    W3,
}

impl From<Kind> for WKind {
    fn from(k: Kind) -> WKind {
        match k {
            Kind::W1 => WKind::W1,
            Kind::W2 => WKind::W2,
            Kind::W3 => WKind::W3,
        }
    }
}

/// Which generator pair to use. `--w-kind` defaults to w1.
#[derive(Args, Debug, Clone)]
pub struct PairArgs {
    #[arg(long)]
    pub d: Option<u64>,
    #[arg(long, value_enum)]
    pub w_kind: Option<Kind>,
    /// The d = 1 pair z/(2z+1), z+2.
    #[arg(long, conflicts_with_all = ["d2special", "corollary", "w_kind"])]
    pub theorem1: bool,
    /// The d = 2 pair (u^2, w).
    #[arg(long, conflicts_with_all = ["corollary", "w_kind"])]
    pub d2special: bool,
    /// The norm -1 table with w = y sqrt(-d) + x k.
    #[arg(long, conflicts_with = "w_kind")]
    pub corollary: bool,
}

#[derive(Subcommand, Debug)]
pub enum Certify {
    /// Ping-pong certificate for a free subgroup.
    Group(GroupArgs),
    /// Invariant-set certificate for a free semigroup.
    Semigroup(SemigroupArgs),
}

#[derive(Args, Debug)]
pub struct GroupArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    /// JSON file with the table to use instead of the recipe's:
    /// `{"slots": [["A1,+1", "A1,-1"], ["A2,+1", "A2,-1"]]}` as arc-set strings.
    #[arg(long)]
    pub table: Option<PathBuf>,
    /// Also decide freeness of the pair of n-th powers.
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long = "L", default_value_t = quatfree::oracle::DEFAULT_GROUP_DEPTH)]
    pub depth: u32,
    #[arg(long)]
    pub no_oracle: bool,
}

#[derive(Args, Debug)]
pub struct SemigroupArgs {
    #[arg(long)]
    pub d: u64,
    #[arg(long, value_enum, default_value_t = Kind::W1)]
    pub w_kind: Kind,
    #[arg(long = "L", default_value_t = quatfree::oracle::DEFAULT_SEMIGROUP_DEPTH)]
    pub depth: u32,
    #[arg(long)]
    pub no_oracle: bool,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    /// Compare positive words instead of reduced words.
    #[arg(long)]
    pub semigroup: bool,
    #[arg(long = "L")]
    pub depth: Option<u32>,
    #[arg(long, default_value_t = 1)]
    pub n: u32,
}

#[derive(Args, Debug)]
pub struct InfeasibilityArgs {
    #[arg(long, default_value_t = 100)]
    pub resolution: u32,
}
