use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "fishburn-lab", version, about = "Enumerate and check pattern-avoiding Fishburn permutations and ascent sequences")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Omit the elapsed time from records
    #[arg(long, global = true)]
    pub no_timing: bool,
    /// Cache file (default: $FISHBURN_LAB_CACHE, then the user data directory)
    #[arg(long, global = true, value_name = "PATH")]
    pub cache: Option<PathBuf>,
    /// Neither read nor write the cache
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Worker threads for enumeration
    #[arg(long, default_value_t = 1, global = true)]
    pub threads: usize,
    /// Depth of the subtree split used when threads > 1
    #[arg(long, default_value_t = 3, global = true)]
    pub split_depth: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseArg {
    All,
    Fishburn,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum KindArg {
    Ascent,
    Binary,
}

#[derive(Args, Debug)]
pub struct Lengths {
    /// A single length
    #[arg(long, conflicts_with = "n_range")]
    pub n: Option<usize>,
    /// An inclusive range of lengths, as A..B
    #[arg(long, value_name = "A..B")]
    pub n_range: Option<String>,
}

#[derive(Args, Debug)]
pub struct ClassArgs {
    #[arg(long, value_enum, default_value_t = BaseArg::Fishburn)]
    pub base: BaseArg,
    /// Comma-separated classical patterns
    #[arg(long, value_name = "P1,P2,...", default_value = "")]
    pub avoid: String,
    /// Keep only indecomposable permutations
    #[arg(long)]
    pub indecomposable: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count the members of a permutation class
    Count {
        #[command(flatten)]
        class: ClassArgs,
        #[command(flatten)]
        lengths: Lengths,
    },
    /// Distribution of statistics over a class, optionally split by generating-tree label
    Poly {
        #[command(flatten)]
        class: ClassArgs,
        #[command(flatten)]
        lengths: Lengths,
        /// Comma-separated subset of inv, ltrmax, afterone
        #[arg(long, default_value = "inv,ltrmax")]
        stats: String,
        /// Report one polynomial per label of --tree
        #[arg(long, requires = "tree")]
        label_split: bool,
        #[arg(long, value_name = "1423|3124|2143")]
        tree: Option<String>,
    },
    /// Count ascent sequences or binary words avoiding patterns
    Seqcount {
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Comma-separated sequence patterns
        #[arg(long, value_name = "S1,S2,...", default_value = "")]
        avoid: String,
        #[command(flatten)]
        lengths: Lengths,
    },
    /// The map to ascent sequences, or its inverse
    Gmap {
        #[arg(long, conflicts_with_all = ["inverse", "seq"], required_unless_present = "inverse")]
        perm: Option<String>,
        #[arg(long, requires = "seq")]
        inverse: bool,
        #[arg(long)]
        seq: Option<String>,
    },
    /// Active sites of a Fishburn permutation
    Activesites {
        #[arg(long)]
        perm: String,
    },
    /// Generating-tree label of a permutation
    Label {
        #[arg(long, value_name = "1423|3124|2143")]
        tree: String,
        #[arg(long)]
        perm: String,
    },
    /// Expand a registered generating function
    Series {
        #[arg(long)]
        gf: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i64>,
        #[arg(long, default_value_t = 10)]
        order: usize,
        /// Substitutions such as q=1,t=1
        #[arg(long, value_name = "q=..,t=..,r=..")]
        at: Option<String>,
        /// List the registered names instead
        #[arg(long, conflicts_with = "gf")]
        list: bool,
    },
    /// Run checks from the registry
    Verify {
        #[arg(long, conflicts_with_all = ["all", "list"])]
        check: Option<String>,
        #[arg(long)]
        all: bool,
        /// List the checks instead of running them
        #[arg(long)]
        list: bool,
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Look up a run of terms in the OEIS
    Oeis {
        #[arg(long, value_name = "a,b,c,...", allow_hyphen_values = true)]
        terms: String,
        /// Use a fixture file instead of the network; without a path, the bundled one
        #[arg(long, value_name = "FIXTURE_PATH", num_args = 0..=1)]
        offline: Option<Option<PathBuf>>,
    },
}
