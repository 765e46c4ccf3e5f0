use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::census::DEFAULT_BUDGET;
use crate::GroupSpec;

#[derive(Parser, Debug)]
#[command(name = "charvar", version, about = "Torus knot groups, component counts and explicit representations")]
pub struct Cli {
    /// Emit the versioned JSON envelope instead of text
    #[arg(long, global = true)]
    pub json: bool,

    /// Seed for every pseudorandom choice
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Override the numerical tolerance of the input
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Knot (pairwise coprime exponents) or link
    Classify(SpecArgs),
    /// Abelianization of the group
    Abelianize(SpecArgs),
    /// Smith normal form of an integer matrix
    Snf {
        /// JSON file {"rows", "cols", "entries"}
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Component counts
    #[command(subcommand)]
    Count(CountCommand),
    /// Explicit matrix representations
    #[command(subcommand)]
    Rep(RepCommand),
}

#[derive(Args, Debug)]
pub struct SpecArgs {
    /// Exponents, comma separated (e.g. 5,7)
    #[arg(long, value_parser = parse_spec)]
    pub n: GroupSpec,
}

#[derive(Args, Debug)]
pub struct EnumArgs {
    /// Keep one representative per component
    #[arg(long)]
    pub witness: bool,

    /// Maximum number of tuples to enumerate
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(Subcommand, Debug)]
pub enum CountCommand {
    /// Components of the irreducible SL(2, C) character variety
    Sl2 {
        #[command(flatten)]
        spec: SpecArgs,
        /// Use the closed form only
        #[arg(long, conflicts_with = "both")]
        formula: bool,
        /// Compute both ways and fail on a mismatch
        #[arg(long)]
        both: bool,
        #[command(flatten)]
        enumeration: EnumArgs,
    },
    /// Components of Hom of the free product of cyclic groups into GL(m, C)
    FreeProduct {
        #[arg(long)]
        m: u64,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Conjugacy classes of n-th roots of the identity in GL(m, C)
    Roots {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        root_order: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Components of the distinct-eigenvalue locus in GL(m, C)
    De {
        #[arg(long)]
        m: u64,
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        enumeration: EnumArgs,
    },
    /// Closed form floor(n1/2) floor(n2/2) for irreducible GL(2, C) components
    Gl2(SpecArgs),
    /// Compare GL(m) root classes with central roots times SL(m) root classes
    Mccrudden {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        root_order: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
}

#[derive(Args, Debug)]
pub struct RepIo {
    /// Input JSON file
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Write the result here: the output representation, or the report for
    /// commands that do not produce one
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum RepCommand {
    /// Build A_i = g_i D_i g_i^{-1} from an eigenvalue configuration
    Build(RepIo),
    /// Check the relations, central charge and irreducibility
    Verify(RepIo),
    /// Retract the central charge towards modulus one
    Sdr {
        #[command(flatten)]
        io: RepIo,
        #[arg(long)]
        s: f64,
    },
    /// Multiply A_i by exp(2 pi i k / n_i)
    Zflow {
        #[command(flatten)]
        io: RepIo,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
    },
    /// Conjugate each generator to diagonal form along a path
    Path {
        #[command(flatten)]
        io: RepIo,
        #[arg(long, default_value_t = 100)]
        steps: usize,
    },
    /// Torus double coset invariant a*d of an SL(2, C) generator
    Invariant {
        #[command(flatten)]
        io: RepIo,
        /// Generator index, from 0
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// Compare eigenvector spans of a generator and its k-th power
    Eigenspan {
        #[command(flatten)]
        io: RepIo,
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
    },
}

fn parse_spec(s: &str) -> Result<GroupSpec, String> {
    s.parse()
}
