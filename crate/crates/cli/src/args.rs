use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "prdesign",
    version,
    about = "Power residue codes and the 2-designs carried by their conjugate shells",
    long_about = "Builds the m-th power residue code PR_q^m(p), enumerates it, and checks \
                  that unions of weight-ℓ shells over the conjugate codes form t-designs, by \
                  direct counting, by Jacobi polynomials and by harmonic weight enumerators.\n\n\
                  Exit status: 0 success, 1 verification failure, 2 invalid configuration, \
                  3 enumeration cap exceeded."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Worker threads for codeword enumeration (default: all cores).
    /// Results do not depend on this.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: Option<u16>,

    /// Largest number of codewords a command may enumerate
    /// [default: 67108864].
    #[arg(long, global = true, env = "PRDESIGN_CAP")]
    pub cap: Option<u64>,

    /// Output format. Each command documents the formats it supports; the
    /// default is text, except `reproduce table1|table2` which default to csv.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

/// Code parameters. Every field is validated before any computation.
#[derive(Debug, Clone, Args)]
pub struct CodeArgs {
    /// Code length, an odd prime.
    #[arg(long)]
    pub p: Option<u32>,
    /// Residue power; must divide p - 1.
    #[arg(long)]
    pub m: Option<u32>,
    /// Field order, a prime that is an m-th power residue mod p.
    #[arg(long)]
    pub q: Option<u32>,
}

#[derive(Debug, Clone, Args)]
pub struct GroupArgs {
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub m: Option<u32>,
}

#[derive(Debug, Clone, Args)]
pub struct SetArgs {
    /// A pair `a,b`; the H-orbit containing it is used, and since Jacobi
    /// polynomials are constant on H-orbits the pair itself is evaluated.
    #[arg(long, value_name = "A,B", conflicts_with = "set")]
    pub rep_of: Option<String>,
    /// An arbitrary coordinate set `a,b,...` (empty string for the empty set).
    #[arg(long, value_name = "POINTS")]
    pub set: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The m-th power residue cosets A_0, ..., A_{m-1} mod p. [text, json]
    Cosets(GroupArgs),

    /// Generator polynomial of PR_q^m(p), lowest degree first. [text, json]
    Genpoly(CodeArgs),

    /// Export the code: header `p m q k`, generator polynomial, generator
    /// matrix rows. [text, json]
    CodeInfo(CodeArgs),

    /// Weight distribution. [text, json, csv]
    Weights(CodeArgs),

    /// The blocks of the shell union over the conjugate codes (or of the
    /// single shell with --single), in block multiset format. [text, json]
    Shells {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        ell: usize,
        /// Only the weight-ℓ shell of the code itself.
        #[arg(long)]
        single: bool,
    },

    /// Check that shell unions (or a block file) form t-designs. Exit 1 and
    /// print a witness when one is not. [text, json, csv]
    DesignCheck {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, conflicts_with = "ell_range")]
        ell: Option<usize>,
        /// Inclusive range `a..b`.
        #[arg(long, value_name = "A..B")]
        ell_range: Option<String>,
        #[arg(long, default_value_t = 2)]
        t: usize,
        /// Check single shells instead of unions over the conjugates.
        #[arg(long)]
        single: bool,
        /// Also run the harmonic (Delsarte) criterion and compare.
        #[arg(long)]
        delsarte: bool,
        /// Read a block multiset file instead of building shells.
        #[arg(long, value_name = "PATH", conflicts_with_all = ["p", "m", "q", "ell", "ell_range", "single"])]
        blocks: Option<PathBuf>,
    },

    /// Jacobi polynomial J_{C,T}; without a set, one per H-orbit on
    /// t-subsets. [text, json]
    Jacobi {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        set: SetArgs,
        #[arg(long, default_value_t = 2)]
        t: usize,
    },

    /// The sum of J_{C',T} over the m conjugate codes C'. [text, json]
    JacobiSum {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        set: SetArgs,
        /// Enumerate every conjugate code instead of translating T.
        #[arg(long)]
        direct: bool,
    },

    /// Basis of the H-invariant harmonic functions of degree --t. [text, json]
    HarmonicBasis {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 2)]
        t: usize,
    },

    /// Harmonic weight enumerators of the invariant basis of degree --t, or
    /// of one function read from a file. [text, json]
    Hwe {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = 2)]
        t: usize,
        #[arg(long, value_name = "PATH")]
        function: Option<PathBuf>,
        /// Sum each enumerator over the conjugate codes.
        #[arg(long)]
        conjugate_sum: bool,
    },

    /// Run every structural and design-theoretic check for one instance and
    /// print pass/fail per item. [text, json]
    VerifyTheorem {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = 2)]
        t: usize,
        /// Extra encoded codewords checked besides the basis rows.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Check T-independence on every t-subset, not one per orbit.
        #[arg(long)]
        all_sets: bool,
    },

    /// Recompute a published table or worked example and compare.
    Reproduce {
        #[arg(value_enum)]
        target: Target,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    /// PR_2^3(31), ℓ = 5..26. [csv, text, json]
    Table1,
    /// PR_5^3(13), ℓ = 4..12. [csv, text, json]
    Table2,
    /// Jacobi polynomials and harmonic enumerators of PR_2^3(31). [text, json]
    Example51,
    /// Jacobi polynomials and harmonic enumerators of PR_5^3(13). [text, json]
    Example52,
}
