use clap::{Parser, Subcommand};

pub const MAX_LEVEL: u64 = 10_000_000;

#[derive(Debug, Parser)]
#[command(name = "cuspidal-lab", version, about = "Exact tables for cusps, cuspidal divisors and Eisenstein series on X0(N)")]
pub struct Cli {
    /// Emit tab-separated tables instead of JSON.
    #[arg(long, global = true)]
    pub tsv: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cusp classes of X0(N) by level.
    Cusps { n: u64 },

    /// Coefficients and degree of C0^eps.
    Divisor {
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        eps: Option<String>,
    },

    /// Order of [C0^eps] by the closed form and by the matrix route.
    Order {
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        eps: Option<String>,
    },

    /// q-expansion of E0^eps.
    Eisenstein {
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        eps: Option<String>,
        #[arg(long, default_value_t = 20)]
        terms: usize,
    },

    /// Residues of E0^eps at every cusp level.
    Residues {
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        eps: Option<String>,
    },

    /// Matrix of the degeneracy pushforward to level N/l and its degree-zero cokernel.
    Beta { n: u64, l: u64 },

    /// Eisenstein ideal indices per sign vector.
    Index {
        n: u64,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "all_eps")]
        eps: Option<String>,
        /// All sign vectors (the default when --eps is absent).
        #[arg(long)]
        all_eps: bool,
        /// Skip the all-plus sign vector.
        #[arg(long)]
        exclude_all_plus: bool,
    },

    /// Index rows, orders and the applicability verdict at an odd prime p.
    Report { n: u64, p: u64 },

    /// Run the invariant sweeps.
    Selftest {
        #[arg(long, default_value_t = 200)]
        max_n: u64,
    },
}
