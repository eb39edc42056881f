//! `immvar`: command-line front end for immvar-core.
//!
//! Exit codes: 0 success, 1 a verification suite failed, 2 malformed input,
//! 3 a work bound was exceeded.

mod commands;
mod instance;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, thiserror::Error)]
#[error("{message}")]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    pub fn context(self, what: &str) -> Self {
        CliError {
            code: self.code,
            message: format!("{what}: {}", self.message),
        }
    }
}

impl From<immvar_core::Error> for CliError {
    fn from(e: immvar_core::Error) -> Self {
        let code = match e {
            immvar_core::Error::BoundExceeded { .. } => 3,
            _ => 2,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "immvar", version, about = "Symmetry classes of tensors, immanants and the posets B_chi(k,n)")]
struct Cli {
    /// Output format on stdout.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Enable internal parallel loops.
    #[arg(long, global = true)]
    parallel: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build B_chi(k,n) and report its size, ranks and lattice properties.
    Poset {
        spec: PathBuf,
        /// Write the Hasse diagram in DOT format.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Write the poset (elements, covers, ranks) as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Polya rank generating function of G acting on [n]^k.
    Polya { spec: PathBuf },
    /// Number of aperiodic necklaces of length k over n letters.
    Witt { k: u64, n: u64 },
    /// Dimension of the symmetry class: formula and rank of the image.
    Dim { spec: PathBuf },
    /// chi_{x,y}(M), exact for a given matrix or symbolic in a_i_j.
    Immanant {
        spec: PathBuf,
        /// JSON array of rows of rational strings.
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        /// Rows of the symbolic matrix (default n).
        #[arg(long)]
        rows: Option<usize>,
        /// Columns of the symbolic matrix (default n).
        #[arg(long)]
        cols: Option<usize>,
    },
    /// Parametric equations of the variety, or of the stratum of x.
    Equations {
        spec: PathBuf,
        #[arg(long)]
        stratum: Option<String>,
    },
    /// Decide whether a subset of B, or the support of a point, is a chi-matroid.
    MatroidCheck {
        spec: PathBuf,
        /// JSON array of multi-indices.
        #[arg(long, conflicts_with_all = ["factors", "random"])]
        subset: Option<PathBuf>,
        /// JSON array of k vectors of rational strings.
        #[arg(long, conflicts_with = "random")]
        factors: Option<PathBuf>,
        /// Check this many seeded random decomposable points.
        #[arg(long)]
        random: Option<usize>,
        /// Seed for --random; overrides the instance's seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Support of the projection of a decomposable tensor.
    Support {
        spec: PathBuf,
        #[arg(long)]
        factors: PathBuf,
    },
    /// Mobius function of B between x and y.
    Mobius {
        spec: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Order complex of B or of an interval, with a shellability search.
    Shell {
        spec: PathBuf,
        #[arg(long, num_args = 2, value_names = ["X", "Y"])]
        interval: Option<Vec<String>>,
        /// Use the open interval (x, y).
        #[arg(long, requires = "interval")]
        open: bool,
        /// Facet count up to which a failed search certifies "no".
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Chow-group generators of the strata and the Hilbert-Poincare bound.
    Chow { spec: PathBuf },
    /// Run the invariant suites.
    Verify {
        #[arg(long)]
        suite: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command, cli.format, cli.parallel) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
