//! Command-line syntax.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{Format, Overrides};

#[derive(Debug, Parser)]
#[command(
    name = "fockspec",
    version,
    about = "Normal ordering, solvability and polynomial spectra of Heisenberg-Weyl operators"
)]
pub struct Cli {
    /// `key = value` file read before flags are applied.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Largest exponent of `a` or `b` an element may carry.
    #[arg(long, global = true)]
    pub degree_cap: Option<u32>,
    /// Root tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Iteration cap for numeric refinement.
    #[arg(long, global = true)]
    pub max_iter: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Operator expression, e.g. `-a^2 + b*a`.
    #[arg(long, allow_hyphen_values = true)]
    pub expr: Option<String>,
    /// Catalog operator name.
    #[arg(long)]
    pub op: Option<String>,
}

#[derive(Debug, Args)]
pub struct Operand {
    #[command(flatten)]
    pub source: Source,
    /// Parameter bindings `name=p/q`; repeat or separate with commas.
    #[arg(long = "bind", visible_alias = "params", value_name = "NAME=VALUE", value_delimiter = ',')]
    pub bind: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the normal-ordered form of an expression.
    NormalOrder {
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        #[arg(long = "bind", visible_alias = "params", value_name = "NAME=VALUE", value_delimiter = ',')]
        bind: Vec<String>,
    },
    /// Exact solvability and the invariant degrees up to `--nmax`.
    Classify {
        #[command(flatten)]
        operand: Operand,
        /// Largest degree to scan.
        #[arg(long)]
        nmax: Option<u32>,
        /// Degree at which to report constraint residuals and leakage.
        #[arg(long)]
        n: Option<u32>,
    },
    /// Characteristic polynomial, eigenvalues and eigenvectors on a degree-n sector.
    Spectrum {
        #[command(flatten)]
        operand: Operand,
        /// Sector degree; defaults to the catalog operator's invariant degree.
        #[arg(long)]
        n: Option<u32>,
        /// differential, delta:<r>, q:<r> or complex:<m>.
        #[arg(long, default_value = "differential")]
        realization: String,
    },
    /// Compare characteristic polynomials across realizations.
    Isospectral {
        #[command(flatten)]
        operand: Operand,
        /// Sector degree; defaults to the catalog operator's invariant degree.
        #[arg(long)]
        n: Option<u32>,
        /// Lattice spacings, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        deltas: Option<Vec<String>>,
        /// Dilations, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        qs: Option<Vec<String>>,
        /// Complex-plane fibers m, comma separated.
        #[arg(long, value_delimiter = ',')]
        fibers: Option<Vec<u32>>,
    },
    /// List named operators and their parameters.
    Catalog,
}

impl Cli {
    pub fn overrides(&self) -> Overrides {
        let mut o = Overrides {
            degree_cap: self.degree_cap,
            tol: self.tol,
            max_iter: self.max_iter,
            format: self.format,
            ..Default::default()
        };
        match &self.command {
            Command::Classify { nmax, .. } => o.nmax = *nmax,
            Command::Isospectral { deltas, qs, fibers, .. } => {
                o.deltas = deltas.clone();
                o.qs = qs.clone();
                o.fibers = fibers.clone();
            }
            _ => {}
        }
        o
    }

    pub fn name(&self) -> &'static str {
        match self.command {
            Command::NormalOrder { .. } => "normal-order",
            Command::Classify { .. } => "classify",
            Command::Spectrum { .. } => "spectrum",
            Command::Isospectral { .. } => "isospectral",
            Command::Catalog => "catalog",
        }
    }
}
