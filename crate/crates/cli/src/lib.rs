//! `bouncer` command-line front end: tables, JSON records and SVG charts for
//! the quantum bouncer classical-limit study.

mod commands;
mod error;
pub mod output;
pub mod svg;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use commands::run;
pub use error::CliError;
pub use output::RunManifest;

/// Environment variable naming a species config file.
pub const CONFIG_ENV: &str = "BOUNCER_CONFIG";

#[derive(Debug, Parser)]
#[command(
    name = "bouncer",
    version,
    about = "Quantum bouncer: Airy eigenstates and their classical limit"
)]
pub struct Cli {
    /// Directory for every file the command writes.
    #[arg(long, global = true, default_value = "out")]
    pub out_dir: PathBuf,

    /// Leave the generation timestamp out of SVG output.
    #[arg(long, global = true)]
    pub reproducible: bool,

    /// Absolute tolerance for the numeric Fourier route.
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Airy zeros next to the asymptotic formula.
    Zeros {
        /// Largest index.
        #[arg(long, default_value_t = 20)]
        n: usize,
    },
    /// Quantum and classical densities of one state, as CSV and SVG.
    Density {
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Grid points on [0, 1.5 h].
        #[arg(long, default_value_t = 1501)]
        grid: usize,
    },
    /// Probability of finding the particle above the turning point.
    Tailprob {
        #[arg(long, value_delimiter = ',', default_value = "1,2,10,30")]
        n_list: Vec<usize>,
    },
    /// Fourier coefficients of one state by several routes.
    Fourier {
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// Largest Q = q h.
        #[arg(long, default_value_t = 30.0)]
        q_max: f64,
        /// Number of Q values on [0, q-max].
        #[arg(long, default_value_t = 101)]
        grid: usize,
        /// Any of numeric, albright0, albright1, closed, classical.
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "numeric,albright0,albright1,closed,classical"
        )]
        routes: Vec<String>,
    },
    /// Convergence study across states, with a log-log chart of the
    /// coefficient deviation.
    Limit {
        #[arg(long, value_delimiter = ',', default_value = "10,20,50,100,200")]
        n_list: Vec<usize>,
    },
    /// Quantum number reached by a drop, for a species or explicit l_g.
    Regime {
        /// Species label or alias from the config.
        #[arg(long)]
        species: Option<String>,
        /// Gravitational length in micrometres (overrides the species).
        #[arg(long)]
        lg_um: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        height_mm: f64,
    },
}
