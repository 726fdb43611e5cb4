//! Command-line front end: closed-form throughput evaluation, parameter
//! sweeps, finite-K Monte Carlo simulation, scheme comparison, and
//! user-number optimization. Every command is deterministic given its full
//! flag set (including the seed and regardless of --threads).

mod commands;
mod grid;
mod output;
mod svg;

use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Classified command error; the variant decides the process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, bad files, invalid parameter combinations: exit 1.
    Usage(String),
    /// Numeric-domain failures (log domain, singular or ill-conditioned
    /// systems): exit 2.
    Numeric(String),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}

impl From<zfdpc_core::Error> for CliError {
    fn from(e: zfdpc_core::Error) -> Self {
        match e {
            zfdpc_core::Error::InvalidArgument(m) => CliError::Usage(m),
            zfdpc_core::Error::NumericDomain(m) | zfdpc_core::Error::SingularMatrix(m) => {
                CliError::Numeric(m)
            }
        }
    }
}

#[derive(Parser)]
#[command(
    name = "zfdpc",
    version,
    about = "Broadcast-channel throughput under dirty-paper coding with finite-rate feedback"
)]
struct Cli {
    /// Worker threads for Monte Carlo commands (default: all cores).
    /// Results are identical for any value.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Units {
    Bits,
    Nats,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scheme {
    Zfdpc,
    Zfbf,
}

impl Scheme {
    pub fn name(&self) -> &'static str {
        match self {
            Scheme::Zfdpc => "zfdpc",
            Scheme::Zfbf => "zfbf",
        }
    }
}

/// Transmit power given either linearly or in dB.
#[derive(Args)]
#[group(required = true, multiple = false)]
pub struct PowerArg {
    /// Total transmit power, linear scale
    #[arg(long, allow_negative_numbers = true)]
    p: Option<f64>,
    /// Total transmit power in dB
    #[arg(long, allow_negative_numbers = true)]
    p_db: Option<f64>,
}

impl PowerArg {
    pub fn linear(&self) -> f64 {
        match (self.p, self.p_db) {
            (Some(p), _) => p,
            (None, Some(db)) => grid::db_to_linear(db),
            (None, None) => unreachable!("clap enforces the group"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the closed-form asymptotic throughput at one point
    Asym {
        #[command(flatten)]
        power: PowerArg,
        /// Fraction of users on, in (0, 1]
        #[arg(long)]
        sbar: f64,
        /// Feedback bits per user per antenna
        #[arg(long)]
        rbar: f64,
        #[arg(long, value_enum, default_value = "bits")]
        units: Units,
        /// Quadrature tolerance
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Sweep the asymptotic throughput over a parameter grid into CSV
    Sweep {
        /// Power grid, linear (single value, comma list, or start:stop:step)
        #[arg(long, group = "powergrid", allow_hyphen_values = true)]
        p: Option<String>,
        /// Power grid in dB
        #[arg(
            long,
            group = "powergrid",
            required_unless_present = "p",
            allow_hyphen_values = true
        )]
        p_db: Option<String>,
        /// Feedback grid
        #[arg(long)]
        rbar: String,
        /// User-fraction grid, or `opt` to maximize per (P, rbar)
        #[arg(long)]
        sbar: String,
        /// Output CSV path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Optional SVG line plot
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Monte Carlo link simulation at finite K
    Simulate {
        /// Number of antennas / users
        #[arg(long)]
        k: usize,
        /// Feedback bits per user
        #[arg(long)]
        r: usize,
        /// Active-user grid (single value, list, range, or `all`)
        #[arg(long)]
        s: String,
        #[command(flatten)]
        power: PowerArg,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 200)]
        inner: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_enum, default_value = "zfdpc")]
        scheme: Scheme,
        /// Force zero quantization error
        #[arg(long)]
        perfect_csit: bool,
        /// Output CSV path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// JSON summary path
        #[arg(long)]
        json: Option<PathBuf>,
        /// Optional SVG plot of throughput vs s
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Percentage improvement of dirty-paper coding over zero-forcing
    Compare {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        rbar: f64,
        /// Power grid in dB
        #[arg(long, allow_hyphen_values = true)]
        p_db: String,
        /// Trials for the zero-forcing Monte Carlo reference
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Optimal fraction (and number) of users to serve
    Optimize {
        #[command(flatten)]
        power: PowerArg,
        /// Feedback bits per user per antenna (or derive from --k and --r)
        #[arg(long)]
        rbar: Option<f64>,
        /// System size for the finite-K rule
        #[arg(long)]
        k: Option<usize>,
        /// Feedback bits per user for the finite-K rule
        #[arg(long)]
        r: Option<usize>,
        /// Search tolerance in sbar
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
        #[arg(long, value_enum, default_value = "bits")]
        units: Units,
    },
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    if let Some(threads) = cli.threads {
        if threads > 0 {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global();
        }
    }
    let result = match cli.command {
        Command::Asym {
            power,
            sbar,
            rbar,
            units,
            tol,
        } => commands::run_asym(power.linear(), sbar, rbar, units, tol),
        Command::Sweep {
            p,
            p_db,
            rbar,
            sbar,
            out,
            svg,
            tol,
        } => commands::run_sweep(p, p_db, &rbar, &sbar, out.as_deref(), svg.as_deref(), tol),
        Command::Simulate {
            k,
            r,
            s,
            power,
            trials,
            inner,
            seed,
            scheme,
            perfect_csit,
            out,
            json,
            svg,
        } => commands::run_simulate(commands::SimulateSpec {
            users: k,
            feedback_bits: r,
            active_grid: s,
            power: power.linear(),
            trials,
            inner,
            seed,
            scheme,
            perfect_csit,
            out,
            json,
            svg,
        }),
        Command::Compare {
            k,
            rbar,
            p_db,
            trials,
            seed,
            out,
        } => commands::run_compare(k, rbar, &p_db, trials, seed, out.as_deref()),
        Command::Optimize {
            power,
            rbar,
            k,
            r,
            tol,
            units,
        } => commands::run_optimize(power.linear(), rbar, k, r, tol, units),
    };
    match result {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(CliError::Numeric(msg)) => {
            eprintln!("numeric error: {msg}");
            2
        }
    }
}
