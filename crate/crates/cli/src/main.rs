//! `uhf`: runs the numerical checks and prints machine-readable reports.
//!
//! Exit status is 0 when every check passes, 1 when any fails and 2 on a
//! usage or configuration error.

mod config;
mod output;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use uhf_core::checks::{run_all, CheckConfig, Suite};
use uhf_core::report::CheckReport;

use config::ConfigFile;

#[derive(Debug, Parser)]
#[command(
    name = "uhf",
    version,
    about = "Numerical checks for the scalar and Dirac models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
enum Command {
    /// Propagator and g_m bounds, fundamental-length estimate.
    Bounds,
    /// Direct against decomposed propagator, massless closed form.
    Propagator,
    /// Multi-index Wick sums against matchings, exponential closed form, growth.
    Jaffe,
    /// Determinant closed form against the truncated series; coordinate maps.
    GaussVev,
    /// Derivative identity of the two-point expectation.
    Deq,
    /// Jost symmetry, antisymmetry, carrier margin, contour invariance.
    Causality,
    /// Delta-series localization on a strip.
    Localize,
    /// Gamma algebra, spinor traces, fermionic Wick sums.
    Dirac,
    /// Every check above.
    ReportAll,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum OutFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, clap::Args)]
struct Flags {
    #[arg(long, global = true)]
    mass: Option<f64>,
    #[arg(long, global = true)]
    dirac_mass: Option<f64>,
    #[arg(long, global = true)]
    coupling_l: Option<f64>,
    #[arg(long, global = true)]
    trunc: Option<usize>,
    #[arg(long, global = true)]
    quad_nodes: Option<usize>,
    #[arg(long, global = true)]
    quad_cutoff: Option<f64>,
    #[arg(long, global = true)]
    epsilon: Option<f64>,
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true)]
    grid: Option<usize>,
    #[arg(long, global = true)]
    nmax: Option<usize>,
    /// Shift for the localization series; repeatable.
    #[arg(long = "a", global = true, allow_negative_numbers = true)]
    a: Vec<f64>,
    #[arg(long, global = true, value_enum)]
    out: Option<OutFormat>,
    /// Seed for sampled point sets.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// File of `key = value` lines; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

impl Command {
    fn suite(self) -> Option<Suite> {
        Some(match self {
            Command::Bounds => Suite::Bounds,
            Command::Propagator => Suite::Propagator,
            Command::Jaffe => Suite::Jaffe,
            Command::GaussVev => Suite::GaussVev,
            Command::Deq => Suite::Deq,
            Command::Causality => Suite::Causality,
            Command::Localize => Suite::Localize,
            Command::Dirac => Suite::Dirac,
            Command::ReportAll => return None,
        })
    }
}

fn resolve(flags: &Flags) -> Result<(CheckConfig, OutFormat), String> {
    let file = match &flags.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let mut cfg = CheckConfig::default();
    macro_rules! pick {
        ($field:ident, $key:literal) => {
            if let Some(v) = flags.$field.or(file.get($key)?) {
                cfg.$field = v;
            }
        };
    }
    pick!(mass, "mass");
    pick!(dirac_mass, "dirac-mass");
    pick!(coupling_l, "coupling-l");
    pick!(quad_nodes, "quad-nodes");
    pick!(quad_cutoff, "quad-cutoff");
    pick!(grid, "grid");
    pick!(nmax, "nmax");
    pick!(seed, "seed");
    cfg.trunc = flags.trunc.or(file.get("trunc")?);
    cfg.epsilon = flags.epsilon.or(file.get("epsilon")?);
    cfg.tol = flags.tol.or(file.get("tol")?);
    if !flags.a.is_empty() {
        cfg.a_values = flags.a.clone();
    } else if !file.a.is_empty() {
        cfg.a_values = file.a.clone();
    }
    let out = match flags.out {
        Some(o) => o,
        None => match file.get::<String>("out")? {
            Some(s) => OutFormat::from_str(&s, true)
                .map_err(|_| format!("invalid value `{s}` for `out`"))?,
            None => OutFormat::Json,
        },
    };
    cfg.validate().map_err(|e| e.to_string())?;
    Ok((cfg, out))
}

fn emit(reports: &[CheckReport], format: OutFormat) -> io::Result<()> {
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    match format {
        OutFormat::Json => output::write_json(reports, &mut lock)?,
        OutFormat::Csv => output::write_csv(reports, &mut lock).map_err(io::Error::other)?,
    }
    lock.flush()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let (cfg, format) = match resolve(&cli.flags) {
        Ok(v) => v,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let reports = match cli.command.suite() {
        Some(suite) => suite.run(&cfg),
        None => run_all(&cfg),
    };
    let reports = match reports {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&reports, format) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if reports.iter().all(|r| r.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
