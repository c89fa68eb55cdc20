//! Argument parsing and dispatch.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::commands;
use crate::config::{parse_list, ConfigFile, GraphSource, Method, ModeKind, Settings};
use crate::error::{CliError, Result};

const CONFIG_HELP: &str = "\
Config file (--config): one `key = value` per line, `#` starts a comment.
Flags override the file, the file overrides built-in defaults. Keys:
  graph, random_regular, vars, mode, shots, noise, seeds, steepness,
  population, max_iterations, mutation_prob, crossover_prob, elitism_count,
  parents_fraction, stall_limit, lower_bound, upper_bound, points, repeats,
  r_list, methods, gw_rank, gw_roundings, gw_seed, random_samples, random_seed
Lists are comma separated; `a..b` expands to a, a+1, ..., b-1.

LOGCUT_THREADS caps the number of worker threads.
Exit status: 0 success, 1 usage error, 2 run-time failure.";

#[derive(Debug, Parser)]
#[command(name = "logcut", version, about = "Log-qubit variational MaxCut experiments", after_help = CONFIG_HELP)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the solver once per seed and emit one JSON record per line.
    Solve(CommonArgs),
    /// Sample N_cuts along the single-variable layout as CSV.
    Landscape(CommonArgs),
    /// Decoded-cut statistics against the number of variables, as CSV.
    SweepVars(CommonArgs),
    /// Cut of each requested method plus ratio bounds, as JSON.
    Compare(CommonArgs),
}

#[derive(Debug, Args, Default)]
pub struct CommonArgs {
    /// Edge-list file.
    #[arg(long, value_name = "FILE", conflicts_with = "random_regular")]
    pub graph: Option<PathBuf>,
    /// Random regular graph: vertices, degree, generator seed.
    #[arg(long, value_name = "N,D,SEED")]
    pub random_regular: Option<GraphSource>,
    /// Number of continuous variables (must divide the padded vertex count).
    #[arg(long = "vars", value_name = "R")]
    pub vars: Option<usize>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeKind>,
    /// Shots per Pauli string in pauli-sampled mode.
    #[arg(long, value_name = "K")]
    pub shots: Option<u32>,
    /// Relative uniform noise on every objective evaluation.
    #[arg(long, value_name = "LEVEL")]
    pub noise: Option<f64>,
    /// Seeds, e.g. `0,1,2` or `0..20`.
    #[arg(long, value_name = "LIST")]
    pub seeds: Option<String>,
    /// Relaxation steepness m_r (default: block size + 2).
    #[arg(long, value_name = "M")]
    pub steepness: Option<u32>,
    #[arg(long)]
    pub population: Option<usize>,
    #[arg(long, value_name = "N")]
    pub max_iterations: Option<usize>,
    /// Landscape points over [0, 2π].
    #[arg(long, value_name = "N")]
    pub points: Option<usize>,
    /// Runs per r in sweep-vars when --seeds is absent.
    #[arg(long, value_name = "N")]
    pub repeats: Option<usize>,
    /// Variable counts for sweep-vars (default: every power of two).
    #[arg(long, value_name = "LIST")]
    pub r_list: Option<String>,
    /// Any of quantum-ga, gw, exact, random.
    #[arg(long, value_name = "LIST")]
    pub methods: Option<String>,
    /// Write output here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
}

impl CommonArgs {
    /// Defaults, then the config file, then these flags.
    pub fn settings(&self) -> Result<Settings> {
        let mut s = Settings::default();
        if let Some(path) = &self.config {
            s.apply_config(&ConfigFile::load(path)?, path.parent())?;
        }
        if let Some(path) = &self.graph {
            s.graph = Some(GraphSource::File(path.clone()));
        }
        if let Some(src) = &self.random_regular {
            s.graph = Some(src.clone());
        }
        macro_rules! flag {
            ($($field:ident),*) => {$(
                if let Some(v) = self.$field {
                    s.$field = v;
                }
            )*};
        }
        flag!(mode, shots, noise, population, max_iterations, points, repeats);
        if self.vars.is_some() {
            s.vars = self.vars;
        }
        if self.steepness.is_some() {
            s.steepness = self.steepness;
        }
        if let Some(v) = &self.seeds {
            s.seeds = Some(parse_list("seeds", v)?);
        }
        if let Some(v) = &self.r_list {
            s.r_list = Some(parse_list("r-list", v)?);
        }
        if let Some(v) = &self.methods {
            s.methods = parse_list::<Method>("methods", v)?;
        }
        Ok(s)
    }
}

/// Parses `args` and runs the command; returns the process exit status.
/// Diagnostics go to `err`, command output to `--out` or `out`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "logcut: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli, stdout: &mut dyn Write) -> Result<()> {
    let args = match &cli.command {
        Command::Solve(a) | Command::Landscape(a) | Command::SweepVars(a) | Command::Compare(a) => a,
    };
    let settings = args.settings()?;
    let threads = commands::thread_limit()?;
    let mut file;
    let out: &mut dyn Write = match &args.out {
        Some(path) => {
            file = BufWriter::new(File::create(path).map_err(|e| CliError::io(path, e))?);
            &mut file
        }
        None => stdout,
    };
    match &cli.command {
        Command::Solve(_) => commands::cmd_solve(&settings, threads, out)?,
        Command::Landscape(_) => commands::cmd_landscape(&settings, out)?,
        Command::SweepVars(_) => commands::cmd_sweep_vars(&settings, threads, out)?,
        Command::Compare(_) => commands::cmd_compare(&settings, threads, out)?,
    }
    out.flush()?;
    Ok(())
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    run(std::env::args_os(), &mut out, &mut io::stderr())
}
