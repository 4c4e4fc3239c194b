//! `lobachevsky` command-line interface.
//!
//! Exit codes: 0 success, 1 verification failure, 2 kinematic-domain
//! error (forward pole, inelastic input), 3 configuration or I/O error.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lobachevsky::amplitudes::System;

use config::{Format, Grid, RunConfig};

#[derive(Debug)]
pub enum Failure {
    Verification,
    Kinematic(String),
    Config(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification => 1,
            Failure::Kinematic(_) => 2,
            Failure::Config(_) => 3,
        }
    }
}

#[derive(Parser)]
#[command(name = "lobachevsky", version, about = "Exchange amplitudes in Lobachevsky momentum space")]
struct Cli {
    /// JSON run configuration; command-line flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the seeded identity suites.
    Verify {
        #[arg(long)]
        seed: Option<u64>,
        /// Trials per identity (replaces the per-identity defaults).
        #[arg(long)]
        trials: Option<usize>,
        /// Tolerance applied to every identity.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Evaluate one T-matrix and its structure decomposition.
    Amplitude {
        #[arg(long, default_value = "ff")]
        system: System,
        #[command(flatten)]
        physics: Physics,
        #[arg(long)]
        pmag: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        costheta: Option<f64>,
    },
    /// Structure coefficients over a (|p|, cos θ) grid, as CSV.
    Scan {
        #[arg(long, default_value = "ff")]
        system: System,
        #[command(flatten)]
        physics: Physics,
        #[command(flatten)]
        grids: Grids,
    },
    /// Boson/fermion structure ratios over a grid.
    Compare {
        #[command(flatten)]
        physics: Physics,
        #[command(flatten)]
        grids: Grids,
        /// Allowed relative spread of the tensor ratio.
        #[arg(long)]
        tol: Option<f64>,
    },
}

#[derive(Args)]
struct Physics {
    /// Fermion mass.
    #[arg(long)]
    m: Option<f64>,
    /// Boson mass.
    #[arg(long = "M")]
    big_m: Option<f64>,
    /// Exchanged-boson mass (fermion amplitude only).
    #[arg(long)]
    mu: Option<f64>,
    /// Sets g_v and g_S = g_V = g_T together.
    #[arg(long)]
    g: Option<f64>,
    #[arg(long)]
    g_v: Option<f64>,
    #[arg(long)]
    f_v: Option<f64>,
}

#[derive(Args)]
struct Grids {
    /// `start:stop:n`, inclusive.
    #[arg(long, allow_hyphen_values = true)]
    pmag_grid: Option<Grid>,
    /// `start:stop:n`, inclusive.
    #[arg(long, alias = "grid", allow_hyphen_values = true)]
    costheta_grid: Option<Grid>,
}

impl Physics {
    fn apply(&self, cfg: &mut RunConfig) {
        let c = &mut cfg.couplings;
        if let Some(g) = self.g {
            c.g_v = g;
            c.g_scalar = g;
            c.g_vector = g;
            c.g_tensor = g;
        }
        set(&mut c.g_v, self.g_v);
        set(&mut c.f_v, self.f_v);
        set(&mut c.mu, self.mu);
        set(&mut cfg.masses.m, self.m);
        set(&mut cfg.masses.big_m, self.big_m);
    }
}

impl Grids {
    fn apply(&self, cfg: &mut RunConfig) {
        if self.pmag_grid.is_some() {
            cfg.kinematics.pmag_grid = self.pmag_grid;
        }
        if self.costheta_grid.is_some() {
            cfg.kinematics.costheta_grid = self.costheta_grid;
        }
    }
}

fn set<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

fn emit(cfg: &RunConfig, text: &str) -> Result<(), Failure> {
    match &cfg.output.path {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Config(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn warn_all(warnings: &[String]) {
    for w in warnings {
        eprintln!("warning: {w}");
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let mut cfg = RunConfig::load(cli.config.as_deref())?;
    if cli.output.is_some() {
        cfg.output.path = cli.output;
    }
    match cli.command {
        Command::Verify {
            seed,
            trials,
            tol,
            format,
        } => {
            set(&mut cfg.run.seed, seed);
            cfg.run.trials = trials.or(cfg.run.trials);
            cfg.run.tol = tol.or(cfg.run.tol);
            cfg.output.format = format.or(cfg.output.format);
            cfg.validate()?;
            let (text, pass) = commands::cmd_verify(&cfg);
            emit(&cfg, &text)?;
            if !pass {
                return Err(Failure::Verification);
            }
        }
        Command::Amplitude {
            system,
            physics,
            pmag,
            costheta,
        } => {
            physics.apply(&mut cfg);
            cfg.kinematics.pmag = pmag.or(cfg.kinematics.pmag);
            cfg.kinematics.costheta = costheta.or(cfg.kinematics.costheta);
            cfg.validate()?;
            emit(&cfg, &commands::cmd_amplitude(&cfg, system)?)?;
        }
        Command::Scan {
            system,
            physics,
            grids,
        } => {
            physics.apply(&mut cfg);
            grids.apply(&mut cfg);
            cfg.validate()?;
            let (text, warnings) = commands::cmd_scan(&cfg, system)?;
            warn_all(&warnings);
            emit(&cfg, &text)?;
        }
        Command::Compare { physics, grids, tol } => {
            physics.apply(&mut cfg);
            grids.apply(&mut cfg);
            cfg.run.tol = tol.or(cfg.run.tol);
            cfg.validate()?;
            let (text, pass, warnings) = commands::cmd_compare(&cfg)?;
            warn_all(&warnings);
            emit(&cfg, &text)?;
            if !pass {
                return Err(Failure::Verification);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Verification => eprintln!("verification failed"),
                Failure::Kinematic(msg) => eprintln!("error: {msg}"),
                Failure::Config(msg) => eprintln!("config error: {msg}"),
            }
            ExitCode::from(f.code())
        }
    }
}
