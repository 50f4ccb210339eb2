use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ris_cim::harness::{
    emit_curve_csv, emit_sweep_csv, run_array_sweep, run_curve, run_perturbation_sweep,
    run_sparsity_sweep, write_curve, write_sweep, ArraySize,
};
use ris_cim::{Error, SimConfig, Strategy};

#[derive(Parser)]
#[command(
    name = "ris-cim",
    version,
    about = "RIS-assisted mmWave cluster index modulation simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// ABER versus transmit power with the union bound.
    Curve(Common),
    /// ABER at `sweep_power_dbm` for each (sweep_antennas, sweep_ris) pair.
    ArraySweep(Common),
    /// ABER over the sweep_clusters × sweep_paths grid per strategy.
    SparsitySweep(Common),
    /// ABER versus power for each cluster displacement in sweep_deltas_deg.
    PerturbSweep(Common),
}

#[derive(Args)]
struct Common {
    /// TOML configuration file; unset keys take their defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Trials per power point.
    #[arg(long)]
    trials: Option<u64>,
    /// Output CSV (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// bgcs-cim, simple-cim, ssm or rcs.
    #[arg(long)]
    strategy: Option<String>,
    #[arg(long)]
    threads: Option<usize>,
}

impl Common {
    fn load(&self) -> Result<SimConfig, Error> {
        let mut cfg = match &self.config {
            Some(path) => SimConfig::from_file(path).map_err(|e| match e {
                Error::Io { .. } => Error::Config(e.to_string()),
                other => other,
            })?,
            None => SimConfig::default(),
        };
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(t) = self.trials {
            cfg.trials_per_point = t;
        }
        if let Some(s) = &self.strategy {
            cfg.strategy = s
                .parse::<Strategy>()
                .map_err(|e| Error::Config(e.to_string()))?;
        }
        if self.threads.is_some() {
            cfg.threads = self.threads;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn run(cmd: &Command) -> Result<(), Error> {
    let (common, kind) = match cmd {
        Command::Curve(c) => (c, 0),
        Command::ArraySweep(c) => (c, 1),
        Command::SparsitySweep(c) => (c, 2),
        Command::PerturbSweep(c) => (c, 3),
    };
    let cfg = common.load()?;
    let out = common.out.as_deref();
    if kind == 0 {
        let curve = run_curve(&cfg)?;
        if curve.redraws > 0 {
            log::warn!(
                "{} channel draws discarded (singular combiner)",
                curve.redraws
            );
        }
        return match out {
            Some(path) => emit_curve_csv(&curve, path),
            None => write_curve(&curve, std::io::stdout()).map_err(stdout_err),
        };
    }
    let rows = match kind {
        1 => {
            let sizes: Vec<ArraySize> = cfg
                .sweep_antennas
                .iter()
                .zip(&cfg.sweep_ris)
                .map(|(&a, &r)| ArraySize::square(a, r))
                .collect();
            run_array_sweep(&cfg, &sizes)?
        }
        2 => {
            let strategies = if common.strategy.is_some() {
                vec![cfg.strategy]
            } else {
                cfg.sweep_strategies.clone()
            };
            run_sparsity_sweep(&cfg, &cfg.sweep_clusters, &cfg.sweep_paths, &strategies)?
        }
        _ => run_perturbation_sweep(&cfg, &cfg.sweep_deltas_deg)?,
    };
    match out {
        Some(path) => emit_sweep_csv(&rows, path),
        None => write_sweep(&rows, std::io::stdout()).map_err(stdout_err),
    }
}

fn stdout_err(source: csv::Error) -> Error {
    Error::Csv {
        path: "<stdout>".into(),
        source,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Config(_) => ExitCode::from(2),
                _ => ExitCode::from(3),
            }
        }
    }
}
