mod commands;
mod output;
mod presets;
mod scenario;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use commands::Run;
use output::Sink;
use presets::{Figure, Step};
use scenario::Scenario;

#[derive(Parser)]
#[command(
    name = "vortex",
    version,
    about = "Twisted electron wave packets in short laser pulses"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Args)]
struct Config {
    #[arg(long)]
    config: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate E, A and the phase integrals over the pulse support.
    Field(Config),
    /// Radial current profiles of the Bessel and rotated families.
    Current(Config),
    /// Density snapshots integrated over z.
    Simulate(Config),
    /// Transverse means over time and angular momentum statistics.
    Observables(Config),
    /// Averaged and single classical trajectories.
    Classical(Config),
    /// Angular momentum against the carrier-envelope phase.
    Sweep(Config),
    /// Run a figure preset.
    Reproduce {
        figure: Figure,
        /// Full-resolution grids instead of the desk preset.
        #[arg(long)]
        full: bool,
    },
}

fn run_step(step: Step, scenario: &Scenario, dir: &Path, label: &str) -> Result<()> {
    let res = scenario.resolve()?;
    let sink = Sink::new(dir, label, scenario)?;
    let run = Run {
        scenario,
        res,
        sink: &sink,
    };
    match step {
        Step::Simulate => commands::simulate(&run),
        Step::Observables => commands::observables(&run),
        Step::Classical => commands::classical(&run),
        Step::Current => commands::current(&run),
        Step::Sweep => commands::sweep(&run),
    }
}

fn execute(cli: Cli) -> Result<()> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("setting up the thread pool")?;
    }
    let single = |cfg: &Config, label: &str, f: fn(&Run) -> Result<()>| -> Result<()> {
        let scenario = Scenario::load(&cfg.config)?;
        let res = scenario.resolve()?;
        let sink = Sink::new(&cli.out, label, &scenario)?;
        f(&Run {
            scenario: &scenario,
            res,
            sink: &sink,
        })?;
        println!(
            "[{label}] outputs in {} (scenario {})",
            cli.out.display(),
            &sink.hash()[..12]
        );
        Ok(())
    };
    match &cli.command {
        Command::Field(c) => single(c, "field", commands::field),
        Command::Current(c) => single(c, "current", commands::current),
        Command::Simulate(c) => single(c, "simulate", commands::simulate),
        Command::Observables(c) => single(c, "observables", commands::observables),
        Command::Classical(c) => single(c, "classical", commands::classical),
        Command::Sweep(c) => single(c, "sweep", commands::sweep),
        Command::Reproduce { figure, full } => {
            let (scenario, steps) = presets::preset(*figure, *full);
            let name = format!("{figure:?}").to_lowercase();
            let dir = cli.out.join(&name);
            for step in steps {
                let label = format!("reproduce {name} {}", format!("{step:?}").to_lowercase());
                run_step(step, &scenario, &dir, &label)?;
            }
            println!("[reproduce] outputs in {}", dir.display());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
