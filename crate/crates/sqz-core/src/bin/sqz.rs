//! `sqz`: squeezed-light and interferometer quantum-noise simulations.
//!
//! Every subcommand reads a flat key-value config file, runs the
//! corresponding simulation, and writes CSV plus a JSON provenance mirror
//! (or prints to stdout when no output path is given).
//!
//! Exit codes: 0 success, 2 usage/config error, 3 numeric-domain error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sqz_core::cli::commands::{exit_code_for, run_command, OutputFormat, RunOptions};
use sqz_core::cli::config::FlatConfig;

#[derive(Parser)]
#[command(
    name = "sqz",
    version,
    about = "Squeezed-light states, photon statistics, entanglement criteria and \
             interferometer quantum-noise budgets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Shot/radiation-pressure/SQL/total noise spectra with optional
    /// squeezed-light injection.
    NoiseBudget(CommonArgs),
    /// Photon-number distributions of squeezed and displaced states.
    PhotonStats(CommonArgs),
    /// Wigner-function grid of a (displaced, lossy) squeezed state.
    Wigner(CommonArgs),
    /// Time-domain homodyne trace of a signal in squeezed noise, analyzed
    /// into a spectrum.
    HomodyneSim(CommonArgs),
    /// Dual-readout (quantum dense metrology) spectra with veto mask.
    Qdm(CommonArgs),
    /// Duan and Reid criteria for a bipartite squeezed state.
    Entanglement(CommonArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::NoiseBudget(_) => "noise-budget",
            Command::PhotonStats(_) => "photon-stats",
            Command::Wigner(_) => "wigner",
            Command::HomodyneSim(_) => "homodyne-sim",
            Command::Qdm(_) => "qdm",
            Command::Entanglement(_) => "entanglement",
        }
    }

    fn args(&self) -> &CommonArgs {
        match self {
            Command::NoiseBudget(a)
            | Command::PhotonStats(a)
            | Command::Wigner(a)
            | Command::HomodyneSim(a)
            | Command::Qdm(a)
            | Command::Entanglement(a) => a,
        }
    }
}

#[derive(Args)]
struct CommonArgs {
    /// Flat key-value run configuration (required for noise-budget;
    /// other commands fall back to built-in defaults).
    #[arg(long)]
    config: Option<PathBuf>,

    /// Output path. CSV format also writes a `.json` metadata mirror next
    /// to it. Without this flag the primary format goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,

    /// PRNG seed for the stochastic commands; identical inputs and seed
    /// reproduce byte-identical output.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    let args = cli.command.args();

    let cfg = match &args.config {
        Some(path) => FlatConfig::from_file(path),
        None if name == "noise-budget" => Err(sqz_core::Error::Config(
            "noise-budget requires --config".into(),
        )),
        None => FlatConfig::parse(""),
    };
    let cfg = match cfg {
        Ok(cfg) => cfg,
        Err(err) => return fail(&err),
    };
    let opts = RunOptions {
        out: args.out.clone(),
        format: match args.format {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        },
        seed: args.seed,
    };
    match run_command(name, &cfg, &opts) {
        Ok(result) => {
            use std::io::Write;
            // a closed pipe (e.g. `sqz ... | head`) is not an error
            match std::io::stdout().write_all(result.stdout.as_bytes()) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
                Err(e) => fail(&sqz_core::Error::Io(e)),
            }
        }
        Err(err) => fail(&err),
    }
}

fn fail(err: &sqz_core::Error) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(exit_code_for(err) as u8)
}
