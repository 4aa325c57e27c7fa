//! `dbubble`: evaluate, construct, search, bound and certify ℓ1 double
//! bubbles from the command line.

mod commands;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use error::CliError;
use output::RunManifest;

#[derive(Debug, Parser)]
#[command(name = "dbubble", version, about = "Exact and numerical tools for the l1 double-bubble problem")]
struct Cli {
    /// Worker threads for searches and certification (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// Write a run manifest (command, parameters, version, outputs) here.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(untagged)]
enum Command {
    /// Energy breakdown of a grid file.
    Energy(EnergyArgs),
    /// Optimal planar pair for areas a and b.
    Planar(PlanarArgs),
    /// Optimal cuboid pair for volumes V_A and V_B.
    Emin(EminArgs),
    /// Slicing lower bound of a 3D grid configuration.
    Bound(BoundArgs),
    /// Exhaustive planar search.
    Search2d(SearchArgs),
    /// Exhaustive spatial search.
    Search3d(SearchArgs),
    /// Exhaustive minima against the continuous closed forms.
    Sweep(SweepArgs),
    /// Numerical certification of the one-variable inequalities.
    VerifyLemmas(VerifyArgs),
    /// Slicing inequality with its two parts, for one axis.
    CheckSlicing(CheckSlicingArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Energy(_) => "energy",
            Command::Planar(_) => "planar",
            Command::Emin(_) => "emin",
            Command::Bound(_) => "bound",
            Command::Search2d(_) => "search2d",
            Command::Search3d(_) => "search3d",
            Command::Sweep(_) => "sweep",
            Command::VerifyLemmas(_) => "verify-lemmas",
            Command::CheckSlicing(_) => "check-slicing",
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct EnergyArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Print JSON instead of one line of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct PlanarArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub b: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct EminArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub va: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub vb: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct BoundArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Axis 1, 2 or 3, or `auto` for the axis of least overlap.
    #[arg(long, default_value = "auto")]
    pub axis: String,
}

#[derive(Debug, Args, Serialize)]
pub struct SearchArgs {
    #[arg(long)]
    pub va: u64,
    #[arg(long)]
    pub vb: u64,
    /// Raise the limit on V_A + V_B.
    #[arg(long, env = "DBUBBLE_MAX_CELLS")]
    pub max_cells: Option<u64>,
    /// Allow A and B to be disconnected.
    #[arg(long)]
    pub no_connectivity: bool,
    /// Enumerate every placement instead of one per isometry class.
    #[arg(long)]
    pub no_symmetry: bool,
    /// Bounding box, e.g. `3x4` or `2x2x3`.
    #[arg(long = "box")]
    pub bounding_box: Option<String>,
    /// Write one grid file per optimum class here.
    #[arg(long)]
    pub witness_dir: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct SweepArgs {
    #[arg(long)]
    pub dim: usize,
    #[arg(long)]
    pub max_total: u64,
    #[arg(long)]
    pub out: PathBuf,
    /// Witness grids go here (default: `<out>_witnesses` beside the CSV).
    #[arg(long)]
    pub witness_dir: Option<PathBuf>,
    #[arg(long, env = "DBUBBLE_MAX_CELLS")]
    pub max_cells: Option<u64>,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    /// `dense` or `fast`.
    #[arg(long, default_value = "dense")]
    pub grid: String,
}

#[derive(Debug, Args, Serialize)]
pub struct CheckSlicingArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub axis: usize,
}

fn fail(err: &CliError) -> ExitCode {
    let line = serde_json::json!({"error": err.code(), "message": err.to_string()});
    eprintln!("{line}");
    ExitCode::from(err.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return fail(&CliError::usage(e.kind().to_string()));
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            return fail(&CliError::usage(format!("--threads: {e}")));
        }
    }
    let mut manifest = RunManifest::start(cli.command.name(), &cli.command);
    let outcome = commands::run(&cli.command, &mut manifest.outputs);
    let (report, result) = match outcome {
        Ok(out) => (Some(out.report), out.status),
        Err(e) => (None, Err(e)),
    };
    if let Some(text) = &report {
        print!("{text}");
        if let Some(path) = &cli.report {
            if let Err(e) = output::write_file(path, text) {
                return fail(&e);
            }
            manifest.outputs.push(path.clone());
        }
    }
    if let Some(path) = &cli.manifest {
        manifest.finish();
        let text = output::to_text(&serde_json::to_value(&manifest).expect("manifest serializes"));
        if let Err(e) = output::write_file(path, &text) {
            return fail(&e);
        }
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(&e),
    }
}
