//! `pe-trace`: command-line workflows over the PE-loop tracer model.
//!
//! The binary is a thin wrapper around [`run`], which takes the argument
//! list and returns the process exit code.

mod commands;
mod config;
mod error;
mod units;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use error::{CliError, EXIT_COMPUTE, EXIT_OK, EXIT_USAGE};

/// Environment variable holding the default seed.
pub const SEED_ENV: &str = "PETRA_SEED";

#[derive(Debug, Parser)]
#[command(name = "pe-trace", version, about = "Transimpedance PE-loop tracer workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fit a series RC model to an impedance spectrum CSV.
    FitRc(FitRcArgs),
    /// Simulate the amplifier output for a drive waveform.
    Simulate(SimulateArgs),
    /// Run the SNR characterization and derive operational ranges.
    Characterize(CharacterizeArgs),
    /// Build a PE loop and its metrics from drive and current records.
    PeLoop(PeLoopArgs),
    /// Derive the range table from an existing characterization report.
    RangeTable(RangeTableArgs),
}

#[derive(Debug, Args)]
struct FitRcArgs {
    /// Impedance CSV (`frequency_hz,resistance_ohm,reactance_ohm`).
    input: PathBuf,
    /// Write the fitted parameters as `metric,value,unit` CSV.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

/// Transducer model and noise flags shared by `simulate` and `characterize`.
#[derive(Debug, Args)]
struct ModelArgs {
    /// Series resistance of the transducer [default: 131.8k].
    #[arg(long)]
    resistance: Option<String>,
    /// Series capacitance of the transducer [default: 0.707nF].
    #[arg(long)]
    capacitance: Option<String>,
    /// `off` disables every noise source, including the bias current.
    #[arg(long)]
    noise: Option<String>,
    /// Output-referred white noise RMS.
    #[arg(long)]
    noise_rms: Option<String>,
    /// Mains pickup amplitude at the output.
    #[arg(long)]
    line_amplitude: Option<String>,
    /// Mains frequency [default: 50Hz].
    #[arg(long)]
    line_frequency: Option<String>,
    /// Input bias current [default: 3fA].
    #[arg(long)]
    bias_current: Option<String>,
    /// Noise seed [default: $PETRA_SEED, else 0].
    #[arg(long)]
    seed: Option<String>,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// key = value run configuration.
    #[arg(short, long)]
    config: Option<PathBuf>,
    /// Gain index 1-5 (R_f = 10^(2+k) Ω).
    #[arg(long)]
    gain: Option<String>,
    /// Drive voltage CSV (`time_s,voltage_v`); must hold whole cycles.
    #[arg(long, conflicts_with = "sine")]
    drive: Option<PathBuf>,
    /// Generate a sine drive at this frequency.
    #[arg(long)]
    sine: Option<String>,
    /// Peak transducer current of the generated sine.
    #[arg(long, conflicts_with = "amp_voltage")]
    amp_current: Option<String>,
    /// Peak voltage of the generated sine.
    #[arg(long)]
    amp_voltage: Option<String>,
    /// Cycles of the generated sine [default: 20].
    #[arg(long)]
    cycles: Option<String>,
    /// Sample rate of the generated sine; must be a whole multiple of the frequency.
    #[arg(long)]
    sample_rate: Option<String>,
    #[command(flatten)]
    model: ModelArgs,
    /// Output waveform CSV [default: stdout].
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CharacterizeArgs {
    /// key = value run configuration.
    #[arg(short, long)]
    config: Option<PathBuf>,
    /// Directory receiving report.csv, regression.csv, range_table.csv and plot_data.csv.
    #[arg(short, long)]
    output_dir: PathBuf,
    /// Comma-separated gain indices [default: 1,2,3,4,5].
    #[arg(long)]
    gains: Option<String>,
    /// Comma-separated RMS currents; default is 8 log-spaced points over 5 decades below each i_max.
    #[arg(long)]
    currents: Option<String>,
    /// Per-gain drive frequencies as `gain:freq` pairs [default: 5:3Hz, others 100Hz].
    #[arg(long)]
    frequencies: Option<String>,
    /// Current of the calibration anchor [default: 2pA].
    #[arg(long)]
    anchor_current: Option<String>,
    /// SNR pinned at the calibration anchor [default: 6 dB].
    #[arg(long)]
    anchor_snr: Option<String>,
    /// Cycles per simulated record [default: 20].
    #[arg(long)]
    cycles: Option<String>,
    /// Also run the ±1 decade impedance sweep and write sweep.csv (`on`/`off`).
    #[arg(long)]
    sweep: Option<String>,
    #[command(flatten)]
    model: ModelArgs,
}

#[derive(Debug, Args)]
struct PeLoopArgs {
    /// key = value run configuration.
    #[arg(short, long)]
    config: Option<PathBuf>,
    /// Drive voltage CSV (`time_s,voltage_v`).
    #[arg(long)]
    drive: PathBuf,
    /// Current CSV (`time_s,current_a`), or amplifier output (`time_s,voltage_v`) with --gain.
    #[arg(long)]
    current: PathBuf,
    /// Electrode area (m2; prefixes are squared, so `1cm2` = 1e-4).
    #[arg(long)]
    area: Option<String>,
    /// Film thickness (m).
    #[arg(long)]
    thickness: Option<String>,
    /// Gain index used to convert an amplifier-output record to current.
    #[arg(long)]
    gain: Option<String>,
    /// Skip the mains notch before integration.
    #[arg(long)]
    no_notch: bool,
    /// Mains frequency for the notch [default: 50Hz].
    #[arg(long)]
    line_frequency: Option<String>,
    /// Loop CSV (`field_v_per_m,polarization_c_per_m2`).
    #[arg(short, long)]
    output: PathBuf,
    /// Metrics sidecar [default: <output stem>_metrics.csv].
    #[arg(long)]
    metrics: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RangeTableArgs {
    /// Characterization report CSV.
    input: PathBuf,
    /// Range table CSV [default: stdout].
    #[arg(short, long)]
    output: Option<PathBuf>,
}

/// Runs one invocation and returns its exit code. Diagnostics go to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::FitRc(a) => commands::fit_rc(a),
        Command::Simulate(a) => commands::simulate(a),
        Command::Characterize(a) => commands::characterize(a),
        Command::PeLoop(a) => commands::pe_loop(a),
        Command::RangeTable(a) => commands::range_table(a),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
