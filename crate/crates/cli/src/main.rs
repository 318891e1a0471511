//! Command-line front end: per-channel capacity queries, parameter sweeps,
//! and CSV emitters for the standard figures.
//!
//! Exit codes: 0 success, 1 usage errors, 2 domain/numeric errors.
//! Diagnostics go to stderr only; CSV goes to stdout or `--output`.

mod grid;
mod table;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use capacity_core::nonlinear::{
    broadband_swap_capacity, squeeze_gain, swap_gain, BroadbandSwapConfig, SqueezeChannel,
    SwapNetwork,
};
use capacity_core::pdc::{
    asymptotic_capacity, discrete_capacity, exact_capacity, perturbative_capacity, PdcBroadband,
};
use capacity_core::thermal::{narrowband_capacity, wideband_capacity_closed};

use grid::{GridSyntaxError, SweepGrid};
use table::CsvTable;

#[derive(Parser)]
#[command(
    name = "capacity",
    version,
    about = "Energy-constrained capacities of linear and nonlinear bosonic systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Single-mode capacity g(E/omega) at fixed frequency and energy.
    Narrowband {
        /// Mode frequency (reference units)
        #[arg(long, allow_negative_numbers = true)]
        omega: f64,
        /// Mean energy
        #[arg(long, allow_negative_numbers = true)]
        energy: f64,
        /// Output CSV path (default: stdout)
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Squeezing capacity gain over an (energy ratio, coupling ratio) grid.
    Fig1 {
        /// Grid over E/omega, as start:stop:points[:log]
        #[arg(long, default_value = "0.01:100:25:log")]
        energy_grid: String,
        /// Grid over xi/omega, strictly inside [0, 1)
        #[arg(long, default_value = "0:0.95:20")]
        xi_grid: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Broadband down-conversion capacity coefficients over an energy grid.
    Fig2 {
        /// Fractional coupling bandwidth, in (0, 1)
        #[arg(long, default_value_t = 0.5)]
        zeta: f64,
        /// Dimensionless coupling 4 xi^2/omega_p^2, in [0, 0.5)
        #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
        epsilon: f64,
        /// Grid over the dimensionless energy gamma
        #[arg(long, default_value = "0.001:10:40:log")]
        gamma_grid: String,
        /// Pump-to-spacing ratio omega_p/delta_omega
        #[arg(long, default_value_t = 1e4)]
        pump_ratio: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Two-mode swapping capacity increase over an (energy, coupling) grid.
    Fig3 {
        /// Grid over E/omega
        #[arg(long, default_value = "0.01:100:25:log")]
        energy_grid: String,
        /// Grid over xi/omega, strictly inside [0, 1)
        #[arg(long, default_value = "0:0.95:20")]
        xi_grid: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Broadband down-conversion capacity from the integral partition
    /// function.
    PdcExact {
        #[command(flatten)]
        channel: PdcArgs,
        #[command(flatten)]
        energy: EnergyArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Broadband down-conversion capacity from the literal mode comb.
    PdcDiscrete {
        #[command(flatten)]
        channel: PdcArgs,
        #[command(flatten)]
        energy: EnergyArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Broadband swapping capacity against its reference curves over r.
    Swapband {
        /// Number of parallel combs
        #[arg(long, default_value_t = 3)]
        modes: usize,
        /// Comb spacing delta_omega
        #[arg(long, default_value_t = 1.0)]
        spacing: f64,
        /// Total mean energy
        #[arg(long, default_value_t = 1e5, allow_negative_numbers = true)]
        energy: f64,
        /// Grid over the contraction parameter r, inside [0, 1)
        #[arg(long, default_value = "0:0.9:10")]
        r_grid: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct PdcArgs {
    /// Pump frequency omega_p (reference units)
    #[arg(long, default_value_t = 1.0)]
    pump: f64,
    /// Comb spacing delta_omega
    #[arg(long, default_value_t = 1e-4)]
    spacing: f64,
    /// Fractional coupling bandwidth, in (0, 1)
    #[arg(long, default_value_t = 0.5)]
    zeta: f64,
    /// In-band coupling strength
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    xi: f64,
}

#[derive(clap::Args)]
struct EnergyArgs {
    /// Single mean energy
    #[arg(long, conflicts_with = "energy_grid", allow_negative_numbers = true)]
    energy: Option<f64>,
    /// Energy sweep, as start:stop:points[:log]
    #[arg(long)]
    energy_grid: Option<String>,
}

enum CliError {
    Usage(String),
    Failure(String),
}

impl From<capacity_core::Error> for CliError {
    fn from(e: capacity_core::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Failure(format!("i/o: {e}"))
    }
}

impl From<GridSyntaxError> for CliError {
    fn from(e: GridSyntaxError) -> Self {
        CliError::Usage(e.0)
    }
}

fn parse_grid(text: &str) -> Result<SweepGrid, CliError> {
    Ok(SweepGrid::parse(text)??)
}

fn emit(table: &CsvTable, output: Option<&PathBuf>) -> Result<(), CliError> {
    match output {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            table.write_to(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            // A closed consumer (e.g. `| head`) is not an error.
            match table.write_to(&mut w) {
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => {}
                other => other?,
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Narrowband { omega, energy, output } => {
            let mut t = CsvTable::new(&["omega", "energy", "capacity_bits"]);
            t.push_row(vec![omega, energy, narrowband_capacity(omega, energy)?]);
            emit(&t, output.as_ref())
        }
        Command::Fig1 { energy_grid, xi_grid, output } => {
            let energies = parse_grid(&energy_grid)?.values();
            let ratios = parse_grid(&xi_grid)?.values();
            let mut t = CsvTable::new(&["energy_ratio", "xi_ratio", "gain_bits"]);
            for &e in &energies {
                for &r in &ratios {
                    let channel = SqueezeChannel::new(1.0, r)?;
                    t.push_row(vec![e, r, squeeze_gain(&channel, e)?]);
                }
            }
            emit(&t, output.as_ref())
        }
        Command::Fig2 { zeta, epsilon, gamma_grid, pump_ratio, output } => {
            if !epsilon.is_finite() || !(0.0..0.5).contains(&epsilon) {
                return Err(CliError::Failure(format!(
                    "domain error: epsilon must lie in [0, 0.5), got {epsilon}"
                )));
            }
            if pump_ratio <= 0.0 || !pump_ratio.is_finite() {
                return Err(CliError::Failure(format!(
                    "domain error: pump ratio must be positive, got {pump_ratio}"
                )));
            }
            let gammas = parse_grid(&gamma_grid)?.values();
            let xi = 0.5 * epsilon.sqrt(); // omega_p = 1
            let channel = PdcBroadband::new(1.0, 1.0 / pump_ratio, zeta, xi)?;
            if epsilon > 0.1 {
                eprintln!(
                    "warning: epsilon = {epsilon} is above 0.1; second-order terms are not negligible"
                );
            }
            let mut t = CsvTable::new(&[
                "gamma",
                "c0_bits",
                "c1_bits",
                "capacity_bits",
                "c_asym_bits",
            ]);
            for &gamma in &gammas {
                let energy = 2.0 * gamma * pump_ratio;
                let (capacity, sol) = perturbative_capacity(&channel, energy)?;
                let asym = asymptotic_capacity(&channel, energy)?;
                t.push_row(vec![gamma, sol.c0_bits, sol.c1_bits, capacity, asym]);
            }
            emit(&t, output.as_ref())
        }
        Command::Fig3 { energy_grid, xi_grid, output } => {
            let energies = parse_grid(&energy_grid)?.values();
            let ratios = parse_grid(&xi_grid)?.values();
            let mut t = CsvTable::new(&["energy_ratio", "xi_ratio", "delta_c_bits"]);
            for &e in &energies {
                for &r in &ratios {
                    let network = SwapNetwork::pair(1.0, r)?;
                    t.push_row(vec![e, r, swap_gain(&network, e)?]);
                }
            }
            emit(&t, output.as_ref())
        }
        Command::PdcExact { channel, energy, output } => {
            let c = PdcBroadband::new(channel.pump, channel.spacing, channel.zeta, channel.xi)?;
            let t = pdc_table(&c, &energy, exact_capacity)?;
            emit(&t, output.as_ref())
        }
        Command::PdcDiscrete { channel, energy, output } => {
            let c = PdcBroadband::new(channel.pump, channel.spacing, channel.zeta, channel.xi)?;
            let t = pdc_table(&c, &energy, discrete_capacity)?;
            emit(&t, output.as_ref())
        }
        Command::Swapband { modes, spacing, energy, r_grid, output } => {
            let rs = parse_grid(&r_grid)?.values();
            let mut t = CsvTable::new(&[
                "r",
                "capacity_bits",
                "ref_sqrt_n_bits",
                "ref_contracted_bits",
            ]);
            let base = wideband_capacity_closed(energy, spacing)?;
            for &r in &rs {
                let cfg = BroadbandSwapConfig::new(modes, r, spacing)?;
                let capacity = broadband_swap_capacity(&cfg, energy)?;
                let sqrt_n = (modes as f64).sqrt() * base;
                let contracted = ((modes as f64 - 1.0) / (1.0 - r)).sqrt() * base;
                t.push_row(vec![r, capacity, sqrt_n, contracted]);
            }
            emit(&t, output.as_ref())
        }
    }
}

fn pdc_table(
    channel: &PdcBroadband,
    energy: &EnergyArgs,
    capacity: impl Fn(&PdcBroadband, f64) -> capacity_core::Result<f64>,
) -> Result<CsvTable, CliError> {
    let energies = match (&energy.energy, &energy.energy_grid) {
        (Some(e), None) => vec![*e],
        (None, Some(g)) => parse_grid(g)?.values(),
        (None, None) => {
            return Err(CliError::Usage(
                "one of --energy or --energy-grid is required".into(),
            ))
        }
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    };
    let mut t = CsvTable::new(&[
        "omega_p",
        "delta_omega",
        "zeta",
        "xi",
        "energy",
        "capacity_bits",
    ]);
    for &e in &energies {
        t.push_row(vec![
            channel.omega_p(),
            channel.delta_omega(),
            channel.zeta(),
            channel.xi(),
            e,
            capacity(channel, e)?,
        ]);
    }
    Ok(t)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{e}");
                    ExitCode::from(1)
                }
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
