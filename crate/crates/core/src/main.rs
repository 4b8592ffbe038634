//! Command-line front end: sweep the correlation measures over `kappa_t` and
//! emit CSV, or report where the cavity and reservoir LQU curves merge.
//!
//! Exit codes: 0 success, 1 invalid arguments, 2 numerical or I/O failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use cavity_lqu::sweep::{
    detect_merge, run_sweep, write_csv, write_csv_path, StateSpec, SweepConfig, DEFAULT_EQUAL_TOL,
    DEFAULT_KT_MAX, DEFAULT_STEPS,
};

#[derive(Parser)]
#[command(
    name = "cavity-lqu",
    about = "Local quantum uncertainty dynamics of cavity-reservoir qubits",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GridArgs {
    /// Initial cavity-pair state: pure:ALPHA or werner:P
    #[arg(long)]
    state: String,
    /// Upper end of the kappa_t grid
    #[arg(long, default_value_t = DEFAULT_KT_MAX)]
    kt_max: f64,
    /// Number of grid points on [0, kt_max]
    #[arg(long, default_value_t = DEFAULT_STEPS)]
    steps: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep kappa_t and write the measure curves as CSV
    Sweep {
        #[command(flatten)]
        grid: GridArgs,
        /// Output file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
        /// Re-verify every 10th lqu_cc value against the brute-force
        /// minimizer
        #[arg(long)]
        oracle_check: bool,
    },
    /// Report where the cavity and reservoir LQU curves meet and separate
    Events {
        #[command(flatten)]
        grid: GridArgs,
        /// Curves closer than this count as equal
        #[arg(long, default_value_t = DEFAULT_EQUAL_TOL)]
        equal_tol: f64,
    },
}

const EXIT_BAD_ARGS: u8 = 1;
const EXIT_NUMERICAL: u8 = 2;

fn parse_state(raw: &str) -> Result<StateSpec, u8> {
    let spec: StateSpec = raw.parse().map_err(|e| {
        eprintln!("error: {}", e);
        EXIT_BAD_ARGS
    })?;
    // surface parameter-range problems as argument errors up front
    spec.build().map_err(|e| {
        eprintln!("error: {}", e);
        EXIT_BAD_ARGS
    })?;
    Ok(spec)
}

fn build_config(grid: &GridArgs) -> Result<SweepConfig, u8> {
    let mut cfg = SweepConfig::new(parse_state(&grid.state)?);
    cfg.kt_max = grid.kt_max;
    cfg.steps = grid.steps;
    if !(cfg.kt_max.is_finite() && cfg.kt_max > 0.0) || cfg.steps < 2 {
        eprintln!(
            "error: kt_max must be positive and steps at least 2, got {} and {}",
            cfg.kt_max, cfg.steps
        );
        return Err(EXIT_BAD_ARGS);
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<(), u8> {
    match cli.command {
        Command::Sweep {
            grid,
            out,
            oracle_check,
        } => {
            let mut cfg = build_config(&grid)?;
            cfg.oracle_check = oracle_check;
            let records = run_sweep(&cfg).map_err(|e| {
                eprintln!("error: {}", e);
                EXIT_NUMERICAL
            })?;
            match out {
                Some(path) => write_csv_path(&records, &path).map_err(|e| {
                    eprintln!("error: {}", e);
                    EXIT_NUMERICAL
                })?,
                None => write_csv(&records, std::io::stdout().lock()).map_err(|e| {
                    eprintln!("error: {}", e);
                    EXIT_NUMERICAL
                })?,
            }
            Ok(())
        }
        Command::Events { grid, equal_tol } => {
            let cfg = build_config(&grid)?;
            if !(equal_tol.is_finite() && equal_tol > 0.0) {
                eprintln!("error: equal_tol must be positive, got {}", equal_tol);
                return Err(EXIT_BAD_ARGS);
            }
            let initial = cfg.state.build().expect("validated above");
            let records = run_sweep(&cfg).map_err(|e| {
                eprintln!("error: {}", e);
                EXIT_NUMERICAL
            })?;
            let events = detect_merge(&initial, &records, equal_tol).map_err(|e| {
                eprintln!("error: {}", e);
                EXIT_NUMERICAL
            })?;
            if events.degenerate {
                eprintln!(
                    "note: curves are within tolerance over the whole sweep (degenerate case)"
                );
            }
            let fmt_time = |t: Option<f64>| match t {
                Some(t) => format!("{:.4}", t),
                None => "none".to_string(),
            };
            println!(
                "{} {}",
                fmt_time(events.meet_kt),
                fmt_time(events.separate_kt)
            );
            if let Some(gap) = events.max_gap_in_window {
                eprintln!("note: max |lqu_cc - lqu_rr| inside the window: {:.3e}", gap);
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_BAD_ARGS,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => ExitCode::from(code),
    }
}
