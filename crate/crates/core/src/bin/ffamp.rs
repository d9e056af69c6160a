use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use ffamp::config::Config;
use ffamp::detection::{detected_variance, report_snr};
use ffamp::fit::{fit_gain, FitDomain, FitOptions};
use ffamp::io::{self, Format};
use ffamp::montecarlo::oracle_compare;
use ffamp::network::gain_summary;
use ffamp::sweep::{divergence_table, run_sweep, Formula};
use ffamp::{db_from_linear, Result};

/// Noise budgets for electro-optic phase feed-forward amplification.
#[derive(Debug, Parser)]
#[command(name = "ffamp", version)]
struct Cli {
    /// JSON configuration; defaults to the experimental parameters.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// csv or json.
    #[arg(long, global = true)]
    format: Option<Format>,
    /// paper or coefficient.
    #[arg(long, global = true)]
    formula: Option<Formula>,
    /// Apply the verification detector's efficiency.
    #[arg(long, global = true)]
    detected: bool,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    points: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Output variance at one LO angle.
    Spectrum {
        /// LO angle in radians.
        #[arg(long, allow_negative_numbers = true)]
        phi: f64,
    },
    /// Output variance over a full LO sweep.
    Sweep,
    /// Cancellation and optimal gains, transfer ratios.
    Optimize,
    /// Infer SNRs and the transfer ratio from measured levels.
    Snr,
    /// Compare a simulated record against the analytic spectrum.
    Montecarlo,
    /// Fit the gain to a measured or synthesized sweep.
    Fit {
        /// CSV with phase_rad and variance_linear columns.
        trace: PathBuf,
        /// Fit residuals in dB instead of linear variance.
        #[arg(long)]
        db: bool,
    },
    /// Tabulate the two spectrum forms against each other.
    Divergence,
}

#[derive(Serialize)]
struct SpectrumReport {
    phi: f64,
    formula: Formula,
    detected: bool,
    variance_linear: f64,
    variance_db: f64,
}

fn write(cli: &Cli, body: String) -> Result<()> {
    match &cli.out {
        Some(path) => io::write_atomic(path, &body),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let mut config = match &cli.config {
        Some(path) => Config::from_path(path)?,
        None => Config::default(),
    };
    if let Some(f) = cli.formula {
        config.sweep.formula = f;
    }
    if let Some(n) = cli.points {
        config.sweep.points = n;
    }
    if let Some(seed) = cli.seed {
        config.simulation.seed = seed;
    }
    config.sweep.detected |= cli.detected;
    let p = config.network;
    let report_format = cli.format.unwrap_or(Format::Json);
    let table_format = cli.format.unwrap_or(Format::Csv);

    match &cli.command {
        Command::Spectrum { phi } => {
            let mut v = config.sweep.formula.evaluate(&p, *phi);
            if config.sweep.detected {
                v = detected_variance(v, p.eta_det2());
            }
            let r = SpectrumReport {
                phi: *phi,
                formula: config.sweep.formula,
                detected: config.sweep.detected,
                variance_linear: v,
                variance_db: db_from_linear(v)?,
            };
            write(cli, io::render_report(&r, report_format)?)?;
        }
        Command::Sweep => {
            let trace = run_sweep(
                &p,
                config.sweep.points,
                config.sweep.formula,
                config.sweep.detected,
            )?;
            write(cli, io::render_trace(&trace, table_format)?)?;
        }
        Command::Optimize => {
            write(cli, io::render_report(&gain_summary(&p)?, report_format)?)?;
        }
        Command::Snr => {
            write(
                cli,
                io::render_report(&report_snr(&config.snr)?, report_format)?,
            )?;
        }
        Command::Montecarlo => {
            let sim = config.simulation.to_sim_config(p);
            let report = oracle_compare(&sim, &config.simulation.phases)?;
            let body = match table_format {
                Format::Csv => io::render_rows(&report.rows)?,
                Format::Json => io::render_report(&report, Format::Json)?,
            };
            write(cli, body)?;
            for row in &report.rows {
                eprintln!(
                    "phi={:.6} mc={:.5}+-{:.5} analytic={:.5} z={:+.2} {}",
                    row.phi,
                    row.monte_carlo,
                    row.standard_error,
                    row.analytic,
                    row.z_score,
                    if row.pass { "ok" } else { "DISAGREE" }
                );
            }
            if !report.all_pass() {
                return Ok(ExitCode::from(3));
            }
        }
        Command::Fit { trace, db } => {
            let detected = config.sweep.detected;
            let trace = io::read_trace_csv(trace, detected)?;
            let domain = if *db {
                FitDomain::Db
            } else {
                config.fit.domain
            };
            let options = FitOptions {
                formula: config.sweep.formula,
                domain,
            };
            write(
                cli,
                io::render_report(&fit_gain(&trace, &p, options)?, report_format)?,
            )?;
        }
        Command::Divergence => {
            let table = divergence_table(&p, config.sweep.points)?;
            let body = match table_format {
                Format::Json => io::render_report(&table, Format::Json)?,
                Format::Csv => io::render_rows(&table)?,
            };
            write(cli, body)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("ffamp: {e}");
            ExitCode::FAILURE
        }
    }
}
