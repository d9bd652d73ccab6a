//! `obtsim`: runs the protocol simulations and prints reports.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

mod report;
mod verify;

use std::f64::consts::PI;
use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use obtsim_core::{run_trials, sweep_alignment, Experiment, TeleportVariant};

use report::{Format, Params, Reference, ResultRow, RunReport};

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "obtsim",
    version,
    about = "Oblivious transfer, non-local boxes and one-qubit channels"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every exact and exhaustive check; exit 1 if any fails.
    Verify {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Monte-Carlo estimate of one experiment's success probability.
    Estimate {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(Experiment::NAMES))]
        experiment: String,
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, env = "OBTSIM_SEED", default_value_t = 42)]
        seed: u64,
        /// Angle between the sent state and the measurement axis (teleport experiments).
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Teleportation outcome statistics over K evenly spaced angles in [0, π].
    Sweep {
        #[arg(long, value_enum, default_value_t = Protocol::TeleportOt)]
        protocol: Protocol,
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(2..))]
        points: u64,
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, env = "OBTSIM_SEED", default_value_t = 42)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Protocol {
    TeleportOt,
    TeleportNlbox,
}

impl From<Protocol> for TeleportVariant {
    fn from(p: Protocol) -> Self {
        match p {
            Protocol::TeleportOt => TeleportVariant::Ot,
            Protocol::TeleportNlbox => TeleportVariant::NlBox,
        }
    }
}

fn verify() -> (RunReport, bool) {
    let checks = verify::run_checks();
    let passed = checks.iter().all(|c| c.passed);
    let report = RunReport {
        command: "verify".into(),
        params: Params::default(),
        results: checks.into_iter().map(|c| c.row).collect(),
        transcript: None,
        references: verify::references(),
    };
    (report, passed)
}

fn estimate(
    name: &str,
    trials: u64,
    seed: u64,
    theta: f64,
) -> Result<RunReport, obtsim_core::Error> {
    let mut experiment: Experiment = name.parse()?;
    let is_teleport = matches!(experiment, Experiment::Teleport { .. });
    if let Experiment::Teleport { variant, .. } = experiment {
        experiment = Experiment::teleport_at_angle(variant, theta);
    }
    let r = run_trials(&experiment, trials, seed)?;
    let reference = experiment.reference();
    Ok(RunReport {
        command: "estimate".into(),
        params: Params {
            experiment: Some(name.to_string()),
            trials: Some(trials),
            seed: Some(seed),
            theta: is_teleport.then_some(report::sig10(theta)),
            ..Params::default()
        },
        results: vec![
            ResultRow::estimated("p_hat", r.p_hat, r.ci95_low, r.ci95_high)
                .with_reference(reference),
            ResultRow::exact("successes", r.successes as f64),
        ],
        transcript: r.per_trial_resources(),
        references: vec![Reference::new(name, reference)],
    })
}

fn sweep(
    protocol: Protocol,
    points: u64,
    trials: u64,
    seed: u64,
) -> Result<RunReport, obtsim_core::Error> {
    let grid: Vec<f64> = (0..points)
        .map(|k| PI * k as f64 / (points - 1) as f64)
        .collect();
    let variant = TeleportVariant::from(protocol);
    let rows = sweep_alignment(variant, &grid, trials, seed)?;
    let transcript = rows.first().and_then(|r| r.estimate.per_trial_resources());
    let results = rows
        .iter()
        .map(|row| {
            let e = &row.estimate;
            ResultRow::estimated(
                format!("theta={}", report::sig10(row.theta)),
                e.p_hat,
                e.ci95_low,
                e.ci95_high,
            )
            .with_theta(row.theta)
            .with_reference(row.reference)
        })
        .collect();
    let references = rows
        .iter()
        .map(|row| {
            Reference::new(
                format!("(1+cos theta)/2 at theta={}", report::sig10(row.theta)),
                row.reference,
            )
        })
        .collect();
    Ok(RunReport {
        command: "sweep".into(),
        params: Params {
            protocol: Some(variant.name().to_string()),
            trials: Some(trials),
            seed: Some(seed),
            grid: Some(grid.iter().copied().map(report::sig10).collect()),
            ..Params::default()
        },
        results,
        transcript,
        references,
    })
}

fn emit(report: &RunReport, format: Format) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(report.render(format).as_bytes());
    let _ = out.flush();
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };

    let outcome = match cli.command {
        Command::Verify { format } => {
            let (report, passed) = verify();
            emit(&report, format);
            if !passed {
                for row in report.results.iter().filter(|r| r.passed == Some(false)) {
                    eprintln!("verification failed: {}", row.label);
                }
                return ExitCode::from(EXIT_FAILED);
            }
            return ExitCode::SUCCESS;
        }
        Command::Estimate {
            experiment,
            trials,
            seed,
            theta,
            format,
        } => estimate(&experiment, trials, seed, theta).map(|r| (r, format)),
        Command::Sweep {
            protocol,
            points,
            trials,
            seed,
            format,
        } => sweep(protocol, points, trials, seed).map(|r| (r, format)),
    };

    match outcome {
        Ok((report, format)) => {
            emit(&report, format);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
