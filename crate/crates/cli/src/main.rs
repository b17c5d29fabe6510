use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use dold::report::{
    render_batch_summary, render_report_text, run, run_batch, BatchOutcome, CheckKind,
    ComputationRequest, Report, RunContext,
};

/// Exact mod-2 cohomology presentations of generalized Dold spaces, with
/// certificates and CW cross-checks.
#[derive(Parser)]
#[command(name = "dold", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run a single computation request.
    Run {
        /// Request as a file path, inline JSON, or `-` for stdin.
        #[arg(long)]
        input: String,
        /// Degree bound override (defaults to fibre dimension + m + 2, or
        /// 20 for an untruncated base).
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Comma-separated checks overriding the request's own list
        /// (hilbert, regular-sequence, cw-crosscheck, ideal-equality).
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<String>>,
        /// Directory holding torus pair and CW fixtures.
        #[arg(long, default_value = "fixtures")]
        fixtures_dir: PathBuf,
    },
    /// Run a file containing a JSON array of requests.
    Batch {
        /// Batch file path or `-` for stdin.
        #[arg(long)]
        input: String,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, default_value = "fixtures")]
        fixtures_dir: PathBuf,
        /// Concurrency limit: 1 = sequential, 0 = default thread pool.
        #[arg(long, default_value = "0")]
        jobs: usize,
        /// Print per-entry wall-clock timings to stderr (kept out of the
        /// reports themselves, which are byte-stable).
        #[arg(long)]
        timings: bool,
    },
}

fn read_input(input: &str) -> anyhow::Result<String> {
    if input == "-" {
        let mut buf = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut buf)?;
        return Ok(buf);
    }
    let trimmed = input.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(input.to_string());
    }
    std::fs::read_to_string(input).with_context(|| format!("cannot read {input}"))
}

fn parse_checks(names: &[String]) -> anyhow::Result<Vec<CheckKind>> {
    names
        .iter()
        .map(|name| {
            serde_json::from_value(serde_json::Value::String(name.clone()))
                .map_err(|_| anyhow::anyhow!("unknown check {name:?}"))
        })
        .collect()
}

fn override_checks(request: &mut ComputationRequest, list: Vec<CheckKind>) {
    match request {
        ComputationRequest::Grassmann { checks, .. }
        | ComputationRequest::Flag { checks, .. }
        | ComputationRequest::Sphere { checks, .. }
        | ComputationRequest::Torus { checks, .. }
        | ComputationRequest::Equivariant { checks, .. } => *checks = list,
        ComputationRequest::Cw { .. } => {}
    }
}

fn print_report(report: &Report, format: Format) -> anyhow::Result<()> {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(report)?),
        Format::Text => print!("{}", render_report_text(report)),
    }
    Ok(())
}

fn print_batch(outcome: &BatchOutcome, format: Format) -> anyhow::Result<()> {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(outcome)?),
        Format::Text => {
            for entry in &outcome.entries {
                if let Some(report) = &entry.report {
                    print!("{}", render_report_text(report));
                }
            }
            print!("{}", render_batch_summary(outcome));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match real_main() {
        Ok(passed) => {
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn real_main() -> anyhow::Result<bool> {
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            input,
            max_degree,
            format,
            checks,
            fixtures_dir,
        } => {
            let text = read_input(&input)?;
            let mut request: ComputationRequest = serde_json::from_str(&text)
                .with_context(|| "malformed request (location is line:column)")?;
            if let Some(names) = checks {
                override_checks(&mut request, parse_checks(&names)?);
            }
            let ctx = RunContext {
                fixtures_dir,
                max_degree,
            };
            let report = run(&request, &ctx)?;
            print_report(&report, format)?;
            Ok(report.passed())
        }
        Command::Batch {
            input,
            max_degree,
            format,
            fixtures_dir,
            jobs,
            timings,
        } => {
            let text = read_input(&input)?;
            let entries: Vec<serde_json::Value> = serde_json::from_str(&text)
                .with_context(|| "batch input must be a JSON array of requests")?;
            if entries.is_empty() {
                match format {
                    Format::Json => println!("[]"),
                    Format::Text => println!("0/0 passed"),
                }
                return Ok(true);
            }
            let ctx = RunContext {
                fixtures_dir,
                max_degree,
            };
            let started = std::time::Instant::now();
            let outcome = run_batch(&entries, &ctx, jobs);
            if timings {
                eprintln!(
                    "batch of {} entries took {:?}",
                    entries.len(),
                    started.elapsed()
                );
            }
            print_batch(&outcome, format)?;
            Ok(outcome.all_passed())
        }
    }
}
