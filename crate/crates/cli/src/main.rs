use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use gaborlab::run::{max_order_from_env, scenario_dual};
use gaborlab::scan::{scan, write_csv};
use gaborlab::{emit_report, parse_config, parse_group_list, run_scenario, CheckName, Format, RunOptions, ScenarioConfig};
use gaborlab_core::group::DEFAULT_MAX_ORDER;

/// Gabor frame analysis on finite abelian groups.
///
/// Exit status: 0 when every check passes, 1 when a check fails, 2 for
/// invalid input or I/O errors.
#[derive(Parser)]
#[command(name = "gaborlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check in the scenario and print a report.
    Analyze {
        #[arg(long)]
        config: PathBuf,
        /// Also write the JSON report here.
        #[arg(long)]
        json_out: Option<PathBuf>,
        /// Overrides the scenario tolerance.
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        /// Include per-fiber extremes in the JSON report.
        #[arg(long)]
        dump_fibers: bool,
        /// Record wall-clock time (the report is then no longer reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Run only the named checks.
    Verify {
        #[arg(long)]
        config: PathBuf,
        #[arg(long = "check", required = true, num_args = 1..)]
        checks: Vec<String>,
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Print the canonical dual window as an explicit window spec.
    Dual {
        #[arg(long)]
        config: PathBuf,
    },
    /// Frame bounds for every subgroup pair of a group, as CSV.
    Scan {
        /// Invariant factors, e.g. "2,4".
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 64)]
        max_subgroups: usize,
        /// Seed of the random window.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        csv_out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Text => Format::Text,
            OutputFormat::Json => Format::Json,
        }
    }
}

fn load(path: &Path, tolerance: Option<f64>) -> Result<ScenarioConfig> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut config = parse_config(&text).with_context(|| format!("invalid scenario {}", path.display()))?;
    if let Some(t) = tolerance {
        config.tolerance = t;
        config.validate().context("invalid --tolerance")?;
    }
    Ok(config)
}

fn analyze(config: &ScenarioConfig, opts: &RunOptions, format: Format, json_out: Option<&Path>) -> Result<u8> {
    let doc = run_scenario(config, opts)?;
    if let Some(p) = json_out {
        emit_report(&doc, Format::Json, Some(p)).with_context(|| format!("writing {}", p.display()))?;
    }
    emit_report(&doc, format, None).context("writing to stdout")?;
    Ok(if doc.failed() { 1 } else { 0 })
}

fn run(cli: Cli) -> Result<u8> {
    let max_order_override = max_order_from_env()?;
    match cli.command {
        Command::Analyze { config, json_out, tolerance, format, dump_fibers, timing } => {
            let config = load(&config, tolerance)?;
            let opts = RunOptions { max_order_override, dump_fibers, timing };
            analyze(&config, &opts, format.into(), json_out.as_deref())
        }
        Command::Verify { config, checks, tolerance, format } => {
            let mut config = load(&config, tolerance)?;
            config.checks = checks
                .iter()
                .map(|c| CheckName::parse(c).with_context(|| format!("unknown check {c:?}")))
                .collect::<Result<_>>()?;
            let opts = RunOptions { max_order_override, ..RunOptions::default() };
            analyze(&config, &opts, format.into(), None)
        }
        Command::Dual { config } => {
            let config = load(&config, None)?;
            match scenario_dual(&config, max_order_override)? {
                Ok(h) => {
                    let spec = serde_json::json!({
                        "kind": "explicit",
                        "re": h.values().iter().map(|z| z.re).collect::<Vec<_>>(),
                        "im": h.values().iter().map(|z| z.im).collect::<Vec<_>>(),
                    });
                    println!("{}", serde_json::to_string_pretty(&spec)?);
                    Ok(0)
                }
                Err(e) => {
                    eprintln!("gaborlab: no canonical dual: {e}");
                    Ok(1)
                }
            }
        }
        Command::Scan { group, max_subgroups, seed, csv_out } => {
            let factors = parse_group_list(&group)?;
            let rows = scan(&factors, max_subgroups, seed, max_order_override.unwrap_or(DEFAULT_MAX_ORDER))?;
            let file = fs::File::create(&csv_out).with_context(|| format!("creating {}", csv_out.display()))?;
            write_csv(&rows, file).with_context(|| format!("writing {}", csv_out.display()))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("gaborlab: {e:#}");
            ExitCode::from(2)
        }
    }
}
