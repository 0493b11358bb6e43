use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use majorana_cli::output::{output_dir, write_report, Report};
use majorana_cli::run::{compare, run};
use majorana_cli::scenario::{parse, schema_json, Scenario};
use majorana_cli::{CliError, FIG1_SCENARIO};

/// Exact Majorana and Dirac spinor dynamics from JSON scenarios.
///
/// Output files go to the scenario's `output.dir`, else `$SIMULATE_OUT_DIR`,
/// else the working directory. Exit codes: 0 success, 1 i/o failure,
/// 2 configuration error, 3 numeric self-check failure.
#[derive(Parser)]
#[command(name = "simulate", version)]
struct Cli {
    /// Override the scenario seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Override the self-check tolerance.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a scenario and write its tables.
    Run { config: PathBuf },
    /// Tabulate the deviation between two equations over a scenario.
    Compare { config: PathBuf },
    /// Write the four rest-frame <σz> curves for (1,0) and (1,i)/√2.
    Fig1 {
        /// Rest frequency ω = mc²/ħ, in natural units ħ = c = 1.
        #[arg(long)]
        omega: Option<f64>,
        /// CSV path; metadata goes next to it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the JSON schema of scenario files.
    Schema,
}

fn load(path: &Path) -> Result<Scenario, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    parse(&text, &path.display().to_string())
}

fn apply_overrides(s: &mut Scenario, cli: &Cli) {
    if let Some(seed) = cli.seed {
        s.seed = seed;
    }
    if let Some(tol) = cli.tolerance {
        s.tolerance = tol;
    }
}

fn stem_of(s: &Scenario, config: &Path) -> String {
    s.output
        .stem
        .clone()
        .or_else(|| s.name.clone())
        .or_else(|| config.file_stem().map(|x| x.to_string_lossy().into_owned()))
        .unwrap_or_else(|| "out".into())
}

fn finish(
    dir: &Path,
    meta: &str,
    command: &str,
    s: &Scenario,
    report: &Report,
) -> Result<(), CliError> {
    let written = write_report(dir, meta, command, s, report)?;
    for line in &report.summary {
        println!("{line}");
    }
    for path in written {
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Run { config } | Command::Compare { config } => {
            let mut s = load(config)?;
            apply_overrides(&mut s, cli);
            let stem = stem_of(&s, config);
            let dir = output_dir(s.output.dir.as_deref());
            if matches!(cli.command, Command::Run { .. }) {
                let report = run(&s, &stem)?;
                finish(&dir, &format!("{stem}.meta.json"), "run", &s, &report)
            } else {
                let report = compare(&s, &stem)?;
                finish(
                    &dir,
                    &format!("{stem}_compare.meta.json"),
                    "compare",
                    &s,
                    &report,
                )
            }
        }
        Command::Fig1 { omega, out } => {
            let mut s = parse(FIG1_SCENARIO, "fig1.json")?;
            apply_overrides(&mut s, cli);
            if let Some(w) = *omega {
                if !(w.is_finite() && w > 0.0) {
                    return Err(CliError::Config(format!(
                        "--omega: must be finite and > 0, got {w}"
                    )));
                }
                s.params.mass = w;
                s.params.hbar = 1.0;
                s.params.c = 1.0;
            }
            let (dir, file) = match out {
                Some(path) => {
                    let name = path.file_name().ok_or_else(|| {
                        CliError::Config(format!("--out: not a file path: {}", path.display()))
                    })?;
                    let dir = path
                        .parent()
                        .filter(|p| !p.as_os_str().is_empty())
                        .unwrap_or(Path::new("."));
                    (dir.to_path_buf(), name.to_string_lossy().into_owned())
                }
                None => (output_dir(None), "fig1.csv".to_owned()),
            };
            let stem = Path::new(&file)
                .file_stem()
                .map(|x| x.to_string_lossy().into_owned())
                .unwrap_or_else(|| "fig1".into());
            let mut report = run(&s, &stem)?;
            report.artifacts[0].file_name = file;
            finish(&dir, &format!("{stem}.meta.json"), "fig1", &s, &report)
        }
        Command::Schema => {
            println!("{}", schema_json());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("simulate: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
