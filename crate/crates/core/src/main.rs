use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use chevnet::chevalg::StructureConstants;
use chevnet::rootsys::parse_root_system;
use chevnet::verify::{exit_code, load_scenarios, run_file, ConfigError, RunOptions, Setup};

#[derive(Parser)]
#[command(name = "chevnet", version, about = "Net subgroups of adjoint Chevalley groups over finite rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks listed in a scenario file.
    Verify {
        scenario: PathBuf,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Cap on materialized subgroup sizes.
        #[arg(long)]
        budget: Option<usize>,
        /// Worker threads; defaults to the number of cores.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Print the structure constants of a root system, e.g. `B2`.
    Tables { system: String },
    /// Print the closed net of each scenario in a file.
    NetClose { scenario: PathBuf },
}

fn verify(
    scenario: PathBuf,
    report: Option<PathBuf>,
    opts: RunOptions,
    jobs: Option<usize>,
) -> Result<i32, ConfigError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| ConfigError::Invalid(e.to_string()))?;
    let reports = pool.install(|| run_file(&scenario, opts))?;
    for r in &reports {
        for c in &r.checks {
            let note = c.reason.as_deref().map(|s| format!(" ({s})")).unwrap_or_default();
            eprintln!("{}: {} {:?} [{}]{note}", r.scenario, c.name, c.status, c.coverage);
        }
        if !r.condition_star.holds {
            eprintln!("warning: {}: condition (*) fails: {}", r.scenario, r.condition_star.detail);
        }
    }
    let json = if reports.len() == 1 {
        serde_json::to_string_pretty(&reports[0])
    } else {
        serde_json::to_string_pretty(&reports)
    }?;
    match report {
        Some(path) => std::fs::write(&path, json + "\n")
            .map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?,
        None => println!("{json}"),
    }
    Ok(exit_code(&reports))
}

fn run(cli: Cli) -> Result<i32, ConfigError> {
    match cli.command {
        Command::Verify { scenario, report, seed, budget, jobs } => {
            verify(scenario, report, RunOptions { seed, budget }, jobs)
        }
        Command::Tables { system } => {
            let rs = parse_root_system(&system)?;
            print!("{}", StructureConstants::new(&rs).dump_table());
            Ok(0)
        }
        Command::NetClose { scenario } => {
            for s in load_scenarios(&scenario)? {
                let setup = Setup::resolve(&s, RunOptions::default())?;
                println!("{}: {}", setup.name, setup.net.describe());
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
