use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use meqsim_cli::cost::{cmd_cost, render_text, CostArgs, Format};
use meqsim_cli::selftest::{cmd_selftest, Fault};
use meqsim_cli::{cmd_run, write_report, ExperimentConfig, Result, RunArgs};

#[derive(Debug, Parser)]
#[command(name = "meqsim", version, about = "Simulate and verify modified-equality query protocols")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run an experiment and write a JSON-lines report.
    Run(RunArgs),
    /// Run the invariant suites of every module.
    Selftest {
        /// Corrupt an input on purpose to check that the suites notice.
        #[arg(long, value_enum)]
        inject_fault: Option<Fault>,
    },
    /// Tabulate copies, code lengths, qubit counts and query depths.
    Cost(CostArgs),
}

fn run(args: &RunArgs) -> Result<()> {
    let (config, output) = ExperimentConfig::resolve(args)?;
    let records = cmd_run(&config)?;
    match output {
        Some(path) => write_report(&records, &mut BufWriter::new(File::create(path)?)),
        None => write_report(&records, &mut io::stdout().lock()),
    }
}

fn selftest(fault: Option<Fault>) -> bool {
    let results = cmd_selftest(fault);
    for r in &results {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        println!("[{status}] {}: {} checks, {} failures", r.name, r.checks, r.failures.len());
        for f in r.failures.iter().take(10) {
            println!("    {f}");
        }
    }
    results.iter().all(|r| r.passed())
}

fn cost(args: &CostArgs) -> Result<()> {
    let tables = cmd_cost(args)?;
    let mut out = io::stdout().lock();
    match args.format {
        Format::Text => out.write_all(render_text(&tables).as_bytes())?,
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&tables).map_err(io::Error::from)?)?,
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(args) => run(args),
        Command::Cost(args) => cost(args),
        Command::Selftest { inject_fault } => {
            return if selftest(*inject_fault) { ExitCode::SUCCESS } else { ExitCode::FAILURE };
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
