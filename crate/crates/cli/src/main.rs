//! `dsa2d`: scenario-driven front end for the 2D scattering solver.

mod config;
mod output;
mod run;

use clap::{Parser, Subcommand};
use config::Scenario;
use run::CliError;
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Parser)]
#[command(name = "dsa2d", version, about = "2D TM scattering by penetrable cylinders")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Worker threads for assembly, field evaluation and sweep points.
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Debug, clap::Args)]
struct ScenarioArgs {
    /// Scenario file (TOML).
    #[arg(long)]
    config: PathBuf,

    /// Output directory; overrides `output.dir`.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Combined-field weight; overrides `solver.alpha`.
    #[arg(long)]
    alpha: Option<f64>,

    /// Far-field Gauss-Legendre order; overrides `solver.quadrature_order`.
    #[arg(long = "quadrature-order")]
    quadrature_order: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve every configured frequency and write boundary, field and RCS tables.
    Solve(ScenarioArgs),
    /// Sweep permittivity or frequency as set in `[sweep]`.
    Sweep(ScenarioArgs),
    /// Mesh refinement study over `[convergence].meshes`.
    Convergence(ScenarioArgs),
    /// Run the acceptance suite and print a pass/fail table.
    Validate,
}

impl ScenarioArgs {
    fn load(&self) -> Result<(Scenario, PathBuf), CliError> {
        let mut scenario = Scenario::load(&self.config)?;
        if let Some(alpha) = self.alpha {
            scenario.solver.alpha = alpha;
        }
        if let Some(q) = self.quadrature_order {
            scenario.solver.quadrature_order = Some(q);
        }
        if let Some(out) = &self.out {
            scenario.output.dir = out.clone();
        }
        scenario.validate()?;
        let out = scenario.output.dir.clone();
        Ok((scenario, out))
    }
}

fn validate() -> Result<serde_json::Value, CliError> {
    let reports = dsa2d::validation::run_all();
    for r in &reports {
        println!("{}", r.headline());
        for line in &r.details {
            println!("    {line}");
        }
    }
    let failed: Vec<u32> = reports.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    println!(
        "{} of {} criteria passed",
        reports.len() - failed.len(),
        reports.len()
    );
    if failed.is_empty() {
        Ok(json!({ "passed": reports.len() }))
    } else {
        Err(CliError::Acceptance(failed))
    }
}

fn execute(cli: &Cli) -> Result<serde_json::Value, CliError> {
    match &cli.command {
        Command::Solve(args) => {
            let (scenario, out) = args.load()?;
            run::cmd_solve(&scenario, &out)
        }
        Command::Sweep(args) => {
            let (scenario, out) = args.load()?;
            run::cmd_sweep(&scenario, &out)
        }
        Command::Convergence(args) => {
            let (scenario, out) = args.load()?;
            run::cmd_convergence(&scenario, &out)
        }
        Command::Validate => validate(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.workers {
        if n == 0 || rayon::ThreadPoolBuilder::new().num_threads(n).build_global().is_err() {
            eprintln!("{}", json!({ "error": "usage", "message": format!("cannot start {n} workers") }));
            return ExitCode::from(2);
        }
    }
    match execute(&cli) {
        Ok(summary) => {
            if !matches!(cli.command, Command::Validate) {
                println!("{summary}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::FAILURE
        }
    }
}
