use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hybrid_ee::experiments::{run, write_outputs, write_table, RunOutput, ScenarioConfig, SweepKind};
use hybrid_ee::oracle::{brute_force_solve, GridSpec};
use hybrid_ee::solver::write_report;
use hybrid_ee::{dinkelbach_solve, Error};

#[derive(Parser)]
#[command(name = "hybrid-ee", version, about = "Energy-efficient antenna selection with hybrid energy supply")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one full solve and write the report.
    Solve(Common),
    /// Run the scenario's sweep and write CSV.
    Sweep(Common),
    /// Parse and check a scenario file without solving.
    Validate(Common),
    /// Compare the solver with the brute-force oracle on the scenario.
    Oracle(Common),
}

#[derive(Args)]
struct Common {
    config: PathBuf,
    /// Seed for Poisson arrivals; overrides the scenario file.
    #[arg(long)]
    seed: Option<u64>,
    /// Output path; overrides the scenario file. Without one, results go to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for sweeps; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    workers: usize,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Config(_) | Error::InvalidParams(_) | Error::InvalidTimeline(_) => 2,
        Error::Infeasible(_) => 3,
        Error::NotConverged { .. } => 4,
        _ => 1,
    }
}

fn load(args: &Common) -> Result<ScenarioConfig, Error> {
    let mut c = ScenarioConfig::load(&args.config).map_err(|e| match e {
        Error::Io(io) => Error::Config(format!("cannot read {}: {io}", args.config.display())),
        other => other,
    })?;
    if let Some(seed) = args.seed {
        c.seed = seed;
        c.validate()?;
    }
    Ok(c)
}

fn out_path(args: &Common, config: &ScenarioConfig) -> Option<PathBuf> {
    args.out.clone().or_else(|| config.output.clone())
}

fn emit(output: &RunOutput, config: &ScenarioConfig, path: Option<&Path>) -> Result<(), Error> {
    match path {
        Some(p) => {
            for f in write_outputs(output, config, p)? {
                eprintln!("wrote {}", f.display());
            }
        }
        None => {
            let stdout = io::stdout().lock();
            match output {
                RunOutput::Table { table, .. } => write_table(table, stdout)?,
                RunOutput::Report { report, timeline } => write_report(report, timeline, stdout)?,
            }
        }
    }
    Ok(())
}

fn solve(args: &Common) -> Result<(), Error> {
    let mut config = load(args)?;
    config.sweep = SweepKind::SingleSolve;
    let path = out_path(args, &config);
    match run(&config, args.workers) {
        Ok(out) => emit(&out, &config, path.as_deref()),
        Err(Error::NotConverged { iterations, report }) => {
            let timeline = config.timeline()?;
            let out = RunOutput::Report {
                report: report.clone(),
                timeline,
            };
            emit(&out, &config, path.as_deref())?;
            Err(Error::NotConverged { iterations, report })
        }
        Err(e) => Err(e),
    }
}

fn sweep(args: &Common) -> Result<(), Error> {
    let config = load(args)?;
    let out = run(&config, args.workers)?;
    emit(&out, &config, out_path(args, &config).as_deref())
}

fn validate(args: &Common) -> Result<(), Error> {
    let config = load(args)?;
    let tl = config.timeline()?;
    let mut o = io::stdout().lock();
    writeln!(o, "ok: sweep {}", config.sweep.name())?;
    writeln!(o, "epochs = {}", tl.len())?;
    writeln!(o, "horizon_s = {}", tl.horizon())?;
    writeln!(o, "harvested_j = {}", tl.total_energy())?;
    if let Some(r) = config.range {
        writeln!(o, "points = {}", r.values().len())?;
    }
    Ok(())
}

fn oracle(args: &Common) -> Result<(), Error> {
    let config = load(args)?;
    let tl = config.timeline()?;
    let mut params = config.params.clone();
    params.horizon = tl.horizon();
    let solver = dinkelbach_solve(&params, &tl, &config.solver)?;
    let grid = GridSpec::default();
    let reference = brute_force_solve(&params, &tl, &grid)?;
    let text = format!(
        "solver_ee = {}\nsolver_antennas = {:?}\noracle_ee = {}\noracle_antennas = {:?}\noracle_points = {}\nrelative_difference = {}\n",
        solver.q_star,
        solver.schedule.antenna_counts(),
        reference.weighted_ee,
        reference.schedule.antenna_counts(),
        reference.evaluated,
        solver.q_star / reference.weighted_ee - 1.0,
    );
    match out_path(args, &config) {
        Some(p) => std::fs::write(p, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve(a) => solve(a),
        Command::Sweep(a) => sweep(a),
        Command::Validate(a) => validate(a),
        Command::Oracle(a) => oracle(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
