use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use emu_maint::evaluate::validate;
use emu_maint::export::{export_schedule, export_trace, load_solution};
use emu_maint::gantt::render_gantt;
use emu_maint::network::TimeSpaceNetwork;
use emu_maint::oracle::{enumerate_optimal, OracleBudget};
use emu_maint::paths::generate_feasible_paths;
use emu_maint::{load_instance, solve, Error, SolverParams};

/// EMU major-maintenance scheduler.
#[derive(Parser)]
#[command(name = "emu-sched", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an instance, and optionally a solution against it.
    Validate {
        instance: PathBuf,
        solution: Option<PathBuf>,
        /// Print the violation report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// List the feasible paths of one train-set.
    Paths {
        instance: PathBuf,
        #[arg(long = "train-set")]
        train_set: String,
        /// Write the time-space network in DOT format (stdout when no file is given).
        #[arg(long = "dump-network", num_args = 0..=1, value_name = "FILE")]
        dump_network: Option<Option<PathBuf>>,
    },
    /// Run the genetic / simulated-annealing search.
    Solve {
        instance: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
    },
    /// Enumerate every combination and write the exact optimum.
    Exact {
        instance: PathBuf,
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
        #[arg(long, default_value_t = OracleBudget::default().max_combinations)]
        budget: u64,
    },
    /// Render a solution as an SVG Gantt chart.
    Gantt {
        instance: PathBuf,
        solution: PathBuf,
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
    },
}

fn write_file(path: &Path, contents: &str) -> Result<(), Error> {
    fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_params(path: Option<&Path>, seed: Option<u64>) -> Result<SolverParams, Error> {
    let mut params = match path {
        None => SolverParams::default(),
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|source| Error::Io {
                path: p.to_path_buf(),
                source,
            })?;
            serde_json::from_str(&text).map_err(|e| Error::Parse {
                path: p.to_path_buf(),
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            })?
        }
    };
    if let Some(seed) = seed {
        params.rng_seed = seed;
    }
    for w in params.validate()? {
        log::warn!("{w}");
    }
    Ok(params)
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Validate {
            instance,
            solution,
            json,
        } => {
            let inst = load_instance(&instance)?;
            for w in &inst.warnings {
                println!("warning: {w}");
            }
            let Some(solution) = solution else {
                println!(
                    "ok: {} train-sets, {} days, {} types",
                    inst.fleet.len(),
                    inst.horizon_days,
                    inst.types.len()
                );
                return Ok(());
            };
            let file = load_solution(&solution)?;
            let sol = file.to_solution(&inst, &SolverParams::default().weights())?;
            let report = validate(&sol, &inst);
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("report serialises")
                );
            } else {
                print!("{}", report.to_text());
                println!(
                    "Z = {}  Z_pen = {}",
                    sol.evaluation.objective, sol.evaluation.penalized_objective
                );
            }
        }
        Command::Paths {
            instance,
            train_set,
            dump_network,
        } => {
            let inst = load_instance(&instance)?;
            let ts = inst.train_set(&train_set).ok_or_else(|| Error::Invalid {
                invariant: "TrainSet.id",
                message: format!("no train-set named {train_set}"),
            })?;
            let network = TimeSpaceNetwork::new(inst.horizon_days)?;
            let paths = generate_feasible_paths(ts, &network)?;
            println!("path\tevents\tlevels\tdispatch_days\tdispatch_mileage_km");
            for (i, p) in paths.iter().enumerate() {
                let join = |f: &dyn Fn(&emu_maint::paths::MaintenanceEvent) -> String| {
                    p.events.iter().map(f).collect::<Vec<_>>().join(",")
                };
                println!(
                    "{i}\t{}\t{}\t{}\t{}",
                    p.events.len(),
                    join(&|e| e.level.to_string()),
                    join(&|e| e.dispatch_day.to_string()),
                    join(&|e| e.mileage_at_dispatch.to_string()),
                );
            }
            match dump_network {
                None => {}
                Some(None) => print!("{}", network.to_dot()),
                Some(Some(path)) => write_file(&path, &network.to_dot())?,
            }
        }
        Command::Solve {
            instance,
            seed,
            params,
            out,
        } => {
            let inst = load_instance(&instance)?;
            let params = load_params(params.as_deref(), seed)?;
            let outcome = solve(&inst, &params)?;
            export_schedule(&outcome.solution, &inst, &outcome.report, &out)?;
            export_trace(&outcome.trace, &out)?;
            let e = &outcome.solution.evaluation;
            println!(
                "Z = {}  Z_pen = {}  feasible = {}  generations = {}  evaluations = {}",
                e.objective,
                e.penalized_objective,
                outcome.report.is_feasible(),
                outcome.generations,
                outcome.evaluations
            );
        }
        Command::Exact {
            instance,
            out,
            budget,
        } => {
            let inst = load_instance(&instance)?;
            let result = enumerate_optimal(
                &inst,
                &SolverParams::default(),
                OracleBudget {
                    max_combinations: budget,
                },
            )?;
            export_schedule(&result.solution, &inst, &result.report, &out)?;
            let e = &result.solution.evaluation;
            println!(
                "Z = {}  Z_pen = {}  feasible = {}  combinations = {}",
                e.objective, e.penalized_objective, result.feasible, result.combinations
            );
        }
        Command::Gantt {
            instance,
            solution,
            out,
        } => {
            let inst = load_instance(&instance)?;
            let sol =
                load_solution(&solution)?.to_solution(&inst, &SolverParams::default().weights())?;
            write_file(&out, &render_gantt(&sol, &inst))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("EMU_SCHED_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = serde_json::json!({ "error": e.kind(), "message": e.to_string() });
            eprintln!("{msg}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
