//! Schedules an eight-train-set mixed CRH fleet over 180 days and writes the
//! schedule, counts, validation report, convergence trace and Gantt chart.
//!
//! ```bash
//! cargo run -p emu-maint --release --example fleet_schedule [out_dir]
//! ```

use std::path::PathBuf;

use emu_maint::export::{export_schedule, export_trace, schedule_csv};
use emu_maint::gantt::render_gantt;
use emu_maint::{load_instance, solve, SolverParams};

fn main() -> anyhow::Result<()> {
    let out: PathBuf = std::env::args().nth(1).map_or_else(
        || std::env::temp_dir().join("fleet8-schedule"),
        PathBuf::from,
    );
    let instance = load_instance(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/fleet8.json"))?;
    for w in &instance.warnings {
        println!("warning: {w}");
    }
    let params = SolverParams {
        rng_seed: 2025,
        max_generations: 500,
        ..SolverParams::default()
    };
    let outcome = solve(&instance, &params)?;

    print!("{}", schedule_csv(&outcome.solution, &instance)?);
    let e = &outcome.solution.evaluation;
    println!(
        "Z = {:.4}, Z_pen = {:.4}, feasible = {}",
        e.objective,
        e.penalized_objective,
        outcome.report.is_feasible()
    );

    export_schedule(&outcome.solution, &instance, &outcome.report, &out)?;
    export_trace(&outcome.trace, &out)?;
    std::fs::write(
        out.join("gantt.svg"),
        render_gantt(&outcome.solution, &instance),
    )?;
    println!("wrote {}", out.display());
    Ok(())
}
