//! Daily counts, objective, penalised objective and validation for
//! hand-picked schedules of the three-train-set toy instance.
//!
//! ```bash
//! cargo run -p emu-maint --example evaluate_schedule
//! ```

use emu_maint::evaluate::validate;
use emu_maint::{load_instance, Problem, SolverParams};

fn main() -> emu_maint::Result<()> {
    let instance = load_instance(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/toy3.json"))?;
    let problem = Problem::build(&instance, SolverParams::default().weights())?;

    // paths are ordered by dispatch day: index 0 is the earliest day
    let schedules = [
        ("staggered", vec![1, 1, 1]),
        ("latest days", vec![12, 12, 12]),
        ("earliest days", vec![0, 0, 0]),
    ];
    for (name, genes) in schedules {
        let solution = problem.decode(&genes);
        let e = &solution.evaluation;
        println!("== {name}: genes {genes:?}");
        for p in &solution.paths {
            println!("   {}: {p}", p.train_set_id);
        }
        println!(
            "   loss {} km, Z = {:.4}, shortfall {}, excess {}, Z_pen = {:.4}",
            e.mileage_loss_km,
            e.objective,
            e.availability_shortfall,
            e.capacity_excess,
            e.penalized_objective
        );
        let report = validate(&solution, &instance);
        if report.is_feasible() {
            println!("   feasible");
        } else {
            for v in report.violations.iter().take(4) {
                println!("   violation: {v}");
            }
            if report.violations.len() > 4 {
                println!("   ... {} more", report.violations.len() - 4);
            }
        }
    }
    Ok(())
}
