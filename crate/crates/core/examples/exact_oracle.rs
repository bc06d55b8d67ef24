//! Exhaustive optimum of a small instance.
//!
//! ```bash
//! cargo run -p emu-maint --example exact_oracle [instance.json]
//! ```

use emu_maint::oracle::{enumerate_optimal, OracleBudget};
use emu_maint::{load_instance, SolverParams};

fn main() -> emu_maint::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/toy3.json").into());
    let instance = load_instance(&path)?;
    let result = enumerate_optimal(&instance, &SolverParams::default(), OracleBudget::default())?;
    println!(
        "{} combinations, feasible optimum: {}",
        result.combinations, result.feasible
    );
    for p in &result.solution.paths {
        println!("  {}: {p}", p.train_set_id);
    }
    let e = &result.solution.evaluation;
    println!(
        "loss {} km, Z = {:.4}, Z_pen = {:.4}",
        e.mileage_loss_km, e.objective, e.penalized_objective
    );
    Ok(())
}
