//! Genetic / simulated-annealing search on the toy instance, checked against
//! the exhaustive optimum.
//!
//! ```bash
//! cargo run -p emu-maint --release --example solve_toy [seed]
//! ```

use emu_maint::oracle::{enumerate_optimal, OracleBudget};
use emu_maint::{load_instance, solve, SolverParams};

fn main() -> emu_maint::Result<()> {
    let seed = std::env::args()
        .nth(1)
        .map_or(7, |s| s.parse().expect("seed must be an integer"));
    let instance = load_instance(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/toy3.json"))?;
    let params = SolverParams {
        rng_seed: seed,
        ..SolverParams::default()
    };

    let started = std::time::Instant::now();
    let outcome = solve(&instance, &params)?;
    println!(
        "seed {seed}: {} generations over {} temperatures, {} distinct evaluations, {:.2?}",
        outcome.generations,
        outcome.cooling_steps + 1,
        outcome.evaluations,
        started.elapsed()
    );
    for p in &outcome.solution.paths {
        println!("  {}: {p}", p.train_set_id);
    }

    let exact = enumerate_optimal(&instance, &params, OracleBudget::default())?;
    let (ga, opt) = (&outcome.solution.evaluation, &exact.solution.evaluation);
    println!(
        "search Z = {:.4} (feasible: {})",
        ga.objective,
        outcome.report.is_feasible()
    );
    println!("exact  Z = {:.4}", opt.objective);
    println!(
        "{}",
        if ga.mileage_loss_km == opt.mileage_loss_km {
            "optimum reached"
        } else {
            "optimum missed"
        }
    );
    Ok(())
}
