//! Renders the toy instance's optimal schedule as an SVG Gantt chart.
//!
//! ```bash
//! cargo run -p emu-maint --example gantt_chart [out.svg]
//! ```

use emu_maint::gantt::render_gantt;
use emu_maint::oracle::{enumerate_optimal, OracleBudget};
use emu_maint::{load_instance, SolverParams};

fn main() -> anyhow::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| {
        std::env::temp_dir()
            .join("toy3-gantt.svg")
            .display()
            .to_string()
    });
    let instance = load_instance(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/toy3.json"))?;
    let result = enumerate_optimal(&instance, &SolverParams::default(), OracleBudget::default())?;
    let svg = render_gantt(&result.solution, &instance);
    std::fs::write(&out, &svg)?;
    println!("{} bytes -> {out}", svg.len());
    Ok(())
}
