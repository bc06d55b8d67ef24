//! Feasible path sets on the time-space network.
//!
//! ```bash
//! cargo run -p emu-maint --example feasible_paths [instance.json]
//! ```

use emu_maint::load_instance;
use emu_maint::network::TimeSpaceNetwork;
use emu_maint::paths::generate_feasible_paths;

fn main() -> emu_maint::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/fleet8.json").into());
    let instance = load_instance(&path)?;
    let network = TimeSpaceNetwork::new(instance.horizon_days)?;
    println!(
        "network: K = {}, {} time arcs, {} connect arcs",
        network.horizon_days(),
        network.time_arcs().count(),
        network.connect_arcs().count()
    );

    for ts in &instance.fleet {
        let paths = generate_feasible_paths(ts, &network)?;
        println!(
            "\n{} ({}, {} km, next {}): {} paths",
            ts.id,
            ts.kind.name(),
            ts.initial_mileage,
            ts.next_level(),
            paths.len()
        );
        let shown = 3.min(paths.len());
        for p in &paths[..shown] {
            println!("  {p}");
        }
        if paths.len() > 2 * shown {
            println!("  ...");
        }
        for p in &paths[paths.len().saturating_sub(shown).max(shown)..] {
            println!("  {p}");
        }
        assert!(paths.iter().all(|p| p.is_network_path(&network)));
    }
    Ok(())
}
