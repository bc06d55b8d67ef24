//! Bundled regulation tables, dispatch windows and the mileage-vs-calendar
//! dominance check.
//!
//! ```bash
//! cargo run -p emu-maint --example regulations
//! ```

use std::sync::Arc;

use emu_maint::fleet::{bundled_types, CyclePosition, MaintenanceLevel, DEFAULT_DURATIONS};
use emu_maint::TrainSet;

fn main() -> emu_maint::Result<()> {
    println!(
        "{:<10} {:>7}  {:<7} {:>10} {:>10} {:>10} {:>5} {:>6}",
        "type", "km/day", "level", "base", "low", "high", "days", "limit"
    );
    for t in bundled_types() {
        for r in t.regulations() {
            let (low, high) = r.window_km();
            println!(
                "{:<10} {:>7}  {:<7} {:>10} {:>10} {:>10} {:>5} {:>6}",
                t.name(),
                t.daily_mileage(),
                r.level,
                r.base_mileage,
                low,
                high,
                r.duration,
                r.day_limit
            );
        }
    }

    println!("\nthird-level base / daily mileage (must stay below the 548-day limit):");
    for t in bundled_types() {
        let third = t.regulation(MaintenanceLevel::Third);
        println!(
            "  {:<10} {} / {} = {:.1} days",
            t.name(),
            third.base_mileage,
            t.daily_mileage(),
            third.base_mileage as f64 / t.daily_mileage() as f64
        );
    }

    let kind =
        Arc::new(emu_maint::fleet::bundled_type("CRH2A", DEFAULT_DURATIONS).expect("bundled"));
    println!("\nCRH2A third-level dispatch windows, day 1 = start of horizon:");
    for start in [0, 300_000, 550_000, 620_000] {
        let ts = TrainSet {
            id: "e".into(),
            kind: kind.clone(),
            initial_mileage: start,
            initial_days: start / kind.daily_mileage(),
            last_level: MaintenanceLevel::Fifth,
            cycle_position: CyclePosition::new(0)?,
        };
        let w = ts.due_window_days(start)?;
        println!(
            "  counter {start:>7} km -> days {}..={}",
            w.earliest, w.latest
        );
    }
    Ok(())
}
