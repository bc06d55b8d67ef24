//! Major-maintenance scheduling for electric-multiple-unit fleets.
//!
//! Every train-set's status over the planning horizon is a path through a
//! day x status time-space network (available, third-, fourth- and
//! fifth-level maintenance). Picking one path per train-set is a 0-1 program:
//! minimise the mileage given up by maintaining early, subject to a minimum
//! available fleet per demand period and a workshop capacity per level.
//!
//! The crate provides:
//!
//! - [`fleet`]: maintenance levels, regulations (bundled CRH2 / CRH380A tables),
//!   the Third -> Fourth -> Third -> Fifth cycle and dispatch windows.
//! - [`network`]: the implicit time-space network and its subsequent-arc rules.
//! - [`paths`]: depth-first enumeration of each train-set's feasible paths.
//! - [`evaluate`]: daily counts, objective, penalised objective, validation.
//! - [`solver`]: genetic algorithm with simulated-annealing survival.
//! - [`oracle`]: exhaustive optimum for small instances.
//! - [`instance`], [`export`], [`gantt`]: JSON instances, CSV/JSON output, SVG.
//!
//! ## Examples
//!
//! Each major capability has a runnable example under `examples/`:
//!
//! ```bash
//! cargo run -p emu-maint --example regulations
//! cargo run -p emu-maint --example feasible_paths
//! cargo run -p emu-maint --example evaluate_schedule
//! cargo run -p emu-maint --example exact_oracle
//! cargo run -p emu-maint --release --example solve_toy
//! cargo run -p emu-maint --release --example fleet_schedule
//! cargo run -p emu-maint --example gantt_chart
//! ```
//!
//! ```no_run
//! use emu_maint::{instance::load_instance, solver::{solve, SolverParams}};
//!
//! let instance = load_instance("crates/core/examples/toy3.json")?;
//! let outcome = solve(&instance, &SolverParams { rng_seed: 1, ..Default::default() })?;
//! println!("Z = {}", outcome.solution.evaluation.objective);
//! # Ok::<(), emu_maint::Error>(())
//! ```

pub mod error;
pub mod evaluate;
pub mod export;
pub mod fleet;
pub mod gantt;
pub mod instance;
pub mod network;
pub mod oracle;
pub mod paths;
pub mod problem;
pub mod solver;

pub use error::{Error, Result};
pub use evaluate::{Solution, ValidationReport};
pub use fleet::{MaintenanceLevel, TrainSet, TrainSetType};
pub use instance::{load_instance, Instance};
pub use problem::Problem;
pub use solver::{solve, SolverParams};
