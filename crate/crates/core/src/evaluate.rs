//! Per-day status counts, the mileage-loss objective, its penalised form and
//! full constraint validation.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::fleet::{MaintenanceLevel, TrainSet};
use crate::instance::Instance;
use crate::paths::{path_mileage_at_dispatch, FeasiblePath};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PeriodLabel {
    Usual,
    SpringFestival,
    SummerHoliday,
    NationalDay,
}

impl fmt::Display for PeriodLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PeriodLabel::Usual => "usual",
            PeriodLabel::SpringFestival => "spring_festival",
            PeriodLabel::SummerHoliday => "summer_holiday",
            PeriodLabel::NationalDay => "national_day",
        })
    }
}

/// Minimum available fleet over a set of days, given as inclusive ranges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DemandPeriod {
    pub label: PeriodLabel,
    pub days: Vec<(u32, u32)>,
    pub min_available: u32,
}

impl DemandPeriod {
    pub fn day_iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.days.iter().flat_map(|&(a, b)| a..=b)
    }
}

/// Maximum simultaneous train-sets in the workshop, per level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkshopCapacity {
    pub third: u32,
    pub fourth: u32,
    pub fifth: u32,
}

impl WorkshopCapacity {
    pub fn get(&self, level: MaintenanceLevel) -> u32 {
        match level {
            MaintenanceLevel::Third => self.third,
            MaintenanceLevel::Fourth => self.fourth,
            MaintenanceLevel::Fifth => self.fifth,
        }
    }
}

/// Weights of the penalised objective.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PenaltyWeights {
    pub cost_per_km: f64,
    pub availability: f64,
    pub capacity: f64,
}

/// Number of train-sets per status row (`[available, third, fourth, fifth]`)
/// for each day of the horizon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DailyCounts {
    rows: Vec<[u32; 4]>,
}

impl DailyCounts {
    pub fn from_paths<'a>(
        paths: impl IntoIterator<Item = &'a FeasiblePath>,
        horizon_days: u32,
    ) -> Self {
        let mut rows = vec![[0u32; 4]; horizon_days as usize];
        for path in paths {
            for (day, status) in path.status_by_day(horizon_days).into_iter().enumerate() {
                rows[day][status.row() as usize - 1] += 1;
            }
        }
        DailyCounts { rows }
    }

    pub(crate) fn from_rows(rows: Vec<[u32; 4]>) -> Self {
        DailyCounts { rows }
    }

    /// Train-sets in `status_row` (1..=4) on 1-based `day`.
    pub fn get(&self, day: u32, status_row: u8) -> u32 {
        self.rows[day as usize - 1][status_row as usize - 1]
    }

    pub fn day(&self, day: u32) -> [u32; 4] {
        self.rows[day as usize - 1]
    }

    pub fn horizon_days(&self) -> u32 {
        self.rows.len() as u32
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, [u32; 4])> + '_ {
        self.rows
            .iter()
            .enumerate()
            .map(|(i, r)| (i as u32 + 1, *r))
    }
}

/// Objective components; mileage loss is kept in integer kilometres and only
/// scaled by the cost rate when reported.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Evaluation {
    pub mileage_loss_km: i64,
    pub availability_shortfall: u64,
    pub capacity_excess: u64,
    pub objective: f64,
    pub penalized_objective: f64,
}

impl Evaluation {
    pub fn from_parts(
        mileage_loss_km: i64,
        availability_shortfall: u64,
        capacity_excess: u64,
        weights: &PenaltyWeights,
    ) -> Self {
        let objective = weights.cost_per_km * mileage_loss_km as f64;
        let penalized_objective = objective
            + weights.availability * availability_shortfall as f64
            + weights.capacity * capacity_excess as f64;
        Evaluation {
            mileage_loss_km,
            availability_shortfall,
            capacity_excess,
            objective,
            penalized_objective,
        }
    }

    pub fn has_penalty(&self) -> bool {
        self.availability_shortfall > 0 || self.capacity_excess > 0
    }
}

/// Early-dispatch loss of one event: base mileage minus dispatch mileage,
/// clamped at zero.
pub fn event_loss_km(
    train_set: &TrainSet,
    level: MaintenanceLevel,
    mileage_at_dispatch: i64,
) -> i64 {
    (train_set.kind.regulation(level).base_mileage - mileage_at_dispatch).max(0)
}

pub fn path_loss_km(train_set: &TrainSet, path: &FeasiblePath) -> i64 {
    path.events
        .iter()
        .map(|ev| event_loss_km(train_set, ev.level, ev.mileage_at_dispatch))
        .sum()
}

/// Shortfall below minimum availability and excess over workshop capacity,
/// summed over the horizon.
pub fn penalty_terms(instance: &Instance, counts: &DailyCounts) -> (u64, u64) {
    let mut shortfall = 0u64;
    let mut excess = 0u64;
    for (day, row) in counts.iter() {
        let need = instance.min_available_on(day);
        shortfall += u64::from(need.saturating_sub(row[0]));
        for level in MaintenanceLevel::ALL {
            let occupied = row[level.status_row() as usize - 1];
            excess += u64::from(occupied.saturating_sub(instance.capacities.get(level)));
        }
    }
    (shortfall, excess)
}

/// One chosen path per train-set with cached counts and objective terms.
#[derive(Debug, Clone)]
pub struct Solution {
    pub paths: Vec<FeasiblePath>,
    /// Path index per train-set, when the solution came from path sets.
    pub genes: Option<Vec<usize>>,
    pub counts: DailyCounts,
    pub evaluation: Evaluation,
}

impl Solution {
    pub fn new(
        instance: &Instance,
        paths: Vec<FeasiblePath>,
        genes: Option<Vec<usize>>,
        weights: &PenaltyWeights,
    ) -> Self {
        let counts = DailyCounts::from_paths(&paths, instance.horizon_days);
        let by_id: HashMap<&str, &TrainSet> =
            instance.fleet.iter().map(|t| (t.id.as_str(), t)).collect();
        let loss: i64 = paths
            .iter()
            .filter_map(|p| {
                by_id
                    .get(p.train_set_id.as_str())
                    .map(|t| path_loss_km(t, p))
            })
            .sum();
        let (shortfall, excess) = penalty_terms(instance, &counts);
        let evaluation = Evaluation::from_parts(loss, shortfall, excess, weights);
        Solution {
            paths,
            genes,
            counts,
            evaluation,
        }
    }
}

pub fn count_by_status(solution: &Solution, day: u32, status_row: u8) -> u32 {
    solution.counts.get(day, status_row)
}

/// Mileage-loss objective scaled by `cost_per_km`.
pub fn objective(solution: &Solution, cost_per_km: f64) -> f64 {
    cost_per_km * solution.evaluation.mileage_loss_km as f64
}

pub fn penalized_objective(solution: &Solution, weights: &PenaltyWeights) -> f64 {
    let e = &solution.evaluation;
    Evaluation::from_parts(
        e.mileage_loss_km,
        e.availability_shortfall,
        e.capacity_excess,
        weights,
    )
    .penalized_objective
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "constraint", rename_all = "snake_case")]
pub enum Violation {
    /// A fleet member has no path, or more than one.
    PathUniqueness {
        train_set: String,
        paths: usize,
    },
    UnknownTrainSet {
        train_set: String,
    },
    Availability {
        day: u32,
        period: PeriodLabel,
        required: u32,
        available: u32,
    },
    Capacity {
        day: u32,
        level: MaintenanceLevel,
        capacity: u32,
        occupied: u32,
    },
    MileageWindow {
        train_set: String,
        event_index: usize,
        level: MaintenanceLevel,
        mileage: i64,
        low: i64,
        high: i64,
    },
    /// The counter passes the upper bound inside the horizon with no event.
    MissedMaintenance {
        train_set: String,
        level: MaintenanceLevel,
        latest_day: i64,
    },
    CycleOrder {
        train_set: String,
        event_index: usize,
        expected: MaintenanceLevel,
        found: MaintenanceLevel,
    },
    EventTiming {
        train_set: String,
        event_index: usize,
        detail: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::PathUniqueness { train_set, paths } => {
                write!(f, "path uniqueness: train-set {train_set} has {paths} paths (need exactly 1)")
            }
            Violation::UnknownTrainSet { train_set } => {
                write!(f, "unknown train-set {train_set} in solution")
            }
            Violation::Availability {
                day,
                period,
                required,
                available,
            } => write!(
                f,
                "availability: day {day} ({period}) has {available} available, needs {required}"
            ),
            Violation::Capacity {
                day,
                level,
                capacity,
                occupied,
            } => write!(
                f,
                "capacity: day {day} has {occupied} in {level}-level maintenance, capacity {capacity}"
            ),
            Violation::MileageWindow {
                train_set,
                event_index,
                level,
                mileage,
                low,
                high,
            } => write!(
                f,
                "mileage window: train-set {train_set} event {event_index} ({level}) dispatched at \
                 {mileage} km, outside [{low}, {high}]"
            ),
            Violation::MissedMaintenance {
                train_set,
                level,
                latest_day,
            } => write!(
                f,
                "mileage window: train-set {train_set} must start {level}-level maintenance by day \
                 {latest_day}"
            ),
            Violation::CycleOrder {
                train_set,
                event_index,
                expected,
                found,
            } => write!(
                f,
                "cycle order: train-set {train_set} event {event_index} is {found}, expected {expected}"
            ),
            Violation::EventTiming {
                train_set,
                event_index,
                detail,
            } => write!(f, "event timing: train-set {train_set} event {event_index}: {detail}"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_feasible(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_text(&self) -> String {
        if self.violations.is_empty() {
            return "feasible: no constraint violations\n".to_string();
        }
        let mut out = format!("infeasible: {} violation(s)\n", self.violations.len());
        for v in &self.violations {
            out.push_str("  ");
            out.push_str(&v.to_string());
            out.push('\n');
        }
        out
    }
}

fn check_events(
    instance: &Instance,
    train_set: &TrainSet,
    path: &FeasiblePath,
    out: &mut Vec<Violation>,
) {
    let horizon = i64::from(instance.horizon_days);
    let daily = train_set.kind.daily_mileage();
    let id = &train_set.id;
    let mut position = train_set.cycle_position;
    let mut ready_day = i64::from(train_set.in_shop_days()) + 1;
    let mut prior_reset: Option<u32> = None;
    for (i, ev) in path.events.iter().enumerate() {
        let expected = position.level();
        if ev.level != expected {
            out.push(Violation::CycleOrder {
                train_set: id.clone(),
                event_index: i,
                expected,
                found: ev.level,
            });
        }
        let regulation = train_set.kind.regulation(ev.level);
        let dispatch = i64::from(ev.dispatch_day);
        if dispatch <= ready_day || dispatch > horizon {
            out.push(Violation::EventTiming {
                train_set: id.clone(),
                event_index: i,
                detail: format!(
                    "dispatch day {dispatch} must lie in {}..={horizon}",
                    ready_day + 1
                ),
            });
        }
        if ev.return_day != ev.dispatch_day + regulation.duration {
            out.push(Violation::EventTiming {
                train_set: id.clone(),
                event_index: i,
                detail: format!(
                    "return day {} != dispatch day {} + duration {}",
                    ev.return_day, ev.dispatch_day, regulation.duration
                ),
            });
        }
        let mileage = path_mileage_at_dispatch(train_set, ev.dispatch_day, prior_reset);
        if mileage != ev.mileage_at_dispatch {
            out.push(Violation::EventTiming {
                train_set: id.clone(),
                event_index: i,
                detail: format!(
                    "recorded dispatch mileage {} differs from computed {mileage}",
                    ev.mileage_at_dispatch
                ),
            });
        }
        let (low, high) = regulation.window_km();
        if mileage < low || mileage > high {
            out.push(Violation::MileageWindow {
                train_set: id.clone(),
                event_index: i,
                level: ev.level,
                mileage,
                low,
                high,
            });
        }
        position = position.advance();
        ready_day = i64::from(ev.return_day);
        prior_reset = Some(ev.return_day);
    }
    // The next due event must not have been skipped inside the horizon.
    let level = position.level();
    let (_, high) = train_set.kind.regulation(level).window_km();
    let (start, reference) = match prior_reset {
        None => (train_set.initial_mileage, 1),
        Some(r) => (0, i64::from(r)),
    };
    let latest_day = reference + (high - start).div_euclid(daily);
    if latest_day <= horizon {
        out.push(Violation::MissedMaintenance {
            train_set: id.clone(),
            level,
            latest_day,
        });
    }
}

/// Checks every model constraint and lists each violation found.
pub fn validate(solution: &Solution, instance: &Instance) -> ValidationReport {
    let mut violations = Vec::new();

    let mut seen: HashMap<&str, usize> = HashMap::new();
    for p in &solution.paths {
        *seen.entry(p.train_set_id.as_str()).or_default() += 1;
    }
    for ts in &instance.fleet {
        let n = seen.get(ts.id.as_str()).copied().unwrap_or(0);
        if n != 1 {
            violations.push(Violation::PathUniqueness {
                train_set: ts.id.clone(),
                paths: n,
            });
        }
    }
    let mut unknown: Vec<&str> = seen
        .keys()
        .copied()
        .filter(|id| instance.train_set(id).is_none())
        .collect();
    unknown.sort_unstable();
    violations.extend(unknown.into_iter().map(|id| Violation::UnknownTrainSet {
        train_set: id.to_string(),
    }));

    for (day, row) in solution.counts.iter() {
        let (label, required) = instance.demand_on(day);
        if row[0] < required {
            violations.push(Violation::Availability {
                day,
                period: label,
                required,
                available: row[0],
            });
        }
    }
    for level in MaintenanceLevel::ALL {
        let capacity = instance.capacities.get(level);
        for (day, row) in solution.counts.iter() {
            let occupied = row[level.status_row() as usize - 1];
            if occupied > capacity {
                violations.push(Violation::Capacity {
                    day,
                    level,
                    capacity,
                    occupied,
                });
            }
        }
    }

    for path in &solution.paths {
        if let Some(ts) = instance.train_set(&path.train_set_id) {
            check_events(instance, ts, path, &mut violations);
        }
    }
    ValidationReport { violations }
}
