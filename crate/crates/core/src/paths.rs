//! Feasible-path enumeration.
//!
//! A path fixes, for one train-set, every status switch across the horizon.
//! Paths are generated depth-first over maintenance events: each event's
//! dispatch day ranges over the days on which the mileage counter sits inside
//! the floating window of the level due next in the cycle. After an event the
//! counter restarts from zero on the return day and the following level's
//! window is searched in turn.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fleet::{dispatch_window, CyclePosition, MaintenanceLevel, TrainSet};
use crate::network::{Arc, Successor, TimeSpaceNetwork, AVAILABLE_ROW};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Available,
    Maintenance(MaintenanceLevel),
}

impl Status {
    pub fn row(self) -> u8 {
        match self {
            Status::Available => AVAILABLE_ROW,
            Status::Maintenance(level) => level.status_row(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MaintenanceEvent {
    pub level: MaintenanceLevel,
    /// Day of the available -> maintenance switch; counted as a workshop day.
    pub dispatch_day: u32,
    /// Day of the maintenance -> available switch; counted as available.
    pub return_day: u32,
    pub mileage_at_dispatch: i64,
}

/// Maintenance already under way when the horizon starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct InProgress {
    pub level: MaintenanceLevel,
    pub return_day: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FeasiblePath {
    pub train_set_id: String,
    pub in_progress: Option<InProgress>,
    pub events: Vec<MaintenanceEvent>,
}

impl FeasiblePath {
    pub fn status_on(&self, day: u32) -> Status {
        if let Some(ip) = self.in_progress {
            if day < ip.return_day {
                return Status::Maintenance(ip.level);
            }
        }
        self.events
            .iter()
            .find(|ev| ev.dispatch_day <= day && day < ev.return_day)
            .map_or(Status::Available, |ev| Status::Maintenance(ev.level))
    }

    /// Status for days `1..=horizon_days`; index 0 is day 1.
    pub fn status_by_day(&self, horizon_days: u32) -> Vec<Status> {
        (1..=horizon_days).map(|d| self.status_on(d)).collect()
    }

    pub fn dispatch_days(&self) -> Vec<u32> {
        self.events.iter().map(|e| e.dispatch_day).collect()
    }

    /// The path as a chain of network arcs from day 1 to the super-node.
    pub fn arc_chain(&self, network: &TimeSpaceNetwork) -> Vec<Arc> {
        let status = self.status_by_day(network.horizon_days());
        let mut chain = Vec::with_capacity(status.len() + 2 * self.events.len() + 1);
        chain.push(Arc::Time {
            row: status[0].row(),
            day: 1,
        });
        for (prev, (idx, cur)) in status.iter().zip(status.iter().enumerate().skip(1)) {
            let day = idx as u32 + 1;
            if prev != cur {
                chain.push(Arc::Connect {
                    from: prev.row(),
                    to: cur.row(),
                    day,
                });
            }
            chain.push(Arc::Time {
                row: cur.row(),
                day,
            });
        }
        chain
    }

    /// Checks that consecutive arcs follow the subsequent-arc rules and that
    /// the chain ends at a super-node.
    pub fn is_network_path(&self, network: &TimeSpaceNetwork) -> bool {
        let chain = self.arc_chain(network);
        let linked = chain.windows(2).all(|w| {
            network.contains(&w[0])
                && network
                    .subsequent_arcs(&w[0])
                    .contains(&Successor::Arc(w[1]))
        });
        let last = *chain.last().expect("non-empty chain");
        linked
            && matches!(
                network.subsequent_arcs(&last).as_slice(),
                [Successor::SuperNode { .. }]
            )
    }
}

impl fmt::Display for FeasiblePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.events.is_empty() {
            return f.write_str("(no maintenance)");
        }
        for (i, ev) in self.events.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(
                f,
                "{} day {}..{} @ {} km",
                ev.level, ev.dispatch_day, ev.return_day, ev.mileage_at_dispatch
            )?;
        }
        Ok(())
    }
}

/// Canonical order: fewer events first, then lexicographic dispatch days.
fn canonical_cmp(a: &FeasiblePath, b: &FeasiblePath) -> Ordering {
    a.events.len().cmp(&b.events.len()).then_with(|| {
        a.events
            .iter()
            .map(|e| e.dispatch_day)
            .cmp(b.events.iter().map(|e| e.dispatch_day))
    })
}

/// Mileage counter when the train-set is dispatched on `dispatch_day`.
///
/// Without a prior reset the counter starts from the initial mileage on day 1;
/// otherwise it starts from zero on `prior_reset_day`.
pub fn path_mileage_at_dispatch(
    train_set: &TrainSet,
    dispatch_day: u32,
    prior_reset_day: Option<u32>,
) -> i64 {
    let daily = train_set.kind.daily_mileage();
    match prior_reset_day {
        None => train_set.initial_mileage + (i64::from(dispatch_day) - 1) * daily,
        Some(reset) => (i64::from(dispatch_day) - i64::from(reset)) * daily,
    }
}

pub fn in_progress_of(train_set: &TrainSet) -> Option<InProgress> {
    (train_set.initial_mileage < 0).then(|| InProgress {
        level: train_set.last_level,
        return_day: train_set.in_shop_days() + 1,
    })
}

struct Search<'a> {
    train_set: &'a TrainSet,
    horizon: i64,
    in_progress: Option<InProgress>,
    events: Vec<MaintenanceEvent>,
    out: Vec<FeasiblePath>,
    blocked: Option<String>,
}

impl Search<'_> {
    fn emit(&mut self) {
        self.out.push(FeasiblePath {
            train_set_id: self.train_set.id.clone(),
            in_progress: self.in_progress,
            events: self.events.clone(),
        });
    }

    /// `ready_day` is the first available day; a dispatch needs at least one
    /// available day before it, so it happens on `ready_day + 1` at the earliest.
    fn extend(&mut self, position: CyclePosition, ready_day: i64, prior_reset: Option<u32>) {
        let level = position.level();
        let kind = &self.train_set.kind;
        let regulation = kind.regulation(level);
        let (start_mileage, reference_day) = match prior_reset {
            None => (self.train_set.initial_mileage, 1),
            Some(reset) => (0, i64::from(reset)),
        };
        let window = dispatch_window(
            regulation.window_km(),
            kind.daily_mileage(),
            start_mileage,
            reference_day,
        );
        let earliest = window.earliest.max(ready_day + 1);
        for day in earliest..=window.latest.min(self.horizon) {
            let dispatch_day = day as u32;
            let return_day = dispatch_day + regulation.duration;
            self.events.push(MaintenanceEvent {
                level,
                dispatch_day,
                return_day,
                mileage_at_dispatch: path_mileage_at_dispatch(
                    self.train_set,
                    dispatch_day,
                    prior_reset,
                ),
            });
            self.extend(position.advance(), i64::from(return_day), Some(return_day));
            self.events.pop();
        }
        if window.latest > self.horizon {
            self.emit();
        } else if earliest > window.latest && self.blocked.is_none() {
            let (low, high) = regulation.window_km();
            self.blocked = Some(format!(
                "{level} window [{low}, {high}] km has no dispatch day in {}..={} \
                 (counter {start_mileage} km on day {reference_day})",
                ready_day + 1,
                window.latest,
            ));
        }
    }
}

/// Enumerates every feasible path of `train_set` on `network`, canonically
/// ordered.
pub fn generate_feasible_paths(
    train_set: &TrainSet,
    network: &TimeSpaceNetwork,
) -> Result<Vec<FeasiblePath>> {
    let in_progress = in_progress_of(train_set);
    let ready_day = in_progress.map_or(1, |ip| ip.return_day);
    let mut search = Search {
        train_set,
        horizon: i64::from(network.horizon_days()),
        in_progress,
        events: Vec::new(),
        out: Vec::new(),
        blocked: None,
    };
    search.extend(train_set.cycle_position, i64::from(ready_day), None);
    if search.out.is_empty() {
        return Err(Error::Unschedulable {
            train_set: train_set.id.clone(),
            detail: search
                .blocked
                .unwrap_or_else(|| "no feasible path".to_string()),
        });
    }
    let mut paths = search.out;
    paths.sort_by(canonical_cmp);
    Ok(paths)
}
