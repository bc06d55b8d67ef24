#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use emu_maint::fleet::{CyclePosition, MaintenanceLevel, MaintenanceRegulation, TrainSetType};
use emu_maint::instance::parse_instance;
use emu_maint::paths::FeasiblePath;
use emu_maint::{Instance, TrainSet};
use rand::Rng;

pub const CYCLE: [MaintenanceLevel; 4] = [
    MaintenanceLevel::Third,
    MaintenanceLevel::Fourth,
    MaintenanceLevel::Third,
    MaintenanceLevel::Fifth,
];

/// Longest event tuple the brute force tries.
pub const MAX_EVENTS: usize = 5;

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("examples")
        .join(name)
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap()
}

pub fn edited(name: &str, f: impl FnOnce(&mut serde_json::Value)) -> Instance {
    let mut v: serde_json::Value = serde_json::from_str(&fixture_text(name)).unwrap();
    f(&mut v);
    parse_instance(&v.to_string(), Path::new(name)).unwrap()
}

/// toy3 plus three variants: a zero third-level workshop, a tighter peak and
/// a relaxed demand profile.
pub fn toy_corpus() -> Vec<Instance> {
    vec![
        edited("toy3.json", |_| {}),
        edited("toy3.json", |v| v["capacities"]["third"] = 0.into()),
        edited("toy3.json", |v| {
            v["demand_periods"][0]["min_available"] = 3.into();
        }),
        edited("toy3.json", |v| {
            v["demand_periods"][0]["min_available"] = 0.into();
            v["demand_periods"][1]["min_available"] = 1.into();
            v["capacities"]["third"] = 2.into();
        }),
    ]
}

/// Hashable shape of one path: (level, dispatch, return, mileage) per event.
pub type PathKey = Vec<(MaintenanceLevel, u32, u32, i64)>;

pub fn key_of(p: &FeasiblePath) -> PathKey {
    p.events
        .iter()
        .map(|e| (e.level, e.dispatch_day, e.return_day, e.mileage_at_dispatch))
        .collect()
}

/// Tries every increasing tuple of dispatch days in `1..=k` and keeps those
/// whose day-by-day replay honours the windows, the cycle, the one-available-
/// day-before-dispatch rule and the no-overdue-at-horizon rule.
pub fn brute_force_paths(ts: &TrainSet, k: u32) -> BTreeSet<PathKey> {
    let mut out = BTreeSet::new();
    let mut tuple = Vec::new();
    fn rec(ts: &TrainSet, k: u32, next: u32, tuple: &mut Vec<u32>, out: &mut BTreeSet<PathKey>) {
        if let Some(p) = replay(ts, k, tuple) {
            out.insert(p);
        }
        if tuple.len() == MAX_EVENTS {
            return;
        }
        for d in next..=k {
            tuple.push(d);
            rec(ts, k, d + 1, tuple, out);
            tuple.pop();
        }
    }
    rec(ts, k, 1, &mut tuple, &mut out);
    out
}

fn replay(ts: &TrainSet, k: u32, days: &[u32]) -> Option<PathKey> {
    let daily = ts.kind.daily_mileage();
    let mut first_available: i64 = if ts.initial_mileage < 0 {
        ts.initial_days.abs() + 1
    } else {
        1
    };
    let mut counter_at_ref = ts.initial_mileage;
    let mut ref_day: i64 = 1;
    let mut pos = ts.cycle_position.get() as usize;
    let mut key = Vec::new();
    for &d in days {
        let d = i64::from(d);
        if d <= first_available {
            return None;
        }
        let reg = ts.kind.regulation(CYCLE[pos]);
        let m = counter_at_ref + (d - ref_day) * daily;
        if m < reg.base_mileage - reg.float_low || m > reg.base_mileage + reg.float_high {
            return None;
        }
        let ret = d + i64::from(reg.duration);
        key.push((CYCLE[pos], d as u32, ret as u32, m));
        first_available = ret;
        counter_at_ref = 0;
        ref_day = ret;
        pos = (pos + 1) % 4;
    }
    // the next event must not fall due on or before day k
    let reg = ts.kind.regulation(CYCLE[pos]);
    let on_day_after = counter_at_ref + (i64::from(k) + 1 - ref_day) * daily;
    if on_day_after <= reg.base_mileage + reg.float_high {
        Some(key)
    } else {
        None
    }
}

/// A random train-set whose windows are a few days wide at horizon scale,
/// with a horizon of at most 30 days.
pub fn random_train_set<R: Rng>(rng: &mut R) -> (TrainSet, u32) {
    let daily = rng.gen_range(10..=20) * 100;
    let reg = |rng: &mut R, level, days_to_base: i64| {
        let base = days_to_base * daily + rng.gen_range(0..daily);
        MaintenanceRegulation {
            level,
            base_mileage: base,
            float_low: rng.gen_range(0..=6) * daily + rng.gen_range(0..daily),
            float_high: rng.gen_range(0..=4) * daily + rng.gen_range(0..daily),
            duration: rng.gen_range(1..=6),
            day_limit: 10_000,
        }
    };
    let [third_days, fourth_days, fifth_days] = [
        rng.gen_range(7..=14),
        rng.gen_range(8..=16),
        rng.gen_range(8..=20),
    ];
    let regs = vec![
        reg(rng, MaintenanceLevel::Third, third_days),
        reg(rng, MaintenanceLevel::Fourth, fourth_days),
        reg(rng, MaintenanceLevel::Fifth, fifth_days),
    ];
    let kind = TrainSetType::new("RND", daily, regs).unwrap();
    let position = rng.gen_range(0..4u8);
    let due_high = {
        let r = kind.regulation(CYCLE[position as usize]);
        r.base_mileage + r.float_high
    };
    let (initial_mileage, initial_days) = if rng.gen_bool(0.2) {
        let days = rng.gen_range(1..=5);
        (-days * daily, -days)
    } else {
        let m = rng.gen_range(0..=due_high);
        (m, m / daily)
    };
    let ts = TrainSet {
        id: "R".into(),
        kind: Arc::new(kind),
        initial_mileage,
        initial_days,
        last_level: CyclePosition::new(position).unwrap().previous_level(),
        cycle_position: CyclePosition::new(position).unwrap(),
    };
    (ts, rng.gen_range(5..=30))
}
