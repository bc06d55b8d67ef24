//! Fleet domain types: maintenance levels, per-type regulations, the
//! repeating level cycle and the dispatch windows derived from them.
//!
//! All mileages are integer kilometres. Day indices are 1-based: day 1 is the
//! first day of the planning horizon.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MaintenanceLevel {
    Third,
    Fourth,
    Fifth,
}

impl MaintenanceLevel {
    pub const ALL: [MaintenanceLevel; 3] = [
        MaintenanceLevel::Third,
        MaintenanceLevel::Fourth,
        MaintenanceLevel::Fifth,
    ];

    /// Zero-based index, usable for per-level arrays.
    pub fn index(self) -> usize {
        match self {
            MaintenanceLevel::Third => 0,
            MaintenanceLevel::Fourth => 1,
            MaintenanceLevel::Fifth => 2,
        }
    }

    /// Row of the time-space network holding this level (available is row 1).
    pub fn status_row(self) -> u8 {
        self.index() as u8 + 2
    }

    pub fn from_status_row(row: u8) -> Option<Self> {
        match row {
            2 => Some(MaintenanceLevel::Third),
            3 => Some(MaintenanceLevel::Fourth),
            4 => Some(MaintenanceLevel::Fifth),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            MaintenanceLevel::Third => "third",
            MaintenanceLevel::Fourth => "fourth",
            MaintenanceLevel::Fifth => "fifth",
        }
    }
}

impl fmt::Display for MaintenanceLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The repeating order in which a train-set receives major maintenance.
pub const MAINTENANCE_CYCLE: [MaintenanceLevel; 4] = [
    MaintenanceLevel::Third,
    MaintenanceLevel::Fourth,
    MaintenanceLevel::Third,
    MaintenanceLevel::Fifth,
];

/// Position in [`MAINTENANCE_CYCLE`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct CyclePosition(u8);

impl CyclePosition {
    pub fn new(position: u8) -> Result<Self> {
        if position < 4 {
            Ok(CyclePosition(position))
        } else {
            Err(Error::invalid(
                "TrainSet.cycle_position",
                format!("{position} is outside 0..=3"),
            ))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }

    pub fn level(self) -> MaintenanceLevel {
        MAINTENANCE_CYCLE[self.0 as usize]
    }

    pub fn advance(self) -> Self {
        CyclePosition((self.0 + 1) % 4)
    }

    /// The level of the maintenance that precedes this position in the cycle.
    pub fn previous_level(self) -> MaintenanceLevel {
        MAINTENANCE_CYCLE[((self.0 + 3) % 4) as usize]
    }
}

impl TryFrom<u8> for CyclePosition {
    type Error = Error;

    fn try_from(value: u8) -> Result<Self> {
        CyclePosition::new(value)
    }
}

impl From<CyclePosition> for u8 {
    fn from(value: CyclePosition) -> u8 {
        value.0
    }
}

/// Default workshop occupancy in days per level.
pub const DEFAULT_DURATIONS: [u32; 3] = [10, 25, 40];

/// Calendar-based trigger per level (1.5, 3 and 6 years), stored only for the
/// mileage-dominance check.
pub const DEFAULT_DAY_LIMITS: [u32; 3] = [548, 1096, 2192];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaintenanceRegulation {
    pub level: MaintenanceLevel,
    pub base_mileage: i64,
    pub float_low: i64,
    pub float_high: i64,
    pub duration: u32,
    pub day_limit: u32,
}

impl MaintenanceRegulation {
    pub fn window_km(&self) -> (i64, i64) {
        (
            self.base_mileage - self.float_low,
            self.base_mileage + self.float_high,
        )
    }

    fn validate(&self, type_name: &str) -> Result<()> {
        if self.float_low < 0 || self.float_high < 0 {
            return Err(Error::invalid(
                "MaintenanceRegulation.float",
                format!(
                    "{type_name} {}: floating margins must be non-negative",
                    self.level
                ),
            ));
        }
        if self.base_mileage - self.float_low <= 0 {
            return Err(Error::invalid(
                "MaintenanceRegulation.base_mileage",
                format!(
                    "{type_name} {}: base_mileage - float_low must be positive",
                    self.level
                ),
            ));
        }
        if self.duration == 0 {
            return Err(Error::invalid(
                "MaintenanceRegulation.duration",
                format!(
                    "{type_name} {}: duration must be at least one day",
                    self.level
                ),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrainSetType {
    name: String,
    daily_mileage: i64,
    regulations: [MaintenanceRegulation; 3],
}

impl TrainSetType {
    /// Builds a type from one regulation per level, in any order.
    pub fn new(
        name: impl Into<String>,
        daily_mileage: i64,
        regulations: Vec<MaintenanceRegulation>,
    ) -> Result<Self> {
        let name = name.into();
        if daily_mileage <= 0 {
            return Err(Error::invalid(
                "TrainSetType.daily_mileage",
                format!("{name}: daily mileage must be positive, got {daily_mileage}"),
            ));
        }
        let mut slots: [Option<MaintenanceRegulation>; 3] = [None, None, None];
        for reg in regulations {
            reg.validate(&name)?;
            let idx = reg.level.index();
            if slots[idx].is_some() {
                return Err(Error::invalid(
                    "TrainSetType.regulations",
                    format!("{name}: duplicate regulation for {}", reg.level),
                ));
            }
            slots[idx] = Some(reg);
        }
        let [third, fourth, fifth] = slots;
        match (third, fourth, fifth) {
            (Some(a), Some(b), Some(c)) => Ok(TrainSetType {
                name,
                daily_mileage,
                regulations: [a, b, c],
            }),
            _ => Err(Error::invalid(
                "TrainSetType.regulations",
                format!("{name}: all three maintenance levels must be present"),
            )),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn daily_mileage(&self) -> i64 {
        self.daily_mileage
    }

    pub fn regulation(&self, level: MaintenanceLevel) -> &MaintenanceRegulation {
        &self.regulations[level.index()]
    }

    pub fn regulations(&self) -> &[MaintenanceRegulation; 3] {
        &self.regulations
    }

    /// Whether the base mileages follow the 1x / 2x / 4x cycle ratios.
    pub fn has_cycle_ratios(&self) -> bool {
        let third = self.regulations[0].base_mileage;
        self.regulations[1].base_mileage == 2 * third
            && self.regulations[2].base_mileage == 4 * third
    }

    /// Levels whose mileage base would not be reached before the calendar
    /// trigger at this type's daily mileage.
    pub fn dominance_violations(&self) -> Vec<MaintenanceLevel> {
        self.regulations
            .iter()
            .filter(|r| r.base_mileage >= i64::from(r.day_limit) * self.daily_mileage)
            .map(|r| r.level)
            .collect()
    }
}

fn table_regulations(durations: [u32; 3]) -> Vec<MaintenanceRegulation> {
    use MaintenanceLevel::*;
    let row = |level: MaintenanceLevel, base, low, high| MaintenanceRegulation {
        level,
        base_mileage: base,
        float_low: low,
        float_high: high,
        duration: durations[level.index()],
        day_limit: DEFAULT_DAY_LIMITS[level.index()],
    };
    vec![
        row(Third, 600_000, 50_000, 20_000),
        row(Fourth, 1_200_000, 100_000, 50_000),
        row(Fifth, 2_400_000, 100_000, 100_000),
    ]
}

/// Names and average daily mileages of the bundled CRH2 / CRH380A types.
pub const BUNDLED_DAILY_MILEAGE: [(&str, i64); 6] = [
    ("CRH2A", 1500),
    ("CRH2B", 1500),
    ("CRH2C-1", 1600),
    ("CRH2C-2", 1800),
    ("CRH380A", 1900),
    ("CRH380AL", 1900),
];

/// A bundled type with the given per-level workshop durations.
pub fn bundled_type(name: &str, durations: [u32; 3]) -> Option<TrainSetType> {
    let (name, daily) = BUNDLED_DAILY_MILEAGE.iter().find(|(n, _)| *n == name)?;
    Some(
        TrainSetType::new(*name, *daily, table_regulations(durations))
            .expect("bundled table is valid"),
    )
}

pub fn bundled_types() -> Vec<TrainSetType> {
    BUNDLED_DAILY_MILEAGE
        .iter()
        .map(|(name, _)| bundled_type(name, DEFAULT_DURATIONS).unwrap())
        .collect()
}

/// Inclusive range of 1-based days on which a dispatch satisfies the
/// floating mileage window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DayWindow {
    pub earliest: i64,
    pub latest: i64,
}

impl DayWindow {
    pub fn is_empty(&self) -> bool {
        self.earliest > self.latest
    }

    pub fn width(&self) -> i64 {
        (self.latest - self.earliest + 1).max(0)
    }
}

/// Dispatch-day window for reaching `[low_km, high_km]` when the counter reads
/// `start_mileage` on day `reference_day` and grows by `daily` per day.
///
/// Days before `reference_day` are never returned.
pub fn dispatch_window(
    (low_km, high_km): (i64, i64),
    daily: i64,
    start_mileage: i64,
    reference_day: i64,
) -> DayWindow {
    let earliest = (low_km - start_mileage).div_ceil_i64(daily);
    let latest = (high_km - start_mileage).div_euclid(daily);
    DayWindow {
        earliest: reference_day + earliest.max(0),
        latest: reference_day + latest,
    }
}

trait DivCeil {
    fn div_ceil_i64(self, rhs: i64) -> i64;
}

impl DivCeil for i64 {
    fn div_ceil_i64(self, rhs: i64) -> i64 {
        let q = self.div_euclid(rhs);
        if self.rem_euclid(rhs) == 0 {
            q
        } else {
            q + 1
        }
    }
}

/// One schedulable unit of the fleet.
#[derive(Debug, Clone)]
pub struct TrainSet {
    pub id: String,
    pub kind: Arc<TrainSetType>,
    /// Mileage since the last major maintenance; negative while still in the
    /// workshop at the start of the horizon.
    pub initial_mileage: i64,
    pub initial_days: i64,
    pub last_level: MaintenanceLevel,
    pub cycle_position: CyclePosition,
}

impl TrainSet {
    pub fn validate(&self) -> Result<()> {
        let daily = self.kind.daily_mileage();
        if self.initial_mileage < 0 {
            if self.initial_days >= 0 || self.initial_mileage != self.initial_days * daily {
                return Err(Error::invalid(
                    "TrainSet.initial_days",
                    format!(
                        "{}: negative initial mileage {} requires initial_days < 0 with \
                         initial_mileage = initial_days x daily_mileage ({daily})",
                        self.id, self.initial_mileage
                    ),
                ));
            }
        } else {
            if self.initial_days < 0 {
                return Err(Error::invalid(
                    "TrainSet.initial_days",
                    format!(
                        "{}: sign of initial_days ({}) must match initial_mileage ({})",
                        self.id, self.initial_days, self.initial_mileage
                    ),
                ));
            }
            let (_, high) = self.due_window_km();
            if self.initial_mileage > high {
                return Err(Error::invalid(
                    "TrainSet.initial_mileage",
                    format!(
                        "{}: initial mileage {} exceeds the {} upper bound {high}",
                        self.id,
                        self.initial_mileage,
                        self.next_level()
                    ),
                ));
            }
        }
        Ok(())
    }

    pub fn next_level(&self) -> MaintenanceLevel {
        self.cycle_position.level()
    }

    pub fn due_window_km(&self) -> (i64, i64) {
        self.kind.regulation(self.next_level()).window_km()
    }

    /// Days remaining in the workshop at the start of the horizon.
    pub fn in_shop_days(&self) -> u32 {
        if self.initial_mileage < 0 {
            self.initial_days.unsigned_abs() as u32
        } else {
            0
        }
    }

    /// Dispatch-day window for the next-due level, counting from day 1 with
    /// the counter at `event_start_mileage`.
    pub fn due_window_days(&self, event_start_mileage: i64) -> Result<DayWindow> {
        let level = self.next_level();
        let km = self.due_window_km();
        let window = dispatch_window(km, self.kind.daily_mileage(), event_start_mileage, 1);
        if window.is_empty() {
            return Err(Error::EmptyWindow {
                train_set: self.id.clone(),
                level,
                low_km: km.0,
                high_km: km.1,
                start_mileage: event_start_mileage,
                daily_mileage: self.kind.daily_mileage(),
            });
        }
        Ok(window)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use MaintenanceLevel::*;

    fn crh2a(position: u8, initial: i64) -> TrainSet {
        TrainSet {
            id: "e1".into(),
            kind: Arc::new(bundled_type("CRH2A", DEFAULT_DURATIONS).unwrap()),
            initial_mileage: initial,
            initial_days: initial / 1500,
            last_level: Fifth,
            cycle_position: CyclePosition::new(position).unwrap(),
        }
    }

    #[test]
    fn cycle_order_and_wraparound() {
        let p = CyclePosition::new(0).unwrap();
        assert_eq!(p.level(), Third);
        assert_eq!(p.advance().level(), Fourth);
        let p3 = CyclePosition::new(3).unwrap();
        assert_eq!(p3.level(), Fifth);
        assert_eq!(p3.advance().get(), 0);
        assert_eq!(p3.advance().level(), Third);
        assert!(CyclePosition::new(4).is_err());
    }

    #[test]
    fn four_advances_return_to_start() {
        for pos in 0..4 {
            let p = CyclePosition::new(pos).unwrap();
            assert_eq!(p.advance().advance().advance().advance(), p);
        }
    }

    #[test]
    fn level_ordering() {
        assert!(Third < Fourth && Fourth < Fifth);
    }

    #[test]
    fn due_windows_in_km() {
        assert_eq!(crh2a(0, 0).due_window_km(), (550_000, 620_000));
        assert_eq!(crh2a(3, 0).due_window_km(), (2_300_000, 2_500_000));
    }

    #[test]
    fn zero_width_window() {
        let reg = MaintenanceRegulation {
            level: Third,
            base_mileage: 600_000,
            float_low: 0,
            float_high: 0,
            duration: 10,
            day_limit: 548,
        };
        assert_eq!(reg.window_km(), (600_000, 600_000));
        // 600 000 / 1 500 = 400 exactly, so one dispatch day exists.
        assert_eq!(
            dispatch_window(reg.window_km(), 1500, 0, 1),
            DayWindow {
                earliest: 401,
                latest: 401
            }
        );
        // 1 700 km/day does not divide 600 000 exactly: no day hits it.
        assert!(dispatch_window(reg.window_km(), 1700, 0, 1).is_empty());
    }

    #[test]
    fn due_window_days_examples() {
        let w = crh2a(0, 0).due_window_days(0).unwrap();
        assert_eq!((w.earliest, w.latest), (368, 414));
        let w = crh2a(0, 550_000).due_window_days(550_000).unwrap();
        assert_eq!((w.earliest, w.latest), (1, 47));
        let w = crh2a(0, 620_000).due_window_days(620_000).unwrap();
        assert_eq!((w.earliest, w.latest), (1, 1));
    }

    #[test]
    fn due_window_days_reports_empty_window() {
        let kind = TrainSetType::new(
            "X",
            1700,
            vec![
                MaintenanceRegulation {
                    level: Third,
                    base_mileage: 600_000,
                    float_low: 0,
                    float_high: 0,
                    duration: 1,
                    day_limit: 548,
                },
                table_regulations(DEFAULT_DURATIONS)[1].clone(),
                table_regulations(DEFAULT_DURATIONS)[2].clone(),
            ],
        )
        .unwrap();
        let ts = TrainSet {
            kind: Arc::new(kind),
            ..crh2a(0, 0)
        };
        assert!(matches!(
            ts.due_window_days(0),
            Err(Error::EmptyWindow { .. })
        ));
    }

    #[test]
    fn bundled_ratios_and_dominance() {
        for t in bundled_types() {
            assert!(t.has_cycle_ratios(), "{}", t.name());
            assert!(t.dominance_violations().is_empty(), "{}", t.name());
        }
    }

    #[test]
    fn regulation_invariants_rejected() {
        let mut regs = table_regulations(DEFAULT_DURATIONS);
        regs[0].float_low = 600_000;
        assert!(TrainSetType::new("bad", 1500, regs).is_err());
        let mut regs = table_regulations(DEFAULT_DURATIONS);
        regs[1].duration = 0;
        assert!(TrainSetType::new("bad", 1500, regs).is_err());
        let regs = table_regulations(DEFAULT_DURATIONS)[..2].to_vec();
        assert!(TrainSetType::new("bad", 1500, regs).is_err());
        assert!(TrainSetType::new("bad", 0, table_regulations(DEFAULT_DURATIONS)).is_err());
    }

    #[test]
    fn train_set_sign_invariant() {
        let mut ts = crh2a(0, 100_000);
        ts.initial_days = -3;
        assert!(ts.validate().is_err());
        let mut ts = crh2a(0, -4500);
        ts.initial_days = -3;
        assert!(ts.validate().is_ok());
        ts.initial_days = -2;
        assert!(ts.validate().is_err());
        let ts = crh2a(0, 700_000);
        assert!(ts.validate().is_err());
    }
}
