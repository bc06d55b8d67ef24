//! Problem instances and their JSON file format.

use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::path::Path;
use std::sync::Arc;

use chrono::{Days, NaiveDate};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evaluate::{DemandPeriod, PeriodLabel, WorkshopCapacity};
use crate::fleet::{
    bundled_type, CyclePosition, MaintenanceLevel, MaintenanceRegulation, TrainSet, TrainSetType,
    DEFAULT_DAY_LIMITS, DEFAULT_DURATIONS,
};

#[derive(Debug, Clone)]
pub struct Instance {
    pub name: Option<String>,
    pub start_date: NaiveDate,
    pub horizon_days: u32,
    pub durations: [u32; 3],
    pub types: Vec<Arc<TrainSetType>>,
    pub fleet: Vec<TrainSet>,
    pub demand_periods: Vec<DemandPeriod>,
    pub capacities: WorkshopCapacity,
    /// Non-fatal findings from loading, e.g. dominance or cycle mismatches.
    pub warnings: Vec<String>,
    demand_by_day: Vec<(PeriodLabel, u32)>,
}

impl Instance {
    pub fn train_set(&self, id: &str) -> Option<&TrainSet> {
        self.fleet.iter().find(|t| t.id == id)
    }

    pub fn fleet_size(&self) -> usize {
        self.fleet.len()
    }

    /// Demand period label and minimum available count on 1-based `day`.
    pub fn demand_on(&self, day: u32) -> (PeriodLabel, u32) {
        self.demand_by_day[day as usize - 1]
    }

    pub fn min_available_on(&self, day: u32) -> u32 {
        self.demand_on(day).1
    }

    pub fn date_of(&self, day: u32) -> NaiveDate {
        self.start_date + Days::new(u64::from(day.saturating_sub(1)))
    }

    /// Recomputes the per-day demand lookup after `demand_periods` changed.
    /// Days not covered by any period require nothing.
    pub fn rebuild_demand_index(&mut self) {
        let mut by_day = vec![(PeriodLabel::Usual, 0); self.horizon_days as usize];
        for p in &self.demand_periods {
            for d in p.day_iter() {
                if (1..=self.horizon_days).contains(&d) {
                    by_day[d as usize - 1] = (p.label, p.min_available);
                }
            }
        }
        self.demand_by_day = by_day;
    }

    fn check_periods(&self) -> Result<()> {
        let mut covered = vec![0u32; self.horizon_days as usize];
        for p in &self.demand_periods {
            for &(a, b) in &p.days {
                if a == 0 || a > b || b > self.horizon_days {
                    return Err(Error::invalid(
                        "DemandPeriod.days",
                        format!(
                            "{} range [{a}, {b}] is not inside 1..={}",
                            p.label, self.horizon_days
                        ),
                    ));
                }
            }
            for d in p.day_iter() {
                covered[d as usize - 1] += 1;
            }
        }
        if let Some(i) = covered.iter().position(|&c| c != 1) {
            return Err(Error::invalid(
                "DemandPeriod.days",
                format!(
                    "demand periods must partition the horizon; day {} is covered {} times",
                    i + 1,
                    covered[i]
                ),
            ));
        }
        Ok(())
    }

    fn collect_warnings(&mut self) {
        let mut warnings = Vec::new();
        for t in &self.types {
            for level in t.dominance_violations() {
                warnings.push(format!(
                    "type {}: {level}-level mileage base is reached after its calendar limit; \
                     calendar triggers are not modelled",
                    t.name()
                ));
            }
            if !t.has_cycle_ratios() {
                warnings.push(format!(
                    "type {}: base mileages do not follow the 1:2:4 cycle ratio",
                    t.name()
                ));
            }
        }
        for ts in &self.fleet {
            let expected = ts.cycle_position.previous_level();
            if ts.last_level != expected {
                warnings.push(format!(
                    "train-set {}: last level {} does not precede cycle position {} ({expected} expected)",
                    ts.id,
                    ts.last_level,
                    ts.cycle_position.get()
                ));
            }
        }
        let fleet = self.fleet.len() as u32;
        for p in &self.demand_periods {
            if p.min_available > fleet {
                warnings.push(format!(
                    "{} period requires {} available train-sets but the fleet has {fleet}",
                    p.label, p.min_available
                ));
            }
        }
        self.warnings = warnings;
    }

    pub fn from_file_data(file: InstanceFile) -> Result<Self> {
        if file.horizon_days == 0 {
            return Err(Error::invalid(
                "Instance.horizon_days",
                "horizon must be at least one day",
            ));
        }
        if file.fleet.is_empty() {
            return Err(Error::invalid("Instance.fleet", "fleet must be non-empty"));
        }
        let durations = [
            file.durations.third,
            file.durations.fourth,
            file.durations.fifth,
        ];
        if durations.contains(&0) {
            return Err(Error::invalid(
                "Instance.durations",
                "durations must be at least one day",
            ));
        }

        let mut types: Vec<Arc<TrainSetType>> = Vec::new();
        for t in &file.types {
            if types.iter().any(|x| x.name() == t.name) {
                return Err(Error::invalid(
                    "Instance.types",
                    format!("type {} defined twice", t.name),
                ));
            }
            types.push(Arc::new(t.to_type(durations)?));
        }

        let mut fleet = Vec::with_capacity(file.fleet.len());
        let mut ids = HashSet::new();
        for f in &file.fleet {
            if !ids.insert(f.id.as_str()) {
                return Err(Error::invalid(
                    "TrainSet.id",
                    format!("duplicate train-set id {}", f.id),
                ));
            }
            let kind = match types.iter().find(|t| t.name() == f.type_name) {
                Some(t) => Arc::clone(t),
                None => {
                    let t = bundled_type(&f.type_name, durations).ok_or_else(|| {
                        Error::invalid(
                            "TrainSet.type",
                            format!(
                                "train-set {}: unknown type {} and no inline regulation given",
                                f.id, f.type_name
                            ),
                        )
                    })?;
                    let t = Arc::new(t);
                    types.push(Arc::clone(&t));
                    t
                }
            };
            let ts = TrainSet {
                id: f.id.clone(),
                kind,
                initial_mileage: f.initial_mileage,
                initial_days: f.initial_days,
                last_level: f.last_level,
                cycle_position: CyclePosition::new(f.cycle_position).map_err(|e| {
                    Error::invalid("TrainSet.cycle_position", format!("{}: {e}", f.id))
                })?,
            };
            ts.validate()?;
            fleet.push(ts);
        }

        let mut instance = Instance {
            name: file.name,
            start_date: file.start_date,
            horizon_days: file.horizon_days,
            durations,
            types,
            fleet,
            demand_periods: file.demand_periods,
            capacities: file.capacities,
            warnings: Vec::new(),
            demand_by_day: Vec::new(),
        };
        instance.check_periods()?;
        instance.rebuild_demand_index();
        instance.collect_warnings();
        Ok(instance)
    }

    /// File representation with every used type written inline.
    pub fn to_file_data(&self) -> InstanceFile {
        InstanceFile {
            name: self.name.clone(),
            start_date: self.start_date,
            horizon_days: self.horizon_days,
            durations: DurationsFile {
                third: self.durations[0],
                fourth: self.durations[1],
                fifth: self.durations[2],
            },
            types: self.types.iter().map(|t| TypeFile::from_type(t)).collect(),
            fleet: self
                .fleet
                .iter()
                .map(|t| TrainSetFile {
                    id: t.id.clone(),
                    type_name: t.kind.name().to_string(),
                    initial_mileage: t.initial_mileage,
                    initial_days: t.initial_days,
                    last_level: t.last_level,
                    cycle_position: t.cycle_position.get(),
                })
                .collect(),
            demand_periods: self.demand_periods.clone(),
            capacities: self.capacities,
        }
    }
}

pub fn parse_instance(text: &str, origin: &Path) -> Result<Instance> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        path: origin.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Instance::from_file_data(file)
}

pub fn load_instance(path: impl AsRef<Path>) -> Result<Instance> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let instance = parse_instance(&text, path)?;
    for w in &instance.warnings {
        log::warn!("{}: {w}", path.display());
    }
    Ok(instance)
}

pub fn save_instance(instance: &Instance, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let text = serde_json::to_string_pretty(&instance.to_file_data()).expect("instance serialises");
    fs::write(path, text + "\n").map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub start_date: NaiveDate,
    pub horizon_days: u32,
    #[serde(default)]
    pub durations: DurationsFile,
    #[serde(default)]
    pub types: Vec<TypeFile>,
    pub fleet: Vec<TrainSetFile>,
    pub demand_periods: Vec<DemandPeriod>,
    pub capacities: WorkshopCapacity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DurationsFile {
    pub third: u32,
    pub fourth: u32,
    pub fifth: u32,
}

impl Default for DurationsFile {
    fn default() -> Self {
        let [third, fourth, fifth] = DEFAULT_DURATIONS;
        DurationsFile {
            third,
            fourth,
            fifth,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TypeFile {
    pub name: String,
    pub daily_mileage: i64,
    pub regulations: BTreeMap<MaintenanceLevel, RegulationFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegulationFile {
    pub base_mileage: i64,
    pub float_low: i64,
    pub float_high: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub duration: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub day_limit: Option<u32>,
}

impl TypeFile {
    fn to_type(&self, durations: [u32; 3]) -> Result<TrainSetType> {
        let regs = self
            .regulations
            .iter()
            .map(|(&level, r)| MaintenanceRegulation {
                level,
                base_mileage: r.base_mileage,
                float_low: r.float_low,
                float_high: r.float_high,
                duration: r.duration.unwrap_or(durations[level.index()]),
                day_limit: r.day_limit.unwrap_or(DEFAULT_DAY_LIMITS[level.index()]),
            })
            .collect();
        TrainSetType::new(self.name.clone(), self.daily_mileage, regs)
    }

    fn from_type(t: &TrainSetType) -> Self {
        TypeFile {
            name: t.name().to_string(),
            daily_mileage: t.daily_mileage(),
            regulations: t
                .regulations()
                .iter()
                .map(|r| {
                    (
                        r.level,
                        RegulationFile {
                            base_mileage: r.base_mileage,
                            float_low: r.float_low,
                            float_high: r.float_high,
                            duration: Some(r.duration),
                            day_limit: Some(r.day_limit),
                        },
                    )
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrainSetFile {
    pub id: String,
    #[serde(rename = "type")]
    pub type_name: String,
    pub initial_mileage: i64,
    pub initial_days: i64,
    pub last_level: MaintenanceLevel,
    pub cycle_position: u8,
}
