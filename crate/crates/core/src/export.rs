//! Solution files, schedule/count/trace CSVs and validation reports.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evaluate::{PenaltyWeights, Solution, ValidationReport};
use crate::instance::Instance;
use crate::paths::{in_progress_of, FeasiblePath, MaintenanceEvent};
use crate::solver::TracePoint;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssignmentFile {
    pub train_set_id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path_index: Option<usize>,
    pub events: Vec<MaintenanceEvent>,
}

/// On-disk solution. Field order is the serialised key order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance: Option<String>,
    pub horizon_days: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genes: Option<Vec<usize>>,
    pub objective: f64,
    pub mileage_loss_km: i64,
    pub penalized_objective: f64,
    pub availability_shortfall: u64,
    pub capacity_excess: u64,
    pub feasible: bool,
    pub assignments: Vec<AssignmentFile>,
}

impl SolutionFile {
    pub fn from_solution(
        solution: &Solution,
        instance: &Instance,
        report: &ValidationReport,
    ) -> Self {
        let e = &solution.evaluation;
        SolutionFile {
            instance: instance.name.clone(),
            horizon_days: instance.horizon_days,
            genes: solution.genes.clone(),
            objective: e.objective,
            mileage_loss_km: e.mileage_loss_km,
            penalized_objective: e.penalized_objective,
            availability_shortfall: e.availability_shortfall,
            capacity_excess: e.capacity_excess,
            feasible: report.is_feasible(),
            assignments: solution
                .paths
                .iter()
                .enumerate()
                .map(|(i, p)| AssignmentFile {
                    train_set_id: p.train_set_id.clone(),
                    path_index: solution.genes.as_ref().map(|g| g[i]),
                    events: p.events.clone(),
                })
                .collect(),
        }
    }

    /// Rebuilds a solution against `instance`, recomputing every cached
    /// quantity from the listed events.
    pub fn to_solution(&self, instance: &Instance, weights: &PenaltyWeights) -> Result<Solution> {
        if self.horizon_days != instance.horizon_days {
            return Err(Error::invalid(
                "SolutionFile.horizon_days",
                format!(
                    "solution covers {} days but the instance horizon is {}",
                    self.horizon_days, instance.horizon_days
                ),
            ));
        }
        let paths = self
            .assignments
            .iter()
            .map(|a| FeasiblePath {
                train_set_id: a.train_set_id.clone(),
                in_progress: instance.train_set(&a.train_set_id).and_then(in_progress_of),
                events: a.events.clone(),
            })
            .collect();
        Ok(Solution::new(instance, paths, self.genes.clone(), weights))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("solution serialises") + "\n"
    }
}

pub fn load_solution(path: impl AsRef<Path>) -> Result<SolutionFile> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn csv_err(path: &Path) -> impl FnOnce(csv::Error) -> Error + '_ {
    move |e| Error::Io {
        path: path.to_path_buf(),
        source: std::io::Error::other(e),
    }
}

pub fn schedule_csv(solution: &Solution, instance: &Instance) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let p = Path::new("schedule.csv");
    w.write_record([
        "train_set_id",
        "event_index",
        "level",
        "dispatch_day",
        "dispatch_date",
        "return_day",
        "mileage_at_dispatch",
        "mileage_slack_km",
    ])
    .map_err(csv_err(p))?;
    for path in &solution.paths {
        let Some(ts) = instance.train_set(&path.train_set_id) else {
            continue;
        };
        for (i, ev) in path.events.iter().enumerate() {
            let (_, high) = ts.kind.regulation(ev.level).window_km();
            w.write_record([
                path.train_set_id.clone(),
                i.to_string(),
                ev.level.to_string(),
                ev.dispatch_day.to_string(),
                instance.date_of(ev.dispatch_day).to_string(),
                ev.return_day.to_string(),
                ev.mileage_at_dispatch.to_string(),
                (high - ev.mileage_at_dispatch).to_string(),
            ])
            .map_err(csv_err(p))?;
        }
    }
    Ok(String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8"))
}

pub fn daily_counts_csv(solution: &Solution) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let p = Path::new("daily_counts.csv");
    w.write_record(["day", "available", "third", "fourth", "fifth"])
        .map_err(csv_err(p))?;
    for (day, row) in solution.counts.iter() {
        let mut rec = vec![day.to_string()];
        rec.extend(row.iter().map(u32::to_string));
        w.write_record(&rec).map_err(csv_err(p))?;
    }
    Ok(String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8"))
}

pub fn trace_csv(trace: &[TracePoint]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let p = Path::new("trace.csv");
    w.write_record(["generation", "temperature", "best_penalized"])
        .map_err(csv_err(p))?;
    for t in trace {
        w.write_record([
            t.generation.to_string(),
            t.temperature.to_string(),
            t.best_penalized.to_string(),
        ])
        .map_err(csv_err(p))?;
    }
    Ok(String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8"))
}

fn write(dir: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    let path = dir.join(name);
    fs::write(&path, contents).map_err(io_err(&path))?;
    Ok(path)
}

/// Writes `schedule.csv`, `solution.json`, `daily_counts.csv` and the
/// validation report (`validation.txt`, `validation.json`) into `dir`.
pub fn export_schedule(
    solution: &Solution,
    instance: &Instance,
    report: &ValidationReport,
    dir: impl AsRef<Path>,
) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let file = SolutionFile::from_solution(solution, instance, report);
    Ok(vec![
        write(dir, "schedule.csv", &schedule_csv(solution, instance)?)?,
        write(dir, "solution.json", &file.to_json())?,
        write(dir, "daily_counts.csv", &daily_counts_csv(solution)?)?,
        write(dir, "validation.txt", &report.to_text())?,
        write(
            dir,
            "validation.json",
            &(serde_json::to_string_pretty(report).expect("report serialises") + "\n"),
        )?,
    ])
}

pub fn export_trace(trace: &[TracePoint], dir: impl AsRef<Path>) -> Result<PathBuf> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    write(dir, "trace.csv", &trace_csv(trace)?)
}
