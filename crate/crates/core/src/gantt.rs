//! SVG Gantt chart: one lane per train-set, one column per day.

use std::fmt::Write as _;

use crate::evaluate::{PeriodLabel, Solution};
use crate::instance::Instance;
use crate::paths::Status;

const LABEL_WIDTH: f64 = 96.0;
const DAY_WIDTH: f64 = 4.0;
const LANE_HEIGHT: f64 = 22.0;
const LANE_GAP: f64 = 6.0;
const TOP: f64 = 28.0;
const BOTTOM: f64 = 24.0;

fn status_class(status: Status) -> (&'static str, &'static str) {
    use crate::fleet::MaintenanceLevel::*;
    match status {
        Status::Available => ("available", "#8fbf7f"),
        Status::Maintenance(Third) => ("third", "#f0a830"),
        Status::Maintenance(Fourth) => ("fourth", "#d9534f"),
        Status::Maintenance(Fifth) => ("fifth", "#5b6ee1"),
    }
}

fn period_fill(label: PeriodLabel) -> &'static str {
    match label {
        PeriodLabel::Usual => "none",
        PeriodLabel::SpringFestival => "#fbe3e3",
        PeriodLabel::SummerHoliday => "#fff4cc",
        PeriodLabel::NationalDay => "#e3ecfb",
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn x_of(day: u32) -> f64 {
    LABEL_WIDTH + f64::from(day - 1) * DAY_WIDTH
}

/// Renders `solution` as a standalone SVG document.
pub fn render_gantt(solution: &Solution, instance: &Instance) -> String {
    let k = instance.horizon_days;
    let lanes = solution.paths.len();
    let width = LABEL_WIDTH + f64::from(k) * DAY_WIDTH + 16.0;
    let lanes_bottom = TOP + lanes as f64 * (LANE_HEIGHT + LANE_GAP);
    let height = lanes_bottom + BOTTOM;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1}" height="{height:.1}" viewBox="0 0 {width:.1} {height:.1}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);

    // demand period bands behind the lanes
    for p in &instance.demand_periods {
        if p.label == PeriodLabel::Usual {
            continue;
        }
        for &(a, b) in &p.days {
            let _ = writeln!(
                svg,
                r#"<rect class="period {label}" x="{x:.1}" y="{y:.1}" width="{w:.1}" height="{h:.1}" fill="{fill}"><title>{label} (min {n})</title></rect>"#,
                label = p.label,
                x = x_of(a),
                y = TOP - 4.0,
                w = f64::from(b - a + 1) * DAY_WIDTH,
                h = lanes_bottom - TOP + 4.0,
                fill = period_fill(p.label),
                n = p.min_available,
            );
        }
    }

    // day axis
    let mut day = 1;
    while day <= k {
        let x = x_of(day);
        let _ = writeln!(
            svg,
            r##"<line x1="{x:.1}" y1="{y1:.1}" x2="{x:.1}" y2="{y2:.1}" stroke="#cccccc" stroke-width="0.5"/><text x="{x:.1}" y="{ty:.1}">{day}</text>"##,
            y1 = TOP - 8.0,
            y2 = lanes_bottom,
            ty = TOP - 12.0,
        );
        day += 30;
    }

    for (lane, path) in solution.paths.iter().enumerate() {
        let y = TOP + lane as f64 * (LANE_HEIGHT + LANE_GAP);
        let _ = writeln!(
            svg,
            r#"<g class="lane" data-train-set="{id}"><text x="4" y="{ty:.1}">{id}</text>"#,
            id = escape(&path.train_set_id),
            ty = y + LANE_HEIGHT * 0.7,
        );
        let status = path.status_by_day(k);
        let mut start = 0usize;
        while start < status.len() {
            let mut end = start + 1;
            while end < status.len() && status[end] == status[start] {
                end += 1;
            }
            let (class, fill) = status_class(status[start]);
            let first = start as u32 + 1;
            let _ = writeln!(
                svg,
                r#"  <rect class="span {class}" x="{x:.1}" y="{y:.1}" width="{w:.1}" height="{LANE_HEIGHT:.1}" fill="{fill}"><title>{class} days {first}-{last}</title></rect>"#,
                x = x_of(first),
                w = (end - start) as f64 * DAY_WIDTH,
                last = end,
            );
            start = end;
        }
        svg.push_str("</g>\n");
    }

    // legend
    let mut lx = LABEL_WIDTH;
    let ly = lanes_bottom + 6.0;
    for (class, fill) in ["available", "third", "fourth", "fifth"].into_iter().zip([
        status_class(Status::Available).1,
        status_class(Status::Maintenance(crate::fleet::MaintenanceLevel::Third)).1,
        status_class(Status::Maintenance(crate::fleet::MaintenanceLevel::Fourth)).1,
        status_class(Status::Maintenance(crate::fleet::MaintenanceLevel::Fifth)).1,
    ]) {
        let _ = writeln!(
            svg,
            r#"<rect x="{lx:.1}" y="{ly:.1}" width="10" height="10" fill="{fill}"/><text x="{tx:.1}" y="{ty:.1}">{class}</text>"#,
            tx = lx + 14.0,
            ty = ly + 9.0,
        );
        lx += 80.0;
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::tests::toy_instance;
    use crate::oracle::{enumerate_optimal, OracleBudget};
    use crate::paths::FeasiblePath;
    use crate::solver::SolverParams;

    #[test]
    fn toy_chart_lanes() {
        let inst = toy_instance();
        let r =
            enumerate_optimal(&inst, &SolverParams::default(), OracleBudget::default()).unwrap();
        let svg = render_gantt(&r.solution, &inst);
        assert_eq!(svg.matches(r#"<g class="lane""#).count(), 3);
        assert_eq!(svg.matches(r#"class="span third""#).count(), 3);
        assert!(svg.contains(r#"class="period spring_festival" x="256.0""#));
        // 120 days at 4 px
        assert!(
            svg.contains(r#"<svg xmlns="http://www.w3.org/2000/svg" width="592.0" height="136.0""#)
        );
        assert_eq!(svg, render_gantt(&r.solution, &inst));
    }

    #[test]
    fn no_events_gives_plain_bars() {
        let inst = toy_instance();
        let paths = inst
            .fleet
            .iter()
            .map(|t| FeasiblePath {
                train_set_id: t.id.clone(),
                in_progress: None,
                events: vec![],
            })
            .collect();
        let sol = Solution::new(&inst, paths, None, &SolverParams::default().weights());
        let svg = render_gantt(&sol, &inst);
        assert_eq!(svg.matches(r#"class="span available""#).count(), 3);
        assert_eq!(svg.matches(r#"class="span "#).count(), 3);
        assert!(svg.contains(r#"width="480.0" height="22.0""#));
    }
}
