//! Day x status time-space network.
//!
//! Rows: 1 = available, 2..=4 = third/fourth/fifth level maintenance.
//! Columns are days `1..=K`; column `K + 1` holds one super-node per row.
//! The network is implicit: arcs are generated on demand from the horizon.

use std::fmt::Write as _;

use crate::error::{Error, Result};

pub const AVAILABLE_ROW: u8 = 1;
pub const STATUS_ROWS: u8 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId {
    pub status_row: u8,
    pub day: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Arc {
    /// Spends day `day` in `row`.
    Time { row: u8, day: u32 },
    /// Zero-duration switch from `from` to `to` at the start of day `day`.
    Connect { from: u8, to: u8, day: u32 },
}

impl Arc {
    pub fn day(&self) -> u32 {
        match *self {
            Arc::Time { day, .. } | Arc::Connect { day, .. } => day,
        }
    }

    pub fn is_connect(&self) -> bool {
        matches!(self, Arc::Connect { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Successor {
    Arc(Arc),
    /// Terminal super-node closing `row` at the end of the horizon.
    SuperNode {
        row: u8,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TimeSpaceNetwork {
    horizon_days: u32,
}

fn is_maintenance_row(row: u8) -> bool {
    (2..=STATUS_ROWS).contains(&row)
}

impl TimeSpaceNetwork {
    pub fn new(horizon_days: u32) -> Result<Self> {
        if horizon_days == 0 {
            return Err(Error::invalid(
                "TimeSpaceNetwork.horizon_days",
                "planning horizon must contain at least one day",
            ));
        }
        Ok(TimeSpaceNetwork { horizon_days })
    }

    pub fn horizon_days(&self) -> u32 {
        self.horizon_days
    }

    pub fn super_node(&self, row: u8) -> NodeId {
        NodeId {
            status_row: row,
            day: self.horizon_days + 1,
        }
    }

    pub fn contains(&self, arc: &Arc) -> bool {
        let day_ok = |d: u32| (1..=self.horizon_days).contains(&d);
        match *arc {
            Arc::Time { row, day } => (1..=STATUS_ROWS).contains(&row) && day_ok(day),
            Arc::Connect { from, to, day } => {
                day_ok(day)
                    && ((from == AVAILABLE_ROW && is_maintenance_row(to))
                        || (is_maintenance_row(from) && to == AVAILABLE_ROW))
            }
        }
    }

    pub fn time_arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        (1..=STATUS_ROWS)
            .flat_map(move |row| (1..=self.horizon_days).map(move |day| Arc::Time { row, day }))
    }

    pub fn connect_arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        (1..=self.horizon_days).flat_map(|day| {
            (2..=STATUS_ROWS).flat_map(move |j| {
                [
                    Arc::Connect {
                        from: AVAILABLE_ROW,
                        to: j,
                        day,
                    },
                    Arc::Connect {
                        from: j,
                        to: AVAILABLE_ROW,
                        day,
                    },
                ]
            })
        })
    }

    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        self.time_arcs().chain(self.connect_arcs())
    }

    /// Arcs that may directly follow `arc` on a path.
    pub fn subsequent_arcs(&self, arc: &Arc) -> Vec<Successor> {
        debug_assert!(self.contains(arc), "{arc:?} is not in the network");
        let k = self.horizon_days;
        match *arc {
            Arc::Time { row, day } if day == k => vec![Successor::SuperNode { row }],
            Arc::Time {
                row: AVAILABLE_ROW,
                day,
            } => {
                let next = day + 1;
                let mut out = vec![Successor::Arc(Arc::Time {
                    row: AVAILABLE_ROW,
                    day: next,
                })];
                out.extend((2..=STATUS_ROWS).map(|j| {
                    Successor::Arc(Arc::Connect {
                        from: AVAILABLE_ROW,
                        to: j,
                        day: next,
                    })
                }));
                out
            }
            Arc::Time { row, day } => vec![
                Successor::Arc(Arc::Time { row, day: day + 1 }),
                Successor::Arc(Arc::Connect {
                    from: row,
                    to: AVAILABLE_ROW,
                    day: day + 1,
                }),
            ],
            Arc::Connect { to, day, .. } => vec![Successor::Arc(Arc::Time { row: to, day })],
        }
    }

    /// Graphviz rendering of the materialised network.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph timespace {\n  rankdir=LR;\n  node [shape=point];\n");
        for row in 1..=STATUS_ROWS {
            for day in 1..=self.horizon_days {
                let _ = writeln!(out, "  v{row}_{day} -> v{row}_{} [label=\"t\"];", day + 1);
            }
            let _ = writeln!(
                out,
                "  v{row}_{} [shape=doublecircle, label=\"S{row}\"];",
                self.horizon_days + 1
            );
        }
        for arc in self.connect_arcs() {
            if let Arc::Connect { from, to, day } = arc {
                let _ = writeln!(out, "  v{from}_{day} -> v{to}_{day} [style=dashed];");
            }
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(s: &Successor) -> Arc {
        match s {
            Successor::Arc(a) => *a,
            Successor::SuperNode { .. } => panic!("terminal"),
        }
    }

    #[test]
    fn arc_counts() {
        let n = TimeSpaceNetwork::new(1).unwrap();
        assert_eq!(n.time_arcs().count(), 4);
        assert_eq!(n.connect_arcs().count(), 6);
        let n = TimeSpaceNetwork::new(17).unwrap();
        assert_eq!(n.time_arcs().count(), 68);
        assert_eq!(n.connect_arcs().count(), 102);
        assert!(TimeSpaceNetwork::new(0).is_err());
    }

    #[test]
    fn subsequent_arc_rules() {
        let n = TimeSpaceNetwork::new(30).unwrap();
        let mut s: Vec<Arc> = n
            .subsequent_arcs(&Arc::Time { row: 1, day: 5 })
            .iter()
            .map(arc)
            .collect();
        s.sort();
        let mut want = vec![
            Arc::Time { row: 1, day: 6 },
            Arc::Connect {
                from: 1,
                to: 2,
                day: 6,
            },
            Arc::Connect {
                from: 1,
                to: 3,
                day: 6,
            },
            Arc::Connect {
                from: 1,
                to: 4,
                day: 6,
            },
        ];
        want.sort();
        assert_eq!(s, want);

        let s = n.subsequent_arcs(&Arc::Connect {
            from: 1,
            to: 2,
            day: 5,
        });
        assert_eq!(s, vec![Successor::Arc(Arc::Time { row: 2, day: 5 })]);

        let s = n.subsequent_arcs(&Arc::Connect {
            from: 2,
            to: 1,
            day: 9,
        });
        assert_eq!(s, vec![Successor::Arc(Arc::Time { row: 1, day: 9 })]);

        let s = n.subsequent_arcs(&Arc::Time { row: 3, day: 9 });
        assert_eq!(
            s,
            vec![
                Successor::Arc(Arc::Time { row: 3, day: 10 }),
                Successor::Arc(Arc::Connect {
                    from: 3,
                    to: 1,
                    day: 10
                }),
            ]
        );
    }

    #[test]
    fn last_day_ends_at_super_node() {
        let n = TimeSpaceNetwork::new(10).unwrap();
        for row in 1..=4 {
            assert_eq!(
                n.subsequent_arcs(&Arc::Time { row, day: 10 }),
                vec![Successor::SuperNode { row }]
            );
        }
        assert_eq!(
            n.super_node(2),
            NodeId {
                status_row: 2,
                day: 11
            }
        );
    }

    #[test]
    fn no_maintenance_to_maintenance_connections() {
        let n = TimeSpaceNetwork::new(5).unwrap();
        assert!(!n.contains(&Arc::Connect {
            from: 2,
            to: 3,
            day: 1
        }));
        for a in n.connect_arcs() {
            if let Arc::Connect { from, to, .. } = a {
                assert!(from == 1 || to == 1);
                assert_ne!(from, to);
            }
        }
    }

    /// Every arc reaches a terminal, and successors never move back in time.
    #[test]
    fn dag_reaches_terminal() {
        let n = TimeSpaceNetwork::new(6).unwrap();
        for a in n.arcs() {
            let mut frontier = vec![a];
            let mut seen = std::collections::HashSet::new();
            let mut terminal = false;
            while let Some(cur) = frontier.pop() {
                if !seen.insert(cur) {
                    continue;
                }
                for s in n.subsequent_arcs(&cur) {
                    if let Successor::Arc(next) = s {
                        assert!(next.day() >= cur.day());
                        assert!(!(cur.is_connect() && next.is_connect()));
                        assert!(n.contains(&next));
                        frontier.push(next);
                    } else {
                        terminal = true;
                    }
                }
            }
            assert!(terminal, "{a:?}");
        }
    }

    #[test]
    fn dot_dump_mentions_every_row() {
        let dot = TimeSpaceNetwork::new(2).unwrap().to_dot();
        assert!(dot.starts_with("digraph"));
        for row in 1..=4 {
            assert!(dot.contains(&format!("v{row}_3 [shape=doublecircle")));
        }
    }
}
