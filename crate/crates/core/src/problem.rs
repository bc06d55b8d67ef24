//! Path sets for a whole instance plus a fast evaluator over gene vectors.

use crate::error::Result;
use crate::evaluate::path_loss_km;
use crate::evaluate::{DailyCounts, Evaluation, PenaltyWeights, Solution};
use crate::fleet::MaintenanceLevel;
use crate::instance::Instance;
use crate::network::TimeSpaceNetwork;
use crate::paths::{generate_feasible_paths, FeasiblePath};

/// Precomputed contribution of one path: its loss and the workshop spans it
/// occupies, clipped to the horizon.
#[derive(Debug, Clone)]
struct PathProfile {
    loss_km: i64,
    /// (level index, first day, day after last), 1-based.
    spans: Vec<(usize, u32, u32)>,
}

impl PathProfile {
    fn new(loss_km: i64, path: &FeasiblePath, horizon: u32) -> Self {
        let clip = |d: u32| d.min(horizon + 1);
        let mut spans = Vec::new();
        if let Some(ip) = path.in_progress {
            spans.push((ip.level.index(), 1, clip(ip.return_day)));
        }
        for ev in &path.events {
            spans.push((ev.level.index(), ev.dispatch_day, clip(ev.return_day)));
        }
        spans.retain(|&(_, a, b)| a < b);
        PathProfile { loss_km, spans }
    }
}

pub struct Problem<'a> {
    pub instance: &'a Instance,
    pub network: TimeSpaceNetwork,
    /// Canonically ordered feasible paths, one set per fleet member.
    pub path_sets: Vec<Vec<FeasiblePath>>,
    pub weights: PenaltyWeights,
    profiles: Vec<Vec<PathProfile>>,
    min_available: Vec<u32>,
}

impl<'a> Problem<'a> {
    /// Generates every train-set's feasible path set; fails on the first
    /// unschedulable train-set.
    pub fn build(instance: &'a Instance, weights: PenaltyWeights) -> Result<Self> {
        let network = TimeSpaceNetwork::new(instance.horizon_days)?;
        let mut path_sets = Vec::with_capacity(instance.fleet.len());
        let mut profiles = Vec::with_capacity(instance.fleet.len());
        for ts in &instance.fleet {
            let paths = generate_feasible_paths(ts, &network)?;
            log::debug!("train-set {}: {} feasible paths", ts.id, paths.len());
            profiles.push(
                paths
                    .iter()
                    .map(|p| PathProfile::new(path_loss_km(ts, p), p, instance.horizon_days))
                    .collect(),
            );
            path_sets.push(paths);
        }
        let min_available = (1..=instance.horizon_days)
            .map(|d| instance.min_available_on(d))
            .collect();
        Ok(Problem {
            instance,
            network,
            path_sets,
            weights,
            profiles,
            min_available,
        })
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.path_sets.iter().map(Vec::len).collect()
    }

    /// Number of gene vectors, i.e. the product of path-set sizes.
    pub fn search_space_size(&self) -> u128 {
        self.path_sets
            .iter()
            .try_fold(1u128, |acc, s| acc.checked_mul(s.len() as u128))
            .unwrap_or(u128::MAX)
    }

    fn occupancy(&self, genes: &[usize]) -> Vec<[i64; 3]> {
        let k = self.instance.horizon_days as usize;
        let mut delta = vec![[0i64; 3]; k + 2];
        for (block, &g) in genes.iter().enumerate() {
            for &(level, a, b) in &self.profiles[block][g].spans {
                delta[a as usize][level] += 1;
                delta[b as usize][level] -= 1;
            }
        }
        let mut running = [0i64; 3];
        (1..=k)
            .map(|d| {
                for l in 0..3 {
                    running[l] += delta[d][l];
                }
                running
            })
            .collect()
    }

    /// Objective terms for one path index per train-set.
    pub fn evaluate(&self, genes: &[usize]) -> Evaluation {
        debug_assert_eq!(genes.len(), self.profiles.len());
        let loss: i64 = genes
            .iter()
            .enumerate()
            .map(|(block, &g)| self.profiles[block][g].loss_km)
            .sum();
        let fleet = genes.len() as i64;
        let caps = MaintenanceLevel::ALL.map(|l| i64::from(self.instance.capacities.get(l)));
        let mut shortfall = 0u64;
        let mut excess = 0u64;
        for (day, occ) in self.occupancy(genes).iter().enumerate() {
            let available = fleet - occ.iter().sum::<i64>();
            shortfall += (i64::from(self.min_available[day]) - available).max(0) as u64;
            for l in 0..3 {
                excess += (occ[l] - caps[l]).max(0) as u64;
            }
        }
        Evaluation::from_parts(loss, shortfall, excess, &self.weights)
    }

    pub fn daily_counts(&self, genes: &[usize]) -> DailyCounts {
        let fleet = genes.len() as u32;
        let rows = self
            .occupancy(genes)
            .into_iter()
            .map(|o| {
                let o = o.map(|x| x as u32);
                [fleet - o.iter().sum::<u32>(), o[0], o[1], o[2]]
            })
            .collect();
        DailyCounts::from_rows(rows)
    }

    /// Full solution for a gene vector, evaluated through the general path.
    pub fn decode(&self, genes: &[usize]) -> Solution {
        let paths = genes
            .iter()
            .enumerate()
            .map(|(block, &g)| self.path_sets[block][g].clone())
            .collect();
        Solution::new(self.instance, paths, Some(genes.to_vec()), &self.weights)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::tests::toy_instance;

    const W: PenaltyWeights = PenaltyWeights {
        cost_per_km: 0.0001,
        availability: 100.0,
        capacity: 80.0,
    };

    #[test]
    fn toy_path_sets() {
        let inst = toy_instance();
        let p = Problem::build(&inst, W).unwrap();
        assert_eq!(p.block_sizes(), vec![13, 13, 13]);
        assert_eq!(p.search_space_size(), 2197);
        assert_eq!(p.path_sets[0][0].dispatch_days(), vec![10]);
        assert_eq!(p.path_sets[2][12].dispatch_days(), vec![42]);
    }

    #[test]
    fn fast_evaluation_matches_solution() {
        let inst = toy_instance();
        let p = Problem::build(&inst, W).unwrap();
        for genes in [[0, 0, 0], [1, 1, 1], [12, 5, 0], [1, 11, 3], [7, 7, 7]] {
            let sol = p.decode(&genes);
            assert_eq!(p.evaluate(&genes), sol.evaluation, "{genes:?}");
            assert_eq!(p.daily_counts(&genes), sol.counts);
        }
    }
}
