mod common;

use std::collections::BTreeSet;

use emu_maint::evaluate::validate;
use emu_maint::fleet::{bundled_type, dispatch_window, MaintenanceLevel, DEFAULT_DURATIONS};
use emu_maint::instance::{load_instance, save_instance};
use emu_maint::network::{TimeSpaceNetwork, AVAILABLE_ROW};
use emu_maint::oracle::{enumerate_optimal, OracleBudget};
use emu_maint::paths::generate_feasible_paths;
use emu_maint::solver::{crossover, mutate, Chromosome};
use emu_maint::{Problem, SolverParams};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

fn crh2a_third() -> (i64, i64) {
    bundled_type("CRH2A", DEFAULT_DURATIONS)
        .unwrap()
        .regulation(MaintenanceLevel::Third)
        .window_km()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn window_moves_earlier_as_mileage_grows(m in 0i64..600_000, extra in 0i64..20_000) {
        let a = dispatch_window(crh2a_third(), 1500, m, 1);
        let b = dispatch_window(crh2a_third(), 1500, m + extra, 1);
        prop_assert!(b.earliest <= a.earliest);
        prop_assert!(b.latest <= a.latest);
    }

    #[test]
    fn window_days_bracket_the_km_window(m in 0i64..620_000, daily in 1000i64..2000) {
        let (lo, hi) = crh2a_third();
        let w = dispatch_window((lo, hi), daily, m, 1);
        let at = |d: i64| m + (d - 1) * daily;
        if !w.is_empty() {
            prop_assert!(at(w.latest) <= hi && at(w.latest + 1) > hi);
            prop_assert!(at(w.earliest) >= lo || w.earliest == 1);
            prop_assert!(w.earliest == 1 || at(w.earliest - 1) < lo);
        }
    }

    #[test]
    fn generated_paths_are_well_formed(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (ts, k) = random_train_set(&mut rng);
        let net = TimeSpaceNetwork::new(k).unwrap();
        let Ok(paths) = generate_feasible_paths(&ts, &net) else { return Ok(()) };
        let keys: BTreeSet<_> = paths.iter().map(key_of).collect();
        prop_assert_eq!(keys.len(), paths.len());
        prop_assert_eq!(generate_feasible_paths(&ts, &net).unwrap(), paths.clone());
        for w in paths.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            prop_assert!((a.events.len(), a.dispatch_days()) < (b.events.len(), b.dispatch_days()));
        }
        for p in &paths {
            prop_assert!(p.is_network_path(&net));
            if ts.initial_mileage >= 0 {
                prop_assert_eq!(p.status_on(1).row(), AVAILABLE_ROW);
            }
            for pair in p.events.windows(2) {
                prop_assert!(pair[1].dispatch_day > pair[0].return_day);
            }
        }
    }

    #[test]
    fn penalised_objective_dominates(seed in any::<u64>(), which in 0usize..4) {
        let corpus = toy_corpus();
        let inst = &corpus[which];
        let problem = Problem::build(inst, SolverParams::default().weights()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let genes: Vec<usize> = problem
            .block_sizes()
            .iter()
            .map(|&n| rand::Rng::gen_range(&mut rng, 0..n))
            .collect();
        let sol = problem.decode(&genes);
        let e = sol.evaluation;
        prop_assert!(e.penalized_objective >= e.objective);
        prop_assert_eq!(e.penalized_objective == e.objective, validate(&sol, inst).is_feasible());
    }

    #[test]
    fn operators_keep_gene_bounds(seed in any::<u64>(), sizes in prop::collection::vec(1usize..6, 1..8)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let params = SolverParams { p_mutation: 1.0, p_crossover: 1.0, ..SolverParams::default() };
        let pick = |rng: &mut ChaCha8Rng| {
            Chromosome(sizes.iter().map(|&n| rand::Rng::gen_range(rng, 0..n)).collect())
        };
        let (a, b) = (pick(&mut rng), pick(&mut rng));
        let (mut x, y) = crossover(&a, &b, &params, &mut rng);
        prop_assert!(x.is_within(&sizes) && y.is_within(&sizes));
        for i in 0..sizes.len() {
            let pair = (x.0[i], y.0[i]);
            prop_assert!(pair == (a.0[i], b.0[i]) || pair == (b.0[i], a.0[i]));
        }
        let (s, t) = crossover(&a, &a, &params, &mut rng);
        prop_assert!(s == a && t == a);
        let before = x.clone();
        mutate(&mut x, &sizes, &params, &mut rng);
        prop_assert!(x.is_within(&sizes));
        prop_assert!(x.0.iter().zip(&before.0).filter(|(p, q)| p != q).count() <= 1);
    }
}

#[test]
fn oracle_beats_random_feasible_solutions() {
    let inst = load_instance(fixture("toy3.json")).unwrap();
    let params = SolverParams::default();
    let best = enumerate_optimal(&inst, &params, OracleBudget::default()).unwrap();
    let problem = Problem::build(&inst, params.weights()).unwrap();
    let sizes = problem.block_sizes();
    let mut genes = vec![0; 3];
    for a in 0..sizes[0] {
        for b in 0..sizes[1] {
            for c in 0..sizes[2] {
                genes.copy_from_slice(&[a, b, c]);
                let e = problem.evaluate(&genes);
                if !e.has_penalty() {
                    assert!(best.solution.evaluation.mileage_loss_km <= e.mileage_loss_km);
                }
            }
        }
    }
}

#[test]
fn oracle_is_relabeling_invariant() {
    let base = edited("toy3.json", |_| {});
    let permuted = edited("toy3.json", |v| {
        let f = v["fleet"].as_array_mut().unwrap();
        f.reverse();
    });
    let params = SolverParams::default();
    let a = enumerate_optimal(&base, &params, OracleBudget::default()).unwrap();
    let b = enumerate_optimal(&permuted, &params, OracleBudget::default()).unwrap();
    assert_eq!(a.solution.evaluation, b.solution.evaluation);
}

#[test]
fn instances_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["toy3.json", "fleet8.json"] {
        let inst = load_instance(fixture(name)).unwrap();
        let path = dir.path().join(name);
        save_instance(&inst, &path).unwrap();
        let back = load_instance(&path).unwrap();
        assert_eq!(back.to_file_data(), inst.to_file_data());
    }
}

#[test]
fn singleton_search_space_is_returned_directly() {
    let inst = edited("toy3.json", |v| {
        for ts in v["fleet"].as_array_mut().unwrap() {
            ts["initial_mileage"] = 0.into();
            ts["initial_days"] = 0.into();
        }
    });
    let out = emu_maint::solve(&inst, &SolverParams::default()).unwrap();
    assert_eq!(out.evaluations, 1);
    assert!(out.solution.paths.iter().all(|p| p.events.is_empty()));
}
