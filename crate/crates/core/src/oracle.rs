//! Exhaustive reference solver for small instances.
//!
//! Walks every gene vector in lexicographic order. A feasible vector always
//! beats an infeasible one; among feasible vectors the smaller mileage loss
//! wins, among infeasible ones the smaller penalised objective. Ties keep the
//! lexicographically first vector.

use crate::error::{Error, Result};
use crate::evaluate::{validate, Evaluation, Solution, ValidationReport};
use crate::instance::Instance;
use crate::problem::Problem;
use crate::solver::SolverParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_combinations: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_combinations: 1_000_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub solution: Solution,
    pub report: ValidationReport,
    /// False when no combination satisfies the availability and capacity
    /// constraints; the solution is then the penalised minimiser.
    pub feasible: bool,
    pub combinations: u64,
}

fn better(candidate: &Evaluation, incumbent: &Evaluation) -> bool {
    match (candidate.has_penalty(), incumbent.has_penalty()) {
        (false, true) => true,
        (true, false) => false,
        (false, false) => candidate.mileage_loss_km < incumbent.mileage_loss_km,
        (true, true) => candidate.penalized_objective < incumbent.penalized_objective,
    }
}

pub fn enumerate_optimal_problem(
    problem: &Problem<'_>,
    budget: OracleBudget,
) -> Result<OracleResult> {
    if budget.max_combinations == 0 {
        return Err(Error::invalid(
            "OracleBudget.max_combinations",
            "budget must be at least 1",
        ));
    }
    let required = problem.search_space_size();
    if required > u128::from(budget.max_combinations) {
        return Err(Error::BudgetExceeded {
            required,
            budget: budget.max_combinations,
        });
    }
    let sizes = problem.block_sizes();
    let mut genes = vec![0usize; sizes.len()];
    let mut best_genes = genes.clone();
    let mut best = problem.evaluate(&genes);
    let mut combinations = 1u64;
    // odometer increment, last block fastest: lexicographic order
    'outer: loop {
        let mut i = sizes.len();
        loop {
            if i == 0 {
                break 'outer;
            }
            i -= 1;
            genes[i] += 1;
            if genes[i] < sizes[i] {
                break;
            }
            genes[i] = 0;
        }
        combinations += 1;
        let e = problem.evaluate(&genes);
        if better(&e, &best) {
            best = e;
            best_genes.clone_from(&genes);
        }
    }
    let solution = problem.decode(&best_genes);
    let report = validate(&solution, problem.instance);
    Ok(OracleResult {
        feasible: !best.has_penalty(),
        solution,
        report,
        combinations,
    })
}

/// Exact optimum of `instance` under the penalty weights in `params`.
pub fn enumerate_optimal(
    instance: &Instance,
    params: &SolverParams,
    budget: OracleBudget,
) -> Result<OracleResult> {
    let problem = Problem::build(instance, params.weights())?;
    enumerate_optimal_problem(&problem, budget)
}
