//! Genetic algorithm with simulated-annealing survival over per-train-set
//! path choices.
//!
//! A chromosome holds one path index per train-set, which is the block-binary
//! encoding with exactly one set gene per block. Each generation runs roulette
//! selection, block-range crossover and block mutation; each offspring then
//! competes with the individual previously in its population slot and is
//! accepted outright when fitter, otherwise with probability
//! `exp((fit_child - fit_parent) / T)`. The whole generation loop is repeated
//! at each temperature of a geometric cooling schedule.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evaluate::{validate, Evaluation, PenaltyWeights, Solution, ValidationReport};
use crate::instance::Instance;
use crate::problem::Problem;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverParams {
    /// Cost per kilometre of mileage lost to early maintenance.
    pub cost_c: f64,
    /// Weight on each missing available train-set per day.
    pub lambda1: f64,
    /// Weight on each train-set over workshop capacity per day.
    pub lambda2: f64,
    pub sizepop: usize,
    pub p_crossover: f64,
    pub p_mutation: f64,
    /// Generations per temperature level.
    pub max_generations: usize,
    pub t0: f64,
    pub t_end: f64,
    pub alpha: f64,
    pub fitness_epsilon: f64,
    pub rng_seed: u64,
}

impl Default for SolverParams {
    fn default() -> Self {
        SolverParams {
            cost_c: 0.0001,
            lambda1: 100.0,
            lambda2: 80.0,
            sizepop: 30,
            p_crossover: 0.88,
            p_mutation: 0.08,
            max_generations: 3000,
            t0: 100.0,
            t_end: 1.0,
            alpha: 0.8,
            fitness_epsilon: 1e-9,
            rng_seed: 0,
        }
    }
}

impl SolverParams {
    pub fn weights(&self) -> PenaltyWeights {
        PenaltyWeights {
            cost_per_km: self.cost_c,
            availability: self.lambda1,
            capacity: self.lambda2,
        }
    }

    /// Checks parameter ranges; returns non-fatal warnings.
    pub fn validate(&self) -> Result<Vec<String>> {
        let bad = |m: &str| Err(Error::invalid("SolverParams", m.to_string()));
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return bad("alpha must lie in (0, 1)");
        }
        if !(0.0..=1.0).contains(&self.p_crossover) || !(0.0..=1.0).contains(&self.p_mutation) {
            return bad("p_crossover and p_mutation must lie in [0, 1]");
        }
        if !(self.t0 > self.t_end && self.t_end > 0.0) {
            return bad("temperatures must satisfy t0 > t_end > 0");
        }
        if self.sizepop < 2 {
            return bad("sizepop must be at least 2");
        }
        if self.fitness_epsilon.is_nan() || self.fitness_epsilon <= 0.0 {
            return bad("fitness_epsilon must be positive");
        }
        if self.cost_c < 0.0 || self.lambda1 < 0.0 || self.lambda2 < 0.0 {
            return bad("cost and penalty weights must be non-negative");
        }
        let mut warnings = Vec::new();
        if self.lambda1 <= self.lambda2 {
            warnings.push(format!(
                "lambda1 ({}) <= lambda2 ({}): availability shortfalls are weighted no more than \
                 capacity overruns",
                self.lambda1, self.lambda2
            ));
        }
        Ok(warnings)
    }
}

/// Temperatures at which a full generation loop runs: `t0`, `alpha * t0`, ...
/// down to and including the first value below `t_end`.
pub fn cooling_schedule(params: &SolverParams) -> Vec<f64> {
    let mut temps = vec![params.t0];
    let mut t = params.t0;
    while t >= params.t_end {
        t *= params.alpha;
        temps.push(t);
    }
    temps
}

/// One path index per train-set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chromosome(pub Vec<usize>);

impl Chromosome {
    pub fn genes(&self) -> &[usize] {
        &self.0
    }

    pub fn is_within(&self, block_sizes: &[usize]) -> bool {
        self.0.len() == block_sizes.len() && self.0.iter().zip(block_sizes).all(|(g, n)| g < n)
    }

    /// Block-binary form: `|0010|1|01|` for genes `[2, 0, 1]` and sizes `[4, 1, 2]`.
    pub fn to_block_string(&self, block_sizes: &[usize]) -> String {
        let mut s = String::from("|");
        for (&g, &n) in self.0.iter().zip(block_sizes) {
            s.extend((0..n).map(|i| if i == g { '1' } else { '0' }));
            s.push('|');
        }
        s
    }
}

pub fn fitness(penalized_objective: f64, params: &SolverParams) -> f64 {
    1.0 / (penalized_objective + params.fitness_epsilon)
}

pub fn init_population<R: Rng>(
    block_sizes: &[usize],
    params: &SolverParams,
    rng: &mut R,
) -> Result<Vec<Chromosome>> {
    if let Some(i) = block_sizes.iter().position(|&n| n == 0) {
        return Err(Error::Unschedulable {
            train_set: format!("#{i}"),
            detail: "empty feasible path set".into(),
        });
    }
    Ok((0..params.sizepop)
        .map(|_| Chromosome(block_sizes.iter().map(|&n| rng.gen_range(0..n)).collect()))
        .collect())
}

/// Roulette-wheel selection of `population.len()` individuals, with replacement.
pub fn select<R: Rng>(
    population: &[Chromosome],
    fitnesses: &[f64],
    rng: &mut R,
) -> Vec<Chromosome> {
    let mut cumulative = Vec::with_capacity(fitnesses.len());
    let mut total = 0.0;
    for f in fitnesses {
        total += f;
        cumulative.push(total);
    }
    (0..population.len())
        .map(|_| {
            let r = rng.gen::<f64>() * total;
            let idx = cumulative
                .partition_point(|&c| c <= r)
                .min(population.len() - 1);
            population[idx].clone()
        })
        .collect()
}

/// Swaps the inclusive block range `first..=last` between two chromosomes.
pub fn swap_blocks(a: &mut Chromosome, b: &mut Chromosome, first: usize, last: usize) {
    for i in first..=last {
        std::mem::swap(&mut a.0[i], &mut b.0[i]);
    }
}

pub fn crossover<R: Rng>(
    a: &Chromosome,
    b: &Chromosome,
    params: &SolverParams,
    rng: &mut R,
) -> (Chromosome, Chromosome) {
    debug_assert_eq!(a.0.len(), b.0.len());
    let (mut x, mut y) = (a.clone(), b.clone());
    if rng.gen::<f64>() < params.p_crossover {
        let n = a.0.len();
        let w1 = rng.gen_range(0..n);
        let w2 = rng.gen_range(0..n);
        swap_blocks(&mut x, &mut y, w1.min(w2), w1.max(w2));
    }
    (x, y)
}

pub fn mutate<R: Rng>(
    c: &mut Chromosome,
    block_sizes: &[usize],
    params: &SolverParams,
    rng: &mut R,
) {
    if rng.gen::<f64>() >= params.p_mutation {
        return;
    }
    let block = rng.gen_range(0..block_sizes.len());
    let n = block_sizes[block];
    if n < 2 {
        return;
    }
    let current = c.0[block];
    let pick = rng.gen_range(0..n - 1);
    c.0[block] = if pick >= current { pick + 1 } else { pick };
}

/// Probability of keeping an offspring whose fitness changes by `delta`.
pub fn acceptance_probability(delta: f64, temperature: f64) -> f64 {
    if delta > 0.0 {
        1.0
    } else {
        (delta / temperature).exp()
    }
}

/// Whether `child_fit` replaces `parent_fit` at `temperature`.
pub fn sa_accept<R: Rng>(parent_fit: f64, child_fit: f64, temperature: f64, rng: &mut R) -> bool {
    child_fit > parent_fit
        || rng.gen::<f64>() < acceptance_probability(child_fit - parent_fit, temperature)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TracePoint {
    pub generation: usize,
    pub temperature: f64,
    pub best_penalized: f64,
}

#[derive(Debug, Clone)]
struct Scored {
    chromosome: Chromosome,
    evaluation: Evaluation,
    fitness: f64,
}

const CACHE_LIMIT: usize = 1 << 18;

/// Population state of a running search.
pub struct Evolution<'p, 'i> {
    problem: &'p Problem<'i>,
    params: SolverParams,
    block_sizes: Vec<usize>,
    rng: ChaCha8Rng,
    cache: HashMap<Vec<usize>, Evaluation>,
    population: Vec<Scored>,
    best: Scored,
    generation: usize,
    pub evaluations: usize,
}

impl<'p, 'i> Evolution<'p, 'i> {
    pub fn new(problem: &'p Problem<'i>, params: &SolverParams) -> Result<Self> {
        let block_sizes = problem.block_sizes();
        let mut rng = ChaCha8Rng::seed_from_u64(params.rng_seed);
        let initial = init_population(&block_sizes, params, &mut rng)?;
        let mut evo = Evolution {
            problem,
            params: params.clone(),
            block_sizes,
            rng,
            cache: HashMap::new(),
            population: Vec::new(),
            best: Scored {
                chromosome: Chromosome(Vec::new()),
                evaluation: Evaluation::from_parts(0, 0, 0, &params.weights()),
                fitness: f64::NEG_INFINITY,
            },
            generation: 0,
            evaluations: 0,
        };
        let scored: Vec<Scored> = initial.into_iter().map(|c| evo.score(c)).collect();
        evo.best = scored
            .iter()
            .min_by(|a, b| {
                a.evaluation
                    .penalized_objective
                    .total_cmp(&b.evaluation.penalized_objective)
            })
            .cloned()
            .expect("sizepop >= 2");
        evo.population = scored;
        Ok(evo)
    }

    fn score(&mut self, chromosome: Chromosome) -> Scored {
        let evaluation = match self.cache.get(chromosome.genes()) {
            Some(e) => *e,
            None => {
                self.evaluations += 1;
                let e = self.problem.evaluate(chromosome.genes());
                if self.cache.len() >= CACHE_LIMIT {
                    self.cache.clear();
                }
                self.cache.insert(chromosome.0.clone(), e);
                e
            }
        };
        Scored {
            fitness: fitness(evaluation.penalized_objective, &self.params),
            chromosome,
            evaluation,
        }
    }

    pub fn population(&self) -> Vec<Chromosome> {
        self.population
            .iter()
            .map(|s| s.chromosome.clone())
            .collect()
    }

    pub fn best(&self) -> (&Chromosome, &Evaluation) {
        (&self.best.chromosome, &self.best.evaluation)
    }

    /// Runs one generation at `temperature`.
    pub fn step(&mut self, temperature: f64) -> TracePoint {
        let parents = self.population();
        let fits: Vec<f64> = self.population.iter().map(|s| s.fitness).collect();
        let selected = select(&parents, &fits, &mut self.rng);

        let mut children = Vec::with_capacity(selected.len());
        for pair in selected.chunks(2) {
            match pair {
                [a, b] => {
                    let (x, y) = crossover(a, b, &self.params, &mut self.rng);
                    children.push(x);
                    children.push(y);
                }
                [a] => children.push(a.clone()),
                _ => unreachable!(),
            }
        }
        for c in &mut children {
            mutate(c, &self.block_sizes, &self.params, &mut self.rng);
        }

        for (slot, child) in children.into_iter().enumerate() {
            let child = self.score(child);
            let parent_fit = self.population[slot].fitness;
            if sa_accept(parent_fit, child.fitness, temperature, &mut self.rng) {
                if child.evaluation.penalized_objective < self.best.evaluation.penalized_objective {
                    self.best = child.clone();
                }
                self.population[slot] = child;
            }
        }
        self.generation += 1;
        TracePoint {
            generation: self.generation,
            temperature,
            best_penalized: self.best.evaluation.penalized_objective,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub solution: Solution,
    pub report: ValidationReport,
    pub trace: Vec<TracePoint>,
    /// Number of temperature reductions performed.
    pub cooling_steps: usize,
    pub generations: usize,
    /// Distinct gene vectors evaluated.
    pub evaluations: usize,
}

/// Runs the hybrid search and returns the best solution ever seen.
pub fn solve(instance: &Instance, params: &SolverParams) -> Result<SolveOutcome> {
    for w in params.validate()? {
        log::warn!("{w}");
    }
    let problem = Problem::build(instance, params.weights())?;
    solve_problem(&problem, params)
}

pub fn solve_problem(problem: &Problem<'_>, params: &SolverParams) -> Result<SolveOutcome> {
    let finish = |genes: &[usize], trace, cooling_steps, generations, evaluations| {
        let solution = problem.decode(genes);
        let report = validate(&solution, problem.instance);
        SolveOutcome {
            solution,
            report,
            trace,
            cooling_steps,
            generations,
            evaluations,
        }
    };

    if problem.search_space_size() == 1 {
        let genes = vec![0; problem.path_sets.len()];
        let best = problem.evaluate(&genes).penalized_objective;
        let trace = vec![TracePoint {
            generation: 0,
            temperature: params.t0,
            best_penalized: best,
        }];
        return Ok(finish(&genes, trace, 0, 0, 1));
    }

    let mut evo = Evolution::new(problem, params)?;
    let schedule = cooling_schedule(params);
    let mut trace = Vec::with_capacity(schedule.len() * params.max_generations);
    for &temperature in &schedule {
        for _ in 0..params.max_generations {
            trace.push(evo.step(temperature));
        }
        log::debug!(
            "T = {temperature:.4}: best penalised objective {}",
            evo.best.evaluation.penalized_objective
        );
    }
    let genes = evo.best.chromosome.0.clone();
    let generations = evo.generation;
    let evaluations = evo.evaluations;
    Ok(finish(
        &genes,
        trace,
        schedule.len() - 1,
        generations,
        evaluations,
    ))
}
