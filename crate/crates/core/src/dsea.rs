//! The dual search evolutionary algorithm and a random-restart baseline.
//!
//! | variant | operators  | plan repair            |
//! |---------|------------|------------------------|
//! | DSEA1   | Topo, Rain | none                   |
//! | DSEA2   | Topo, Rain | Repack every `beta`    |
//! | DSEA3   | ITP, IIP   | Pack inside operators  |

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::evaluation::{evaluate, Evaluation, EvaluationBudget, Fitness, PackingPlan, Tour};
use crate::instance::TtptwInstance;
use crate::operators::{iip, itp, mutate_swap, rain, topo, OperatorCounters, OperatorParams, Repair, SearchState};
use crate::packing::{pack, pack_iterative, PackParams};
use crate::rng::{child_rng, streams, uniform_tour};
use crate::scalar::Scalar;
use crate::tourinit::{initialize_tour, DEFAULT_PENALTY};

/// Smallest accepted budget: four initial tours plus some packing.
pub const MIN_FE_LIMIT: u64 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variant {
    Dsea1,
    Dsea2,
    Dsea3,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Dsea1, Variant::Dsea2, Variant::Dsea3];

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Dsea1 => "dsea1",
            Variant::Dsea2 => "dsea2",
            Variant::Dsea3 => "dsea3",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown variant `{0}` (expected dsea1, dsea2 or dsea3)")]
pub struct UnknownVariant(pub String);

impl FromStr for Variant {
    type Err = UnknownVariant;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "dsea1" => Ok(Variant::Dsea1),
            "dsea2" => Ok(Variant::Dsea2),
            "dsea3" => Ok(Variant::Dsea3),
            _ => Err(UnknownVariant(s.to_string())),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("fe_limit must be at least {MIN_FE_LIMIT}, got {0}")]
    BudgetTooSmall(u64),
    #[error("invalid operator parameters: {0}")]
    Operators(String),
    #[error("invalid packing parameters: {0}")]
    Packing(String),
    #[error("penalty must be finite and positive, got {0}")]
    Penalty(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub variant: Variant,
    pub operator_params: OperatorParams,
    pub pack_params: PackParams,
    pub penalty: f64,
    pub fe_limit: u64,
    pub seed: u64,
    /// Record `(fe, z, cv)` at every improvement of the best solution.
    pub record_trace: bool,
}

impl SolverConfig {
    pub fn new(variant: Variant, fe_limit: u64, seed: u64) -> Self {
        SolverConfig {
            variant,
            operator_params: OperatorParams::default(),
            pack_params: PackParams::default(),
            penalty: DEFAULT_PENALTY,
            fe_limit,
            seed,
            record_trace: true,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.fe_limit < MIN_FE_LIMIT {
            return Err(ConfigError::BudgetTooSmall(self.fe_limit));
        }
        self.operator_params.validate().map_err(ConfigError::Operators)?;
        self.pack_params.validate().map_err(ConfigError::Packing)?;
        if !(self.penalty.is_finite() && self.penalty > 0.0) {
            return Err(ConfigError::Penalty(self.penalty));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TracePoint<S> {
    pub fe: u64,
    pub z: S,
    pub cv: S,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunResult<S> {
    pub tour: Tour,
    pub plan: PackingPlan,
    #[serde(skip)]
    pub best_eval: Evaluation<S>,
    pub fitness: Fitness<S>,
    pub feasible: bool,
    pub fe_used: u64,
    pub fe_limit: u64,
    pub seed: u64,
    pub loops: u64,
    pub mutations: u64,
    pub counters: OperatorCounters,
    pub trace: Vec<TracePoint<S>>,
}

struct Best<S> {
    tour: Tour,
    plan: PackingPlan,
    eval: Evaluation<S>,
    trace: Vec<TracePoint<S>>,
    record: bool,
}

impl<S: Scalar> Best<S> {
    fn new(tour: Tour, plan: PackingPlan, eval: Evaluation<S>, fe: u64, record: bool) -> Self {
        let mut best = Best { tour, plan, eval, trace: Vec::new(), record };
        best.push_trace(fe);
        best
    }

    fn push_trace(&mut self, fe: u64) {
        if self.record {
            self.trace.push(TracePoint { fe, z: self.eval.objective, cv: self.eval.violation });
        }
    }

    /// Replaces the incumbent if `eval` is strictly better.
    fn offer(&mut self, tour: &Tour, plan: &PackingPlan, eval: &Evaluation<S>, fe: u64) -> bool {
        if !eval.fitness().is_better_than(&self.eval.fitness()) {
            return false;
        }
        self.tour.clone_from(tour);
        self.plan.clone_from(plan);
        self.eval.clone_from(eval);
        self.push_trace(fe);
        true
    }

    fn finish(self, budget: &EvaluationBudget, seed: u64, loops: u64, mutations: u64, counters: OperatorCounters) -> RunResult<S> {
        RunResult {
            fitness: self.eval.fitness(),
            feasible: self.eval.is_feasible(),
            tour: self.tour,
            plan: self.plan,
            best_eval: self.eval,
            fe_used: budget.used(),
            fe_limit: budget.limit(),
            seed,
            loops,
            mutations,
            counters,
            trace: self.trace,
        }
    }
}

fn add_counters(total: &mut OperatorCounters, c: &OperatorCounters) {
    total.topo += c.topo;
    total.rain += c.rain;
    total.itp += c.itp;
    total.iip += c.iip;
    total.accepted += c.accepted;
    total.repairs += c.repairs;
}

/// Builds the initial best solution from the initial tour and PackIterative.
fn initial_best<S: Scalar>(
    inst: &TtptwInstance<S>,
    config: &SolverConfig,
    budget: &mut EvaluationBudget,
) -> Best<S> {
    let (tour, init_eval) = initialize_tour(inst, S::lit(config.penalty), budget);
    let packed = pack_iterative(inst, &tour, &config.pack_params, budget);
    let (plan, eval) = match (packed.evaluation, init_eval) {
        (Some(eval), _) => (packed.plan, eval),
        (None, Some(eval)) => (PackingPlan::empty(inst.num_items()), eval),
        // Unreachable with a validated budget; keeps the result coherent.
        (None, None) => {
            let plan = PackingPlan::empty(inst.num_items());
            let eval = Evaluation::compute(inst, &tour, &plan);
            (plan, eval)
        }
    };
    Best::new(tour, plan, eval, budget.used(), config.record_trace)
}

/// Runs one DSEA variant until the evaluation budget is spent.
pub fn solve<S: Scalar>(inst: &TtptwInstance<S>, config: &SolverConfig) -> Result<RunResult<S>, ConfigError> {
    config.validate()?;
    let mut budget = EvaluationBudget::new(config.fe_limit);
    let mut mutation_rng = child_rng(config.seed, streams::MUTATION);
    let mut o1_rng = child_rng(config.seed, streams::OPERATOR_1);
    let mut o2_rng = child_rng(config.seed, streams::OPERATOR_2);
    let params = &config.operator_params;
    let repair = match config.variant {
        Variant::Dsea2 => Repair::Repack { period: params.beta, alpha: config.pack_params.c },
        _ => Repair::None,
    };

    let mut best = initial_best(inst, config, &mut budget);
    let mut counters = OperatorCounters::default();
    let (mut loops, mut mutations) = (0u64, 0u64);
    let mut k = 0usize;

    while !budget.is_exhausted() {
        loops += 1;
        let mut tour_x = best.tour.clone();
        if k > params.rho {
            tour_x = mutate_swap(&tour_x, params.h, &mut mutation_rng);
            mutations += 1;
        }
        let Ok(state) = SearchState::new(inst, tour_x, best.plan.clone(), &mut budget) else { break };
        let state = match config.variant {
            Variant::Dsea1 | Variant::Dsea2 => {
                let s = topo(state, inst, params, &mut budget, repair, &mut o1_rng);
                rain(s, inst, params, &mut budget, repair, &mut o2_rng)
            }
            Variant::Dsea3 => {
                let s = itp(state, inst, params, &config.pack_params, &mut budget, &mut o1_rng);
                iip(s, inst, params, &config.pack_params, &mut budget, &mut o2_rng)
            }
        };
        add_counters(&mut counters, &state.counters);

        if best.offer(&state.tour, &state.plan, &state.eval, budget.used()) {
            k = 0;
        }
        let packed = pack_iterative(inst, &state.tour, &config.pack_params, &mut budget);
        if let Some(eval) = &packed.evaluation {
            if best.offer(&state.tour, &packed.plan, eval, budget.used()) {
                k = 0;
            }
        }
        k += 1;
    }
    Ok(best.finish(&budget, config.seed, loops, mutations, counters))
}

/// Uniform random tours, each packed greedily at exponent `alpha`; keeps the
/// best under the constraint-dominance ordering.
pub fn baseline_random_restart<S: Scalar>(inst: &TtptwInstance<S>, fe_limit: u64, seed: u64) -> RunResult<S> {
    baseline_with_alpha(inst, fe_limit, seed, PackParams::default().c)
}

pub fn baseline_with_alpha<S: Scalar>(inst: &TtptwInstance<S>, fe_limit: u64, seed: u64, alpha: f64) -> RunResult<S> {
    let mut budget = EvaluationBudget::new(fe_limit);
    let mut rng = child_rng(seed, streams::BASELINE);
    let n = inst.num_cities();
    let mut best: Option<Best<S>> = None;
    let mut loops = 0u64;
    while !budget.is_exhausted() {
        loops += 1;
        let tour = uniform_tour(n, &mut rng);
        let packed = pack(inst, &tour, S::lit(alpha), &mut budget);
        let (plan, eval) = match packed.evaluation {
            Some(eval) => (packed.plan, eval),
            None => {
                let plan = PackingPlan::empty(inst.num_items());
                let Ok(eval) = evaluate(inst, &tour, &plan, &mut budget) else { break };
                (plan, eval)
            }
        };
        match &mut best {
            None => best = Some(Best::new(tour, plan, eval, budget.used(), true)),
            Some(b) => {
                b.offer(&tour, &plan, &eval, budget.used());
            }
        }
    }
    let best = best.unwrap_or_else(|| {
        let tour = Tour::identity(n);
        let plan = PackingPlan::empty(inst.num_items());
        let eval = Evaluation::compute(inst, &tour, &plan);
        Best::new(tour, plan, eval, 0, true)
    });
    best.finish(&budget, seed, loops, 0, OperatorCounters::default())
}
