//! Tour and plan search operators.
//!
//! * [`topo`]: random 2-opt reversals, each evaluated with probability `mu`;
//!   unevaluated reversals pile up as a perturbation.
//! * [`rain`]: random reinsertion of one city, evaluated every time.
//! * [`itp`]: 2-opt with incrementally maintained item scores and periodic
//!   re-packing.
//! * [`iip`]: reinsertion with incrementally maintained item scores and
//!   periodic re-packing.
//! * [`mutate_swap`]: 1..=h random swaps, applied on stagnation.
//!
//! Every operator accepts a candidate only when it is strictly better under
//! [`compare`](crate::evaluation::compare), so the state never gets worse.
//! All of them stop early once the evaluation budget is exhausted.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::evaluation::{evaluate, evaluate_into, BudgetExhausted, Evaluation, EvaluationBudget, Fitness, PackingPlan, Tour};
use crate::instance::TtptwInstance;
use crate::packing::{pack_with_order, repack, ItemScoreTable, PackParams};
use crate::scalar::Scalar;

/// Operator parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatorParams {
    /// Evaluation probability (Topo) / threshold (ITP).
    pub mu: f64,
    /// Iterations per operator call.
    pub theta: usize,
    /// Repair period.
    pub beta: usize,
    /// Pack-refresh period inside ITP; also the DSEA stagnation threshold.
    pub rho: usize,
    /// Maximum number of swaps per mutation.
    pub h: usize,
}

impl Default for OperatorParams {
    fn default() -> Self {
        OperatorParams { mu: 0.5, theta: 1000, beta: 10, rho: 5, h: 10 }
    }
}

impl OperatorParams {
    pub fn validate(&self) -> Result<(), String> {
        if !(0.0..=1.0).contains(&self.mu) {
            return Err(format!("mu must lie in [0, 1], got {}", self.mu));
        }
        if self.beta == 0 || self.rho == 0 || self.h == 0 {
            return Err("beta, rho and h must be at least 1".into());
        }
        Ok(())
    }
}

/// Per-operator iteration counts and bookkeeping.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct OperatorCounters {
    pub topo: u64,
    pub rain: u64,
    pub itp: u64,
    pub iip: u64,
    pub accepted: u64,
    pub repairs: u64,
}

/// Current solution of an operator chain. `eval` always belongs to exactly
/// `(tour, plan)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchState<S> {
    pub tour: Tour,
    pub plan: PackingPlan,
    pub eval: Evaluation<S>,
    pub counters: OperatorCounters,
}

impl<S: Scalar> SearchState<S> {
    /// Evaluates `(tour, plan)` once to establish the state.
    pub fn new(
        inst: &TtptwInstance<S>,
        tour: Tour,
        plan: PackingPlan,
        budget: &mut EvaluationBudget,
    ) -> Result<Self, BudgetExhausted> {
        let eval = evaluate(inst, &tour, &plan, budget)?;
        Ok(SearchState { tour, plan, eval, counters: OperatorCounters::default() })
    }

    /// Wraps an already evaluated solution.
    pub fn from_parts(tour: Tour, plan: PackingPlan, eval: Evaluation<S>) -> Self {
        SearchState { tour, plan, eval, counters: OperatorCounters::default() }
    }

    pub fn fitness(&self) -> Fitness<S> {
        self.eval.fitness()
    }

    fn accept(&mut self, tour: &Tour, plan: PackingPlan, eval: Evaluation<S>) {
        self.tour.clone_from(tour);
        self.plan = plan;
        self.eval = eval;
        self.counters.accepted += 1;
    }
}

/// Packing repair applied by Topo and Rain to rejected candidates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Repair {
    None,
    /// Run [`repack`] on every rejected evaluated candidate whose iteration
    /// counter is divisible by `period`.
    Repack { period: usize, alpha: f64 },
}

/// Two distinct positions in `1..n`, ordered.
fn random_segment<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (usize, usize) {
    let i = rng.gen_range(1..n);
    let mut j = rng.gen_range(1..n - 1);
    if j >= i {
        j += 1;
    }
    (i.min(j), i.max(j))
}

/// A source position and a distinct target position in `1..n`.
fn random_move<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (usize, usize) {
    random_segment(n, rng).into_ordered_or_swapped(rng)
}

trait Unordered {
    fn into_ordered_or_swapped<R: Rng + ?Sized>(self, rng: &mut R) -> (usize, usize);
}

impl Unordered for (usize, usize) {
    fn into_ordered_or_swapped<R: Rng + ?Sized>(self, rng: &mut R) -> (usize, usize) {
        if rng.gen::<bool>() {
            self
        } else {
            (self.1, self.0)
        }
    }
}

/// Swaps two distinct random non-depot positions `k ~ U{1..=h}` times.
pub fn mutate_swap<R: Rng + ?Sized>(tour: &Tour, h: usize, rng: &mut R) -> Tour {
    let mut out = tour.clone();
    let n = tour.len();
    if n < 3 || h == 0 {
        return out;
    }
    let k = rng.gen_range(1..=h);
    for _ in 0..k {
        let (i, j) = random_segment(n, rng);
        out.swap(i, j);
    }
    out
}

fn try_repair<S: Scalar>(
    state: &mut SearchState<S>,
    inst: &TtptwInstance<S>,
    working: &Tour,
    rejected: &Evaluation<S>,
    repair: Repair,
    k: usize,
    budget: &mut EvaluationBudget,
) {
    let Repair::Repack { period, alpha } = repair else { return };
    if period == 0 || k % period != 0 || budget.is_exhausted() {
        return;
    }
    state.counters.repairs += 1;
    let (plan, eval) = repack(inst, working, &state.plan, rejected, S::lit(alpha), budget);
    if eval.fitness().is_better_than(&state.fitness()) {
        state.accept(working, plan, eval);
    }
}

/// Two-opt with perturbation.
pub fn topo<S: Scalar, R: Rng + ?Sized>(
    mut state: SearchState<S>,
    inst: &TtptwInstance<S>,
    params: &OperatorParams,
    budget: &mut EvaluationBudget,
    repair: Repair,
    rng: &mut R,
) -> SearchState<S> {
    let n = state.tour.len();
    if n < 3 {
        return state;
    }
    let mut working = state.tour.clone();
    let mut scratch = Evaluation::default();
    for k in 1..=params.theta {
        if budget.is_exhausted() {
            break;
        }
        state.counters.topo += 1;
        let (i, j) = random_segment(n, rng);
        working.reverse_segment(i, j);
        if rng.gen::<f64>() >= params.mu {
            continue;
        }
        if evaluate_into(inst, &working, &state.plan, budget, &mut scratch).is_err() {
            break;
        }
        if scratch.fitness().is_better_than(&state.fitness()) {
            let plan = state.plan.clone();
            state.accept(&working, plan, std::mem::take(&mut scratch));
        } else {
            try_repair(&mut state, inst, &working, &scratch, repair, k, budget);
            working.clone_from(&state.tour);
        }
    }
    state
}

/// Random insertion.
pub fn rain<S: Scalar, R: Rng + ?Sized>(
    mut state: SearchState<S>,
    inst: &TtptwInstance<S>,
    params: &OperatorParams,
    budget: &mut EvaluationBudget,
    repair: Repair,
    rng: &mut R,
) -> SearchState<S> {
    let n = state.tour.len();
    if n < 3 {
        return state;
    }
    let mut working = state.tour.clone();
    let mut scratch = Evaluation::default();
    for k in 1..=params.theta {
        if budget.is_exhausted() {
            break;
        }
        state.counters.rain += 1;
        let (from, to) = random_move(n, rng);
        working.move_city(from, to);
        if evaluate_into(inst, &working, &state.plan, budget, &mut scratch).is_err() {
            break;
        }
        if scratch.fitness().is_better_than(&state.fitness()) {
            let plan = state.plan.clone();
            state.accept(&working, plan, std::mem::take(&mut scratch));
        } else {
            try_repair(&mut state, inst, &working, &scratch, repair, k, budget);
            working.clone_from(&state.tour);
        }
    }
    state
}

/// Evaluates the working tour either with a freshly packed plan or with the
/// state's plan. `Err` means the budget ran out.
fn integrated_candidate<S: Scalar>(
    state: &SearchState<S>,
    inst: &TtptwInstance<S>,
    working: &Tour,
    table: &ItemScoreTable<S>,
    repack_now: bool,
    budget: &mut EvaluationBudget,
) -> Result<(PackingPlan, Evaluation<S>), BudgetExhausted> {
    if repack_now {
        let packed = pack_with_order(inst, working, &table.order(), budget);
        if let Some(eval) = packed.evaluation {
            return Ok((packed.plan, eval));
        }
    }
    let eval = evaluate(inst, working, &state.plan, budget)?;
    Ok((state.plan.clone(), eval))
}

/// Integration of two-opt and Pack.
///
/// Scores are built once on entry (exponent `c`). After each reversal the
/// tail distances of every position up to the end of the reversed segment
/// are refreshed. The candidate is evaluated when a uniform draw exceeds
/// `mu`; at evaluated iterations divisible by `rho`, and at every iteration
/// divisible by `beta`, the plan is rebuilt with Pack on the current scores.
pub fn itp<S: Scalar, R: Rng + ?Sized>(
    mut state: SearchState<S>,
    inst: &TtptwInstance<S>,
    params: &OperatorParams,
    pack_params: &PackParams,
    budget: &mut EvaluationBudget,
    rng: &mut R,
) -> SearchState<S> {
    let n = state.tour.len();
    if n < 3 {
        return state;
    }
    let mut table = ItemScoreTable::build(inst, &state.tour, S::lit(pack_params.c));
    let mut working = state.tour.clone();
    let mut working_table = table.clone();
    for k in 1..=params.theta {
        if budget.is_exhausted() {
            break;
        }
        state.counters.itp += 1;
        let (i, j) = random_segment(n, rng);
        working.reverse_segment(i, j);
        working_table.refresh_prefix(inst, &working, j);
        let evaluate_now = rng.gen::<f64>() > params.mu;
        let repair_now = k % params.beta == 0;
        if !evaluate_now && !repair_now {
            continue;
        }
        let repack_now = repair_now || k % params.rho == 0;
        let Ok((plan, eval)) = integrated_candidate(&state, inst, &working, &working_table, repack_now, budget) else {
            break;
        };
        if eval.fitness().is_better_than(&state.fitness()) {
            state.accept(&working, plan, eval);
            table.clone_from(&working_table);
        } else {
            working.clone_from(&state.tour);
            working_table.clone_from(&table);
        }
    }
    state
}

/// Integration of insertion and Pack.
///
/// Only the moved city's items are rescored after an insertion; the other
/// cities keep their (slightly stale) scores. Every iteration is evaluated,
/// and every `beta`-th iteration the plan is rebuilt with Pack.
pub fn iip<S: Scalar, R: Rng + ?Sized>(
    mut state: SearchState<S>,
    inst: &TtptwInstance<S>,
    params: &OperatorParams,
    pack_params: &PackParams,
    budget: &mut EvaluationBudget,
    rng: &mut R,
) -> SearchState<S> {
    let n = state.tour.len();
    if n < 3 {
        return state;
    }
    let mut table = ItemScoreTable::build(inst, &state.tour, S::lit(pack_params.c));
    let mut working = state.tour.clone();
    let mut working_table = table.clone();
    for k in 1..=params.theta {
        if budget.is_exhausted() {
            break;
        }
        state.counters.iip += 1;
        let (from, to) = random_move(n, rng);
        working.move_city(from, to);
        working_table.refresh_position(inst, &working, to);
        let repack_now = k % params.beta == 0;
        let Ok((plan, eval)) = integrated_candidate(&state, inst, &working, &working_table, repack_now, budget) else {
            break;
        };
        if eval.fitness().is_better_than(&state.fitness()) {
            state.accept(&working, plan, eval);
            table.clone_from(&working_table);
        } else {
            working.clone_from(&state.tour);
            working_table.clone_from(&table);
        }
    }
    state
}
