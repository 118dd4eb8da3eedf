//! Scored nearest-neighbour tour construction with a four-tour memory.
//!
//! From the current city every unvisited city `j` is scored by the travel
//! time `d / v_max` when the predicted arrival falls inside `j`'s window,
//! and by `-(travel + M (t*_j - U_j))` otherwise. Late cities therefore get
//! large negative scores (visited first) and early cities large positive
//! scores (visited last).
//!
//! Four candidates are memorised: the cities sorted by their scores from
//! the depot, its reverse, the greedy lowest-score walk, and the walk's
//! reverse. The best of them under [`compare`] with an empty knapsack is
//! returned.

use std::cmp::Ordering;

use crate::evaluation::{compare, evaluate, Evaluation, EvaluationBudget, PackingPlan, Tour};
use crate::instance::TtptwInstance;
use crate::scalar::Scalar;

/// Default separation constant between on-time, early and late cities.
pub const DEFAULT_PENALTY: f64 = 10_000.0;

/// Walk state while scoring candidate successors.
#[derive(Debug, Clone)]
pub struct InitContext<S> {
    pub current_city: usize,
    pub current_time: S,
    pub visited: Vec<bool>,
    pub penalty: S,
}

impl<S: Scalar> InitContext<S> {
    pub fn at_depot(n: usize, penalty: S) -> Self {
        let mut visited = vec![false; n];
        visited[0] = true;
        InitContext { current_city: 0, current_time: S::zero(), visited, penalty }
    }
}

/// Score of moving from the context's city to `j`. Lower is visited first.
pub fn score_city<S: Scalar>(ctx: &InitContext<S>, inst: &TtptwInstance<S>, j: usize) -> S {
    let travel = inst.ttp.distance(ctx.current_city, j) / inst.ttp.v_max();
    let planned = ctx.current_time + travel;
    let window = inst.window(j);
    if window.contains(planned) {
        travel
    } else {
        -(travel + ctx.penalty * (planned - window.upper))
    }
}

fn by_score<S: Scalar>(a: &(S, usize), b: &(S, usize)) -> Ordering {
    a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal).then(a.1.cmp(&b.1))
}

fn scored_unvisited<S: Scalar>(ctx: &InitContext<S>, inst: &TtptwInstance<S>) -> Vec<(S, usize)> {
    (0..inst.num_cities()).filter(|&j| !ctx.visited[j]).map(|j| (score_city(ctx, inst, j), j)).collect()
}

/// Cities `2..n` sorted ascending by their score from the depot at time 0.
pub fn sorted_candidate<S: Scalar>(inst: &TtptwInstance<S>, penalty: S) -> Tour {
    let ctx = InitContext::at_depot(inst.num_cities(), penalty);
    let mut scored = scored_unvisited(&ctx, inst);
    scored.sort_by(by_score);
    let mut order = vec![0];
    order.extend(scored.into_iter().map(|(_, c)| c));
    Tour::new(order).expect("sorted candidate is a permutation")
}

/// Greedy walk that always moves to the lowest-scoring unvisited city and
/// advances the clock by the empty-knapsack travel time plus any waiting.
pub fn greedy_candidate<S: Scalar>(inst: &TtptwInstance<S>, penalty: S) -> Tour {
    let n = inst.num_cities();
    let mut ctx = InitContext::at_depot(n, penalty);
    let mut order = Vec::with_capacity(n);
    order.push(0);
    for _ in 1..n {
        let (_, next) = scored_unvisited(&ctx, inst)
            .into_iter()
            .min_by(by_score)
            .expect("an unvisited city remains");
        let planned = ctx.current_time + inst.ttp.distance(ctx.current_city, next) / inst.ttp.v_max();
        ctx.current_time = planned.max(inst.window(next).lower);
        ctx.current_city = next;
        ctx.visited[next] = true;
        order.push(next);
    }
    Tour::new(order).expect("greedy walk is a permutation")
}

/// The four memorised candidates in evaluation order.
pub fn candidates<S: Scalar>(inst: &TtptwInstance<S>, penalty: S) -> [Tour; 4] {
    let sorted = sorted_candidate(inst, penalty);
    let greedy = greedy_candidate(inst, penalty);
    let sorted_rev = sorted.reversed();
    let greedy_rev = greedy.reversed();
    [sorted, sorted_rev, greedy, greedy_rev]
}

/// Builds the initial tour. Each candidate costs one FE; when the budget
/// runs out the best candidate evaluated so far wins. The returned
/// evaluation (empty plan) is `None` only if nothing could be evaluated.
pub fn initialize_tour<S: Scalar>(
    inst: &TtptwInstance<S>,
    penalty: S,
    budget: &mut EvaluationBudget,
) -> (Tour, Option<Evaluation<S>>) {
    let plan = PackingPlan::empty(inst.num_items());
    let [c1, c2, c3, c4] = candidates(inst, penalty);
    let mut best: Option<(Tour, Evaluation<S>)> = None;
    for tour in [c1, c2, c3.clone(), c4] {
        let Ok(eval) = evaluate(inst, &tour, &plan, budget) else { break };
        let improves = match &best {
            None => true,
            Some((_, b)) => compare(&eval.fitness(), &b.fitness()) == Ordering::Greater,
        };
        if improves {
            best = Some((tour, eval));
        }
    }
    match best {
        Some((tour, eval)) => (tour, Some(eval)),
        None => (c3, None),
    }
}
