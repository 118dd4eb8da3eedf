//! Packing plans for a fixed tour.
//!
//! Items are ranked by `p^a / (w^a * d)` where `d` is the distance still to
//! be travelled along the tour after the item's city. [`pack`] walks that
//! ranking and keeps an item only when a full evaluation says the solution
//! got strictly better; [`pack_iterative`] searches over the exponent `a`;
//! [`repack`] drops unprofitable items taken before the first late arrival
//! and then refills.

use serde::{Deserialize, Serialize};

use crate::evaluation::{evaluate, evaluate_into, Evaluation, EvaluationBudget, PackingPlan, Tour};
use crate::instance::TtptwInstance;
use crate::scalar::Scalar;

/// Exponent-search parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PackParams {
    /// Initial exponent.
    pub c: f64,
    /// Initial multiplicative step, shrunk to its square root every round.
    pub delta: f64,
    /// Maximum number of search rounds.
    pub q: usize,
    /// Relative objective improvement below which the search stops.
    pub e: f64,
}

impl Default for PackParams {
    fn default() -> Self {
        PackParams { c: 5.0, delta: 2.5, q: 20, e: 0.1 }
    }
}

impl PackParams {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.c > 0.0) {
            return Err(format!("c must be positive, got {}", self.c));
        }
        if !(self.delta > 1.0) {
            return Err(format!("delta must exceed 1, got {}", self.delta));
        }
        if self.q < 1 {
            return Err("q must be at least 1".into());
        }
        if !(self.e > 0.0) {
            return Err(format!("e must be positive, got {}", self.e));
        }
        Ok(())
    }
}

/// Per-item scores and the tail distances they were computed from.
#[derive(Debug, Clone, PartialEq)]
pub struct ItemScoreTable<S> {
    pub scores: Vec<S>,
    pub tail_distance: Vec<S>,
    pub alpha: S,
    city_tail: Vec<S>,
}

impl<S: Scalar> ItemScoreTable<S> {
    pub fn build(inst: &TtptwInstance<S>, tour: &Tour, alpha: S) -> Self {
        let n = inst.num_cities();
        let m = inst.num_items();
        let mut table = ItemScoreTable {
            scores: vec![S::zero(); m],
            tail_distance: vec![S::zero(); m],
            alpha,
            city_tail: vec![S::zero(); n],
        };
        table.refresh_prefix(inst, tour, n - 1);
        table
    }

    fn score_of(&self, inst: &TtptwInstance<S>, j: usize) -> S {
        let item = inst.ttp.item(j);
        item.profit.powf(self.alpha) / (item.weight.powf(self.alpha) * self.tail_distance[j])
    }

    fn rescore_city(&mut self, inst: &TtptwInstance<S>, city: usize) {
        let tail = self.city_tail[city];
        for &j in inst.ttp.items_at(city) {
            self.tail_distance[j] = tail;
            self.scores[j] = self.score_of(inst, j);
        }
    }

    /// Recomputes tail distances and scores for tour positions `0..=last`,
    /// assuming positions after `last` are already up to date.
    pub fn refresh_prefix(&mut self, inst: &TtptwInstance<S>, tour: &Tour, last: usize) {
        let order = tour.order();
        let n = order.len();
        let mut tail = if last + 1 < n { self.city_tail[order[last + 1]] } else { S::zero() };
        for pos in (0..=last).rev() {
            let next = if pos + 1 < n { order[pos + 1] } else { order[0] };
            tail = tail + inst.ttp.distance(order[pos], next);
            self.city_tail[order[pos]] = tail;
            self.rescore_city(inst, order[pos]);
        }
    }

    /// Recomputes the tail distance of the city at `pos` alone.
    pub fn refresh_position(&mut self, inst: &TtptwInstance<S>, tour: &Tour, pos: usize) {
        let order = tour.order();
        let n = order.len();
        let tail = (pos..n).map(|p| inst.ttp.distance(order[p], order[(p + 1) % n])).sum();
        self.city_tail[order[pos]] = tail;
        self.rescore_city(inst, order[pos]);
    }

    /// Item indices by descending score; ties go to the lower index.
    pub fn order(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.scores.len()).collect();
        idx.sort_by(|&a, &b| {
            self.scores[b].partial_cmp(&self.scores[a]).unwrap_or(std::cmp::Ordering::Equal).then(a.cmp(&b))
        });
        idx
    }
}

/// Scores every item for `tour`.
pub fn item_scores<S: Scalar>(inst: &TtptwInstance<S>, tour: &Tour, alpha: S) -> ItemScoreTable<S> {
    ItemScoreTable::build(inst, tour, alpha)
}

/// A plan together with its evaluation on the tour it was built for.
/// `evaluation` is `None` only when the budget did not allow a single
/// evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct Packed<S> {
    pub plan: PackingPlan,
    pub evaluation: Option<Evaluation<S>>,
}

impl<S: Scalar> Packed<S> {
    fn unevaluated(m: usize) -> Self {
        Packed { plan: PackingPlan::empty(m), evaluation: None }
    }
}

/// Walks `order` and tentatively adds every item that still fits, keeping
/// it only if the evaluation improves strictly. One FE per tentative add.
pub(crate) fn greedy_fill<S: Scalar>(
    inst: &TtptwInstance<S>,
    tour: &Tour,
    order: &[usize],
    mut plan: PackingPlan,
    mut current: Evaluation<S>,
    budget: &mut EvaluationBudget,
) -> (PackingPlan, Evaluation<S>) {
    let capacity = inst.ttp.capacity();
    let mut weight = plan.total_weight(&inst.ttp);
    let mut scratch = Evaluation::default();
    for &j in order {
        if plan.is_taken(j) {
            continue;
        }
        let w = inst.ttp.item(j).weight;
        if weight + w > capacity {
            continue;
        }
        plan.set(j, true);
        if evaluate_into(inst, tour, &plan, budget, &mut scratch).is_err() {
            plan.set(j, false);
            break;
        }
        if scratch.fitness().is_better_than(&current.fitness()) {
            std::mem::swap(&mut current, &mut scratch);
            weight = weight + w;
        } else {
            plan.set(j, false);
        }
    }
    (plan, current)
}

fn any_item_fits<S: Scalar>(inst: &TtptwInstance<S>) -> bool {
    inst.ttp.items().iter().any(|it| it.weight <= inst.ttp.capacity())
}

/// Evaluation-gated greedy packing along `order`, starting from an empty
/// knapsack. Costs one FE for the empty plan plus one per tentative add;
/// nothing at all when no item fits the knapsack.
pub fn pack_with_order<S: Scalar>(
    inst: &TtptwInstance<S>,
    tour: &Tour,
    order: &[usize],
    budget: &mut EvaluationBudget,
) -> Packed<S> {
    let m = inst.num_items();
    if !any_item_fits(inst) {
        return Packed::unevaluated(m);
    }
    let empty = PackingPlan::empty(m);
    let Ok(baseline) = evaluate(inst, tour, &empty, budget) else {
        return Packed::unevaluated(m);
    };
    let (plan, evaluation) = greedy_fill(inst, tour, order, empty, baseline, budget);
    Packed { plan, evaluation: Some(evaluation) }
}

/// Evaluation-gated greedy packing by descending `p^a / (w^a d)`.
pub fn pack<S: Scalar>(inst: &TtptwInstance<S>, tour: &Tour, alpha: S, budget: &mut EvaluationBudget) -> Packed<S> {
    let order = item_scores(inst, tour, alpha).order();
    pack_with_order(inst, tour, &order, budget)
}

/// Exponent search around `c`: each round packs at `a / r` and `a * r`,
/// moves to the better neighbour if it beats the incumbent, and replaces
/// `r` by its square root. Stops after `q` rounds or once a round improves
/// the objective by less than `e` (relative) at unchanged violation.
pub fn pack_iterative<S: Scalar>(
    inst: &TtptwInstance<S>,
    tour: &Tour,
    params: &PackParams,
    budget: &mut EvaluationBudget,
) -> Packed<S> {
    let m = inst.num_items();
    if !any_item_fits(inst) {
        return Packed::unevaluated(m);
    }
    let empty = PackingPlan::empty(m);
    let Ok(baseline) = evaluate(inst, tour, &empty, budget) else {
        return Packed::unevaluated(m);
    };
    let run = |alpha: S, budget: &mut EvaluationBudget| {
        let order = item_scores(inst, tour, alpha).order();
        greedy_fill(inst, tour, &order, empty.clone(), baseline.clone(), budget)
    };

    let mut alpha = S::lit(params.c);
    let mut ratio = S::lit(params.delta);
    let mut best = run(alpha, budget);
    for _ in 0..params.q {
        if budget.is_exhausted() {
            break;
        }
        let down = run(alpha / ratio, budget);
        let up = run(alpha * ratio, budget);
        let (cand_alpha, cand) =
            if up.1.fitness().is_better_than(&down.1.fitness()) { (alpha * ratio, up) } else { (alpha / ratio, down) };
        let (old, new) = (best.1.fitness(), cand.1.fitness());
        if !new.is_better_than(&old) {
            break;
        }
        let same_violation = old.violation == new.violation && old.capacity_ok == new.capacity_ok;
        let gain = if old.objective == S::zero() {
            S::infinity()
        } else {
            (new.objective - old.objective) / old.objective.abs()
        };
        best = cand;
        alpha = cand_alpha;
        ratio = ratio.sqrt();
        if same_violation && gain < S::lit(params.e) {
            break;
        }
    }
    Packed { plan: best.0, evaluation: Some(best.1) }
}

/// Repairs `plan` on `tour`. `current` must be the evaluation of exactly
/// `(tour, plan)`.
///
/// Phase 1 tries removing each taken item whose city is visited before the
/// first late arrival (all cities if none is late) and keeps a removal when
/// it strictly improves the solution. Phase 2 refills with items not
/// currently taken, by descending score at exponent `alpha`, through the
/// same gate as [`pack`]. One FE per tried removal or addition.
pub fn repack<S: Scalar>(
    inst: &TtptwInstance<S>,
    tour: &Tour,
    plan: &PackingPlan,
    current: &Evaluation<S>,
    alpha: S,
    budget: &mut EvaluationBudget,
) -> (PackingPlan, Evaluation<S>) {
    let first_late = current.first_late_position(inst, tour).unwrap_or(tour.len());
    let mut plan = plan.clone();
    let mut current = current.clone();
    let mut scratch = Evaluation::default();
    'removal: for &city in &tour.order()[..first_late] {
        for &j in inst.ttp.items_at(city) {
            if !plan.is_taken(j) {
                continue;
            }
            plan.set(j, false);
            if evaluate_into(inst, tour, &plan, budget, &mut scratch).is_err() {
                plan.set(j, true);
                break 'removal;
            }
            if scratch.fitness().is_better_than(&current.fitness()) {
                std::mem::swap(&mut current, &mut scratch);
            } else {
                plan.set(j, true);
            }
        }
    }
    if budget.is_exhausted() {
        return (plan, current);
    }
    let order = item_scores(inst, tour, alpha).order();
    greedy_fill(inst, tour, &order, plan, current, budget)
}
