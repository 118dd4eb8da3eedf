//! Tours, packing plans and their evaluation under time windows.
//!
//! The thief leaves city `x` at speed `v_max - v * W_x` with
//! `v = (v_max - v_min) / W`. Arriving before a window opens means waiting
//! until it does; arriving after it closes adds the lateness to the
//! constraint violation. The objective charges rent on the arrival time at
//! the last city plus the return leg.
//!
//! Every metered evaluation consumes exactly one unit of an
//! [`EvaluationBudget`].

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::instance::{TtpInstance, TtptwInstance};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TourError {
    #[error("tour is empty")]
    Empty,
    #[error("tour must start at city 1, starts at city {0}")]
    BadStart(usize),
    #[error("city {0} is out of range")]
    OutOfRange(usize),
    #[error("city {0} appears more than once")]
    Duplicate(usize),
    #[error("tour has {got} cities, instance has {expected}")]
    WrongLength { expected: usize, got: usize },
}

/// A city permutation starting at the depot (city `0`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Tour {
    order: Vec<usize>,
}

impl Tour {
    /// Validates a zero-based permutation of `0..order.len()` starting at `0`.
    pub fn new(order: Vec<usize>) -> Result<Self, TourError> {
        let n = order.len();
        if n == 0 {
            return Err(TourError::Empty);
        }
        if order[0] != 0 {
            return Err(TourError::BadStart(order[0] + 1));
        }
        let mut seen = vec![false; n];
        for &c in &order {
            if c >= n {
                return Err(TourError::OutOfRange(c + 1));
            }
            if std::mem::replace(&mut seen[c], true) {
                return Err(TourError::Duplicate(c + 1));
            }
        }
        Ok(Tour { order })
    }

    /// Builds a tour from one-based city ids, as they appear in files.
    pub fn from_one_based(ids: &[usize]) -> Result<Self, TourError> {
        let order = ids
            .iter()
            .map(|&c| c.checked_sub(1).ok_or(TourError::OutOfRange(0)))
            .collect::<Result<Vec<_>, _>>()?;
        Tour::new(order)
    }

    /// `0, 1, ..., n-1`.
    pub fn identity(n: usize) -> Self {
        Tour { order: (0..n).collect() }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.order.iter().map(|c| c + 1).collect()
    }

    /// `(0, a, b, ..., z)` becomes `(0, z, ..., b, a)`; the depot stays in front.
    pub fn reversed(&self) -> Self {
        let mut order = self.order.clone();
        order[1..].reverse();
        Tour { order }
    }

    /// Reverses positions `i..=j`. Both must be at least 1.
    pub(crate) fn reverse_segment(&mut self, i: usize, j: usize) {
        debug_assert!(i >= 1 && i <= j && j < self.order.len());
        self.order[i..=j].reverse();
    }

    /// Removes the city at position `from` and reinserts it so that it ends
    /// up at position `to`. Both must be at least 1.
    pub(crate) fn move_city(&mut self, from: usize, to: usize) {
        debug_assert!(from >= 1 && to >= 1);
        let city = self.order.remove(from);
        self.order.insert(to, city);
    }

    pub(crate) fn swap(&mut self, i: usize, j: usize) {
        debug_assert!(i >= 1 && j >= 1);
        self.order.swap(i, j);
    }

    /// Checks the tour against an instance's city count.
    pub fn check_len(&self, n: usize) -> Result<(), TourError> {
        if self.order.len() == n {
            Ok(())
        } else {
            Err(TourError::WrongLength { expected: n, got: self.order.len() })
        }
    }
}

impl fmt::Display for Tour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.order.iter().map(|c| (c + 1).to_string()).collect();
        write!(f, "({})", ids.join(","))
    }
}

/// Item selection, one flag per item.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PackingPlan {
    taken: Vec<bool>,
}

impl PackingPlan {
    pub fn empty(m: usize) -> Self {
        PackingPlan { taken: vec![false; m] }
    }

    pub fn from_bits(taken: Vec<bool>) -> Self {
        PackingPlan { taken }
    }

    pub fn len(&self) -> usize {
        self.taken.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taken.is_empty()
    }

    #[inline]
    pub fn is_taken(&self, j: usize) -> bool {
        self.taken[j]
    }

    pub fn set(&mut self, j: usize, take: bool) {
        self.taken[j] = take;
    }

    pub fn bits(&self) -> &[bool] {
        &self.taken
    }

    pub fn count(&self) -> usize {
        self.taken.iter().filter(|&&b| b).count()
    }

    pub fn taken_items(&self) -> impl Iterator<Item = usize> + '_ {
        self.taken.iter().enumerate().filter_map(|(j, &b)| b.then_some(j))
    }

    pub fn total_weight<S: Scalar>(&self, inst: &TtpInstance<S>) -> S {
        self.taken_items().map(|j| inst.item(j).weight).sum()
    }
}

/// The three quantities the constraint-dominance ordering looks at.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Fitness<S> {
    pub objective: S,
    pub violation: S,
    pub capacity_ok: bool,
}

impl<S: Scalar> Fitness<S> {
    pub fn is_feasible(&self) -> bool {
        self.capacity_ok && self.violation == S::zero()
    }

    /// `true` when `self` ranks strictly above `other`.
    pub fn is_better_than(&self, other: &Fitness<S>) -> bool {
        compare(self, other) == Ordering::Greater
    }
}

/// Constraint-dominance ordering. `Greater` means `a` is the better solution.
///
/// Over-capacity solutions rank below every capacity-feasible one; then the
/// lower violation wins; then the higher objective.
pub fn compare<S: Scalar>(a: &Fitness<S>, b: &Fitness<S>) -> Ordering {
    match (a.capacity_ok, b.capacity_ok) {
        (true, false) => return Ordering::Greater,
        (false, true) => return Ordering::Less,
        _ => {}
    }
    b.violation
        .partial_cmp(&a.violation)
        .unwrap_or(Ordering::Equal)
        .then_with(|| a.objective.partial_cmp(&b.objective).unwrap_or(Ordering::Equal))
}

/// Full result of simulating a tour with a packing plan. The per-stop
/// vectors are indexed by tour position, not by city.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Evaluation<S> {
    pub objective: S,
    pub violation: S,
    pub planned_arrivals: Vec<S>,
    pub arrivals: Vec<S>,
    pub weights_on_leave: Vec<S>,
    pub total_weight: S,
    pub capacity_ok: bool,
}

impl<S: Scalar> Default for Evaluation<S> {
    fn default() -> Self {
        Evaluation {
            objective: S::neg_infinity(),
            violation: S::infinity(),
            planned_arrivals: Vec::new(),
            arrivals: Vec::new(),
            weights_on_leave: Vec::new(),
            total_weight: S::zero(),
            capacity_ok: false,
        }
    }
}

impl<S: Scalar> Evaluation<S> {
    /// Evaluates without touching any budget. Solvers never call this; it
    /// exists for validation and reporting.
    pub fn compute(inst: &TtptwInstance<S>, tour: &Tour, plan: &PackingPlan) -> Self {
        let mut out = Evaluation::default();
        simulate(inst, tour, plan, &mut out);
        out
    }

    pub fn fitness(&self) -> Fitness<S> {
        Fitness { objective: self.objective, violation: self.violation, capacity_ok: self.capacity_ok }
    }

    pub fn is_feasible(&self) -> bool {
        is_feasible(self)
    }

    /// Position of the first stop whose arrival exceeds its window.
    pub fn first_late_position(&self, inst: &TtptwInstance<S>, tour: &Tour) -> Option<usize> {
        self.arrivals
            .iter()
            .zip(tour.order())
            .position(|(&t, &city)| t > inst.window(city).upper)
    }
}

/// `true` iff there is no lateness and the knapsack is within capacity.
pub fn is_feasible<S: Scalar>(e: &Evaluation<S>) -> bool {
    e.capacity_ok && e.violation == S::zero()
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("evaluation budget of {limit} exhausted")]
pub struct BudgetExhausted {
    pub limit: u64,
}

/// Function-evaluation counter owned by one solver run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EvaluationBudget {
    used: u64,
    limit: u64,
}

impl EvaluationBudget {
    pub fn new(limit: u64) -> Self {
        EvaluationBudget { used: 0, limit }
    }

    pub fn unlimited() -> Self {
        EvaluationBudget::new(u64::MAX)
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn remaining(&self) -> u64 {
        self.limit - self.used
    }

    pub fn is_exhausted(&self) -> bool {
        self.used >= self.limit
    }

    /// Reserves one evaluation.
    pub fn try_consume(&mut self) -> Result<(), BudgetExhausted> {
        if self.is_exhausted() {
            Err(BudgetExhausted { limit: self.limit })
        } else {
            self.used += 1;
            Ok(())
        }
    }
}

/// Evaluates `(tour, plan)` and charges one FE.
pub fn evaluate<S: Scalar>(
    inst: &TtptwInstance<S>,
    tour: &Tour,
    plan: &PackingPlan,
    budget: &mut EvaluationBudget,
) -> Result<Evaluation<S>, BudgetExhausted> {
    let mut out = Evaluation::default();
    evaluate_into(inst, tour, plan, budget, &mut out)?;
    Ok(out)
}

/// Like [`evaluate`] but reuses the buffers of `out`.
pub fn evaluate_into<S: Scalar>(
    inst: &TtptwInstance<S>,
    tour: &Tour,
    plan: &PackingPlan,
    budget: &mut EvaluationBudget,
    out: &mut Evaluation<S>,
) -> Result<(), BudgetExhausted> {
    budget.try_consume()?;
    simulate(inst, tour, plan, out);
    Ok(())
}

fn simulate<S: Scalar>(inst: &TtptwInstance<S>, tour: &Tour, plan: &PackingPlan, out: &mut Evaluation<S>) {
    let ttp = &inst.ttp;
    let n = ttp.num_cities();
    assert_eq!(tour.len(), n, "tour length does not match the instance");
    assert_eq!(plan.len(), ttp.num_items(), "plan length does not match the instance");

    out.planned_arrivals.clear();
    out.arrivals.clear();
    out.weights_on_leave.clear();

    let slope = ttp.speed_slope();
    let v_max = ttp.v_max();
    let order = tour.order();
    let mut profit = S::zero();
    let mut weight = S::zero();
    let mut time = S::zero();
    let mut violation = S::zero();
    let mut prev = order[0];

    for (pos, &city) in order.iter().enumerate() {
        let window = inst.window(city);
        let planned = if pos == 0 { S::zero() } else { time + ttp.distance(prev, city) / (v_max - slope * weight) };
        time = planned.max(window.lower);
        if time > window.upper {
            violation = violation + (time - window.upper);
        }
        for &j in ttp.items_at(city) {
            if plan.is_taken(j) {
                let item = ttp.item(j);
                weight = weight + item.weight;
                profit = profit + item.profit;
            }
        }
        out.planned_arrivals.push(planned);
        out.arrivals.push(time);
        out.weights_on_leave.push(weight);
        prev = city;
    }

    let back = ttp.distance(prev, order[0]) / (v_max - slope * weight);
    out.objective = profit - ttp.rent() * (back + time);
    out.violation = violation;
    out.total_weight = weight;
    out.capacity_ok = weight <= ttp.capacity();
}

/// Windowless TTP objective: profit minus rent times the travel time of
/// every leg, with the return leg added last.
///
/// Legs are summed in tour order, the same order the windowed evaluation
/// accumulates arrival times in, so both agree bitwise under open windows.
pub fn ttp_objective<S: Scalar>(ttp: &TtpInstance<S>, tour: &Tour, plan: &PackingPlan) -> S {
    let order = tour.order();
    let slope = ttp.speed_slope();
    let mut profit = S::zero();
    let mut weight = S::zero();
    let mut travel = S::zero();
    for (pos, &city) in order.iter().enumerate() {
        if pos > 0 {
            travel = travel + ttp.distance(order[pos - 1], city) / (ttp.v_max() - slope * weight);
        }
        for &j in ttp.items_at(city) {
            if plan.is_taken(j) {
                weight = weight + ttp.item(j).weight;
                profit = profit + ttp.item(j).profit;
            }
        }
    }
    let back = ttp.distance(order[order.len() - 1], order[0]) / (ttp.v_max() - slope * weight);
    profit - ttp.rent() * (back + travel)
}
