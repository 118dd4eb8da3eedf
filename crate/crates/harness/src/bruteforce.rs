//! Exhaustive search over every tour and every capacity-feasible plan.

use itertools::Itertools;
use thiserror::Error;
use ttptw_core::{compare, Evaluation, PackingPlan, Tour, TtptwInstance};

pub const MAX_CITIES: usize = 8;
pub const MAX_ITEMS: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("instance too large for brute force: {cities} cities, {items} items (limits {MAX_CITIES}, {MAX_ITEMS})")]
pub struct TooLarge {
    pub cities: usize,
    pub items: usize,
}

#[derive(Debug, Clone)]
pub struct Optimum {
    pub tour: Tour,
    pub plan: PackingPlan,
    pub eval: Evaluation,
    /// Number of (tour, plan) pairs evaluated.
    pub candidates: u64,
}

pub fn brute_force(inst: &TtptwInstance) -> Result<Optimum, TooLarge> {
    let (n, m) = (inst.num_cities(), inst.num_items());
    if n > MAX_CITIES || m > MAX_ITEMS {
        return Err(TooLarge { cities: n, items: m });
    }
    let ttp = &inst.ttp;
    let plans: Vec<PackingPlan> = (0u32..1 << m)
        .map(|mask| PackingPlan::from_bits((0..m).map(|j| mask >> j & 1 == 1).collect()))
        .filter(|p| p.total_weight(ttp) <= ttp.capacity())
        .collect();
    let mut best: Option<Optimum> = None;
    let mut candidates = 0;
    for rest in (1..n).permutations(n - 1) {
        let mut order = vec![0];
        order.extend(rest);
        let tour = Tour::new(order).expect("permutation");
        for plan in &plans {
            candidates += 1;
            let eval = Evaluation::compute(inst, &tour, plan);
            let better = best.as_ref().map_or(true, |b| compare(&eval.fitness(), &b.eval.fitness()).is_gt());
            if better {
                best = Some(Optimum { tour: tour.clone(), plan: plan.clone(), eval, candidates: 0 });
            }
        }
    }
    let mut best = best.expect("at least the empty plan fits");
    best.candidates = candidates;
    Ok(best)
}
