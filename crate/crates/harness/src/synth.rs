//! Synthetic TTP instances in the CEC-2014 style.
//!
//! Items are placed round-robin on cities 2..n; weights and profits follow
//! the knapsack category; capacity is `class * sum(w) / 11`. The renting
//! ratio is chosen so that the reference tour with the greedy
//! profit-per-weight plan scores roughly zero.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;
use ttptw_core::Evaluation;
use ttptw_core::rng::child_rng;
use ttptw_core::{EdgeWeightKind, Item, PackingPlan, Tour, TtpData, TtpInstance, TtptwInstance};

use crate::tsp::reference_tour;

/// Coordinates of the 51-city Christofides-Eilon instance.
pub const EIL51: [(f64, f64); 51] = [
    (37.0, 52.0), (49.0, 49.0), (52.0, 64.0), (20.0, 26.0), (40.0, 30.0), (21.0, 47.0), (17.0, 63.0),
    (31.0, 62.0), (52.0, 33.0), (51.0, 21.0), (42.0, 41.0), (31.0, 32.0), (5.0, 25.0), (12.0, 42.0),
    (36.0, 16.0), (52.0, 41.0), (27.0, 23.0), (17.0, 33.0), (13.0, 13.0), (57.0, 58.0), (62.0, 42.0),
    (42.0, 57.0), (16.0, 57.0), (8.0, 52.0), (7.0, 38.0), (27.0, 68.0), (30.0, 48.0), (43.0, 67.0),
    (58.0, 48.0), (58.0, 27.0), (37.0, 69.0), (38.0, 46.0), (46.0, 10.0), (61.0, 33.0), (62.0, 63.0),
    (63.0, 69.0), (32.0, 22.0), (45.0, 35.0), (59.0, 15.0), (5.0, 6.0), (10.0, 17.0), (21.0, 10.0),
    (5.0, 64.0), (30.0, 15.0), (39.0, 10.0), (32.0, 39.0), (25.0, 32.0), (25.0, 55.0), (48.0, 28.0),
    (56.0, 37.0), (30.0, 40.0),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum KnapsackKind {
    BoundedStronglyCorrelated,
    Uncorrelated,
    UncorrelatedSimilarWeights,
}

impl KnapsackKind {
    /// Tag used in CEC file names.
    pub fn file_tag(self) -> &'static str {
        match self {
            KnapsackKind::BoundedStronglyCorrelated => "bounded-strongly-corr",
            KnapsackKind::Uncorrelated => "uncorr",
            KnapsackKind::UncorrelatedSimilarWeights => "uncorr-similar-weights",
        }
    }

    /// Value of the `KNAPSACK DATA TYPE` header.
    pub fn header(self) -> &'static str {
        match self {
            KnapsackKind::BoundedStronglyCorrelated => "bounded strongly corr",
            KnapsackKind::Uncorrelated => "uncorrelated",
            KnapsackKind::UncorrelatedSimilarWeights => "uncorrelated, similar weights",
        }
    }

    fn draw<R: Rng>(self, rng: &mut R) -> (f64, f64) {
        match self {
            KnapsackKind::BoundedStronglyCorrelated => {
                let w = rng.gen_range(1..=1000) as f64;
                (w + 100.0, w)
            }
            KnapsackKind::Uncorrelated => (rng.gen_range(1..=1000) as f64, rng.gen_range(1..=1000) as f64),
            KnapsackKind::UncorrelatedSimilarWeights => {
                (rng.gen_range(1..=1000) as f64, rng.gen_range(1000..=1010) as f64)
            }
        }
    }
}

impl fmt::Display for KnapsackKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.file_tag())
    }
}

impl FromStr for KnapsackKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bsc" | "bounded-strongly-corr" => Ok(KnapsackKind::BoundedStronglyCorrelated),
            "u" | "uncorr" => Ok(KnapsackKind::Uncorrelated),
            "usw" | "uncorr-similar-weights" => Ok(KnapsackKind::UncorrelatedSimilarWeights),
            _ => Err(format!("unknown knapsack kind `{s}` (bsc, uncorr, usw)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthSpec {
    /// TSP base name, e.g. `eil51`.
    pub base: String,
    pub coords: Vec<(f64, f64)>,
    pub items_per_city: usize,
    pub kind: KnapsackKind,
    /// Capacity class 1..=10.
    pub class: u32,
    pub seed: u64,
}

impl SynthSpec {
    pub fn eil51(kind: KnapsackKind, class: u32, seed: u64) -> Self {
        SynthSpec { base: "eil51".into(), coords: EIL51.to_vec(), items_per_city: 1, kind, class, seed }
    }

    /// Uniform integer coordinates on `[0, side]^2`.
    pub fn random(base: &str, n: usize, side: u32, kind: KnapsackKind, class: u32, seed: u64) -> Self {
        let mut rng = child_rng(seed, 0xc00d);
        let coords = (0..n).map(|_| (rng.gen_range(0..=side) as f64, rng.gen_range(0..=side) as f64)).collect();
        SynthSpec { base: base.into(), coords, items_per_city: 1, kind, class, seed }
    }

    /// CEC-style name, e.g. `eil51_n50_bounded-strongly-corr_01`.
    pub fn name(&self) -> String {
        let m = (self.coords.len() - 1) * self.items_per_city;
        format!("{}_n{m}_{}_{:02}", self.base, self.kind.file_tag(), self.class)
    }
}

/// Greedy profit-per-weight plan: highest ratio first, skip what does not fit.
pub fn ratio_greedy_plan(ttp: &TtpInstance) -> PackingPlan {
    let mut order: Vec<usize> = (0..ttp.num_items()).collect();
    order.sort_by(|&a, &b| {
        let (ia, ib) = (ttp.item(a), ttp.item(b));
        (ib.profit / ib.weight).total_cmp(&(ia.profit / ia.weight)).then(a.cmp(&b))
    });
    let mut plan = PackingPlan::empty(ttp.num_items());
    let mut weight = 0.0;
    for j in order {
        let w = ttp.item(j).weight;
        if weight + w <= ttp.capacity() {
            plan.set(j, true);
            weight += w;
        }
    }
    plan
}

/// Builds the instance and returns it with its reference tour.
pub fn synthesize(spec: &SynthSpec) -> (TtpInstance, Tour) {
    let n = spec.coords.len();
    let mut rng = child_rng(spec.seed, 0x17e5);
    let m = (n - 1) * spec.items_per_city;
    let items: Vec<Item<f64>> = (0..m)
        .map(|j| {
            let (profit, weight) = spec.kind.draw(&mut rng);
            Item { profit, weight, city: 1 + j % (n - 1) }
        })
        .collect();
    let total: f64 = items.iter().map(|i| i.weight).sum();
    let capacity = (spec.class as f64 * total / 11.0).floor().max(1.0);
    let mut data = TtpData {
        name: spec.name(),
        knapsack_type: spec.kind.header().into(),
        coords: spec.coords.clone(),
        capacity,
        v_min: 0.1,
        v_max: 1.0,
        rent: 1.0,
        items,
        edge_weight_kind: EdgeWeightKind::Ceil2d,
    };
    let unit = TtpInstance::new(data.clone()).expect("synthetic instance is valid");
    let tour = reference_tour(&unit, 50, spec.seed);
    let plan = ratio_greedy_plan(&unit);
    let eval = Evaluation::compute(&TtptwInstance::open(unit.clone()), &tour, &plan);
    // With rent 1 the objective is profit minus travel time.
    let profit: f64 = plan.taken_items().map(|j| unit.item(j).profit).sum();
    let time = profit - eval.objective;
    data.rent = (profit / time * 100.0).round() / 100.0;
    (TtpInstance::new(data).expect("synthetic instance is valid"), tour)
}
