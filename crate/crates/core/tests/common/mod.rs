#![allow(dead_code)]

use rand::Rng;
use ttptw_core::instance::Window;
use ttptw_core::TimeWindows;
use ttptw_core::{EdgeWeightKind, Item, TtpData, TtpInstance, TtptwInstance};

/// Random CEIL_2D instance with `n` cities and `m` items on non-depot cities.
pub fn random_ttp<R: Rng>(rng: &mut R, n: usize, m: usize) -> TtpInstance {
    let coords = (0..n).map(|_| (rng.gen_range(0..60) as f64, rng.gen_range(0..60) as f64)).collect();
    let items: Vec<Item<f64>> = (0..m)
        .map(|_| Item {
            profit: rng.gen_range(1..100) as f64,
            weight: rng.gen_range(1..50) as f64,
            city: rng.gen_range(1..n),
        })
        .collect();
    let total: f64 = items.iter().map(|i| i.weight).sum();
    let capacity = (total * rng.gen_range(0.2..0.9)).max(1.0).floor();
    TtpInstance::new(TtpData {
        name: "random".into(),
        knapsack_type: "uncorrelated".into(),
        coords,
        capacity,
        v_min: 0.1,
        v_max: 1.0,
        rent: rng.gen_range(0.05..2.0),
        items,
        edge_weight_kind: EdgeWeightKind::Ceil2d,
    })
    .unwrap()
}

/// Arbitrary windows, some open above, some of zero width.
pub fn random_windows<R: Rng>(rng: &mut R, n: usize) -> TimeWindows {
    let mut bounds = vec![Window::open()];
    for _ in 1..n {
        let lower = if rng.gen_bool(0.5) { 0.0 } else { rng.gen_range(0.0..300.0) };
        let upper = match rng.gen_range(0..4) {
            0 => f64::INFINITY,
            1 => lower,
            _ => lower + rng.gen_range(0.0..400.0),
        };
        bounds.push(Window::new(lower, upper));
    }
    TimeWindows { bounds, tightness: 0 }
}

pub fn with_windows(ttp: TtpInstance, windows: TimeWindows) -> TtptwInstance {
    ttptw_core::attach_windows(ttp, windows).unwrap()
}

/// Direct simulation from coordinates: speeds, waiting, lateness and the
/// rent charged on the total travel time including the return leg.
pub struct Oracle {
    pub z: f64,
    pub cv: f64,
    pub weight: f64,
}

pub fn oracle_distance(a: (f64, f64), b: (f64, f64)) -> f64 {
    ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt().ceil()
}

pub fn oracle(inst: &TtptwInstance, order: &[usize], taken: &[bool]) -> Oracle {
    let ttp = &inst.ttp;
    let nu = (ttp.v_max() - ttp.v_min()) / ttp.capacity();
    let picked_at = |city: usize| -> (f64, f64) {
        ttp.items()
            .iter()
            .zip(taken)
            .filter(|(it, &t)| t && it.city == city)
            .fold((0.0, 0.0), |(p, w), (it, _)| (p + it.profit, w + it.weight))
    };
    let mut t = 0.0;
    let mut cv = 0.0;
    let mut carried = 0.0;
    let mut profit = 0.0;
    for i in 0..order.len() {
        if i > 0 {
            let d = oracle_distance(ttp.coords()[order[i - 1]], ttp.coords()[order[i]]);
            let w = inst.windows.bounds[order[i]];
            t = f64::max(t + d / (ttp.v_max() - nu * carried), w.lower);
            cv += f64::max(0.0, t - w.upper);
        }
        let (p, w) = picked_at(order[i]);
        profit += p;
        carried += w;
    }
    let back = oracle_distance(ttp.coords()[*order.last().unwrap()], ttp.coords()[order[0]]);
    let total_time = t + back / (ttp.v_max() - nu * carried);
    Oracle { z: profit - ttp.rent() * total_time, cv, weight: carried }
}

/// Lexicographic order used by the oracle searches: capacity, then lower
/// violation, then higher objective.
pub fn oracle_better(a: &Oracle, b: &Oracle, capacity: f64) -> bool {
    let (fa, fb) = (a.weight <= capacity, b.weight <= capacity);
    if fa != fb {
        return fa;
    }
    if a.cv != b.cv {
        return a.cv < b.cv;
    }
    a.z > b.z
}

/// All permutations of `1..n` after the depot.
pub fn all_tours(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for k in 0..rest.len() {
            let c = rest.remove(k);
            prefix.push(c);
            rec(prefix, rest, out);
            prefix.pop();
            rest.insert(k, c);
        }
    }
    let mut out = Vec::new();
    rec(&mut vec![0], &mut (1..n).collect(), &mut out);
    out
}

pub struct Optimum {
    pub order: Vec<usize>,
    pub taken: Vec<bool>,
    pub value: Oracle,
}

/// Exhaustive search over every tour and every capacity-feasible plan.
pub fn brute_force(inst: &TtptwInstance) -> Optimum {
    let m = inst.num_items();
    let cap = inst.ttp.capacity();
    let mut best: Option<Optimum> = None;
    for order in all_tours(inst.num_cities()) {
        for mask in 0u32..(1 << m) {
            let taken: Vec<bool> = (0..m).map(|j| mask >> j & 1 == 1).collect();
            let w: f64 = (0..m).filter(|&j| taken[j]).map(|j| inst.ttp.item(j).weight).sum();
            if w > cap {
                continue;
            }
            let value = oracle(inst, &order, &taken);
            if best.as_ref().map_or(true, |b| oracle_better(&value, &b.value, cap)) {
                best = Some(Optimum { order: order.clone(), taken, value });
            }
        }
    }
    best.unwrap()
}

/// Windows that a random tour meets with an empty knapsack: each window
/// contains the tour's arrival, widened by random slack.
pub fn feasible_windows<R: Rng>(rng: &mut R, ttp: &TtpInstance) -> TimeWindows {
    let n = ttp.num_cities();
    let mut order: Vec<usize> = (1..n).collect();
    rand::seq::SliceRandom::shuffle(order.as_mut_slice(), rng);
    order.insert(0, 0);
    let mut bounds = vec![Window::open(); n];
    let mut t = 0.0;
    for w in order.windows(2) {
        t += oracle_distance(ttp.coords()[w[0]], ttp.coords()[w[1]]) / ttp.v_max();
        let lower = (t - rng.gen_range(0.0..30.0)).max(0.0);
        let upper = t + rng.gen_range(0.0..60.0);
        bounds[w[1]] = Window::new(lower, upper);
    }
    TimeWindows { bounds, tightness: 0 }
}
