#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use ttptw_core::{attach_windows, EdgeWeightKind, Item, TimeWindows, TtpData, TtpInstance, TtptwInstance, Window};

pub fn random_ttp<R: Rng>(rng: &mut R, n: usize, m: usize) -> TtpInstance {
    let coords = (0..n).map(|_| (rng.gen_range(0..80) as f64, rng.gen_range(0..80) as f64)).collect();
    let items: Vec<Item<f64>> = (0..m)
        .map(|_| Item { profit: rng.gen_range(1..200) as f64, weight: rng.gen_range(1..60) as f64, city: rng.gen_range(1..n) })
        .collect();
    let total: f64 = items.iter().map(|i| i.weight).sum();
    TtpInstance::new(TtpData {
        name: "random".into(),
        knapsack_type: "uncorrelated".into(),
        coords,
        capacity: (total * rng.gen_range(0.3..0.9)).floor().max(1.0),
        v_min: 0.1,
        v_max: 1.0,
        rent: rng.gen_range(0.05..3.0),
        items,
        edge_weight_kind: EdgeWeightKind::Ceil2d,
    })
    .unwrap()
}

pub fn random_windows<R: Rng>(rng: &mut R, n: usize) -> TimeWindows {
    let mut bounds = vec![Window::open()];
    for _ in 1..n {
        let lower = if rng.gen_bool(0.4) { 0.0 } else { rng.gen_range(0.0..400.0) };
        let upper = match rng.gen_range(0..5) {
            0 => f64::INFINITY,
            1 => lower,
            _ => lower + rng.gen_range(0.0..500.0),
        };
        bounds.push(Window::new(lower, upper));
    }
    TimeWindows { bounds, tightness: 0 }
}

/// Windows met by a random tour with an empty knapsack, plus slack.
pub fn feasible_windows<R: Rng>(rng: &mut R, ttp: &TtpInstance) -> TimeWindows {
    let n = ttp.num_cities();
    let mut order: Vec<usize> = (1..n).collect();
    order.shuffle(rng);
    order.insert(0, 0);
    let mut bounds = vec![Window::open(); n];
    let mut t = 0.0;
    for w in order.windows(2) {
        t += oracle_distance(ttp.coords()[w[0]], ttp.coords()[w[1]]) / ttp.v_max();
        bounds[w[1]] = Window::new((t - rng.gen_range(0.0..40.0)).max(0.0), t + rng.gen_range(0.0..80.0));
    }
    TimeWindows { bounds, tightness: 0 }
}

pub fn with_windows(ttp: TtpInstance, tw: TimeWindows) -> TtptwInstance {
    attach_windows(ttp, tw).unwrap()
}

pub fn oracle_distance(a: (f64, f64), b: (f64, f64)) -> f64 {
    ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt().ceil()
}

pub struct Oracle {
    pub z: f64,
    pub cv: f64,
    pub weight: f64,
}

/// Direct simulation: leg speed from the weight carried out of each city,
/// waiting to the lower bound, lateness summed, rent on the total time.
pub fn oracle(inst: &TtptwInstance, order: &[usize], taken: &[bool]) -> Oracle {
    let ttp = &inst.ttp;
    let nu = (ttp.v_max() - ttp.v_min()) / ttp.capacity();
    let (mut t, mut cv, mut carried, mut profit) = (0.0, 0.0, 0.0, 0.0);
    for i in 0..order.len() {
        if i > 0 {
            let d = oracle_distance(ttp.coords()[order[i - 1]], ttp.coords()[order[i]]);
            let w = inst.windows.bounds[order[i]];
            t = f64::max(t + d / (ttp.v_max() - nu * carried), w.lower);
            cv += f64::max(0.0, t - w.upper);
        }
        for (it, _) in ttp.items().iter().zip(taken).filter(|(it, &k)| k && it.city == order[i]) {
            profit += it.profit;
            carried += it.weight;
        }
    }
    let back = oracle_distance(ttp.coords()[*order.last().unwrap()], ttp.coords()[order[0]]);
    Oracle { z: profit - ttp.rent() * (t + back / (ttp.v_max() - nu * carried)), cv, weight: carried }
}

/// Relative difference with an absolute floor of 1.
pub fn rel_err(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs()).max(1.0)
    }
}
