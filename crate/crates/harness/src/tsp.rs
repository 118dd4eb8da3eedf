//! Reference tours for type A windows and TSPLIB `.tour` files.
//!
//! The reference tour is a nearest-neighbour tour polished by 2-opt and
//! Or-opt, then refined by an iterated local search with double-bridge kicks.

use rand::Rng;
use thiserror::Error;
use ttptw_core::rng::child_rng;
use ttptw_core::{Tour, TourError, TtpInstance};

pub fn tour_length(ttp: &TtpInstance, order: &[usize]) -> f64 {
    let n = order.len();
    (0..n).map(|i| ttp.distance(order[i], order[(i + 1) % n])).sum()
}

pub fn nearest_neighbour(ttp: &TtpInstance) -> Vec<usize> {
    let n = ttp.num_cities();
    let mut visited = vec![false; n];
    visited[0] = true;
    let mut order = vec![0];
    for _ in 1..n {
        let last = *order.last().unwrap();
        let next = (0..n)
            .filter(|&c| !visited[c])
            .min_by(|&a, &b| ttp.distance(last, a).total_cmp(&ttp.distance(last, b)))
            .unwrap();
        visited[next] = true;
        order.push(next);
    }
    order
}

const EPS: f64 = 1e-9;

/// First-improvement 2-opt; the depot stays at position 0.
fn two_opt(ttp: &TtpInstance, order: &mut [usize]) -> bool {
    let n = order.len();
    let d = |a: usize, b: usize| ttp.distance(a, b);
    let mut improved_any = false;
    let mut improved = true;
    while improved {
        improved = false;
        for i in 1..n - 1 {
            for j in i + 1..n {
                let (a, b, c, e) = (order[i - 1], order[i], order[j], order[(j + 1) % n]);
                if d(a, c) + d(b, e) < d(a, b) + d(c, e) - EPS {
                    order[i..=j].reverse();
                    improved = true;
                    improved_any = true;
                }
            }
        }
    }
    improved_any
}

/// Moves segments of 1 to 3 cities elsewhere, optionally reversed.
fn or_opt(ttp: &TtpInstance, order: &mut Vec<usize>) -> bool {
    let n = order.len();
    let d = |a: usize, b: usize| ttp.distance(a, b);
    let mut improved_any = false;
    'restart: loop {
        for len in 1..=3.min(n.saturating_sub(2)) {
            for i in 1..=n - len {
                let (prev, first, last, next) = (order[i - 1], order[i], order[i + len - 1], order[(i + len) % n]);
                let removal = d(prev, first) + d(last, next) - d(prev, next);
                let rest: Vec<usize> = order[..i].iter().chain(&order[i + len..]).copied().collect();
                for p in 0..rest.len() {
                    let (a, b) = (rest[p], rest[(p + 1) % rest.len()]);
                    if p + 1 == i {
                        continue;
                    }
                    let forward = d(a, first) + d(last, b) - d(a, b);
                    let backward = d(a, last) + d(first, b) - d(a, b);
                    let (gain, reversed) = if backward < forward { (removal - backward, true) } else { (removal - forward, false) };
                    if gain > EPS {
                        let mut seg = order[i..i + len].to_vec();
                        if reversed {
                            seg.reverse();
                        }
                        let mut out = rest[..=p].to_vec();
                        out.extend(seg);
                        out.extend(&rest[p + 1..]);
                        *order = out;
                        improved_any = true;
                        continue 'restart;
                    }
                }
            }
        }
        return improved_any;
    }
}

fn local_search(ttp: &TtpInstance, order: &mut Vec<usize>) {
    loop {
        let a = two_opt(ttp, order);
        let b = or_opt(ttp, order);
        if !a && !b {
            break;
        }
    }
}

fn double_bridge<R: Rng>(order: &[usize], rng: &mut R) -> Vec<usize> {
    let n = order.len();
    let mut cuts = [0usize; 3];
    for c in &mut cuts {
        *c = rng.gen_range(1..n);
    }
    cuts.sort_unstable();
    let [p, q, r] = cuts;
    let mut out = order[..p].to_vec();
    out.extend(&order[r..]);
    out.extend(&order[q..r]);
    out.extend(&order[p..q]);
    out
}

/// Deterministic near-optimal tour. `kicks` bounds the perturbation rounds.
pub fn reference_tour(ttp: &TtpInstance, kicks: usize, seed: u64) -> Tour {
    let mut best = nearest_neighbour(ttp);
    let n = best.len();
    if n > 3 {
        local_search(ttp, &mut best);
        let mut best_len = tour_length(ttp, &best);
        let mut rng = child_rng(seed, 0x7359);
        for _ in 0..kicks {
            let mut cand = double_bridge(&best, &mut rng);
            local_search(ttp, &mut cand);
            let len = tour_length(ttp, &cand);
            if len < best_len - EPS {
                best = cand;
                best_len = len;
            }
        }
    }
    Tour::new(best).expect("local search keeps a permutation")
}

#[derive(Debug, Error)]
pub enum TourFileError {
    #[error("no TOUR_SECTION found")]
    NoSection,
    #[error("line {line}: `{token}` is not a city id")]
    BadToken { line: usize, token: String },
    #[error(transparent)]
    Tour(#[from] TourError),
}

/// Reads a TSPLIB tour. Ids are one-based; the tour is rotated so that
/// city 1 comes first.
pub fn parse_tour_file(text: &str) -> Result<Tour, TourFileError> {
    let mut ids = Vec::new();
    let mut in_section = false;
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if !in_section {
            in_section = line.starts_with("TOUR_SECTION");
            continue;
        }
        for tok in line.split_whitespace() {
            if tok == "-1" || tok == "EOF" {
                return finish(ids);
            }
            let id = tok.parse::<usize>().map_err(|_| TourFileError::BadToken { line: k + 1, token: tok.into() })?;
            ids.push(id);
        }
    }
    if !in_section {
        return Err(TourFileError::NoSection);
    }
    finish(ids)
}

fn finish(mut ids: Vec<usize>) -> Result<Tour, TourFileError> {
    if let Some(p) = ids.iter().position(|&c| c == 1) {
        ids.rotate_left(p);
    }
    Ok(Tour::from_one_based(&ids)?)
}

pub fn write_tour_file(name: &str, ttp: &TtpInstance, tour: &Tour) -> String {
    let mut out = format!(
        "NAME : {name}\nCOMMENT : Length {}\nTYPE : TOUR\nDIMENSION : {}\nTOUR_SECTION\n",
        tour_length(ttp, tour.order()),
        tour.len()
    );
    for id in tour.one_based() {
        out.push_str(&format!("{id}\n"));
    }
    out.push_str("-1\nEOF\n");
    out
}
