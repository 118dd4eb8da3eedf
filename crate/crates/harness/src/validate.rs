//! Independent re-checks of solutions and window families.

use std::fmt;

use ttptw_core::{Evaluation, PackingPlan, TimeWindows, Tour, TtptwInstance};

use crate::solution::SolutionFile;

/// One broken rule. City and item ids are one-based.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    TourLength { expected: usize, got: usize },
    CityOutOfRange { city: usize },
    DuplicateCity { city: usize },
    MissingCity { city: usize },
    NotStartingAtDepot { first: usize },
    ItemOutOfRange { item: usize },
    DuplicateItem { item: usize },
    OverCapacity { weight: f64, capacity: f64 },
    Late { city: usize, arrival: f64, upper: f64 },
    DepotWindow { l: i64 },
    InvertedWindow { l: i64, city: usize, lower: f64, upper: f64 },
    NotNested { city: usize, outer: i64, inner: i64 },
    CityCount { l: i64, expected: usize, got: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TourLength { expected, got } => write!(f, "tour has {got} cities, expected {expected}"),
            Violation::CityOutOfRange { city } => write!(f, "city {city} does not exist"),
            Violation::DuplicateCity { city } => write!(f, "city {city} visited more than once"),
            Violation::MissingCity { city } => write!(f, "city {city} never visited"),
            Violation::NotStartingAtDepot { first } => write!(f, "tour starts at city {first}, not 1"),
            Violation::ItemOutOfRange { item } => write!(f, "item {item} does not exist"),
            Violation::DuplicateItem { item } => write!(f, "item {item} listed more than once"),
            Violation::OverCapacity { weight, capacity } => write!(f, "weight {weight} exceeds capacity {capacity}"),
            Violation::Late { city, arrival, upper } => write!(f, "city {city} reached at {arrival}, window closes at {upper}"),
            Violation::DepotWindow { l } => write!(f, "l={l}: depot window is not (0, inf)"),
            Violation::InvertedWindow { l, city, lower, upper } => {
                write!(f, "l={l}: city {city} has lower bound {lower} above upper bound {upper}")
            }
            Violation::NotNested { city, outer, inner } => {
                write!(f, "city {city}: window for l={inner} is not inside the window for l={outer}")
            }
            Violation::CityCount { l, expected, got } => write!(f, "l={l}: {got} windows, expected {expected}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolutionReport {
    pub violations: Vec<Violation>,
    /// Present when the tour and items are structurally valid.
    pub evaluation: Option<Evaluation>,
}

impl SolutionReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_tour(n: usize, ids: &[usize], out: &mut Vec<Violation>) {
    if ids.len() != n {
        out.push(Violation::TourLength { expected: n, got: ids.len() });
    }
    if let Some(&first) = ids.first() {
        if first != 1 {
            out.push(Violation::NotStartingAtDepot { first });
        }
    }
    let mut seen = vec![false; n];
    for &c in ids {
        if c == 0 || c > n {
            out.push(Violation::CityOutOfRange { city: c });
        } else if std::mem::replace(&mut seen[c - 1], true) {
            out.push(Violation::DuplicateCity { city: c });
        }
    }
    out.extend(seen.iter().enumerate().filter(|(_, &s)| !s).map(|(i, _)| Violation::MissingCity { city: i + 1 }));
}

/// Checks permutation, item ids, capacity and every window.
pub fn validate_solution(inst: &TtptwInstance, sol: &SolutionFile) -> SolutionReport {
    let (n, m) = (inst.num_cities(), inst.num_items());
    let mut violations = Vec::new();
    check_tour(n, &sol.tour, &mut violations);
    let mut plan = PackingPlan::empty(m);
    for &j in &sol.items {
        if j == 0 || j > m {
            violations.push(Violation::ItemOutOfRange { item: j });
        } else if plan.is_taken(j - 1) {
            violations.push(Violation::DuplicateItem { item: j });
        } else {
            plan.set(j - 1, true);
        }
    }
    if !violations.is_empty() {
        return SolutionReport { violations, evaluation: None };
    }
    let tour = Tour::from_one_based(&sol.tour).expect("checked above");
    let eval = Evaluation::compute(inst, &tour, &plan);
    if !eval.capacity_ok {
        violations.push(Violation::OverCapacity { weight: eval.total_weight, capacity: inst.ttp.capacity() });
    }
    for (pos, &city) in tour.order().iter().enumerate() {
        let upper = inst.window(city).upper;
        if eval.arrivals[pos] > upper {
            violations.push(Violation::Late { city: city + 1, arrival: eval.arrivals[pos], upper });
        }
    }
    SolutionReport { violations, evaluation: Some(eval) }
}

/// Checks each set on its own and containment between consecutive
/// tightness values. Sets are sorted widest first before comparing.
pub fn validate_family(sets: &[TimeWindows]) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut sorted: Vec<&TimeWindows> = sets.iter().collect();
    sorted.sort_by(|a, b| b.tightness.cmp(&a.tightness));
    let n = sorted.first().map_or(0, |s| s.len());
    for s in &sorted {
        let l = s.tightness;
        if s.len() != n {
            out.push(Violation::CityCount { l, expected: n, got: s.len() });
            continue;
        }
        if let Some(d) = s.bounds.first() {
            if d.lower != 0.0 || d.upper != f64::INFINITY {
                out.push(Violation::DepotWindow { l });
            }
        }
        for (i, w) in s.bounds.iter().enumerate() {
            if w.lower > w.upper {
                out.push(Violation::InvertedWindow { l, city: i + 1, lower: w.lower, upper: w.upper });
            }
        }
    }
    for pair in sorted.windows(2) {
        let (outer, inner) = (pair[0], pair[1]);
        if outer.len() != inner.len() {
            continue;
        }
        for (i, (o, w)) in outer.bounds.iter().zip(&inner.bounds).enumerate() {
            if !o.contains_window(w) {
                out.push(Violation::NotNested { city: i + 1, outer: outer.tightness, inner: inner.tightness });
            }
        }
    }
    out
}
