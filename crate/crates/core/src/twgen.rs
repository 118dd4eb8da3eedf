//! Time-window generation.
//!
//! Windows are built around the arrival times of a reference tour driven at
//! constant maximum speed (`t`) and constant minimum speed (`t'`):
//!
//! ```text
//! L_i = max(0, min(t_i - r, t'_i))
//! U_i = max(t'_i + r', t_i)
//! ```
//!
//! with `r, r'` drawn uniformly between `0` and the tightness `l` (which may
//! be negative). A family is generated for several tightness values at once
//! and nested so that a larger `l` always yields a wider window.

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::evaluation::{Evaluation, PackingPlan, Tour, TourError};
use crate::instance::{TimeWindows, TtpInstance, TtptwInstance, Window, WindowHeader, WindowType};
use crate::rng::{child_rng, streams, uniform_tour};
use crate::scalar::Scalar;

/// Tightness values of the published benchmark, widest first.
pub const STANDARD_TIGHTNESS: [i64; 4] = [1000, 100, -100, -1000];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TwGenError {
    #[error("tightness 0 is not allowed")]
    ZeroTightness,
    #[error("tightness {0} listed twice")]
    DuplicateTightness(i64),
    #[error("no tightness values requested")]
    NoTightness,
    #[error("type A windows need a reference tour")]
    MissingTour,
    #[error("reference tour: {0}")]
    Tour(#[from] TourError),
}

/// Reference arrival times per city at `v_max` (`fast`) and `v_min` (`slow`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReferenceTimes<S> {
    pub fast: Vec<S>,
    pub slow: Vec<S>,
}

/// Cumulative leg distances divided by each constant speed; no items, no waiting.
pub fn reference_arrivals<S: Scalar>(inst: &TtpInstance<S>, tour: &Tour) -> ReferenceTimes<S> {
    let n = inst.num_cities();
    let mut fast = vec![S::zero(); n];
    let mut slow = vec![S::zero(); n];
    let mut dist = S::zero();
    for w in tour.order().windows(2) {
        dist = dist + inst.distance(w[0], w[1]);
        fast[w[1]] = dist / inst.v_max();
        slow[w[1]] = dist / inst.v_min();
    }
    ReferenceTimes { fast, slow }
}

/// Uniform draw between 0 and `l`, in whichever order the sign implies.
pub fn draw_offset<S: Scalar, R: Rng + ?Sized>(l: i64, rng: &mut R) -> S {
    let (lo, hi) = if l < 0 { (l as f64, 0.0) } else { (0.0, l as f64) };
    S::lit(rng.gen_range(lo..=hi))
}

/// Applies the window formulas with offsets supplied by `draw`, which is
/// called twice per non-depot city (lower offset first).
pub fn windows_from_draws<S: Scalar>(
    reference: &ReferenceTimes<S>,
    l: i64,
    mut draw: impl FnMut() -> S,
) -> TimeWindows<S> {
    let n = reference.fast.len();
    let mut bounds = Vec::with_capacity(n);
    bounds.push(Window::open());
    for i in 1..n {
        let (t, t_slow) = (reference.fast[i], reference.slow[i]);
        let lower_offset = draw();
        let upper_offset = draw();
        let lower = S::zero().max((t - lower_offset).min(t_slow));
        let upper = (t_slow + upper_offset).max(t);
        bounds.push(Window::new(lower.min(upper), upper));
    }
    TimeWindows { bounds, tightness: l }
}

/// Samples one window set for tightness `l`.
pub fn sample_windows<S: Scalar, R: Rng + ?Sized>(reference: &ReferenceTimes<S>, l: i64, rng: &mut R) -> TimeWindows<S> {
    assert!(l != 0, "tightness must be non-zero");
    windows_from_draws(reference, l, || draw_offset(l, rng))
}

/// Generation request.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwGenSpec {
    pub tightness: Vec<i64>,
    pub kind: WindowType,
    pub seed: u64,
}

impl TwGenSpec {
    pub fn standard(kind: WindowType, seed: u64) -> Self {
        TwGenSpec { tightness: STANDARD_TIGHTNESS.to_vec(), kind, seed }
    }

    /// Distinct, non-zero tightness values sorted widest first.
    pub fn sorted_tightness(&self) -> Result<Vec<i64>, TwGenError> {
        if self.tightness.is_empty() {
            return Err(TwGenError::NoTightness);
        }
        let mut ls = self.tightness.clone();
        ls.sort_unstable_by(|a, b| b.cmp(a));
        for w in ls.windows(2) {
            if w[0] == w[1] {
                return Err(TwGenError::DuplicateTightness(w[0]));
            }
        }
        if ls.contains(&0) {
            return Err(TwGenError::ZeroTightness);
        }
        Ok(ls)
    }
}

/// Nested window sets for one instance, widest tightness first.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WindowFamily<S> {
    pub kind: WindowType,
    pub seed: u64,
    pub reference_tour: Tour,
    pub reference: ReferenceTimes<S>,
    pub windows: Vec<TimeWindows<S>>,
}

impl<S: Scalar> WindowFamily<S> {
    pub fn get(&self, l: i64) -> Option<&TimeWindows<S>> {
        self.windows.iter().find(|w| w.tightness == l)
    }

    pub fn header(&self, base: &str, l: i64) -> WindowHeader {
        WindowHeader { base: base.to_string(), tightness: l, kind: self.kind, seed: self.seed }
    }

    /// `true` when the reference tour, with an empty knapsack and waiting,
    /// satisfies every window of tightness `l`.
    pub fn reference_feasible(&self, ttp: &TtpInstance<S>, l: i64) -> Option<bool> {
        let windows = self.get(l)?.clone();
        Some(audit_feasibility(ttp, &self.reference_tour, windows))
    }
}

/// Checks whether `tour` with an empty plan meets every window.
pub fn audit_feasibility<S: Scalar>(ttp: &TtpInstance<S>, tour: &Tour, windows: TimeWindows<S>) -> bool {
    let inst = TtptwInstance { ttp: ttp.clone(), windows, alias: String::new() };
    Evaluation::compute(&inst, tour, &PackingPlan::empty(ttp.num_items())).is_feasible()
}

/// Restricts `inner` to lie within `outer`, keeping `L <= U`.
fn nest_into<S: Scalar>(inner: &mut TimeWindows<S>, outer: &TimeWindows<S>) {
    for (w, o) in inner.bounds.iter_mut().zip(&outer.bounds) {
        let lower = w.lower.max(o.lower).min(o.upper);
        let upper = w.upper.min(o.upper).max(o.lower);
        *w = Window::new(lower.min(upper), upper);
    }
}

/// Generates one window set per requested tightness and nests them.
///
/// Type A uses `tour` as the reference; type B draws a uniform random tour
/// from the seed and ignores `tour`. Each tightness draws from its own
/// stream, so the set for one `l` does not depend on which others are
/// requested (before nesting).
pub fn generate_nested<S: Scalar>(
    inst: &TtpInstance<S>,
    spec: &TwGenSpec,
    tour: Option<&Tour>,
) -> Result<WindowFamily<S>, TwGenError> {
    let ls = spec.sorted_tightness()?;
    let n = inst.num_cities();
    let reference_tour = match spec.kind {
        WindowType::A => {
            let t = tour.ok_or(TwGenError::MissingTour)?;
            t.check_len(n)?;
            t.clone()
        }
        WindowType::B => uniform_tour(n, &mut child_rng(spec.seed, streams::WINDOW_TOUR)),
    };
    let reference = reference_arrivals(inst, &reference_tour);
    let mut windows: Vec<TimeWindows<S>> = Vec::with_capacity(ls.len());
    for &l in &ls {
        let mut rng = child_rng(spec.seed, streams::WINDOW_BASE ^ (l as u64));
        let mut tw = sample_windows(&reference, l, &mut rng);
        if let Some(outer) = windows.last() {
            nest_into(&mut tw, outer);
        }
        windows.push(tw);
    }
    Ok(WindowFamily { kind: spec.kind, seed: spec.seed, reference_tour, reference, windows })
}
