//! Solution files and run reports.
//!
//! A solution file has two lines with one-based ids:
//!
//! ```text
//! TOUR: 1 4 3 2
//! ITEMS: 1 3
//! ```

use serde::Serialize;
use thiserror::Error;
use ttptw_core::{RunResult, Tour};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionFile {
    /// One-based city ids, unvalidated.
    pub tour: Vec<usize>,
    /// One-based item ids, unvalidated.
    pub items: Vec<usize>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolutionError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("missing `{0}` line")]
    Missing(&'static str),
}

fn ids(line: usize, text: &str) -> Result<Vec<usize>, SolutionError> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| SolutionError::Parse { line, message: format!("`{t}` is not an id") }))
        .collect()
}

impl SolutionFile {
    pub fn new(tour: &Tour, items: impl IntoIterator<Item = usize>) -> Self {
        SolutionFile { tour: tour.one_based(), items: items.into_iter().map(|j| j + 1).collect() }
    }

    pub fn parse(text: &str) -> Result<Self, SolutionError> {
        let (mut tour, mut items) = (None, None);
        for (k, line) in text.lines().enumerate() {
            let line = line.trim();
            if let Some(rest) = line.strip_prefix("TOUR:") {
                tour = Some(ids(k + 1, rest)?);
            } else if let Some(rest) = line.strip_prefix("ITEMS:") {
                items = Some(ids(k + 1, rest)?);
            } else if !line.is_empty() && !line.starts_with('#') {
                return Err(SolutionError::Parse { line: k + 1, message: format!("unexpected `{line}`") });
            }
        }
        Ok(SolutionFile { tour: tour.ok_or(SolutionError::Missing("TOUR:"))?, items: items.ok_or(SolutionError::Missing("ITEMS:"))? })
    }

    pub fn to_text(&self) -> String {
        let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        format!("TOUR: {}\nITEMS: {}\n", join(&self.tour), join(&self.items))
    }
}

/// JSON shape of one solver run, with one-based ids.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub instance: String,
    pub solver: String,
    pub seed: u64,
    pub fe_limit: u64,
    pub fe_used: u64,
    pub z: f64,
    pub cv: f64,
    pub capacity_ok: bool,
    pub feasible: bool,
    pub tour: Vec<usize>,
    pub items: Vec<usize>,
    pub loops: u64,
    pub mutations: u64,
    pub trace: Vec<(u64, f64, f64)>,
}

impl RunReport {
    pub fn new(instance: &str, solver: &str, r: &RunResult) -> Self {
        RunReport {
            instance: instance.into(),
            solver: solver.into(),
            seed: r.seed,
            fe_limit: r.fe_limit,
            fe_used: r.fe_used,
            z: r.fitness.objective,
            cv: r.fitness.violation,
            capacity_ok: r.fitness.capacity_ok,
            feasible: r.feasible,
            tour: r.tour.one_based(),
            items: r.plan.taken_items().map(|j| j + 1).collect(),
            loops: r.loops,
            mutations: r.mutations,
            trace: r.trace.iter().map(|p| (p.fe, p.z, p.cv)).collect(),
        }
    }

    pub fn solution(&self) -> SolutionFile {
        SolutionFile { tour: self.tour.clone(), items: self.items.clone() }
    }

    /// `fe,z,cv` lines of the improvement trace.
    pub fn trace_csv(&self) -> String {
        let mut out = String::from("fe,z,cv\n");
        for (fe, z, cv) in &self.trace {
            out.push_str(&format!("{fe},{z},{cv}\n"));
        }
        out
    }
}
