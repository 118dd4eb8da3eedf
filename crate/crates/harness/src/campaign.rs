//! Seeded multi-run campaigns and their CSV report.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use ttptw_core::dsea::{baseline_random_restart, solve, SolverConfig, Variant};
use ttptw_core::{RunResult, TtptwInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Solver {
    Dsea(Variant),
    Baseline,
}

impl Solver {
    pub const ALL: [Solver; 4] =
        [Solver::Dsea(Variant::Dsea1), Solver::Dsea(Variant::Dsea2), Solver::Dsea(Variant::Dsea3), Solver::Baseline];

    /// Runs with default parameters.
    pub fn run(self, inst: &TtptwInstance, fe_limit: u64, seed: u64) -> Result<RunResult, String> {
        match self {
            Solver::Dsea(v) => solve(inst, &SolverConfig::new(v, fe_limit, seed)).map_err(|e| e.to_string()),
            Solver::Baseline => Ok(baseline_random_restart(inst, fe_limit, seed)),
        }
    }
}

impl fmt::Display for Solver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Solver::Dsea(v) => v.fmt(f),
            Solver::Baseline => f.write_str("baseline"),
        }
    }
}

impl FromStr for Solver {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("baseline") {
            return Ok(Solver::Baseline);
        }
        s.parse::<Variant>().map(Solver::Dsea).map_err(|e| format!("{e} or baseline"))
    }
}

/// One instance with one window set.
#[derive(Debug, Clone)]
pub struct Case {
    pub label: String,
    pub l: i64,
    pub instance: TtptwInstance,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignSpec {
    pub solvers: Vec<Solver>,
    pub runs: usize,
    pub fe_limit: u64,
    pub base_seed: u64,
}

impl CampaignSpec {
    pub fn new(solvers: Vec<Solver>, runs: usize, fe_limit: u64, base_seed: u64) -> Result<Self, String> {
        if runs == 0 {
            return Err("runs must be at least 1".into());
        }
        if solvers.is_empty() {
            return Err("no solver selected".into());
        }
        Ok(CampaignSpec { solvers, runs, fe_limit, base_seed })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub instance: String,
    pub l: i64,
    pub variant: String,
    pub seed: u64,
    pub best_z: f64,
    pub cv: f64,
    pub feasible: bool,
    pub fe_used: u64,
    pub wall_ms: u64,
    #[serde(skip)]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub instance: String,
    pub l: i64,
    pub variant: String,
    pub runs: usize,
    pub mean_ob: f64,
    pub std_ob: f64,
    pub fr: f64,
    /// Mean over feasible runs only; empty when none is feasible.
    pub mean_ob_feasible: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignReport {
    pub rows: Vec<Row>,
    pub summaries: Vec<Summary>,
}

fn run_one(case: &Case, solver: Solver, fe_limit: u64, seed: u64) -> (Row, Option<RunResult>) {
    let start = Instant::now();
    let result = solver.run(&case.instance, fe_limit, seed);
    let wall_ms = start.elapsed().as_millis() as u64;
    let mut row = Row {
        instance: case.label.clone(),
        l: case.l,
        variant: solver.to_string(),
        seed,
        best_z: f64::NAN,
        cv: f64::NAN,
        feasible: false,
        fe_used: 0,
        wall_ms,
        error: None,
    };
    match result {
        Ok(r) => {
            row.best_z = r.fitness.objective;
            row.cv = r.fitness.violation;
            row.feasible = r.feasible;
            row.fe_used = r.fe_used;
            (row, Some(r))
        }
        Err(e) => {
            row.error = Some(e);
            (row, None)
        }
    }
}

/// Runs every (case, solver, seed) triple with seeds
/// `base_seed..base_seed + runs`. Results come back in grid order whatever
/// the thread schedule. The full run results are returned alongside.
pub fn run_campaign_with_results(cases: &[Case], spec: &CampaignSpec) -> (CampaignReport, Vec<Option<RunResult>>) {
    let jobs: Vec<(usize, Solver, u64)> = (0..cases.len())
        .flat_map(|c| {
            spec.solvers.iter().flat_map(move |&s| (0..spec.runs as u64).map(move |k| (c, s, spec.base_seed + k)))
        })
        .collect();
    let (rows, results): (Vec<Row>, Vec<Option<RunResult>>) =
        jobs.par_iter().map(|&(c, s, seed)| run_one(&cases[c], s, spec.fe_limit, seed)).unzip();
    let summaries = summarize(&rows);
    (CampaignReport { rows, summaries }, results)
}

pub fn run_campaign(cases: &[Case], spec: &CampaignSpec) -> CampaignReport {
    run_campaign_with_results(cases, spec).0
}

pub fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = if xs.len() > 1 { xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0) } else { 0.0 };
    (mean, var.sqrt())
}

/// Groups rows by (instance, l, variant) in first-seen order. Mean and std
/// are over all runs, feasible or not. Failed runs are ignored.
pub fn summarize(rows: &[Row]) -> Vec<Summary> {
    let mut groups: Vec<((String, i64, String), Vec<&Row>)> = Vec::new();
    for row in rows.iter().filter(|r| r.error.is_none()) {
        let key = (row.instance.clone(), row.l, row.variant.clone());
        match groups.iter_mut().find(|(k, _)| *k == key) {
            Some((_, g)) => g.push(row),
            None => groups.push((key, vec![row])),
        }
    }
    groups
        .into_iter()
        .map(|((instance, l, variant), g)| {
            let zs: Vec<f64> = g.iter().map(|r| r.best_z).collect();
            let feasible: Vec<f64> = g.iter().filter(|r| r.feasible).map(|r| r.best_z).collect();
            let (mean_ob, std_ob) = mean_std(&zs);
            Summary {
                instance,
                l,
                variant,
                runs: g.len(),
                mean_ob,
                std_ob,
                fr: feasible.len() as f64 / g.len() as f64,
                mean_ob_feasible: (!feasible.is_empty()).then(|| mean_std(&feasible).0),
            }
        })
        .collect()
}

/// Average rank of each variant across (instance, l) rows, ranking by
/// feasible rate first and mean objective second; ties share their rank.
pub fn average_ranks(summaries: &[Summary]) -> BTreeMap<String, f64> {
    let mut by_row: BTreeMap<(String, i64), Vec<&Summary>> = BTreeMap::new();
    for s in summaries {
        by_row.entry((s.instance.clone(), s.l)).or_default().push(s);
    }
    let mut totals: BTreeMap<String, (f64, usize)> = BTreeMap::new();
    for group in by_row.values() {
        let key = |s: &Summary| (s.fr, s.mean_ob);
        for s in group {
            let better = group.iter().filter(|o| key(o) > key(s)).count() as f64;
            let ties = group.iter().filter(|o| key(o) == key(s)).count() as f64;
            let rank = better + (ties + 1.0) / 2.0;
            let t = totals.entry(s.variant.clone()).or_insert((0.0, 0));
            t.0 += rank;
            t.1 += 1;
        }
    }
    totals.into_iter().map(|(v, (sum, k))| (v, sum / k as f64)).collect()
}

/// Writes the per-run rows, a blank line, then the summary block.
pub fn write_csv<W: Write>(report: &CampaignReport, out: W) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(out);
    w.write_record(["instance", "l", "variant", "seed", "best_z", "cv", "feasible", "fe_used", "wall_ms"])?;
    for r in &report.rows {
        w.write_record([
            r.instance.clone(),
            r.l.to_string(),
            r.variant.clone(),
            r.seed.to_string(),
            r.best_z.to_string(),
            r.cv.to_string(),
            r.feasible.to_string(),
            r.fe_used.to_string(),
            r.wall_ms.to_string(),
        ])?;
    }
    w.write_record([""])?;
    w.write_record(["instance", "l", "variant", "runs", "mean_ob", "std_ob", "fr", "mean_ob_feasible"])?;
    for s in &report.summaries {
        w.write_record([
            s.instance.clone(),
            s.l.to_string(),
            s.variant.clone(),
            s.runs.to_string(),
            s.mean_ob.to_string(),
            s.std_ob.to_string(),
            s.fr.to_string(),
            s.mean_ob_feasible.map_or(String::new(), |m| m.to_string()),
        ])?;
    }
    w.flush()?;
    Ok(())
}
