//! Acceptance campaign. Prints one line per criterion and exits non-zero
//! when a hard criterion fails.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use common::*;
use rand::seq::SliceRandom;
use rand::Rng;
use ttptw_core::dsea::{solve, SolverConfig, Variant};
use ttptw_core::packing::{pack, pack_iterative, PackParams};
use ttptw_core::rng::child_rng;
use ttptw_core::tourinit::{initialize_tour, DEFAULT_PENALTY};
use ttptw_core::twgen::{generate_nested, TwGenSpec, WindowFamily};
use ttptw_core::{
    compare, evaluate, ttp_objective, EvaluationBudget, Fitness, PackingPlan, RunResult, TimeWindows, Tour,
    TtpInstance, TtptwInstance, WindowType,
};
use ttptw_harness::bruteforce::brute_force;
use ttptw_harness::campaign::{average_ranks, run_campaign_with_results, CampaignSpec, Case, Solver, Summary};
use ttptw_harness::synth::{synthesize, KnapsackKind, SynthSpec};
use ttptw_harness::validate::validate_family;

const ORACLE_TOL: f64 = 1e-9;
const ORACLE_INSTANCES: u64 = 200;
const ORACLE_PAIRS: usize = 1000;
const OPEN_INSTANCES: u64 = 50;
const MICRO_INSTANCES: u64 = 25;
const MICRO_SEEDS: u64 = 20;
const MICRO_FE: u64 = 50_000;
const MICRO_HIT_RATE: f64 = 0.9;
const OPTIMUM_TOL: f64 = 1e-9;
const FAMILY_SEEDS: u64 = 10;
const DESK_RUNS: usize = 10;
const DESK_FE: u64 = 1_000_000;
const RANK_RUNS_150: usize = 5;
const WINDOW_SEED: u64 = 7;
const POSITIVE_ROWS: [i64; 3] = [100, 1000, -100];

struct Outcome {
    id: u8,
    hard: bool,
    pass: bool,
    detail: String,
}

impl Outcome {
    fn line(&self) -> String {
        let status = match (self.hard, self.pass) {
            (true, true) => "PASS",
            (true, false) => "FAIL",
            (false, true) => "PASS (soft)",
            (false, false) => "FAIL (soft)",
        };
        format!("criterion {}: {status} - {}", self.id, self.detail)
    }
}

fn random_tour<R: Rng>(rng: &mut R, n: usize) -> Tour {
    let mut rest: Vec<usize> = (1..n).collect();
    rest.shuffle(rng);
    let mut order = vec![0];
    order.extend(rest);
    Tour::new(order).unwrap()
}

fn random_plan<R: Rng>(rng: &mut R, m: usize) -> PackingPlan {
    PackingPlan::from_bits((0..m).map(|_| rng.gen_bool(0.5)).collect())
}

fn criterion_1() -> Outcome {
    let (mut max_err, mut pairs, mut flag_errors) = (0.0f64, 0usize, 0usize);
    for seed in 0..ORACLE_INSTANCES {
        let mut rng = child_rng(seed, 100);
        let (n, m) = (rng.gen_range(2..=7), rng.gen_range(1..=6));
        let ttp = random_ttp(&mut rng, n, m);
        let inst = with_windows(ttp, random_windows(&mut rng, n));
        let mut budget = EvaluationBudget::unlimited();
        for _ in 0..ORACLE_PAIRS {
            let (tour, plan) = (random_tour(&mut rng, n), random_plan(&mut rng, m));
            let got = evaluate(&inst, &tour, &plan, &mut budget).unwrap();
            let want = oracle(&inst, tour.order(), plan.bits());
            pairs += 1;
            if got.capacity_ok != (want.weight <= inst.ttp.capacity()) {
                flag_errors += 1;
            }
            // Speeds are only defined up to the capacity.
            if got.capacity_ok {
                max_err = max_err.max(rel_err(got.objective, want.z)).max(rel_err(got.violation, want.cv));
            }
        }
    }
    Outcome {
        id: 1,
        hard: true,
        pass: max_err <= ORACLE_TOL && flag_errors == 0,
        detail: format!(
            "evaluator vs direct simulation on {ORACLE_INSTANCES} instances x {ORACLE_PAIRS} pairs ({pairs}): \
             max rel err {max_err:.2e} (tol {ORACLE_TOL:.0e}), capacity flag mismatches {flag_errors}"
        ),
    }
}

fn criterion_2() -> Outcome {
    let (mut mismatches, mut nonzero_cv, mut pairs) = (0, 0, 0);
    for seed in 0..OPEN_INSTANCES {
        let mut rng = child_rng(seed, 200);
        let (n, m) = (rng.gen_range(2..=30), rng.gen_range(1..=40));
        let ttp = random_ttp(&mut rng, n, m);
        let inst = TtptwInstance::open(ttp);
        for _ in 0..200 {
            let tour = random_tour(&mut rng, n);
            let mut plan = random_plan(&mut rng, m);
            while plan.total_weight(&inst.ttp) > inst.ttp.capacity() {
                let j = plan.taken_items().next().unwrap();
                plan.set(j, false);
            }
            let e = evaluate(&inst, &tour, &plan, &mut EvaluationBudget::unlimited()).unwrap();
            pairs += 1;
            if e.objective.to_bits() != ttp_objective(&inst.ttp, &tour, &plan).to_bits() {
                mismatches += 1;
            }
            if e.violation != 0.0 {
                nonzero_cv += 1;
            }
        }
    }
    Outcome {
        id: 2,
        hard: true,
        pass: mismatches == 0 && nonzero_cv == 0,
        detail: format!(
            "open windows vs windowless objective on {OPEN_INSTANCES} instances ({pairs} pairs): \
             {mismatches} bitwise mismatches, {nonzero_cv} with cv != 0"
        ),
    }
}

fn same_value(a: &Fitness<f64>, b: &Fitness<f64>) -> bool {
    a.capacity_ok == b.capacity_ok && a.violation == b.violation && rel_err(a.objective, b.objective) <= OPTIMUM_TOL
}

/// Whether any exponent in a wide grid lets pack rebuild the optimal plan
/// on the optimal tour. Items in one city keep their profit/weight order for
/// every exponent, so some plans are out of reach.
fn pack_reaches(inst: &TtptwInstance, tour: &Tour, best: &Fitness<f64>) -> bool {
    let mut budget = EvaluationBudget::unlimited();
    let grid = [0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0];
    let mut found = grid.iter().any(|&a| {
        pack(inst, tour, a, &mut budget).evaluation.is_some_and(|e| same_value(&e.fitness(), best))
    });
    found |= pack_iterative(inst, tour, &PackParams::default(), &mut budget)
        .evaluation
        .is_some_and(|e| same_value(&e.fitness(), best));
    found
}

fn criterion_3(runs: &mut Vec<RunResult>) -> Outcome {
    let mut worst = (u64::MAX, 0u64);
    let mut failing = Vec::new();
    for k in 0..MICRO_INSTANCES {
        let mut rng = child_rng(k, 300);
        let n = 3 + (k as usize % 4);
        let m = 1 + (k as usize * 3 % 8);
        let ttp = random_ttp(&mut rng, n, m);
        let tw = feasible_windows(&mut rng, &ttp);
        let inst = with_windows(ttp, tw);
        let opt = brute_force(&inst).expect("within the brute-force guard");
        let mut hits = 0;
        for seed in 0..MICRO_SEEDS {
            let r = solve(&inst, &SolverConfig::new(Variant::Dsea1, MICRO_FE, seed)).unwrap();
            if same_value(&r.fitness, &opt.eval.fitness()) {
                hits += 1;
            }
            runs.push(r);
        }
        if hits < worst.0 {
            worst = (hits, k);
        }
        if (hits as f64) < MICRO_HIT_RATE * MICRO_SEEDS as f64 {
            let reach = if pack_reaches(&inst, &opt.tour, &opt.eval.fitness()) { "reachable" } else { "unreachable" };
            failing.push(format!("#{k} (n={n}, m={m}, {hits}/{MICRO_SEEDS}, optimum plan {reach} by pack on the optimal tour)"));
        }
    }
    Outcome {
        id: 3,
        hard: true,
        pass: failing.is_empty(),
        detail: format!(
            "DSEA1 at {MICRO_FE} FE hits the brute-force optimum in >= {:.0}% of {MICRO_SEEDS} seeds on {MICRO_INSTANCES} \
             instances; worst #{} with {}/{MICRO_SEEDS}{}",
            MICRO_HIT_RATE * 100.0,
            worst.1,
            worst.0,
            if failing.is_empty() { String::new() } else { format!("; failing {}", failing.join(", ")) }
        ),
    }
}

struct DeskInstance {
    spec: SynthSpec,
    ttp: TtpInstance,
    tour: Tour,
}

fn desk_instance(spec: SynthSpec) -> DeskInstance {
    let (ttp, tour) = synthesize(&spec);
    DeskInstance { spec, ttp, tour }
}

fn family(d: &DeskInstance, kind: WindowType, seed: u64) -> WindowFamily<f64> {
    generate_nested(&d.ttp, &TwGenSpec::standard(kind, seed), Some(&d.tour)).unwrap()
}

/// Empty-plan reference tour checked with the direct simulation.
fn oracle_feasible(ttp: &TtpInstance, tour: &Tour, tw: &TimeWindows) -> bool {
    let inst = with_windows(ttp.clone(), tw.clone());
    oracle(&inst, tour.order(), &vec![false; ttp.num_items()]).cv == 0.0
}

fn criterion_4(instances: &[&DeskInstance]) -> Outcome {
    let (mut families, mut problems) = (0, Vec::new());
    for d in instances {
        for kind in [WindowType::A, WindowType::B] {
            for seed in 0..FAMILY_SEEDS {
                let fam = family(d, kind, seed);
                families += 1;
                let v = validate_family(&fam.windows);
                if !v.is_empty() {
                    problems.push(format!("{} {kind} seed {seed}: {}", d.spec.name(), v[0]));
                }
                for tw in fam.windows.iter().filter(|tw| tw.tightness > 0) {
                    if !oracle_feasible(&d.ttp, &fam.reference_tour, tw) {
                        problems.push(format!("{} {kind} seed {seed}: reference late at l={}", d.spec.name(), tw.tightness));
                    }
                }
            }
        }
    }
    Outcome {
        id: 4,
        hard: true,
        pass: problems.is_empty(),
        detail: format!(
            "{families} families ({} instances x types A/B x {FAMILY_SEEDS} seeds): containment, L <= U and \
             reference feasibility for l > 0 {}",
            instances.len(),
            if problems.is_empty() { "hold".to_string() } else { format!("broken: {}", problems.join("; ")) }
        ),
    }
}

struct DeskCampaign {
    summaries: Vec<Summary>,
    runs: Vec<RunResult>,
    audit: BTreeMap<(String, i64), bool>,
}

fn desk_cases(d: &DeskInstance, audit: &mut BTreeMap<(String, i64), bool>) -> Vec<Case> {
    let fam = family(d, WindowType::A, WINDOW_SEED);
    let alias = ttptw_core::instance_alias(&format!("{}.ttp", d.spec.name()), WindowType::A);
    fam.windows
        .iter()
        .map(|tw| {
            audit.insert((alias.clone(), tw.tightness), oracle_feasible(&d.ttp, &fam.reference_tour, tw));
            let instance = with_windows(d.ttp.clone(), tw.clone()).with_alias(alias.clone());
            Case { label: alias.clone(), l: tw.tightness, instance }
        })
        .collect()
}

fn run_desk(instances: &[&DeskInstance], solvers: Vec<Solver>, runs: usize) -> DeskCampaign {
    let mut audit = BTreeMap::new();
    let cases: Vec<Case> = instances.iter().flat_map(|d| desk_cases(d, &mut audit)).collect();
    let spec = CampaignSpec::new(solvers, runs, DESK_FE, 0).unwrap();
    let (report, results) = run_campaign_with_results(&cases, &spec);
    DeskCampaign { summaries: report.summaries, runs: results.into_iter().flatten().collect(), audit }
}

fn print_table(summaries: &[Summary]) {
    println!("{:<8} {:>6} {:<9} {:>10} {:>9} {:>5}", "instance", "l", "variant", "mean OB", "std OB", "FR");
    for s in summaries {
        println!(
            "{:<8} {:>6} {:<9} {:>10.2} {:>9.2} {:>4.0}%",
            s.instance,
            s.l,
            s.variant,
            s.mean_ob,
            s.std_ob,
            100.0 * s.fr
        );
    }
}

fn criterion_5(c: &DeskCampaign) -> Outcome {
    let mut problems = Vec::new();
    let find = |inst: &str, l: i64, v: &str| c.summaries.iter().find(|s| s.instance == inst && s.l == l && s.variant == v);
    let mut infeasible_rows = 0;
    for ((inst, l), &reference_ok) in &c.audit {
        let baseline = find(inst, *l, "baseline").expect("baseline row");
        let feasible_row = POSITIVE_ROWS.contains(l) || reference_ok;
        for v in Variant::ALL {
            let s = find(inst, *l, v.as_str()).expect("variant row");
            if POSITIVE_ROWS.contains(l) && s.fr < 1.0 {
                problems.push(format!("(a) {inst} l={l} {v} FR {:.0}%", 100.0 * s.fr));
            }
            if *l == -1000 && !reference_ok && s.fr > 0.0 {
                problems.push(format!("(b) {inst} l={l} {v} FR {:.0}%", 100.0 * s.fr));
            }
            if feasible_row && s.mean_ob <= baseline.mean_ob {
                problems.push(format!("(c) {inst} l={l} {v} mean {:.2} <= baseline {:.2}", s.mean_ob, baseline.mean_ob));
            }
        }
        if *l == -1000 && !reference_ok {
            infeasible_rows += 1;
        }
    }
    Outcome {
        id: 5,
        hard: true,
        pass: problems.is_empty(),
        detail: format!(
            "51-city type A campaign, {DESK_RUNS} runs x {DESK_FE} FE: (a) FR 100% at l in {{100, 1000, -100}}, \
             (b) FR 0% on {infeasible_rows} audit-infeasible l=-1000 rows, (c) every DSEA mean above baseline on \
             feasible rows{}",
            if problems.is_empty() { String::new() } else { format!("; violated: {}", problems.join("; ")) }
        ),
    }
}

fn criterion_6(summaries: &[Summary]) -> Outcome {
    let dsea: Vec<Summary> = summaries.iter().filter(|s| s.variant != "baseline").cloned().collect();
    let ranks = average_ranks(&dsea);
    let text = ranks.iter().map(|(v, r)| format!("{v} {r:.2}")).collect::<Vec<_>>().join(", ");
    Outcome {
        id: 6,
        hard: false,
        pass: ranks["dsea1"] <= ranks["dsea2"],
        detail: format!("average ranks over 51- and 150-city rows: {text} (want dsea1 <= dsea2)"),
    }
}

fn trace_ok(r: &RunResult) -> bool {
    let fit = |z: f64, cv: f64| Fitness { objective: z, violation: cv, capacity_ok: true };
    let improving = r.trace.windows(2).all(|w| compare(&fit(w[1].z, w[1].cv), &fit(w[0].z, w[0].cv)).is_gt());
    let last = r.trace.last().map(|p| fit(p.z, p.cv)) == Some(r.fitness);
    improving && last && r.fe_used <= r.fe_limit
}

fn criterion_7(runs: &[RunResult]) -> Outcome {
    let bad = runs.iter().filter(|r| !trace_ok(r)).count();
    let over = runs.iter().filter(|r| r.fe_used > r.fe_limit).count();
    Outcome {
        id: 7,
        hard: true,
        pass: bad == 0 && !runs.is_empty(),
        detail: format!("{} runs from criteria 3 and 5: {bad} with a non-improving trace, {over} over budget", runs.len()),
    }
}

fn criterion_8(d: &DeskInstance) -> Outcome {
    let (mut feasible, mut late) = (0, Vec::new());
    for seed in 0..FAMILY_SEEDS {
        let fam = family(d, WindowType::A, seed);
        let tw = fam.get(1000).unwrap().clone();
        let inst = with_windows(d.ttp.clone(), tw);
        let (tour, _) = initialize_tour(&inst, DEFAULT_PENALTY, &mut EvaluationBudget::unlimited());
        let cv = oracle(&inst, tour.order(), &vec![false; inst.num_items()]).cv;
        if cv == 0.0 {
            feasible += 1;
        } else {
            late.push(format!("seed {seed} cv {cv:.2}"));
        }
    }
    Outcome {
        id: 8,
        hard: true,
        pass: feasible == FAMILY_SEEDS,
        detail: format!(
            "initial tour on-time with an empty knapsack in {feasible}/{FAMILY_SEEDS} l=1000 families on 51-A{}",
            if late.is_empty() { String::new() } else { format!("; late: {}", late.join(", ")) }
        ),
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut outcomes = Vec::new();
    let mut traced: Vec<RunResult> = Vec::new();

    outcomes.push(criterion_1());
    outcomes.push(criterion_2());
    outcomes.push(criterion_3(&mut traced));

    let bsc = KnapsackKind::BoundedStronglyCorrelated;
    let a51 = desk_instance(SynthSpec::eil51(bsc, 1, 1));
    let a51_2 = desk_instance(SynthSpec::eil51(bsc, 2, 1));
    let u51 = desk_instance(SynthSpec::eil51(KnapsackKind::Uncorrelated, 1, 1));
    let a150 = desk_instance(SynthSpec::random("rand150", 150, 700, bsc, 1, 1));
    outcomes.push(criterion_4(&[&a51, &u51, &a150]));

    let desk = run_desk(&[&a51, &a51_2], Solver::ALL.to_vec(), DESK_RUNS);
    println!("desk campaign, 51-city rows:");
    print_table(&desk.summaries);
    outcomes.push(criterion_5(&desk));
    traced.extend(desk.runs.iter().cloned());

    let dsea_only: Vec<Solver> = Variant::ALL.iter().map(|&v| Solver::Dsea(v)).collect();
    let big = run_desk(&[&a150], dsea_only, RANK_RUNS_150);
    println!("desk campaign, 150-city rows ({RANK_RUNS_150} runs):");
    print_table(&big.summaries);
    let mut all = desk.summaries.clone();
    all.extend(big.summaries.iter().cloned());
    outcomes.push(criterion_6(&all));

    outcomes.push(criterion_7(&traced));
    outcomes.push(criterion_8(&a51));

    for o in &outcomes {
        println!("{}", o.line());
    }
    println!("acceptance finished in {:.1} s", start.elapsed().as_secs_f64());
    if outcomes.iter().any(|o| o.hard && !o.pass) {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
