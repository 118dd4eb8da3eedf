use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use ttptw_core::twgen::{generate_nested, TwGenSpec};
use ttptw_core::{
    attach_windows, instance_alias, parse_window_file, write_window_file, Tour, TtpInstance, TtptwInstance,
    WindowType,
};
use ttptw_harness::bruteforce::brute_force;
use ttptw_harness::campaign::{average_ranks, run_campaign, write_csv, CampaignSpec, Case, Solver};
use ttptw_harness::solution::{RunReport, SolutionFile};
use ttptw_harness::synth::{synthesize, KnapsackKind, SynthSpec};
use ttptw_harness::tsp::{parse_tour_file, reference_tour, write_tour_file};
use ttptw_harness::validate::{validate_family, validate_solution};

#[derive(Parser)]
#[command(name = "ttptw", version, about = "Traveling thief problem with time windows")]
struct Cli {
    /// Directory for generated files when no explicit path is given.
    #[arg(long, global = true, env = "TTPTW_OUT_DIR", default_value = ".")]
    out_dir: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TypeArg {
    A,
    B,
}

impl From<TypeArg> for WindowType {
    fn from(t: TypeArg) -> Self {
        match t {
            TypeArg::A => WindowType::A,
            TypeArg::B => WindowType::B,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a nested family of window files.
    GenTw {
        #[arg(long)]
        ttp: PathBuf,
        #[arg(long = "type", value_enum)]
        kind: TypeArg,
        /// Reference tour (TSPLIB format); required for type A.
        #[arg(long)]
        tour: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Tightness values; defaults to 1000, 100, -100, -1000.
        #[arg(long = "l", allow_negative_numbers = true, value_delimiter = ',')]
        tightness: Vec<i64>,
    },
    /// Run one solver once and print the result as JSON.
    Solve {
        #[arg(long)]
        ttp: PathBuf,
        /// Window file; open windows when omitted.
        #[arg(long)]
        tw: Option<PathBuf>,
        #[arg(long, default_value = "dsea1")]
        variant: Solver,
        #[arg(long = "fe", default_value_t = 1_000_000)]
        fe_limit: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Solution file to write; defaults to `<out-dir>/<alias>.<variant>.<seed>.sol`.
        #[arg(long)]
        solution: Option<PathBuf>,
        /// Also write the improvement trace as CSV.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Run a seeded campaign and write the CSV report.
    Bench {
        #[arg(long)]
        ttp: PathBuf,
        /// One or more window files; one campaign row group per file.
        #[arg(long, required = true, num_args = 1..)]
        tw: Vec<PathBuf>,
        #[arg(long, value_delimiter = ',', default_value = "dsea1,dsea2,dsea3")]
        variants: Vec<Solver>,
        #[arg(long, default_value_t = 30)]
        runs: usize,
        #[arg(long = "fe", default_value_t = 1_000_000)]
        fe_limit: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        threads: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustively solve a tiny instance.
    Bruteforce {
        #[arg(long)]
        ttp: PathBuf,
        #[arg(long)]
        tw: Option<PathBuf>,
    },
    /// Check a solution and/or a window family.
    Validate {
        #[arg(long)]
        ttp: Option<PathBuf>,
        #[arg(long)]
        tw: Option<PathBuf>,
        #[arg(long)]
        solution: Option<PathBuf>,
        /// Window files forming one nested family.
        #[arg(long, num_args = 1..)]
        family: Vec<PathBuf>,
    },
    /// Write a synthetic CEC-style instance and its reference tour.
    Synth {
        /// `eil51` or a city count for random coordinates.
        #[arg(long, default_value = "eil51")]
        cities: String,
        #[arg(long, default_value = "bsc")]
        kind: KnapsackKind,
        #[arg(long, default_value_t = 1)]
        class: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Compute a near-optimal reference tour for a TTP file.
    Tsp {
        #[arg(long)]
        ttp: PathBuf,
        #[arg(long, default_value_t = 50)]
        kicks: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn load_ttp(path: &Path) -> Result<TtpInstance> {
    TtpInstance::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn file_name(path: &Path) -> String {
    path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

fn stem(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "instance".into())
}

/// Loads an instance with optional windows; returns it with its tightness.
fn load_instance(ttp_path: &Path, tw: Option<&Path>) -> Result<(TtptwInstance, i64)> {
    let ttp = load_ttp(ttp_path)?;
    let Some(tw) = tw else {
        let alias = stem(ttp_path);
        return Ok((TtptwInstance::open(ttp).with_alias(alias), 0));
    };
    let (header, windows) =
        parse_window_file::<f64>(&read(tw)?).with_context(|| format!("parsing {}", tw.display()))?;
    let l = windows.tightness;
    let alias = instance_alias(&file_name(ttp_path), header.kind);
    let inst = attach_windows(ttp, windows).with_context(|| format!("attaching {}", tw.display()))?;
    Ok((inst.with_alias(alias), l))
}

fn run(cli: Cli) -> Result<ExitCode> {
    let out_dir = cli.out_dir;
    match cli.command {
        Command::GenTw { ttp, kind, tour, seed, tightness } => {
            let inst = load_ttp(&ttp)?;
            let kind = WindowType::from(kind);
            let reference = match (&tour, kind) {
                (Some(p), _) => Some(parse_tour_file(&read(p)?).with_context(|| format!("parsing {}", p.display()))?),
                (None, WindowType::A) => bail!("type A windows need --tour"),
                (None, WindowType::B) => None,
            };
            let mut spec = TwGenSpec::standard(kind, seed);
            if !tightness.is_empty() {
                spec.tightness = tightness;
            }
            let family = generate_nested(&inst, &spec, reference.as_ref())?;
            let base = file_name(&ttp);
            for tw in &family.windows {
                let path = out_dir.join(format!("{}.{kind}.l{}.tw", stem(&ttp), tw.tightness));
                write(&path, &write_window_file(&family.header(&base, tw.tightness), tw))?;
                println!("{}", path.display());
            }
        }
        Command::Solve { ttp, tw, variant, fe_limit, seed, solution, trace } => {
            let (inst, _) = load_instance(&ttp, tw.as_deref())?;
            let result = variant.run(&inst, fe_limit, seed).map_err(anyhow::Error::msg)?;
            let report = RunReport::new(&inst.alias, &variant.to_string(), &result);
            let sol_path = solution.unwrap_or_else(|| out_dir.join(format!("{}.{variant}.{seed}.sol", inst.alias)));
            write(&sol_path, &report.solution().to_text())?;
            if let Some(p) = trace {
                write(&p, &report.trace_csv())?;
            }
            println!("{}", serde_json::to_string_pretty(&report)?);
        }
        Command::Bench { ttp, tw, variants, runs, fe_limit, seed, threads, out } => {
            let cases = tw
                .iter()
                .map(|p| {
                    let (instance, l) = load_instance(&ttp, Some(p))?;
                    Ok(Case { label: instance.alias.clone(), l, instance })
                })
                .collect::<Result<Vec<_>>>()?;
            let spec = CampaignSpec::new(variants, runs, fe_limit, seed).map_err(anyhow::Error::msg)?;
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build()?;
            let report = pool.install(|| run_campaign(&cases, &spec));
            for row in report.rows.iter().filter(|r| r.error.is_some()) {
                eprintln!("{} l={} {} seed {}: {}", row.instance, row.l, row.variant, row.seed, row.error.as_deref().unwrap_or(""));
            }
            let path = out.unwrap_or_else(|| out_dir.join(format!("{}.bench.csv", stem(&ttp))));
            let mut buf = Vec::new();
            write_csv(&report, &mut buf)?;
            write(&path, std::str::from_utf8(&buf)?)?;
            for s in &report.summaries {
                println!("{} l={} {}: mean {:.2} std {:.2} FR {:.0}%", s.instance, s.l, s.variant, s.mean_ob, s.std_ob, 100.0 * s.fr);
            }
            for (v, r) in average_ranks(&report.summaries) {
                println!("average rank {v}: {r:.2}");
            }
            println!("{}", path.display());
        }
        Command::Bruteforce { ttp, tw } => {
            let (inst, _) = load_instance(&ttp, tw.as_deref())?;
            let opt = brute_force(&inst)?;
            let sol = SolutionFile::new(&opt.tour, opt.plan.taken_items());
            print!("{}", sol.to_text());
            println!("Z: {}\nCV: {}\nFEASIBLE: {}\nCANDIDATES: {}", opt.eval.objective, opt.eval.violation, opt.eval.is_feasible(), opt.candidates);
        }
        Command::Validate { ttp, tw, solution, family } => {
            let mut problems = Vec::new();
            if let Some(sol) = solution {
                let Some(ttp) = ttp else { bail!("--solution needs --ttp") };
                let (inst, _) = load_instance(&ttp, tw.as_deref())?;
                let sol = SolutionFile::parse(&read(&sol)?).with_context(|| format!("parsing {}", sol.display()))?;
                let report = validate_solution(&inst, &sol);
                if let Some(e) = &report.evaluation {
                    println!("Z: {}\nCV: {}", e.objective, e.violation);
                }
                problems.extend(report.violations);
            }
            if !family.is_empty() {
                let sets = family
                    .iter()
                    .map(|p| Ok(parse_window_file::<f64>(&read(p)?).with_context(|| format!("parsing {}", p.display()))?.1))
                    .collect::<Result<Vec<_>>>()?;
                problems.extend(validate_family(&sets));
            }
            for p in &problems {
                println!("violation: {p}");
            }
            if !problems.is_empty() {
                return Ok(ExitCode::FAILURE);
            }
            println!("valid");
        }
        Command::Synth { cities, kind, class, seed } => {
            let spec = if cities == "eil51" {
                SynthSpec::eil51(kind, class, seed)
            } else {
                let n: usize = cities.parse().context("--cities must be eil51 or a number")?;
                if n < 2 {
                    bail!("--cities must be at least 2");
                }
                SynthSpec::random(&format!("rand{n}"), n, 1000, kind, class, seed)
            };
            let (inst, tour) = synthesize(&spec);
            let name = spec.name();
            let ttp_path = out_dir.join(format!("{name}.ttp"));
            write(&ttp_path, &inst.to_ttp_string())?;
            let tour_path = out_dir.join(format!("{name}.tour"));
            write(&tour_path, &write_tour_file(&name, &inst, &tour))?;
            println!("{}\n{}", ttp_path.display(), tour_path.display());
        }
        Command::Tsp { ttp, kicks, out } => {
            let inst = load_ttp(&ttp)?;
            let tour: Tour = reference_tour(&inst, kicks, 0);
            let path = out.unwrap_or_else(|| out_dir.join(format!("{}.tour", stem(&ttp))));
            write(&path, &write_tour_file(inst.name(), &inst, &tour))?;
            println!("{}", path.display());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
