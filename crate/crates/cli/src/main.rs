use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use mpcc::experiments::config::{DEFAULT_SEED, DEFAULT_SIDE};
use mpcc::experiments::{
    generate_instance, preset, run_experiment_with, utilization_variance, write_bench_outputs,
    Algorithm, ExperimentConfig, ExperimentError,
};
use mpcc::io::{instance_to_json, read_instance, read_solution, solution_to_json, trace_to_jsonl};
use mpcc::{
    check_feasible, solve_exact_with, solve_mlr_traced, solve_nca, validate_instance, ExactBudget,
    Execution, FormatError, Instance, SolveError,
};

const EXIT_USAGE: u8 = 2;
const EXIT_FORMAT: u8 = 3;
const EXIT_INVALID: u8 = 4;
const EXIT_INFEASIBLE: u8 = 5;
const EXIT_BUDGET: u8 = 6;
const EXIT_EXPERIMENT: u8 = 7;

/// Minimum power capacitated cover: instance generation, solvers and sweeps.
#[derive(Parser)]
#[command(name = "mpcc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance in a square.
    Gen(GenArgs),
    /// Solve an instance and write the solution.
    Solve(SolveArgs),
    /// Check a solution against an instance.
    Check(CheckArgs),
    /// Run a preset sweep or a config file and write CSV tables.
    Bench(BenchArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = DEFAULT_SIDE)]
    side: f64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Trial index; selects the RNG stream.
    #[arg(long, default_value_t = 0)]
    trial: usize,
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    #[arg(long, default_value_t = 2.0)]
    alpha: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    instance: PathBuf,
    /// mlr, nca or exact
    #[arg(long, default_value = "mlr")]
    alg: Algorithm,
    #[arg(long)]
    out: PathBuf,
    /// Write the MLR iteration trace as JSON lines (mlr only).
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Node limit for the exact search.
    #[arg(long)]
    max_nodes: Option<u64>,
    /// Time limit for the exact search.
    #[arg(long, default_value_t = ExactBudget::DEFAULT_MAX_SECONDS as f64)]
    max_seconds: f64,
    /// Run the exact search on one thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    solution: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    /// Built-in sweep 1 to 4.
    #[arg(long, conflicts_with = "config", required_unless_present = "config")]
    preset: Option<u8>,
    /// JSON file with one config or a list of configs.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out_dir: PathBuf,
    /// Override the trial count of every config.
    #[arg(long)]
    trials: Option<usize>,
    /// Override the seed of every config.
    #[arg(long)]
    seed: Option<u64>,
    /// Skip configs with more TDs than this.
    #[arg(long)]
    max_n: Option<usize>,
    /// Write zero wall times so reruns are byte-identical.
    #[arg(long)]
    omit_timing: bool,
    /// Run trials on one thread.
    #[arg(long)]
    sequential: bool,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Self::new(EXIT_FORMAT, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Solve(a) => solve(a),
        Command::Check(a) => check(a),
        Command::Bench(a) => bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text)
        .map_err(|e| Failure::new(EXIT_FORMAT, format!("cannot write {}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<Instance, Failure> {
    let inst = read_instance(path)
        .map_err(|e| Failure::new(EXIT_FORMAT, format!("{}: {e}", path.display())))?;
    validate_instance(&inst).map_err(|v| {
        let listing: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        Failure::new(
            EXIT_INVALID,
            format!("invalid instance: {}", listing.join("; ")),
        )
    })?;
    Ok(inst)
}

fn execution(sequential: bool) -> Execution {
    if sequential {
        Execution::Sequential
    } else {
        Execution::default()
    }
}

fn gen(a: GenArgs) -> Result<(), Failure> {
    let mut cfg = ExperimentConfig::new(a.n, a.m, a.k);
    cfg.side = a.side;
    cfg.seed = a.seed;
    cfg.c = a.c;
    cfg.alpha = a.alpha;
    cfg.validate().map_err(|e| Failure::new(EXIT_INVALID, e))?;
    let inst = generate_instance(&cfg, a.trial);
    validate_instance(&inst).map_err(|v| {
        Failure::new(
            EXIT_INVALID,
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join("; "),
        )
    })?;
    write_file(&a.out, &instance_to_json(&inst))?;
    println!("seed {} trial {} -> {}", a.seed, a.trial, a.out.display());
    Ok(())
}

fn solve(a: SolveArgs) -> Result<(), Failure> {
    let inst = load_instance(&a.instance)?;
    if a.trace.is_some() && a.alg != Algorithm::Mlr {
        return Err(Failure::new(
            EXIT_USAGE,
            "--trace is only available for --alg mlr",
        ));
    }
    let started = Instant::now();
    let outcome = match a.alg {
        Algorithm::Mlr => solve_mlr_traced(&inst).map(|(sol, trace)| (sol, Some(trace))),
        Algorithm::Nca => solve_nca(&inst).map(|sol| (sol, None)),
        Algorithm::Exact => {
            let budget = ExactBudget {
                max_nodes: a.max_nodes,
                max_time: Some(Duration::from_secs_f64(a.max_seconds.max(0.0))),
            };
            solve_exact_with(&inst, budget, execution(a.sequential)).map(|o| {
                println!("nodes {}", o.nodes);
                (o.solution, None)
            })
        }
    };
    let wall_ms = started.elapsed().as_secs_f64() * 1e3;
    let (sol, trace) = outcome.map_err(|e| match e {
        SolveError::BudgetExceeded { .. } => Failure::new(EXIT_BUDGET, e.to_string()),
        SolveError::InvalidInstance(_) => Failure::new(EXIT_INVALID, e.to_string()),
        SolveError::Infeasible { .. } => Failure::new(EXIT_INFEASIBLE, e.to_string()),
    })?;
    write_file(&a.out, &solution_to_json(&sol))?;
    if let (Some(path), Some(trace)) = (&a.trace, trace) {
        write_file(path, &trace_to_jsonl(&trace))?;
    }
    println!("total_power {}", sol.total_power);
    println!("wall_ms {wall_ms:.3}");
    println!("variance {}", utilization_variance(&sol, &inst));
    Ok(())
}

fn check(a: CheckArgs) -> Result<(), Failure> {
    let inst = load_instance(&a.instance)?;
    let sol = read_solution(&a.solution, &inst)
        .map_err(|e| Failure::new(EXIT_FORMAT, format!("{}: {e}", a.solution.display())))?;
    match check_feasible(&sol, &inst) {
        Ok(()) => {
            println!("feasible, total_power {}", sol.total_power);
            Ok(())
        }
        Err(violations) => {
            for v in &violations {
                println!("{v}");
            }
            Err(Failure::new(
                EXIT_INFEASIBLE,
                format!("{} violation(s)", violations.len()),
            ))
        }
    }
}

fn load_configs(path: &Path) -> Result<Vec<ExperimentConfig>, Failure> {
    let bad = |e: serde_json::Error| Failure::new(EXIT_FORMAT, format!("{}: {e}", path.display()));
    let text = fs::read_to_string(path).map_err(|e| Failure::from(FormatError::from(e)))?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(bad)?;
    if value.is_array() {
        serde_json::from_value(value).map_err(bad)
    } else {
        serde_json::from_value(value).map(|c| vec![c]).map_err(bad)
    }
}

fn bench(a: BenchArgs) -> Result<(), Failure> {
    let mut configs = match (a.preset, &a.config) {
        (Some(p), _) => preset(p)
            .ok_or_else(|| Failure::new(EXIT_USAGE, format!("no preset {p} (expected 1 to 4)")))?,
        (None, Some(path)) => load_configs(path)?,
        (None, None) => unreachable!("clap requires one of --preset and --config"),
    };
    if let Some(max_n) = a.max_n {
        configs.retain(|c| c.n <= max_n);
    }
    for cfg in &mut configs {
        if let Some(t) = a.trials {
            cfg.trials = t;
        }
        if let Some(s) = a.seed {
            cfg.seed = s;
        }
    }
    let exec = execution(a.sequential);
    let mut reports = Vec::with_capacity(configs.len());
    for cfg in &configs {
        let report = run_experiment_with(cfg, exec).map_err(|e| match &e {
            ExperimentError::InvalidConfig { .. } => Failure::new(EXIT_INVALID, e.to_string()),
            ExperimentError::TrialFailed { .. } => Failure::new(EXIT_EXPERIMENT, e.to_string()),
        })?;
        for s in &report.summaries {
            println!(
                "config {} {}={} {}: mean power {:.6}, mean variance {:.6}, completed {}/{}",
                cfg.config_id,
                cfg.swept_name(),
                cfg.swept_value(),
                s.algorithm,
                s.mean_power,
                s.mean_variance,
                s.completed,
                s.trials
            );
        }
        reports.push(report);
    }
    for path in write_bench_outputs(&reports, &a.out_dir, !a.omit_timing)? {
        println!("wrote {}", path.display());
    }
    Ok(())
}
