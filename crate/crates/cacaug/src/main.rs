//! Command-line interface for the cactus augmentation toolkit.
//!
//! Exit codes: 0 success, 1 IO/internal error, 2 usage (clap), 3 parse or
//! validation failure, 4 infeasible instance, 5 verification failure,
//! 6 budget or size cap exceeded, 7 generation failure.

#![forbid(unsafe_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cacaug::formats::{FormatError, InstanceFile, SolutionFile};
use cacaug::gen::{gen_fig3, gen_random, gen_random_tap, EndpointMode, RandomProfile};
use cacaug::run::{self, Algo, RunError, RunOptions};
use cacaug_core::analysis::{compute_rho, verify_b, BCheckConfig};
use cacaug_core::completion::SolveError;
use cacaug_core::exact::{brute_force_opt, ExactError, DEFAULT_SUBCACTUS_LEAF_CAP};

#[derive(Parser)]
#[command(name = "cacaug", version, about = "Cactus augmentation toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a file parses into a valid instance.
    Validate { file: PathBuf },
    /// Solve an instance and emit a solution file.
    Solve(SolveArgs),
    /// Re-check a stored solution against its instance.
    Verify {
        instance: PathBuf,
        solution: PathBuf,
    },
    /// Generate an instance file.
    Gen(GenArgs),
    /// Numeric guarantee checks.
    Analyze(AnalyzeArgs),
    /// Run solvers over a directory of instances and emit CSV.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Matching,
    Subcactus,
    Combined,
    Exact,
    Naive,
}

impl From<AlgoArg> for Algo {
    fn from(a: AlgoArg) -> Algo {
        match a {
            AlgoArg::Matching => Algo::Matching,
            AlgoArg::Subcactus => Algo::Subcactus,
            AlgoArg::Combined => Algo::Combined,
            AlgoArg::Exact => Algo::Exact,
            AlgoArg::Naive => Algo::Naive,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_enum)]
    algo: AlgoArg,
    /// Link budget for the exact solver.
    #[arg(long)]
    budget: Option<usize>,
    /// Leaves-per-subcactus cap for the subcactus solver.
    #[arg(long, default_value_t = DEFAULT_SUBCACTUS_LEAF_CAP)]
    leaf_cap: usize,
    /// Record wall time in the solution (output is then not byte-stable).
    #[arg(long)]
    timing: bool,
    /// Write to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    file: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Fig3,
    Random,
    RandomTap,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Towers for the fig3 family.
    #[arg(long, default_value_t = 6)]
    m: usize,
    #[arg(long, default_value_t = 6)]
    n_min: usize,
    #[arg(long, default_value_t = 12)]
    n_max: usize,
    /// Width cap (0 disables).
    #[arg(long, default_value_t = 0)]
    k_cap: usize,
    #[arg(long, default_value_t = 6)]
    links: usize,
    /// Allow the root as a link endpoint.
    #[arg(long)]
    plus: bool,
    /// Add links until the instance is feasible.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    ensure_feasible: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Verify the credit condition for this coefficient.
    #[arg(long)]
    check_b: Option<f64>,
    #[arg(long, default_value_t = 0.01)]
    grid: f64,
    #[arg(long, default_value_t = 2)]
    refine: u32,
    #[arg(long, default_value_t = 0.0)]
    sv_lo: f64,
    #[arg(long, default_value_t = 1.0)]
    sv_hi: f64,
    /// Solve the factor optimization.
    #[arg(long)]
    rho: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    dir: PathBuf,
    /// Comma-separated algorithms.
    #[arg(long, value_delimiter = ',')]
    algos: Vec<AlgoArg>,
    /// Link budget for the optimum column (and the exact solver).
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SUBCACTUS_LEAF_CAP)]
    leaf_cap: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// CLI failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::new(1, e.to_string())
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::new(3, e.to_string())
    }
}

impl From<RunError> for Failure {
    fn from(e: RunError) -> Self {
        let code = match &e {
            RunError::Solve(SolveError::InfeasibleInstance)
            | RunError::Exact(ExactError::InfeasibleInstance) => 4,
            RunError::Solve(SolveError::NotLeafToLeafPlus)
            | RunError::Exact(ExactError::NotLeafToLeafPlus) => 4,
            RunError::Exact(ExactError::BudgetExceeded { .. })
            | RunError::Exact(ExactError::SubcactusTooLarge { .. })
            | RunError::MissingBudget => 6,
            _ => 3,
        };
        Failure::new(code, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn dispatch(command: Command) -> Result<(), Failure> {
    match command {
        Command::Validate { file } => {
            let instance = load_instance(&file)?;
            println!(
                "ok: {} vertices, {} cycles, {} links, root {}",
                instance.vertex_count(),
                instance.cactus().cycles().len(),
                instance.links().len(),
                instance.root()
            );
            Ok(())
        }
        Command::Solve(args) => {
            let instance = load_instance(&args.file)?;
            let opts = RunOptions {
                budget: args.budget,
                leaf_cap: args.leaf_cap,
                timing: args.timing,
            };
            let solution = run::solve(&instance, args.algo.into(), &opts)?;
            emit(args.out.as_deref(), &solution.serialize())
        }
        Command::Verify { instance, solution } => {
            let inst = load_instance(&instance)?;
            let text = fs::read_to_string(&solution)?;
            let sol = SolutionFile::parse(&text)?;
            match run::verify(&inst, &sol) {
                Ok(()) => {
                    println!("ok: {} links, all recorded bounds hold", sol.size);
                    Ok(())
                }
                Err(e) => Err(Failure::new(5, e.to_string())),
            }
        }
        Command::Gen(args) => {
            let profile = RandomProfile {
                n_min: args.n_min,
                n_max: args.n_max,
                k_cap: args.k_cap,
                link_count: args.links,
                endpoints: if args.plus {
                    EndpointMode::LeafToLeafPlus
                } else {
                    EndpointMode::LeafToLeaf
                },
                ensure_feasible: args.ensure_feasible,
            };
            let file = match args.family {
                FamilyArg::Fig3 => {
                    if args.m < 2 {
                        return Err(Failure::new(3, "--m must be at least 2"));
                    }
                    gen_fig3(args.m)
                }
                FamilyArg::Random => gen_random(&profile, args.seed)
                    .map_err(|e| Failure::new(7, e.to_string()))?,
                FamilyArg::RandomTap => gen_random_tap(&profile, args.seed)
                    .map_err(|e| Failure::new(7, e.to_string()))?,
            };
            emit(args.out.as_deref(), &file.serialize())
        }
        Command::Analyze(args) => analyze(args),
        Command::Bench(args) => bench(args),
    }
}

fn load_instance(path: &Path) -> Result<cacaug_core::Instance, Failure> {
    let text = fs::read_to_string(path)?;
    let file = InstanceFile::parse(&text)?;
    Ok(file.to_instance()?)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn analyze(args: AnalyzeArgs) -> Result<(), Failure> {
    if args.check_b.is_none() && !args.rho {
        return Err(Failure::new(3, "analyze needs --check-b and/or --rho"));
    }
    let mut report = serde_json::Map::new();
    if let Some(b) = args.check_b {
        let mut cfg = BCheckConfig::new(b, args.grid, args.refine)
            .map_err(|e| Failure::new(3, e.to_string()))?;
        cfg.sv_range = (args.sv_lo, args.sv_hi);
        let out = verify_b(&cfg);
        report.insert("b".into(), serde_json::json!(b));
        report.insert("grid_step".into(), serde_json::json!(args.grid));
        report.insert("refinement_rounds".into(), serde_json::json!(args.refine));
        report.insert("min_value".into(), serde_json::json!(out.min_value));
        report.insert(
            "argmin".into(),
            serde_json::json!({
                "lambda_v": out.argmin.lambda_v,
                "lambda_w": out.argmin.lambda_w,
                "eta": out.argmin.eta,
                "s": out.argmin.s,
                "x_sv": out.argmin.x_sv,
            }),
        );
        report.insert("evaluated".into(), serde_json::json!(out.evaluated));
        report.insert(
            "nonnegative".into(),
            serde_json::json!(out.min_value >= -1e-9),
        );
    }
    if args.rho {
        let r = compute_rho();
        report.insert("alpha_star".into(), serde_json::json!(r.alpha_star));
        report.insert("rho".into(), serde_json::json!(r.rho));
        report.insert("residual".into(), serde_json::json!(r.residual));
    }
    println!(
        "{}",
        serde_json::to_string_pretty(&serde_json::Value::Object(report)).expect("report json")
    );
    Ok(())
}

fn bench(args: BenchArgs) -> Result<(), Failure> {
    if args.algos.is_empty() {
        return Err(Failure::new(3, "bench needs --algos"));
    }
    let mut paths: Vec<PathBuf> = fs::read_dir(&args.dir)?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().map(|x| x == "json") == Some(true))
        .collect();
    paths.sort();
    let mut csv = String::from("instance,algo,size,opt,ratio,feasible,millis\n");
    for path in &paths {
        let instance = load_instance(path)?;
        let opt = args
            .budget
            .and_then(|b| brute_force_opt(&instance, b).ok())
            .map(|c| c.opt_value);
        for &algo in &args.algos {
            let opts = RunOptions {
                budget: args.budget,
                leaf_cap: args.leaf_cap,
                timing: false,
            };
            let started = Instant::now();
            let result = run::solve(&instance, algo.into(), &opts);
            let millis = started.elapsed().as_millis();
            let name = path.file_name().unwrap_or_default().to_string_lossy();
            match result {
                Ok(sol) => {
                    let (opt_s, ratio_s) = match opt {
                        Some(o) if o > 0 => {
                            (o.to_string(), format!("{:.4}", sol.size as f64 / o as f64))
                        }
                        _ => (String::new(), String::new()),
                    };
                    csv.push_str(&format!(
                        "{},{},{},{},{},{},{}\n",
                        name,
                        Algo::from(algo).name(),
                        sol.size,
                        opt_s,
                        ratio_s,
                        sol.feasible,
                        millis
                    ));
                }
                Err(e) => {
                    csv.push_str(&format!(
                        "{},{},,,,error: {},{}\n",
                        name,
                        Algo::from(algo).name(),
                        e,
                        millis
                    ));
                }
            }
        }
    }
    emit(args.out.as_deref(), &csv)
}
