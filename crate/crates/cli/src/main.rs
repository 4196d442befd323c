//! Batch command-line front end for evaluating fuzzy quantified
//! expressions.
//!
//! Exit codes: 0 success, 1 property failure (`verify`), 2 input error,
//! 3 evaluation budget exceeded.

mod spec;

use std::io::Read;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::json;

use fa_quant::exact::{cardinality_distribution, eval_exact_with_cap, oracle_eval};
use fa_quant::limit::{convergence_table, limit_eval};
use fa_quant::mc::{mc_eval, McConfig};
use fa_quant::verify::{self, PropertyReport};
use fa_quant::{catalog, FaError, FuzzySet, SemiFuzzyQuantifier, Shape, DEFAULT_TENSOR_MEM_CAP};

use spec::{FuzzySetFile, ProfileSpec, QuantifierSpec, RankObject, ShapeSpec};

#[derive(Parser)]
#[command(
    name = "fa-quant",
    version,
    about = "Evaluate fuzzy quantified expressions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a quantifier on fuzzy-set files; prints a JSON report.
    Eval(EvalArgs),
    /// Print the cardinality distribution of a fuzzy set as CSV.
    Carddist {
        /// Fuzzy-set file (`-` for stdin).
        set: String,
    },
    /// Exact-vs-limit convergence table over growing referentials, as CSV.
    Converge(ConvergeArgs),
    /// Run the property-verification suite; prints a JSON report array.
    Verify(VerifyArgs),
    /// Rank objects by a quantified criteria score, as CSV.
    Rank(RankArgs),
}

#[derive(Args)]
struct EvalArgs {
    /// Quantifier spec file (`-` for stdin).
    quantifier: String,
    /// One fuzzy-set file per quantifier argument (`-` for stdin).
    sets: Vec<String>,
    #[arg(long, value_enum, default_value_t = Method::Dp)]
    method: Method,
    /// Monte Carlo simulation count.
    #[arg(long, default_value_t = 100_000)]
    mc_n: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Monte Carlo RNG stream count.
    #[arg(long, default_value_t = 1)]
    partitions: u64,
    /// Print the normalized quantifier spec instead of evaluating.
    #[arg(long)]
    dump_spec: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Cardinality dynamic programming (exact).
    Dp,
    /// Brute-force subset enumeration (exact, budget-limited).
    Oracle,
    /// Seeded Monte Carlo estimate.
    Mc,
    /// Sigma-count limit model.
    Zadeh,
}

#[derive(Args)]
struct ConvergeArgs {
    /// Quantifier spec file (`-` for stdin).
    quantifier: String,
    /// JSON array of membership profiles, one per argument.
    profiles: String,
    /// Referential sizes, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
    /// Add a Monte Carlo column with this simulation count.
    #[arg(long)]
    mc_n: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Subset of checks to run, comma separated (default: all).
    #[arg(long, value_delimiter = ',')]
    suite: Vec<String>,
    /// Shape file (JSON array) overriding the built-in Ruspini partition.
    #[arg(long)]
    partition: Option<String>,
}

#[derive(Args)]
struct RankArgs {
    /// Quantifier spec file (`-` for stdin).
    quantifier: String,
    /// JSON array of objects with `id` and `criteria`.
    objects: String,
    /// Fuzzy-set file of criterion weights (restrictor) for binary
    /// quantifiers.
    #[arg(long)]
    weights: Option<String>,
}

/// Failures carrying the process exit code.
enum CliError {
    /// Unreadable or invalid input: exit 2.
    Input(String),
    /// Enumeration or memory budget exceeded: exit 3.
    Budget(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Budget(m) => m,
        }
    }
}

impl From<FaError> for CliError {
    fn from(e: FaError) -> Self {
        match e {
            FaError::OracleBudgetExceeded { .. } | FaError::TensorMemoryExceeded { .. } => {
                CliError::Budget(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

fn read_source(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(Path::new(path))
            .map_err(|e| CliError::Input(format!("{path}: {e}")))
    }
}

fn read_json<T: DeserializeOwned>(path: &str) -> Result<T, CliError> {
    let text = read_source(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{path}: {e}")))
}

fn read_quantifier(path: &str) -> Result<(QuantifierSpec, SemiFuzzyQuantifier), CliError> {
    let spec: QuantifierSpec = read_json(path)?;
    let q = spec.to_quantifier()?;
    Ok((spec, q))
}

fn read_set(path: &str) -> Result<FuzzySet, CliError> {
    let file: FuzzySetFile = read_json(path)?;
    file.to_set()
        .map_err(|e| CliError::Input(format!("{path}: {e}")))
}

/// Tensor memory cap in bytes; `FA_QUANT_MEM_CAP` overrides the default.
fn mem_cap() -> Result<usize, CliError> {
    match std::env::var("FA_QUANT_MEM_CAP") {
        Ok(v) => v
            .parse()
            .map_err(|_| CliError::Input(format!("FA_QUANT_MEM_CAP: invalid byte count {v:?}"))),
        Err(_) => Ok(DEFAULT_TENSOR_MEM_CAP),
    }
}

/// CSV numeric formatting: 17 significant digits, enough for bit-faithful
/// round trips.
fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn cmd_eval(args: &EvalArgs) -> Result<(), CliError> {
    let (spec, q) = read_quantifier(&args.quantifier)?;
    if args.dump_spec {
        let normalized = QuantifierSpec::from_quantifier(&q);
        println!("{}", serde_json::to_string_pretty(&normalized).unwrap());
        drop(spec);
        return Ok(());
    }
    let sets: Vec<FuzzySet> = args
        .sets
        .iter()
        .map(|p| read_set(p))
        .collect::<Result<_, _>>()?;
    if sets.len() != q.arity() {
        return Err(CliError::Input(format!(
            "quantifier has arity {} but {} set files were given",
            q.arity(),
            sets.len()
        )));
    }
    let report = match args.method {
        Method::Dp => json!({"method": "dp", "value": eval_exact_with_cap(&q, &sets, mem_cap()?)?}),
        Method::Oracle => json!({"method": "oracle", "value": oracle_eval(&q, &sets)?}),
        Method::Zadeh => json!({"method": "zadeh", "value": limit_eval(&q, &sets)?}),
        Method::Mc => {
            let cfg = McConfig::new(args.mc_n, args.seed).with_partitions(args.partitions);
            let est = mc_eval(&q, &sets, &cfg)?;
            json!({
                "method": "mc",
                "value": est.value,
                "stderr": est.stderr,
                "num_simulations": est.num_simulations,
                "seed": est.seed,
                "partitions": args.partitions,
            })
        }
    };
    println!("{report}");
    Ok(())
}

fn cmd_carddist(set: &str) -> Result<(), CliError> {
    let x = read_set(set)?;
    let dist = cardinality_distribution(&x);
    println!("j,prob");
    for (j, p) in dist.probs().iter().enumerate() {
        println!("{j},{}", num(*p));
    }
    Ok(())
}

fn cmd_converge(args: &ConvergeArgs) -> Result<(), CliError> {
    let (_, q) = read_quantifier(&args.quantifier)?;
    let profile_specs: Vec<ProfileSpec> = read_json(&args.profiles)?;
    let profiles: Vec<_> = profile_specs.iter().map(ProfileSpec::to_profile).collect();
    let mc = args.mc_n.map(|n| McConfig::new(n, args.seed));
    let rows = convergence_table(&q, &profiles, &args.sizes, mc.as_ref())?;
    println!("m,exact,zadeh,mc,abs_error");
    for row in rows {
        let mc_col = row.mc.map(num).unwrap_or_default();
        println!(
            "{},{},{},{mc_col},{}",
            row.m,
            num(row.exact),
            num(row.zadeh),
            num(row.abs_error)
        );
    }
    Ok(())
}

fn default_partition() -> Vec<Shape> {
    vec![
        Shape::Trapezoid {
            a: f64::NEG_INFINITY,
            b: f64::NEG_INFINITY,
            c: 0.2,
            d: 0.4,
        },
        Shape::Trapezoid {
            a: 0.2,
            b: 0.4,
            c: 0.6,
            d: 0.8,
        },
        Shape::Trapezoid {
            a: 0.6,
            b: 0.8,
            c: f64::INFINITY,
            d: f64::INFINITY,
        },
    ]
}

fn cmd_verify(args: &VerifyArgs) -> Result<bool, CliError> {
    let partition = match &args.partition {
        Some(path) => {
            let shapes: Vec<ShapeSpec> = read_json(path)?;
            shapes
                .iter()
                .map(|s| s.to_shape())
                .collect::<Result<Vec<_>, _>>()?
        }
        None => default_partition(),
    };
    let seed = args.seed;
    let mut reports: Vec<PropertyReport> = Vec::new();
    if args.suite.is_empty() {
        reports = verify::run_default_suite(seed)?;
        if args.partition.is_some() {
            reports.push(verify::check_ruspini(&partition, 100, seed)?);
        }
    } else {
        for name in &args.suite {
            match name.as_str() {
                "generalization" => {
                    reports.push(verify::check_correct_generalization(&catalog::some(), 4)?);
                    reports.push(verify::check_correct_generalization(
                        &catalog::nearly_all(),
                        4,
                    )?);
                }
                "negations" => {
                    reports.push(verify::check_negations_and_dual(
                        &catalog::nearly_all(),
                        100,
                        seed,
                    )?);
                }
                "averaging" => reports.push(verify::check_averaging_identity(100, seed)?),
                "ruspini" => reports.push(verify::check_ruspini(&partition, 100, seed)?),
                "fine_distinction" => {
                    reports.push(verify::check_fine_distinction(&Shape::linear(), 100, seed)?)
                }
                "projection" => reports.push(verify::check_projection_theorem(50, seed)?),
                "transposition" => {
                    reports.push(verify::check_transposition(&catalog::some(), 100, seed)?)
                }
                other => return Err(CliError::Input(format!("unknown property suite: {other}"))),
            }
        }
    }
    let rendered: Vec<_> = reports
        .iter()
        .map(|r| {
            json!({
                "id": r.id,
                "instances": r.instances,
                "max_deviation": r.max_deviation,
                "tolerance": r.tolerance,
                "pass": r.pass,
            })
        })
        .collect();
    println!("{}", serde_json::to_string_pretty(&rendered).unwrap());
    Ok(reports.iter().all(|r| r.pass))
}

fn cmd_rank(args: &RankArgs) -> Result<(), CliError> {
    let (_, q) = read_quantifier(&args.quantifier)?;
    let objects: Vec<RankObject> = read_json(&args.objects)?;
    if objects.is_empty() {
        return Err(CliError::Input("no objects to rank".into()));
    }
    let width = objects[0].criteria.len();
    for o in &objects {
        if o.criteria.len() != width {
            return Err(CliError::Input(format!(
                "object {:?} has {} criteria, expected {width}",
                o.id,
                o.criteria.len()
            )));
        }
    }
    let weights = match &args.weights {
        Some(path) => Some(read_set(path)?),
        None => None,
    };
    match (q.arity(), &weights) {
        (1, None) => {}
        (2, Some(w)) if w.len() == width => {}
        (2, Some(w)) => {
            return Err(CliError::Input(format!(
                "{} weights for {width} criteria",
                w.len()
            )))
        }
        (2, None) => {
            return Err(CliError::Input(
                "binary quantifier needs --weights for the restrictor argument".into(),
            ))
        }
        (n, _) => {
            return Err(CliError::Input(format!(
                "rank supports arity 1 or 2 quantifiers, got {n}"
            )))
        }
    }

    let cap = mem_cap()?;
    let mut scored: Vec<(usize, &RankObject, f64)> = Vec::with_capacity(objects.len());
    for (i, o) in objects.iter().enumerate() {
        let x = FuzzySet::new(o.criteria.clone())?;
        let sets = match &weights {
            Some(w) => vec![w.clone(), x],
            None => vec![x],
        };
        scored.push((i, o, eval_exact_with_cap(&q, &sets, cap)?));
    }
    // descending by score; stable sort keeps input order on ties
    scored.sort_by(|a, b| b.2.partial_cmp(&a.2).unwrap());
    println!("id,score,rank");
    for (rank, (_, o, score)) in scored.iter().enumerate() {
        println!("{},{},{}", o.id, num(*score), rank + 1);
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    match &cli.command {
        Command::Eval(args) => cmd_eval(args).map(|()| true),
        Command::Carddist { set } => cmd_carddist(set).map(|()| true),
        Command::Converge(args) => cmd_converge(args).map(|()| true),
        Command::Verify(args) => cmd_verify(args),
        Command::Rank(args) => cmd_rank(args).map(|()| true),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
