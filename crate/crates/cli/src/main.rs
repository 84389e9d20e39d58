use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use rtc_core::graph::CacheKey;
use rtc_core::harness::{
    evaluate, generate_instances, load_dataset, render_dataset, render_report, BackendKind, EvalConfig, EvalReport,
    HarnessConfig, ReportFormat, SolverMode, TaskKind, TaskSpec,
};
use rtc_core::pipeline::ArtifactCache;

#[derive(Parser)]
#[command(name = "rtc", version, about = "Reasoning-then-coding graph solver and benchmark harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate random instances with oracle gold answers.
    Gen(GenArgs),
    /// Evaluate a dataset and write the full report as JSON.
    Run(RunArgs),
    /// Evaluate a dataset and print a summary table.
    Eval {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value = "table")]
        format: String,
    },
    /// Render a JSON report written by `run`.
    Report {
        input: PathBuf,
        #[arg(long, default_value = "table")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List cached artifact bundles, or show one.
    InspectCache {
        #[arg(long)]
        cache_dir: PathBuf,
        /// Cache key, or a task id to look up by task.
        key: Option<String>,
    },
    /// List the generated task families.
    Tasks,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    task: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    density: Option<f64>,
    /// Weight range as `min-max`, e.g. `1-100`.
    #[arg(long)]
    weights: Option<String>,
    #[arg(long, default_value_t = 20)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    dataset: PathBuf,
    #[arg(long, default_value = "pipeline")]
    mode: String,
    /// TOML configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Overrides the configured backend (`scripted` or `live`).
    #[arg(long)]
    backend: Option<String>,
    #[arg(long)]
    fixtures: Option<PathBuf>,
    /// Persist artifacts here; in-memory cache when omitted.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    #[arg(long)]
    workers: Option<usize>,
    /// Start every instance from an empty cache.
    #[arg(long)]
    no_reuse: bool,
    /// Solver wall timeout in seconds.
    #[arg(long)]
    timeout: Option<f64>,
    /// Where to write the JSON report.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    if let Err(e) = run(Cli::parse()) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen(args) => gen(args),
        Command::Run(args) => {
            let report = evaluate_dataset(&args)?;
            let json = serde_json::to_string_pretty(&report)?;
            match &args.out {
                Some(path) => write_file(path, &json)?,
                None => println!("{json}"),
            }
            eprint!("{}", render_report(&report, ReportFormat::Table));
            Ok(())
        }
        Command::Eval { run, format } => {
            let format: ReportFormat = format.parse()?;
            let report = evaluate_dataset(&run)?;
            if let Some(path) = &run.out {
                write_file(path, &serde_json::to_string_pretty(&report)?)?;
            }
            print!("{}", render_report(&report, format));
            Ok(())
        }
        Command::Report { input, format, out } => {
            let text = std::fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?;
            let report: EvalReport = serde_json::from_str(&text).context("parsing report")?;
            let rendered = render_report(&report, format.parse()?);
            match out {
                Some(path) => write_file(&path, &rendered),
                None => {
                    print!("{rendered}");
                    Ok(())
                }
            }
        }
        Command::InspectCache { cache_dir, key } => inspect_cache(&cache_dir, key.as_deref()),
        Command::Tasks => {
            for kind in TaskKind::ALL {
                let p = kind.default_params();
                println!("{:<22} {:?} n={} density={}", kind.name(), kind.checker(), p.n, p.density);
            }
            Ok(())
        }
    }
}

fn gen(args: GenArgs) -> Result<()> {
    let kind: TaskKind = args.task.parse()?;
    let mut spec = TaskSpec::new(kind);
    if let Some(n) = args.n {
        spec = spec.with_n(n);
    }
    if let Some(p) = args.density {
        spec = spec.with_density(p);
    }
    if let Some(w) = &args.weights {
        let (lo, hi) = w.split_once('-').context("weights must look like `1-100`")?;
        spec = spec.with_weights(lo.trim().parse()?, hi.trim().parse()?);
    }
    let text = render_dataset(&generate_instances(&spec, args.count, args.seed)?);
    match &args.out {
        Some(path) => write_file(path, &text),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn evaluate_dataset(args: &RunArgs) -> Result<EvalReport> {
    let mut config = match &args.config {
        Some(path) => HarnessConfig::load(path)?,
        None => HarnessConfig::default(),
    };
    if let Some(b) = &args.backend {
        config.backend = b.parse::<BackendKind>()?;
    }
    if let Some(dir) = &args.fixtures {
        config.fixtures_dir = Some(dir.clone());
    }
    if let Some(w) = args.workers {
        config.workers = w;
    }
    if let Some(t) = args.timeout {
        config.pipeline.solver_limits = config.pipeline.solver_limits.with_timeout(t);
    }
    config.validate()?;
    let mode: SolverMode = args.mode.parse()?;
    let dataset = load_dataset(&args.dataset)?;
    let cache = match &args.cache_dir {
        Some(dir) => ArtifactCache::open(dir).with_context(|| format!("opening cache {}", dir.display()))?,
        None => ArtifactCache::in_memory(),
    };
    let pipeline = config.build_pipeline(Arc::new(cache))?;
    let eval = EvalConfig { mode, workers: config.workers, reuse: !args.no_reuse };
    Ok(evaluate(&dataset, &pipeline, &eval)?)
}

fn inspect_cache(dir: &Path, key: Option<&str>) -> Result<()> {
    if !dir.is_dir() {
        bail!("{} is not a directory", dir.display());
    }
    let cache = ArtifactCache::open(dir)?;
    let Some(key) = key else {
        for k in cache.keys() {
            let a = cache.get(&k).context("unreadable bundle")?;
            let first = a.formulation.pure_problem.lines().next().unwrap_or("");
            println!("{k}  {} calls  {first}", a.provenance.calls.len());
        }
        return Ok(());
    };
    let k = CacheKey::parse(key).unwrap_or_else(|| CacheKey::for_task(key));
    let a = cache.get(&k).with_context(|| format!("no bundle for `{key}`"))?;
    println!("key: {k}");
    println!("\n[problem]\n{}", a.formulation.pure_problem);
    println!("\n[input]\n{}", a.formulation.input_description);
    println!("\n[output]\n{}", a.formulation.output_description);
    println!("\n[pseudocode]\n{}", a.pseudocode);
    println!("\n[extractor]\n{}", a.extractor.source);
    println!("\n[solver]\n{}", a.solver.source);
    println!("\n[calls]");
    for c in &a.provenance.calls {
        println!(
            "{} attempt {} model {} tokens {}+{}",
            c.stage, c.attempt, c.model_id, c.usage.prompt_tokens, c.usage.completion_tokens
        );
    }
    Ok(())
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}
