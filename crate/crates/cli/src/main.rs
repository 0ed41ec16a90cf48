use std::fs;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::info;

use corematch::graph::{core_numbers, k_core, read_edge_list, write_edge_list, Graph};
use corematch::harness::{run_sweep, verify_lemmas, ExperimentConfig, Mode};
use corematch::matching::brute_force_k_core_estimator;
use corematch::models::{
    build_probabilities, sample_correlated_pair, sample_graph, ModelSpec,
};
use corematch::theory::{check_exact_condition, check_partial_condition};
use corematch::{Error, RngStream};

/// Correlated random graphs and k-core graph matching.
#[derive(Parser)]
#[command(name = "corematch", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a correlated pair (or a single graph) from a model file.
    Sample(SampleArgs),
    /// Print the k-core (or all core numbers) of an edge list.
    Core(CoreArgs),
    /// Run the brute-force k-core estimator on two edge lists (n <= 8).
    Match(MatchArgs),
    /// Print the recovery-condition reports for a model; exits 1 if a
    /// requested condition is violated.
    Check(CheckArgs),
    /// Run a Monte Carlo sweep described by a config file.
    Sweep(SweepArgs),
    /// Run the lemma checks; exits 1 if any check fails.
    VerifyLemmas(LemmaArgs),
}

#[derive(Args)]
struct SampleArgs {
    /// Model JSON file.
    #[arg(long)]
    model: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    s: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Stream index within the seed.
    #[arg(long, default_value_t = 0)]
    index: u64,
    /// Sample only the parent graph.
    #[arg(long)]
    single: bool,
    /// Output directory. Pairs are written as g1.edges, g2.edges and
    /// pi_star.json; a single graph as graph.edges, or to stdout when absent.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CoreArgs {
    /// Edge list file (`n m` header, then one `u v` per line).
    graph: PathBuf,
    #[arg(short, long, default_value_t = 1)]
    k: usize,
    /// Print `vertex core_number` for every vertex instead.
    #[arg(long)]
    numbers: bool,
}

#[derive(Args)]
struct MatchArgs {
    g1: PathBuf,
    g2: PathBuf,
    #[arg(short, long)]
    k: usize,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    s: f64,
    #[arg(short, long, default_value_t = 13)]
    k: usize,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    /// Which condition to report.
    #[arg(long, value_parser = ["exact", "partial", "both"], default_value = "both")]
    condition: String,
}

/// Top-level config fields that can be overridden from the command line.
#[derive(Args)]
struct Overrides {
    #[arg(long)]
    s: Option<f64>,
    #[arg(short, long)]
    k: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    master_seed: Option<u64>,
    #[arg(long)]
    mode: Option<String>,
    /// Summary output path.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

impl Overrides {
    fn apply(&self, mut cfg: ExperimentConfig) -> Result<ExperimentConfig, Error> {
        if let Some(s) = self.s {
            cfg.s = s;
        }
        if let Some(k) = self.k {
            cfg.k = k;
        }
        if let Some(t) = self.trials {
            cfg.trials = t;
        }
        if let Some(seed) = self.master_seed {
            cfg.master_seed = seed;
        }
        if let Some(mode) = &self.mode {
            cfg.mode = mode.parse()?;
        }
        if let Some(out) = &self.output {
            cfg.output_path = Some(out.clone());
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Args)]
struct SweepArgs {
    config: PathBuf,
    /// Worker threads; defaults to COREMATCH_THREADS, then the core count.
    #[arg(long)]
    threads: Option<usize>,
    #[command(flatten)]
    overrides: Overrides,
}

#[derive(Args)]
struct LemmaArgs {
    /// Config file; only `master_seed` matters. Defaults to seed 0.
    config: Option<PathBuf>,
    #[command(flatten)]
    overrides: Overrides,
    /// Invert the verdict of the named check.
    #[arg(long, hide = true)]
    inject_fault: Option<String>,
}

fn load_graph(path: &Path) -> Result<Graph, Error> {
    let file = fs::File::open(path).map_err(|e| Error::Io {
        path: path.into(),
        source: e,
    })?;
    read_edge_list(BufReader::new(file))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Error> {
    fs::write(path, bytes).map_err(|e| Error::Io {
        path: path.into(),
        source: e,
    })
}

fn stdout_error(e: io::Error) -> Error {
    Error::Io {
        path: "<stdout>".into(),
        source: e,
    }
}

fn edge_bytes(g: &Graph) -> Vec<u8> {
    let mut buf = Vec::new();
    write_edge_list(g, &mut buf).expect("writing to memory");
    buf
}

fn sample(args: &SampleArgs) -> Result<ExitCode, Error> {
    let spec = ModelSpec::load(&args.model)?;
    let probs = build_probabilities(&spec)?;
    let stream = RngStream::new(args.seed, args.index);
    if args.single {
        let g = sample_graph(&probs, &stream);
        match &args.out {
            Some(dir) => write_file(&dir.join("graph.edges"), &edge_bytes(&g))?,
            None => io::stdout().write_all(&edge_bytes(&g)).map_err(stdout_error)?,
        }
        return Ok(ExitCode::SUCCESS);
    }
    let Some(dir) = &args.out else {
        return Err(Error::Input("sampling a pair needs --out".into()));
    };
    let pair = sample_correlated_pair(&probs, args.s, &stream)?;
    write_file(&dir.join("g1.edges"), &edge_bytes(&pair.g1))?;
    write_file(&dir.join("g2.edges"), &edge_bytes(&pair.g2))?;
    write_file(
        &dir.join("pi_star.json"),
        serde_json::to_string(&pair.pi_star)?.as_bytes(),
    )?;
    info!("wrote pair with seed {} to {}", stream.seed(), dir.display());
    Ok(ExitCode::SUCCESS)
}

fn core(args: &CoreArgs) -> Result<ExitCode, Error> {
    let g = load_graph(&args.graph)?;
    let mut out = String::new();
    if args.numbers {
        for (v, c) in core_numbers(&g).into_iter().enumerate() {
            out.push_str(&format!("{v} {c}\n"));
        }
    } else {
        for v in k_core(&g, args.k).iter() {
            out.push_str(&format!("{v}\n"));
        }
    }
    io::stdout().write_all(out.as_bytes()).map_err(stdout_error)?;
    Ok(ExitCode::SUCCESS)
}

fn matching(args: &MatchArgs) -> Result<ExitCode, Error> {
    let g1 = load_graph(&args.g1)?;
    let g2 = load_graph(&args.g2)?;
    let mu = brute_force_k_core_estimator(&g1, &g2, args.k)?;
    println!("{}", serde_json::to_string(&mu)?);
    Ok(ExitCode::SUCCESS)
}

fn check(args: &CheckArgs) -> Result<ExitCode, Error> {
    let spec = ModelSpec::load(&args.model)?;
    let mut reports = Vec::new();
    if args.condition != "partial" {
        reports.push(check_exact_condition(
            &spec,
            args.s,
            args.alpha,
            args.epsilon,
            args.k,
        )?);
    }
    if args.condition != "exact" {
        reports.push(check_partial_condition(&spec, args.s)?);
    }
    println!("{}", serde_json::to_string_pretty(&reports)?);
    Ok(if reports.iter().all(|r| r.verdict.holds()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn sweep(args: &SweepArgs) -> Result<ExitCode, Error> {
    let cfg = args.overrides.apply(ExperimentConfig::load(&args.config)?)?;
    if cfg.mode == Mode::Lemmas {
        return Err(Error::Input("lemmas mode runs under verify-lemmas".into()));
    }
    let result = run_sweep(&cfg, args.threads)?;
    match (&cfg.output_path, cfg.raw_output_path()) {
        (Some(summary), Some(raw)) => {
            result.write(summary, &raw)?;
            info!("wrote {} and {}", summary.display(), raw.display());
        }
        _ => io::stdout()
            .write_all(&result.summary_csv()?)
            .map_err(stdout_error)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn lemmas(args: &LemmaArgs) -> Result<ExitCode, Error> {
    let base = match &args.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig {
            model: ModelSpec::er(2, 0.0),
            s: 1.0,
            k: 1,
            trials: 1,
            master_seed: 0,
            sweep: None,
            mode: Mode::Lemmas,
            output_path: None,
            alpha: 1.0,
            epsilon: 0.1,
            min_degree_threshold: None,
            timing: false,
            inject_fault: None,
        },
    };
    let mut cfg = args.overrides.apply(base)?;
    if args.inject_fault.is_some() {
        cfg.inject_fault = args.inject_fault.clone();
    }
    let report = verify_lemmas(&cfg)?;
    match &cfg.output_path {
        Some(path) => report.write(path)?,
        None => println!("{}", serde_json::to_string_pretty(&report)?),
    }
    for c in &report.checks {
        eprintln!(
            "{} {} (measured {}, bound {})",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.measured,
            c.bound
        );
    }
    Ok(if report.all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Sample(a) => sample(a),
        Command::Core(a) => core(a),
        Command::Match(a) => matching(a),
        Command::Check(a) => check(a),
        Command::Sweep(a) => sweep(a),
        Command::VerifyLemmas(a) => lemmas(a),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_config_or_io() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
