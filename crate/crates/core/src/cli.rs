//! The `efn` command line.

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::error::{EfnError, Result};
use crate::experiment::{
    run_figure, run_suite, write_stats_csv, write_summary_json, ExperimentConfig, FigureId, FigureOptions,
    VerifySuite, DEFAULT_VERIFY_SEED,
};
use crate::signal::io::{write_signal_csv, write_signal_json};
use crate::signal::{generate_template, SignalFamily, SignalFamilySpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "efn", version, about = "Template matching on pure noise: simulation and verification")]
pub struct Cli {
    /// Worker thread cap.
    #[arg(long, global = true, env = "EFN_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run an experiment described by a JSON config.
    Run(RunArgs),
    /// Reproduce a figure analog as CSV (2b, 2c, 3, 4b, 4c).
    Figure(FigureArgs),
    /// Run an invariant suite (alignment, symmetry, gumbel, prop3, lemma1, all).
    Verify(VerifyArgs),
    /// Write a template signal to CSV or JSON.
    GenTemplate(GenTemplateArgs),
    /// Print the tool version.
    Version,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    pub config: PathBuf,
    #[arg(long, default_value = "efn-out")]
    pub out: PathBuf,
    #[arg(long = "m", alias = "M")]
    pub m: Option<u64>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long)]
    pub prediction_trials: Option<usize>,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    pub id: String,
    #[arg(long, default_value = "efn-out")]
    pub out: PathBuf,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long = "m", alias = "M")]
    pub m: Option<u64>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub suite: String,
    #[arg(long, default_value_t = DEFAULT_VERIFY_SEED)]
    pub seed: u64,
    /// Also write the report and a manifest to this directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenTemplateArgs {
    #[arg(long, value_parser = parse_family, default_value = "power-law")]
    pub family: SignalFamily,
    #[arg(long, default_value_t = 1024)]
    pub d: usize,
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    #[arg(long, default_value_t = 0.0)]
    pub pad_ratio: f64,
    #[arg(long, default_value_t = 0)]
    pub phase_seed: u64,
    #[arg(long)]
    pub zero_dc: bool,
    /// Output path; `.json` writes JSON, anything else CSV.
    #[arg(long, default_value = "template.csv")]
    pub out: PathBuf,
}

fn parse_family(s: &str) -> std::result::Result<SignalFamily, String> {
    match s {
        "delta" => Ok(SignalFamily::Delta),
        "power-law" => Ok(SignalFamily::PowerLaw),
        "zero-padded-pulse" => Ok(SignalFamily::ZeroPaddedPulse),
        _ => Err(format!("unknown family `{s}`; expected delta, power-law or zero-padded-pulse")),
    }
}

/// Written next to every output.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub config: serde_json::Value,
    pub version: String,
    pub wall_clock_seconds: f64,
    pub outputs: Vec<String>,
}

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<EfnError> for Failure {
    fn from(e: EfnError) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

/// Parse `args` and run; returns the process exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            EXIT_RUNTIME
        }
    }
}

fn execute(cli: Cli) -> std::result::Result<(), Failure> {
    let pool = match cli.threads {
        Some(0) => return Err(Failure::Usage("--threads must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    }
    .map_err(|e| Failure::Runtime(e.to_string()))?;
    pool.install(|| match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Figure(args) => cmd_figure(args),
        Command::Verify(args) => cmd_verify(args),
        Command::GenTemplate(args) => cmd_gen_template(args),
        Command::Version => {
            println!("efn {VERSION}");
            Ok(())
        }
    })
}

fn write_manifest(path: &Path, command: &str, config: serde_json::Value, started: Instant, outputs: Vec<PathBuf>) -> Result<()> {
    let manifest = RunManifest {
        command: command.to_string(),
        config,
        version: VERSION.to_string(),
        wall_clock_seconds: started.elapsed().as_secs_f64(),
        outputs: outputs.iter().map(|p| p.display().to_string()).collect(),
    };
    serde_json::to_writer_pretty(BufWriter::new(File::create(path)?), &manifest)?;
    Ok(())
}

fn cmd_run(args: RunArgs) -> std::result::Result<(), Failure> {
    let started = Instant::now();
    let path = args.config.display().to_string();
    let text = fs::read_to_string(&args.config).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
    let mut config = ExperimentConfig::from_json_str(&text).map_err(|e| Failure::Usage(format!("{path}:{e}")))?;
    if let Some(m) = args.m {
        config.m = m;
    }
    if let Some(t) = args.trials {
        config.trials = t;
    }
    if let Some(s) = args.seed {
        config.master_seed = s;
    }
    if let Some(s) = args.sigma {
        config.sigma = s;
    }
    if let Some(p) = args.prediction_trials {
        config.prediction_trials = p;
    }
    config.validate().map_err(|e| Failure::Usage(format!("command line: {e}")))?;
    let stats = crate::experiment::run_experiment(&config)?;
    fs::create_dir_all(&args.out)?;
    let csv_path = args.out.join("stats.csv");
    let json_path = args.out.join("summary.json");
    write_stats_csv(&stats, BufWriter::new(File::create(&csv_path)?))?;
    write_summary_json(&stats, BufWriter::new(File::create(&json_path)?))?;
    let config_json = serde_json::to_value(&config).map_err(EfnError::from)?;
    write_manifest(&args.out.join("manifest.json"), "run", config_json, started, vec![csv_path, json_path])?;
    println!("pearson {} ± {}", stats.pearson.mean, stats.pearson.stderr);
    println!("wrote {}", args.out.display());
    Ok(())
}

fn cmd_figure(args: FigureArgs) -> std::result::Result<(), Failure> {
    let started = Instant::now();
    let id: FigureId = args.id.parse().map_err(|e: EfnError| Failure::Usage(e.to_string()))?;
    let opts = FigureOptions { d: args.d, m: args.m, trials: args.trials, seed: args.seed };
    let table = run_figure(id, &opts)?;
    fs::create_dir_all(&args.out)?;
    let csv_path = args.out.join(format!("figure-{}.csv", id.as_str()));
    table.write_csv(BufWriter::new(File::create(&csv_path)?))?;
    let config = serde_json::json!({ "figure": id, "options": opts, "experiments": table.configs });
    write_manifest(&args.out.join(format!("figure-{}.manifest.json", id.as_str())), "figure", config, started, vec![csv_path.clone()])?;
    println!("wrote {}", csv_path.display());
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> std::result::Result<(), Failure> {
    let started = Instant::now();
    let suite: VerifySuite = args.suite.parse().map_err(|e: EfnError| Failure::Usage(e.to_string()))?;
    let report = run_suite(suite, args.seed)?;
    print!("{}", report.render());
    if let Some(out) = &args.out {
        fs::create_dir_all(out)?;
        let path = out.join(format!("verify-{}.json", suite.as_str()));
        serde_json::to_writer_pretty(BufWriter::new(File::create(&path)?), &report).map_err(EfnError::from)?;
        let config = serde_json::json!({ "suite": suite, "seed": args.seed });
        write_manifest(&out.join(format!("verify-{}.manifest.json", suite.as_str())), "verify", config, started, vec![path])?;
    }
    if report.all_pass() {
        Ok(())
    } else {
        Err(Failure::Runtime(format!("{} of {} checks failed", report.lines.iter().filter(|l| !l.pass).count(), report.lines.len())))
    }
}

fn cmd_gen_template(args: GenTemplateArgs) -> std::result::Result<(), Failure> {
    let started = Instant::now();
    let spec = SignalFamilySpec {
        family: args.family,
        d: args.d,
        beta: args.beta,
        pad_ratio: args.pad_ratio,
        phase_seed: args.phase_seed,
        zero_dc: args.zero_dc,
        samples: None,
    };
    spec.check().map_err(|(field, msg)| Failure::Usage(format!("{field}: {msg}")))?;
    let template = generate_template(&spec)?;
    if let Some(dir) = args.out.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let file = BufWriter::new(File::create(&args.out)?);
    if args.out.extension().is_some_and(|e| e == "json") {
        write_signal_json(file, template.samples())?;
    } else {
        write_signal_csv(file, template.samples())?;
    }
    let mut manifest_path = args.out.clone().into_os_string();
    manifest_path.push(".manifest.json");
    let config = serde_json::to_value(&spec).map_err(EfnError::from)?;
    write_manifest(Path::new(&manifest_path), "gen-template", config, started, vec![args.out.clone()])?;
    println!("wrote {}", args.out.display());
    Ok(())
}
