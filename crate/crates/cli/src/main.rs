use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use mzv_core::tasks::{run_task, RingField, RingRef, RunConfig, TaskRegistry};
use mzv_core::MzvError;
use serde_json::{Map, Value};

/// Multiple zeta values in positive characteristic: run one verification task.
#[derive(Debug, Parser)]
#[command(name = "mzv", version)]
struct Cli {
    /// JSON run config; the flags below override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Built-in ring label (repeat for several rings).
    #[arg(long)]
    ring: Vec<String>,
    #[arg(long)]
    task: Option<String>,
    /// Task parameter as key=value; the value is read as JSON when it parses.
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,
    #[arg(long)]
    prec: Option<u64>,
    /// Enumeration cap.
    #[arg(long)]
    cap: Option<u128>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    /// Report path (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write elapsed_ms as 0 so reruns give byte-identical files.
    #[arg(long)]
    no_elapsed: bool,
    /// List the registered tasks and exit.
    #[arg(long)]
    list_tasks: bool,
}

fn build_config(cli: &Cli) -> Result<RunConfig, MzvError> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| MzvError::Io(format!("{}: {e}", path.display())))?;
            RunConfig::from_json(&text)?
        }
        None => {
            let task = cli.task.clone().ok_or_else(|| MzvError::Config("--task or --config is required".into()))?;
            if cli.ring.is_empty() {
                return Err(MzvError::Config("--ring or --config is required".into()));
            }
            RunConfig {
                ring: RingField::Many(vec![]),
                task,
                params: Map::new(),
                caps: Default::default(),
                out: None,
                shtuka: None,
                description: None,
            }
        }
    };
    if let Some(t) = &cli.task {
        cfg.task = t.clone();
    }
    if !cli.ring.is_empty() {
        cfg.ring = RingField::Many(cli.ring.iter().map(|l| RingRef::Label(l.clone())).collect());
    }
    for p in &cli.params {
        let (k, v) = p.split_once('=').ok_or_else(|| MzvError::Config(format!("--param {p}: expected key=value")))?;
        let value = serde_json::from_str(v).unwrap_or_else(|_| Value::String(v.to_string()));
        cfg.params.insert(k.to_string(), value);
    }
    if let Some(p) = cli.prec {
        cfg.params.insert("prec".into(), p.into());
    }
    if cli.cap.is_some() {
        cfg.caps.cap = cli.cap;
    }
    if cli.jobs.is_some() {
        cfg.caps.jobs = cli.jobs;
    }
    if let Some(o) = &cli.out {
        cfg.out = Some(o.display().to_string());
    }
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<ExitCode, MzvError> {
    let registry = TaskRegistry::default();
    if cli.list_tasks {
        for t in registry.iter() {
            println!("{:<16} {}", t.name(), t.summary());
        }
        return Ok(ExitCode::SUCCESS);
    }
    let cfg = build_config(cli)?;
    let mut report = run_task(&registry, &cfg)?;
    if cli.no_elapsed {
        report.elapsed_ms = 0;
    }
    let text = report.to_canonical_json();
    match &cfg.out {
        Some(path) => std::fs::write(path, &text).map_err(|e| MzvError::Io(format!("{path}: {e}")))?,
        None => print!("{text}"),
    }
    Ok(match report.passed() {
        Some(false) => ExitCode::from(1),
        _ => ExitCode::SUCCESS,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("mzv: {e}");
            ExitCode::from(2)
        }
    }
}
