use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kpell::solver::{
    emit_report, render_report, run_pell_table, run_selftest, run_tau1_sweep, run_tau2_report,
    run_theorem12_search, run_thm11_verification, PipelineConfig, RunReport,
};
use kpell::Error;

#[derive(Parser)]
#[command(name = "kpell", version, about = "k-generalized Pell numbers: smooth terms, bound reduction and checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand)]
enum Command {
    /// Print P_1 .. P_{n-max} for every k in range
    Pell,
    /// Search the grid for 7-smooth terms and compare with the known list
    Search,
    /// Reduce the small-k bound on n (tau1_sample, or the k range)
    ReduceTau1,
    /// Run the large-k reduction chain
    ReduceTau2,
    /// Check the largest-prime-factor lower bound on the grid
    VerifyThm11,
    /// Quick consistency checks across all modules
    Selftest,
}

#[derive(Args)]
struct Opts {
    /// Flat key = value configuration file, applied before the flags
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    k_min: Option<u32>,
    #[arg(long, global = true)]
    k_max: Option<u32>,
    #[arg(long, global = true)]
    n_max: Option<i64>,
    /// Exponent of C = 10^e for the small-k reduction
    #[arg(long, global = true)]
    c_exp: Option<u32>,
    /// Spare decimal digits carried in the logarithms
    #[arg(long, global = true)]
    guard: Option<u32>,
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Pollard rho iterations per factorisation
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Report path (stdout when absent)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// json or csv
    #[arg(long, global = true)]
    format: Option<String>,
    /// File of completed k values, for resuming sweeps
    #[arg(long, global = true)]
    checkpoint: Option<PathBuf>,
    /// Any other configuration key, as key=value (repeatable)
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,
}

fn build_config(o: &Opts) -> Result<PipelineConfig, Error> {
    let mut cfg = match &o.config {
        Some(p) => PipelineConfig::from_file(p)?,
        None => PipelineConfig::default(),
    };
    let flags: [(&str, Option<String>); 10] = [
        ("k_min", o.k_min.map(|v| v.to_string())),
        ("k_max", o.k_max.map(|v| v.to_string())),
        ("n_max", o.n_max.map(|v| v.to_string())),
        ("c_exp", o.c_exp.map(|v| v.to_string())),
        ("guard", o.guard.map(|v| v.to_string())),
        ("workers", o.workers.map(|v| v.to_string())),
        ("budget", o.budget.map(|v| v.to_string())),
        ("out", o.out.as_ref().map(|p| p.display().to_string())),
        ("format", o.format.clone()),
        ("checkpoint", o.checkpoint.as_ref().map(|p| p.display().to_string())),
    ];
    for (key, value) in flags {
        if let Some(v) = value {
            cfg.set(key, &v)?;
        }
    }
    for kv in &o.set {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("--set expects KEY=VALUE, got {kv:?}")))?;
        cfg.set(k, v)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<RunReport, Error> {
    let cfg = build_config(&cli.opts)?;
    let report = match cli.command {
        Command::Pell => run_pell_table(&cfg)?,
        Command::Search => run_theorem12_search(&cfg)?,
        Command::ReduceTau1 => run_tau1_sweep(&cfg)?,
        Command::ReduceTau2 => run_tau2_report(&cfg)?,
        Command::VerifyThm11 => run_thm11_verification(&cfg)?,
        Command::Selftest => run_selftest(&cfg)?,
    };
    match &cfg.output_path {
        Some(path) => emit_report(&report, cfg.format, path)?,
        None => {
            let text = render_report(&report, cfg.format)?;
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| Error::Io { path: "<stdout>".into(), source: e })?;
        }
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let summary: Vec<String> = report
                .summary
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            eprintln!("{}: {} {}", report.stage, report.verdict, summary.join(" "));
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("kpell: {e}");
            let code = match e {
                Error::InsufficientPrecision { .. } | Error::Io { .. } | Error::Serialize { .. } => 2,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}
