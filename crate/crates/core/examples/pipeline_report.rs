//! Drives the pipeline from a flat configuration file and writes JSON and
//! CSV reports to a temporary directory.
//!
//!     cargo run --release --example pipeline_report

use kpell::solver::{emit_report, run_tau2_report, run_theorem12_search, PipelineConfig, ReportFormat};

fn main() -> kpell::Result<()> {
    let dir = std::env::temp_dir().join("kpell-example");
    std::fs::create_dir_all(&dir).map_err(|e| kpell::Error::Io { path: dir.clone(), source: e })?;
    let config = dir.join("desk.conf");
    std::fs::write(&config, "# desk-scale search\nk_max = 20\nn_max = 120\nworkers = 2\n")
        .map_err(|e| kpell::Error::Io { path: config.clone(), source: e })?;
    let cfg = PipelineConfig::from_file(&config)?;
    let search = run_theorem12_search(&cfg)?;
    let json = dir.join("search.json");
    let csv = dir.join("search.csv");
    emit_report(&search, ReportFormat::Json, &json)?;
    emit_report(&search, ReportFormat::Csv, &csv)?;
    println!("search verdict {} -> {} and {}", search.verdict, json.display(), csv.display());
    let chain = run_tau2_report(&cfg)?;
    let out = dir.join("tau2.json");
    emit_report(&chain, ReportFormat::Json, &out)?;
    println!("tau2 verdict {} (exit code {}) -> {}", chain.verdict, chain.exit_code(), out.display());
    Ok(())
}
