//! Checks that the largest prime factor of P_n^(k) exceeds (1/104) log log n
//! on a small grid, and prints the weakest case per k.
//!
//!     cargo run --release --example thm11_check [k_max] [n_max]

use kpell::solver::{run_thm11_verification, PipelineConfig};

fn main() -> kpell::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<i64>().ok());
    let cfg = PipelineConfig {
        k_max: args.next().flatten().unwrap_or(10) as u32,
        n_max: args.next().flatten().unwrap_or(200),
        worker_count: 4,
        ..Default::default()
    };
    let report = run_thm11_verification(&cfg)?;
    for r in &report.records {
        println!(
            "k = {:>3}: {} terms, {} violations, smallest prime bound {} at n = {}",
            r["k"], r["checked"], r["violations"], r["weakest_prime_bound"].as_str().unwrap_or("?"), r["weakest_n"]
        );
    }
    println!("verdict: {}", report.verdict);
    Ok(())
}
