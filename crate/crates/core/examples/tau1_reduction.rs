//! Reduces the bound on n for 7-smooth P_n^(k) with k <= 2500, one k at a
//! time, starting from C = 10^299.
//!
//!     cargo run --release --example tau1_reduction [k ...]

use kpell::solver::{run_tau1_reduction, PipelineConfig};

fn main() -> kpell::Result<()> {
    let mut ks: Vec<u32> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    if ks.is_empty() {
        ks = vec![2, 3, 5, 10, 50, 100, 500, 2500];
    }
    let cfg = PipelineConfig::default();
    println!("{:>5} {:>7} {:>4} {:>8} {:>12} {:>12} {:>6}", "k", "shape", "dim", "C", "c2", "c1", "n <=");
    for k in ks {
        let run = run_tau1_reduction(k, &cfg)?;
        let o = &run.outcome;
        println!(
            "{k:>5} {:>7} {:>4} {:>8} {:>12} {:>12} {:>6}",
            run.shape.to_string(),
            run.x_bounds.len(),
            o.c.to_string(),
            o.c2.to_sci(4),
            o.c1.to_sci(4),
            o.bound().map(ToString::to_string).unwrap_or_else(|| "failed".into()),
        );
    }
    Ok(())
}
