//! The three-round reduction for k > 2500: each round's bound on k feeds the
//! bound on n used by the next.
//!
//!     cargo run --release --example tau2_chain

use kpell::solver::{run_tau2_chain, PipelineConfig};

fn main() -> kpell::Result<()> {
    let cfg = PipelineConfig::default();
    for r in run_tau2_chain(&cfg)? {
        let o = &r.run.outcome;
        println!(
            "round {}: C = {:<8} n <= {:.3e}  c2 = {}  min(2n, k/2) <= {}  =>  k <= {}",
            r.round,
            o.c.to_string(),
            r.n_bound.to_string().parse::<f64>().unwrap_or(f64::INFINITY),
            o.c2.to_sci(3),
            o.bound().map(ToString::to_string).unwrap_or_else(|| "?".into()),
            r.k_out.as_ref().map(ToString::to_string).unwrap_or_else(|| "?".into()),
        );
    }
    println!("case split at k = {}", cfg.case_split);
    Ok(())
}
