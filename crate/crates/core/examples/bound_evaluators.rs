//! The closed-form bounds that start the reductions, evaluated with
//! certified arithmetic.
//!
//!     cargo run --example bound_evaluators

use kpell::linforms::{
    guzman_luca_bound, large_k_bound, lemma31_bound, lemma41a_bound, lemma41b_chain,
    matveev_smooth_coefficient, smooth_coefficient_reference, thm11_threshold,
};
use kpell::pell::dominant_root;

fn main() -> kpell::Result<()> {
    for k in [2u32, 100, 2500] {
        println!("n bound for smooth terms, k = {k}: {}", lemma41a_bound(k)?.to_sci(4));
    }
    let chain = lemma41b_chain()?;
    for (name, v) in &chain.intermediates {
        println!("large-k chain: {name} = {}", v.to_sci(4));
    }
    println!("large-k chain: n bound = {}", chain.bound.to_sci(4));
    println!("k bound for s = 4 primes: {}", large_k_bound(4)?.to_sci(4));
    for k in [2u32, 100] {
        let log_alpha = dominant_root(k, 40)?.alpha.ln(40)?;
        let derived = matveev_smooth_coefficient(k, &log_alpha)?.bound;
        let printed = smooth_coefficient_reference(k)?;
        println!(
            "k = {k}: Matveev coefficient {} vs 1.5e21 k^7 (log k)^2 = {}",
            derived.to_sci(4),
            printed.to_sci(4)
        );
    }
    println!("log n bound (s = 4, k = 10): {}", lemma31_bound(4, 10)?.to_sci(6));
    let t = kpell::linforms::sci(1, 30);
    println!("x/(log x)^4 < 1e30 implies x < {}", guzman_luca_bound(4, &t)?.to_sci(4));
    println!("(1/104) log log 500 = {}", thm11_threshold(500)?.to_sci(6));
    Ok(())
}
