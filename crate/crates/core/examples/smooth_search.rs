//! Searches P_n^(k) for 7-smooth values on a grid, then checks the
//! Fibonacci-index case separately.
//!
//!     cargo run --release --example smooth_search [k_max] [n_max]

use kpell::smooth::{fibonacci_smooth_case, search_smooth_terms};

fn main() -> kpell::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<i64>().ok());
    let k_max = args.next().flatten().unwrap_or(30) as u32;
    let n_max = args.next().flatten().unwrap_or(150);
    let hits = search_smooth_terms(2..=k_max, 4..=n_max)?;
    println!("7-smooth terms with 2 <= k <= {k_max}, 4 <= n <= {n_max}:");
    for h in &hits {
        let [a, b, c, d] = h.certificate.exponents().expect("smooth");
        println!(
            "  P_{}^({}) = {} = 2^{a} 3^{b} 5^{c} 7^{d}   certificate ok: {}",
            h.n(),
            h.k(),
            h.term.value,
            h.certificate.verify()
        );
    }
    println!("odd m <= 2k+1 with F_m 7-smooth (k = {k_max}): {:?}", fibonacci_smooth_case(k_max.max(3))?);
    Ok(())
}
