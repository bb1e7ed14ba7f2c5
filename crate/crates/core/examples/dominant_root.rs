//! Certified enclosures of the dominant root alpha(k) and of f_k(alpha),
//! with the Binet-type estimate checked against exact terms.
//!
//!     cargo run --example dominant_root [scale]

use kpell::pell::{binet_error_below_half, dominant_root, pell_number, root_interval_holds};

fn main() -> kpell::Result<()> {
    let scale: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(30);
    println!("phi^2 = 2.618033988749894848204586834365638117720...");
    for k in [2u32, 3, 4, 5, 10, 20, 50] {
        let r = dominant_root(k, scale)?;
        println!("k = {k:>2}  alpha = {}  f_k(alpha) = {}", r.alpha, r.fk_alpha.to_sci(12));
        let binet_ok = (2..=60).all(|n| {
            let p = pell_number(k, n).expect("valid index");
            binet_error_below_half(&r, n, &p).unwrap_or(false)
        });
        println!(
            "        bracket and f_k range hold: {}   |P_n - f_k(alpha) alpha^n| < 1/2 for n <= 60: {binet_ok}",
            root_interval_holds(k)?
        );
    }
    Ok(())
}
