//! The first thirteen non-zero terms of the order-k Pell sequences, k = 2..10.
//!
//!     cargo run --example pell_table [terms]

use kpell::pell::pell_stream;

fn main() -> kpell::Result<()> {
    let terms: i64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(13);
    print!("{:>3}", "k");
    for n in 1..=terms {
        print!(" {:>8}", format!("n={n}"));
    }
    println!();
    for k in 2..=10 {
        print!("{k:>3}");
        for t in pell_stream(k, terms)? {
            print!(" {:>8}", t.value);
        }
        println!();
    }
    Ok(())
}
