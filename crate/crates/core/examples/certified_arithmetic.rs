//! Fixed-point reals with a certified error: logarithms and square roots to
//! many digits, and floors that are refused when uncertain.
//!
//!     cargo run --release --example certified_arithmetic [digits]

use kpell::bigfix::{fr_ln, fr_sqrt, golden_ratio, FixedReal};

fn main() -> kpell::Result<()> {
    let digits: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(200);
    let ln2 = fr_ln(&FixedReal::from_int(2), digits)?;
    let sqrt5 = fr_sqrt(&FixedReal::from_int(5), digits)?;
    println!("ln 2   = {ln2}");
    println!("sqrt 5 = {sqrt5}");
    println!("phi    = {}", golden_ratio(digits));
    println!("floor(10^50 ln 2) = {}", ln2.floor_scaled(50)?);
    let third: FixedReal = "0.333333333333".parse()?;
    let wide = FixedReal::new(third.mantissa().clone(), third.scale(), 5u32.into());
    match wide.floor_scaled(12) {
        Ok(v) => println!("floor = {v}"),
        Err(e) => println!("floor of 0.333333333333 +- 5e-12 at 10^12: {e}"),
    }
    Ok(())
}
