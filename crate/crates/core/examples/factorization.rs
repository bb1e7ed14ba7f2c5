//! Trial division plus Brent's rho under a budget, largest prime factors and
//! 7-smooth certificates.
//!
//!     cargo run --release --example factorization

use kpell::pell::pell_number;
use kpell::smooth::{factorize, largest_prime_factor, primality, seven_smooth_decompose, FactorBudget};
use num_bigint::BigInt;

fn main() -> kpell::Result<()> {
    let budget = FactorBudget::default();
    for m in [2378u64, 4116, 600851475143, 18446744073709551557] {
        let m = BigInt::from(m);
        let f = factorize(&m, &budget);
        let parts: Vec<String> = f.factors.iter().map(|(p, e)| format!("{p}^{e}")).collect();
        println!("{m} = {}   complete: {}", parts.join(" * "), f.complete);
    }
    let p = pell_number(3, 80)?;
    let (lpf, exact) = largest_prime_factor(&p, &budget);
    println!("P_80^(3) = {p}\n  largest prime factor {} {lpf}", if exact { "=" } else { ">=" });
    let cert = seven_smooth_decompose(&pell_number(5, 10)?)?;
    println!("P_10^(5): {:?}", cert.kind);
    let mersenne: BigInt = (BigInt::from(1) << 127u32) - 1;
    println!("2^127 - 1 is {:?}", primality(mersenne.magnitude()));
    let tight = FactorBudget::trial_only(100);
    let (lb, exact) = largest_prime_factor(&BigInt::from(1_000_003u64 * 999_983), &tight);
    println!("with trial division to 100 only: largest prime factor >= {lb} (exact: {exact})");
    Ok(())
}
