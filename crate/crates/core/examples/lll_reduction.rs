//! Exact LLL reduction of a small integer lattice, with the unimodular
//! transform, Gram-Schmidt data and a text round trip.
//!
//!     cargo run --example lll_reduction

use kpell::lattice::{default_delta, gram_schmidt, is_reduced, lll_reduce_with_transform, IntLattice};

fn main() -> kpell::Result<()> {
    let basis: IntLattice = "# one basis vector per line\n\
                             1 0 0 31415926\n0 1 0 27182818\n0 0 1 14142135\n0 0 0 100000000\n"
        .parse()?;
    println!("input basis (det {}):\n{basis}", basis.determinant());
    let delta = default_delta();
    let (reduced, transform) = lll_reduce_with_transform(&basis, &delta)?;
    println!("reduced basis (det {}):\n{reduced}", reduced.determinant());
    println!("transform rows (new b_i in terms of old):");
    for row in &transform {
        let row: Vec<String> = row.iter().map(ToString::to_string).collect();
        println!("  [{}]", row.join(", "));
    }
    let gs = gram_schmidt(&reduced)?;
    for (i, n) in gs.norms_sq.iter().enumerate() {
        println!("|b*_{i}|^2 = {n}");
    }
    println!("LLL-reduced with delta = {delta}: {}", is_reduced(&reduced, &delta)?);
    let back: IntLattice = reduced.to_text().parse()?;
    assert_eq!(back, reduced);
    Ok(())
}
