//! Bessel functions and first zeros against their large-order expansions.
//!
//! cargo run --release --example bessel_zeros

use spherebound::specialfn::{bessel_j, first_zero, normalized_j, ZeroTriple};

fn main() {
    println!("{:>6} {:>16} {:>16} {:>10}", "nu", "first zero", "expansion", "rel diff");
    for nu in [10.0, 50.0, 99.0, 100.0, 101.0, 250.0] {
        let exact = ZeroTriple::exact(nu).unwrap();
        let approx = ZeroTriple::asymptotic(nu);
        println!("{nu:>6} {:>16.9} {:>16.9} {:>10.2e}", exact.x0, approx.x0, (approx.x0 - exact.x0) / exact.x0);
    }
    let x0 = first_zero(100.0).unwrap();
    println!();
    println!("J_100(x0) = {:.3e}", bessel_j(100.0, x0).unwrap());
    println!("J_100(x0/2) = {:.6e}", bessel_j(100.0, x0 / 2.0).unwrap());
    println!("Lambda_100(x0/2) = {:.6e}", normalized_j(100.0, x0 / 2.0).unwrap());
}
