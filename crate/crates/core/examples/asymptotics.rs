//! Large-d constants and their comparison with the numeric optimum.
//!
//! cargo run --release --example asymptotics -- 200

use spherebound::asymptotics::{kissing_asymptotic, phi_star_asymptotic, report};
use spherebound::optimizer::terminal_gap;

fn main() {
    let d: u32 = std::env::args().nth(1).map_or(200, |s| s.parse().expect("dimension"));
    let numeric = terminal_gap(d).expect("optimum");
    let rep = report(d, &numeric).expect("report");
    let c = &rep.constants;
    println!("q1 = {:.11}  q2 = {:.10}  Q1 = {:.10}", c.q1, c.q2, c.big_q1);
    println!("C1 = {:.10}  C1 refined = {:.10}  D1 = {:.10}", c.c1, c.c1_refined, c.d1_refined);
    println!("phi* ~ {:.6} d^(1/6) 2^(-{:.10} d)", rep.phi_coefficient, c.phi_exponent);
    println!();
    for cmp in &rep.comparisons {
        println!("{:<18} {:>14.7e} {:>14.7e} {:>+10.2e}", cmp.quantity, cmp.asymptotic, cmp.numeric, cmp.rel_error);
    }
    println!();
    for dd in [100u32, 200, 400, 800] {
        let phi = phi_star_asymptotic(dd).unwrap();
        println!("d={dd:<4} phi*~{:.4e} kissing~{:.4e}", phi.full, kissing_asymptotic(dd).unwrap());
    }
}
