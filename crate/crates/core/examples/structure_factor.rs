//! Optimized structure factors for d = 12 and d = 24, written as CSV.
//!
//! cargo run --release --example structure_factor > sk.csv

use spherebound::models::{default_k_max, PackingDensity, RadialModel, StructureFactorCurve};
use spherebound::optimizer::{find_minima, terminal_gap};
use spherebound::output::sci;

fn main() {
    println!("d,k,S");
    for d in [12u32, 24] {
        let r = terminal_gap(d).expect("optimum");
        let model = RadialModel::gap(r.sigma_star, r.z_star).unwrap();
        let density = PackingDensity::new(d, r.phi_star).unwrap();
        let k_max = default_k_max(d).unwrap();
        let mut curve = StructureFactorCurve::sample(model, density, k_max, 1024).unwrap();
        let scan = find_minima(d, r.phi_star, r.sigma_star, r.z_star, k_max).unwrap();
        let ks: Vec<f64> = scan.minima.iter().map(|m| m.k).collect();
        curve.refine_at(&ks).unwrap();
        eprintln!(
            "d={d}: S(0)={:.1e}, {} minima, deepest at k={:.6}, first is deepest: {}",
            curve.s_at_zero(),
            scan.minima.len(),
            r.k_min,
            scan.first_is_deepest()
        );
        for (k, s) in curve.k.iter().zip(&curve.s) {
            println!("{d},{},{}", sci(*k), sci(*s));
        }
    }
}
