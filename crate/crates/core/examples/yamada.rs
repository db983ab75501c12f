//! Yamada's number-variance condition at the terminal densities.
//!
//! cargo run --release --example yamada

use spherebound::models::{PackingDensity, RadialModel};
use spherebound::optimizer::{terminal_delta, terminal_gap};
use spherebound::variance::yamada_check;

fn report(label: &str, model: RadialModel, density: PackingDensity) {
    let check = yamada_check(&model, &density, 10.0, 500).expect("variance evaluation");
    let first = check.violations.first().map_or("none".to_string(), |r| format!("{r:.6e}"));
    println!(
        "{label:<16} R0={:.6e} points={} violations={} first={first}",
        check.r0,
        check.r.len(),
        check.violations.len()
    );
}

fn main() {
    for d in [1u32, 2, 3] {
        let t = terminal_delta(d).unwrap();
        let model = RadialModel::step_delta(t.z_star).unwrap();
        report(&format!("delta d={d}"), model, PackingDensity::new(d, t.phi_star).unwrap());
    }
    report("step d=3", RadialModel::step(), PackingDensity::new(3, 0.125).unwrap());
    for d in [2u32, 3, 8, 24] {
        let t = terminal_gap(d).unwrap();
        let model = RadialModel::gap(t.sigma_star, t.z_star).unwrap();
        report(&format!("gap d={d}"), model, PackingDensity::new(d, t.phi_star).unwrap());
    }
}
