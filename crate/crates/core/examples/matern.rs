//! Ghost RSA and standard RSA on the line against their exact results.
//!
//! cargo run --release --example matern

use spherebound::matern::{
    chi_square_gof, ensemble_histogram, horizon_for_deficit, min_pair_distance, simulate, Kappa,
    MaternConfig, RENYI_DENSITY,
};

fn main() {
    let t = horizon_for_deficit(1, 1e-4);
    let runs: Vec<_> = (1..=20u64)
        .map(|seed| simulate(&MaternConfig::new(1, 200.0, t, Kappa::One, seed)).unwrap())
        .collect();
    let phis: Vec<f64> = runs.iter().map(|r| r.phi_hat).collect();
    let mean = phis.iter().sum::<f64>() / phis.len() as f64;
    let sd = (phis.iter().map(|p| (p - mean).powi(2)).sum::<f64>() / 19.0).sqrt();
    let gap = runs.iter().map(min_pair_distance).fold(f64::INFINITY, f64::min);
    println!("ghost RSA d=1 T={t:.6e}: mean phi={mean:.6e} sd={sd:.6e} exact={:.6e}", runs[0].phi_analytic.unwrap());
    println!("smallest pair distance {gap:.6e}");
    let ens = ensemble_histogram(&runs).unwrap();
    let reference = runs[0].g2_analytic.clone().unwrap();
    let gof = chi_square_gof(&ens, &reference, 1.0, 3.0).unwrap();
    println!(
        "g2 chi-square {:.3} on {} bins (95% critical {:.3}, p={:.3})",
        gof.statistic, gof.dof, gof.critical_95, gof.p_value
    );

    let mut sat = Vec::new();
    for seed in 1..=20u64 {
        let mut cfg = MaternConfig::new(1, 200.0, 1.0, Kappa::Zero, seed);
        cfg.saturate = true;
        sat.push(simulate(&cfg).unwrap().phi_hat);
    }
    let m = sat.iter().sum::<f64>() / sat.len() as f64;
    println!("RSA d=1 saturation: mean phi={m:.6e} (Renyi {RENYI_DENSITY:.6e})");

    let r2 = simulate(&MaternConfig::new(2, 40.0, 50.0, Kappa::One, 1)).unwrap();
    println!("ghost RSA d=2 T=50 L=40: phi={:.6e} exact={:.6e}", r2.phi_hat, r2.phi_analytic.unwrap());
}
