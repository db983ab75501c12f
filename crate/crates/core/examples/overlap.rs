//! Scaled intersection volume of two spheres and the decay of the ghost-RSA
//! contact excess with dimension.
//!
//! cargo run --release --example overlap

use spherebound::geometry::{alpha2, alpha2_asymptotic};
use spherebound::matern::decorrelation_profile;

fn main() {
    println!("r,alpha2_d1,alpha2_d3,alpha2_d10,alpha2_d50");
    for i in 0..=20 {
        let r = 0.1 * i as f64;
        let v: Vec<String> = [1u32, 3, 10, 50].iter().map(|&d| format!("{:.6e}", alpha2(d, r, 1.0))).collect();
        println!("{r:.2},{}", v.join(","));
    }
    println!();
    println!("d,g2_contact_excess,alpha2(1;1),large_d_form");
    for (d, excess) in decorrelation_profile(200).unwrap().into_iter().filter(|(d, _)| d % 25 == 0 || *d <= 3) {
        println!("{d},{excess:.6e},{:.6e},{:.6e}", alpha2(d, 1.0, 1.0), alpha2_asymptotic(d));
    }
}
