//! Terminal densities of the gap model for the dimensions of the reference table.
//!
//! cargo run --release --example terminal_table

use spherebound::models::ModelKind;
use spherebound::optimizer::terminal_table;

fn main() {
    let dims = [3, 4, 5, 6, 7, 8, 24, 36, 56, 60, 64, 80, 100, 125, 150, 175, 200];
    println!("d,sigma_star,Z_star,phi_star,ratio,k_min");
    for row in terminal_table(&dims, ModelKind::StepDeltaGap) {
        match row {
            Ok(r) => println!(
                "{},{:.6e},{:.6e},{:.6e},{:.6e},{:.6e}",
                r.d, r.sigma_star, r.z_star, r.phi_star, r.ratio, r.k_min
            ),
            Err(e) => eprintln!("error: {e}"),
        }
    }
}
