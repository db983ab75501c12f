//! Terminal densities next to the classical bounds.
//!
//! cargo run --release --example classical

use spherebound::models::ModelKind;
use spherebound::optimizer::{classical_bounds, terminal_table};
use spherebound::output::classical_csv;

fn main() {
    let dims = [4u32, 8, 16, 24, 36, 56, 60, 64];
    let rows: Vec<_> = terminal_table(&dims, ModelKind::StepDeltaGap)
        .into_iter()
        .zip(dims)
        .map(|(r, d)| (classical_bounds(d).unwrap(), Some(r.expect("optimum").phi_star)))
        .collect();
    print!("{}", classical_csv(&rows));
}
