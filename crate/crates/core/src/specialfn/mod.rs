//! Gamma-derived helpers, Bessel functions and their first zeros.

mod bessel;
mod zeros;

pub use bessel::{
    bessel_j, bessel_j_log, j_half, j_three_halves, normalized_j, watson_error_scale, watson_j,
    LogValue,
};
pub use zeros::{first_zero, zero_asymptotic, ZeroKind, ZeroTriple, OLVER_A1, OLVER_A2, OLVER_A3};

use std::f64::consts::PI;

pub use statrs::function::gamma::ln_gamma;

/// `ln` of the volume of a d-ball of radius `r`.
pub fn ln_sphere_volume(d: u32, r: f64) -> f64 {
    let nu = 0.5 * d as f64;
    nu * PI.ln() + d as f64 * r.ln() - ln_gamma(1.0 + nu)
}

/// Volume of a d-dimensional ball of radius `r`.
pub fn sphere_volume(d: u32, r: f64) -> f64 {
    if r == 0.0 {
        return 0.0;
    }
    ln_sphere_volume(d, r).exp()
}

/// Surface area `2 pi^{d/2} r^{d-1} / Gamma(d/2)` of a d-dimensional sphere.
pub fn sphere_surface(d: u32, r: f64) -> f64 {
    if d == 1 {
        return 2.0;
    }
    if r == 0.0 {
        return 0.0;
    }
    let nu = 0.5 * d as f64;
    (2.0f64.ln() + nu * PI.ln() + (d as f64 - 1.0) * r.ln() - ln_gamma(nu)).exp()
}

/// Riemann zeta for real `s > 1`, via Euler-Maclaurin summation.
pub fn zeta(s: f64) -> f64 {
    assert!(s > 1.0, "zeta requires s > 1");
    const N: usize = 20;
    // B_2k / (2k)!
    const B: [f64; 8] = [
        1.0 / 6.0 / 2.0,
        -1.0 / 30.0 / 24.0,
        1.0 / 42.0 / 720.0,
        -1.0 / 30.0 / 40320.0,
        5.0 / 66.0 / 3628800.0,
        -691.0 / 2730.0 / 479001600.0,
        7.0 / 6.0 / 87178291200.0,
        -3617.0 / 510.0 / 20922789888000.0,
    ];
    let n = N as f64;
    let mut sum: f64 = (1..N).map(|k| (k as f64).powf(-s)).sum();
    sum += n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s);
    // rising product s (s+1) ... (s+2k-2) times n^{-s-2k+1}
    let mut rising = s;
    let mut power = n.powf(-s - 1.0);
    for (k, b) in B.iter().enumerate() {
        sum += b * rising * power;
        let j = 2.0 * k as f64;
        rising *= (s + j + 1.0) * (s + j + 2.0);
        power /= n * n;
    }
    sum
}
