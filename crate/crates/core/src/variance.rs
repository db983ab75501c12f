//! Number variance in spherical windows and the Yamada realizability check.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::alpha2;
use crate::models::{PackingDensity, RadialModel};
use crate::quad::{self, Tolerance};

const HALF_INTEGER_SAMPLES: usize = 2000;
const VIOLATION_TOL: f64 = 1e-10;

/// Variance of the number of centers in a window of radius `R`:
///
/// ```text
/// sigma^2(R) = N [1 - rho int_0^sigma alpha2(r;R) s1(r) dr + Z alpha2(1;R)],
/// ```
///
/// with `N = rho v1(R) = phi (2R)^d`. The contact shell enters analytically.
pub fn number_variance(model: &RadialModel, density: &PackingDensity, radius: f64) -> Result<f64> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::invalid(format!("window radius must be positive, got {radius}")));
    }
    if density.phi == 0.0 {
        return Ok(0.0);
    }
    let d = density.d;
    let dd = d as f64;
    let ln_n = density.phi.ln() + dd * (2.0 * radius).ln();
    // rho s1(r) = phi d 2^d r^{d-1}
    let ln_pref = density.phi.ln() + dd.ln() + dd * std::f64::consts::LN_2;
    let upper = model.sigma.min(2.0 * radius);
    let integrand = |r: f64| {
        if r == 0.0 {
            return if d == 1 { ln_pref.exp() } else { 0.0 };
        }
        (ln_pref + (dd - 1.0) * r.ln()).exp() * alpha2(d, r, radius)
    };
    let hole = quad::integrate(integrand, 0.0, upper, Tolerance::new(1e-300, 1e-12))?;
    let shell = if model.z == 0.0 { 0.0 } else { model.z * alpha2(d, 1.0, radius) };
    let bracket = 1.0 - hole + shell;
    Ok(ln_n.exp() * bracket)
}

/// `2^d phi R^d (1 - 2^d phi R^d)`.
pub fn variance_lower_bound(d: u32, phi: f64, radius: f64) -> f64 {
    let n = (phi.ln() + d as f64 * (2.0 * radius).ln()).exp();
    n * (1.0 - n)
}

/// Radius beyond which the Yamada condition is not implied by the lower bound.
pub fn yamada_radius(d: u32, phi: f64) -> f64 {
    0.5 / phi.powf(1.0 / d as f64)
}

/// `theta (1 - theta)` with `theta` the fractional part of the expected count.
pub fn yamada_bound(expected: f64) -> f64 {
    let theta = expected - expected.floor();
    theta * (1.0 - theta)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VarianceCheck {
    #[serde(rename = "R")]
    pub r: Vec<f64>,
    pub sigma2: Vec<f64>,
    pub yamada_bound: Vec<f64>,
    #[serde(rename = "R0")]
    pub r0: f64,
    pub violations: Vec<f64>,
}

impl VarianceCheck {
    pub fn violated(&self, i: usize) -> bool {
        self.sigma2[i] < self.yamada_bound[i] - VIOLATION_TOL
    }
}

/// Radii on `(R0, R_max]`: a geometric grid plus the radii where the expected
/// count is a half-integer, where the bound peaks.
fn radius_grid(d: u32, phi: f64, r0: f64, r_max: f64, n_grid: usize) -> Vec<f64> {
    let start = r0 * (1.0 + 1e-6);
    let mut grid: Vec<f64> = if n_grid == 1 {
        vec![r_max]
    } else {
        let ratio = (r_max / start).ln() / (n_grid - 1) as f64;
        (0..n_grid).map(|i| start * (ratio * i as f64).exp()).collect()
    };
    let dd = d as f64;
    for m in 1..=HALF_INTEGER_SAMPLES {
        let r = 0.5 * ((m as f64 + 0.5) / phi).powf(1.0 / dd);
        if r > r_max {
            break;
        }
        if r > start {
            grid.push(r);
        }
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    grid
}

/// Evaluate `sigma^2(R) >= theta(1-theta)` on `(R0, R_max]`.
pub fn yamada_check(
    model: &RadialModel,
    density: &PackingDensity,
    r_max: f64,
    n_grid: usize,
) -> Result<VarianceCheck> {
    if !(density.phi > 0.0 && density.phi < 1.0) {
        return Err(Error::invalid(format!("phi must lie in (0, 1), got {}", density.phi)));
    }
    if n_grid == 0 {
        return Err(Error::invalid("grid must have at least one point"));
    }
    let r0 = yamada_radius(density.d, density.phi);
    if !(r_max > r0) {
        return Err(Error::invalid(format!("R_max = {r_max} must exceed R0 = {r0}")));
    }
    let r = radius_grid(density.d, density.phi, r0, r_max, n_grid);
    let dd = density.d as f64;
    let mut sigma2 = Vec::with_capacity(r.len());
    let mut bound = Vec::with_capacity(r.len());
    for &radius in &r {
        sigma2.push(number_variance(model, density, radius)?);
        let expected = (density.phi.ln() + dd * (2.0 * radius).ln()).exp();
        bound.push(yamada_bound(expected));
    }
    let mut check = VarianceCheck {
        r,
        sigma2,
        yamada_bound: bound,
        r0,
        violations: Vec::new(),
    };
    check.violations = (0..check.r.len())
        .filter(|&i| check.violated(i))
        .map(|i| check.r[i])
        .collect();
    Ok(check)
}
