//! Terminal densities: the largest `phi` at which a test `g2` keeps `S(k) >= 0`.
//!
//! The step and step-plus-shell models have closed forms. For the gap model
//! the contact weight is tied to the density by hyperuniformity,
//! `Z = (2 sigma)^d phi - 1`, and with `P = (2 sigma)^d phi`
//!
//! ```text
//! S(k) = 1 - L_{nu-1}(k) + P [L_{nu-1}(k) - L_nu(k sigma)].
//! ```
//!
//! At fixed `sigma` the structure factor is affine in `P` and `1 - L_{nu-1} >= 0`,
//! so the feasible set is `P <= min_k (1 - L_{nu-1}(k)) / (L_nu(k sigma) - L_{nu-1}(k))`
//! over the wavenumbers where the denominator is positive. Its `k -> 0`
//! limit is the quadratic-coefficient constraint `P <= (d+2)/(d+2-d sigma^2)`.
//! The outer search maximizes `phi = P_max(sigma) / (2 sigma)^d` over
//! `sigma in [1, 1 + 4/d]`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::models::{
    default_k_max, small_k_quadratic, step_weight, structure_factor_gap,
    structure_factor_slope_over_k, ModelKind,
};
use crate::specialfn::{normalized_j, zeta};

const GOLDEN: f64 = 0.618_033_988_749_894_8;
const RATIO_GRID: usize = 4000;
const SIGMA_SCAN: usize = 40;
const SIGMA_TOL: f64 = 1e-10;
const K_TOL: f64 = 1e-10;
const MINIMA_STEP: f64 = 0.05;
const NEGATIVITY_TOL: f64 = 1e-9;

/// Optimizer output for one dimension and model.
///
/// `k_min` is the wavenumber at which the nonnegativity constraint binds:
/// zero for the step and step-plus-shell models, whose structure factors
/// vanish only at the origin, and the deepest positive-k minimum for the gap
/// model. `min_s_residual` is `|S(k_min)|`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TerminalDensityRecord {
    pub d: u32,
    pub model: ModelKind,
    pub sigma_star: f64,
    #[serde(rename = "Z_star")]
    pub z_star: f64,
    pub phi_star: f64,
    pub k_min: f64,
    pub ratio: f64,
    #[serde(rename = "min_S_residual")]
    pub min_s_residual: f64,
    /// Whether the first positive-k minimum of `S` is also the deepest.
    pub first_minimum_deepest: bool,
}

/// `2^{d+1} phi / (d+2)`: improvement over the step-plus-shell terminal density.
pub fn improvement_ratio(d: u32, phi: f64) -> f64 {
    let d = d as f64;
    ((d + 1.0) * 2f64.ln() + phi.ln()).exp() / (d + 2.0)
}

fn check_dimension(d: u32) -> Result<()> {
    if d == 0 {
        Err(Error::invalid("dimension must be >= 1"))
    } else {
        Ok(())
    }
}

/// `phi* = 2^{-d}` with `sigma* = 1`, `Z* = 0`.
pub fn terminal_step(d: u32) -> Result<TerminalDensityRecord> {
    check_dimension(d)?;
    let phi = 2f64.powi(-(d as i32));
    Ok(TerminalDensityRecord {
        d,
        model: ModelKind::Step,
        sigma_star: 1.0,
        z_star: 0.0,
        phi_star: phi,
        k_min: 0.0,
        ratio: improvement_ratio(d, phi),
        min_s_residual: 0.0,
        first_minimum_deepest: true,
    })
}

/// `phi* = (d+2)/2^{d+1}`, `Z* = d/2`, with a numeric check that `S >= 0`.
pub fn terminal_delta(d: u32) -> Result<TerminalDensityRecord> {
    check_dimension(d)?;
    let phi = (d as f64 + 2.0) * 2f64.powi(-(d as i32 + 1));
    let z = 0.5 * d as f64;
    let scan = find_minima(d, phi, 1.0, z, default_k_max(d)?)?;
    if let Some(m) = scan.deepest() {
        if m.s < -NEGATIVITY_TOL {
            return Err(Error::NegativeStructureFactor { k: m.k, min_s: m.s });
        }
    }
    let s0 = 1.0 + z - step_weight(d, phi, 1.0);
    Ok(TerminalDensityRecord {
        d,
        model: ModelKind::StepDelta,
        sigma_star: 1.0,
        z_star: z,
        phi_star: phi,
        k_min: 0.0,
        ratio: improvement_ratio(d, phi),
        min_s_residual: s0.abs(),
        first_minimum_deepest: scan.first_is_deepest(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Minimum {
    pub k: f64,
    pub s: f64,
}

/// Local minima of `S` on `(0, k_max]` in increasing `k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinimaScan {
    pub minima: Vec<Minimum>,
    pub k_max: f64,
    /// The deepest minimum lies within 2% of `k_max`; the scan may be too short.
    pub near_edge: bool,
}

impl MinimaScan {
    pub fn deepest(&self) -> Option<Minimum> {
        self.minima
            .iter()
            .copied()
            .min_by(|a, b| a.s.total_cmp(&b.s))
    }

    pub fn first_is_deepest(&self) -> bool {
        match (self.minima.first(), self.deepest()) {
            (Some(first), Some(deepest)) => first.k == deepest.k,
            _ => true,
        }
    }
}

/// All local minima of the model structure factor on `(0, k_max]`.
///
/// Minima are sign changes from negative to positive of `S'(k)/k`, refined
/// by bisection to `|dk| <= 1e-10`.
pub fn find_minima(d: u32, phi: f64, sigma: f64, z: f64, k_max: f64) -> Result<MinimaScan> {
    check_dimension(d)?;
    let nu = 0.5 * d as f64;
    if !(k_max >= nu + 6.0 * std::f64::consts::PI && k_max.is_finite()) {
        return Err(Error::invalid(format!(
            "k_max = {k_max} must reach at least six oscillations past nu = {nu}"
        )));
    }
    let slope = |k: f64| structure_factor_slope_over_k(d, phi, sigma, z, k);
    let n = (k_max / MINIMA_STEP).ceil() as usize;
    let h = k_max / n as f64;
    let mut minima = Vec::new();
    let mut k_prev = h;
    let mut g_prev = slope(k_prev)?;
    for i in 2..=n {
        let k = i as f64 * h;
        let g = slope(k)?;
        if g_prev < 0.0 && g > 0.0 {
            let (mut lo, mut hi) = (k_prev, k);
            while hi - lo > K_TOL {
                let mid = 0.5 * (lo + hi);
                if slope(mid)? < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let km = 0.5 * (lo + hi);
            minima.push(Minimum {
                k: km,
                s: structure_factor_gap(d, phi, sigma, z, km)?,
            });
        }
        k_prev = k;
        g_prev = g;
    }
    let mut scan = MinimaScan {
        minima,
        k_max,
        near_edge: false,
    };
    if let Some(m) = scan.deepest() {
        scan.near_edge = m.k >= 0.98 * k_max;
    }
    Ok(scan)
}

/// Golden-section minimization of a unimodal function on `[a, b]`.
fn golden_min<F>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut c = b - GOLDEN * (b - a);
    let mut e = a + GOLDEN * (b - a);
    let mut fc = f(c)?;
    let mut fe = f(e)?;
    while b - a > tol {
        if fc <= fe {
            b = e;
            e = c;
            fe = fc;
            c = b - GOLDEN * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = e;
            fc = fe;
            e = a + GOLDEN * (b - a);
            fe = f(e)?;
        }
    }
    Ok(if fc <= fe { (c, fc) } else { (e, fe) })
}

/// Largest step weight `P = (2 sigma)^d phi` keeping the hyperuniform gap
/// model nonnegative at this `sigma`, and the wavenumber where it binds
/// (`0` when the small-k constraint binds).
pub fn max_step_weight(d: u32, sigma: f64) -> Result<(f64, f64)> {
    let nu = 0.5 * d as f64;
    let dd = d as f64;
    let bound = |k: f64| -> Result<f64> {
        let shell = normalized_j(nu - 1.0, k)?;
        let den = normalized_j(nu, k * sigma)? - shell;
        Ok(if den > 0.0 { (1.0 - shell) / den } else { f64::INFINITY })
    };
    let k_hi = default_k_max(d)?;
    let k_lo = 1e-2;
    let h = (k_hi - k_lo) / (RATIO_GRID - 1) as f64;
    let grid = (0..RATIO_GRID)
        .map(|i| bound(k_lo + i as f64 * h))
        .collect::<Result<Vec<_>>>()?;
    let mut best = (f64::INFINITY, 0.0);
    // refine every grid-local minimum; the global one is not always first
    for i in 0..RATIO_GRID {
        let v = grid[i];
        if !v.is_finite() {
            continue;
        }
        let left = if i == 0 { f64::INFINITY } else { grid[i - 1] };
        let right = grid.get(i + 1).copied().unwrap_or(f64::INFINITY);
        if v > left || v > right || v > 2.0 * best.0 {
            continue;
        }
        let a = k_lo + (i as f64 - 1.0).max(0.0) * h;
        let b = k_lo + (i as f64 + 1.0).min((RATIO_GRID - 1) as f64) * h;
        let (k, p) = golden_min(bound, a, b, K_TOL)?;
        let (k, p) = if v < p { (k_lo + i as f64 * h, v) } else { (k, p) };
        if p < best.0 {
            best = (p, k);
        }
    }
    if sigma * sigma < (dd + 2.0) / dd {
        let cap = (dd + 2.0) / (dd + 2.0 - dd * sigma * sigma);
        if cap <= best.0 {
            best = (cap, 0.0);
        }
    }
    Ok(best)
}

/// `ln phi_max(sigma)` for the hyperuniform gap model.
fn ln_phi_max(d: u32, sigma: f64) -> Result<f64> {
    let (p, _) = max_step_weight(d, sigma)?;
    Ok(p.ln() - d as f64 * (2.0 * sigma).ln())
}

/// Largest admissible `phi` for the hyperuniform gap model at fixed `sigma`.
pub fn gap_phi_at_sigma(d: u32, sigma: f64) -> Result<f64> {
    if !(2..=300).contains(&d) {
        return Err(Error::invalid(format!("gap model supports 2 <= d <= 300, got {d}")));
    }
    if !(sigma >= 1.0) {
        return Err(Error::invalid(format!("sigma must be >= 1, got {sigma}")));
    }
    Ok(ln_phi_max(d, sigma)?.exp())
}

/// Terminal density of the gap model: maximize `phi` over `sigma`.
pub fn terminal_gap(d: u32) -> Result<TerminalDensityRecord> {
    if !(2..=300).contains(&d) {
        return Err(Error::invalid(format!("gap model supports 2 <= d <= 300, got {d}")));
    }
    let width = 4.0 / d as f64;
    let h = width / SIGMA_SCAN as f64;
    let mut best = (f64::NEG_INFINITY, 0usize);
    for i in 0..=SIGMA_SCAN {
        let v = ln_phi_max(d, 1.0 + i as f64 * h)?;
        if v > best.0 {
            best = (v, i);
        }
    }
    let a = 1.0 + best.1.saturating_sub(1) as f64 * h;
    let b = 1.0 + (best.1 + 1).min(SIGMA_SCAN) as f64 * h;
    let (sigma, neg_ln_phi) = golden_min(|s| Ok(-ln_phi_max(d, s)?), a, b, SIGMA_TOL)?;
    let phi = (-neg_ln_phi).exp();
    let delta = (d as f64 + 2.0) * 2f64.powi(-(d as i32 + 1));
    if !(phi > delta) {
        return Err(Error::Infeasible {
            d,
            reason: format!("best gap density {phi:e} does not exceed {delta:e}"),
        });
    }
    let p = step_weight(d, phi, sigma);
    let z = p - 1.0;
    let scan = find_minima(d, phi, sigma, z, default_k_max(d)?)?;
    let deepest = scan.deepest();
    if let Some(m) = deepest {
        if m.s < -NEGATIVITY_TOL {
            return Err(Error::NegativeStructureFactor { k: m.k, min_s: m.s });
        }
    }
    if small_k_quadratic(d, phi, sigma, z) < -NEGATIVITY_TOL {
        return Err(Error::NegativeStructureFactor {
            k: 0.0,
            min_s: small_k_quadratic(d, phi, sigma, z),
        });
    }
    let (k_min, residual) = match deepest {
        Some(m) if m.s.abs() < 1e-3 => (m.k, m.s.abs()),
        // the small-k constraint binds: S ~ c k^4 at the origin
        _ => (0.0, 0.0),
    };
    Ok(TerminalDensityRecord {
        d,
        model: ModelKind::StepDeltaGap,
        sigma_star: sigma,
        z_star: z,
        phi_star: phi,
        k_min,
        ratio: improvement_ratio(d, phi),
        min_s_residual: residual,
        first_minimum_deepest: scan.first_is_deepest(),
    })
}

pub fn terminal(d: u32, kind: ModelKind) -> Result<TerminalDensityRecord> {
    match kind {
        ModelKind::Step => terminal_step(d),
        ModelKind::StepDelta => terminal_delta(d),
        ModelKind::StepDeltaGap => terminal_gap(d),
    }
}

/// Terminal densities for many dimensions in parallel, in input order.
pub fn terminal_table(dims: &[u32], kind: ModelKind) -> Vec<Result<TerminalDensityRecord>> {
    dims.par_iter().map(|&d| terminal(d, kind)).collect()
}

/// Classical lower and upper bounds on the maximal packing density.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassicalBounds {
    pub d: u32,
    pub minkowski: f64,
    pub ball: f64,
    pub greedy: f64,
    pub blichfeldt: f64,
    pub rogers: f64,
    pub kabatiansky_levenshtein: f64,
    /// Density of the densest known packing, where one is tabulated here.
    pub densest_known: Option<f64>,
}

/// Densest known packings quoted for comparison with terminal densities.
pub const DENSEST_KNOWN: [(u32, f64); 3] = [(56, 2.327670e-11), (60, 2.966747e-13), (64, 1.326615e-12)];

pub fn classical_bounds(d: u32) -> Result<ClassicalBounds> {
    if d < 2 {
        return Err(Error::invalid(format!("classical bounds need d >= 2, got {d}")));
    }
    let dd = d as f64;
    let z = zeta(dd);
    let half = 2f64.powf(-0.5 * dd);
    Ok(ClassicalBounds {
        d,
        minkowski: z * 2f64.powf(1.0 - dd),
        ball: 2.0 * (dd - 1.0) * z * 2f64.powf(-dd),
        greedy: 2f64.powf(-dd),
        blichfeldt: (0.5 * dd + 1.0) * half,
        rogers: dd / std::f64::consts::E * half,
        kabatiansky_levenshtein: 2f64.powf(-0.599 * dd),
        densest_known: DENSEST_KNOWN.iter().find(|(k, _)| *k == d).map(|(_, v)| *v),
    })
}
