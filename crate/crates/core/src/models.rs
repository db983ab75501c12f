//! The three hard-core test pair-correlation functions and their structure factors.
//!
//! Every model has the form
//!
//! ```text
//! g2(r) = Theta(r - sigma) + Z / (s1(1) rho) delta(r - 1)
//! ```
//!
//! with `sigma = 1, Z = 0` for the plain step and `sigma = 1` for the step
//! plus contact shell. Writing `L_nu(x) = Gamma(1+nu) (2/x)^nu J_nu(x)` and
//! `P = (2 sigma)^d phi`, the structure factor is
//!
//! ```text
//! S(k) = 1 + Z L_{nu-1}(k) - P L_nu(k sigma),     nu = d/2,
//! ```
//!
//! which keeps every Bessel factor bounded by one and confines the large
//! numbers of high dimensions to the two scalar weights.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quad::{self, Tolerance};
use crate::specialfn::{first_zero, ln_gamma, normalized_j, sphere_surface, sphere_volume};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Step,
    StepDelta,
    StepDeltaGap,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Step => "step",
            ModelKind::StepDelta => "delta",
            ModelKind::StepDeltaGap => "gap",
        }
    }
}

impl std::str::FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "step" => Ok(ModelKind::Step),
            "delta" | "step-delta" => Ok(ModelKind::StepDelta),
            "gap" | "step-delta-gap" => Ok(ModelKind::StepDeltaGap),
            other => Err(Error::invalid(format!("unknown model '{other}'"))),
        }
    }
}

/// A test radial distribution function: step at `sigma`, delta shell of
/// average kissing number `z` at contact.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialModel {
    pub kind: ModelKind,
    pub sigma: f64,
    #[serde(rename = "Z")]
    pub z: f64,
}

impl RadialModel {
    pub fn step() -> Self {
        RadialModel {
            kind: ModelKind::Step,
            sigma: 1.0,
            z: 0.0,
        }
    }

    pub fn step_delta(z: f64) -> Result<Self> {
        if !(z >= 0.0 && z.is_finite()) {
            return Err(Error::invalid(format!("kissing number must be >= 0, got {z}")));
        }
        Ok(RadialModel {
            kind: ModelKind::StepDelta,
            sigma: 1.0,
            z,
        })
    }

    pub fn gap(sigma: f64, z: f64) -> Result<Self> {
        if !(sigma >= 1.0 && sigma.is_finite()) {
            return Err(Error::invalid(format!("gap edge sigma must be >= 1, got {sigma}")));
        }
        if !(z >= 0.0 && z.is_finite()) {
            return Err(Error::invalid(format!("kissing number must be >= 0, got {z}")));
        }
        Ok(RadialModel {
            kind: ModelKind::StepDeltaGap,
            sigma,
            z,
        })
    }

    /// Gap model whose kissing number makes `S(0) = 0`: `Z = (2 sigma)^d phi - 1`.
    pub fn hyperuniform_gap(density: &PackingDensity, sigma: f64) -> Result<Self> {
        let z = hyperuniform_kissing(density.d, density.phi, sigma);
        if z < 0.0 {
            return Err(Error::invalid(format!(
                "(2 sigma)^d phi = {} < 1 leaves no room for a contact shell",
                z + 1.0
            )));
        }
        Self::gap(sigma, z)
    }

    pub fn build(kind: ModelKind, sigma: f64, z: f64) -> Result<Self> {
        match kind {
            ModelKind::Step => Ok(Self::step()),
            ModelKind::StepDelta => Self::step_delta(z),
            ModelKind::StepDeltaGap => Self::gap(sigma, z),
        }
    }
}

/// `Z = (2 sigma)^d phi - 1`.
pub fn hyperuniform_kissing(d: u32, phi: f64, sigma: f64) -> f64 {
    step_weight(d, phi, sigma) - 1.0
}

/// `(2 sigma)^d phi`, the weight of the step term in `S(k)`.
pub fn step_weight(d: u32, phi: f64, sigma: f64) -> f64 {
    (d as f64 * (2.0 * sigma).ln() + phi.ln()).exp()
}

/// Volume fraction together with the number density it implies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PackingDensity {
    pub d: u32,
    pub phi: f64,
    pub rho: f64,
}

impl PackingDensity {
    pub fn new(d: u32, phi: f64) -> Result<Self> {
        if d == 0 {
            return Err(Error::invalid("dimension must be >= 1"));
        }
        if !(0.0..=1.0).contains(&phi) {
            return Err(Error::invalid(format!("volume fraction must lie in [0, 1], got {phi}")));
        }
        Ok(PackingDensity {
            d,
            phi,
            rho: phi / sphere_volume(d, 0.5),
        })
    }

    pub fn nu(&self) -> f64 {
        0.5 * self.d as f64
    }
}

/// `g2(r)` split into its continuous part and the weight of the delta at `r = 1`.
pub fn g2_eval(model: &RadialModel, density: &PackingDensity, r: f64) -> (f64, f64) {
    let continuous = if r >= model.sigma { 1.0 } else { 0.0 };
    let weight = if model.z == 0.0 || density.rho == 0.0 {
        0.0
    } else {
        model.z / (sphere_surface(density.d, 1.0) * density.rho)
    };
    (continuous, weight)
}

/// `S(k)` of any of the three models from the closed form.
pub fn structure_factor(model: &RadialModel, density: &PackingDensity, k: f64) -> Result<f64> {
    structure_factor_raw(density.d, density.phi, model.sigma, model.z, k)
}

fn structure_factor_raw(d: u32, phi: f64, sigma: f64, z: f64, k: f64) -> Result<f64> {
    if !(k >= 0.0 && k.is_finite()) {
        return Err(Error::domain("structure_factor", format!("k must be finite and >= 0, got {k}")));
    }
    let p = if phi == 0.0 { 0.0 } else { step_weight(d, phi, sigma) };
    if k == 0.0 {
        return Ok(1.0 + z - p);
    }
    let nu = 0.5 * d as f64;
    let shell = if z == 0.0 { 0.0 } else { z * normalized_j(nu - 1.0, k)? };
    let step = if p == 0.0 { 0.0 } else { p * normalized_j(nu, k * sigma)? };
    Ok(1.0 + shell - step)
}

/// `S(k) = 1 - 2^{3nu} phi Gamma(1+nu) J_nu(k) / k^nu`.
pub fn structure_factor_step(d: u32, phi: f64, k: f64) -> Result<f64> {
    structure_factor_raw(d, phi, 1.0, 0.0, k)
}

/// Step plus contact shell of kissing number `z`.
pub fn structure_factor_delta(d: u32, phi: f64, z: f64, k: f64) -> Result<f64> {
    structure_factor_raw(d, phi, 1.0, z, k)
}

/// Step at `sigma` plus contact shell of kissing number `z`.
pub fn structure_factor_gap(d: u32, phi: f64, sigma: f64, z: f64, k: f64) -> Result<f64> {
    structure_factor_raw(d, phi, sigma, z, k)
}

/// `S'(k) / k`; its sign changes locate the extrema of `S` on `k > 0`.
pub fn structure_factor_slope_over_k(
    d: u32,
    phi: f64,
    sigma: f64,
    z: f64,
    k: f64,
) -> Result<f64> {
    let nu = 0.5 * d as f64;
    let p = if phi == 0.0 { 0.0 } else { step_weight(d, phi, sigma) };
    // d/dx L_nu(x) = -x L_{nu+1}(x) / (2 (nu + 1))
    let step = p * sigma * sigma * normalized_j(nu + 1.0, k * sigma)? / (2.0 * (nu + 1.0));
    let shell = if z == 0.0 { 0.0 } else { z * normalized_j(nu, k)? / (2.0 * nu) };
    Ok(step - shell)
}

/// Coefficient of `k^2` in the small-k expansion of `S`:
/// `2^{d-1} sigma^{d+2} phi / (d+2) - Z / (2d)`.
pub fn small_k_quadratic(d: u32, phi: f64, sigma: f64, z: f64) -> f64 {
    let dd = d as f64;
    step_weight(d, phi, sigma) * sigma * sigma / (2.0 * (dd + 2.0)) - z / (2.0 * dd)
}

/// `S(k)` from direct quadrature of the radial Fourier transform of `h = g2 - 1`.
///
/// The continuous part of `h` is `-1` on `[0, sigma)` and zero beyond, so the
/// transform is a finite integral; the delta shell is added analytically.
/// `r_max` only bounds the support that is searched and must be at least `50 sigma`.
pub fn structure_factor_numeric(
    model: &RadialModel,
    density: &PackingDensity,
    k: f64,
    r_max: f64,
) -> Result<f64> {
    if r_max < 50.0 * model.sigma {
        return Err(Error::invalid(format!(
            "r_max = {r_max} must be at least 50 sigma = {}",
            50.0 * model.sigma
        )));
    }
    if !(k >= 0.0 && k.is_finite()) {
        return Err(Error::domain("structure_factor_numeric", format!("bad k={k}")));
    }
    let d = density.d;
    let nu = density.nu();
    let dd = d as f64;
    // J_{nu-1}(kr) / (kr)^{nu-1} = L_{nu-1}(kr) / (2^{nu-1} Gamma(nu))
    let ln_coef = density.rho.ln() + nu * (2.0 * std::f64::consts::PI).ln()
        - (nu - 1.0) * 2.0f64.ln()
        - ln_gamma(nu);
    let upper = model.sigma.min(r_max);
    let mut err = None;
    let integrand = |r: f64| {
        if r == 0.0 {
            return if d == 1 { ln_coef.exp() } else { 0.0 };
        }
        match normalized_j(nu - 1.0, k * r) {
            Ok(v) => ((dd - 1.0) * r.ln() + ln_coef).exp() * v,
            Err(e) => {
                err.get_or_insert(e);
                0.0
            }
        }
    };
    let continuous = if density.rho == 0.0 {
        0.0
    } else {
        quad::integrate(integrand, 0.0, upper, Tolerance::new(1e-13, 1e-13))?
    };
    if let Some(e) = err {
        return Err(e);
    }
    let (_, weight) = g2_eval(model, density, 1.0);
    // the shell contributes rho (2 pi)^{d/2} weight J_{nu-1}(k)/k^{nu-1}
    let shell = if weight == 0.0 {
        0.0
    } else {
        (ln_coef + weight.ln()).exp() * normalized_j(nu - 1.0, k)?
    };
    Ok(1.0 - continuous + shell)
}

/// Sampled `S(k)` for export.
#[derive(Debug, Clone, Serialize)]
pub struct StructureFactorCurve {
    pub model: RadialModel,
    pub density: PackingDensity,
    pub k: Vec<f64>,
    pub s: Vec<f64>,
}

/// Upper end of the default k grid: `2 (x0(nu) + 10 nu^{1/3} + 20)`.
pub fn default_k_max(d: u32) -> Result<f64> {
    let nu = 0.5 * d as f64;
    Ok(2.0 * (first_zero(nu)? + 10.0 * nu.cbrt() + 20.0))
}

impl StructureFactorCurve {
    /// `samples` equally spaced points on `[0, k_max]`.
    pub fn sample(
        model: RadialModel,
        density: PackingDensity,
        k_max: f64,
        samples: usize,
    ) -> Result<Self> {
        if samples == 0 {
            return Err(Error::invalid("samples must be positive"));
        }
        if !(k_max > 0.0 && k_max.is_finite()) {
            return Err(Error::invalid(format!("k_max must be positive, got {k_max}")));
        }
        let step = if samples == 1 { 0.0 } else { k_max / (samples - 1) as f64 };
        let k: Vec<f64> = (0..samples).map(|i| i as f64 * step).collect();
        let s = k
            .iter()
            .map(|&kk| structure_factor(&model, &density, kk))
            .collect::<Result<Vec<_>>>()?;
        Ok(StructureFactorCurve { model, density, k, s })
    }

    /// Insert extra points (e.g. located minima) keeping `k` sorted.
    pub fn refine_at(&mut self, points: &[f64]) -> Result<()> {
        for &kk in points {
            let s = structure_factor(&self.model, &self.density, kk)?;
            let at = self.k.partition_point(|&x| x < kk);
            if self.k.get(at) == Some(&kk) {
                continue;
            }
            self.k.insert(at, kk);
            self.s.insert(at, s);
        }
        Ok(())
    }

    pub fn s_at_zero(&self) -> f64 {
        1.0 + self.model.z - step_weight(self.density.d, self.density.phi, self.model.sigma)
    }

    pub fn min_s(&self) -> (f64, f64) {
        self.k
            .iter()
            .zip(&self.s)
            .map(|(&k, &s)| (k, s))
            .fold((f64::NAN, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g2_examples() {
        let dens = PackingDensity::new(3, 0.2).unwrap();
        assert_eq!(g2_eval(&RadialModel::step(), &dens, 0.5), (0.0, 0.0));
        let m = RadialModel::step_delta(1.5).unwrap();
        let (c, w) = g2_eval(&m, &dens, 1.5);
        assert_eq!(c, 1.0);
        let want = 1.5 / (sphere_surface(3, 1.0) * dens.rho);
        assert!((w - want).abs() < 1e-15);
        let g = RadialModel::gap(1.2, 3.0).unwrap();
        let (c, w) = g2_eval(&g, &dens, 1.1);
        assert_eq!(c, 0.0);
        assert!(w > 0.0);
    }

    #[test]
    fn rho_definition() {
        let dens = PackingDensity::new(3, 0.5).unwrap();
        assert!((dens.rho - 0.5 / (std::f64::consts::PI / 6.0)).abs() < 1e-14);
        assert!(PackingDensity::new(3, 1.5).is_err());
        assert!(RadialModel::gap(0.9, 1.0).is_err());
        assert!(RadialModel::step_delta(-1.0).is_err());
    }

    #[test]
    fn one_dimensional_step_is_sinc() {
        for phi in [0.1, 0.3, 0.5] {
            for i in 1..50 {
                let k = 0.37 * i as f64;
                let s = structure_factor_step(1, phi, k).unwrap();
                assert!((s - (1.0 - 2.0 * phi * k.sin() / k)).abs() < 1e-14);
            }
        }
        assert_eq!(structure_factor_step(1, 0.5, 0.0).unwrap(), 0.0);
        assert!(structure_factor_step(1, 0.5, 1e-6).unwrap().abs() < 1e-11);
    }

    #[test]
    fn ideal_gas() {
        for d in [1, 2, 5, 30] {
            for k in [0.0, 0.5, 7.0] {
                assert_eq!(structure_factor_step(d, 0.0, k).unwrap(), 1.0);
            }
        }
    }

    #[test]
    fn delta_small_k_limits() {
        let d = 3u32;
        let phi = 5.0 / 16.0;
        assert!(structure_factor_delta(d, phi, 1.5, 0.0).unwrap().abs() < 1e-15);
        // crossover Z = 2^d phi d/(d+2) gives S(0) = 1 - 2^{d+1} phi/(d+2)
        let phi = 0.2;
        let z = 8.0 * phi * 3.0 / 5.0;
        let want = 1.0 - 16.0 * phi / 5.0;
        assert!((structure_factor_delta(d, phi, z, 0.0).unwrap() - want).abs() < 1e-15);
        assert!((structure_factor_delta(d, phi, z, 1e-4).unwrap() - want).abs() < 1e-8);
        for k in [0.3, 2.0, 9.0] {
            let a = structure_factor_delta(d, phi, 0.0, k).unwrap();
            let b = structure_factor_step(d, phi, k).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn gap_reduces_to_delta() {
        for k in [0.0, 0.5, 3.0, 11.0] {
            let a = structure_factor_gap(4, 0.2, 1.0, 2.0, k).unwrap();
            let b = structure_factor_delta(4, 0.2, 2.0, k).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn hyperuniform_gap_vanishes_at_origin() {
        let (sigma, z, phi) = (1.246997, 7.932582, 0.5758254);
        assert!((hyperuniform_kissing(3, phi, sigma) - z).abs() < 1e-5);
        let s0 = structure_factor_gap(3, phi, sigma, hyperuniform_kissing(3, phi, sigma), 0.0)
            .unwrap();
        assert!(s0.abs() < 1e-14);
    }

    #[test]
    fn slope_matches_finite_difference() {
        let (d, phi, sigma) = (6u32, 0.2, 1.16);
        let z = hyperuniform_kissing(d, phi, sigma);
        for k in [0.7, 3.1, 6.4, 12.0] {
            let h = 1e-5;
            let fd = (structure_factor_gap(d, phi, sigma, z, k + h).unwrap()
                - structure_factor_gap(d, phi, sigma, z, k - h).unwrap())
                / (2.0 * h);
            let an = k * structure_factor_slope_over_k(d, phi, sigma, z, k).unwrap();
            assert!((fd - an).abs() < 1e-6 * (1.0 + an.abs()), "k={k} fd={fd} an={an}");
        }
    }

    #[test]
    fn numeric_transform_small_cases() {
        let dens = PackingDensity::new(3, 0.1).unwrap();
        let m = RadialModel::step();
        let a = structure_factor_numeric(&m, &dens, 5.0, 60.0).unwrap();
        let b = structure_factor_step(3, 0.1, 5.0).unwrap();
        assert!((a - b).abs() < 1e-6, "{a} {b}");
        assert!(structure_factor_numeric(&m, &dens, 5.0, 10.0).is_err());
    }

    #[test]
    fn curve_export_bookkeeping() {
        let dens = PackingDensity::new(1, 0.5).unwrap();
        let mut c = StructureFactorCurve::sample(RadialModel::step(), dens, 20.0, 11).unwrap();
        assert_eq!(c.k.len(), 11);
        c.refine_at(&[4.4934]).unwrap();
        assert_eq!(c.k.len(), 12);
        assert!(c.k.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(c.s_at_zero(), 0.0);
        assert!(StructureFactorCurve::sample(RadialModel::step(), dens, 20.0, 0).is_err());
    }
}
