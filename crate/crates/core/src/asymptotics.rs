//! Large-dimension expansions of the gap-model optimum.
//!
//! All constants follow from the first-zero expansion constants `a1, a2` and
//! the root `q1` of `x e^x + e^{2x} - 5 e^x + 4 = 0`. Expansions are in
//! `nu = d/2` and are only meaningful for `d >= 20`.

use std::f64::consts::{LN_2, LOG2_E, PI};
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::optimizer::TerminalDensityRecord;
use crate::specialfn::{bessel_j, ZeroTriple, OLVER_A1, OLVER_A2, OLVER_A3};

/// Literature values of `beta1/beta2` at `d = 200`; they disagree with each other.
pub const REFERENCE_BETA_RATIOS: [f64; 2] = [1.003189733, 1.006215695];

const MIN_DIMENSION: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticConstants {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub q1: f64,
    pub q2: f64,
    #[serde(rename = "Q1")]
    pub big_q1: f64,
    /// Dominant-term `C1`.
    #[serde(rename = "C1")]
    pub c1: f64,
    #[serde(rename = "C2")]
    pub c2: f64,
    /// Three-term refinement `C11/a1^{5/4} + C12/a1^{11/4} + C13/a1^{17/4}`.
    #[serde(rename = "C1_refined")]
    pub c1_refined: f64,
    #[serde(rename = "C11")]
    pub c11: f64,
    #[serde(rename = "C12")]
    pub c12: f64,
    #[serde(rename = "C13")]
    pub c13: f64,
    /// `D1, D2` from the dominant `C1`; these enter the full `phi*` expansion.
    #[serde(rename = "D1")]
    pub d1: f64,
    #[serde(rename = "D2")]
    pub d2: f64,
    /// `D1` from the refined `C1`; it enters the headline coefficients.
    #[serde(rename = "D1_refined")]
    pub d1_refined: f64,
    #[serde(rename = "E1")]
    pub e1: f64,
    #[serde(rename = "E2")]
    pub e2: f64,
    pub phi_exponent: f64,
    pub kiss_exponent: f64,
}

/// `x e^x + e^{2x} - 5 e^x + 4`.
pub fn q1_residual(x: f64) -> f64 {
    let e = x.exp();
    x * e + e * e - 5.0 * e + 4.0
}

fn solve_q1() -> Result<f64> {
    let (mut lo, mut hi) = (0.5, 1.5);
    let (f_lo, f_hi) = (q1_residual(lo), q1_residual(hi));
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::Bracket {
            function: "solve_constants",
            lo,
            hi,
        });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if q1_residual(mid).signum() == f_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(if q1_residual(lo).abs() < q1_residual(hi).abs() { lo } else { hi })
}

fn d_constants(a1: f64, q1: f64, q2: f64, c1: f64, c2: f64) -> (f64, f64) {
    let e = q1.exp();
    let d1 = c1 * (2.0 - e) / (2.0 * e);
    let d2 = c1 * (a1 * (2.0 * e + 6.0 * q1 / e - 7.0) + 3.0 * q2 * (q1 - 1.0)) / (3.0 * (2.0 - e))
        + c2 * d1 / c1;
    (d1, d2)
}

/// Evaluate every constant from the stored `a1, a2, a3`.
pub fn solve_constants() -> Result<AsymptoticConstants> {
    constants_from(OLVER_A1, OLVER_A2, OLVER_A3)
}

/// Same as [`solve_constants`] for arbitrary zero-expansion constants,
/// for sensitivity studies on the quoted digits of `a1`.
pub fn constants_from(a1: f64, a2: f64, a3: f64) -> Result<AsymptoticConstants> {
    let q1 = solve_q1()?;
    let e = q1.exp();
    let q2 = a1 * (8.0 * e - 2.0 * q1 * e - 10.0 * e * e + 4.0 + e * e * e + 4.0 * q1 * e * e)
        / (3.0 * e * (2.0 * q1 * e - 2.0 * q1 + 12.0 + 3.0 * e * e - 13.0 * e));
    let big_q1 = 2.0 * (q1 - 1.0) / (e - 2.0);

    let arg = (2.0 * a1).powf(1.5) / 3.0;
    let f1 = arg.sin() + arg.cos();
    let f2 = arg.sin() - arg.cos();
    let r2 = 2f64.sqrt();
    let q4 = 2f64.powf(0.25);
    let sqrt_pi = PI.sqrt();
    let a1_32 = a1.powf(1.5);

    let c11 = -q4 * (r2 * f1 + 8.0 * a1_32 * f2) / (8.0 * sqrt_pi);
    let c12 = 5.0 * q4 * (4.0 * r2 * f1 - 7.0 * a1_32 * f2) / (384.0 * sqrt_pi);
    let c13 = -385.0 * q4 * (13.0 * r2 * f1 + 8.0 * a1_32 * f2) / (221184.0 * sqrt_pi);
    let c1 = c11 / a1.powf(1.25);
    let c1_refined = c1 + c12 / a1.powf(2.75) + c13 / a1.powf(4.25);
    let c2 = (2f64.powf(0.75)
        * (1152.0 * a1.powi(6) - 3840.0 * a1.powi(4) * a2 - 180.0 * a1.powi(3) + 600.0 * a1 * a2
            - 225.0)
        * f1
        + q4 * (3072.0 * a1.powf(4.5) - 200.0 * a1_32) * f2)
        / (3840.0 * sqrt_pi * a1.powf(3.25));

    let (d1, d2) = d_constants(a1, q1, q2, c1, c2);
    let (d1_refined, _) = d_constants(a1, q1, q2, c1_refined, c2);
    let e1 = a2 - 0.5 * a1 * a1;
    let e2 = -big_q1 * a1 + (a1.powi(4) - 4.0 * a1 * a1 * a2 + 4.0 * a2 * a2) / 8.0;

    Ok(AsymptoticConstants {
        a1,
        a2,
        a3,
        q1,
        q2,
        big_q1,
        c1,
        c2,
        c1_refined,
        c11,
        c12,
        c13,
        d1,
        d2,
        d1_refined,
        e1,
        e2,
        phi_exponent: 0.5 * (3.0 - LOG2_E),
        kiss_exponent: 0.5 * (LOG2_E - 1.0),
    })
}

fn constants() -> Result<&'static AsymptoticConstants> {
    static CACHE: OnceLock<AsymptoticConstants> = OnceLock::new();
    if let Some(c) = CACHE.get() {
        return Ok(c);
    }
    let c = solve_constants()?;
    Ok(CACHE.get_or_init(|| c))
}

fn order(d: u32) -> Result<f64> {
    if d < MIN_DIMENSION {
        return Err(Error::invalid(format!(
            "asymptotic expansions need d >= {MIN_DIMENSION}, got {d}"
        )));
    }
    Ok(0.5 * d as f64)
}

/// `sigma* ~ 1 + q1/nu + q2/nu^{5/3}`.
pub fn sigma_star_asymptotic(d: u32) -> Result<f64> {
    let nu = order(d)?;
    let c = constants()?;
    Ok(1.0 + c.q1 / nu + c.q2 / nu.powf(5.0 / 3.0))
}

/// `k_min ~ nu + a1 nu^{1/3} + Q1 + a2/nu^{1/3}`.
pub fn kmin_asymptotic(d: u32) -> Result<f64> {
    let nu = order(d)?;
    let c = constants()?;
    let t = nu.cbrt();
    Ok(nu + c.a1 * t + c.big_q1 + c.a2 / t)
}

/// `k_min` from linearizing `S` about the first zero of `J_nu`, given `sigma`
/// and a value of `beta1/beta2`.
pub fn kmin_linearized(d: u32, sigma: f64, beta_ratio: f64) -> Result<f64> {
    let nu = order(d)?;
    let z = ZeroTriple::exact(nu)?;
    let dd = d as f64;
    Ok(z.x0 - dd * (z.y0 - sigma * z.x0) / (beta_ratio * sigma.powf(nu - 1.0) * z.x0 - dd * sigma))
}

/// Asymptotic `Delta_nu(k_min)`, `(k_min/nu)^nu` and `sigma*^{2 nu}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeltaNuTerms {
    pub delta: f64,
    pub kmin_over_nu_pow: f64,
    pub sigma_pow: f64,
}

pub fn delta_nu_terms(d: u32) -> Result<DeltaNuTerms> {
    let nu = order(d)?;
    let c = constants()?;
    let t = nu.cbrt();
    Ok(DeltaNuTerms {
        delta: c.d1 / (t * t) + c.d2 / (t * t * t * t),
        kmin_over_nu_pow: (c.a1 * t + c.big_q1).exp() * (1.0 + c.e1 / t + c.e2 / (t * t)),
        sigma_pow: (2.0 * c.q1).exp()
            * (1.0 + 2.0 * c.q2 / (t * t) - c.q1 * c.q1 / nu + 2.0 * c.q2 * c.q2 / (t * t * t * t)),
    })
}

/// `Delta_nu(k) = J_nu(k sigma)/sigma^nu - k J_{nu-1}(k)/d` by direct evaluation.
pub fn delta_nu_exact(d: u32, k: f64, sigma: f64) -> Result<f64> {
    let nu = 0.5 * d as f64;
    Ok(bessel_j(nu, k * sigma)? / sigma.powf(nu) - k * bessel_j(nu - 1.0, k)? / d as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhiStarAsymptotic {
    /// Full three-term expansion.
    pub full: f64,
    /// `coefficient d^{1/6} / 2^{phi_exponent d}`.
    pub dominant: f64,
    pub coefficient: f64,
}

/// `1 / (2^{2/3} D1 sqrt(pi))` with the refined `D1`.
pub fn phi_coefficient(c: &AsymptoticConstants) -> f64 {
    1.0 / (2f64.powf(2.0 / 3.0) * c.d1_refined * PI.sqrt())
}

/// `2^{1/3} e^{2 q1} / (D1 sqrt(pi))` with the refined `D1`.
pub fn kissing_coefficient(c: &AsymptoticConstants) -> f64 {
    2f64.powf(1.0 / 3.0) * (2.0 * c.q1).exp() / (c.d1_refined * PI.sqrt())
}

pub fn phi_star_asymptotic(d: u32) -> Result<PhiStarAsymptotic> {
    let nu = order(d)?;
    let c = constants()?;
    let t = nu.cbrt();
    let exponent = (3.0 - LOG2_E) * nu - LOG2_E * c.a1 * t + (2.0 * c.q1 - c.big_q1) * LOG2_E;
    let bracket = nu.powf(1.0 / 6.0)
        + c.e1 / nu.powf(1.0 / 6.0)
        + (c.e2 - 2.0 * c.q2 - c.d2 / c.d1) / nu.sqrt();
    let prefactor = (2.0 / PI).sqrt() / (2.0 * c.d1) * bracket;
    let full = (prefactor.ln() - exponent * LN_2).exp();
    let coefficient = phi_coefficient(c);
    let dd = d as f64;
    let dominant = (coefficient.ln() + dd.ln() / 6.0 - c.phi_exponent * dd * LN_2).exp();
    Ok(PhiStarAsymptotic {
        full,
        dominant,
        coefficient,
    })
}

/// `Z* ~ coefficient d^{1/6} 2^{kiss_exponent d}`.
pub fn kissing_asymptotic(d: u32) -> Result<f64> {
    order(d)?;
    let c = constants()?;
    let dd = d as f64;
    Ok((kissing_coefficient(c).ln() + dd.ln() / 6.0 + c.kiss_exponent * dd * LN_2).exp())
}

/// `beta1/beta2 ~ 1 + 2/(3 nu) - 2 C2 / (3 C1 nu^{5/3})`.
pub fn beta_ratio_asymptotic(d: u32) -> Result<f64> {
    let nu = order(d)?;
    let c = constants()?;
    Ok(1.0 + 2.0 / (3.0 * nu) - 2.0 * c.c2 / (3.0 * c.c1 * nu.powf(5.0 / 3.0)))
}

/// Expansions of `beta1`, `beta2`, `beta3`, the half-differences of Bessel
/// functions at the first zeros `x0`, `y0`, `z0`.
pub fn c_expansions(nu: f64) -> Result<(f64, f64, f64)> {
    if !(nu >= MIN_DIMENSION as f64) {
        return Err(Error::invalid(format!("c_expansions needs nu >= 20, got {nu}")));
    }
    let c = constants()?;
    let base = c.c1 / nu.powf(2.0 / 3.0) + c.c2 / nu.powf(4.0 / 3.0);
    let shift = 2.0 * c.c1 / (3.0 * nu.powf(5.0 / 3.0));
    Ok((base, base - shift, base + shift))
}

/// `beta1 = [J_{nu-1}(x0) - J_{nu+1}(x0)]/2`, `beta2 = [J_nu(y0) - J_{nu+2}(y0)]/2`,
/// `beta3 = [J_{nu-2}(z0) - J_nu(z0)]/2` at the exact first zeros.
pub fn beta_exact(nu: f64) -> Result<(f64, f64, f64)> {
    if nu < 2.0 {
        return Err(Error::invalid(format!("beta_exact needs nu >= 2, got {nu}")));
    }
    let z = ZeroTriple::exact(nu)?;
    let b1 = 0.5 * (bessel_j(nu - 1.0, z.x0)? - bessel_j(nu + 1.0, z.x0)?);
    let b2 = 0.5 * (bessel_j(nu, z.y0)? - bessel_j(nu + 2.0, z.y0)?);
    let b3 = 0.5 * (bessel_j(nu - 2.0, z.z0)? - bessel_j(nu, z.z0)?);
    Ok((b1, b2, b3))
}

/// One predicted quantity beside its directly computed counterpart.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub quantity: String,
    pub asymptotic: f64,
    pub numeric: f64,
    pub rel_error: f64,
}

impl Comparison {
    fn new(quantity: &str, asymptotic: f64, numeric: f64) -> Self {
        Comparison {
            quantity: quantity.to_string(),
            asymptotic,
            numeric,
            rel_error: (asymptotic - numeric) / numeric,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticReport {
    pub d: u32,
    pub constants: AsymptoticConstants,
    pub phi_coefficient: f64,
    pub kissing_coefficient: f64,
    pub phi_star: PhiStarAsymptotic,
    pub comparisons: Vec<Comparison>,
    pub beta_ratio_exact: f64,
    pub reference_beta_ratios: [f64; 2],
    pub kmin_linearized: Vec<(f64, f64)>,
}

/// Asymptotic predictions at `d` against a numeric optimum.
pub fn report(d: u32, numeric: &TerminalDensityRecord) -> Result<AsymptoticReport> {
    let nu = order(d)?;
    let c = *constants()?;
    let phi = phi_star_asymptotic(d)?;
    let terms = delta_nu_terms(d)?;
    let (s, k) = (numeric.sigma_star, numeric.k_min);
    let (b1, b2, b3) = beta_exact(nu)?;
    let (e1, e2, e3) = c_expansions(nu)?;
    let comparisons = vec![
        Comparison::new("phi_star", phi.full, numeric.phi_star),
        Comparison::new("phi_star_dominant", phi.dominant, numeric.phi_star),
        Comparison::new("sigma_star", sigma_star_asymptotic(d)?, s),
        Comparison::new("Z_star", kissing_asymptotic(d)?, numeric.z_star),
        Comparison::new("k_min", kmin_asymptotic(d)?, k),
        Comparison::new("delta_nu", terms.delta, delta_nu_exact(d, k, s)?),
        Comparison::new("kmin_over_nu_pow", terms.kmin_over_nu_pow, (k / nu).powf(nu)),
        Comparison::new("sigma_pow", terms.sigma_pow, s.powf(2.0 * nu)),
        Comparison::new("beta1", e1, b1),
        Comparison::new("beta2", e2, b2),
        Comparison::new("beta3", e3, b3),
        Comparison::new("beta_ratio", beta_ratio_asymptotic(d)?, b1 / b2),
    ];
    let mut ratios = vec![b1 / b2];
    ratios.extend(REFERENCE_BETA_RATIOS);
    let kmin_linearized = ratios
        .into_iter()
        .map(|r| Ok((r, kmin_linearized(d, s, r)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(AsymptoticReport {
        d,
        constants: c,
        phi_coefficient: phi_coefficient(&c),
        kissing_coefficient: kissing_coefficient(&c),
        phi_star: phi,
        comparisons,
        beta_ratio_exact: b1 / b2,
        reference_beta_ratios: REFERENCE_BETA_RATIOS,
        kmin_linearized,
    })
}
