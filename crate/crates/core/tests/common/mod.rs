//! Property checks shared by the module test files and the acceptance run.
//! Each returns `Err` with a description of the first failing case.
#![allow(dead_code)]

use spherebound::asymptotics::{
    phi_star_asymptotic, q1_residual, sigma_star_asymptotic, solve_constants,
};
use spherebound::geometry::{alpha2, alpha2_integral, alpha2_series};
use spherebound::matern::{
    accept_arrivals, chi_square_gof, draw_arrivals, ensemble_histogram, min_pair_distance,
    simulate, Kappa, MaternConfig,
};
use spherebound::models::{
    hyperuniform_kissing, small_k_quadratic, structure_factor, structure_factor_gap,
    structure_factor_numeric, ModelKind, PackingDensity, RadialModel,
};
use spherebound::optimizer::{
    classical_bounds, find_minima, gap_phi_at_sigma, terminal_delta, terminal_gap, terminal_step,
    TerminalDensityRecord,
};
use spherebound::models::default_k_max;
use spherebound::specialfn::{
    bessel_j, first_zero, j_half, j_three_halves, sphere_surface, sphere_volume, zero_asymptotic,
    ZeroKind,
};
use spherebound::variance::{number_variance, variance_lower_bound, yamada_check};
use statrs::function::beta::beta_reg;

pub type Check = Result<(), String>;

pub const TABLE_DIMS: [u32; 17] = [3, 4, 5, 6, 7, 8, 24, 36, 56, 60, 64, 80, 100, 125, 150, 175, 200];

/// Table rows as `(d, sigma*, Z*, phi*, ratio)`.
pub const TABLE: [(u32, f64, f64, f64, f64); 17] = [
    (3, 1.246997, 7.932582, 0.5758254, 1.842641),
    (4, 1.212589, 13.71016, 0.4252472, 2.267985),
    (5, 1.186929, 21.97918, 0.3048322, 2.787037),
    (6, 1.167000, 33.53884, 0.2136444, 3.418310),
    (7, 1.151106, 49.42513, 0.1471058, 4.184343),
    (8, 1.137967, 70.88348, 0.09985085, 5.112364),
    (24, 1.058992, 5473.546, 8.245251e-05, 106.4095),
    (36, 1.041611, 76521.15, 2.566299e-07, 928.1828),
    (56, 1.028036, 4.248007e06, 1.253255e-11, 31140.19),
    (60, 1.026330, 9.179315e06, 1.674130e-12, 62262.60),
    (64, 1.024823, 1.968233e07, 2.221414e-13, 124175.32),
    (80, 1.020211, 3.908042e08, 6.521679e-17, 1.922982e06),
    (100, 1.016421, 1.478804e10, 2.288485e-21, 5.688234e08),
    (125, 1.013311, 1.246172e12, 5.610270e-27, 3.758024e09),
    (150, 1.011214, 9.698081e13, 1.275632e-32, 2.319290e11),
    (175, 1.009671, 7.086019e15, 2.745830e-38, 1.485866e13),
    (200, 1.008510, 4.959086e17, 5.667098e-44, 9.016510e14),
];

pub fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// Small deterministic generator for sampling test points.
pub struct Lcg(u64);

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg(seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407))
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        lo + (hi - lo) * ((self.0 >> 11) as f64 / (1u64 << 53) as f64)
    }
}

// ---- special functions -------------------------------------------------

/// d/dx [J_nu(x)/x^nu] = -J_{nu+1}(x)/x^nu at 100 random points.
pub fn derivative_identity() -> Check {
    let mut rng = Lcg::new(11);
    for _ in 0..100 {
        let nu = rng.uniform(0.5, 40.0);
        let x = rng.uniform(0.5, 80.0);
        let g = |t: f64| bessel_j(nu, t).unwrap() / t.powf(nu);
        let h = 1e-3;
        let fd = (8.0 * (g(x + h) - g(x - h)) - (g(x + 2.0 * h) - g(x - 2.0 * h))) / (12.0 * h);
        let an = -bessel_j(nu + 1.0, x).map_err(|e| e.to_string())? / x.powf(nu);
        let scale = an.abs() + g(x).abs() / x;
        ensure((fd - an).abs() <= 1e-6 * scale, || {
            format!("nu={nu} x={x}: finite difference {fd:e} vs {an:e}")
        })?;
    }
    Ok(())
}

pub fn zeros_match_expansion() -> Check {
    let mut nu = 50.0;
    while nu <= 500.0 {
        let exact = first_zero(nu).map_err(|e| e.to_string())?;
        let approx = zero_asymptotic(nu, ZeroKind::X0);
        ensure(rel(approx, exact) <= 1e-4, || format!("nu={nu}: {exact} vs {approx}"))?;
        nu += 25.0;
    }
    Ok(())
}

pub fn half_integer_closed_forms() -> Check {
    for i in 1..=1000 {
        let x = 0.1 * i as f64;
        for (nu, want) in [(0.5, j_half(x)), (1.5, j_three_halves(x))] {
            let got = bessel_j(nu, x).map_err(|e| e.to_string())?;
            ensure((got - want).abs() <= (1e-12 * want.abs()).max(1e-13), || {
                format!("J_{nu}({x}) = {got:e}, closed form {want:e}")
            })?;
        }
    }
    Ok(())
}

pub fn volume_surface_relation() -> Check {
    for d in 1..=50 {
        for r in [0.5, 1.0, 2.0] {
            let v = sphere_volume(d, r);
            let s = sphere_surface(d, r) * r / d as f64;
            ensure(rel(s, v) <= 1e-12, || format!("d={d} R={r}: {v} vs {s}"))?;
        }
    }
    Ok(())
}

// ---- geometry ----------------------------------------------------------

pub fn alpha2_monotone() -> Check {
    for d in [1u32, 2, 3, 6, 11, 40, 120] {
        let mut prev = 1.0;
        for i in 0..=200 {
            let r = 2.0 * i as f64 / 200.0;
            let a = alpha2(d, r, 1.0);
            ensure((0.0..=1.0).contains(&a) && a <= prev + 1e-14, || {
                format!("d={d} r={r}: alpha2={a} after {prev}")
            })?;
            prev = a;
        }
    }
    Ok(())
}

pub fn alpha2_series_equals_integral() -> Check {
    for d in [1u32, 2, 3, 4, 5, 7, 9, 15] {
        for i in 0..=40 {
            let r = 2.0 * i as f64 / 40.0;
            let s = alpha2_series(d, r, 1.0).map_err(|e| e.to_string())?;
            let q = alpha2_integral(d, r, 1.0);
            ensure((s - q).abs() <= 1e-10, || format!("d={d} r={r}: series {s} integral {q}"))?;
        }
    }
    Ok(())
}

pub fn alpha2_incomplete_beta() -> Check {
    for d in [1u32, 2, 5, 8, 30, 100, 250] {
        for i in 1..40 {
            let x = i as f64 / 40.0;
            let got = alpha2(d, 2.0 * x, 1.0);
            let want = beta_reg(0.5 * (d as f64 + 1.0), 0.5, 1.0 - x * x);
            ensure((got - want).abs() <= 1e-12 + 1e-10 * want, || {
                format!("d={d} x={x}: {got:e} vs {want:e}")
            })?;
        }
    }
    Ok(())
}

// ---- structure factors -------------------------------------------------

/// Maximum of |numeric - closed form| over 200 points of `[0.01, k_hi]`.
pub fn oracle_discrepancy(model: &RadialModel, density: &PackingDensity, k_hi: f64) -> Result<f64, String> {
    let mut worst: f64 = 0.0;
    for i in 0..200 {
        let k = 0.01 + (k_hi - 0.01) * i as f64 / 199.0;
        let a = structure_factor(model, density, k).map_err(|e| e.to_string())?;
        let b = structure_factor_numeric(model, density, k, 60.0 * model.sigma)
            .map_err(|e| e.to_string())?;
        worst = worst.max((a - b).abs());
    }
    Ok(worst)
}

/// Terminal parameters of each model in dimension `d` (gap only for d >= 2).
pub fn terminal_models(d: u32) -> Result<Vec<(RadialModel, PackingDensity)>, String> {
    let e = |e: spherebound::Error| e.to_string();
    let mut out = Vec::new();
    let s = terminal_step(d).map_err(e)?;
    out.push((RadialModel::step(), PackingDensity::new(d, s.phi_star).map_err(e)?));
    let t = terminal_delta(d).map_err(e)?;
    out.push((
        RadialModel::step_delta(t.z_star).map_err(e)?,
        PackingDensity::new(d, t.phi_star).map_err(e)?,
    ));
    if d >= 2 {
        let g = terminal_gap(d).map_err(e)?;
        out.push((
            RadialModel::gap(g.sigma_star, g.z_star).map_err(e)?,
            PackingDensity::new(d, g.phi_star).map_err(e)?,
        ));
    }
    Ok(out)
}

pub fn numeric_oracle_agreement() -> Check {
    for d in [1u32, 2, 3, 5, 8] {
        for (model, density) in terminal_models(d)? {
            let worst = oracle_discrepancy(&model, &density, 4.0 * 0.5 * d as f64)?;
            ensure(worst <= 1e-6, || format!("d={d} {:?}: discrepancy {worst:e}", model.kind))?;
        }
    }
    Ok(())
}

/// `min_k S >= -1e-9` on the default grid at and below the terminal density.
/// Step and delta models keep their contact weight; the gap model stays on
/// the hyperuniform family at `sigma*`, down to the density where `Z = 0`.
pub fn nonnegative_below_terminal() -> Check {
    for d in [1u32, 2, 3, 5, 8, 16] {
        let k_max = default_k_max(d).map_err(|e| e.to_string())?;
        for (model, density) in terminal_models(d)? {
            for frac in [1.0, 0.8, 0.5, 0.0] {
                let (model, phi) = match model.kind {
                    ModelKind::StepDeltaGap => {
                        let floor = density.phi / (1.0 + model.z);
                        let phi = floor + frac * (density.phi - floor);
                        (RadialModel::gap(model.sigma, hyperuniform_kissing(d, phi, model.sigma).max(0.0)).unwrap(), phi)
                    }
                    _ => (model, density.phi * frac),
                };
                let dens = PackingDensity::new(d, phi).map_err(|e| e.to_string())?;
                for i in 0..2048 {
                    let k = k_max * i as f64 / 2047.0;
                    let s = structure_factor(&model, &dens, k).map_err(|e| e.to_string())?;
                    ensure(s >= -1e-9, || format!("d={d} {:?} phi={phi}: S({k})={s:e}", model.kind))?;
                }
            }
        }
    }
    Ok(())
}

/// For the hyperuniform gap model `S(k)/k^2` has a finite limit; its
/// Richardson extrapolation matches the analytic quadratic coefficient.
pub fn hyperuniform_small_k() -> Check {
    for d in [2u32, 3, 5, 8] {
        let g = terminal_gap(d).map_err(|e| e.to_string())?;
        let z = hyperuniform_kissing(d, g.phi_star, g.sigma_star);
        let q = |k: f64| structure_factor_gap(d, g.phi_star, g.sigma_star, z, k).unwrap() / (k * k);
        let h = 2e-2;
        let extrapolated = (4.0 * q(h / 2.0) - q(h)) / 3.0;
        let want = small_k_quadratic(d, g.phi_star, g.sigma_star, z);
        ensure(extrapolated.is_finite() && (extrapolated - want).abs() <= 1e-6 * (1.0 + want.abs()), || {
            format!("d={d}: S/k^2 -> {extrapolated:e}, coefficient {want:e}")
        })?;
        let s0 = structure_factor_gap(d, g.phi_star, g.sigma_star, z, 0.0).unwrap();
        ensure(s0.abs() <= 1e-9 * z.max(1.0), || format!("d={d}: S(0)={s0:e}"))?;
    }
    Ok(())
}

/// Small-k quadratic coefficient against second differences at the origin.
pub fn small_k_coefficient() -> Check {
    let cases = [(3u32, 0.2, 1.0, 0.5), (4, 0.1, 1.1, 2.0), (5, 0.05, 1.2, 1.0)];
    for (d, phi, sigma, z) in cases {
        let s = |k: f64| structure_factor_gap(d, phi, sigma, z, k).unwrap();
        let h = 1e-3;
        let fd = (s(h) - s(0.0)) / (h * h);
        let fd2 = (s(2.0 * h) - s(0.0)) / (4.0 * h * h);
        let extrapolated = (4.0 * fd - fd2) / 3.0;
        let want = small_k_quadratic(d, phi, sigma, z);
        ensure((extrapolated - want).abs() <= 1e-8 * (1.0 + want.abs()) + 1e-8, || {
            format!("d={d}: difference quotient {extrapolated:e} vs {want:e}")
        })?;
    }
    Ok(())
}

// ---- optimizer ---------------------------------------------------------

pub fn gap_record_valid(r: &TerminalDensityRecord) -> Check {
    let d = r.d;
    ensure(r.phi_star > 0.0 && r.phi_star <= 1.0 && r.sigma_star >= 1.0, || {
        format!("d={d}: out of range {r:?}")
    })?;
    let z = hyperuniform_kissing(d, r.phi_star, r.sigma_star);
    ensure(rel(r.z_star, z) <= 1e-12, || format!("d={d}: Z*={} vs {z}", r.z_star))?;
    let s0 = structure_factor_gap(d, r.phi_star, r.sigma_star, r.z_star, 0.0).unwrap();
    ensure(s0.abs() <= 1e-9 * r.z_star.max(1.0), || format!("d={d}: S(0)={s0:e}"))?;
    ensure(r.min_s_residual <= 1e-7, || format!("d={d}: residual {:e}", r.min_s_residual))?;
    let scan = find_minima(d, r.phi_star, r.sigma_star, r.z_star, default_k_max(d).unwrap())
        .map_err(|e| e.to_string())?;
    for m in &scan.minima {
        ensure(m.s >= -1e-9, || format!("d={d}: S({})={:e}", m.k, m.s))?;
    }
    Ok(())
}

pub fn monotone_improvement(records: &[TerminalDensityRecord]) -> Check {
    for r in records {
        let d = r.d;
        let delta = terminal_delta(d).unwrap().phi_star;
        let step = terminal_step(d).unwrap().phi_star;
        ensure(r.phi_star > delta && delta > step, || {
            format!("d={d}: gap {:e} delta {delta:e} step {step:e}", r.phi_star)
        })?;
    }
    Ok(())
}

pub fn below_blichfeldt(records: &[TerminalDensityRecord]) -> Check {
    for r in records.iter().filter(|r| r.d >= 3) {
        let b = classical_bounds(r.d).unwrap().blichfeldt;
        ensure(r.phi_star < b, || format!("d={}: {:e} exceeds {b:e}", r.d, r.phi_star))?;
    }
    Ok(())
}

pub fn perturbation_optimality(records: &[TerminalDensityRecord]) -> Check {
    for r in records {
        for s in [r.sigma_star - 0.002, r.sigma_star + 0.002] {
            if s < 1.0 {
                continue;
            }
            let phi = gap_phi_at_sigma(r.d, s).map_err(|e| e.to_string())?;
            ensure(phi <= r.phi_star * (1.0 + 1e-12), || {
                format!("d={}: phi({s})={phi:e} above {:e}", r.d, r.phi_star)
            })?;
        }
    }
    Ok(())
}

pub fn ratio_column(records: &[TerminalDensityRecord]) -> Check {
    for r in records {
        let ratio = 2f64.powi(r.d as i32 + 1) * r.phi_star / (r.d as f64 + 2.0);
        ensure(rel(r.ratio, ratio) <= 1e-12, || format!("d={}: ratio {} vs {ratio}", r.d, r.ratio))?;
    }
    Ok(())
}

// ---- asymptotics -------------------------------------------------------

pub fn asymptotic_identities() -> Check {
    let c = solve_constants().map_err(|e| e.to_string())?;
    ensure(q1_residual(c.q1).abs() <= 1e-12, || format!("q1 residual {:e}", q1_residual(c.q1)))?;
    let l = std::f64::consts::LOG2_E;
    ensure((c.phi_exponent - (3.0 - l) / 2.0).abs() <= 1e-12, || "phi exponent".into())?;
    ensure((c.kiss_exponent - (l - 1.0) / 2.0).abs() <= 1e-12, || "kissing exponent".into())
}

pub fn sigma_convergence(records: &[TerminalDensityRecord]) -> Check {
    let c = solve_constants().unwrap();
    for r in records {
        let nu = 0.5 * r.d as f64;
        let a = sigma_star_asymptotic(r.d).unwrap();
        let lhs = (a - r.sigma_star).abs() * nu;
        let rhs = 2.0 * c.q2.abs() / nu.powf(2.0 / 3.0) + 0.01;
        ensure(lhs <= rhs, || format!("d={}: {lhs:e} > {rhs:e}", r.d))?;
    }
    Ok(())
}

/// `phi_asym/phi_numeric` heads towards one and is within 5% at d = 200.
pub fn phi_ratio_trend(records: &[TerminalDensityRecord]) -> Check {
    let ratios: Vec<(u32, f64)> = records
        .iter()
        .map(|r| (r.d, phi_star_asymptotic(r.d).unwrap().full / r.phi_star))
        .collect();
    let first = (ratios[0].1 - 1.0).abs();
    let (d_last, last) = *ratios.last().unwrap();
    ensure((last - 1.0).abs() <= 0.05 && (last - 1.0).abs() <= first, || {
        format!("ratios {ratios:?} (d={d_last})")
    })
}

// ---- variance ----------------------------------------------------------

pub fn variance_above_lower_bound() -> Check {
    for d in [1u32, 2, 3, 5] {
        for (model, density) in terminal_models(d)? {
            for i in 1..=30 {
                let r = 0.1 * i as f64;
                let n = density.phi * (2.0 * r).powi(d as i32);
                if n > 1.0 {
                    break;
                }
                let v = number_variance(&model, &density, r).map_err(|e| e.to_string())?;
                let lb = variance_lower_bound(d, density.phi, r);
                ensure(v >= lb - 1e-10, || format!("d={d} {:?} R={r}: {v} < {lb}", model.kind))?;
            }
        }
    }
    Ok(())
}

pub fn gap_optima_satisfy_yamada(dims: &[u32]) -> Check {
    for &d in dims {
        let g = terminal_gap(d).map_err(|e| e.to_string())?;
        let model = RadialModel::gap(g.sigma_star, g.z_star).unwrap();
        let density = PackingDensity::new(d, g.phi_star).unwrap();
        let check = yamada_check(&model, &density, 10.0, 500).map_err(|e| e.to_string())?;
        ensure(check.violations.is_empty(), || {
            format!("d={d}: {} violations, first at R={}", check.violations.len(), check.violations[0])
        })?;
        ensure(check.sigma2.iter().all(|&v| v >= 0.0), || format!("d={d}: negative variance"))?;
    }
    Ok(())
}

/// `sigma^2(R)/R^{d-1}` stays bounded for hyperuniform optima on `[2, 10]`.
pub fn surface_scaling(dims: &[u32]) -> Check {
    for &d in dims {
        let g = terminal_gap(d).map_err(|e| e.to_string())?;
        let model = RadialModel::gap(g.sigma_star, g.z_star).unwrap();
        let density = PackingDensity::new(d, g.phi_star).unwrap();
        let vals: Vec<f64> = (0..=16)
            .map(|i| {
                let r = 2.0 + 0.5 * i as f64;
                number_variance(&model, &density, r).unwrap() / r.powi(d as i32 - 1)
            })
            .collect();
        let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = vals.iter().cloned().fold(0.0, f64::max);
        // volume scaling would grow the ratio by a factor 5 over [2, 10]
        ensure(lo > 0.0 && hi / lo < 2.5, || format!("d={d}: ratio range [{lo:e}, {hi:e}]"))?;
    }
    Ok(())
}

// ---- simulation --------------------------------------------------------

pub fn simulated_packings_valid() -> Check {
    for (d, l, t, kappa) in [(1u32, 50.0, 5.0, Kappa::One), (2, 15.0, 3.0, Kappa::One), (3, 8.0, 2.0, Kappa::One), (2, 15.0, 3.0, Kappa::Zero), (3, 8.0, 2.0, Kappa::Zero)] {
        for seed in 1..=3 {
            let res = simulate(&MaternConfig::new(d, l, t, kappa, seed)).map_err(|e| e.to_string())?;
            let m = min_pair_distance(&res);
            ensure(m >= 1.0 - 1e-12, || format!("d={d} seed={seed}: min distance {m}"))?;
            ensure(res.phi_hat <= 1.0, || "phi_hat above one".into())?;
        }
    }
    let mut cfg = MaternConfig::new(1, 60.0, 1.0, Kappa::Zero, 5);
    cfg.saturate = true;
    let res = simulate(&cfg).map_err(|e| e.to_string())?;
    ensure(min_pair_distance(&res) >= 1.0 - 1e-12, || "saturated packing overlaps".into())
}

pub fn ghost_order_independence() -> Check {
    let cfg = MaternConfig::new(2, 12.0, 4.0, Kappa::One, 9);
    let arrivals = draw_arrivals(&cfg).map_err(|e| e.to_string())?;
    let base: Vec<[u64; 2]> = {
        let mut v: Vec<_> = accept_arrivals(&cfg, &arrivals)
            .into_iter()
            .map(|i| [arrivals[i].x[0].to_bits(), arrivals[i].x[1].to_bits()])
            .collect();
        v.sort();
        v
    };
    let mut shuffled = arrivals.clone();
    let mut rng = Lcg::new(3);
    for i in (1..shuffled.len()).rev() {
        let j = (rng.uniform(0.0, 1.0) * (i + 1) as f64) as usize;
        shuffled.swap(i, j.min(i));
    }
    let mut again: Vec<[u64; 2]> = accept_arrivals(&cfg, &shuffled)
        .into_iter()
        .map(|i| [shuffled[i].x[0].to_bits(), shuffled[i].x[1].to_bits()])
        .collect();
    again.sort();
    ensure(base == again, || format!("{} vs {} accepted", base.len(), again.len()))
}

pub fn density_monotone_in_time() -> Check {
    for kappa in [Kappa::One, Kappa::Zero] {
        let mut prev = 0.0;
        for t in [0.25, 0.5, 1.0, 2.0, 4.0, 8.0] {
            let res = simulate(&MaternConfig::new(2, 20.0, t, kappa, 4)).map_err(|e| e.to_string())?;
            ensure(res.phi_hat >= prev, || format!("{kappa:?} T={t}: {} < {prev}", res.phi_hat))?;
            prev = res.phi_hat;
        }
    }
    Ok(())
}

/// Ghost-process histogram on `[2, 3]` is consistent with `g2 = 1`.
pub fn uncorrelated_beyond_two() -> Check {
    let t = spherebound::matern::horizon_for_deficit(1, 1e-4);
    let runs: Vec<_> = (101..=120u64)
        .map(|seed| simulate(&MaternConfig::new(1, 200.0, t, Kappa::One, seed)).unwrap())
        .collect();
    let ens = ensemble_histogram(&runs).map_err(|e| e.to_string())?;
    let ones = vec![1.0; ens.r.len()];
    let gof = chi_square_gof(&ens, &ones, 2.0, 3.0).map_err(|e| e.to_string())?;
    ensure(gof.passed, || format!("chi-square {} above {}", gof.statistic, gof.critical_95))
}
