//! Generalized random sequential addition on a periodic box.
//!
//! Test spheres of unit diameter arrive as a space-time Poisson process of
//! unit intensity. With `kappa = 1` (the ghost process) an arrival is kept
//! iff no earlier arrival, kept or not, lies within unit distance; with
//! `kappa = 0` (standard RSA) only earlier kept spheres block it.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};
use crate::geometry::{alpha2, beta2};
use crate::quad::{self, Tolerance};
use crate::specialfn::sphere_volume;

/// Saturation density of random sequential addition of unit rods on a line.
pub const RENYI_DENSITY: f64 = 0.747_597_920_253_411;

pub const HIST_R_MIN: f64 = 0.999;
pub const HIST_R_MAX: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Kappa {
    /// Standard RSA: only kept spheres block.
    Zero,
    /// Ghost RSA: every earlier arrival blocks.
    One,
}

impl Kappa {
    pub fn from_int(k: u8) -> Result<Self> {
        match k {
            0 => Ok(Kappa::Zero),
            1 => Ok(Kappa::One),
            other => Err(Error::invalid(format!("kappa must be 0 or 1, got {other}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MaternConfig {
    pub d: u32,
    pub box_length: f64,
    pub time_horizon: f64,
    pub kappa: Kappa,
    pub seed: u64,
    pub bins: usize,
    /// For `kappa = 0` in one dimension: after the horizon, fill every
    /// remaining gap until no rod fits.
    pub saturate: bool,
}

impl MaternConfig {
    pub fn new(d: u32, box_length: f64, time_horizon: f64, kappa: Kappa, seed: u64) -> Self {
        MaternConfig {
            d,
            box_length,
            time_horizon,
            kappa,
            seed,
            bins: 50,
            saturate: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=3).contains(&self.d) {
            return Err(Error::invalid(format!("simulator supports 1 <= d <= 3, got {}", self.d)));
        }
        if !(self.box_length >= 6.0 && self.box_length.is_finite()) {
            return Err(Error::invalid(format!("box length must be >= 6, got {}", self.box_length)));
        }
        if !(self.time_horizon > 0.0 && self.time_horizon.is_finite()) {
            return Err(Error::invalid(format!(
                "time horizon must be positive, got {}",
                self.time_horizon
            )));
        }
        if self.bins < 50 {
            return Err(Error::invalid(format!("need at least 50 bins, got {}", self.bins)));
        }
        if self.saturate && !(self.kappa == Kappa::Zero && self.d == 1) {
            return Err(Error::invalid("saturation runs are supported for kappa = 0, d = 1 only"));
        }
        Ok(())
    }
}

/// Horizon at which `1 - exp(-v1(1) T)` reaches `1 - deficit`.
pub fn horizon_for_deficit(d: u32, deficit: f64) -> f64 {
    -deficit.ln() / sphere_volume(d, 1.0)
}

/// `phi(t) = 2^{-d} [1 - exp(-v1(1) t)]`.
pub fn phi_of_t(d: u32, t: f64) -> f64 {
    if t.is_infinite() {
        return 2f64.powi(-(d as i32));
    }
    -(-sphere_volume(d, 1.0) * t).exp_m1() * 2f64.powi(-(d as i32))
}

/// Pair correlation of the ghost process at time `t`.
///
/// With `V1 = v1(1)` and `VU = v1(1) beta2(r;1)` the exclusion volumes of one
/// and two spheres, `rho^2 g2 = 2 [ (1-e^{-V1 t})/V1 - (1-e^{-VU t})/VU ] / (VU - V1)`.
pub fn g2_matern(d: u32, r: f64, t: f64) -> f64 {
    if r < 1.0 {
        return 0.0;
    }
    if t.is_infinite() {
        return g2_matern_limit(d, r);
    }
    let v1 = sphere_volume(d, 1.0);
    let vu = v1 * beta2(d, r, 1.0);
    let rho = -(-v1 * t).exp_m1() / v1;
    let pair = -(-v1 * t).exp_m1() / v1 - -(-vu * t).exp_m1() / vu;
    2.0 * pair / ((vu - v1) * rho * rho)
}

/// `g2(r; infinity) = 2 Theta(r-1) / beta2(r;1)`.
pub fn g2_matern_limit(d: u32, r: f64) -> f64 {
    if r < 1.0 {
        0.0
    } else {
        2.0 / beta2(d, r, 1.0)
    }
}

/// Contact excess `g2(1+; infinity) - 1 = alpha2/(2 - alpha2)` for `d = 1..=d_max`.
pub fn decorrelation_profile(d_max: u32) -> Result<Vec<(u32, f64)>> {
    if !(1..=300).contains(&d_max) {
        return Err(Error::invalid(format!("d_max must lie in 1..=300, got {d_max}")));
    }
    Ok((1..=d_max)
        .map(|d| {
            let a = alpha2(d, 1.0, 1.0);
            (d, a / (2.0 - a))
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct G2Histogram {
    pub r: Vec<f64>,
    pub edges: Vec<f64>,
    pub g2_hat: Vec<f64>,
    pub stderr: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaternResult {
    pub config: MaternConfig,
    pub accepted_centers: Vec<Vec<f64>>,
    pub arrivals: usize,
    pub ghost_count: usize,
    pub phi_hat: f64,
    /// Exact expected density where one is known.
    pub phi_analytic: Option<f64>,
    pub g2_hist: G2Histogram,
    /// Shell-volume average of the analytic `g2(r; T)` over each bin (ghost process only).
    pub g2_analytic: Option<Vec<f64>>,
}

/// A test sphere: arrival time and position (unused coordinates are zero).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arrival {
    pub t: f64,
    pub x: [f64; 3],
}

struct CellList {
    d: usize,
    n: usize,
    edge: f64,
    cells: HashMap<usize, Vec<usize>>,
}

impl CellList {
    fn new(d: usize, box_length: f64, min_edge: f64) -> Self {
        let n = ((box_length / min_edge).floor() as usize).max(1);
        CellList {
            d,
            n,
            edge: box_length / n as f64,
            cells: HashMap::new(),
        }
    }

    fn coords(&self, x: &[f64; 3]) -> [usize; 3] {
        let mut c = [0; 3];
        for (i, ci) in c.iter_mut().enumerate().take(self.d) {
            *ci = ((x[i] / self.edge) as usize).min(self.n - 1);
        }
        c
    }

    fn index(&self, c: [usize; 3]) -> usize {
        c.iter().take(self.d).fold(0, |acc, &ci| acc * self.n + ci)
    }

    fn insert(&mut self, x: &[f64; 3], id: usize) {
        let key = self.index(self.coords(x));
        self.cells.entry(key).or_default().push(id);
    }

    /// Distinct cells within one cell of `x`, with periodic wrap.
    fn neighbourhood(&self, x: &[f64; 3]) -> Vec<usize> {
        let c = self.coords(x);
        let mut keys = Vec::with_capacity(27);
        let span = 3usize.pow(self.d as u32);
        for m in 0..span {
            let mut cc = [0; 3];
            let mut rest = m;
            for i in 0..self.d {
                let off = rest % 3;
                rest /= 3;
                cc[i] = (c[i] + self.n + off - 1) % self.n;
            }
            keys.push(self.index(cc));
        }
        keys.sort_unstable();
        keys.dedup();
        keys
    }

    fn near(&self, x: &[f64; 3]) -> impl Iterator<Item = usize> + '_ {
        self.neighbourhood(x)
            .into_iter()
            .filter_map(|k| self.cells.get(&k))
            .flatten()
            .copied()
    }
}

fn periodic_distance(d: usize, a: &[f64; 3], b: &[f64; 3], box_length: f64) -> f64 {
    let mut s = 0.0;
    for i in 0..d {
        let mut dx = a[i] - b[i];
        dx -= box_length * (dx / box_length).round();
        s += dx * dx;
    }
    s.sqrt()
}

/// Poisson arrivals in unit time slabs, so that longer horizons extend
/// shorter ones drawn from the same seed.
fn arrivals(config: &MaternConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Arrival>> {
    let volume = config.box_length.powi(config.d as i32);
    let poisson = Poisson::new(volume).map_err(|e| Error::invalid(e.to_string()))?;
    let slabs = config.time_horizon.ceil() as usize;
    let mut out = Vec::new();
    for j in 0..slabs {
        let count = poisson.sample(rng) as usize;
        for _ in 0..count {
            let t = j as f64 + rng.random::<f64>();
            let mut x = [0.0; 3];
            for xi in x.iter_mut().take(config.d as usize) {
                *xi = rng.random::<f64>() * config.box_length;
            }
            if t <= config.time_horizon {
                out.push(Arrival { t, x });
            }
        }
    }
    out.sort_by(|a, b| a.t.total_cmp(&b.t));
    Ok(out)
}

/// The arrivals a run with this configuration processes, in time order.
pub fn draw_arrivals(config: &MaternConfig) -> Result<Vec<Arrival>> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    arrivals(config, &mut rng)
}

/// Indices into `arrivals` of the kept spheres, in increasing time.
///
/// The input may be in any order; acceptance is decided in time order.
pub fn accept_arrivals(config: &MaternConfig, arrivals: &[Arrival]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..arrivals.len()).collect();
    order.sort_by(|&a, &b| arrivals[a].t.total_cmp(&arrivals[b].t).then(a.cmp(&b)));
    let d = config.d as usize;
    let mut cells = CellList::new(d, config.box_length, 1.0);
    let mut kept = Vec::new();
    for i in order {
        let a = &arrivals[i];
        let blocked = cells
            .near(&a.x)
            .any(|j| periodic_distance(d, &a.x, &arrivals[j].x, config.box_length) < 1.0);
        let keep = !blocked;
        if keep {
            kept.push(i);
        }
        if keep || config.kappa == Kappa::One {
            cells.insert(&a.x, i);
        }
    }
    kept
}

/// Fill every gap of a one-dimensional periodic rod configuration until no
/// further unit rod fits. Gaps evolve independently.
fn saturate_line(centers: &mut Vec<f64>, box_length: f64, rng: &mut ChaCha8Rng) {
    if centers.is_empty() {
        centers.push(rng.random::<f64>() * box_length);
    }
    centers.sort_by(f64::total_cmp);
    let mut stack: Vec<(f64, f64)> = centers
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let next = if i + 1 < centers.len() { centers[i + 1] } else { centers[0] + box_length };
            (c, next)
        })
        .collect();
    while let Some((a, b)) = stack.pop() {
        if b - a < 2.0 {
            continue;
        }
        let x = a + 1.0 + rng.random::<f64>() * (b - a - 2.0);
        centers.push(x.rem_euclid(box_length));
        stack.push((a, x));
        stack.push((x, b));
    }
    centers.sort_by(f64::total_cmp);
}

fn histogram(config: &MaternConfig, centers: &[[f64; 3]]) -> G2Histogram {
    let d = config.d as usize;
    let bins = config.bins;
    let width = (HIST_R_MAX - HIST_R_MIN) / bins as f64;
    let edges: Vec<f64> = (0..=bins).map(|i| HIST_R_MIN + i as f64 * width).collect();
    let mut counts = vec![0u64; bins];
    let mut cells = CellList::new(d, config.box_length, HIST_R_MAX);
    for (i, x) in centers.iter().enumerate() {
        cells.insert(x, i);
    }
    for (i, x) in centers.iter().enumerate() {
        for j in cells.near(x) {
            if j <= i {
                continue;
            }
            let r = periodic_distance(d, x, &centers[j], config.box_length);
            if (HIST_R_MIN..HIST_R_MAX).contains(&r) {
                let b = (((r - HIST_R_MIN) / width) as usize).min(bins - 1);
                counts[b] += 2;
            }
        }
    }
    let n = centers.len() as f64;
    let rho = n / config.box_length.powi(config.d as i32);
    let mut g2_hat = Vec::with_capacity(bins);
    let mut stderr = Vec::with_capacity(bins);
    for b in 0..bins {
        let shell = sphere_volume(config.d, edges[b + 1]) - sphere_volume(config.d, edges[b]);
        let norm = n * rho * shell;
        if norm > 0.0 {
            g2_hat.push(counts[b] as f64 / norm);
            // each unordered pair contributes two counts
            stderr.push((2.0 * counts[b] as f64).sqrt() / norm);
        } else {
            g2_hat.push(0.0);
            stderr.push(0.0);
        }
    }
    let r = edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    G2Histogram {
        r,
        edges,
        g2_hat,
        stderr,
    }
}

/// Shell-volume average of `g` over `[lo, hi]`.
pub fn bin_average<F: Fn(f64) -> f64>(d: u32, lo: f64, hi: f64, g: F) -> Result<f64> {
    let dd = d as f64;
    let lo_eff = lo.max(1.0);
    if hi <= lo_eff {
        return Ok(0.0);
    }
    let weight = |r: f64| dd * r.powf(dd - 1.0);
    let num = quad::integrate(|r| weight(r) * g(r), lo_eff, hi, Tolerance::new(1e-13, 1e-11))?;
    Ok(num / (hi.powf(dd) - lo.powf(dd)))
}

pub fn simulate(config: &MaternConfig) -> Result<MaternResult> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let arrivals = arrivals(config, &mut rng)?;
    let kept = accept_arrivals(config, &arrivals);
    let mut centers: Vec<[f64; 3]> = kept.iter().map(|&i| arrivals[i].x).collect();
    if config.saturate {
        let mut line: Vec<f64> = centers.iter().map(|x| x[0]).collect();
        saturate_line(&mut line, config.box_length, &mut rng);
        centers = line.into_iter().map(|x| [x, 0.0, 0.0]).collect();
    }
    let volume = config.box_length.powi(config.d as i32);
    let phi_hat = centers.len() as f64 * sphere_volume(config.d, 0.5) / volume;
    let g2_hist = histogram(config, &centers);
    let (phi_analytic, g2_analytic) = match config.kappa {
        Kappa::One => {
            let t = config.time_horizon;
            let reference = g2_hist
                .edges
                .windows(2)
                .map(|w| bin_average(config.d, w[0], w[1], |r| g2_matern(config.d, r, t)))
                .collect::<Result<Vec<_>>>()?;
            (Some(phi_of_t(config.d, t)), Some(reference))
        }
        Kappa::Zero if config.saturate => (Some(RENYI_DENSITY), None),
        Kappa::Zero => (None, None),
    };
    let d = config.d as usize;
    Ok(MaternResult {
        config: *config,
        accepted_centers: centers.iter().map(|x| x[..d].to_vec()).collect(),
        arrivals: arrivals.len(),
        ghost_count: arrivals.len() - kept.len(),
        phi_hat,
        phi_analytic,
        g2_hist,
        g2_analytic,
    })
}

/// Smallest periodic distance between accepted centers.
pub fn min_pair_distance(result: &MaternResult) -> f64 {
    let d = result.config.d as usize;
    let l = result.config.box_length;
    let pts: Vec<[f64; 3]> = result
        .accepted_centers
        .iter()
        .map(|c| {
            let mut x = [0.0; 3];
            x[..d].copy_from_slice(c);
            x
        })
        .collect();
    let mut cells = CellList::new(d, l, 1.0);
    for (i, x) in pts.iter().enumerate() {
        cells.insert(x, i);
    }
    let mut best = f64::INFINITY;
    for (i, x) in pts.iter().enumerate() {
        for j in cells.near(x) {
            if j != i {
                best = best.min(periodic_distance(d, x, &pts[j], l));
            }
        }
    }
    best
}

/// Histogram averaged over independent runs with standard errors across runs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleHistogram {
    pub r: Vec<f64>,
    pub g2_mean: Vec<f64>,
    pub stderr: Vec<f64>,
    pub runs: usize,
}

pub fn ensemble_histogram(results: &[MaternResult]) -> Result<EnsembleHistogram> {
    let first = results
        .first()
        .ok_or_else(|| Error::invalid("need at least one run"))?;
    let n = results.len();
    if n < 2 {
        return Err(Error::invalid("standard errors need at least two runs"));
    }
    let bins = first.g2_hist.r.len();
    if results.iter().any(|r| r.g2_hist.r.len() != bins) {
        return Err(Error::invalid("runs have different binning"));
    }
    let mut mean = vec![0.0; bins];
    let mut se = vec![0.0; bins];
    for b in 0..bins {
        let vals: Vec<f64> = results.iter().map(|r| r.g2_hist.g2_hat[b]).collect();
        let m = vals.iter().sum::<f64>() / n as f64;
        let var = vals.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (n - 1) as f64;
        mean[b] = m;
        se[b] = (var / n as f64).sqrt();
    }
    Ok(EnsembleHistogram {
        r: first.g2_hist.r.clone(),
        g2_mean: mean,
        stderr: se,
        runs: n,
    })
}

/// Goodness of fit of an ensemble histogram against reference bin values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GoodnessOfFit {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
    pub critical_95: f64,
    pub passed: bool,
}

/// Chi-square test over the bins whose centers lie in `[r_lo, r_hi]`.
///
/// Each squared residual is scaled by `(n-3)/(n-1)` because the standard
/// errors are themselves estimated from `n` runs; this gives every term
/// unit mean so the sum is compared with a chi-square of one degree of
/// freedom per bin.
pub fn chi_square_gof(
    ensemble: &EnsembleHistogram,
    reference: &[f64],
    r_lo: f64,
    r_hi: f64,
) -> Result<GoodnessOfFit> {
    if reference.len() != ensemble.r.len() {
        return Err(Error::invalid("reference and histogram lengths differ"));
    }
    if ensemble.runs < 4 {
        return Err(Error::invalid("need at least four runs"));
    }
    let n = ensemble.runs as f64;
    let scale = (n - 3.0) / (n - 1.0);
    let mut statistic = 0.0;
    let mut dof = 0;
    for (i, &r) in ensemble.r.iter().enumerate() {
        if r < r_lo || r > r_hi || ensemble.stderr[i] == 0.0 {
            continue;
        }
        let z = (ensemble.g2_mean[i] - reference[i]) / ensemble.stderr[i];
        statistic += scale * z * z;
        dof += 1;
    }
    if dof == 0 {
        return Err(Error::invalid("no bins with nonzero standard error in range"));
    }
    let dist = ChiSquared::new(dof as f64).map_err(|e| Error::invalid(e.to_string()))?;
    let critical_95 = dist.inverse_cdf(0.95);
    Ok(GoodnessOfFit {
        statistic,
        dof,
        p_value: 1.0 - dist.cdf(statistic),
        critical_95,
        passed: statistic <= critical_95,
    })
}
