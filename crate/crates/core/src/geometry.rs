//! Scaled intersection and union volumes of two equal d-dimensional spheres.
//!
//! `alpha2(r; R)` is the volume common to two spheres of radius `R` whose
//! centers are `r` apart, divided by the volume of one sphere. It has support
//! on `[0, 2R]`, decreases from 1 to 0, and is the kernel of the number
//! variance and of the ghost-RSA pair correlation.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quad::{self, Tolerance};
use crate::specialfn::ln_gamma;

const SERIES_TERM_CUTOFF: f64 = 1e-14;
const SERIES_TAIL_LIMIT: f64 = 1e-12;
const SERIES_MAX_TERMS: usize = 1_000_000;

/// `c(d) = 2 Gamma(1 + d/2) / (sqrt(pi) Gamma((d+1)/2))`.
pub fn intersection_prefactor(d: u32) -> f64 {
    let d = d as f64;
    (2.0f64.ln() + ln_gamma(1.0 + 0.5 * d) - 0.5 * PI.ln() - ln_gamma(0.5 * (d + 1.0))).exp()
}

fn reduced_distance(r: f64, radius: f64) -> f64 {
    r / (2.0 * radius)
}

/// `alpha2` from its angular integral `c(d) int_0^{acos(r/2R)} sin^d t dt`.
pub fn alpha2_integral(d: u32, r: f64, radius: f64) -> f64 {
    assert!(d >= 1 && radius > 0.0 && r >= 0.0, "alpha2 needs d>=1, R>0, r>=0");
    let x = reduced_distance(r, radius);
    if x >= 1.0 {
        return 0.0;
    }
    if x == 0.0 {
        return 1.0;
    }
    let upper = x.acos();
    let dd = d as f64;
    let mut integrand = |t: f64| {
        let s = t.sin();
        if d > 60 {
            if s <= 0.0 {
                0.0
            } else {
                (dd * s.ln()).exp()
            }
        } else {
            s.powi(d as i32)
        }
    };
    let tol = Tolerance::new(1e-300, 1e-13);
    let (value, _) = quad::integrate_with_error(&mut integrand, 0.0, upper, tol)
        .expect("limits are finite");
    (intersection_prefactor(d) * value).clamp(0.0, 1.0)
}

/// `alpha2` from its power series in `x = r/(2R)`.
///
/// For odd `d` the series terminates (a polynomial of degree `d`). For even
/// `d` it is summed until a term drops below 1e-14; if the remaining tail
/// cannot be bounded by 1e-12 a [`Error::SeriesTruncation`] is returned.
pub fn alpha2_series(d: u32, r: f64, radius: f64) -> Result<f64> {
    if d == 0 || radius <= 0.0 || r < 0.0 {
        return Err(Error::invalid(format!("alpha2_series: d={d}, r={r}, R={radius}")));
    }
    let x = reduced_distance(r, radius);
    if x > 1.0 {
        return Err(Error::domain("alpha2_series", format!("r={r} exceeds 2R={}", 2.0 * radius)));
    }
    if x == 1.0 {
        return Ok(0.0);
    }
    let c = intersection_prefactor(d);
    let dd = d as f64;
    let x2 = x * x;
    // b_n = (-1)^n [(d-1)(d-3)...(d-2n+3)] / [2 4 ... (2n-2)] x^{2n-1}
    let mut b = (dd - 1.0) / 2.0 * x2 * x; // n = 2
    let mut sum = 0.0;
    let mut n = 2usize;
    loop {
        let term = b / (2 * n - 1) as f64;
        sum += term;
        if b == 0.0 {
            break;
        }
        let nf = n as f64;
        b *= -(dd - 2.0 * nf + 1.0) / (2.0 * nf) * x2;
        if term.abs() < SERIES_TERM_CUTOFF && b.abs() < term.abs().max(f64::MIN_POSITIVE) * 4.0 {
            let tail = (b.abs() / (2.0 * nf + 1.0)) / (1.0 - x2);
            if tail > SERIES_TAIL_LIMIT {
                return Err(Error::SeriesTruncation {
                    terms: n,
                    tail_bound: tail,
                });
            }
            break;
        }
        n += 1;
        if n > SERIES_MAX_TERMS {
            let tail = (b.abs() / (2.0 * nf + 1.0)) / (1.0 - x2);
            return Err(Error::SeriesTruncation {
                terms: n,
                tail_bound: tail,
            });
        }
    }
    Ok((1.0 - c * x + c * sum).clamp(0.0, 1.0))
}

/// `alpha2` by the most accurate available route: the terminating series
/// for small odd `d`, otherwise the angular integral.
pub fn alpha2(d: u32, r: f64, radius: f64) -> f64 {
    if d % 2 == 1 && d <= 15 {
        if let Ok(v) = alpha2_series(d, r.min(2.0 * radius), radius) {
            return v;
        }
    }
    alpha2_integral(d, r, radius)
}

/// Large-d value of `alpha2(R; R)`: `(6/pi)^{1/2} (3/4)^{d/2} d^{-1/2}`.
pub fn alpha2_asymptotic(d: u32) -> f64 {
    let d = d as f64;
    (6.0 / PI).sqrt() * (0.75f64).powf(0.5 * d) / d.sqrt()
}

/// Scaled union volume `2 - alpha2`.
pub fn beta2(d: u32, r: f64, radius: f64) -> f64 {
    2.0 - alpha2(d, r, radius)
}
