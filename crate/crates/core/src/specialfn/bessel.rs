//! Bessel functions of the first kind for real order and real argument.
//!
//! Three regimes are used:
//!
//! * ascending series when `x < 2` or `x^2 < nu + 1`, where the alternating
//!   terms shrink geometrically and no cancellation occurs;
//! * Steed's method otherwise: the continued fraction for `J'_nu / J_nu`,
//!   downward recurrence to an order `mu` in `[-1/2, 1/2)`, then the complex
//!   continued fraction for `(J'_mu + i Y'_mu) / (J_mu + i Y_mu)` and the
//!   Wronskian fix the normalization;
//! * Hankel's asymptotic expansion once `x` dominates both 1000 and `25 nu^2`.
//!
//! All three produce `ln |J_nu(x)|` together with a sign so that callers can
//! combine huge gamma prefactors without overflow.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-300;
const RESCALE: f64 = 1e200;

/// A value held as `sign * exp(ln_abs)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogValue {
    pub sign: f64,
    pub ln_abs: f64,
}

impl LogValue {
    pub fn zero() -> Self {
        LogValue {
            sign: 0.0,
            ln_abs: f64::NEG_INFINITY,
        }
    }

    pub fn from_f64(v: f64) -> Self {
        if v == 0.0 {
            Self::zero()
        } else {
            LogValue {
                sign: v.signum(),
                ln_abs: v.abs().ln(),
            }
        }
    }

    pub fn value(self) -> f64 {
        if self.sign == 0.0 {
            0.0
        } else {
            self.sign * self.ln_abs.exp()
        }
    }
}

fn check_args(function: &'static str, nu: f64, x: f64) -> Result<()> {
    if !nu.is_finite() || !x.is_finite() {
        return Err(Error::domain(function, format!("non-finite input nu={nu}, x={x}")));
    }
    if x < 0.0 {
        return Err(Error::domain(function, format!("negative argument x={x}")));
    }
    if nu < 0.0 {
        return Err(Error::domain(function, format!("negative order nu={nu}")));
    }
    Ok(())
}

/// `J_nu(x)` for `nu >= 0`, `x >= 0`.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    Ok(bessel_j_log(nu, x)?.value())
}

/// `J_nu(x)` as sign and log-magnitude.
pub fn bessel_j_log(nu: f64, x: f64) -> Result<LogValue> {
    check_args("bessel_j", nu, x)?;
    if x == 0.0 {
        return Ok(if nu == 0.0 {
            LogValue { sign: 1.0, ln_abs: 0.0 }
        } else {
            LogValue::zero()
        });
    }
    if use_series(nu, x) {
        let s = hyper0f1_series(nu, x);
        let prefactor = nu * (0.5 * x).ln() - ln_gamma(nu + 1.0);
        let mut v = LogValue::from_f64(s);
        v.ln_abs += prefactor;
        return Ok(v);
    }
    if x > 1000.0 && x > 25.0 * nu * nu {
        return Ok(LogValue::from_f64(hankel(nu, x)));
    }
    steed(nu, x)
}

/// The normalized function `Gamma(1+nu) (2/x)^nu J_nu(x)`, equal to 1 at the
/// origin and bounded by 1 in magnitude for `nu >= -1/2`.
///
/// Order `-1/2` is admitted because the one-dimensional delta shell needs it;
/// there the function is `cos x`.
pub fn normalized_j(nu: f64, x: f64) -> Result<f64> {
    if nu == -0.5 {
        if !x.is_finite() || x < 0.0 {
            return Err(Error::domain("normalized_j", format!("bad argument x={x}")));
        }
        return Ok(x.cos());
    }
    check_args("normalized_j", nu, x)?;
    if x == 0.0 {
        return Ok(1.0);
    }
    if use_series(nu, x) {
        return Ok(hyper0f1_series(nu, x));
    }
    let j = bessel_j_log(nu, x)?;
    let ln = j.ln_abs + ln_gamma(nu + 1.0) + nu * (2.0 / x).ln();
    Ok(j.sign * ln.exp())
}

fn use_series(nu: f64, x: f64) -> bool {
    x < 2.0 || x * x < nu + 1.0
}

/// `sum_m (-x^2/4)^m / (m! (nu+1)_m)`.
fn hyper0f1_series(nu: f64, x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut m = 0.0;
    loop {
        m += 1.0;
        term *= q / (m * (nu + m));
        sum += term;
        if term.abs() <= EPS * sum.abs() || term == 0.0 {
            break;
        }
        if m > 500.0 {
            break;
        }
    }
    sum
}

fn hankel(nu: f64, x: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let eight_x = 8.0 * x;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut k = 1.0;
    let mut last = f64::INFINITY;
    loop {
        let odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (k * eight_x);
        if term.abs() >= last || term == 0.0 {
            break;
        }
        last = term.abs();
        // terms alternate between q (odd k) and p (even k) with signs +,-,-,+
        match (k as u64) % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if term.abs() < EPS {
            break;
        }
        k += 1.0;
    }
    let chi = x - (0.5 * nu + 0.25) * PI;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

fn steed(nu: f64, x: f64) -> Result<LogValue> {
    let nl = (nu + 0.5).floor();
    let mu = nu - nl;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let max_iter = 20_000 + 4 * x as usize;

    // CF1: f = J'_nu / J_nu
    let mut isign = 1.0;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    let mut converged = false;
    for _ in 0..max_iter {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence {
            function: "bessel_j (CF1)",
            iterations: max_iter,
        });
    }

    // Downward recurrence from nu to mu, starting from an arbitrary scale.
    let mut rjl = isign;
    let mut rjpl = h * rjl;
    let mut log_scale = 0.0;
    let mut fact = nu * xi;
    let mut l = nl as i64;
    while l >= 1 {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
        if rjl.abs() > RESCALE {
            rjl /= RESCALE;
            rjpl /= RESCALE;
            log_scale += RESCALE.ln();
        }
        l -= 1;
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    // CF2 (Steed): p + iq = (J'_mu + i Y'_mu) / (J_mu + i Y_mu)
    let mut a = 0.25 - mu * mu;
    let mut p = -0.5 * xi;
    let mut q = 1.0;
    let br = 2.0 * x;
    let mut bi = 2.0;
    let mut fct = a * xi / (p * p + q * q);
    let mut cr = br + q * fct;
    let mut ci = bi + p * fct;
    let mut den = br * br + bi * bi;
    let mut dr = br / den;
    let mut di = -bi / den;
    let mut dlr = cr * dr - ci * di;
    let mut dli = cr * di + ci * dr;
    let mut temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    let mut converged = false;
    for i in 2..max_iter {
        a += 2.0 * (i as f64 - 1.0);
        bi += 2.0;
        dr = a * dr + br;
        di = a * di + bi;
        if dr.abs() + di.abs() < FPMIN {
            dr = FPMIN;
        }
        fct = a / (cr * cr + ci * ci);
        cr = br + cr * fct;
        ci = bi - ci * fct;
        if cr.abs() + ci.abs() < FPMIN {
            cr = FPMIN;
        }
        den = dr * dr + di * di;
        dr /= den;
        di = -di / den;
        dlr = cr * dr - ci * di;
        dli = cr * di + ci * dr;
        temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        if (dlr - 1.0).abs() + dli.abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence {
            function: "bessel_j (CF2)",
            iterations: max_iter,
        });
    }
    let gam = (p - f) / q;
    let w = xi2 / PI;
    let rjmu = (w / ((p - f) * gam + q)).sqrt();
    // J_nu = isign * |J_mu| / |rjl| * exp(-log_scale)
    let ln_abs = rjmu.ln() - rjl.abs().ln() - log_scale;
    Ok(LogValue { sign: isign, ln_abs })
}

/// Dominant term of Watson's oscillatory expansion, `A_nu(x) cos(omega_nu(x) - pi/4)`,
/// valid for `x > nu`.
pub fn watson_j(nu: f64, x: f64) -> Result<f64> {
    if !nu.is_finite() || !x.is_finite() || nu < 0.0 {
        return Err(Error::domain("watson_j", format!("bad input nu={nu}, x={x}")));
    }
    if x <= nu {
        return Err(Error::domain(
            "watson_j",
            format!("requires x > nu, got x={x}, nu={nu}"),
        ));
    }
    let root = (x * x - nu * nu).sqrt();
    let amplitude = (2.0 / (PI * root)).sqrt();
    let omega = root - nu * (nu / x).acos();
    Ok(amplitude * (omega - FRAC_PI_4).cos())
}

/// Relative size of the first neglected Watson term, `(3x^2 + 2nu^2) / (12 (x^2 - nu^2))`.
pub fn watson_error_scale(nu: f64, x: f64) -> f64 {
    (3.0 * x * x + 2.0 * nu * nu) / (12.0 * (x * x - nu * nu))
}

/// `J_{1/2}(x) = sqrt(2/(pi x)) sin x`, used only as a cross-check path.
pub fn j_half(x: f64) -> f64 {
    (1.0 / (FRAC_PI_2 * x)).sqrt() * x.sin()
}

/// `J_{3/2}(x) = sqrt(2/(pi x)) (sin x / x - cos x)`.
pub fn j_three_halves(x: f64) -> f64 {
    (1.0 / (FRAC_PI_2 * x)).sqrt() * (x.sin() / x - x.cos())
}
