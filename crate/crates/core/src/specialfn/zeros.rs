//! First positive zeros of `J_nu` and Olver's large-order expansion of them.

use serde::Serialize;

use super::bessel::bessel_j;
use crate::error::{Error, Result};

/// Olver's expansion constants for the first zero, as quoted to 8 digits.
pub const OLVER_A1: f64 = 1.8557571;
pub const OLVER_A2: f64 = 1.033150;
pub const OLVER_A3: f64 = -0.003971;

const SCAN_STEP: f64 = 0.25;

/// Which of the three neighbouring first zeros.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroKind {
    /// First zero of `J_nu`.
    X0,
    /// First zero of `J_{nu+1}`.
    Y0,
    /// First zero of `J_{nu-1}`.
    Z0,
}

/// First positive zeros of `J_nu`, `J_{nu+1}` and `J_{nu-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZeroTriple {
    pub x0: f64,
    pub y0: f64,
    pub z0: f64,
}

impl ZeroTriple {
    pub fn exact(nu: f64) -> Result<Self> {
        Ok(ZeroTriple {
            x0: first_zero(nu)?,
            y0: first_zero(nu + 1.0)?,
            z0: first_zero(nu - 1.0)?,
        })
    }

    pub fn asymptotic(nu: f64) -> Self {
        ZeroTriple {
            x0: zero_asymptotic(nu, ZeroKind::X0),
            y0: zero_asymptotic(nu, ZeroKind::Y0),
            z0: zero_asymptotic(nu, ZeroKind::Z0),
        }
    }
}

fn olver(nu: f64) -> f64 {
    let c = nu.cbrt();
    nu + OLVER_A1 * c + OLVER_A2 / c + OLVER_A3 / nu
}

/// Smallest `x > 0` with `J_nu(x) = 0`, to an absolute accuracy of about 1e-12.
pub fn first_zero(nu: f64) -> Result<f64> {
    if !nu.is_finite() || nu < 0.0 {
        return Err(Error::domain("first_zero", format!("order must be >= 0, got {nu}")));
    }
    let f = |x: f64| bessel_j(nu, x);
    // J_nu is positive on (0, nu]; for large orders Olver's estimate is within 1e-3.
    let mut lo = if nu >= 10.0 { nu.max(olver(nu) - 0.5) } else { nu.max(1e-3) };
    let limit = nu + 3.0 * nu.cbrt() + 4.0;
    let mut f_lo = f(lo)?;
    let mut hi = lo;
    loop {
        hi += SCAN_STEP;
        let f_hi = f(hi)?;
        if f_hi == 0.0 {
            return Ok(hi);
        }
        if f_hi.signum() != f_lo.signum() {
            break;
        }
        if hi > limit {
            return Err(Error::Bracket {
                function: "first_zero",
                lo: nu,
                hi: limit,
            });
        }
        lo = hi;
        f_lo = f_hi;
    }
    for _ in 0..200 {
        if hi - lo <= 1e-12 {
            return Ok(0.5 * (lo + hi));
        }
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::Bracket {
        function: "first_zero",
        lo,
        hi,
    })
}

/// Large-order expansion of the first zeros.
///
/// `y0` and `z0` are `x0 +/- (1 + a1 / (3 nu^{2/3}) - a2 / (3 nu^{4/3}))`, i.e. the
/// expansion of `x0(nu +/- 1)` carried to the same order as `x0(nu)`.
pub fn zero_asymptotic(nu: f64, which: ZeroKind) -> f64 {
    let x0 = olver(nu);
    let c = nu.cbrt();
    let shift = 1.0 + OLVER_A1 / (3.0 * c * c) - OLVER_A2 / (3.0 * nu * c);
    match which {
        ZeroKind::X0 => x0,
        ZeroKind::Y0 => x0 + shift,
        ZeroKind::Z0 => x0 - shift,
    }
}
