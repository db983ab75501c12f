mod common;

use proptest::prelude::*;
use spherebound::quad::{integrate, Tolerance};
use spherebound::specialfn::{bessel_j, first_zero, normalized_j, zero_asymptotic, ZeroKind};

#[test]
fn derivative_identity_at_random_points() {
    common::derivative_identity().unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]
    #[test]
    fn derivative_identity_proptest(nu in 0.5f64..60.0, x in 0.5f64..120.0) {
        let g = |t: f64| bessel_j(nu, t).unwrap() / t.powf(nu);
        let h = 1e-3;
        let fd = (8.0 * (g(x + h) - g(x - h)) - (g(x + 2.0 * h) - g(x - 2.0 * h))) / (12.0 * h);
        let an = -bessel_j(nu + 1.0, x).unwrap() / x.powf(nu);
        let scale = an.abs() + g(x).abs() / x;
        prop_assert!((fd - an).abs() <= 1e-6 * scale, "nu={} x={}: {:e} vs {:e}", nu, x, fd, an);
    }
}

#[test]
fn first_zero_against_expansion() {
    common::zeros_match_expansion().unwrap();
}

#[test]
fn half_integer_orders() {
    common::half_integer_closed_forms().unwrap();
}

#[test]
fn ball_volume_and_surface() {
    common::volume_surface_relation().unwrap();
}

/// Bessel's integral for integer order: J_n(x) = (1/pi) int_0^pi cos(n t - x sin t) dt.
#[test]
fn integer_order_integral_oracle() {
    for n in [0u32, 1, 2, 5, 10, 25, 60] {
        for x in [0.3, 1.0, 7.5, 30.0, 64.0, 100.0] {
            let f = |t: f64| (n as f64 * t - x * t.sin()).cos();
            let want = integrate(f, 0.0, std::f64::consts::PI, Tolerance::new(1e-14, 1e-13)).unwrap()
                / std::f64::consts::PI;
            let got = bessel_j(n as f64, x).unwrap();
            assert!((got - want).abs() <= 1e-12 + 1e-10 * want.abs(), "J_{n}({x}) = {got:e} vs {want:e}");
        }
    }
}

#[test]
fn zeros_are_roots() {
    for nu in [0.0, 0.5, 3.0, 49.0, 100.0, 250.5] {
        let x = first_zero(nu).unwrap();
        assert!(bessel_j(nu, x).unwrap().abs() < 1e-10, "nu={nu}");
        // no sign change before the first zero
        let v = bessel_j(nu, 0.98 * x).unwrap();
        assert!(v > 0.0, "nu={nu}");
    }
}

#[test]
fn neighbouring_zero_expansions_interlace() {
    for nu in [60.0, 100.0, 400.0] {
        let z = zero_asymptotic(nu, ZeroKind::Z0);
        let x = zero_asymptotic(nu, ZeroKind::X0);
        let y = zero_asymptotic(nu, ZeroKind::Y0);
        assert!(z < x && x < y);
    }
}

#[test]
fn normalized_bessel_at_origin() {
    for nu in [0.5, 1.0, 2.5, 50.0] {
        assert!((normalized_j(nu, 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((normalized_j(nu, 1e-4).unwrap() - 1.0).abs() < 1e-7);
    }
}
