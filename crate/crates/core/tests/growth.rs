use num_complex::Complex64;
use schwarz_core::cauchy_rep::ConstantCoefficientKernel;
use schwarz_core::curves::{ComplexPoint, MovingFamily};
use schwarz_core::elliptic_growth::{growth_pressure, GrowthKernel, GrowthScenario};
use schwarz_core::heleshaw::{pressure_sink_source, HeleShawParams};
use std::sync::Arc;

/// `Σ (−λ² p / 4)^k / (k!)²`, written out independently.
fn j0_oracle(lambda: f64, p: Complex64) -> Complex64 {
    let x = -lambda * lambda * p / 4.0;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for k in 1..80 {
        term = term * x / ((k * k) as f64);
        sum += term;
    }
    sum
}

/// Composite Simpson along a polyline.
fn simpson(f: impl Fn(Complex64) -> Complex64, pts: &[Complex64]) -> Complex64 {
    let n = 20_000;
    let mut total = Complex64::new(0.0, 0.0);
    for seg in pts.windows(2) {
        let h = (seg[1] - seg[0]) / n as f64;
        let mut s = f(seg[0]) + f(seg[1]);
        for k in 1..n {
            s += f(seg[0] + h * k as f64) * if k % 2 == 1 { 4.0 } else { 2.0 };
        }
        total += s * h / 3.0;
    }
    total
}

#[test]
fn circle_value_matches_direct_quadrature() {
    let (a, a_dot, k, lambda) = (1.0, 1.0, 1.0, 0.5);
    let sc = GrowthScenario::helmholtz(MovingFamily::circle(a, a_dot).unwrap(), k, lambda).unwrap();
    let z0 = Complex64::new(2.0, 0.0);
    let value = growth_pressure(&sc, 0.0, ComplexPoint::from_z(z0)).unwrap();
    let f = |z: Complex64| 2.0 * a * a_dot / z * j0_oracle(lambda, (z - z0) * (a * a / z - z0));
    let direct = -simpson(f, &[Complex64::new(0.5, 0.0), Complex64::new(1.0, 1.5), z0]) / (4.0 * k);
    assert!((value - direct.re).abs() < 1e-9, "{value} vs {direct}");
    assert!(direct.im.abs() < 1e-9);
}

#[test]
fn zero_lambda_is_laplace() {
    let fam = MovingFamily::circle(1.0, 0.8).unwrap();
    let sc = GrowthScenario::helmholtz(fam, 2.0, 0.0).unwrap();
    let params = HeleShawParams::new(2.0).unwrap();
    for z in [Complex64::new(1.5, 0.5), Complex64::new(-3.0, 0.1)] {
        let p = ComplexPoint::from_z(z);
        let g = growth_pressure(&sc, 0.0, p).unwrap();
        assert!((g - pressure_sink_source(&fam, 0.0, &params, p).unwrap()).abs() < 1e-12);
    }
}

#[test]
fn screening_reduces_pressure_magnitude_near_boundary() {
    // Δp = −λ²p pulls p towards the boundary value faster than a harmonic field
    let fam = MovingFamily::circle(1.0, 1.0).unwrap();
    let p = ComplexPoint::real(1.5, 0.0);
    let harmonic = growth_pressure(&GrowthScenario::helmholtz(fam, 1.0, 0.0).unwrap(), 0.0, p).unwrap();
    let screened = growth_pressure(&GrowthScenario::helmholtz(fam, 1.0, 1.0).unwrap(), 0.0, p).unwrap();
    assert!(harmonic < 0.0 && screened < 0.0);
    assert!(screened.abs() != harmonic.abs());
}

#[test]
fn constant_coefficient_kernel_with_zero_drift_matches_helmholtz() {
    let fam = MovingFamily::circle(1.0, 1.0).unwrap();
    let general = GrowthScenario {
        family: fam,
        k: 1.0,
        kernel: GrowthKernel::General(Arc::new(ConstantCoefficientKernel::from_real(0.0, 0.0, 0.49))),
    };
    let helm = GrowthScenario::helmholtz(fam, 1.0, 0.7).unwrap();
    let p = ComplexPoint::real(0.3, 2.2);
    let a = growth_pressure(&general, 0.0, p).unwrap();
    let b = growth_pressure(&helm, 0.0, p).unwrap();
    assert!((a - b).abs() < 1e-12);
}

#[test]
fn static_family_gives_zero() {
    let fam = MovingFamily::circle(2.0, 0.0).unwrap();
    let sc = GrowthScenario::helmholtz(fam, 1.0, 3.0).unwrap();
    assert_eq!(growth_pressure(&sc, 0.0, ComplexPoint::real(3.0, 1.0)).unwrap(), 0.0);
}
