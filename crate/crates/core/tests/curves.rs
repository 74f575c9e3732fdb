use num_complex::Complex64;
use proptest::prelude::*;
use schwarz_core::curves::{ComplexPoint, Curve, FamilyShape, MovingFamily, RateLaw};
use schwarz_core::Error;
use std::f64::consts::PI;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Mirror image across αx + βy + δ = 0 by elementary geometry.
fn mirror(alpha: f64, beta: f64, delta: f64, z: Complex64) -> Complex64 {
    let t = (alpha * z.re + beta * z.im + delta) / (alpha * alpha + beta * beta);
    z - 2.0 * t * c(alpha, beta)
}

#[test]
fn ellipse_value_at_focus() {
    let curve = Curve::ellipse(2.0, 1.0).unwrap();
    let d = 3f64.sqrt();
    let s = curve.schwarz(c(d, 0.0)).unwrap();
    assert!((s - c(5.0 * d / 3.0, 0.0)).norm() < 1e-12);
    assert!(matches!(curve.schwarz_derivative(c(d, 0.0)), Err(Error::SingularPoint(_))));
}

#[test]
fn circle_reflection_is_inversion() {
    let curve = Curve::circle(2.0).unwrap();
    let r = curve.reflect(ComplexPoint::real(1.0, 1.0)).unwrap();
    assert!((r.z - c(2.0, 2.0)).norm() < 1e-14);
    assert!(matches!(curve.reflect(ComplexPoint::real(0.0, 0.0)), Err(Error::OutOfDomain(_))));
}

#[test]
fn cut_points_are_rejected() {
    let curve = Curve::ellipse(2.0, 1.0).unwrap();
    assert!(matches!(curve.schwarz(c(0.5, 0.0)), Err(Error::BranchCutHit(_))));
    assert!(matches!(curve.reflect(ComplexPoint::real(0.5, 0.0)), Err(Error::BranchCutHit(_))));
    assert!(curve.schwarz(c(0.5, 1e-6)).is_ok());
}

#[test]
fn invalid_descriptors() {
    assert!(matches!(Curve::circle(0.0), Err(Error::InvalidCurve(_))));
    assert!(matches!(Curve::ellipse(1.0, 1.0), Err(Error::InvalidCurve(_))));
    assert!(matches!(Curve::ellipse(1.0, 2.0), Err(Error::InvalidCurve(_))));
    assert!(matches!(Curve::line(0.0, 0.0, 1.0), Err(Error::InvalidCurve(_))));
}

#[test]
fn level_set_speed_of_constant_area_ellipse() {
    let fam = MovingFamily::new(FamilyShape::Ellipse { a: 2.0, b: 1.0 }, RateLaw::ConstantArea { a_dot: 0.1 }).unwrap();
    // at z = a the boundary moves with ȧ
    let v = fam.normal_velocity_raw(c(2.0, 0.0), 0.0).unwrap();
    assert!((v - c(0.1, 0.0)).norm() < 1e-10);
    // at z = ib it moves with ḃ = −ab ȧ / a²
    let v = fam.normal_velocity_raw(c(0.0, 1.0), 0.0).unwrap();
    assert!((v - c(-0.05, 0.0)).norm() < 1e-10);
}

proptest! {
    #[test]
    fn ellipse_on_curve_identity(a in 1.05f64..5.0, ratio in 0.1f64..0.95, theta in 0.0f64..(2.0 * PI)) {
        let b = a * ratio;
        let curve = Curve::ellipse(a, b).unwrap();
        let z = c(a * theta.cos(), b * theta.sin());
        prop_assert!((curve.schwarz(z).unwrap() - z.conj()).norm() < 1e-12 * a);
    }

    #[test]
    fn line_reflection_matches_geometry(alpha in -2.0f64..2.0, beta in -2.0f64..2.0, delta in -2.0f64..2.0,
                                        x in -5.0f64..5.0, y in -5.0f64..5.0) {
        prop_assume!(alpha.hypot(beta) > 0.1);
        let curve = Curve::line(alpha, beta, delta).unwrap();
        let r = curve.reflect(ComplexPoint::real(x, y)).unwrap();
        prop_assert!((r.z - mirror(alpha, beta, delta, c(x, y))).norm() < 1e-10);
    }

    #[test]
    fn ellipse_round_trip_and_involution(a in 1.2f64..4.0, ratio in 0.2f64..0.9,
                                         frac in 0.05f64..1.95, eta in 0.0f64..(2.0 * PI)) {
        let b = a * ratio;
        let curve = Curve::ellipse(a, b).unwrap();
        let d = (a * a - b * b).sqrt();
        let xi0 = (b / a).atanh();
        let z = d * c(frac * xi0, eta).cosh();
        prop_assume!(z.im.abs() > 1e-6 || z.re.abs() > d);
        let back = curve.schwarz_inverse(curve.schwarz(z).unwrap()).unwrap();
        prop_assert!((back - z).norm() < 1e-9 * a);
        let p = ComplexPoint::from_z(z);
        let twice = curve.reflect(curve.reflect(p).unwrap()).unwrap();
        prop_assert!((twice.z - z).norm() < 1e-9 * a);
    }

    #[test]
    fn derivative_matches_difference_quotient(x in -4.0f64..4.0, y in 0.2f64..4.0) {
        let curve = Curve::ellipse(2.0, 1.0).unwrap();
        let z = c(x, y);
        let h = 1e-5;
        let fd = (curve.schwarz(z + h).unwrap() - curve.schwarz(z - h).unwrap()) / (2.0 * h);
        let exact = curve.schwarz_derivative(z).unwrap();
        prop_assert!((fd - exact).norm() <= 1e-6 * exact.norm().max(1.0));
    }

    #[test]
    fn sqrt_derivative_squares_to_derivative(r in 1.2f64..3.0, eta in 0.0f64..(2.0 * PI)) {
        let curve = Curve::ellipse(2.0, 1.0).unwrap();
        let z = Complex64::from_polar(r, eta);
        prop_assume!(curve.in_domain(z));
        let root = curve.sqrt_schwarz_derivative(z).unwrap();
        let sp = curve.schwarz_derivative(z).unwrap();
        prop_assert!((root * root - sp).norm() < 1e-10 * (1.0 + sp.norm()));
    }

    #[test]
    fn family_time_derivative_matches_difference(x in -4.0f64..4.0, y in 0.3f64..4.0, a_dot in -0.3f64..0.3) {
        let families = [
            MovingFamily::circle(1.0, a_dot).unwrap(),
            MovingFamily::new(FamilyShape::Ellipse { a: 2.0, b: 1.0 }, RateLaw::ConstantEccentricity { a_dot }).unwrap(),
            MovingFamily::new(FamilyShape::Ellipse { a: 2.0, b: 1.0 }, RateLaw::ConstantArea { a_dot }).unwrap(),
            MovingFamily::new(FamilyShape::ConfocalEllipse { d0: 1.5, a: 2.0 }, RateLaw::Prescribed { a_dot, b_dot: None }).unwrap(),
        ];
        let z = c(x, y);
        for fam in families {
            let exact = fam.schwarz_time_derivative(z, 0.0).unwrap();
            let fd = fam.schwarz_time_derivative_fd(z, 0.0).unwrap();
            prop_assert!((exact - fd).norm() < 1e-6 * (1.0 + exact.norm()));
        }
    }
}
