use num_complex::Complex64;
use proptest::prelude::*;
use schwarz_core::cauchy_rep::{
    solve_cauchy_general, solve_cauchy_helmholtz, solve_cauchy_laplace, CauchyData, ClosureKernel,
    ConstantCoefficientKernel, HelmholtzKernel, RiemannKernel,
};
use schwarz_core::curves::{ComplexPoint, Curve};
use schwarz_core::reflection::AnalyticDatum;
use schwarz_core::Error;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn circle_data(a: f64, u: fn(Complex64, Complex64) -> Complex64, uz: fn(Complex64, Complex64) -> Complex64, uw: fn(Complex64, Complex64) -> Complex64) -> CauchyData {
    CauchyData::new(
        AnalyticDatum::dirichlet(u),
        AnalyticDatum::neumann(move |z, w| (z * uz(z, w) + w * uw(z, w)) / a),
    )
}

#[test]
fn im_z_cubed_on_unit_circle() {
    // u = Im z³ = (z³ − w³)/(2i)
    let data = circle_data(
        1.0,
        |z, w| (z.powi(3) - w.powi(3)) / c(0.0, 2.0),
        |z, _| 3.0 * z * z / c(0.0, 2.0),
        |_, w| -3.0 * w * w / c(0.0, 2.0),
    );
    let curve = Curve::circle(1.0).unwrap();
    for z in [c(0.3, 0.4), c(-1.5, 0.2), c(2.0, -2.0), c(0.0, -0.5)] {
        let u = solve_cauchy_laplace(&curve, &data, ComplexPoint::from_z(z)).unwrap();
        assert!((u.re - z.powi(3).im).abs() < 1e-10 && u.im.abs() < 1e-10, "{z}");
    }
}

#[test]
fn cosine_on_x_axis() {
    // u = cos(λx) has ψ = ∂y u = 0 on y = 0
    let lambda = 2.0;
    let data = CauchyData::new(
        AnalyticDatum::dirichlet(move |z, w| (lambda * (z + w) / 2.0).cos()),
        AnalyticDatum::neumann(|_, _| c(0.0, 0.0)),
    );
    for (x, y) in [(0.3, 0.5), (-1.0, 2.0), (2.0, -1.5)] {
        let u = solve_cauchy_helmholtz(&Curve::line(0.0, 1.0, 0.0).unwrap(), &data, lambda, ComplexPoint::real(x, y)).unwrap();
        assert!((u.re - (lambda * x).cos()).abs() < 1e-10);
    }
}

#[test]
fn cosine_in_y_on_x_axis() {
    // u = cos(λy): φ = 1 and ψ = 0, so only the kernel terms contribute
    let lambda = 1.3;
    let data = CauchyData::new(
        AnalyticDatum::dirichlet(|_, _| c(1.0, 0.0)),
        AnalyticDatum::neumann(|_, _| c(0.0, 0.0)),
    );
    for y in [0.2, 1.0, 3.0] {
        let u = solve_cauchy_helmholtz(&Curve::x_axis(), &data, lambda, ComplexPoint::real(0.7, y)).unwrap();
        assert!((u.re - (lambda * y).cos()).abs() < 1e-10, "{y}: {u}");
    }
}

#[test]
fn constant_kernel_solves_adjoint_equation() {
    let k = ConstantCoefficientKernel::from_real(0.6, -0.2, 0.9);
    let (z0, w0) = (c(0.1, 0.2), c(-0.3, 0.4));
    let h = 1e-3;
    let r = |z: Complex64, w: Complex64| k.value(z0, w0, z, w).unwrap();
    for (z, w) in [(c(1.0, 0.5), c(0.2, -0.7)), (c(-0.8, 0.1), c(1.5, 0.3))] {
        let rz = (r(z + h, w) - r(z - h, w)) / (2.0 * h);
        let rw = (r(z, w + h) - r(z, w - h)) / (2.0 * h);
        let rzw = (r(z + h, w + h) - r(z + h, w - h) - r(z - h, w + h) + r(z - h, w - h)) / (4.0 * h * h);
        let adjoint = rzw - k.a * rz - k.b * rw + k.c * r(z, w);
        assert!(adjoint.norm() < 1e-5, "{adjoint}");
    }
}

#[test]
fn helmholtz_kernel_through_general_solver() {
    let curve = Curve::circle(1.0).unwrap();
    let data = CauchyData::new(
        AnalyticDatum::dirichlet(|z, w| z * w + z),
        AnalyticDatum::neumann(|z, w| 0.5 * (z - w)),
    );
    let p = ComplexPoint::real(1.7, -0.4);
    let general = solve_cauchy_general(&curve, &data, &HelmholtzKernel::new(0.9), p).unwrap();
    let direct = solve_cauchy_helmholtz(&curve, &data, 0.9, p).unwrap();
    assert!((general - direct).norm() < 1e-12);
}

#[test]
fn closure_kernel_with_difference_partials() {
    // Δ + 4C with C = 0.2: κ = C, no first-order terms
    let kappa = 0.2;
    let kernel = ClosureKernel::new(
        move |z0, w0, z, w| schwarz_core::numerics::j0_product(4.0 * kappa, (z - z0) * (w - w0)),
        |_, _| c(0.0, 0.0),
        |_, _| c(0.0, 0.0),
    );
    let curve = Curve::ellipse(2.0, 1.0).unwrap();
    let data = CauchyData::new(
        AnalyticDatum::dirichlet(|z, w| (z + w) * 0.5),
        AnalyticDatum::neumann(|_, _| c(0.3, 0.0)),
    );
    let p = ComplexPoint::real(2.4, 0.6);
    let fd = solve_cauchy_general(&curve, &data, &kernel, p).unwrap();
    let exact = solve_cauchy_helmholtz(&curve, &data, (4.0 * kappa).sqrt(), p).unwrap();
    assert!((fd - exact).norm() < 1e-8);
}

#[test]
fn out_of_strip_points_are_rejected() {
    let curve = Curve::ellipse(2.0, 1.0).unwrap();
    let data = CauchyData::new(
        AnalyticDatum::dirichlet(|_, _| c(1.0, 0.0)),
        AnalyticDatum::neumann(|_, _| c(1.0, 0.0)),
    );
    assert!(matches!(
        solve_cauchy_laplace(&curve, &data, ComplexPoint::real(9.0, 0.0)),
        Err(Error::OutOfDomain(_))
    ));
}

proptest! {
    #[test]
    fn general_kernel_manufactured(ar in -0.5f64..0.5, br in -0.5f64..0.5, cr in -1.0f64..1.0,
                                    al_re in -0.5f64..0.5, al_im in -0.5f64..0.5,
                                    r in 1.2f64..2.5, t in 0.0..std::f64::consts::TAU) {
        let kernel = ConstantCoefficientKernel::from_real(ar, br, cr);
        let alpha = c(al_re, al_im);
        prop_assume!((alpha + kernel.b).norm() > 0.1);
        let beta = -(kernel.a * alpha + kernel.c) / (alpha + kernel.b);
        let curve = Curve::circle(1.0).unwrap();
        let data = CauchyData::new(
            AnalyticDatum::dirichlet(move |z, w| (alpha * z + beta * w).exp()),
            AnalyticDatum::neumann(move |z, w| (alpha * z + beta * w) .exp() * (alpha * z + beta * w)),
        );
        let z = Complex64::from_polar(r, t);
        let u = solve_cauchy_general(&curve, &data, &kernel, ComplexPoint::from_z(z)).unwrap();
        prop_assert!((u - (alpha * z + beta * z.conj()).exp()).norm() < 1e-8);
    }

    #[test]
    fn laplace_reproduces_quartic(k_re in -1.0f64..1.0, k_im in -1.0f64..1.0, r in 0.3f64..2.5, t in 0.0..std::f64::consts::TAU) {
        prop_assume!((r - 1.0).abs() > 0.05);
        let k = c(k_re, k_im);
        let curve = Curve::circle(1.0).unwrap();
        let data = CauchyData::new(
            AnalyticDatum::dirichlet(move |z, w| 0.5 * (k * z.powi(4) + k.conj() * w.powi(4))),
            AnalyticDatum::neumann(move |z, w| 2.0 * (k * z.powi(4) + k.conj() * w.powi(4))),
        );
        let z = Complex64::from_polar(r, t);
        let u = solve_cauchy_laplace(&curve, &data, ComplexPoint::from_z(z)).unwrap();
        prop_assert!((u.re - (k * z.powi(4)).re).abs() < 1e-8 * (1.0 + r.powi(4)));
    }
}
