use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::{boundary_check, kinematic_check, pde_residual, PdeOperator, SampleRecord, VerificationReport};
use crate::cauchy_rep::{
    solve_cauchy_general, solve_cauchy_helmholtz, solve_cauchy_laplace, CauchyData,
    ConstantCoefficientKernel, HelmholtzKernel,
};
use crate::curves::{ComplexPoint, Curve, CurveKind, FamilyShape, MovingFamily, RateLaw};
use crate::elliptic_growth::{growth_pressure, GrowthKernel, GrowthScenario};
use crate::error::{Error, Result};
use crate::heleshaw::{
    circle_surface_tension, flux_balance, gap_homogeneous_pressure, gap_integrand, normal_velocity,
    pressure_gap, pressure_sink_source, HeleShawParams,
};
use crate::numerics::{
    integrate_path, j0_product, j0_product_derivatives, BranchTracker, IntegrationPath,
    DEFAULT_TOLERANCE,
};
use crate::reflection::{dirichlet_pair_sum, neumann_jump, AnalyticDatum, DatumKind};

/// A named group of checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Reflections,
    Cauchy,
    HeleShaw,
    Growth,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "all" => Ok(Suite::All),
            "reflections" => Ok(Suite::Reflections),
            "cauchy" => Ok(Suite::Cauchy),
            "heleshaw" => Ok(Suite::HeleShaw),
            "growth" => Ok(Suite::Growth),
            other => Err(Error::ScenarioMismatch(format!("unknown suite {other:?}"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::All => "all",
            Suite::Reflections => "reflections",
            Suite::Cauchy => "cauchy",
            Suite::HeleShaw => "heleshaw",
            Suite::Growth => "growth",
        })
    }
}

/// Runs every check of `suite`. Failures to evaluate are reported as failed checks.
pub fn run_suite(suite: Suite) -> Vec<VerificationReport> {
    let groups: &[fn() -> Vec<VerificationReport>] = match suite {
        Suite::All => &[reflections, cauchy, heleshaw, growth],
        Suite::Reflections => &[reflections],
        Suite::Cauchy => &[cauchy],
        Suite::HeleShaw => &[heleshaw],
        Suite::Growth => &[growth],
    };
    groups.iter().flat_map(|g| g()).collect()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

struct Samples(Vec<SampleRecord>);

impl Samples {
    fn push(&mut self, label: impl Into<String>, value: Complex64, reference: Complex64) {
        self.0.push(SampleRecord {
            label: label.into(),
            value: value.re,
            reference: reference.re,
            error: (value - reference).norm(),
        });
    }

    fn push_real(&mut self, label: impl Into<String>, value: f64, reference: f64) {
        self.push(label, c(value, 0.0), c(reference, 0.0));
    }
}

fn check<F>(name: &str, tolerance: f64, body: F) -> VerificationReport
where
    F: FnOnce(&mut Samples) -> Result<()>,
{
    let mut samples = Samples(Vec::new());
    match body(&mut samples) {
        Ok(()) => VerificationReport::from_samples(name, tolerance, samples.0),
        Err(e) => VerificationReport::errored(name, tolerance, &e),
    }
}

fn nested(report: Result<VerificationReport>, name: &str, tolerance: f64) -> VerificationReport {
    report.unwrap_or_else(|e| VerificationReport::errored(name, tolerance, &e))
}

/// Low-discrepancy values in `[0, 1)`.
fn sequence(n: usize, step: f64, offset: f64) -> Vec<f64> {
    (0..n).map(|k| (offset + step * (k as f64 + 1.0)).fract()).collect()
}

/// `n` points with radius in `[r_lo, r_hi]`.
fn annulus(n: usize, r_lo: f64, r_hi: f64) -> Vec<Complex64> {
    let u = sequence(n, 0.618_033_988_749_895, 0.1);
    let v = sequence(n, 0.414_213_562_373_095, 0.3);
    u.iter()
        .zip(&v)
        .map(|(&s, &t)| Complex64::from_polar(r_lo + (r_hi - r_lo) * s, 2.0 * PI * t))
        .collect()
}

/// `n` points with elliptic radius between the given multiples of `ξ0`.
fn confocal_band(curve: &Curve, n: usize, lo: f64, hi: f64) -> Vec<Complex64> {
    let CurveKind::Ellipse { a, b } = curve.kind() else {
        return Vec::new();
    };
    let d = (a * a - b * b).sqrt();
    let xi0 = (b / a).atanh();
    let u = sequence(n, 0.618_033_988_749_895, 0.2);
    let v = sequence(n, 0.414_213_562_373_095, 0.7);
    u.iter()
        .zip(&v)
        .map(|(&s, &t)| d * c(xi0 * (lo + (hi - lo) * s), 2.0 * PI * t).cosh())
        .collect()
}

/// Points on both sides of a closed curve, away from it and its singular set.
fn off_curve(curve: &Curve, n: usize) -> Vec<Complex64> {
    match curve.kind() {
        CurveKind::Ellipse { .. } => {
            let mut pts = confocal_band(curve, n / 2, 0.3, 0.85);
            pts.extend(confocal_band(curve, n - n / 2, 1.15, 1.8));
            pts
        }
        CurveKind::Circle { a } => {
            let mut pts = annulus(n / 2, 0.3 * a, 0.85 * a);
            pts.extend(annulus(n - n / 2, 1.15 * a, 2.5 * a));
            pts
        }
        CurveKind::Line { .. } => annulus(n, 0.2, 3.0)
            .into_iter()
            .map(|z| z + curve.point_at(0.0))
            .collect(),
    }
}

/// Points for finite-difference residuals: both sides of the curve, clear of
/// the origin and of the inter-focal segment by a margin of `0.3·scale`.
fn residual_points(curve: &Curve, n: usize) -> Vec<(f64, f64)> {
    let scale = curve.scale();
    let candidates = match curve.kind() {
        CurveKind::Circle { a } => {
            let mut pts = annulus(n / 2, 0.6 * a, 0.85 * a);
            pts.extend(annulus(n - n / 2, 1.15 * a, 2.5 * a));
            pts
        }
        CurveKind::Ellipse { .. } => {
            let mut pts = confocal_band(curve, n, 0.4, 0.85);
            pts.extend(confocal_band(curve, 2 * n, 1.15, 2.0));
            pts
        }
        CurveKind::Line { .. } => off_curve(curve, n),
    };
    let cut = curve.branch_cut().map(|(a, b)| b.re.max(a.re)).unwrap_or(0.0);
    candidates
        .into_iter()
        .filter(|z| {
            let nearest = Complex64::new(z.re.clamp(-cut, cut), 0.0);
            (z - nearest).norm() > 0.3 * scale
        })
        .take(n)
        .map(|z| (z.re, z.im))
        .collect()
}

/// `u = Re(k zⁿ)` continued as `½(k zⁿ + conj(k) wⁿ)`.
#[derive(Clone, Copy)]
struct Monomial {
    k: Complex64,
    n: i32,
}

impl Monomial {
    fn at(&self, z: Complex64, w: Complex64) -> Complex64 {
        0.5 * (self.k * z.powi(self.n) + self.k.conj() * w.powi(self.n))
    }

    fn real(&self, z: Complex64) -> f64 {
        (self.k * z.powi(self.n)).re
    }

    fn dz(&self, z: Complex64) -> Complex64 {
        0.5 * self.k * self.n as f64 * z.powi(self.n - 1)
    }

    fn dw(&self, w: Complex64) -> Complex64 {
        0.5 * self.k.conj() * self.n as f64 * w.powi(self.n - 1)
    }

    fn phi(self) -> AnalyticDatum {
        AnalyticDatum::dirichlet(move |z, w| self.at(z, w))
    }

    /// `ψ = −(i/√S')(u_z − u_w S')` on `Γ_C`.
    fn psi(self, curve: Curve) -> AnalyticDatum {
        AnalyticDatum::neumann(move |z, w| {
            let (Ok(root), Ok(sp)) = (curve.sqrt_schwarz_derivative(z), curve.schwarz_derivative(z)) else {
                return c(f64::NAN, f64::NAN);
            };
            -Complex64::i() / root * (self.dz(z) - self.dw(w) * sp)
        })
    }
}

const MONOMIALS: [Monomial; 4] = [
    Monomial { k: Complex64::new(1.0, 0.0), n: 1 },
    Monomial { k: Complex64::new(0.7, -0.4), n: 2 },
    Monomial { k: Complex64::new(0.0, -1.0), n: 3 },
    Monomial { k: Complex64::new(-0.3, 0.5), n: 4 },
];

fn closed_curves() -> Vec<Curve> {
    vec![Curve::circle(1.3).expect("valid circle"), Curve::ellipse(2.0, 1.0).expect("valid ellipse")]
}

fn all_curves() -> Vec<Curve> {
    let mut curves = vec![Curve::line(1.0, 2.0, -0.5).expect("valid line")];
    curves.extend(closed_curves());
    curves
}

fn curve_label(curve: &Curve) -> String {
    match curve.kind() {
        CurveKind::Line { .. } => "line".into(),
        CurveKind::Circle { a } => format!("circle a={a}"),
        CurveKind::Ellipse { a, b } => format!("ellipse a={a} b={b}"),
    }
}

fn reflections() -> Vec<VerificationReport> {
    vec![
        check("reflections.line_neumann_example", 1e-10, |s| {
            let axis = Curve::x_axis();
            for alpha in [0.0, 0.7, -1.3] {
                let psi = AnalyticDatum::neumann(move |z, w| alpha - 2.0 * (z - w) / c(0.0, 2.0));
                for y0 in [0.1, 1.0, 5.0] {
                    let jump = neumann_jump(&axis, &psi, ComplexPoint::real(0.4, y0), &axis.branch_seed())?;
                    s.push(format!("alpha={alpha} y0={y0}"), jump, c(2.0 * alpha * y0, 0.0));
                }
            }
            Ok(())
        }),
        check("reflections.circle_neumann_example", 1e-9, |s| {
            for (a, beta) in [(1.0, 0.5), (2.0, -1.0)] {
                let curve = Curve::circle(a)?;
                let psi = AnalyticDatum::constant(DatumKind::Neumann, beta);
                let mut pts = annulus(4, 0.2 * a, 0.8 * a);
                pts.extend(annulus(4, 1.2 * a, 4.0 * a));
                for z in pts {
                    let jump = neumann_jump(&curve, &psi, ComplexPoint::from_z(z), &curve.branch_seed())?;
                    let expected = a * beta * (z.norm_sqr() / (a * a)).ln();
                    s.push(format!("a={a} z={z:.4}"), jump, c(expected, 0.0));
                }
            }
            Ok(())
        }),
        check("reflections.dirichlet_identity", 1e-9, |s| {
            for curve in closed_curves() {
                for (i, z) in off_curve(&curve, 16).into_iter().enumerate() {
                    let u = MONOMIALS[i % 4];
                    let p = ComplexPoint::from_z(z);
                    let r = curve.reflect(p)?;
                    let sum = dirichlet_pair_sum(&curve, &u.phi(), p)?;
                    s.push(format!("{} z={z:.4}", curve_label(&curve)), sum, c(u.real(z) + u.real(r.z), 0.0));
                }
            }
            Ok(())
        }),
        check("reflections.neumann_identity", 1e-8, |s| {
            for curve in closed_curves() {
                for (i, z) in off_curve(&curve, 16).into_iter().enumerate() {
                    let u = MONOMIALS[i % 4];
                    let p = ComplexPoint::from_z(z);
                    let r = curve.reflect(p)?;
                    let jump = neumann_jump(&curve, &u.psi(curve), p, &curve.branch_seed())?;
                    s.push(format!("{} z={z:.4}", curve_label(&curve)), jump, c(u.real(z) - u.real(r.z), 0.0));
                }
            }
            Ok(())
        }),
        check("reflections.on_curve_degeneracy", 1e-10, |s| {
            for curve in closed_curves() {
                let u = MONOMIALS[2];
                for k in 0..8 {
                    let z = curve.point_at(0.3 + k as f64 * PI / 4.0);
                    let p = ComplexPoint::from_z(z);
                    let sum = dirichlet_pair_sum(&curve, &u.phi(), p)?;
                    s.push(format!("pair sum at {z:.4}"), sum, 2.0 * u.at(z, z.conj()));
                    let jump = neumann_jump(&curve, &u.psi(curve), p, &curve.branch_seed())?;
                    s.push(format!("jump at {z:.4}"), jump, c(0.0, 0.0));
                }
            }
            Ok(())
        }),
        check("reflections.branch_flip", 1e-12, |s| {
            for curve in all_curves() {
                let u = MONOMIALS[1];
                let psi = u.psi(curve);
                let seed = curve.branch_seed();
                for z in off_curve(&curve, 4) {
                    let p = ComplexPoint::from_z(z);
                    let plus = neumann_jump(&curve, &psi, p, &seed)?;
                    let minus = neumann_jump(&curve, &psi, p, &seed.flipped())?;
                    s.push(format!("{} z={z:.4}", curve_label(&curve)), plus, -minus);
                }
            }
            Ok(())
        }),
        check("curves.on_curve_identity", 1e-12, |s| {
            for curve in all_curves() {
                for theta in super::boundary_parameters(&curve, 64) {
                    let z = curve.point_at(theta);
                    s.push(format!("{} at {theta:.4}", curve_label(&curve)), curve.schwarz(z)?, z.conj());
                }
            }
            Ok(())
        }),
        check("curves.round_trip", 1e-10, |s| {
            for curve in all_curves() {
                let pts = match curve.kind() {
                    CurveKind::Ellipse { .. } => {
                        let mut pts = confocal_band(&curve, 32, 0.1, 0.9);
                        pts.extend(confocal_band(&curve, 32, 1.1, 1.9));
                        pts
                    }
                    _ => off_curve(&curve, 64),
                };
                for z in pts {
                    let back = curve.schwarz_inverse(curve.schwarz(z)?)?;
                    s.push(format!("{} z={z:.4}", curve_label(&curve)), back, z);
                }
            }
            Ok(())
        }),
        check("curves.involution", 1e-10, |s| {
            for curve in all_curves() {
                for z in off_curve(&curve, 32) {
                    let p = ComplexPoint::from_z(z);
                    let twice = curve.reflect(curve.reflect(p)?)?;
                    s.push(format!("{} z={z:.4}", curve_label(&curve)), twice.z, z);
                }
            }
            Ok(())
        }),
        check("curves.derivative_consistency", 1e-6, |s| {
            for curve in all_curves() {
                for z in off_curve(&curve, 16) {
                    let h = 1e-5 * curve.scale();
                    let fd = (curve.schwarz(z + h)? - curve.schwarz(z - h)?) / (2.0 * h);
                    let exact = curve.schwarz_derivative(z)?;
                    s.0.push(SampleRecord {
                        label: format!("{} z={z:.4}", curve_label(&curve)),
                        value: exact.re,
                        reference: fd.re,
                        error: (fd - exact).norm() / exact.norm().max(1e-300),
                    });
                }
            }
            Ok(())
        }),
        check("curves.branch_asymptotics", 1e-12, |s| {
            let curve = Curve::ellipse(2.0, 1.0)?;
            let e = curve.ellipse_geometry().expect("ellipse");
            for k in 0..8 {
                let z = Complex64::from_polar(1e3 * e.d, 0.1 + k as f64 * PI / 4.0);
                let ratio = e.root(z) / z;
                s.push(format!("ray {k}"), ratio, 1.0 - e.d * e.d / (2.0 * z * z));
            }
            Ok(())
        }),
    ]
}

/// Normal derivative of `u(z, w)` along the outward radial direction of a circle.
fn radial_psi(a: f64, uz: impl Fn(Complex64, Complex64) -> Complex64 + Send + Sync + 'static, uw: impl Fn(Complex64, Complex64) -> Complex64 + Send + Sync + 'static) -> AnalyticDatum {
    AnalyticDatum::neumann(move |z, w| (z * uz(z, w) + w * uw(z, w)) / a)
}

fn cauchy() -> Vec<VerificationReport> {
    let mut reports = vec![
        check("cauchy.laplace_manufactured", 1e-8, |s| {
            let us = [
                Monomial { k: c(1.0, 0.0), n: 2 },
                Monomial { k: c(0.0, -1.0), n: 3 },
                Monomial { k: c(1.0, 0.0), n: 4 },
            ];
            for curve in [Curve::circle(1.0)?, Curve::ellipse(2.0, 1.0)?] {
                for u in us {
                    let psi = match curve.kind() {
                        CurveKind::Circle { a } => radial_psi(a, move |z, _| u.dz(z), move |_, w| u.dw(w)),
                        _ => u.psi(curve),
                    };
                    let data = CauchyData::new(u.phi(), psi);
                    for z in off_curve(&curve, 16) {
                        let v = solve_cauchy_laplace(&curve, &data, ComplexPoint::from_z(z))?;
                        s.push(format!("{} n={} z={z:.4}", curve_label(&curve), u.n), v, c(u.real(z), 0.0));
                    }
                }
            }
            Ok(())
        }),
        check("cauchy.helmholtz_manufactured", 1e-7, |s| {
            for lambda in [0.5, 1.0, 2.0] {
                let u = move |z: Complex64, w: Complex64| (lambda * (z + w) / 2.0).cos();
                let du = move |z: Complex64, w: Complex64| -0.5 * lambda * (lambda * (z + w) / 2.0).sin();
                let phi = AnalyticDatum::dirichlet(u);
                let circle = Curve::circle(1.0)?;
                let lines = [(Curve::x_axis(), (0.0, 1.0)), (Curve::line(1.0, 1.0, 0.5)?, (1.0, 1.0))];
                let mut cases = vec![(circle, radial_psi(1.0, du, du))];
                for (line, (alpha, beta)) in lines {
                    let norm = f64::hypot(alpha, beta);
                    let psi = AnalyticDatum::neumann(move |z, w| {
                        // u_x = u_z + u_w and u_y = i(u_z − u_w); here u_z = u_w
                        let (ux, uy) = (2.0 * du(z, w), c(0.0, 0.0));
                        (alpha * ux + beta * uy) / norm
                    });
                    cases.push((line, psi));
                }
                for (curve, psi) in cases {
                    let data = CauchyData::new(phi.clone(), psi);
                    for z in off_curve(&curve, 8) {
                        let v = solve_cauchy_helmholtz(&curve, &data, lambda, ComplexPoint::from_z(z))?;
                        s.push(
                            format!("{} lambda={lambda} z={z:.4}", curve_label(&curve)),
                            v,
                            c((lambda * z.re).cos(), 0.0),
                        );
                    }
                }
            }
            Ok(())
        }),
        check("cauchy.helmholtz_zero_lambda", 1e-12, |s| {
            for curve in closed_curves() {
                let u = MONOMIALS[3];
                let data = CauchyData::new(u.phi(), u.psi(curve));
                for z in off_curve(&curve, 8) {
                    let p = ComplexPoint::from_z(z);
                    let h = solve_cauchy_helmholtz(&curve, &data, 0.0, p)?;
                    let l = solve_cauchy_laplace(&curve, &data, p)?;
                    s.push(format!("{} z={z:.4}", curve_label(&curve)), h, l);
                }
            }
            Ok(())
        }),
        check("cauchy.general_manufactured", 1e-8, |s| {
            let kernel = ConstantCoefficientKernel::from_real(0.4, -0.3, 0.5);
            let alpha = c(0.3, 0.2);
            let beta = -(kernel.a * alpha + kernel.c) / (alpha + kernel.b);
            for curve in closed_curves() {
                let phi = AnalyticDatum::dirichlet(move |z, w| (alpha * z + beta * w).exp());
                let psi = AnalyticDatum::neumann(move |z, w| {
                    let (Ok(root), Ok(sp)) = (curve.sqrt_schwarz_derivative(z), curve.schwarz_derivative(z)) else {
                        return c(f64::NAN, f64::NAN);
                    };
                    let u = (alpha * z + beta * w).exp();
                    -Complex64::i() / root * (alpha * u - beta * u * sp)
                });
                let data = CauchyData::new(phi, psi);
                for z in off_curve(&curve, 8) {
                    let p = ComplexPoint::from_z(z);
                    let v = solve_cauchy_general(&curve, &data, &kernel, p)?;
                    s.push(format!("{} z={z:.4}", curve_label(&curve)), v, (alpha * z + beta * z.conj()).exp());
                }
            }
            Ok(())
        }),
        check("cauchy.general_matches_helmholtz", 1e-10, |s| {
            let curve = Curve::ellipse(2.0, 1.0)?;
            let u = MONOMIALS[1];
            let data = CauchyData::new(u.phi(), u.psi(curve));
            let kernel = HelmholtzKernel::new(1.3);
            for z in off_curve(&curve, 8) {
                let p = ComplexPoint::from_z(z);
                let g = solve_cauchy_general(&curve, &data, &kernel, p)?;
                let h = solve_cauchy_helmholtz(&curve, &data, 1.3, p)?;
                s.push(format!("z={z:.4}"), g, h);
            }
            Ok(())
        }),
        check("cauchy.boundary_recovery", 5e-2, |s| {
            let curve = Curve::ellipse(2.0, 1.0)?;
            let data = arbitrary_data(&curve);
            for k in 0..4 {
                let theta = 0.4 + k as f64 * PI / 2.0;
                let z = curve.point_at(theta);
                let n = curve.normal_at(theta);
                let phi = data.phi.eval(z, z.conj());
                let psi = data.psi.eval(z, z.conj());
                for delta in [1e-2, 1e-3, 1e-4] {
                    let v = solve_cauchy_helmholtz(&curve, &data, 0.8, ComplexPoint::from_z(z + delta * n))?;
                    s.0.push(SampleRecord {
                        label: format!("theta={theta:.3} offset={delta}"),
                        value: v.re,
                        reference: phi.re,
                        error: (v - phi - delta * psi).norm() / delta,
                    });
                }
            }
            Ok(())
        }),
        check("numerics.path_independence", 2.0 * DEFAULT_TOLERANCE, |s| {
            let f = |z: Complex64| Ok(z.exp() * z.cos() + 1.0 / (z - 3.0));
            let cases = [
                (c(-1.0, -1.0), c(1.0, 2.0), vec![c(1.5, -1.5)]),
                (c(0.0, 0.0), c(2.0, 0.0), vec![c(1.0, 1.0), c(2.5, 0.8)]),
                (c(-2.0, 0.5), c(0.5, -0.5), vec![c(-1.0, -2.0)]),
            ];
            for (a, b, via) in cases {
                let direct = integrate_path(f, &IntegrationPath::straight(a, b))?;
                let mut pts = vec![a];
                pts.extend(via);
                pts.push(b);
                let bent = integrate_path(f, &IntegrationPath::polyline(pts))?;
                s.push(format!("{a} to {b}"), bent, direct);
            }
            Ok(())
        }),
        check("numerics.series_ode", 1e-10, |s| {
            for z in annulus(16, 0.1, 12.0) {
                let [g, g1, g2] = j0_product_derivatives(1.0, z)?;
                s.push(format!("p={z:.4}"), z * g2 + g1 + g / 4.0, c(0.0, 0.0));
            }
            Ok(())
        }),
        check("numerics.sqrt_squares", 1e-14, |s| {
            let start = c(2.0, 0.3);
            let mut tracker = BranchTracker::new(start, start.sqrt()).with_max_step(0.5);
            for k in 1..=64 {
                let z = Complex64::from_polar(2.0, 0.15 + k as f64 * 0.1);
                let root = tracker.sqrt_branch(z, z)?;
                s.0.push(SampleRecord {
                    label: format!("z={z:.4}"),
                    value: (root * root).re,
                    reference: z.re,
                    error: (root * root - z).norm() / z.norm(),
                });
            }
            Ok(())
        }),
    ];

    for curve in closed_curves() {
        let data = arbitrary_data(&curve);
        let pts = residual_points(&curve, 16);
        let h = 1e-4 * curve.scale();
        let laplace = |x: f64, y: f64| real_field(solve_cauchy_laplace(&curve, &data, ComplexPoint::real(x, y)));
        let name = format!("cauchy.laplace_residual.{}", curve_kind_name(&curve));
        reports.push(nested(pde_residual(&name, &laplace, PdeOperator::Laplace, &pts, h, 1e-5), &name, 1e-5));
        let helmholtz =
            |x: f64, y: f64| real_field(solve_cauchy_helmholtz(&curve, &data, 1.5, ComplexPoint::real(x, y)));
        let name = format!("cauchy.helmholtz_residual.{}", curve_kind_name(&curve));
        reports.push(nested(
            pde_residual(&name, &helmholtz, PdeOperator::Helmholtz(1.5), &pts, h, 1e-4),
            &name,
            1e-4,
        ));
    }
    reports
}

fn curve_kind_name(curve: &Curve) -> &'static str {
    match curve.kind() {
        CurveKind::Line { .. } => "line",
        CurveKind::Circle { .. } => "circle",
        CurveKind::Ellipse { .. } => "ellipse",
    }
}

/// Real Cauchy data that do not come from a known solution.
fn arbitrary_data(curve: &Curve) -> CauchyData {
    let scale = curve.scale();
    CauchyData::new(
        AnalyticDatum::dirichlet(move |z, w| 0.5 * (z * z + w * w) / (scale * scale) + 1.0),
        AnalyticDatum::neumann(move |z, w| 0.3 * (z + w) / scale - 0.2),
    )
}

fn real_field(v: Result<Complex64>) -> Result<f64> {
    let v = v?;
    if v.im.abs() > 1e-8 * (1.0 + v.re.abs()) {
        return Err(Error::NonRealResult(v));
    }
    Ok(v.re)
}

fn circle_family() -> MovingFamily {
    MovingFamily::circle(1.0, 1.0).expect("valid family")
}

fn eccentric_family(a_dot: f64) -> MovingFamily {
    MovingFamily::new(FamilyShape::Ellipse { a: 2.0, b: 1.0 }, RateLaw::ConstantEccentricity { a_dot })
        .expect("valid family")
}

fn constant_area_family(a_dot: f64) -> MovingFamily {
    MovingFamily::new(FamilyShape::Ellipse { a: 2.0, b: 1.0 }, RateLaw::ConstantArea { a_dot })
        .expect("valid family")
}

fn unit_params() -> HeleShawParams {
    HeleShawParams::new(1.0).expect("valid params")
}

/// `ln|z + √(z² − d²)|` from the focal distances alone.
fn log_elliptic_radius(z: Complex64, d: f64) -> f64 {
    let s = 0.5 * ((z - d).norm() + (z + d).norm());
    (s + (s * s - d * d).max(0.0).sqrt()).ln()
}

/// Normal speed of the level set `x²/a(t)² + y²/b(t)² = 1`, by differences in `t`.
fn level_set_speed(family: &MovingFamily, t: f64, z: Complex64) -> Result<f64> {
    let dt = 1e-6;
    let level = |t: f64| -> Result<f64> {
        let st = family.state(t)?;
        Ok(z.re * z.re / (st.a * st.a) + z.im * z.im / (st.b * st.b) - 1.0)
    };
    let ft = (level(t + dt)? - level(t - dt)?) / (2.0 * dt);
    let st = family.state(t)?;
    let grad = f64::hypot(2.0 * z.re / (st.a * st.a), 2.0 * z.im / (st.b * st.b));
    Ok(-ft / grad)
}

fn heleshaw() -> Vec<VerificationReport> {
    let mut reports = vec![
        check("heleshaw.circle_closed_form", 1e-10, |s| {
            let cases = [(1.0, 1.0, 1.0, 0.0), (1.5, -0.3, 2.0, 0.3)];
            for (a, a_dot, k, gamma) in cases {
                let fam = MovingFamily::circle(a, a_dot)?;
                let mut params = HeleShawParams::new(k)?;
                if gamma != 0.0 {
                    params = params.with_surface_tension(circle_surface_tension(gamma, a));
                }
                for z in annulus(20, 1.0 * a, 5.0 * a) {
                    let p = pressure_sink_source(&fam, 0.0, &params, ComplexPoint::from_z(z))?;
                    let r2 = z.norm_sqr();
                    let expected = -(a * a_dot / (2.0 * k)) * (r2 / (a * a)).ln() + gamma / a;
                    s.push_real(format!("a={a} z={z:.4}"), p, expected);
                }
            }
            Ok(())
        }),
        check("heleshaw.ellipse_constant_eccentricity", 1e-8, |s| {
            let fam = eccentric_family(0.5);
            let st = fam.state(0.0)?;
            let d = (st.a * st.a - st.b * st.b).sqrt();
            let rate = st.area_product_rate();
            let mut pts = confocal_band(&st.curve, 4, 1.1, 1.9);
            pts.extend(confocal_band(&st.curve, 4, 2.2, 4.0));
            for z in pts {
                let p = pressure_sink_source(&fam, 0.0, &unit_params(), ComplexPoint::from_z(z))?;
                let expected = -(rate / 2.0) * (log_elliptic_radius(z, d) - (st.a + st.b).ln());
                s.push_real(format!("z={z:.4}"), p, expected);
            }
            Ok(())
        }),
        check("heleshaw.flux_identity", 1e-8, |s| {
            let (flux, area_rate) = flux_balance(&eccentric_family(0.25), 0.0, &unit_params())?;
            s.push_real("constant eccentricity", flux, area_rate);
            s.push_real("constant eccentricity area rate", area_rate, PI * 0.5);
            let (flux, _) = flux_balance(&constant_area_family(0.1), 0.0, &unit_params())?;
            s.push_real("constant area", flux, 0.0);
            Ok(())
        }),
        check("heleshaw.gap_circle", 1e-10, |s| {
            let fam = MovingFamily::new(FamilyShape::Circle { a: 1.0 }, RateLaw::GapConservation { h0: 1.0, h_dot: -0.4 })?;
            let params = unit_params();
            for z in annulus(8, 0.3, 3.0) {
                s.push(format!("integrand at {z:.4}"), gap_integrand(&fam, 0.0, &params, z)?, c(0.0, 0.0));
            }
            for z in annulus(16, 1.05, 4.0) {
                let ph = gap_homogeneous_pressure(&fam, 0.0, &params, ComplexPoint::from_z(z))?;
                s.push_real(format!("p_h at {z:.4}"), ph, 0.1);
            }
            Ok(())
        }),
        check("heleshaw.gap_confocal", 1e-8, |s| {
            let d0 = 3f64.sqrt();
            let (a, a_dot) = (2.0, 0.1);
            let fam = MovingFamily::new(FamilyShape::ConfocalEllipse { d0, a }, RateLaw::Prescribed { a_dot, b_dot: None })?;
            let curve = fam.state(0.0)?.curve;
            let mut pts = confocal_band(&curve, 4, 1.2, 2.5);
            pts.extend(confocal_band(&curve, 4, 0.3, 0.8));
            for z in pts {
                let ph = gap_homogeneous_pressure(&fam, 0.0, &unit_params(), ComplexPoint::from_z(z))?;
                let (x, y) = (z.re, z.im);
                let expected = 0.25 * ((x * x - y * y) * a_dot * d0 * d0 / (a * (a * a - d0 * d0)) + 2.0 * a_dot * a);
                s.push_real(format!("z={z:.4}"), ph, expected);
            }
            Ok(())
        }),
        check("heleshaw.interface_condition", 1e-8, |s| {
            for fam in [circle_family(), eccentric_family(0.5), constant_area_family(0.1)] {
                let curve = fam.state(0.0)?.curve;
                for theta in super::boundary_parameters(&curve, 32) {
                    let z = curve.point_at(theta);
                    let p = pressure_sink_source(&fam, 0.0, &unit_params(), ComplexPoint::from_z(z))?;
                    s.push_real(format!("{} at {theta:.4}", curve_label(&curve)), p, 0.0);
                }
            }
            Ok(())
        }),
        check("heleshaw.circle_log_structure", 1e-9, |s| {
            let (a, a_dot, k) = (1.2, 0.7, 1.5);
            let fam = MovingFamily::circle(a, a_dot)?;
            let params = HeleShawParams::new(k)?;
            let pts = annulus(8, 1.1, 4.0);
            for pair in pts.windows(2) {
                let p0 = pressure_sink_source(&fam, 0.0, &params, ComplexPoint::from_z(pair[0]))?;
                let p1 = pressure_sink_source(&fam, 0.0, &params, ComplexPoint::from_z(pair[1]))?;
                let expected = -(a * a_dot / (2.0 * k)) * (pair[0].norm_sqr() / pair[1].norm_sqr()).ln();
                s.push_real(format!("{:.4} vs {:.4}", pair[0], pair[1]), p0 - p1, expected);
            }
            Ok(())
        }),
        check("heleshaw.normal_velocity", 1e-6, |s| {
            let circle = MovingFamily::circle(1.0, 0.5)?;
            for k in 0..4 {
                let z = Complex64::from_polar(1.0, 0.3 + k as f64);
                s.push_real(format!("circle at {z:.4}"), normal_velocity(&circle, 0.0, z)?, 0.5);
            }
            let fam = constant_area_family(0.1);
            let curve = fam.state(0.0)?.curve;
            for theta in [0.0, 0.4, 1.2, 2.0, 3.5] {
                let z = curve.point_at(theta);
                let v = normal_velocity(&fam, 0.0, z)?;
                s.push_real(format!("ellipse at {theta}"), v, level_set_speed(&fam, 0.0, z)?);
            }
            Ok(())
        }),
    ];

    for (name, fam) in [
        ("heleshaw.kinematic.circle", circle_family()),
        ("heleshaw.kinematic.constant_eccentricity", eccentric_family(0.5)),
        ("heleshaw.kinematic.constant_area", constant_area_family(0.1)),
    ] {
        let params = unit_params();
        let field = |x: f64, y: f64| pressure_sink_source(&fam, 0.0, &params, ComplexPoint::real(x, y));
        reports.push(nested(kinematic_check(name, &fam, &field, 0.0, &params, 16, 1e-5), name, 1e-5));
    }

    let params = unit_params();
    let fam = eccentric_family(0.5);
    let curve = fam.state(0.0).map(|s| s.curve);
    let pts = curve.map(|cv| residual_points(&cv, 16)).unwrap_or_default();
    let field = |x: f64, y: f64| pressure_sink_source(&fam, 0.0, &params, ComplexPoint::real(x, y));
    let name = "heleshaw.harmonicity";
    reports.push(nested(pde_residual(name, &field, PdeOperator::Laplace, &pts, 1e-4 * 2.0, 1e-5), name, 1e-5));

    let gap_circle = MovingFamily::new(FamilyShape::Circle { a: 1.0 }, RateLaw::GapConservation { h0: 1.0, h_dot: -0.4 });
    let confocal = MovingFamily::new(
        FamilyShape::ConfocalEllipse { d0: 3f64.sqrt(), a: 2.0 },
        RateLaw::Prescribed { a_dot: 0.1, b_dot: None },
    );
    let name = "heleshaw.gap_boundary.circle";
    let report = gap_circle.clone().and_then(|fam| {
        let st = fam.state(0.0)?;
        let field = |x: f64, y: f64| pressure_gap(&fam, 0.0, &params, ComplexPoint::real(x, y));
        let phi = AnalyticDatum::zero(DatumKind::Dirichlet);
        let psi = AnalyticDatum::constant(DatumKind::Neumann, -st.a_dot / params.k);
        boundary_check(name, &field, &st.curve, &phi, Some(&psi), 16, 1e-5)
    });
    reports.push(nested(report, name, 1e-5));

    for (name, fam) in [("heleshaw.gap_poisson.circle", gap_circle), ("heleshaw.gap_poisson.confocal", confocal)] {
        let report = fam.and_then(|fam| {
            let st = fam.state(0.0)?;
            let rate = crate::heleshaw::gap_rate(&fam, &st, &params)?;
            let pts: Vec<(f64, f64)> = annulus(16, 0.5 * st.a, 3.0 * st.a)
                .into_iter()
                .filter(|z| (z.norm() - st.a).abs() > 0.05)
                .map(|z| (z.re, z.im))
                .collect();
            let field = |x: f64, y: f64| pressure_gap(&fam, 0.0, &params, ComplexPoint::real(x, y));
            pde_residual(name, &field, PdeOperator::Poisson(rate / params.k), &pts, 1e-4 * st.a, 1e-5)
        });
        reports.push(nested(report, name, 1e-5));
    }
    reports
}

fn growth() -> Vec<VerificationReport> {
    let helmholtz = |fam: MovingFamily, lambda: f64| GrowthScenario {
        family: fam,
        k: 1.0,
        kernel: GrowthKernel::Helmholtz { lambda },
    };
    let mut reports = vec![
        check("growth.laplace_degeneration", 1e-6, |s| {
            for fam in [circle_family(), eccentric_family(0.5)] {
                let curve = fam.state(0.0)?.curve;
                let sc = helmholtz(fam, 0.0);
                for z in exterior(&curve, 8) {
                    let p = ComplexPoint::from_z(z);
                    let g = growth_pressure(&sc, 0.0, p)?;
                    let l = pressure_sink_source(&fam, 0.0, &unit_params(), p)?;
                    s.push_real(format!("{} z={z:.4}", curve_label(&curve)), g, l);
                }
            }
            Ok(())
        }),
        check("growth.boundary_vanishing", 1e-7, |s| {
            for fam in [circle_family(), eccentric_family(0.5)] {
                let curve = fam.state(0.0)?.curve;
                let sc = helmholtz(fam, 0.5);
                for theta in super::boundary_parameters(&curve, 32) {
                    let z = curve.point_at(theta);
                    s.push_real(format!("{} at {theta:.4}", curve_label(&curve)), growth_pressure(&sc, 0.0, ComplexPoint::from_z(z))?, 0.0);
                }
            }
            Ok(())
        }),
        check("growth.lambda_continuity", 1e-6, |s| {
            let fam = circle_family();
            for z in annulus(8, 1.2, 3.0) {
                let p = ComplexPoint::from_z(z);
                let small = growth_pressure(&helmholtz(fam, 1e-4), 0.0, p)?;
                let zero = growth_pressure(&helmholtz(fam, 0.0), 0.0, p)?;
                s.push_real(format!("z={z:.4}"), small, zero);
            }
            Ok(())
        }),
        check("growth.kernel_consistency", 1e-10, |s| {
            for fam in [circle_family(), eccentric_family(0.5)] {
                let curve = fam.state(0.0)?.curve;
                let general = GrowthScenario {
                    family: fam,
                    k: 1.0,
                    kernel: GrowthKernel::General(Arc::new(HelmholtzKernel::new(0.5))),
                };
                for z in exterior(&curve, 8) {
                    let p = ComplexPoint::from_z(z);
                    let g = growth_pressure(&general, 0.0, p)?;
                    let h = growth_pressure(&helmholtz(fam, 0.5), 0.0, p)?;
                    s.push_real(format!("{} z={z:.4}", curve_label(&curve)), g, h);
                }
            }
            Ok(())
        }),
        check("growth.path_independence", 1e-9, |s| {
            let (a, a_dot, lambda) = (1.0, 1.0, 0.5);
            let sc = helmholtz(circle_family(), lambda);
            let (z0, w0) = (c(2.0, 0.0), c(2.0, 0.0));
            let value = growth_pressure(&sc, 0.0, ComplexPoint::new(z0, w0))?;
            let integrand =
                |z: Complex64| Ok(2.0 * a * a_dot / z * j0_product(lambda * lambda, (z - z0) * (a * a / z - w0))?);
            for via in [c(1.2, 0.6), c(1.0, -1.0), c(3.0, 2.0)] {
                let path = IntegrationPath::polyline(vec![c(a * a / 2.0, 0.0), via, z0]);
                let direct = -integrate_path(integrand, &path)? / 4.0;
                s.push_real(format!("via {via}"), value, direct.re);
            }
            Ok(())
        }),
    ];

    for fam in [circle_family(), eccentric_family(0.5)] {
        let curve = match fam.state(0.0) {
            Ok(st) => st.curve,
            Err(_) => continue,
        };
        let sc = helmholtz(fam, 0.5);
        let pts: Vec<(f64, f64)> = exterior(&curve, 16).into_iter().map(|z| (z.re, z.im)).collect();
        let field = |x: f64, y: f64| growth_pressure(&sc, 0.0, ComplexPoint::real(x, y));
        let name = format!("growth.helmholtz_residual.{}", curve_kind_name(&curve));
        reports.push(nested(
            pde_residual(&name, &field, PdeOperator::Helmholtz(0.5), &pts, 1e-4 * curve.scale(), 1e-4),
            &name,
            1e-4,
        ));
    }
    reports
}

/// Exterior points, where the growth fields are regular.
fn exterior(curve: &Curve, n: usize) -> Vec<Complex64> {
    match curve.kind() {
        CurveKind::Ellipse { .. } => confocal_band(curve, n, 1.15, 2.5),
        _ => annulus(n, 1.15 * curve.scale(), 3.0 * curve.scale()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in [Suite::All, Suite::Reflections, Suite::Cauchy, Suite::HeleShaw, Suite::Growth] {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn sample_points_are_deterministic() {
        assert_eq!(annulus(5, 1.0, 2.0), annulus(5, 1.0, 2.0));
        for z in annulus(32, 1.0, 2.0) {
            assert!(z.norm() >= 1.0 && z.norm() <= 2.0);
        }
    }

    #[test]
    fn elliptic_radius_oracle() {
        let d = 3f64.sqrt();
        // on the ellipse a=2, b=1 the radius is ln(a+b)
        let z = c(2.0 * 0.3f64.cos(), 0.3f64.sin());
        assert!((log_elliptic_radius(z, d) - 3f64.ln()).abs() < 1e-14);
    }
}
