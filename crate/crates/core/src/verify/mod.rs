//! Verification harness: finite-difference PDE residuals, boundary-condition
//! recovery, kinematic consistency and closed-form comparisons.
//!
//! Every check produces a [`VerificationReport`]; [`run_suite`] groups the
//! checks used to validate a build.

mod suites;

pub use suites::{run_suite, Suite};

use num_complex::Complex64;
use serde::Serialize;

use crate::curves::{Curve, CurveKind, MovingFamily};
use crate::error::{Error, Result};
use crate::heleshaw::{normal_velocity, HeleShawParams};
use crate::reflection::AnalyticDatum;

/// One evaluated sample of a check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleRecord {
    pub label: String,
    pub value: f64,
    pub reference: f64,
    pub error: f64,
}

/// Outcome of a single check. `passed` holds exactly when `max_error <= tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check_name: String,
    pub samples: usize,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub details: Vec<SampleRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

impl VerificationReport {
    pub fn from_samples(check_name: impl Into<String>, tolerance: f64, details: Vec<SampleRecord>) -> Self {
        let max_error = details.iter().map(|d| d.error).fold(0.0, |m: f64, e| {
            if e.is_nan() {
                f64::INFINITY
            } else {
                m.max(e)
            }
        });
        Self {
            check_name: check_name.into(),
            samples: details.len(),
            max_error,
            tolerance,
            passed: max_error <= tolerance,
            details,
            failure: None,
        }
    }

    /// A check that could not be carried out.
    pub fn errored(check_name: impl Into<String>, tolerance: f64, err: &Error) -> Self {
        Self {
            check_name: check_name.into(),
            samples: 0,
            max_error: f64::INFINITY,
            tolerance,
            passed: false,
            details: Vec::new(),
            failure: Some(err.to_string()),
        }
    }
}

/// Differential operator whose residual [`pde_residual`] measures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PdeOperator {
    /// `|Δu|`.
    Laplace,
    /// `|Δu + λ²u| / (1 + |u|)`.
    Helmholtz(f64),
    /// `|Δu − rhs|`.
    Poisson(f64),
}

/// Five-point stencil residuals of `field` at `points`.
///
/// Any failure to evaluate the field on a stencil is reported as
/// [`Error::StencilCrossesSingularity`].
pub fn pde_residual(
    check_name: &str,
    field: &dyn Fn(f64, f64) -> Result<f64>,
    operator: PdeOperator,
    points: &[(f64, f64)],
    h: f64,
    tolerance: f64,
) -> Result<VerificationReport> {
    let mut details = Vec::with_capacity(points.len());
    for &(x, y) in points {
        let at = |dx: f64, dy: f64| field(x + dx, y + dy).map_err(|_| Error::StencilCrossesSingularity { x, y });
        let u = at(0.0, 0.0)?;
        let lap = (at(h, 0.0)? + at(-h, 0.0)? + at(0.0, h)? + at(0.0, -h)? - 4.0 * u) / (h * h);
        let (residual, error) = match operator {
            PdeOperator::Laplace => (lap, lap.abs()),
            PdeOperator::Helmholtz(lambda) => {
                let r = lap + lambda * lambda * u;
                (r, r.abs() / (1.0 + u.abs()))
            }
            PdeOperator::Poisson(rhs) => (lap - rhs, (lap - rhs).abs()),
        };
        details.push(SampleRecord {
            label: format!("({x:.6}, {y:.6})"),
            value: residual,
            reference: 0.0,
            error,
        });
    }
    Ok(VerificationReport::from_samples(check_name, tolerance, details))
}

/// Curve parameters for `n` equally spaced samples.
pub fn boundary_parameters(curve: &Curve, n: usize) -> Vec<f64> {
    match curve.kind() {
        CurveKind::Line { .. } => (0..n).map(|k| -2.0 + 4.0 * k as f64 / (n.max(2) - 1) as f64).collect(),
        _ => (0..n)
            .map(|k| 2.0 * std::f64::consts::PI * k as f64 / n as f64)
            .collect(),
    }
}

fn normal_derivative(field: &dyn Fn(f64, f64) -> Result<f64>, z: Complex64, n: Complex64, h: f64) -> Result<f64> {
    let plus = z + n * h;
    let minus = z - n * h;
    Ok((field(plus.re, plus.im)? - field(minus.re, minus.im)?) / (2.0 * h))
}

/// Compares the trace of `field` on `curve` with `φ`, and its normal
/// derivative (central difference, step `1e-5·scale`) with `ψ`.
pub fn boundary_check(
    check_name: &str,
    field: &dyn Fn(f64, f64) -> Result<f64>,
    curve: &Curve,
    phi: &AnalyticDatum,
    psi: Option<&AnalyticDatum>,
    n_samples: usize,
    tolerance: f64,
) -> Result<VerificationReport> {
    let h = 1e-5 * curve.scale();
    let mut details = Vec::new();
    for theta in boundary_parameters(curve, n_samples) {
        let z = curve.point_at(theta);
        let value = field(z.re, z.im)?;
        let expected = phi.eval(z, z.conj()).re;
        details.push(SampleRecord {
            label: format!("trace at {theta:.6}"),
            value,
            reference: expected,
            error: (value - expected).abs(),
        });
        if let Some(psi) = psi {
            let dn = normal_derivative(field, z, curve.normal_at(theta), h)?;
            let expected = psi.eval(z, z.conj()).re;
            details.push(SampleRecord {
                label: format!("normal derivative at {theta:.6}"),
                value: dn,
                reference: expected,
                error: (dn - expected).abs(),
            });
        }
    }
    Ok(VerificationReport::from_samples(check_name, tolerance, details))
}

/// Compares `−k ∂p/∂n` with the normal speed of `Γ(t)`.
///
/// Errors are relative to the largest normal speed over the samples, so
/// families whose speed changes sign are handled uniformly.
pub fn kinematic_check(
    check_name: &str,
    family: &MovingFamily,
    pressure: &dyn Fn(f64, f64) -> Result<f64>,
    t: f64,
    params: &HeleShawParams,
    n_samples: usize,
    tolerance: f64,
) -> Result<VerificationReport> {
    let curve = family.state(t)?.curve;
    let h = 1e-5 * curve.scale();
    let mut pairs = Vec::new();
    for theta in boundary_parameters(&curve, n_samples) {
        let z = curve.point_at(theta);
        let dn = normal_derivative(pressure, z, curve.normal_at(theta), h)?;
        pairs.push((theta, -params.k * dn, normal_velocity(family, t, z)?));
    }
    let peak = pairs.iter().map(|p| p.2.abs()).fold(0.0, f64::max);
    let scale = if peak > 0.0 { peak } else { 1.0 };
    let details = pairs
        .into_iter()
        .map(|(theta, flux, vn)| SampleRecord {
            label: format!("boundary at {theta:.6}"),
            value: flux,
            reference: vn,
            error: (flux - vn).abs() / scale,
        })
        .collect();
    Ok(VerificationReport::from_samples(check_name, tolerance, details))
}
