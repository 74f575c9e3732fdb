//! Reflection relations for harmonic functions with nonhomogeneous data.
//!
//! For `u` harmonic near `Γ`:
//!
//! * Dirichlet data `u = φ` on `Γ` gives `u(P) + u(R(P)) = φ(S̃(w0), w0) + φ(z0, S(z0))`.
//! * Neumann data `∂u/∂n = ψ` on `Γ` gives
//!   `u(P) − u(R(P)) = i ∫_{S̃(w0)}^{z0} ψ(z, S(z)) √S'(z) dz`.

use num_complex::Complex64;
use std::fmt;
use std::sync::Arc;

use crate::curves::{ComplexPoint, Curve};
use crate::error::{Error, Result};
use crate::numerics::BranchTracker;

/// Whether a datum prescribes values or normal derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DatumKind {
    Dirichlet,
    Neumann,
}

type DatumFn = dyn Fn(Complex64, Complex64) -> Complex64 + Send + Sync;

/// Boundary datum continued holomorphically to `(z, w)`.
///
/// Analyticity in both arguments is the caller's responsibility;
/// [`AnalyticDatum::analyticity_defect`] spot-checks it.
#[derive(Clone)]
pub struct AnalyticDatum {
    eval: Arc<DatumFn>,
    pub kind: DatumKind,
}

impl fmt::Debug for AnalyticDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AnalyticDatum").field("kind", &self.kind).finish_non_exhaustive()
    }
}

impl AnalyticDatum {
    pub fn new<F>(kind: DatumKind, f: F) -> Self
    where
        F: Fn(Complex64, Complex64) -> Complex64 + Send + Sync + 'static,
    {
        Self {
            eval: Arc::new(f),
            kind,
        }
    }

    pub fn dirichlet<F>(f: F) -> Self
    where
        F: Fn(Complex64, Complex64) -> Complex64 + Send + Sync + 'static,
    {
        Self::new(DatumKind::Dirichlet, f)
    }

    pub fn neumann<F>(f: F) -> Self
    where
        F: Fn(Complex64, Complex64) -> Complex64 + Send + Sync + 'static,
    {
        Self::new(DatumKind::Neumann, f)
    }

    pub fn constant(kind: DatumKind, value: f64) -> Self {
        Self::new(kind, move |_, _| Complex64::new(value, 0.0))
    }

    pub fn zero(kind: DatumKind) -> Self {
        Self::constant(kind, 0.0)
    }

    pub fn eval(&self, z: Complex64, w: Complex64) -> Complex64 {
        (self.eval)(z, w)
    }

    /// Largest relative mismatch between real- and imaginary-step difference
    /// quotients in each argument, over 8 points of `Γ_C`.
    ///
    /// Holomorphic data give values near `1e-8`; anything above `1e-4`
    /// signals a datum that depends on `conj(z)` or `conj(w)`.
    pub fn analyticity_defect(&self, curve: &Curve) -> Result<f64> {
        let h = 1e-5 * curve.scale();
        let mut worst: f64 = 0.0;
        for k in 0..8 {
            let z = curve.point_at(0.25 + k as f64 * std::f64::consts::PI / 4.0);
            let w = curve.schwarz(z)?;
            let quotient = |dz: Complex64, dw: Complex64| {
                (self.eval(z + dz, w + dw) - self.eval(z - dz, w - dw)) / (2.0 * (dz + dw))
            };
            let hr = Complex64::new(h, 0.0);
            let hi = Complex64::new(0.0, h);
            let zero = Complex64::new(0.0, 0.0);
            for (re, im) in [(quotient(hr, zero), quotient(hi, zero)), (quotient(zero, hr), quotient(zero, hi))] {
                let scale = 1.0 + re.norm().max(im.norm());
                worst = worst.max((re - im).norm() / scale);
            }
        }
        Ok(worst)
    }
}

/// The four points linking `P`, its reflection and two points of `Γ_C`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StudyRectangle {
    /// `(z0, w0)`.
    pub p00: ComplexPoint,
    /// `(S̃(w0), w0)`, on `Γ_C`.
    pub p10: ComplexPoint,
    /// `(z0, S(z0))`, on `Γ_C`.
    pub p01: ComplexPoint,
    /// `(S̃(w0), S(z0))`; the reflected point for real `P`.
    pub p11: ComplexPoint,
}

pub fn study_rectangle(curve: &Curve, p: ComplexPoint) -> Result<StudyRectangle> {
    let inv = curve.schwarz_inverse(p.w)?;
    let s = curve.schwarz(p.z)?;
    Ok(StudyRectangle {
        p00: p,
        p10: ComplexPoint::new(inv, p.w),
        p01: ComplexPoint::new(p.z, s),
        p11: ComplexPoint::new(inv, s),
    })
}

/// `φ(S̃(w0), w0) + φ(z0, S(z0))`, which equals `u(P) + u(R(P))`.
pub fn dirichlet_pair_sum(curve: &Curve, phi: &AnalyticDatum, p: ComplexPoint) -> Result<Complex64> {
    let rect = study_rectangle(curve, p)?;
    Ok(phi.eval(rect.p10.z, rect.p10.w) + phi.eval(rect.p01.z, rect.p01.w))
}

/// `i ∫_{S̃(w0)}^{z0} ψ(z, S(z)) √S' dz`, which equals `u(P) − u(R(P))`.
///
/// `branch` carries the sign convention for `√S'`: its seed must be one of
/// the two roots of `S'` at the seed point. Flipping the seed negates the
/// result.
pub fn neumann_jump(
    curve: &Curve,
    psi: &AnalyticDatum,
    p: ComplexPoint,
    branch: &BranchTracker,
) -> Result<Complex64> {
    let sign = branch_sign(curve, branch)?;
    let path = curve.gamma_path(p)?;
    path.require_sqrt()?;
    check_continuity(curve, &path, sign)?;
    let jump = path.integrate(|zeta, pt| {
        let root = curve.chart_sqrt_sprime_dz(zeta)?;
        Ok(psi.eval(pt.z, pt.s) * root * sign)
    })?;
    Ok(Complex64::i() * jump)
}

/// `+1` or `−1` according to which root of `S'` the tracker was seeded with.
pub(crate) fn branch_sign(curve: &Curve, branch: &BranchTracker) -> Result<f64> {
    let at = branch.seed_point();
    let canonical = curve.sqrt_schwarz_derivative(at)?;
    let ratio = branch.seed_value() / canonical;
    if (ratio - 1.0).norm() < 1e-8 {
        Ok(1.0)
    } else if (ratio + 1.0).norm() < 1e-8 {
        Ok(-1.0)
    } else {
        Err(Error::BranchJump { at })
    }
}

/// Walks `√(S' dz²)` along the chart path with a tracker and confirms that the
/// closed-form branch never jumps.
fn check_continuity(curve: &Curve, path: &crate::curves::GammaPath, sign: f64) -> Result<()> {
    const STEPS: usize = 64;
    let (a, b) = (path.path.start(), path.path.end());
    if a == b {
        return Ok(());
    }
    let value_at = |zeta: Complex64| -> Result<(Complex64, Complex64)> {
        let pt = curve.chart_point(zeta);
        Ok((pt.ds * pt.dz, curve.chart_sqrt_sprime_dz(zeta)? * sign))
    };
    let (_, seed) = value_at(a)?;
    if seed.norm() == 0.0 {
        // starts at a focus; nothing to continue from
        return Ok(());
    }
    let mut tracker = BranchTracker::new(a, seed);
    for k in 1..=STEPS {
        let zeta = a + (b - a) * (k as f64 / STEPS as f64);
        let (square, expected) = value_at(zeta)?;
        if square.norm() == 0.0 {
            continue;
        }
        let tracked = tracker.sqrt_branch(zeta, square)?;
        if (tracked - expected).norm() > 1e-8 * (1.0 + expected.norm()) {
            return Err(Error::BranchJump { at: curve.chart_point(zeta).z });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rectangle_collapses_on_curve() {
        let curve = Curve::ellipse(2.0, 1.0).unwrap();
        let z = curve.point_at(0.7);
        let rect = study_rectangle(&curve, ComplexPoint::from_z(z)).unwrap();
        for q in [rect.p10, rect.p01, rect.p11] {
            assert!((q.z - z).norm() < 1e-12 && (q.w - z.conj()).norm() < 1e-12);
        }
    }

    #[test]
    fn rectangle_corners_share_coordinates() {
        let curve = Curve::circle(1.0).unwrap();
        let rect = study_rectangle(&curve, ComplexPoint::real(2.0, 0.0)).unwrap();
        assert_eq!(rect.p10.w, rect.p00.w);
        assert_eq!(rect.p01.z, rect.p00.z);
        assert_eq!(rect.p11.z, rect.p10.z);
        assert_eq!(rect.p11.w, rect.p01.w);
        assert!((rect.p11.z - c(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn constant_and_zero_data() {
        let curve = Curve::ellipse(2.0, 1.0).unwrap();
        let p = ComplexPoint::real(2.5, 0.4);
        let zero = AnalyticDatum::zero(DatumKind::Dirichlet);
        assert_eq!(dirichlet_pair_sum(&curve, &zero, p).unwrap(), c(0.0, 0.0));
        let three = AnalyticDatum::constant(DatumKind::Dirichlet, 3.0);
        assert!((dirichlet_pair_sum(&curve, &three, p).unwrap() - c(6.0, 0.0)).norm() < 1e-15);
        let psi = AnalyticDatum::zero(DatumKind::Neumann);
        let jump = neumann_jump(&curve, &psi, p, &curve.branch_seed()).unwrap();
        assert_eq!(jump, c(0.0, 0.0));
    }

    #[test]
    fn bad_seed_rejected() {
        let curve = Curve::circle(1.0).unwrap();
        let psi = AnalyticDatum::constant(DatumKind::Neumann, 1.0);
        let seed = BranchTracker::new(c(1.0, 0.0), c(1.0, 0.0));
        assert!(matches!(
            neumann_jump(&curve, &psi, ComplexPoint::real(2.0, 0.0), &seed),
            Err(Error::BranchJump { .. })
        ));
    }

    #[test]
    fn analyticity_spot_check() {
        let curve = Curve::circle(1.0).unwrap();
        let good = AnalyticDatum::dirichlet(|z, w| z * w + z * z * z);
        assert!(good.analyticity_defect(&curve).unwrap() < 1e-6);
        let bad = AnalyticDatum::dirichlet(|z, _| c(z.norm_sqr(), 0.0));
        assert!(bad.analyticity_defect(&curve).unwrap() > 1e-3);
    }
}
