//! Real-analytic curves described through their Schwarz functions.
//!
//! A curve `Γ` is encoded by the analytic function `S` with `S(z) = conj(z)`
//! on `Γ`. Its complexification is the set `{(z, w) : w = S(z)}` and the
//! local reflection across `Γ` is `R(z) = conj(S(z))`.
//!
//! Three families are supported: straight lines, circles centred at the
//! origin, and axis-aligned ellipses centred at the origin. The ellipse
//! Schwarz function carries a square root with its cut on the inter-focal
//! segment `[-d, d]`.

mod chart;
mod family;

pub use chart::{GammaPath, GammaPoint};
pub use family::{FamilyShape, FamilyState, MovingFamily, RateLaw};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::BranchTracker;

/// Points within this multiple of `d` from the inter-focal segment count as on the cut.
pub const CUT_TOLERANCE: f64 = 1e-12;
/// Points within this multiple of `d` from a focus count as the focus.
pub const FOCUS_TOLERANCE: f64 = 1e-9;

/// A point of `C^2` in characteristic coordinates `z = x + iy`, `w = x - iy`.
///
/// Real points of the plane have `w = conj(z)`; the complexified curve and the
/// Study rectangle also use points where `w` is independent of `z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexPoint {
    pub z: Complex64,
    pub w: Complex64,
}

impl ComplexPoint {
    pub fn new(z: Complex64, w: Complex64) -> Self {
        Self { z, w }
    }

    /// The real point `(x, y)`.
    pub fn real(x: f64, y: f64) -> Self {
        let z = Complex64::new(x, y);
        Self { z, w: z.conj() }
    }

    /// The real point with complex coordinate `z`.
    pub fn from_z(z: Complex64) -> Self {
        Self { z, w: z.conj() }
    }

    pub fn x(&self) -> Complex64 {
        (self.z + self.w) * 0.5
    }

    pub fn y(&self) -> Complex64 {
        (self.z - self.w) / Complex64::new(0.0, 2.0)
    }

    pub fn is_real(&self, tol: f64) -> bool {
        (self.w - self.z.conj()).norm() <= tol * (1.0 + self.z.norm())
    }
}

/// Geometric description of a curve, as exposed to callers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurveKind {
    /// `S(z) = m z + q` with `|m| = 1`.
    Line { m: Complex64, q: Complex64 },
    /// Circle of radius `a` centred at the origin.
    Circle { a: f64 },
    /// Ellipse `x²/a² + y²/b² = 1` with `a > b > 0`.
    Ellipse { a: f64, b: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct EllipseGeometry {
    pub a: f64,
    pub b: f64,
    /// Half the inter-focal distance.
    pub d: f64,
    /// Elliptic radius of the curve: `a = d cosh ξ0`, `b = d sinh ξ0`.
    pub xi0: f64,
}

impl EllipseGeometry {
    fn new(a: f64, b: f64) -> Self {
        let d = (a * a - b * b).sqrt();
        let xi0 = 0.5 * ((a + b) / (a - b)).ln();
        Self { a, b, d, xi0 }
    }

    /// `√(z² − d²)` on the branch asymptotic to `z`, cut along `[-d, d]`.
    pub fn root(&self, z: Complex64) -> Complex64 {
        if z == Complex64::new(0.0, 0.0) {
            return Complex64::new(0.0, self.d);
        }
        z * (1.0 - self.d * self.d / (z * z)).sqrt()
    }

    pub fn on_cut(&self, z: Complex64) -> bool {
        z.im.abs() <= CUT_TOLERANCE * self.d && z.re.abs() < self.d
    }

    pub fn near_focus(&self, z: Complex64) -> bool {
        (z - self.d).norm() <= FOCUS_TOLERANCE * self.d
            || (z + self.d).norm() <= FOCUS_TOLERANCE * self.d
    }

    fn closed_form(&self, z: Complex64) -> Complex64 {
        let (a, b) = (self.a, self.b);
        ((a * a + b * b) * z - 2.0 * a * b * self.root(z)) / (self.d * self.d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Shape {
    Line {
        m: Complex64,
        q: Complex64,
        /// Unit normal; fixes the branch of `√S'`.
        normal: Complex64,
    },
    Circle {
        a: f64,
    },
    Ellipse(EllipseGeometry),
}

/// A line, circle or ellipse together with its Schwarz function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Curve {
    shape: Shape,
}

impl Curve {
    /// The line `αx + βy + δ = 0`, with normal pointing along `(α, β)`.
    pub fn line(alpha: f64, beta: f64, delta: f64) -> Result<Self> {
        let n2 = alpha * alpha + beta * beta;
        if !(n2 > 0.0) || !delta.is_finite() || !n2.is_finite() {
            return Err(Error::InvalidCurve(format!(
                "line coefficients ({alpha}, {beta}, {delta}) do not define a line"
            )));
        }
        let m = Complex64::new(beta * beta - alpha * alpha, 2.0 * alpha * beta) / n2;
        let q = Complex64::new(-2.0 * alpha * delta, 2.0 * beta * delta) / n2;
        let normal = Complex64::new(alpha, beta) / n2.sqrt();
        Ok(Self {
            shape: Shape::Line { m, q, normal },
        })
    }

    /// The real axis, with upward normal.
    pub fn x_axis() -> Self {
        Self::line(0.0, 1.0, 0.0).expect("x-axis is a valid line")
    }

    pub fn circle(a: f64) -> Result<Self> {
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::InvalidCurve(format!("circle radius must be positive, got {a}")));
        }
        Ok(Self {
            shape: Shape::Circle { a },
        })
    }

    pub fn ellipse(a: f64, b: f64) -> Result<Self> {
        if !(a > b && b > 0.0) || !a.is_finite() {
            return Err(Error::InvalidCurve(format!(
                "ellipse needs a > b > 0, got a = {a}, b = {b}"
            )));
        }
        Ok(Self {
            shape: Shape::Ellipse(EllipseGeometry::new(a, b)),
        })
    }

    pub fn kind(&self) -> CurveKind {
        match self.shape {
            Shape::Line { m, q, .. } => CurveKind::Line { m, q },
            Shape::Circle { a } => CurveKind::Circle { a },
            Shape::Ellipse(e) => CurveKind::Ellipse { a: e.a, b: e.b },
        }
    }

    pub(crate) fn ellipse_geometry(&self) -> Option<&EllipseGeometry> {
        match &self.shape {
            Shape::Ellipse(e) => Some(e),
            _ => None,
        }
    }

    /// Characteristic length used to scale finite-difference steps.
    pub fn scale(&self) -> f64 {
        match self.shape {
            Shape::Line { .. } => 1.0,
            Shape::Circle { a } => a,
            Shape::Ellipse(e) => e.a,
        }
    }

    /// The branch cut of `S`, if any, as a segment.
    pub fn branch_cut(&self) -> Option<(Complex64, Complex64)> {
        self.ellipse_geometry()
            .map(|e| (Complex64::new(-e.d, 0.0), Complex64::new(e.d, 0.0)))
    }

    /// Isolated points where `S` or `S̃` is undefined.
    pub fn singular_points(&self) -> Vec<Complex64> {
        match self.shape {
            Shape::Circle { .. } => vec![Complex64::new(0.0, 0.0)],
            _ => Vec::new(),
        }
    }

    /// Whether `z` lies in the region where the reflection is an involution
    /// and `S̃ ∘ S` is the identity.
    ///
    /// For the ellipse this is the confocal annulus `0 < ξ < 2ξ0` in elliptic
    /// coordinates `z = d cosh(ξ + iη)`, minus the cut.
    pub fn in_domain(&self, z: Complex64) -> bool {
        match &self.shape {
            Shape::Line { .. } => z.is_finite(),
            Shape::Circle { .. } => z.is_finite() && z.norm() > 0.0,
            Shape::Ellipse(e) => {
                if !z.is_finite() || e.on_cut(z) {
                    return false;
                }
                let xi = ((z + e.root(z)) / e.d).ln().re;
                xi < 2.0 * e.xi0
            }
        }
    }

    /// `S(z)`.
    pub fn schwarz(&self, z: Complex64) -> Result<Complex64> {
        match &self.shape {
            Shape::Line { m, q, .. } => Ok(m * z + q),
            Shape::Circle { a } => {
                if z.norm() == 0.0 {
                    return Err(Error::OutOfDomain(z));
                }
                Ok(a * a / z)
            }
            Shape::Ellipse(e) => {
                if e.on_cut(z) {
                    return Err(Error::BranchCutHit(z));
                }
                Ok(e.closed_form(z))
            }
        }
    }

    /// `S̃(w)`, the inverse of the Schwarz function.
    pub fn schwarz_inverse(&self, w: Complex64) -> Result<Complex64> {
        match &self.shape {
            Shape::Line { m, q, .. } => Ok((w - q) / m),
            Shape::Circle { a } => {
                if w.norm() == 0.0 {
                    return Err(Error::OutOfDomain(w));
                }
                Ok(a * a / w)
            }
            Shape::Ellipse(e) => {
                if e.on_cut(w) {
                    return Err(Error::BranchCutHit(w));
                }
                Ok(e.closed_form(w))
            }
        }
    }

    /// `S'(z)`.
    pub fn schwarz_derivative(&self, z: Complex64) -> Result<Complex64> {
        match &self.shape {
            Shape::Line { m, .. } => Ok(*m),
            Shape::Circle { a } => {
                if z.norm() == 0.0 {
                    return Err(Error::OutOfDomain(z));
                }
                Ok(-a * a / (z * z))
            }
            Shape::Ellipse(e) => {
                if e.near_focus(z) {
                    return Err(Error::SingularPoint(z));
                }
                if e.on_cut(z) {
                    return Err(Error::BranchCutHit(z));
                }
                let (a, b) = (e.a, e.b);
                Ok(((a * a + b * b) - 2.0 * a * b * z / e.root(z)) / (e.d * e.d))
            }
        }
    }

    /// The reflection `R(z) = conj(S(z))` of a real point.
    pub fn reflect(&self, p: ComplexPoint) -> Result<ComplexPoint> {
        if !self.in_domain(p.z) {
            return match &self.shape {
                Shape::Ellipse(e) if e.on_cut(p.z) => Err(Error::BranchCutHit(p.z)),
                _ => Err(Error::OutOfDomain(p.z)),
            };
        }
        Ok(ComplexPoint::from_z(self.schwarz(p.z)?.conj()))
    }

    /// `√S'(z)` on the branch for which `-(i/√S')(∂z − S' ∂w)` is the normal
    /// derivative along the curve's normal (outward for closed curves).
    pub fn sqrt_schwarz_derivative(&self, z: Complex64) -> Result<Complex64> {
        match &self.shape {
            Shape::Line { normal, .. } => Ok(-Complex64::i() * normal.conj()),
            Shape::Circle { a } => {
                if z.norm() == 0.0 {
                    return Err(Error::OutOfDomain(z));
                }
                Ok(-Complex64::i() * *a / z)
            }
            Shape::Ellipse(e) => {
                if e.near_focus(z) {
                    return Err(Error::SingularPoint(z));
                }
                if !self.in_domain(z) {
                    return Err(Error::OutOfDomain(z));
                }
                let zeta = self.chart_lift(z)?;
                let root = e.d * zeta.sinh();
                Ok(self.chart_sqrt_sprime_dz(zeta)? / root)
            }
        }
    }

    /// The tracker seeded with the branch convention used by
    /// [`Curve::sqrt_schwarz_derivative`].
    pub fn branch_seed(&self) -> BranchTracker {
        let seed_point = match &self.shape {
            Shape::Line { q, normal, .. } => self.line_foot(*q, *normal),
            Shape::Circle { a } => Complex64::new(*a, 0.0),
            Shape::Ellipse(e) => Complex64::new(e.a, 0.0),
        };
        let value = self
            .sqrt_schwarz_derivative(seed_point)
            .expect("seed point lies on the curve");
        BranchTracker::new(seed_point, value)
    }

    /// The point of the curve at parameter `theta`.
    ///
    /// For circles and ellipses `theta` is the polar/eccentric angle; for lines
    /// it is the signed distance from the foot of the normal through the origin.
    pub fn point_at(&self, theta: f64) -> Complex64 {
        match &self.shape {
            Shape::Line { q, normal, .. } => {
                let foot = self.line_foot(*q, *normal);
                foot + Complex64::i() * normal * theta
            }
            Shape::Circle { a } => Complex64::from_polar(*a, theta),
            Shape::Ellipse(e) => Complex64::new(e.a * theta.cos(), e.b * theta.sin()),
        }
    }

    /// Unit normal at parameter `theta`, on the side selected by the branch
    /// convention (outward for circles and ellipses).
    pub fn normal_at(&self, theta: f64) -> Complex64 {
        match &self.shape {
            Shape::Line { normal, .. } => *normal,
            Shape::Circle { .. } => Complex64::from_polar(1.0, theta),
            Shape::Ellipse(e) => {
                let n = Complex64::new(e.b * theta.cos(), e.a * theta.sin());
                n / n.norm()
            }
        }
    }

    fn line_foot(&self, q: Complex64, normal: Complex64) -> Complex64 {
        // On the line, conj(z) = m z + q. For z = t·n with real t this gives
        // t (conj(n) - m n) = q, and conj(n) - m n = 2 conj(n).
        let t = (q / (2.0 * normal.conj())).re;
        normal * t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn circle_schwarz_value() {
        let curve = Curve::circle(2.0).unwrap();
        let s = curve.schwarz(c(1.0, 1.0)).unwrap();
        assert!((s - c(2.0, -2.0)).norm() < 1e-15);
        assert!((curve.schwarz_inverse(c(2.0, -2.0)).unwrap() - c(1.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn ellipse_at_focus() {
        let curve = Curve::ellipse(2.0, 1.0).unwrap();
        let d = 3f64.sqrt();
        let s = curve.schwarz(c(d, 0.0)).unwrap();
        assert!((s - c(5.0 * d / 3.0, 0.0)).norm() < 1e-14);
        assert!(matches!(
            curve.schwarz_derivative(c(d, 0.0)),
            Err(Error::SingularPoint(_))
        ));
    }

    #[test]
    fn ellipse_on_curve_identity() {
        let curve = Curve::ellipse(2.0, 1.0).unwrap();
        assert!((curve.schwarz(c(2.0, 0.0)).unwrap() - c(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn cut_and_origin_errors() {
        let e = Curve::ellipse(2.0, 1.0).unwrap();
        assert!(matches!(e.schwarz(c(0.5, 0.0)), Err(Error::BranchCutHit(_))));
        assert!(matches!(e.schwarz_inverse(c(-1.0, 0.0)), Err(Error::BranchCutHit(_))));
        let circ = Curve::circle(1.0).unwrap();
        assert!(matches!(circ.schwarz(c(0.0, 0.0)), Err(Error::OutOfDomain(_))));
    }

    #[test]
    fn invalid_curves_rejected() {
        assert!(Curve::circle(0.0).is_err());
        assert!(Curve::ellipse(1.0, 2.0).is_err());
        assert!(Curve::ellipse(1.0, 1.0).is_err());
        assert!(Curve::line(0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn line_coefficients() {
        let l = Curve::line(1.0, 2.0, -3.0).unwrap();
        let CurveKind::Line { m, q } = l.kind() else { unreachable!() };
        assert!((m.norm() - 1.0).abs() < 1e-15);
        // points on the line satisfy S(z) = conj(z)
        for t in [-2.0, 0.0, 1.5] {
            let z = l.point_at(t);
            assert!((z.re + 2.0 * z.im - 3.0).abs() < 1e-14);
            assert!((m * z + q - z.conj()).norm() < 1e-14);
        }
    }

    #[test]
    fn reflections() {
        let x = Curve::x_axis();
        let r = x.reflect(ComplexPoint::real(1.0, 2.0)).unwrap();
        assert!((r.z - c(1.0, -2.0)).norm() < 1e-15);
        let circ = Curve::circle(1.0).unwrap();
        let r = circ.reflect(ComplexPoint::real(2.0, 0.0)).unwrap();
        assert!((r.z - c(0.5, 0.0)).norm() < 1e-15);
        let e = Curve::ellipse(2.0, 1.0).unwrap();
        let r = e.reflect(ComplexPoint::real(2.0, 0.0)).unwrap();
        assert!((r.z - c(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn sqrt_derivative_conventions() {
        assert_eq!(Curve::x_axis().sqrt_schwarz_derivative(c(3.0, 1.0)).unwrap(), c(-1.0, 0.0));
        let circ = Curve::circle(1.0).unwrap();
        assert!((circ.sqrt_schwarz_derivative(c(1.0, 0.0)).unwrap() - c(0.0, -1.0)).norm() < 1e-15);
        let e = Curve::ellipse(2.0, 1.0).unwrap();
        assert!((e.sqrt_schwarz_derivative(c(2.0, 0.0)).unwrap() - c(0.0, -1.0)).norm() < 1e-14);
        for z in [c(2.5, 0.7), c(0.3, 1.4), c(-1.0, -0.2)] {
            let r = e.sqrt_schwarz_derivative(z).unwrap();
            assert!((r * r - e.schwarz_derivative(z).unwrap()).norm() < 1e-12);
        }
    }
}
