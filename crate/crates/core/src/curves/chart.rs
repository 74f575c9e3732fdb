//! Uniformizing coordinates for the complexified curve.
//!
//! Integrals "along Γ_C" are taken in a chart coordinate `ζ` in which both
//! `z(ζ)` and `S(z(ζ))` are single-valued. Lines and circles use `ζ = z`.
//! The ellipse uses `z = d cosh ζ`, where `S = d cosh(ζ − 2ξ0)`; a straight
//! segment in `ζ` crosses the inter-focal cut exactly when the continuation
//! requires it.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::{ComplexPoint, Curve, Shape};
use crate::error::{Error, Result};
use crate::numerics::{integrate_path, IntegrationPath, DEFAULT_TOLERANCE};

/// A point of `Γ_C` together with its chart derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaPoint {
    pub z: Complex64,
    /// `S(z)` on the sheet reached along the path.
    pub s: Complex64,
    /// `dz/dζ`.
    pub dz: Complex64,
    /// `dS/dζ`; equals `S'(z) dz/dζ`.
    pub ds: Complex64,
}

impl Curve {
    /// Chart coordinate of `z`. For the ellipse the lift has `Re ζ > 0`.
    pub fn chart_lift(&self, z: Complex64) -> Result<Complex64> {
        match &self.shape {
            Shape::Ellipse(e) => {
                if e.on_cut(z) {
                    return Err(Error::BranchCutHit(z));
                }
                Ok(((z + e.root(z)) / e.d).ln())
            }
            _ => Ok(z),
        }
    }

    /// The point of `Γ_C` with chart coordinate `zeta`.
    pub fn chart_point(&self, zeta: Complex64) -> GammaPoint {
        match &self.shape {
            Shape::Line { m, q, .. } => GammaPoint {
                z: zeta,
                s: m * zeta + q,
                dz: Complex64::new(1.0, 0.0),
                ds: *m,
            },
            Shape::Circle { a } => GammaPoint {
                z: zeta,
                s: a * a / zeta,
                dz: Complex64::new(1.0, 0.0),
                ds: -a * a / (zeta * zeta),
            },
            Shape::Ellipse(e) => {
                let shifted = zeta - 2.0 * e.xi0;
                GammaPoint {
                    z: e.d * zeta.cosh(),
                    s: e.d * shifted.cosh(),
                    dz: e.d * zeta.sinh(),
                    ds: e.d * shifted.sinh(),
                }
            }
        }
    }

    /// `√S' · dz/dζ` with the branch of [`Curve::sqrt_schwarz_derivative`].
    ///
    /// For the ellipse this is single-valued on the strip `0 < Re ζ < 2ξ0`
    /// and vanishes at the foci, where `dz/dζ` does.
    pub fn chart_sqrt_sprime_dz(&self, zeta: Complex64) -> Result<Complex64> {
        match &self.shape {
            Shape::Line { normal, .. } => Ok(-Complex64::i() * normal.conj()),
            Shape::Circle { a } => {
                if zeta.norm() == 0.0 {
                    return Err(Error::OutOfDomain(zeta));
                }
                Ok(-Complex64::i() * *a / zeta)
            }
            Shape::Ellipse(e) => {
                if !(zeta.re > 0.0 && zeta.re < 2.0 * e.xi0) {
                    return Err(Error::OutOfDomain(e.d * zeta.cosh()));
                }
                let one = Complex64::new(1.0, 0.0);
                let outer = (one - (2.0 * zeta - 4.0 * e.xi0).exp()).sqrt();
                let inner = (one - (-2.0 * zeta).exp()).sqrt();
                Ok(-Complex64::i() * 0.5 * (e.a + e.b) * outer * inner)
            }
        }
    }

    /// The path on `Γ_C` from `(S̃(w0), w0)` to `(z0, S(z0))`.
    pub fn gamma_path(&self, p: ComplexPoint) -> Result<GammaPath> {
        self.gamma_path_with_tolerance(p, DEFAULT_TOLERANCE)
    }

    pub fn gamma_path_with_tolerance(&self, p: ComplexPoint, tolerance: f64) -> Result<GammaPath> {
        let (z0, w0) = (p.z, p.w);
        match &self.shape {
            Shape::Line { .. } => {
                let start = self.schwarz_inverse(w0)?;
                Ok(GammaPath {
                    curve: *self,
                    z0,
                    w0,
                    start_z: start,
                    end_s: self.schwarz(z0)?,
                    path: IntegrationPath::straight(start, z0).with_tolerance(tolerance),
                    in_strip: true,
                })
            }
            Shape::Circle { .. } => {
                let start = self.schwarz_inverse(w0)?;
                let end_s = self.schwarz(z0)?;
                let path = IntegrationPath::straight(start, z0)
                    .with_tolerance(tolerance)
                    .avoiding(&[], &self.singular_points(), self.scale());
                Ok(GammaPath {
                    curve: *self,
                    z0,
                    w0,
                    start_z: start,
                    end_s,
                    path,
                    in_strip: true,
                })
            }
            Shape::Ellipse(e) => {
                let end = self.chart_lift(z0)?;
                let lifted_w = self.chart_lift(w0)?;
                let mut start = 2.0 * e.xi0 - lifted_w;
                // cosh is 2πi-periodic; keep the segment as short as possible
                let turns = ((end.im - start.im) / (2.0 * PI)).round();
                start.im += 2.0 * PI * turns;
                let strip = |zeta: Complex64| zeta.re > 0.0 && zeta.re < 2.0 * e.xi0;
                let in_strip = strip(start) && strip(end);
                let start_pt = self.chart_point(start);
                let end_pt = self.chart_point(end);
                Ok(GammaPath {
                    curve: *self,
                    z0,
                    w0,
                    start_z: start_pt.z,
                    end_s: end_pt.s,
                    path: IntegrationPath::straight(start, end).with_tolerance(tolerance),
                    in_strip,
                })
            }
        }
    }
}

/// A chart-coordinate path joining the two Study-rectangle corners on `Γ_C`.
#[derive(Debug, Clone)]
pub struct GammaPath {
    curve: Curve,
    pub z0: Complex64,
    pub w0: Complex64,
    /// `S̃(w0)`, the starting `z` of the path.
    pub start_z: Complex64,
    /// `S(z0)`, the final `w` of the path.
    pub end_s: Complex64,
    /// The path in chart coordinates.
    pub path: IntegrationPath,
    in_strip: bool,
}

impl GammaPath {
    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    /// Whether the canonical `√S'` branch is defined along the whole path.
    pub fn supports_sqrt(&self) -> bool {
        self.in_strip
    }

    /// Fails with `OutOfDomain` unless `√S'` is available along the path.
    pub fn require_sqrt(&self) -> Result<()> {
        if self.in_strip {
            Ok(())
        } else {
            Err(Error::OutOfDomain(self.z0))
        }
    }

    /// `∫ f(ζ, point) dζ` along the chart path. The integrand must include
    /// the `dz/dζ` factor itself.
    pub fn integrate<F>(&self, mut f: F) -> Result<Complex64>
    where
        F: FnMut(Complex64, &GammaPoint) -> Result<Complex64>,
    {
        let curve = self.curve;
        integrate_path(|zeta| f(zeta, &curve.chart_point(zeta)), &self.path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ellipse_path_endpoints_lie_on_gamma_c() {
        let curve = Curve::ellipse(2.0, 1.0).unwrap();
        for (x, y) in [(3.0, 1.0), (6.0, -6.0), (0.3, 0.2), (-4.0, 0.0), (1.0, 1.0)] {
            let p = ComplexPoint::real(x, y);
            let path = curve.gamma_path(p).unwrap();
            let first = curve.chart_point(path.path.start());
            let last = curve.chart_point(path.path.end());
            assert!((first.z - path.start_z).norm() < 1e-12);
            assert!((first.s - p.w).norm() < 1e-12, "start w for {p:?}");
            assert!((last.z - p.z).norm() < 1e-12);
            assert!((last.s - curve.schwarz(p.z).unwrap()).norm() < 1e-12);
            // the starting point is the reflection of p
            let r = curve.schwarz(p.z).unwrap().conj();
            assert!((path.start_z - r).norm() < 1e-12);
        }
    }

    #[test]
    fn strip_membership() {
        let curve = Curve::ellipse(2.0, 1.0).unwrap();
        assert!(curve.gamma_path(ComplexPoint::real(2.5, 0.3)).unwrap().supports_sqrt());
        assert!(!curve.gamma_path(ComplexPoint::real(6.0, 0.3)).unwrap().supports_sqrt());
    }

    #[test]
    fn chart_sqrt_matches_derivative() {
        let curve = Curve::ellipse(3.0, 1.2).unwrap();
        for zeta in [Complex64::new(0.5, 0.3), Complex64::new(0.1, -2.0), Complex64::new(0.8, 3.0)] {
            let pt = curve.chart_point(zeta);
            let r = curve.chart_sqrt_sprime_dz(zeta).unwrap();
            // (√S' dz)² = S' dz² = ds·dz
            assert!((r * r - pt.ds * pt.dz).norm() < 1e-12 * (1.0 + (pt.ds * pt.dz).norm()));
        }
    }
}
