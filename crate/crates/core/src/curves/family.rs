//! Time-parameterized curve families and their rate laws.
//!
//! The semi-axis `a(t)` (or the radius) moves linearly from its value at
//! `t = 0`, unless the rate law says otherwise: a gap-driven circle keeps
//! `a² h` fixed for a linearly changing gap `h(t)`, and a gap-driven confocal
//! ellipse keeps `a b h` fixed.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Curve, Shape};
use crate::error::{Error, Result};

/// Shape of the family at `t = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilyShape {
    Circle { a: f64 },
    Ellipse { a: f64, b: f64 },
    /// Ellipses with fixed half inter-focal distance `d0`.
    ConfocalEllipse { d0: f64, a: f64 },
}

/// How the family moves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RateLaw {
    /// Constant `ȧ`; ellipses also need `ḃ`, confocal ellipses derive it.
    Prescribed {
        a_dot: f64,
        #[serde(default)]
        b_dot: Option<f64>,
    },
    /// `a/b` stays at its initial value.
    ConstantEccentricity { a_dot: f64 },
    /// `a b` stays at its initial value.
    ConstantArea { a_dot: f64 },
    /// The enclosed volume `A h` is conserved while the gap moves linearly,
    /// `h(t) = h0 + ḣ t`.
    GapConservation { h0: f64, h_dot: f64 },
}

/// A family of curves `Γ(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MovingFamily {
    pub shape: FamilyShape,
    pub law: RateLaw,
}

/// Snapshot of a family at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyState {
    pub t: f64,
    pub curve: Curve,
    pub a: f64,
    pub b: f64,
    pub a_dot: f64,
    pub b_dot: f64,
    /// `(h, ḣ)` when the motion is gap-driven.
    pub gap: Option<(f64, f64)>,
}

impl FamilyState {
    /// `A'/A` for the enclosed area `A = π a b`.
    pub fn relative_area_rate(&self) -> f64 {
        self.a_dot / self.a + self.b_dot / self.b
    }

    /// `∂t(ab)`.
    pub fn area_product_rate(&self) -> f64 {
        self.a_dot * self.b + self.a * self.b_dot
    }

    pub fn is_circle(&self) -> bool {
        matches!(self.curve.shape, Shape::Circle { .. })
    }

    /// Coefficients of the ellipse Schwarz function `S = (P z − Q r)/D`
    /// and their time derivatives.
    fn ellipse_coefficients(&self) -> EllipseRates {
        let (a, b, ad, bd) = (self.a, self.b, self.a_dot, self.b_dot);
        EllipseRates {
            p: a * a + b * b,
            q: 2.0 * a * b,
            d2: a * a - b * b,
            p_dot: 2.0 * (a * ad + b * bd),
            q_dot: 2.0 * (ad * b + a * bd),
            d2_dot: 2.0 * (a * ad - b * bd),
        }
    }

    /// `Ṡ(z, t)` in closed form.
    pub fn schwarz_time_derivative(&self, z: Complex64) -> Result<Complex64> {
        match &self.curve.shape {
            Shape::Circle { a } => {
                if z.norm() == 0.0 {
                    return Err(Error::OutOfDomain(z));
                }
                Ok(2.0 * a * self.a_dot / z)
            }
            Shape::Ellipse(e) => {
                if e.on_cut(z) {
                    return Err(Error::BranchCutHit(z));
                }
                let c = self.ellipse_coefficients();
                if c.d2_dot != 0.0 && e.near_focus(z) {
                    return Err(Error::SingularPoint(z));
                }
                let r = e.root(z);
                let s = (c.p * z - c.q * r) / c.d2;
                Ok((c.p_dot * z - c.q_dot * r + c.q * c.d2_dot / (2.0 * r) - s * c.d2_dot) / c.d2)
            }
            Shape::Line { .. } => Ok(Complex64::new(0.0, 0.0)),
        }
    }

    /// `Ṡ · dz/dζ` at chart coordinate `zeta`; finite at the foci.
    pub fn chart_sdot_dz(&self, zeta: Complex64) -> Result<Complex64> {
        match &self.curve.shape {
            Shape::Circle { a } => {
                if zeta.norm() == 0.0 {
                    return Err(Error::OutOfDomain(zeta));
                }
                Ok(2.0 * a * self.a_dot / zeta)
            }
            Shape::Ellipse(e) => {
                let c = self.ellipse_coefficients();
                let z = e.d * zeta.cosh();
                let r = e.d * zeta.sinh();
                let s = e.d * (zeta - 2.0 * e.xi0).cosh();
                Ok(((c.p_dot * z - c.q_dot * r - s * c.d2_dot) * r + 0.5 * c.q * c.d2_dot) / c.d2)
            }
            Shape::Line { .. } => Ok(Complex64::new(0.0, 0.0)),
        }
    }
}

struct EllipseRates {
    p: f64,
    q: f64,
    d2: f64,
    p_dot: f64,
    q_dot: f64,
    d2_dot: f64,
}

impl MovingFamily {
    pub fn new(shape: FamilyShape, law: RateLaw) -> Result<Self> {
        let family = Self { shape, law };
        family.state(0.0)?;
        Ok(family)
    }

    /// Shorthand for a circle with constant `ȧ`.
    pub fn circle(a: f64, a_dot: f64) -> Result<Self> {
        Self::new(
            FamilyShape::Circle { a },
            RateLaw::Prescribed { a_dot, b_dot: None },
        )
    }

    /// The family at time `t`.
    pub fn state(&self, t: f64) -> Result<FamilyState> {
        let mismatch = || {
            Error::ScenarioMismatch(format!(
                "rate law {:?} does not apply to {:?}",
                self.law, self.shape
            ))
        };
        let (a, b, a_dot, b_dot, gap) = match (self.shape, self.law) {
            (FamilyShape::Circle { a }, RateLaw::Prescribed { a_dot, .. }) => {
                let a = a + a_dot * t;
                (a, a, a_dot, a_dot, None)
            }
            (FamilyShape::Circle { a }, RateLaw::GapConservation { h0, h_dot }) => {
                let h = gap_width(h0, h_dot, t)?;
                let a = a * (h0 / h).sqrt();
                let a_dot = -a * h_dot / (2.0 * h);
                (a, a, a_dot, a_dot, Some((h, h_dot)))
            }
            (FamilyShape::Circle { .. }, _) => return Err(mismatch()),
            (FamilyShape::Ellipse { a, b }, law) => {
                let a0 = a;
                let b0 = b;
                match law {
                    RateLaw::Prescribed { a_dot, b_dot } => {
                        let b_dot = b_dot.ok_or_else(|| {
                            Error::RateLawUnderdetermined(
                                "ellipse family needs both a_dot and b_dot".into(),
                            )
                        })?;
                        (a0 + a_dot * t, b0 + b_dot * t, a_dot, b_dot, None)
                    }
                    RateLaw::ConstantEccentricity { a_dot } => {
                        let ratio = a0 / b0;
                        let a = a0 + a_dot * t;
                        (a, a / ratio, a_dot, a_dot / ratio, None)
                    }
                    RateLaw::ConstantArea { a_dot } => {
                        let area = a0 * b0;
                        let a = a0 + a_dot * t;
                        (a, area / a, a_dot, -area * a_dot / (a * a), None)
                    }
                    RateLaw::GapConservation { .. } => {
                        return Err(Error::RateLawUnderdetermined(
                            "a gap law alone does not fix the shape of a free ellipse".into(),
                        ))
                    }
                }
            }
            (FamilyShape::ConfocalEllipse { d0, a }, law) => {
                if !(d0 > 0.0) {
                    return Err(Error::InvalidCurve(format!("confocal family needs d0 > 0, got {d0}")));
                }
                match law {
                    RateLaw::Prescribed { a_dot, b_dot: None } => {
                        let a = a + a_dot * t;
                        let b = confocal_minor(a, d0)?;
                        (a, b, a_dot, a * a_dot / b, None)
                    }
                    RateLaw::GapConservation { h0, h_dot } => {
                        let h = gap_width(h0, h_dot, t)?;
                        let b0 = confocal_minor(a, d0)?;
                        // a² (a² − d0²) = (a0 b0 h0 / h)²
                        let k = a * b0 * h0 / h;
                        let a2 = 0.5 * (d0 * d0 + (d0.powi(4) + 4.0 * k * k).sqrt());
                        let a_t = a2.sqrt();
                        let b_t = confocal_minor(a_t, d0)?;
                        // d(ab)/dt = −ab ḣ/h with ḃ = a ȧ / b
                        let a_dot = -(a_t * b_t) * h_dot / h / (b_t + a_t * a_t / b_t);
                        (a_t, b_t, a_dot, a_t * a_dot / b_t, Some((h, h_dot)))
                    }
                    _ => return Err(mismatch()),
                }
            }
        };
        let curve = match self.shape {
            FamilyShape::Circle { .. } => Curve::circle(a)?,
            _ => Curve::ellipse(a, b)?,
        };
        Ok(FamilyState {
            t,
            curve,
            a,
            b,
            a_dot,
            b_dot,
            gap,
        })
    }

    /// `Ṡ(z, t)` from the closed form of the family's Schwarz function.
    pub fn schwarz_time_derivative(&self, z: Complex64, t: f64) -> Result<Complex64> {
        self.state(t)?.schwarz_time_derivative(z)
    }

    /// `Ṡ(z, t)` by a central difference in `t` with step `max(1e-6, 1e-6 |t|)`.
    pub fn schwarz_time_derivative_fd(&self, z: Complex64, t: f64) -> Result<Complex64> {
        let dt = (1e-6 * t.abs()).max(1e-6);
        let plus = self.state(t + dt)?.curve.schwarz(z)?;
        let minus = self.state(t - dt)?.curve.schwarz(z)?;
        Ok((plus - minus) / (2.0 * dt))
    }

    /// `v_n = −i Ṡ / (2 √S')` at a point of `Γ(t)`.
    pub fn normal_velocity_raw(&self, z: Complex64, t: f64) -> Result<Complex64> {
        let state = self.state(t)?;
        let sdot = state.schwarz_time_derivative(z)?;
        let root = state.curve.sqrt_schwarz_derivative(z)?;
        Ok(-Complex64::i() * sdot / (2.0 * root))
    }

    pub fn is_circle(&self) -> bool {
        matches!(self.shape, FamilyShape::Circle { .. })
    }
}

fn gap_width(h0: f64, h_dot: f64, t: f64) -> Result<f64> {
    let h = h0 + h_dot * t;
    if !(h > 0.0) {
        return Err(Error::ScenarioMismatch(format!("gap width must stay positive, h({t}) = {h}")));
    }
    Ok(h)
}

fn confocal_minor(a: f64, d0: f64) -> Result<f64> {
    if !(a > d0) {
        return Err(Error::InvalidCurve(format!("confocal ellipse needs a > d0, got a = {a}, d0 = {d0}")));
    }
    Ok((a * a - d0 * d0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_sdot() {
        let fam = MovingFamily::circle(1.0, 1.0).unwrap();
        let v = fam.schwarz_time_derivative(Complex64::new(2.0, 0.0), 0.0).unwrap();
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn rate_law_invariants() {
        let ecc = MovingFamily::new(
            FamilyShape::Ellipse { a: 2.0, b: 1.0 },
            RateLaw::ConstantEccentricity { a_dot: 0.2 },
        )
        .unwrap();
        let area = MovingFamily::new(
            FamilyShape::Ellipse { a: 2.0, b: 1.0 },
            RateLaw::ConstantArea { a_dot: 0.1 },
        )
        .unwrap();
        let conf = MovingFamily::new(
            FamilyShape::ConfocalEllipse { d0: 3f64.sqrt(), a: 2.0 },
            RateLaw::Prescribed { a_dot: 0.1, b_dot: None },
        )
        .unwrap();
        let gap = MovingFamily::new(
            FamilyShape::Circle { a: 1.0 },
            RateLaw::GapConservation { h0: 1.0, h_dot: -0.4 },
        )
        .unwrap();
        for t in [0.0, 0.3, 1.1] {
            let s = ecc.state(t).unwrap();
            assert!((s.a / s.b - 2.0).abs() < 1e-14);
            let s = area.state(t).unwrap();
            assert!((s.a * s.b - 2.0).abs() < 1e-14);
            assert!(s.area_product_rate().abs() < 1e-14);
            let s = conf.state(t).unwrap();
            assert!(((s.a * s.a - s.b * s.b).sqrt() - 3f64.sqrt()).abs() < 1e-14);
            let s = gap.state(t).unwrap();
            let (h, h_dot) = s.gap.unwrap();
            assert!((2.0 * s.a_dot + h_dot * s.a / h).abs() < 1e-14);
        }
    }

    #[test]
    fn confocal_gap_conserves_volume() {
        let fam = MovingFamily::new(
            FamilyShape::ConfocalEllipse { d0: 1.0, a: 2.0 },
            RateLaw::GapConservation { h0: 1.0, h_dot: 0.25 },
        )
        .unwrap();
        let s0 = fam.state(0.0).unwrap();
        for t in [0.5, 1.0, 2.0] {
            let s = fam.state(t).unwrap();
            let (h, h_dot) = s.gap.unwrap();
            assert!((s.a * s.b * h - s0.a * s0.b).abs() < 1e-12);
            assert!((s.relative_area_rate() + h_dot / h).abs() < 1e-12);
        }
    }

    #[test]
    fn invalid_combinations() {
        assert!(MovingFamily::new(
            FamilyShape::Ellipse { a: 2.0, b: 1.0 },
            RateLaw::Prescribed { a_dot: 1.0, b_dot: None }
        )
        .is_err());
        assert!(MovingFamily::new(
            FamilyShape::Circle { a: 1.0 },
            RateLaw::ConstantArea { a_dot: 1.0 }
        )
        .is_err());
    }
}
