//! Pressure fields of Hele-Shaw flows with moving boundaries.
//!
//! The fluid velocity is `−k ∇p` and the boundary `Γ(t)` moves with normal
//! speed `v_n = −i Ṡ / (2 √S')`. With `p = φ` on `Γ`, the kinematic condition
//! fixes `∂p/∂n = −v_n / k`, and the Cauchy representation turns that data
//! into an integral of `Ṡ` along `Γ_C`.
//!
//! When the plate gap `h(t)` also moves, `Δp = ḣ/(k h)` and the pressure
//! splits into a quadratic particular part and a harmonic remainder.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

use crate::curves::{ComplexPoint, FamilyShape, FamilyState, MovingFamily, RateLaw};
use crate::error::{Error, Result};
use crate::numerics::{integrate_path, IntegrationPath};
use crate::reflection::AnalyticDatum;

/// Gap width and its rate at the instant of interest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapLaw {
    pub h: f64,
    pub h_dot: f64,
}

/// Physical parameters of a Hele-Shaw cell.
#[derive(Debug, Clone)]
pub struct HeleShawParams {
    /// Mobility `k = h²/(12 μ)`.
    pub k: f64,
    /// Boundary pressure continued to `(z, w)`; zero when absent.
    pub surface_tension_phi: Option<AnalyticDatum>,
    /// Overrides the gap motion implied by the family's rate law.
    pub gap_law: Option<GapLaw>,
}

impl HeleShawParams {
    pub fn new(k: f64) -> Result<Self> {
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::ScenarioMismatch(format!("mobility k must be positive, got {k}")));
        }
        Ok(Self {
            k,
            surface_tension_phi: None,
            gap_law: None,
        })
    }

    pub fn with_surface_tension(mut self, phi: AnalyticDatum) -> Self {
        self.surface_tension_phi = Some(phi);
        self
    }

    pub fn with_gap(mut self, h: f64, h_dot: f64) -> Result<Self> {
        if !(h > 0.0) {
            return Err(Error::ScenarioMismatch(format!("gap width must be positive, got {h}")));
        }
        self.gap_law = Some(GapLaw { h, h_dot });
        Ok(self)
    }

    fn corner_terms(&self, start_z: Complex64, w0: Complex64, z0: Complex64, end_s: Complex64) -> Complex64 {
        match &self.surface_tension_phi {
            Some(phi) => 0.5 * (phi.eval(start_z, w0) + phi.eval(z0, end_s)),
            None => Complex64::new(0.0, 0.0),
        }
    }
}

/// Constant boundary pressure `γ/a` for surface tension `γ` on a circle of radius `a`.
pub fn circle_surface_tension(gamma: f64, a: f64) -> AnalyticDatum {
    AnalyticDatum::constant(crate::reflection::DatumKind::Dirichlet, gamma / a)
}

/// Profile of an inter-focal source density `μ(x)` on `(−d, d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DensityProfile {
    /// `μ = c / √(d² − x²)`.
    InverseRoot { c: f64 },
    /// `μ = c (2x² − d²) / √(d² − x²)`.
    SignChanging { c: f64 },
}

impl DensityProfile {
    /// `μ(x) √(d² − x²)`, which stays bounded at the foci.
    fn weighted(&self, x: f64, d: f64) -> f64 {
        match *self {
            DensityProfile::InverseRoot { c } => c,
            DensityProfile::SignChanging { c } => c * (2.0 * x * x - d * d),
        }
    }
}

/// Singularities that drive the pressure field.
///
/// Strengths are fluxes: near a point source `p ≈ −(s / 2πk) ln|z − z_s|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SourceStructure {
    PointLog { location: Complex64, strength: f64 },
    InterfocalDensity { d: f64, profile: DensityProfile },
    InfinityLog { strength: f64 },
}

impl SourceStructure {
    /// `μ(x)` for an inter-focal density.
    pub fn density(&self, x: f64) -> Result<f64> {
        match self {
            SourceStructure::InterfocalDensity { d, profile } => {
                if !(x.abs() < *d) {
                    return Err(Error::OutOfSupport { x, d: *d });
                }
                Ok(profile.weighted(x, *d) / (d * d - x * x).sqrt())
            }
            _ => Err(Error::ScenarioMismatch("not an inter-focal density".into())),
        }
    }
}

/// The sources and sinks producing the sink/source pressure of `family` at `t`.
pub fn source_structure(family: &MovingFamily, t: f64, params: &HeleShawParams) -> Result<Vec<SourceStructure>> {
    let state = family.state(t)?;
    let flux = PI * state.area_product_rate();
    if state.is_circle() {
        return Ok(vec![
            SourceStructure::PointLog {
                location: Complex64::new(0.0, 0.0),
                strength: flux,
            },
            SourceStructure::InfinityLog { strength: flux },
        ]);
    }
    let (a, b) = (state.a, state.b);
    let d2 = a * a - b * b;
    let d = d2.sqrt();
    let d2_dot = 2.0 * (a * state.a_dot - b * state.b_dot);
    let k = params.k;
    match family.law {
        RateLaw::ConstantEccentricity { .. } => Ok(vec![
            SourceStructure::InterfocalDensity {
                d,
                profile: DensityProfile::InverseRoot {
                    c: a * b * d2_dot / (d2 * k),
                },
            },
            SourceStructure::InfinityLog { strength: flux },
        ]),
        RateLaw::ConstantArea { .. } => Ok(vec![SourceStructure::InterfocalDensity {
            d,
            profile: DensityProfile::SignChanging {
                c: a * b * d2_dot / (k * d2 * d2),
            },
        }]),
        _ => Err(Error::ScenarioMismatch(format!(
            "inter-focal densities are available for constant-eccentricity and constant-area ellipses, not {:?}",
            family.law
        ))),
    }
}

fn real_or_err(v: Complex64) -> Result<f64> {
    if !v.is_finite() || v.im.abs() > 1e-8 * (1.0 + v.re.abs()) {
        return Err(Error::NonRealResult(v));
    }
    Ok(v.re)
}

/// Pressure at `p` for a family moved by sources and sinks alone.
pub fn pressure_sink_source(
    family: &MovingFamily,
    t: f64,
    params: &HeleShawParams,
    p: ComplexPoint,
) -> Result<f64> {
    let state = family.state(t)?;
    let path = state.curve.gamma_path(p)?;
    let corners = params.corner_terms(path.start_z, p.w, p.z, path.end_s);
    let integral = path.integrate(|zeta, _| state.chart_sdot_dz(zeta))?;
    real_or_err(corners - integral / (4.0 * params.k))
}

/// `ḣ/h` at time `t`.
///
/// Taken from the explicit gap law when present, then from a gap-driven rate
/// law, and for a confocal family from conservation of `A h`.
pub fn gap_rate(family: &MovingFamily, state: &FamilyState, params: &HeleShawParams) -> Result<f64> {
    if let Some(g) = params.gap_law {
        return Ok(g.h_dot / g.h);
    }
    if let Some((h, h_dot)) = state.gap {
        return Ok(h_dot / h);
    }
    if matches!(family.shape, FamilyShape::ConfocalEllipse { .. }) {
        return Ok(-state.relative_area_rate());
    }
    Err(Error::RateLawUnderdetermined(
        "the gap rate is not fixed by the parameters or the rate law".into(),
    ))
}

/// The harmonic part `p_h = p − (ḣ/4kh)(x² + y²)` of the gap-driven pressure.
pub fn gap_homogeneous_pressure(
    family: &MovingFamily,
    t: f64,
    params: &HeleShawParams,
    p: ComplexPoint,
) -> Result<f64> {
    let state = family.state(t)?;
    let rate = gap_rate(family, &state, params)?;
    let path = state.curve.gamma_path(p)?;
    let corners = params.corner_terms(path.start_z, p.w, p.z, path.end_s);
    let integral = path.integrate(|zeta, pt| Ok(state.chart_sdot_dz(zeta)? + rate * pt.s * pt.dz))?;
    let k = params.k;
    let quadratic = -rate / (4.0 * k) * p.w * path.start_z;
    real_or_err(corners + quadratic - integral / (4.0 * k))
}

/// Pressure at `p` when the gap between the plates changes.
pub fn pressure_gap(family: &MovingFamily, t: f64, params: &HeleShawParams, p: ComplexPoint) -> Result<f64> {
    let state = family.state(t)?;
    let rate = gap_rate(family, &state, params)?;
    let homogeneous = gap_homogeneous_pressure(family, t, params, p)?;
    Ok(homogeneous + rate / (4.0 * params.k) * (p.z * p.w).re)
}

/// `Ṡ(s) + (ḣ/h) S(s)`, the integrand of the gap pressure.
pub fn gap_integrand(family: &MovingFamily, t: f64, params: &HeleShawParams, s: Complex64) -> Result<Complex64> {
    let state = family.state(t)?;
    let rate = gap_rate(family, &state, params)?;
    Ok(state.schwarz_time_derivative(s)? + rate * state.curve.schwarz(s)?)
}

/// Normal speed of `Γ(t)` at a point `z` on it.
pub fn normal_velocity(family: &MovingFamily, t: f64, z: Complex64) -> Result<f64> {
    let state = family.state(t)?;
    let s = state.curve.schwarz(z)?;
    if (s - z.conj()).norm() > 1e-10 * (1.0 + z.norm()) {
        return Err(Error::OutOfDomain(z));
    }
    let v = family.normal_velocity_raw(z, t)?;
    if v.im.abs() > 1e-10 * (1.0 + v.re.abs()) {
        return Err(Error::NonRealResult(v));
    }
    Ok(v.re)
}

/// Source density on the inter-focal segment at `x`.
pub fn interfocal_density(family: &MovingFamily, t: f64, params: &HeleShawParams, x: f64) -> Result<f64> {
    let sources = source_structure(family, t, params)?;
    sources
        .iter()
        .find(|s| matches!(s, SourceStructure::InterfocalDensity { .. }))
        .ok_or_else(|| Error::ScenarioMismatch("family has no inter-focal density".into()))?
        .density(x)
}

/// `(∫ k μ dx, π ∂t(ab))`: the flux out of the inter-focal segment and the
/// rate of change of the enclosed area.
pub fn flux_balance(family: &MovingFamily, t: f64, params: &HeleShawParams) -> Result<(f64, f64)> {
    let state = family.state(t)?;
    let sources = source_structure(family, t, params)?;
    let (d, profile) = sources
        .iter()
        .find_map(|s| match s {
            SourceStructure::InterfocalDensity { d, profile } => Some((*d, *profile)),
            _ => None,
        })
        .ok_or_else(|| Error::ScenarioMismatch("family has no inter-focal density".into()))?;
    // x = d sin θ absorbs the inverse square root at the foci
    let flux = integrate_path(
        |theta| Ok(Complex64::new(params.k * profile.weighted(d * theta.re.sin(), d), 0.0)),
        &IntegrationPath::straight(Complex64::new(-FRAC_PI_2, 0.0), Complex64::new(FRAC_PI_2, 0.0)),
    )?;
    Ok((flux.re, PI * state.area_product_rate()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn static_circle_has_zero_pressure() {
        let fam = MovingFamily::circle(1.0, 0.0).unwrap();
        let params = HeleShawParams::new(1.0).unwrap();
        let p = pressure_sink_source(&fam, 0.0, &params, ComplexPoint::real(2.0, 1.0)).unwrap();
        assert_eq!(p, 0.0);
    }

    #[test]
    fn surface_tension_shifts_pressure() {
        let fam = MovingFamily::circle(2.0, 0.0).unwrap();
        let params = HeleShawParams::new(1.0)
            .unwrap()
            .with_surface_tension(circle_surface_tension(0.5, 2.0));
        let p = pressure_sink_source(&fam, 0.0, &params, ComplexPoint::real(3.0, 0.0)).unwrap();
        assert!((p - 0.25).abs() < 1e-14);
    }

    #[test]
    fn invalid_parameters() {
        assert!(HeleShawParams::new(0.0).is_err());
        assert!(HeleShawParams::new(1.0).unwrap().with_gap(-1.0, 0.0).is_err());
    }

    #[test]
    fn density_support() {
        let fam = MovingFamily::new(
            FamilyShape::Ellipse { a: 2.0, b: 1.0 },
            RateLaw::ConstantEccentricity { a_dot: 1.0 },
        )
        .unwrap();
        let params = HeleShawParams::new(1.0).unwrap();
        let d = 3f64.sqrt();
        assert!(matches!(
            interfocal_density(&fam, 0.0, &params, d),
            Err(Error::OutOfSupport { .. })
        ));
        assert!(interfocal_density(&fam, 0.0, &params, 0.0).unwrap() > 0.0);
    }

    #[test]
    fn circle_has_no_interfocal_density() {
        let fam = MovingFamily::circle(1.0, 1.0).unwrap();
        let params = HeleShawParams::new(1.0).unwrap();
        assert!(matches!(flux_balance(&fam, 0.0, &params), Err(Error::ScenarioMismatch(_))));
    }

    #[test]
    fn normal_velocity_needs_boundary_point() {
        let fam = MovingFamily::circle(1.0, 1.0).unwrap();
        assert!((normal_velocity(&fam, 0.0, Complex64::new(0.0, 1.0)).unwrap() - 1.0).abs() < 1e-12);
        assert!(matches!(
            normal_velocity(&fam, 0.0, Complex64::new(2.0, 0.0)),
            Err(Error::OutOfDomain(_))
        ));
    }
}
