//! Turns a validated config into a pressure or solution field at one instant.

use schwarz_core::cauchy_rep::{solve_cauchy_helmholtz, solve_cauchy_laplace};
use schwarz_core::heleshaw::{pressure_gap, pressure_sink_source};
use schwarz_core::reflection::DatumKind;
use schwarz_core::verify::{boundary_check, kinematic_check, VerificationReport};
use schwarz_core::{
    growth_pressure, AnalyticDatum, CauchyData, ComplexPoint, Complex64, Curve, CurveKind, Error, GrowthScenario,
    HeleShawParams, MovingFamily, Result,
};

use crate::config::{DemoDatum, ScenarioConfig, ScenarioKind, VerificationKind};
use crate::error::CliResult;

const BOUNDARY_SAMPLES: usize = 16;
const DEFAULT_VERIFY_TOLERANCE: f64 = 1e-5;

/// Where the field is singular by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SingularSupport {
    None,
    Point(Complex64),
    /// The segment `[−d, d]` of the real axis.
    Segment(f64),
}

impl SingularSupport {
    pub fn of(curve: &Curve) -> Self {
        match curve.kind() {
            CurveKind::Line { .. } => SingularSupport::None,
            CurveKind::Circle { .. } => SingularSupport::Point(Complex64::new(0.0, 0.0)),
            CurveKind::Ellipse { a, b } => SingularSupport::Segment((a * a - b * b).sqrt()),
        }
    }

    pub fn distance(&self, x: f64, y: f64) -> f64 {
        match *self {
            SingularSupport::None => f64::INFINITY,
            SingularSupport::Point(c) => (Complex64::new(x, y) - c).norm(),
            SingularSupport::Segment(d) => {
                let dx = (x.abs() - d).max(0.0);
                dx.hypot(y)
            }
        }
    }
}

type Holomorphic = Box<dyn Fn(Complex64, Complex64) -> Complex64 + Send + Sync>;

type FieldFn = Box<dyn Fn(f64, f64) -> Result<f64> + Send + Sync>;

pub struct Field {
    pub eval: FieldFn,
    pub support: SingularSupport,
    curve: Curve,
    family: Option<MovingFamily>,
    params: HeleShawParams,
    data: Option<CauchyData>,
    t: f64,
}

fn real_part(v: Complex64) -> Result<f64> {
    if !v.is_finite() || v.im.abs() > 1e-8 * (1.0 + v.re.abs()) {
        return Err(Error::NonRealResult(v));
    }
    Ok(v.re)
}

/// Dirichlet and Neumann data of the manufactured solution on `curve`.
pub fn demo_data(datum: DemoDatum, lambda: f64, curve: Curve) -> CauchyData {
    let (u, uz, uw): (Holomorphic, Holomorphic, Holomorphic) = match datum {
        DemoDatum::Monomial { re, im, n } => {
            let k = Complex64::new(re, im);
            let nf = n as f64;
            (
                Box::new(move |z, w| 0.5 * (k * z.powi(n) + k.conj() * w.powi(n))),
                Box::new(move |z, _| 0.5 * k * nf * z.powi(n - 1)),
                Box::new(move |_, w| 0.5 * k.conj() * nf * w.powi(n - 1)),
            )
        }
        DemoDatum::Cosine => (
            Box::new(move |z, w| (lambda * (z + w) * 0.5).cos()),
            Box::new(move |z, w| -0.5 * lambda * (lambda * (z + w) * 0.5).sin()),
            Box::new(move |z, w| -0.5 * lambda * (lambda * (z + w) * 0.5).sin()),
        ),
    };
    let phi = AnalyticDatum::new(DatumKind::Dirichlet, u);
    let psi = AnalyticDatum::new(DatumKind::Neumann, move |z, w| {
        let (Ok(root), Ok(sp)) = (curve.sqrt_schwarz_derivative(z), curve.schwarz_derivative(z)) else {
            return Complex64::new(f64::NAN, f64::NAN);
        };
        -Complex64::i() / root * (uz(z, w) - uw(z, w) * sp)
    });
    CauchyData::new(phi, psi)
}

impl Field {
    pub fn build(config: &ScenarioConfig, t: f64) -> CliResult<Self> {
        let physics = config.physics;
        if config.scenario == ScenarioKind::CauchyDemo {
            let curve = config.curve.expect("validated").build()?;
            let data = demo_data(config.datum.expect("validated"), physics.lambda, curve);
            let lambda = physics.lambda;
            let solve_data = data.clone();
            let eval: FieldFn = Box::new(move |x, y| {
                let p = ComplexPoint::real(x, y);
                let v = if lambda == 0.0 {
                    solve_cauchy_laplace(&curve, &solve_data, p)?
                } else {
                    solve_cauchy_helmholtz(&curve, &solve_data, lambda, p)?
                };
                real_part(v)
            });
            return Ok(Self {
                eval,
                support: SingularSupport::of(&curve),
                curve,
                family: None,
                params: config.params()?,
                data: Some(data),
                t,
            });
        }

        let family = config.family()?;
        let params = config.params()?;
        let curve = family.state(t)?.curve;
        let eval: FieldFn = match config.scenario {
            ScenarioKind::SinkSource => {
                let params = params.clone();
                Box::new(move |x, y| pressure_sink_source(&family, t, &params, ComplexPoint::real(x, y)))
            }
            ScenarioKind::Gap => {
                let params = params.clone();
                Box::new(move |x, y| pressure_gap(&family, t, &params, ComplexPoint::real(x, y)))
            }
            ScenarioKind::EllipticGrowth => {
                let scenario = GrowthScenario::helmholtz(family, physics.k, physics.lambda)?;
                Box::new(move |x, y| growth_pressure(&scenario, t, ComplexPoint::real(x, y)))
            }
            ScenarioKind::CauchyDemo => unreachable!(),
        };
        Ok(Self {
            eval,
            support: SingularSupport::of(&curve),
            curve,
            family: Some(family),
            params,
            data: None,
            t,
        })
    }

    pub fn verify(&self, kind: VerificationKind, tolerance: Option<f64>) -> VerificationReport {
        let tol = tolerance.unwrap_or(DEFAULT_VERIFY_TOLERANCE);
        let field = |x: f64, y: f64| (self.eval)(x, y);
        let (name, outcome) = match kind {
            VerificationKind::Kinematic => {
                let name = format!("kinematic.t={}", self.t);
                let family = self.family.as_ref().expect("validated");
                (name.clone(), kinematic_check(&name, family, &field, self.t, &self.params, BOUNDARY_SAMPLES, tol))
            }
            VerificationKind::Boundary => {
                let name = format!("boundary.t={}", self.t);
                let zero = AnalyticDatum::zero(DatumKind::Dirichlet);
                let (phi, psi) = match &self.data {
                    Some(d) => (&d.phi, Some(&d.psi)),
                    None => (self.params.surface_tension_phi.as_ref().unwrap_or(&zero), None),
                };
                (name.clone(), boundary_check(&name, &field, &self.curve, phi, psi, BOUNDARY_SAMPLES, tol))
            }
        };
        outcome.unwrap_or_else(|e| VerificationReport::errored(name, tol, &e))
    }
}
