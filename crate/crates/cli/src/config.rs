//! Scenario configuration files.
//!
//! A config is a single JSON object, for instance
//!
//! ```json
//! {
//!   "scenario": "sink_source",
//!   "family": { "shape": { "kind": "circle", "a": 1.0 },
//!               "law": { "kind": "prescribed", "a_dot": 1.0 } },
//!   "physics": { "k": 1.0 },
//!   "t": 0.0,
//!   "grid": { "x_min": -3, "x_max": 3, "y_min": -3, "y_max": 3, "nx": 50, "ny": 50 },
//!   "exclusion_radius": 0.1,
//!   "outputs": ["field_csv", "report_json"]
//! }
//! ```

use std::path::Path;

use schwarz_core::heleshaw::gap_rate;
use schwarz_core::{Curve, FamilyShape, HeleShawParams, MovingFamily};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    SinkSource,
    Gap,
    EllipticGrowth,
    CauchyDemo,
}

/// Fixed curve for `cauchy_demo`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CurveSpec {
    /// `alpha x + beta y + delta = 0`.
    Line { alpha: f64, beta: f64, delta: f64 },
    Circle { a: f64 },
    Ellipse { a: f64, b: f64 },
}

impl CurveSpec {
    pub fn build(&self) -> schwarz_core::Result<Curve> {
        match *self {
            CurveSpec::Line { alpha, beta, delta } => Curve::line(alpha, beta, delta),
            CurveSpec::Circle { a } => Curve::circle(a),
            CurveSpec::Ellipse { a, b } => Curve::ellipse(a, b),
        }
    }
}

/// Manufactured solution whose Cauchy data drive `cauchy_demo`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DemoDatum {
    /// `u = Re((re + i im) zⁿ)`.
    Monomial { re: f64, im: f64, n: i32 },
    /// `u = cos(λ x)` with `λ` from the physics block.
    Cosine,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Physics {
    #[serde(default = "unit")]
    pub k: f64,
    #[serde(default)]
    pub gamma: f64,
    #[serde(default)]
    pub lambda: f64,
    #[serde(default)]
    pub h: Option<f64>,
    #[serde(default)]
    pub h_dot: Option<f64>,
}

fn unit() -> f64 {
    1.0
}

impl Default for Physics {
    fn default() -> Self {
        Self {
            k: 1.0,
            gamma: 0.0,
            lambda: 0.0,
            h: None,
            h_dot: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
}

impl GridSpec {
    /// Points in row-major order from `(x_min, y_min)`, `x` varying fastest.
    pub fn points(&self) -> Vec<(f64, f64)> {
        let dx = (self.x_max - self.x_min) / (self.nx - 1) as f64;
        let dy = (self.y_max - self.y_min) / (self.ny - 1) as f64;
        (0..self.ny)
            .flat_map(|j| (0..self.nx).map(move |i| (self.x_min + i as f64 * dx, self.y_min + j as f64 * dy)))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputKind {
    FieldCsv,
    DensityCsv,
    ReportJson,
}

/// Checks attached to a run; their reports go into the JSON report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerificationKind {
    /// `−k ∂p/∂n` against the normal velocity of the family.
    Kinematic,
    /// Trace and normal derivative against the boundary data.
    Boundary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scenario: ScenarioKind,
    #[serde(default)]
    pub family: Option<MovingFamily>,
    #[serde(default)]
    pub curve: Option<CurveSpec>,
    #[serde(default)]
    pub datum: Option<DemoDatum>,
    #[serde(default)]
    pub physics: Physics,
    #[serde(default)]
    pub t: Option<f64>,
    #[serde(default)]
    pub times: Option<Vec<f64>>,
    #[serde(default)]
    pub grid: Option<GridSpec>,
    #[serde(default)]
    pub exclusion_radius: f64,
    #[serde(default = "default_outputs")]
    pub outputs: Vec<OutputKind>,
    #[serde(default)]
    pub verifications: Vec<VerificationKind>,
    /// Overrides the tolerance of every attached verification.
    #[serde(default)]
    pub tolerance: Option<f64>,
}

fn default_outputs() -> Vec<OutputKind> {
    vec![OutputKind::FieldCsv, OutputKind::ReportJson]
}

fn finite(field: &str, v: f64) -> CliResult<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(CliError::invalid(field, format!("must be finite, got {v}")))
    }
}

fn positive(field: &str, v: f64) -> CliResult<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(CliError::invalid(field, format!("must be positive, got {v}")))
    }
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> CliResult<Self> {
        let config: Self = serde_json::from_str(text).map_err(|e| CliError::invalid("<root>", e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_json(&text)
    }

    /// The sampled times; `t` defaults to `0`.
    pub fn time_list(&self) -> Vec<f64> {
        match (&self.times, self.t) {
            (Some(ts), _) => ts.clone(),
            (None, t) => vec![t.unwrap_or(0.0)],
        }
    }

    pub fn params(&self) -> CliResult<HeleShawParams> {
        let p = &self.physics;
        let mut params = HeleShawParams::new(p.k).map_err(|e| CliError::invalid("physics.k", e.to_string()))?;
        if let (Some(h), Some(h_dot)) = (p.h, p.h_dot) {
            params = params
                .with_gap(h, h_dot)
                .map_err(|e| CliError::invalid("physics.h", e.to_string()))?;
        }
        if p.gamma != 0.0 {
            if let Some(MovingFamily {
                shape: FamilyShape::Circle { a },
                ..
            }) = self.family
            {
                params = params.with_surface_tension(schwarz_core::heleshaw::circle_surface_tension(p.gamma, a));
            }
        }
        Ok(params)
    }

    pub fn family(&self) -> CliResult<MovingFamily> {
        self.family
            .ok_or_else(|| CliError::invalid("family", format!("required for scenario {:?}", self.scenario)))
    }

    pub fn validate(&self) -> CliResult<()> {
        let p = &self.physics;
        positive("physics.k", p.k)?;
        finite("physics.gamma", p.gamma)?;
        finite("physics.lambda", p.lambda)?;
        match (p.h, p.h_dot) {
            (Some(h), Some(h_dot)) => {
                positive("physics.h", h)?;
                finite("physics.h_dot", h_dot)?;
            }
            (None, None) => {}
            (Some(_), None) => return Err(CliError::invalid("physics.h_dot", "must accompany physics.h")),
            (None, Some(_)) => return Err(CliError::invalid("physics.h", "must accompany physics.h_dot")),
        }
        if !(self.exclusion_radius.is_finite() && self.exclusion_radius >= 0.0) {
            return Err(CliError::invalid(
                "exclusion_radius",
                format!("must be non-negative, got {}", self.exclusion_radius),
            ));
        }
        if let Some(tol) = self.tolerance {
            positive("tolerance", tol)?;
        }
        if self.t.is_some() && self.times.is_some() {
            return Err(CliError::invalid("times", "give either t or times, not both"));
        }
        if let Some(t) = self.t {
            finite("t", t)?;
        }
        if let Some(ts) = &self.times {
            if ts.is_empty() {
                return Err(CliError::invalid("times", "must not be empty"));
            }
            for t in ts {
                finite("times", *t)?;
            }
        }
        if let Some(g) = &self.grid {
            for (name, v) in [("grid.x_min", g.x_min), ("grid.x_max", g.x_max), ("grid.y_min", g.y_min), ("grid.y_max", g.y_max)] {
                finite(name, v)?;
            }
            if g.nx < 2 {
                return Err(CliError::invalid("grid.nx", format!("must be at least 2, got {}", g.nx)));
            }
            if g.ny < 2 {
                return Err(CliError::invalid("grid.ny", format!("must be at least 2, got {}", g.ny)));
            }
            if g.x_min >= g.x_max {
                return Err(CliError::invalid("grid.x_max", "must exceed grid.x_min"));
            }
            if g.y_min >= g.y_max {
                return Err(CliError::invalid("grid.y_max", "must exceed grid.y_min"));
            }
        }

        match self.scenario {
            ScenarioKind::CauchyDemo => {
                let curve = self
                    .curve
                    .ok_or_else(|| CliError::invalid("curve", "required for scenario cauchy_demo"))?;
                curve.build().map_err(|e| CliError::invalid("curve", e.to_string()))?;
                if self.datum.is_none() {
                    return Err(CliError::invalid("datum", "required for scenario cauchy_demo"));
                }
                if self.verifications.contains(&VerificationKind::Kinematic) {
                    return Err(CliError::invalid("verifications", "kinematic needs a moving family"));
                }
            }
            kind => {
                let family = self.family()?;
                MovingFamily::new(family.shape, family.law).map_err(|e| CliError::invalid("family", e.to_string()))?;
                let circle = matches!(family.shape, FamilyShape::Circle { .. });
                if p.gamma != 0.0 && !(kind == ScenarioKind::SinkSource && circle) {
                    return Err(CliError::invalid(
                        "physics.gamma",
                        "surface tension is supported for sink_source circles only",
                    ));
                }
                let params = self.params()?;
                for t in self.time_list() {
                    let state = family.state(t).map_err(|e| CliError::invalid("family", e.to_string()))?;
                    if kind == ScenarioKind::Gap {
                        gap_rate(&family, &state, &params).map_err(|e| CliError::invalid("physics.h", e.to_string()))?;
                    }
                }
            }
        }
        Ok(())
    }
}
