//! Elliptic growth: Hele-Shaw-type motion where the pressure solves a
//! Helmholtz (or more general elliptic) equation instead of Laplace's.
//!
//! With `p = 0` on `Γ(t)` and `∂p/∂n = −v_n/k`, the Cauchy representation
//! gives `p(P) = −(1/4k) ∫ Ṡ(z) R(z0, w0; z, S(z)) dz` along `Γ_C`.

use num_complex::Complex64;
use std::fmt;
use std::sync::Arc;

use crate::cauchy_rep::RiemannKernel;
use crate::curves::{ComplexPoint, MovingFamily};
use crate::error::{Error, Result};
use crate::numerics::j0_product;

/// The Riemann function used for the pressure.
#[derive(Clone)]
pub enum GrowthKernel {
    /// `Δp + λ²p = 0`.
    Helmholtz { lambda: f64 },
    General(Arc<dyn RiemannKernel>),
}

impl fmt::Debug for GrowthKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrowthKernel::Helmholtz { lambda } => f.debug_struct("Helmholtz").field("lambda", lambda).finish(),
            GrowthKernel::General(_) => f.write_str("General(..)"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct GrowthScenario {
    pub family: MovingFamily,
    pub k: f64,
    pub kernel: GrowthKernel,
}

impl GrowthScenario {
    pub fn helmholtz(family: MovingFamily, k: f64, lambda: f64) -> Result<Self> {
        if !(k > 0.0) {
            return Err(Error::ScenarioMismatch(format!("mobility k must be positive, got {k}")));
        }
        Ok(Self {
            family,
            k,
            kernel: GrowthKernel::Helmholtz { lambda },
        })
    }
}

/// Pressure at `p` and time `t`.
pub fn growth_pressure(scenario: &GrowthScenario, t: f64, p: ComplexPoint) -> Result<f64> {
    let state = scenario.family.state(t)?;
    let (z0, w0) = (p.z, p.w);
    let path = state.curve.gamma_path(p)?;
    let kernel = |z: Complex64, s: Complex64| -> Result<Complex64> {
        match &scenario.kernel {
            GrowthKernel::Helmholtz { lambda } => j0_product(lambda * lambda, (z - z0) * (s - w0)),
            GrowthKernel::General(k) => k.value(z0, w0, z, s),
        }
    };
    let integral = path.integrate(|zeta, pt| Ok(state.chart_sdot_dz(zeta)? * kernel(pt.z, pt.s)?))?;
    let value = -integral / (4.0 * scenario.k);
    if !value.is_finite() || value.im.abs() > 1e-9 * (1.0 + value.re.abs()) {
        return Err(Error::NonRealResult(value));
    }
    Ok(value.re)
}
