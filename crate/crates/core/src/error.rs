use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by curve evaluation, quadrature and the representation formulas.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("point {0} lies on the branch cut")]
    BranchCutHit(Complex64),

    #[error("point {0} is outside the domain of the Schwarz function")]
    OutOfDomain(Complex64),

    #[error("point {0} is a singular point of the Schwarz function")]
    SingularPoint(Complex64),

    #[error("rate law does not determine the motion: {0}")]
    RateLawUnderdetermined(String),

    #[error("quadrature tolerance not met: estimate {estimate}, error bound {error_bound:e}")]
    ToleranceNotMet {
        estimate: Complex64,
        error_bound: f64,
    },

    #[error("integrand failed at node {node}: {reason}")]
    SingularPanel { node: Complex64, reason: String },

    #[error("square-root continuation jumped at {at}")]
    BranchJump { at: Complex64 },

    #[error("Bessel series did not converge for argument {0}")]
    SeriesDiverged(Complex64),

    #[error("Riemann kernel is not normalized on the characteristics (mismatch {mismatch:e})")]
    KernelUnnormalized { mismatch: f64 },

    #[error("pressure has a non-negligible imaginary part: {0}")]
    NonRealResult(Complex64),

    #[error("x = {x} is outside the inter-focal segment (-{d}, {d})")]
    OutOfSupport { x: f64, d: f64 },

    #[error("scenario mismatch: {0}")]
    ScenarioMismatch(String),

    #[error("finite-difference stencil at ({x}, {y}) reaches a singularity")]
    StencilCrossesSingularity { x: f64, y: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
