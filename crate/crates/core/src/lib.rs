//! Schwarz-function reflection principles for harmonic and metaharmonic
//! functions, with applications to Hele-Shaw flows and elliptic growth.
//!
//! The crate is organised bottom-up:
//!
//! * [`curves`]: lines, circles and ellipses through their Schwarz functions,
//!   plus time-dependent families.
//! * [`numerics`]: complex path quadrature, square-root continuation and the
//!   `J0` product series.
//! * [`reflection`]: Dirichlet and Neumann reflection offsets.
//! * [`cauchy_rep`]: Cauchy-problem solutions for Laplace, Helmholtz and
//!   general second-order operators.
//! * [`heleshaw`] and [`elliptic_growth`]: pressure fields of moving boundaries.
//! * [`verify`]: residual and boundary checks, grouped into suites.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod cauchy_rep;
pub mod curves;
pub mod elliptic_growth;
pub mod error;
pub mod heleshaw;
pub mod numerics;
pub mod reflection;
pub mod verify;

pub use num_complex::Complex64;

pub use cauchy_rep::{
    solve_cauchy_general, solve_cauchy_helmholtz, solve_cauchy_laplace, CauchyData,
    ClosureKernel, ConstantCoefficientKernel, HelmholtzKernel, RiemannKernel,
};
pub use curves::{ComplexPoint, Curve, CurveKind, FamilyShape, FamilyState, MovingFamily, RateLaw};
pub use elliptic_growth::{growth_pressure, GrowthKernel, GrowthScenario};
pub use error::{Error, Result};
pub use heleshaw::{
    flux_balance, interfocal_density, normal_velocity, pressure_gap, pressure_sink_source,
    source_structure, GapLaw, HeleShawParams, SourceStructure,
};
pub use numerics::BranchTracker;
pub use reflection::{
    dirichlet_pair_sum, neumann_jump, study_rectangle, AnalyticDatum, DatumKind, StudyRectangle,
};
