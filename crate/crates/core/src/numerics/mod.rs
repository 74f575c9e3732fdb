//! Complex path quadrature, square-root continuation and the `J0` kernel series.

mod bessel;
mod branch;
mod quadrature;

pub use bessel::{j0_product, j0_product_derivatives, j0_product_partials};
pub(crate) use bessel::shifted_series;
pub use branch::BranchTracker;
pub use quadrature::{
    integrate_path, integrate_path_detailed, IntegrationPath, Quadrature, DEFAULT_TOLERANCE,
};
