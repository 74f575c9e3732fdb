//! `J0(λ √p)` as an entire function of `p`.
//!
//! With `x = −λ² p / 4`, `J0(λ√p) = Σ x^k / (k!)²`, so no square root (and no
//! branch) is ever taken. Derivatives in `p` come from the same family of
//! series `Σ x^j / (j! (j+m)!)`.

use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_TERMS: usize = 200;
const REL_CUTOFF: f64 = 1e-17;

/// `Σ_j x^j / (j! (j+m)!)`.
pub(crate) fn shifted_series(x: Complex64, m: usize) -> Result<Complex64> {
    let mut term = Complex64::new(1.0 / factorial(m), 0.0);
    let mut sum = term;
    for j in 1..MAX_TERMS {
        term *= x / (j as f64 * (j + m) as f64);
        sum += term;
        let decreasing = (j * (j + m)) as f64 > x.norm();
        if decreasing && term.norm() < REL_CUTOFF * (1.0 + sum.norm()) {
            return Ok(sum);
        }
        if !sum.is_finite() {
            break;
        }
    }
    Err(Error::SeriesDiverged(x))
}

fn factorial(m: usize) -> f64 {
    (1..=m).map(|k| k as f64).product()
}

/// `g(p) = J0(λ√p)` for `lambda2 = λ²`.
pub fn j0_product(lambda2: f64, prod: Complex64) -> Result<Complex64> {
    if lambda2 == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    shifted_series(-0.25 * lambda2 * prod, 0)
}

/// `(g, g', g'')` with derivatives taken in `p`.
pub fn j0_product_derivatives(lambda2: f64, prod: Complex64) -> Result<[Complex64; 3]> {
    let c = 0.25 * lambda2;
    let x = -c * prod;
    Ok([
        shifted_series(x, 0)?,
        -c * shifted_series(x, 1)?,
        c * c * shifted_series(x, 2)?,
    ])
}

/// `(∂/∂z, ∂/∂w)` of `J0(λ √((z − z0)(w − w0)))`.
pub fn j0_product_partials(
    lambda2: f64,
    z: Complex64,
    w: Complex64,
    z0: Complex64,
    w0: Complex64,
) -> Result<(Complex64, Complex64)> {
    if lambda2 == 0.0 {
        let zero = Complex64::new(0.0, 0.0);
        return Ok((zero, zero));
    }
    let (dz, dw) = (z - z0, w - w0);
    let c = 0.25 * lambda2;
    let slope = -c * shifted_series(-c * dz * dw, 1)?;
    Ok((dw * slope, dz * slope))
}
