//! Solutions of Cauchy problems posed on an analytic curve.
//!
//! In characteristic coordinates an operator `Δ + …` becomes
//! `4(∂z∂w + A ∂z + B ∂w + C)`. Given `u = φ` and `∂u/∂n = ψ` on `Γ`, the
//! solution at `P = (z0, w0)` is a Riemann-function weighted combination of
//! the data at the two corners of the Study rectangle on `Γ_C` plus a path
//! integral between them:
//!
//! ```text
//! u(P) = ½[R φ]_A + ½[R φ]_B + (i/2) ∫ R ψ √S' dz
//!        − ½ ∫ φ (R_z dz − R_w dS) + ∫ φ R (B dz − A dS)
//! ```
//!
//! The Riemann function `R` solves the adjoint equation and equals
//! `exp ∫ A dw` on `z = z0` and `exp ∫ B dz` on `w = w0`.

use num_complex::Complex64;
use std::fmt;
use std::sync::Arc;

use crate::curves::{ComplexPoint, Curve};
use crate::error::{Error, Result};
use crate::numerics::{
    integrate_path, j0_product, j0_product_partials, shifted_series, IntegrationPath,
};
use crate::reflection::AnalyticDatum;

/// Boundary value `φ` and normal derivative `ψ`, both continued to `(z, w)`.
#[derive(Debug, Clone)]
pub struct CauchyData {
    pub phi: AnalyticDatum,
    pub psi: AnalyticDatum,
}

impl CauchyData {
    pub fn new(phi: AnalyticDatum, psi: AnalyticDatum) -> Self {
        Self { phi, psi }
    }
}

/// Riemann function of `∂z∂w + A ∂z + B ∂w + C` with pole `(z0, w0)`.
pub trait RiemannKernel: Send + Sync {
    /// `R(z0, w0; z, w)`.
    fn value(&self, z0: Complex64, w0: Complex64, z: Complex64, w: Complex64) -> Result<Complex64>;

    /// `(∂R/∂z, ∂R/∂w)`. Defaults to fourth-order central differences.
    fn partials(
        &self,
        z0: Complex64,
        w0: Complex64,
        z: Complex64,
        w: Complex64,
    ) -> Result<(Complex64, Complex64)> {
        let h = 1e-3;
        let diff = |shift: &dyn Fn(f64) -> (Complex64, Complex64)| -> Result<Complex64> {
            let f = |s: f64| {
                let (zz, ww) = shift(s);
                self.value(z0, w0, zz, ww)
            };
            Ok((8.0 * (f(h)? - f(-h)?) - (f(2.0 * h)? - f(-2.0 * h)?)) / (12.0 * h))
        };
        Ok((diff(&|s| (z + s, w))?, diff(&|s| (z, w + s))?))
    }

    /// Coefficient `A(z, w)` of `∂z`.
    fn coeff_a(&self, _z: Complex64, _w: Complex64) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }

    /// Coefficient `B(z, w)` of `∂w`.
    fn coeff_b(&self, _z: Complex64, _w: Complex64) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }

    /// `λ²` when the kernel is the Helmholtz one.
    fn lambda2(&self) -> Option<f64> {
        None
    }
}

/// `J0(λ √((z − z0)(w − w0)))`, the kernel of `Δu + λ²u = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HelmholtzKernel {
    pub lambda: f64,
}

impl HelmholtzKernel {
    pub fn new(lambda: f64) -> Self {
        Self { lambda }
    }
}

impl RiemannKernel for HelmholtzKernel {
    fn value(&self, z0: Complex64, w0: Complex64, z: Complex64, w: Complex64) -> Result<Complex64> {
        j0_product(self.lambda * self.lambda, (z - z0) * (w - w0))
    }

    fn partials(
        &self,
        z0: Complex64,
        w0: Complex64,
        z: Complex64,
        w: Complex64,
    ) -> Result<(Complex64, Complex64)> {
        j0_product_partials(self.lambda * self.lambda, z, w, z0, w0)
    }

    fn lambda2(&self) -> Option<f64> {
        Some(self.lambda * self.lambda)
    }
}

/// Kernel of the real operator `Δ + a ∂x + b ∂y + c` with constant coefficients.
///
/// In characteristic form `A = (a + ib)/4`, `B = (a − ib)/4`, `C = c/4`, and
/// `R = exp(A(w − w0) + B(z − z0)) G((z − z0)(w − w0))` with
/// `G(p) = Σ (−κp)^k / (k!)²`, `κ = C − AB`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantCoefficientKernel {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
}

impl ConstantCoefficientKernel {
    /// From the characteristic coefficients directly.
    pub fn characteristic(a: Complex64, b: Complex64, c: Complex64) -> Self {
        Self { a, b, c }
    }

    /// From the coefficients of `Δ + a ∂x + b ∂y + c`.
    pub fn from_real(a: f64, b: f64, c: f64) -> Self {
        Self {
            a: Complex64::new(a, b) / 4.0,
            b: Complex64::new(a, -b) / 4.0,
            c: Complex64::new(c / 4.0, 0.0),
        }
    }

    fn kappa(&self) -> Complex64 {
        self.c - self.a * self.b
    }
}

impl RiemannKernel for ConstantCoefficientKernel {
    fn value(&self, z0: Complex64, w0: Complex64, z: Complex64, w: Complex64) -> Result<Complex64> {
        let (dz, dw) = (z - z0, w - w0);
        let growth = (self.a * dw + self.b * dz).exp();
        Ok(growth * shifted_series(-self.kappa() * dz * dw, 0)?)
    }

    fn partials(
        &self,
        z0: Complex64,
        w0: Complex64,
        z: Complex64,
        w: Complex64,
    ) -> Result<(Complex64, Complex64)> {
        let (dz, dw) = (z - z0, w - w0);
        let kappa = self.kappa();
        let growth = (self.a * dw + self.b * dz).exp();
        let x = -kappa * dz * dw;
        let g = shifted_series(x, 0)?;
        let slope = -kappa * shifted_series(x, 1)?;
        Ok((
            growth * (self.b * g + dw * slope),
            growth * (self.a * g + dz * slope),
        ))
    }

    fn coeff_a(&self, _z: Complex64, _w: Complex64) -> Complex64 {
        self.a
    }

    fn coeff_b(&self, _z: Complex64, _w: Complex64) -> Complex64 {
        self.b
    }
}

type KernelFn = dyn Fn(Complex64, Complex64, Complex64, Complex64) -> Result<Complex64> + Send + Sync;
type CoeffFn = dyn Fn(Complex64, Complex64) -> Complex64 + Send + Sync;

/// A kernel given by closures; partial derivatives use finite differences.
#[derive(Clone)]
pub struct ClosureKernel {
    value: Arc<KernelFn>,
    a: Arc<CoeffFn>,
    b: Arc<CoeffFn>,
}

impl fmt::Debug for ClosureKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ClosureKernel").finish_non_exhaustive()
    }
}

impl ClosureKernel {
    pub fn new<R, A, B>(value: R, a: A, b: B) -> Self
    where
        R: Fn(Complex64, Complex64, Complex64, Complex64) -> Result<Complex64> + Send + Sync + 'static,
        A: Fn(Complex64, Complex64) -> Complex64 + Send + Sync + 'static,
        B: Fn(Complex64, Complex64) -> Complex64 + Send + Sync + 'static,
    {
        Self {
            value: Arc::new(value),
            a: Arc::new(a),
            b: Arc::new(b),
        }
    }
}

impl RiemannKernel for ClosureKernel {
    fn value(&self, z0: Complex64, w0: Complex64, z: Complex64, w: Complex64) -> Result<Complex64> {
        (self.value)(z0, w0, z, w)
    }

    fn coeff_a(&self, z: Complex64, w: Complex64) -> Complex64 {
        (self.a)(z, w)
    }

    fn coeff_b(&self, z: Complex64, w: Complex64) -> Complex64 {
        (self.b)(z, w)
    }
}

/// Harmonic `u` with `u = φ`, `∂u/∂n = ψ` on `Γ`, evaluated at `p`.
pub fn solve_cauchy_laplace(curve: &Curve, data: &CauchyData, p: ComplexPoint) -> Result<Complex64> {
    let path = curve.gamma_path(p)?;
    path.require_sqrt()?;
    let corners = data.phi.eval(path.start_z, p.w) + data.phi.eval(p.z, path.end_s);
    let integral = path.integrate(|zeta, pt| {
        Ok(data.psi.eval(pt.z, pt.s) * curve.chart_sqrt_sprime_dz(zeta)?)
    })?;
    Ok(0.5 * corners + 0.5 * Complex64::i() * integral)
}

/// Solution of `Δu + λ²u = 0` with Cauchy data on `Γ`, evaluated at `p`.
pub fn solve_cauchy_helmholtz(
    curve: &Curve,
    data: &CauchyData,
    lambda: f64,
    p: ComplexPoint,
) -> Result<Complex64> {
    let lambda2 = lambda * lambda;
    let (z0, w0) = (p.z, p.w);
    let path = curve.gamma_path(p)?;
    path.require_sqrt()?;
    let corners = data.phi.eval(path.start_z, w0) + data.phi.eval(z0, path.end_s);
    let integral = path.integrate(|zeta, pt| {
        let kernel = j0_product(lambda2, (pt.z - z0) * (pt.s - w0))?;
        let (rz, rw) = j0_product_partials(lambda2, pt.z, pt.s, z0, w0)?;
        let root = curve.chart_sqrt_sprime_dz(zeta)?;
        let psi = data.psi.eval(pt.z, pt.s);
        let phi = data.phi.eval(pt.z, pt.s);
        Ok(0.5 * Complex64::i() * kernel * psi * root - 0.5 * phi * (rz * pt.dz - rw * pt.ds))
    })?;
    Ok(0.5 * corners + integral)
}

/// Solution of `u_zw + A u_z + B u_w + C u = 0` with Cauchy data on `Γ`.
///
/// The kernel is checked against its characteristic normalization at both
/// corners of the Study rectangle; a relative mismatch above `1e-8` fails
/// with [`Error::KernelUnnormalized`].
pub fn solve_cauchy_general(
    curve: &Curve,
    data: &CauchyData,
    kernel: &dyn RiemannKernel,
    p: ComplexPoint,
) -> Result<Complex64> {
    let (z0, w0) = (p.z, p.w);
    let path = curve.gamma_path(p)?;
    path.require_sqrt()?;
    let (start_z, end_s) = (path.start_z, path.end_s);

    let r_start = kernel.value(z0, w0, start_z, w0)?;
    let r_end = kernel.value(z0, w0, z0, end_s)?;
    let along_w = integrate_path(
        |tau| Ok(kernel.coeff_a(z0, tau)),
        &IntegrationPath::straight(w0, end_s),
    )?
    .exp();
    let along_z = integrate_path(
        |t| Ok(kernel.coeff_b(t, w0)),
        &IntegrationPath::straight(z0, start_z),
    )?
    .exp();
    let mismatch = ((r_start - along_z).norm() / along_z.norm())
        .max((r_end - along_w).norm() / along_w.norm());
    if !(mismatch <= 1e-8) {
        return Err(Error::KernelUnnormalized { mismatch });
    }

    let corners = r_start * data.phi.eval(start_z, w0) + r_end * data.phi.eval(z0, end_s);
    let integral = path.integrate(|zeta, pt| {
        let r = kernel.value(z0, w0, pt.z, pt.s)?;
        let (rz, rw) = kernel.partials(z0, w0, pt.z, pt.s)?;
        let root = curve.chart_sqrt_sprime_dz(zeta)?;
        let psi = data.psi.eval(pt.z, pt.s);
        let phi = data.phi.eval(pt.z, pt.s);
        let drift = kernel.coeff_b(pt.z, pt.s) * pt.dz - kernel.coeff_a(pt.z, pt.s) * pt.ds;
        Ok(0.5 * Complex64::i() * r * psi * root - 0.5 * phi * (rz * pt.dz - rw * pt.ds)
            + phi * r * drift)
    })?;
    Ok(0.5 * corners + integral)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reflection::DatumKind;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zero_data_gives_zero() {
        let data = CauchyData::new(
            AnalyticDatum::zero(DatumKind::Dirichlet),
            AnalyticDatum::zero(DatumKind::Neumann),
        );
        let curve = Curve::circle(1.0).unwrap();
        let p = ComplexPoint::real(1.5, 0.2);
        assert_eq!(solve_cauchy_laplace(&curve, &data, p).unwrap(), c(0.0, 0.0));
        assert_eq!(solve_cauchy_helmholtz(&curve, &data, 2.0, p).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn unit_data_on_x_axis() {
        // u = 1 + y: φ = 1, ψ = 1 along the upward normal
        let data = CauchyData::new(
            AnalyticDatum::constant(DatumKind::Dirichlet, 1.0),
            AnalyticDatum::constant(DatumKind::Neumann, 1.0),
        );
        let curve = Curve::line(0.0, 1.0, 0.0).unwrap();
        let u = solve_cauchy_laplace(&curve, &data, ComplexPoint::real(0.3, 0.7)).unwrap();
        assert!((u - c(1.7, 0.0)).norm() < 1e-12, "{u}");
    }

    #[test]
    fn constant_kernel_normalization() {
        let k = ConstantCoefficientKernel::from_real(0.4, -0.2, 1.3);
        let (z0, w0) = (c(0.2, 0.1), c(0.2, -0.1));
        let w = c(1.0, 0.5);
        let r = k.value(z0, w0, z0, w).unwrap();
        assert!((r - (k.a * (w - w0)).exp()).norm() < 1e-14);
        let z = c(-0.3, 0.8);
        let r = k.value(z0, w0, z, w0).unwrap();
        assert!((r - (k.b * (z - z0)).exp()).norm() < 1e-14);
    }

    #[test]
    fn analytic_partials_match_differences() {
        let k = ConstantCoefficientKernel::from_real(0.4, -0.2, 1.3);
        let (z0, w0) = (c(0.2, 0.1), c(0.2, -0.1));
        let (z, w) = (c(0.9, -0.4), c(0.1, 0.6));
        let exact = k.partials(z0, w0, z, w).unwrap();
        let closure = ClosureKernel::new(
            move |z0, w0, z, w| k.value(z0, w0, z, w),
            |_, _| c(0.0, 0.0),
            |_, _| c(0.0, 0.0),
        );
        let fd = closure.partials(z0, w0, z, w).unwrap();
        assert!((exact.0 - fd.0).norm() < 1e-9);
        assert!((exact.1 - fd.1).norm() < 1e-9);
    }

    #[test]
    fn unnormalized_kernel_rejected() {
        let data = CauchyData::new(
            AnalyticDatum::constant(DatumKind::Dirichlet, 1.0),
            AnalyticDatum::zero(DatumKind::Neumann),
        );
        let bad = ClosureKernel::new(|_, _, _, _| Ok(c(2.0, 0.0)), |_, _| c(0.0, 0.0), |_, _| c(0.0, 0.0));
        let r = solve_cauchy_general(&Curve::x_axis(), &data, &bad, ComplexPoint::real(0.0, 1.0));
        assert!(matches!(r, Err(Error::KernelUnnormalized { .. })));
    }
}
