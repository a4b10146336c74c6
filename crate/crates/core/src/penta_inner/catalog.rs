//! Closed-form P̄-inner functions and non-inner controls.

use crate::cpoly::{BlaschkeProduct, Complex, ComplexPoly};
use crate::domains::PentaPoint;
use crate::gamma_inner::GammaInnerRep;

use super::{PentaInnerError, PentaInnerRep};

fn zero_lambda_n(n: usize) -> GammaInnerRep {
    GammaInnerRep::new(ComplexPoly::zero(), ComplexPoly::one(), n).expect("constant D")
}

fn lambda_pow(m: usize) -> BlaschkeProduct {
    BlaschkeProduct::new(Complex::new(1.0, 0.0), vec![Complex::new(0.0, 0.0); m]).expect("zeros at 0")
}

/// `(λ^m, 0, λ)`
pub fn lambda_m_zero_lambda(m: usize) -> Result<PentaInnerRep, PentaInnerError> {
    PentaInnerRep::assemble(lambda_pow(m), zero_lambda_n(1))
}

/// `(λ, 0, λ^n)`
pub fn lambda_zero_lambda_n(n: usize) -> Result<PentaInnerRep, PentaInnerError> {
    PentaInnerRep::assemble(lambda_pow(1), zero_lambda_n(n))
}

/// `(0, 2B, B²)`
pub fn royal(b: &BlaschkeProduct) -> Result<PentaInnerRep, PentaInnerError> {
    PentaInnerRep::assemble(BlaschkeProduct::identity(), GammaInnerRep::from_blaschke_pair(b, b))
}

fn ev(b: &BlaschkeProduct, z: Complex) -> Complex {
    b.eval(z).expect("sample in the closed disc")
}

/// `π(diag(φ, ψ)) = (0, φ + ψ, φψ)`; inner only when `φ = ψ`.
pub fn diagonal(phi: BlaschkeProduct, psi: BlaschkeProduct) -> impl Fn(Complex) -> PentaPoint {
    move |z| {
        let (f, g) = (ev(&phi, z), ev(&psi, z));
        PentaPoint::new(Complex::new(0.0, 0.0), f + g, f * g)
    }
}

/// `π(U·diag(φ, ψ))` for the fixed unitary `U`:
/// `(iφ/√2, (φ − iψ)/√2, −iφψ)`; inner only when `φ = −iψ`.
pub fn rotated_diagonal(phi: BlaschkeProduct, psi: BlaschkeProduct) -> impl Fn(Complex) -> PentaPoint {
    let i = Complex::new(0.0, 1.0);
    let r2 = std::f64::consts::SQRT_2;
    move |z| {
        let (f, g) = (ev(&phi, z), ev(&psi, z));
        PentaPoint::new(i * f / r2, (f - i * g) / r2, -i * f * g)
    }
}

/// `π(V* diag(φ, ψ) V)` with constant `v`:
/// `(½(φ − ψ)v̄, φ + ψ, ¼((φ + ψ)² − (φ − ψ)²|v|²))`; inner when `|v| = 1`.
pub fn conjugated_diagonal(
    phi: BlaschkeProduct,
    psi: BlaschkeProduct,
    v: Complex,
) -> impl Fn(Complex) -> PentaPoint {
    move |z| {
        let (f, g) = (ev(&phi, z), ev(&psi, z));
        let (sum, diff) = (f + g, f - g);
        PentaPoint::new(
            0.5 * diff * v.conj(),
            sum,
            0.25 * (sum * sum - diff * diff * v.norm_sqr()),
        )
    }
}
