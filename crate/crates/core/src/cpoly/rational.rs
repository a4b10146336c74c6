use super::{Complex, ComplexPoly, PolyError};
use crate::tol;

/// Quotient `num/den` of polynomials.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalMap {
    pub num: ComplexPoly,
    pub den: ComplexPoly,
}

impl RationalMap {
    pub fn new(num: ComplexPoly, den: ComplexPoly) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::Invalid("zero denominator".into()));
        }
        Ok(Self { num, den })
    }

    pub fn eval(&self, z: Complex) -> Result<Complex, PolyError> {
        let d = self.den.eval(z);
        if d == Complex::new(0.0, 0.0) {
            return Err(PolyError::Pole(z));
        }
        Ok(self.num.eval(z) / d)
    }

    /// True iff the denominator has no roots in the closed unit disc.
    pub fn is_disc_regular(&self) -> Result<bool, PolyError> {
        Ok(self.den.min_root_modulus()? > 1.0 + tol::BOUNDARY)
    }
}
