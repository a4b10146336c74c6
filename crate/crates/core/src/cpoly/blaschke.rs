use super::{Complex, ComplexPoly, PolyError};

/// `c · ∏ (λ − α)/(1 − ᾱλ)` with `|c| = 1` and every `|α| < 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlaschkeProduct {
    c: Complex,
    zeros: Vec<Complex>,
}

impl BlaschkeProduct {
    pub fn new(c: Complex, zeros: Vec<Complex>) -> Result<Self, PolyError> {
        if !super::is_finite(c) || !zeros.iter().copied().all(super::is_finite) {
            return Err(PolyError::NonFinite("Blaschke product"));
        }
        if (c.norm() - 1.0).abs() > 1e-9 {
            return Err(PolyError::Invalid(format!(
                "Blaschke constant must be unimodular, got |c| = {}",
                c.norm()
            )));
        }
        if let Some(a) = zeros.iter().find(|a| a.norm() >= 1.0) {
            return Err(PolyError::Invalid(format!(
                "Blaschke zero {a} is not in the open disc"
            )));
        }
        Ok(Self { c: c / c.norm(), zeros })
    }

    pub fn identity() -> Self {
        Self {
            c: Complex::new(1.0, 0.0),
            zeros: vec![Complex::new(0.0, 0.0)],
        }
    }

    /// The constant `c` (degree 0).
    pub fn unimodular(c: Complex) -> Result<Self, PolyError> {
        Self::new(c, Vec::new())
    }

    pub fn c(&self) -> Complex {
        self.c
    }

    pub fn zeros(&self) -> &[Complex] {
        &self.zeros
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    pub fn eval(&self, z: Complex) -> Result<Complex, PolyError> {
        let mut acc = self.c;
        for &a in &self.zeros {
            let den = Complex::new(1.0, 0.0) - a.conj() * z;
            if den == Complex::new(0.0, 0.0) {
                return Err(PolyError::Pole(z));
            }
            acc *= (z - a) / den;
        }
        Ok(acc)
    }

    /// `c · ∏ (λ − α)`
    pub fn numerator(&self) -> ComplexPoly {
        ComplexPoly::from_roots(&self.zeros).scale(self.c)
    }

    /// `∏ (1 − ᾱλ)`
    pub fn denominator(&self) -> ComplexPoly {
        self.zeros.iter().fold(ComplexPoly::one(), |acc, a| {
            &acc * &ComplexPoly::new(vec![Complex::new(1.0, 0.0), -a.conj()])
        })
    }

    /// Product of two Blaschke products.
    pub fn mul(&self, other: &BlaschkeProduct) -> BlaschkeProduct {
        let mut zeros = self.zeros.clone();
        zeros.extend_from_slice(&other.zeros);
        Self {
            c: self.c * other.c,
            zeros,
        }
    }
}
