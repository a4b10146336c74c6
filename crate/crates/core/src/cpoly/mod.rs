//! Dense complex polynomials, finite Blaschke products and rational maps.
//!
//! Coefficients are stored in ascending order: `coeffs[i]` multiplies `λ^i`.
//! Trailing coefficients that are negligible relative to the largest one are
//! trimmed on construction, so equal polynomials have identical coefficient
//! vectors and the zero polynomial is the empty vector.

mod blaschke;
mod rational;
mod roots;

pub use blaschke::BlaschkeProduct;
pub use rational::RationalMap;
pub use roots::{cluster_roots, order as roots_order, RootCluster};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use thiserror::Error;

use crate::tol;

/// Complex scalar used throughout the crate.
pub type Complex = Complex64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("polynomial of degree {degree} exceeds the declared bound {bound}")]
    DegreeViolation { degree: usize, bound: usize },
    #[error("the zero polynomial has no well-defined roots")]
    UndefinedRoots,
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("evaluation at a pole ({0})")]
    Pole(Complex),
    #[error("{0}")]
    Invalid(String),
}

pub(crate) fn is_finite(z: Complex) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// `e^{iθ}`.
pub fn cis(theta: f64) -> Complex {
    Complex::from_polar(1.0, theta)
}

/// Unit-modulus direction of `z`, or 1 for `z = 0`.
pub fn unit(z: Complex) -> Complex {
    let r = z.norm();
    if r == 0.0 {
        Complex::new(1.0, 0.0)
    } else {
        z / r
    }
}

#[derive(Clone, PartialEq, Default)]
pub struct ComplexPoly {
    coeffs: Vec<Complex>,
}

impl fmt::Debug for ComplexPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

impl ComplexPoly {
    /// Builds a polynomial from ascending coefficients, trimming negligible
    /// leading terms.
    ///
    /// Panics on non-finite input; use [`ComplexPoly::try_new`] for untrusted
    /// data.
    pub fn new(coeffs: Vec<Complex>) -> Self {
        Self::try_new(coeffs).expect("non-finite polynomial coefficient")
    }

    pub fn try_new(mut coeffs: Vec<Complex>) -> Result<Self, PolyError> {
        if !coeffs.iter().copied().all(is_finite) {
            return Err(PolyError::NonFinite("polynomial coefficients"));
        }
        let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let cutoff = tol::COEFF_ZERO_REL * scale;
        while let Some(last) = coeffs.last() {
            if last.norm() <= cutoff {
                coeffs.pop();
            } else {
                break;
            }
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Complex) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Complex::new(1.0, 0.0))
    }

    /// `c·λ^k`
    pub fn monomial(c: Complex, k: usize) -> Self {
        let mut coeffs = vec![Complex::new(0.0, 0.0); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// The monic polynomial `∏ (λ − r)`.
    pub fn from_roots(roots: &[Complex]) -> Self {
        let mut coeffs = vec![Complex::new(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![Complex::new(0.0, 0.0); coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * r;
            }
            coeffs = next;
        }
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    /// Coefficient of `λ^i`, zero past the end.
    pub fn coeff(&self, i: usize) -> Complex {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest coefficientwise distance to `other`.
    pub fn distance(&self, other: &ComplexPoly) -> f64 {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len)
            .map(|i| (self.coeff(i) - other.coeff(i)).norm())
            .fold(0.0, f64::max)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex) -> Complex {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> ComplexPoly {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * i as f64)
                .collect(),
        )
    }

    pub fn scale(&self, c: Complex) -> ComplexPoly {
        Self::new(self.coeffs.iter().map(|&x| x * c).collect())
    }

    pub fn scale_real(&self, c: f64) -> ComplexPoly {
        self.scale(Complex::new(c, 0.0))
    }

    /// Coefficientwise conjugate, i.e. the polynomial `conj(g(conj λ))`.
    pub fn conj(&self) -> ComplexPoly {
        Self {
            coeffs: self.coeffs.iter().map(|c| c.conj()).collect(),
        }
    }

    /// Multiplication by `λ^k`.
    pub fn shift(&self, k: usize) -> ComplexPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Complex::new(0.0, 0.0); k];
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    pub fn pow(&self, k: usize) -> ComplexPoly {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// The `~n` involution `λ^n · conj(g(1/conj λ))`: coefficient `j` of the
    /// result is the conjugate of coefficient `n − j` of `g`.
    pub fn involution(&self, n: usize) -> Result<ComplexPoly, PolyError> {
        if let Some(d) = self.degree() {
            if d > n {
                return Err(PolyError::DegreeViolation { degree: d, bound: n });
            }
        }
        Ok(Self::new((0..=n).map(|j| self.coeff(n - j).conj()).collect()))
    }

    /// Whether `g^{~n} = g` within `tol` relative to the coefficient scale.
    pub fn is_symmetric(&self, n: usize, tol: f64) -> bool {
        match self.involution(n) {
            Ok(inv) => inv.distance(self) <= tol * self.max_abs_coeff().max(1.0),
            Err(_) => false,
        }
    }

    /// `den^k · g(num/den)` expanded, for `deg g ≤ k`.
    pub fn compose_rational(
        &self,
        k: usize,
        num: &ComplexPoly,
        den: &ComplexPoly,
    ) -> Result<ComplexPoly, PolyError> {
        if let Some(d) = self.degree() {
            if d > k {
                return Err(PolyError::DegreeViolation { degree: d, bound: k });
            }
        }
        // Powers of num ascending and den descending, built incrementally.
        let mut num_pows = Vec::with_capacity(k + 1);
        let mut den_pows = Vec::with_capacity(k + 1);
        num_pows.push(Self::one());
        den_pows.push(Self::one());
        for i in 1..=k {
            num_pows.push(&num_pows[i - 1] * num);
            den_pows.push(&den_pows[i - 1] * den);
        }
        let mut acc = Self::zero();
        for i in 0..=k {
            let c = self.coeff(i);
            if c == Complex::new(0.0, 0.0) {
                continue;
            }
            acc = &acc + &(&num_pows[i] * &den_pows[k - i]).scale(c);
        }
        Ok(acc)
    }

    /// All roots with multiplicity, sorted by modulus then argument.
    pub fn roots(&self) -> Result<Vec<Complex>, PolyError> {
        roots::roots(self)
    }

    /// Roots grouped into clusters within [`tol::ROOT_CLUSTER`].
    pub fn root_clusters(&self) -> Result<Vec<RootCluster>, PolyError> {
        Ok(cluster_roots(&self.roots()?, tol::ROOT_CLUSTER))
    }

    /// True iff the polynomial has no zeros in the open unit disc.
    pub fn is_outer(&self) -> Result<bool, PolyError> {
        Ok(self.min_root_modulus()? >= 1.0 - tol::BOUNDARY)
    }

    /// Smallest modulus among root-cluster centres; `+∞` for nonzero
    /// constants.
    pub fn min_root_modulus(&self) -> Result<f64, PolyError> {
        Ok(self
            .root_clusters()?
            .iter()
            .map(|c| c.center.norm())
            .fold(f64::INFINITY, f64::min))
    }
}

impl From<Vec<Complex>> for ComplexPoly {
    fn from(coeffs: Vec<Complex>) -> Self {
        Self::new(coeffs)
    }
}

impl Add for &ComplexPoly {
    type Output = ComplexPoly;
    fn add(self, rhs: &ComplexPoly) -> ComplexPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        ComplexPoly::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &ComplexPoly {
    type Output = ComplexPoly;
    fn sub(self, rhs: &ComplexPoly) -> ComplexPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        ComplexPoly::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &ComplexPoly {
    type Output = ComplexPoly;
    fn mul(self, rhs: &ComplexPoly) -> ComplexPoly {
        if self.is_zero() || rhs.is_zero() {
            return ComplexPoly::zero();
        }
        let mut out = vec![Complex::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ComplexPoly::new(out)
    }
}

impl Neg for &ComplexPoly {
    type Output = ComplexPoly;
    fn neg(self) -> ComplexPoly {
        self.scale_real(-1.0)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ComplexPoly {
            type Output = ComplexPoly;
            fn $m(self, rhs: ComplexPoly) -> ComplexPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn eval_examples() {
        assert_eq!(ComplexPoly::from_real(&[1.0]).eval(c(0.3, -2.0)), c(1.0, 0.0));
        assert_eq!(ComplexPoly::from_real(&[0.0, 1.0]).eval(c(0.0, 1.0)), c(0.0, 1.0));
        let r = 3.0 + 2.0 * 2f64.sqrt();
        let v = ComplexPoly::from_real(&[1.0, -6.0, 1.0]).eval(c(r, 0.0));
        assert!(v.norm() < 1e-13, "{v}");
    }

    #[test]
    fn trimming_is_canonical() {
        let p = ComplexPoly::new(vec![c(1.0, 0.0), c(2.0, 0.0), c(1e-14, 0.0)]);
        assert_eq!(p, ComplexPoly::from_real(&[1.0, 2.0]));
        assert_eq!(ComplexPoly::from_real(&[0.0, 0.0]), ComplexPoly::zero());
        assert_eq!(ComplexPoly::zero().degree(), None);
        assert!(ComplexPoly::try_new(vec![c(f64::NAN, 0.0)]).is_err());
    }

    #[test]
    fn involution_examples() {
        let one = ComplexPoly::one();
        assert_eq!(one.involution(1).unwrap(), ComplexPoly::from_real(&[0.0, 1.0]));

        let e = ComplexPoly::from_real(&[0.0, 1.7]);
        assert_eq!(e.involution(2).unwrap(), e);

        // 1 − conj(λ0)λ with λ0 = 0.5 gives λ − 0.5
        let g = ComplexPoly::from_real(&[1.0, -0.5]);
        assert_eq!(g.involution(1).unwrap(), ComplexPoly::from_real(&[-0.5, 1.0]));

        assert_eq!(
            ComplexPoly::from_real(&[1.0, 1.0, 1.0]).involution(1),
            Err(PolyError::DegreeViolation { degree: 2, bound: 1 })
        );
    }

    #[test]
    fn compose_rational_examples() {
        let lam = ComplexPoly::from_real(&[0.0, 1.0]);
        let one = ComplexPoly::one();
        assert_eq!(lam.compose_rational(1, &lam, &one).unwrap(), lam);
        let sq = ComplexPoly::from_real(&[0.0, 0.0, 1.0]);
        assert_eq!(sq.compose_rational(2, &lam, &one).unwrap(), sq);

        // g = 1 + λ, m = (λ − ½)/(1 − ½λ)  →  ½ + ½λ
        let g = ComplexPoly::from_real(&[1.0, 1.0]);
        let num = ComplexPoly::from_real(&[-0.5, 1.0]);
        let den = ComplexPoly::from_real(&[1.0, -0.5]);
        let out = g.compose_rational(1, &num, &den).unwrap();
        assert!(out.distance(&ComplexPoly::from_real(&[0.5, 0.5])) < 1e-15);

        assert!(sq.compose_rational(1, &lam, &one).is_err());
    }

    #[test]
    fn outerness_examples() {
        assert!(ComplexPoly::from_real(&[1.0, 1.0]).is_outer().unwrap());
        assert!(!ComplexPoly::from_real(&[0.0, 1.0]).is_outer().unwrap());
        let r = 3.0 + 2.0 * 2f64.sqrt();
        assert!(ComplexPoly::from_real(&[r, -1.0]).scale_real(0.3).is_outer().unwrap());
        assert!(ComplexPoly::zero().is_outer().is_err());
    }

    #[test]
    fn arithmetic() {
        let a = ComplexPoly::from_real(&[1.0, 2.0]);
        let b = ComplexPoly::from_real(&[-1.0, 0.0, 3.0]);
        assert_eq!(&a * &b, ComplexPoly::from_real(&[-1.0, -2.0, 3.0, 6.0]));
        assert_eq!(&a + &b, ComplexPoly::from_real(&[0.0, 2.0, 3.0]));
        assert_eq!(&a - &a, ComplexPoly::zero());
        assert_eq!(a.shift(2), ComplexPoly::from_real(&[0.0, 0.0, 1.0, 2.0]));
        assert_eq!(a.pow(2), ComplexPoly::from_real(&[1.0, 4.0, 4.0]));
        assert_eq!(a.derivative(), ComplexPoly::from_real(&[2.0]));
        assert_eq!(
            ComplexPoly::from_roots(&[c(1.0, 0.0), c(-1.0, 0.0)]),
            ComplexPoly::from_real(&[-1.0, 0.0, 1.0])
        );
    }
}
