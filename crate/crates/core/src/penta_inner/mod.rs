//! Rational P̄-inner functions `x = (a_in·A/D, E/D, D^{~n}/D)`.

pub mod catalog;

use thiserror::Error;

use crate::cpoly::{BlaschkeProduct, Complex, ComplexPoly, PolyError};
use crate::domains::{in_bpenta, in_k1, in_penta, Criterion, Mode, PentaPoint};
use crate::gamma_inner::{GammaInnerRep, BOUNDARY_SAMPLES, INTERIOR_GRID};
use crate::report::Report;
use crate::sampling;
use crate::specfact::{fejer_riesz, SpecFactError, TrigPoly};
use crate::tol;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PentaInnerError {
    #[error("Γ-inner data failed verification: {0}")]
    InvalidGamma(String),
    #[error("factorization of |D|² − ¼|E|² failed: {0}")]
    Assembly(#[from] SpecFactError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `|D|² − ¼|E|²` below this fraction of `max|D|²` is taken to vanish.
const ZERO_A_REL: f64 = 1e-11;

/// The first coordinate: either `a_in·A/D` with `A` outer, or identically
/// zero (royal-type functions such as `(0, 2φ, φ²)`).
#[derive(Debug, Clone, PartialEq)]
pub enum APart {
    Outer { a_in: BlaschkeProduct, a: ComplexPoly },
    Zero,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PentaInnerRep {
    a_part: APart,
    h: GammaInnerRep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreePair {
    pub deg_a: usize,
    pub deg_p: usize,
}

/// Anything that can be sampled as a map `D̄ → C³`.
pub trait PentaMap {
    fn eval(&self, z: Complex) -> PentaPoint;
}

impl<F: Fn(Complex) -> PentaPoint> PentaMap for F {
    fn eval(&self, z: Complex) -> PentaPoint {
        self(z)
    }
}

/// `|D|² − ¼|E|²` on T.
pub fn a_spectrum(h: &GammaInnerRep) -> TrigPoly {
    &TrigPoly::abs_sq(h.d()) - &TrigPoly::abs_sq(h.e()).scale(0.25)
}

impl PentaInnerRep {
    /// Factors `|D|² − ¼|E|²` to obtain the outer `A`. When that spectrum
    /// vanishes the zero-`a` variant is returned and `a_in` is dropped.
    pub fn assemble(a_in: BlaschkeProduct, h: GammaInnerRep) -> Result<Self, PentaInnerError> {
        let report = h.verify();
        if !report.passed() {
            let names: Vec<_> = report.failures().map(|c| c.name.clone()).collect();
            return Err(PentaInnerError::InvalidGamma(names.join(", ")));
        }
        let f = a_spectrum(&h);
        if f.max_abs_coeff() <= ZERO_A_REL * h.d().max_abs_coeff().powi(2) {
            return Ok(Self { a_part: APart::Zero, h });
        }
        let a = fejer_riesz(&f)?.d;
        Ok(Self { a_part: APart::Outer { a_in, a }, h })
    }

    /// Unchecked constructor for externally supplied data; run
    /// [`PentaInnerRep::verify`] before trusting it.
    pub fn from_parts(a_part: APart, h: GammaInnerRep) -> Self {
        Self { a_part, h }
    }

    pub fn a_part(&self) -> &APart {
        &self.a_part
    }

    pub fn gamma(&self) -> &GammaInnerRep {
        &self.h
    }

    pub fn eval(&self, z: Complex) -> PentaPoint {
        let g = self.h.eval(z);
        let a = match &self.a_part {
            APart::Zero => Complex::new(0.0, 0.0),
            APart::Outer { a_in, a } => {
                a_in.eval(z).unwrap_or(Complex::new(f64::NAN, f64::NAN)) * a.eval(z) / self.h.d().eval(z)
            }
        };
        PentaPoint::new(a, g.s, g.p)
    }

    /// `deg a` counts the zeros of `a_in` plus the degree of `A/D` as a
    /// rational function after cancelling common roots; `deg p` is the
    /// reduced degree of `D^{~n}/D`.
    pub fn degree(&self) -> DegreePair {
        let deg_p = self.h.degree();
        let deg_a = match &self.a_part {
            APart::Zero => 0,
            APart::Outer { a_in, a } => {
                let num = a.roots().unwrap_or_default();
                let mut den = self.h.d().roots().unwrap_or_default();
                let mut left = 0;
                for r in num {
                    match den.iter().position(|q| (q - r).norm() <= tol::ROOT_CLUSTER) {
                        Some(j) => {
                            den.swap_remove(j);
                        }
                        None => left += 1,
                    }
                }
                a_in.degree() + left.max(den.len())
            }
        };
        DegreePair { deg_a, deg_p }
    }

    /// The same function with `a_in` replaced by the constant 1.
    pub fn outer_projection(&self) -> Self {
        let a_part = match &self.a_part {
            APart::Zero => APart::Zero,
            APart::Outer { a, .. } => APart::Outer {
                a_in: BlaschkeProduct::unimodular(Complex::new(1.0, 0.0)).expect("unit constant"),
                a: a.clone(),
            },
        };
        Self { a_part, h: self.h.clone() }
    }

    pub fn verify(&self) -> Report {
        self.verify_with(BOUNDARY_SAMPLES, INTERIOR_GRID)
    }

    pub fn verify_with(&self, boundary: usize, grid: usize) -> Report {
        let mut rep = Report::new();
        rep.extend("gamma: ", self.h.verify_with(boundary, grid));
        if let APart::Outer { a, .. } = &self.a_part {
            match a.min_root_modulus() {
                Ok(m) => {
                    let margin = if m.is_finite() { m - 1.0 } else { f64::MAX };
                    rep.push("A is outer", margin >= -tol::BOUNDARY, margin);
                }
                Err(_) => rep.push("A is outer", false, f64::NEG_INFINITY),
            }
            let spec = a_spectrum(&self.h);
            let scale = self.h.d().max_abs_coeff().powi(2).max(f64::MIN_POSITIVE);
            let dev = sampling::circle(boundary)
                .map(|z| (a.eval(z).norm_sqr() - spec.eval(z).re).abs() / scale)
                .fold(0.0, f64::max);
            rep.push("|A|² = |D|² - |E|²/4 on T", dev <= tol::INNER_BOUNDARY, -dev);
        }
        rep.extend("", verify_penta_map(self, boundary, grid));
        rep
    }
}

impl PentaMap for PentaInnerRep {
    fn eval(&self, z: Complex) -> PentaPoint {
        PentaInnerRep::eval(self, z)
    }
}

/// Sampling checks shared by structured and raw maps: boundary samples in
/// bP̄, interior grid in P̄.
pub fn verify_penta_map<M: PentaMap + ?Sized>(x: &M, boundary: usize, grid: usize) -> Report {
    let mut rep = Report::new();
    rep.push_worst(
        "boundary samples in bP̄",
        sampling::circle(boundary).map(|z| in_bpenta(x.eval(z), tol::INNER_BOUNDARY)),
    );
    rep.push_worst(
        "interior samples in P̄",
        sampling::disc_grid(grid)
            .map(|z| in_penta(x.eval(z), Mode::Closed, Criterion::Beta, tol::INNER_BOUNDARY)),
    );
    rep
}

/// `(0, s, p)` for a Γ-inner `h`.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedGamma(pub GammaInnerRep);

impl PentaMap for LiftedGamma {
    fn eval(&self, z: Complex) -> PentaPoint {
        let g = self.0.eval(z);
        PentaPoint::new(Complex::new(0.0, 0.0), g.s, g.p)
    }
}

impl LiftedGamma {
    /// Boundary samples in `K₁` and interior grid in P̄.
    pub fn verify_k1(&self, boundary: usize, grid: usize) -> Report {
        let mut rep = Report::new();
        rep.push_worst(
            "boundary samples in K1",
            sampling::circle(boundary).map(|z| in_k1(self.eval(z), tol::INNER_BOUNDARY)),
        );
        rep.push_worst(
            "interior samples in P̄",
            sampling::disc_grid(grid)
                .map(|z| in_penta(self.eval(z), Mode::Closed, Criterion::Beta, tol::INNER_BOUNDARY)),
        );
        rep
    }
}

pub fn lift_gamma(h: &GammaInnerRep) -> LiftedGamma {
    LiftedGamma(h.clone())
}
