//! Numerical function theory on the pentablock and the symmetrized bidisc.
//!
//! The crate provides membership oracles, Fejér–Riesz spectral factorization,
//! synthesis of rational inner functions from zeros and royal nodes, and a
//! constructive two-point Schwarz-lemma solver.

pub mod construct;
pub mod cpoly;
pub mod domains;
pub mod gamma_inner;
pub mod penta_inner;
pub mod report;
pub mod sampling;
pub mod schwarz;
pub mod specfact;
pub mod tol;

pub use cpoly::{BlaschkeProduct, Complex, ComplexPoly, PolyError, RationalMap};
pub use domains::{GammaPoint, MembershipVerdict, PentaPoint};
pub use gamma_inner::GammaInnerRep;
pub use penta_inner::{DegreePair, PentaInnerRep};
pub use report::{Check, Report};
pub use specfact::{fejer_riesz, FejerRieszResult, TrigPoly};
