//! Two-point Schwarz problems for P̄: find a rational P̄-inner `x` with
//! `x(0) = (0, 0, 0)` and `x(λ0) = (a0, s0, p0)`.

use std::fmt;

use thiserror::Error;

use crate::cpoly::{unit, BlaschkeProduct, Complex, ComplexPoly, PolyError};
use crate::domains::{beta_bound, in_penta, Criterion, Matrix2, Mode, PentaPoint};
use crate::gamma_inner::{ay_equality_interpolant, gamma_fraction, AyParams, GammaInnerError, GammaInnerRep};
use crate::penta_inner::{a_spectrum, APart, PentaInnerRep, PentaMap};
use crate::report::Report;
use crate::specfact::{fejer_riesz, SpecFactError};
use crate::tol;

/// Slack on the feasibility inequalities.
pub const FEASIBILITY_TOL: f64 = 1e-9;
/// Distance at which `|a0|` counts as equal to the reachable bound.
pub const EQUALITY_TOL: f64 = 1e-9;
/// Tolerance for `x(λ0) = target`.
pub const TARGET_TOL: f64 = 1e-8;
/// Tolerance for `x(0) = (0, 0, 0)`.
pub const ORIGIN_TOL: f64 = 1e-12;

pub const COND_S: &str = "|s0| < 2";
pub const COND_F: &str = "F <= |lambda0|";
pub const COND_A: &str = "|a0| <= |lambda0| sqrt(1 - |s0|^2/4)";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SchwarzError {
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("infeasible: {} violated (margin {:e})", .0.binding, .0.margin)]
    Infeasible(FeasibilityCertificate),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error(
        "|a0| = {a_abs} exceeds |lambda0|·|A/D(lambda0)| = {reach} reachable by the constructed \
         Γ-interpolant (sufficient-condition bound {bound})"
    )]
    OutOfReach { a_abs: f64, reach: f64, bound: f64 },
    #[error("numerical failure: {0}")]
    Numeric(String),
    #[error("solution failed verification:\n{0}")]
    Verification(Report),
}

impl From<SpecFactError> for SchwarzError {
    fn from(e: SpecFactError) -> Self {
        SchwarzError::Numeric(e.to_string())
    }
}

impl From<PolyError> for SchwarzError {
    fn from(e: PolyError) -> Self {
        SchwarzError::Numeric(e.to_string())
    }
}

impl From<GammaInnerError> for SchwarzError {
    fn from(e: GammaInnerError) -> Self {
        match e {
            GammaInnerError::Inconsistent(m) => SchwarzError::Inconsistent(m),
            other => SchwarzError::Numeric(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchwarzProblem {
    pub lambda0: Complex,
    pub target: PentaPoint,
}

impl SchwarzProblem {
    /// Requires `0 < |λ0| < 1` and the target in P̄.
    pub fn new(lambda0: Complex, target: PentaPoint) -> Result<Self, SchwarzError> {
        let la = lambda0.norm();
        if !(la > 0.0 && la < 1.0) {
            return Err(SchwarzError::InvalidProblem(format!("|lambda0| = {la} is not in (0, 1)")));
        }
        let v = in_penta(target, Mode::Closed, Criterion::Beta, tol::MEMBERSHIP);
        if !v.inside {
            return Err(SchwarzError::InvalidProblem(format!(
                "target is not in the closed pentablock ({} violated by {:e})",
                v.binding, -v.margin
            )));
        }
        Ok(Self { lambda0, target })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityCertificate {
    /// `(2|s0 − p0 s̄0| + |s0² − 4p0|)/(4 − |s0|²)`; `+∞` when `|s0| ≥ 2`.
    pub fraction: f64,
    pub s_bound_ok: bool,
    pub f_ok: bool,
    pub a_bound_ok: bool,
    /// `|λ0|·√(1 − ¼|s0|²)`
    pub a_bound: f64,
    /// `|λ0|·|1 − ½s0β̄/(1 + √(1 − |β|²))|`, a necessary bound (diagnostic).
    pub a_bound_beta: f64,
    pub beta_bound_ok: bool,
    pub feasible: bool,
    pub binding: &'static str,
    pub margin: f64,
}

pub fn feasibility(p: &SchwarzProblem) -> FeasibilityCertificate {
    let PentaPoint { a, s, p: p0 } = p.target;
    let la = p.lambda0.norm();
    let s_margin = 2.0 - s.norm();
    let s_ok = s_margin > 0.0;
    let fraction = if s_ok { gamma_fraction(s, p0) } else { f64::INFINITY };
    let f_margin = la - fraction;
    let f_ok = s_ok && f_margin >= -FEASIBILITY_TOL;
    let a_bound = la * (1.0 - 0.25 * s.norm_sqr()).max(0.0).sqrt();
    let a_margin = a_bound - a.norm();
    let a_ok = a_margin >= -FEASIBILITY_TOL;
    let a_bound_beta = la * beta_bound(p.target.gamma());
    let beta_ok = a.norm() <= a_bound_beta + FEASIBILITY_TOL;

    let conds = [(COND_S, s_ok, s_margin), (COND_F, f_ok, f_margin), (COND_A, a_ok, a_margin)];
    let (binding, margin) = match conds.iter().find(|c| !c.1) {
        Some(c) => (c.0, c.2),
        None => conds
            .iter()
            .map(|c| (c.0, c.2))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .expect("three conditions"),
    };
    FeasibilityCertificate {
        fraction,
        s_bound_ok: s_ok,
        f_ok,
        a_bound_ok: a_ok,
        a_bound,
        a_bound_beta,
        beta_bound_ok: beta_ok,
        feasible: s_ok && f_ok && a_ok,
        binding,
        margin,
    }
}

/// `‖[λ1 0; a λ2]‖ ≤ 1`, i.e. `|λ1|, |λ2| ≤ 1` and
/// `|a| ≤ √(1 − |λ1|²)·√(1 − |λ2|²)`.
pub fn triangular_contraction_check(l1: Complex, l2: Complex, a: Complex) -> bool {
    const EPS: f64 = 1e-12;
    let (n1, n2) = (l1.norm_sqr(), l2.norm_sqr());
    n1 <= 1.0 + EPS
        && n2 <= 1.0 + EPS
        && a.norm() <= ((1.0 - n1).max(0.0) * (1.0 - n2).max(0.0)).sqrt() + EPS
}

/// The linear matrix interpolant `F(λ) = (λ/λ0)[λ1 0; a0 λ2]` and `π ∘ F`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecialMap {
    pub lambda0: Complex,
    pub lambda1: Complex,
    pub lambda2: Complex,
    pub a0: Complex,
}

impl SpecialMap {
    pub fn matrix(&self, z: Complex) -> Matrix2 {
        let t = z / self.lambda0;
        Matrix2::new(t * self.lambda1, Complex::new(0.0, 0.0), t * self.a0, t * self.lambda2)
    }
}

impl PentaMap for SpecialMap {
    /// `(t·a0, t·(λ1 + λ2), t²·λ1λ2)` with `t = λ/λ0`.
    fn eval(&self, z: Complex) -> PentaPoint {
        crate::domains::pi_map(&self.matrix(z))
    }
}

pub fn schwarz_special(
    lambda0: Complex,
    lambda1: Complex,
    lambda2: Complex,
    a0: Complex,
) -> Result<SpecialMap, SchwarzError> {
    let la = lambda0.norm();
    if !(la > 0.0 && la < 1.0) {
        return Err(SchwarzError::InvalidProblem(format!("|lambda0| = {la} is not in (0, 1)")));
    }
    if !triangular_contraction_check(lambda1 / lambda0, lambda2 / lambda0, a0 / lambda0) {
        let bound = la
            * ((1.0 - (lambda1 / lambda0).norm_sqr()).max(0.0) * (1.0 - (lambda2 / lambda0).norm_sqr()).max(0.0))
                .sqrt();
        return Err(SchwarzError::InvalidProblem(format!(
            "no analytic F: D → closed unit ball with F(0) = 0, F(lambda0) = [lambda1 0; a0 lambda2]: \
             need |lambda1|, |lambda2| <= |lambda0| and |a0| <= {bound}"
        )));
    }
    Ok(SpecialMap { lambda0, lambda1, lambda2, a0 })
}

/// Degree ≤ 2 inner `m` with `m(0) = 0` and `m(λ0) = ρ·λ0/|λ0|`, for
/// `0 ≤ ρ ≤ |λ0|`: `m = ū·λ·B_w` with `w` on the ray through `λ0`.
pub fn radius_match_blaschke(lambda0: Complex, rho: f64) -> Result<BlaschkeProduct, SchwarzError> {
    let la = lambda0.norm();
    if !(la > 0.0 && la < 1.0) {
        return Err(SchwarzError::InvalidProblem(format!("|lambda0| = {la} is not in (0, 1)")));
    }
    if !(0.0..1.0).contains(&rho) {
        return Err(SchwarzError::InvalidProblem(format!("target radius {rho} is not in [0, 1)")));
    }
    if rho > la + 1e-12 {
        return Err(SchwarzError::InvalidProblem(format!(
            "target radius {rho} exceeds |lambda0| = {la}; impossible for m(0) = 0 by the Schwarz lemma"
        )));
    }
    let u = unit(lambda0);
    let r = (rho / la).min(1.0);
    if 1.0 - r <= 1e-12 {
        return Ok(BlaschkeProduct::identity());
    }
    let rho_w = (la - r) / (1.0 - r * la);
    BlaschkeProduct::new(u.conj(), vec![Complex::new(0.0, 0.0), rho_w * u]).map_err(SchwarzError::from)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructionPath {
    EqualityPEq,
    EqualityPLt,
    Reduced,
    ZeroTarget,
    MatrixScaling,
}

impl fmt::Display for ConstructionPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::EqualityPEq => "equality_p_eq",
            Self::EqualityPLt => "equality_p_lt",
            Self::Reduced => "reduced",
            Self::ZeroTarget => "zero_target",
            Self::MatrixScaling => "matrix_scaling",
        })
    }
}

/// Intermediate quantities of a solve.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionAux {
    pub lambda_star: Option<Complex>,
    pub m: Option<BlaschkeProduct>,
    /// `A(λ0)/D(λ0)`
    pub q: Complex,
    /// `|λ0|·|q|`, the largest `|a0|` this Γ-interpolant can carry.
    pub reach: f64,
    pub gamma: Option<Complex>,
    pub mu0: Option<Complex>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchwarzSolution {
    pub x: PentaInnerRep,
    pub path: ConstructionPath,
    pub aux: SolutionAux,
    pub certificate: FeasibilityCertificate,
    pub report: Report,
}

const ZERO_F: f64 = 1e-12;

/// The Γ-part before reduction: an interpolant `h` with `h(0) = (0, 0)` and
/// `h(λ*) = (s0, p0)`, plus the map `m` with `m(λ0) = λ*` when `λ* ≠ λ0`.
struct GammaPart {
    h: GammaInnerRep,
    path: ConstructionPath,
    lambda_star: Option<Complex>,
    m: Option<BlaschkeProduct>,
}

fn gamma_part(p: &SchwarzProblem, fraction: f64) -> Result<GammaPart, SchwarzError> {
    let PentaPoint { s: s0, p: p0, .. } = p.target;
    let la = p.lambda0.norm();
    if fraction <= ZERO_F {
        let d = ComplexPoly::new(vec![Complex::new(1.0, 0.0), -p.lambda0.conj()]);
        let h = GammaInnerRep::new(ComplexPoly::zero(), d, 2)?;
        return Ok(GammaPart { h, path: ConstructionPath::ZeroTarget, lambda_star: None, m: None });
    }
    if p0.norm() > fraction + FEASIBILITY_TOL {
        return Err(SchwarzError::Inconsistent(format!(
            "|p0| = {} exceeds F = {fraction}",
            p0.norm()
        )));
    }
    let at_equality = (fraction - la).abs() <= FEASIBILITY_TOL;
    let lambda_star = if at_equality { p.lambda0 } else { fraction * unit(p.lambda0) };
    let p_eq = (p0.norm() - lambda_star.norm()).abs() <= crate::gamma_inner::P_EQ_TOL;
    if p_eq && s0.norm() > crate::gamma_inner::S_ZERO_TOL {
        return Err(SchwarzError::Inconsistent(format!(
            "|p0| = F requires s0 = 0, got |s0| = {}",
            s0.norm()
        )));
    }
    let h = ay_equality_interpolant(lambda_star, s0, p0)?;
    if at_equality {
        let path = if p_eq { ConstructionPath::EqualityPEq } else { ConstructionPath::EqualityPLt };
        return Ok(GammaPart { h, path, lambda_star: Some(lambda_star), m: None });
    }
    let m = radius_match_blaschke(p.lambda0, fraction)?;
    Ok(GammaPart { h, path: ConstructionPath::Reduced, lambda_star: Some(lambda_star), m: Some(m) })
}

pub fn solve(p: &SchwarzProblem) -> Result<SchwarzSolution, SchwarzError> {
    let cert = feasibility(p);
    if !cert.feasible {
        return Err(SchwarzError::Infeasible(cert));
    }
    let GammaPart { h, path, lambda_star, m } = gamma_part(p, cert.fraction)?;
    let l0 = p.lambda0;
    let a0 = p.target.a;
    let zero = Complex::new(0.0, 0.0);

    let spec = a_spectrum(&h);
    let a_is_zero = spec.max_abs_coeff() <= 1e-11 * h.d().max_abs_coeff().powi(2);
    let a = if a_is_zero { None } else { Some(fejer_riesz(&spec)?.d) };
    // For h ∘ m the outer factor is den_mⁿ·A(num_m/den_m): it has no zeros
    // in D and its modulus on T matches, and it avoids refactoring a
    // spectrum whose roots crowd T when m has a zero near T.
    let (h, a) = match &m {
        None => (h, a),
        Some(m) => {
            let a = match a {
                Some(a) => Some(a.compose_rational(h.n(), &m.numerator(), &m.denominator())?),
                None => None,
            };
            (h.compose_with_blaschke(m)?, a)
        }
    };
    let (a_part, q, gamma, mu0) = match a {
        None => {
            if a0.norm() > EQUALITY_TOL {
                return Err(SchwarzError::OutOfReach { a_abs: a0.norm(), reach: 0.0, bound: cert.a_bound });
            }
            (APart::Zero, zero, None, None)
        }
        Some(a) => {
            let q = a.eval(l0) / h.d().eval(l0);
            let reach = l0.norm() * q.norm();
            if a0.norm() > reach + EQUALITY_TOL {
                return Err(SchwarzError::OutOfReach { a_abs: a0.norm(), reach, bound: cert.a_bound });
            }
            if (a0.norm() - reach).abs() <= EQUALITY_TOL {
                // a = γλ·A/D
                let g = unit(a0 / (l0 * q));
                let a_in = BlaschkeProduct::new(g, vec![zero])?;
                (APart::Outer { a_in, a }, q, Some(g), None)
            } else {
                // a = λ·(B_{μ0}⁻¹ ∘ B_{λ0})·A/D
                let mu = a0 / (l0 * q);
                let w = (l0 - mu) / (1.0 - mu * l0.conj());
                let c = (1.0 - mu * l0.conj()) / (1.0 - mu.conj() * l0);
                let a_in = BlaschkeProduct::new(unit(c), vec![zero, w])?;
                (APart::Outer { a_in, a }, q, None, Some(mu))
            }
        }
    };
    let x = PentaInnerRep::from_parts(a_part, h);

    let mut report = x.verify();
    let origin = x.eval(zero).distance(&PentaPoint::new(zero, zero, zero));
    report.push("x(0) = (0, 0, 0)", origin <= ORIGIN_TOL, ORIGIN_TOL - origin);
    let hit = x.eval(l0).distance(&p.target);
    report.push("x(lambda0) = target", hit <= TARGET_TOL, TARGET_TOL - hit);
    if !report.passed() {
        return Err(SchwarzError::Verification(report));
    }
    let aux = SolutionAux { lambda_star, m, q, reach: l0.norm() * q.norm(), gamma, mu0 };
    Ok(SchwarzSolution { x, path, aux, certificate: cert, report })
}

/// Compares the Fejér–Riesz factor `A` of the extremal interpolant with the
/// closed form `A = b0(1 + b1λ)`, `|b0|² = |1 − p̄1ζ²λ0|²`,
/// `|b1|² = 2|λ0ζ² − p1|/|1 − p̄1ζ²λ0| − 1`, up to a unimodular constant.
pub fn closed_form_a_check(lambda0: Complex, s0: Complex, p0: Complex) -> Result<Report, SchwarzError> {
    let (a, params) = extremal_a(lambda0, s0, p0)?;
    let AyParams { zeta, p1, .. } = params;
    let z2 = zeta * zeta;
    let d0 = (1.0 - p1.conj() * z2 * lambda0).norm();
    let b0 = d0;
    let b1_sq = 2.0 * (lambda0 * z2 - p1).norm() / d0 - 1.0;
    let mut rep = Report::new();
    let dev0 = (a.coeff(0).norm() - b0).abs();
    rep.push("|A(0)| = |b0|", dev0 <= 1e-7, -dev0);
    if b1_sq < 0.0 {
        rep.push("|b1|^2 >= 0", false, b1_sq);
    } else {
        let dev1 = (a.coeff(1).norm() - b0 * b1_sq.sqrt()).abs();
        rep.push("|A'(0)| = |b0 b1|", dev1 <= 1e-7, -dev1);
    }
    Ok(rep)
}

/// The same comparison against `|b1| = 1`, `|b0|² = |d0|·|d1|` where
/// `D ∝ d0 + d1λ`, which is what the factorization of
/// `|D|² − ¼|E|²` (a double root on T) actually gives.
pub fn closed_form_a_corrected(lambda0: Complex, s0: Complex, p0: Complex) -> Result<Report, SchwarzError> {
    let (a, params) = extremal_a(lambda0, s0, p0)?;
    let AyParams { zeta, p1, .. } = params;
    let z2 = zeta * zeta;
    let d0 = (1.0 - p1.conj() * z2 * lambda0).norm();
    let d1 = (p1.conj() * z2 - lambda0.conj()).norm();
    let b0 = (d0 * d1).sqrt();
    let mut rep = Report::new();
    let dev0 = (a.coeff(0).norm() - b0).abs();
    rep.push("|A(0)| = sqrt(|d0||d1|)", dev0 <= 1e-7, -dev0);
    let dev1 = (a.coeff(1).norm() - b0).abs();
    rep.push("|A'(0)| = |A(0)|", dev1 <= 1e-7, -dev1);
    Ok(rep)
}

fn extremal_a(lambda0: Complex, s0: Complex, p0: Complex) -> Result<(ComplexPoly, AyParams), SchwarzError> {
    if p0.norm() >= lambda0.norm() - crate::gamma_inner::P_EQ_TOL {
        return Err(SchwarzError::InvalidProblem("closed form needs |p0| < |lambda0|".into()));
    }
    let h = ay_equality_interpolant(lambda0, s0, p0)?;
    let a = fejer_riesz(&a_spectrum(&h))?.d;
    Ok((a, AyParams::new(lambda0, s0, p0)))
}
