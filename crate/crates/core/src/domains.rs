//! Membership oracles and automorphisms for the symmetrized bidisc Γ and the
//! pentablock P̄.

use std::f64::consts::TAU;

use thiserror::Error;

use crate::cpoly::Complex;
use crate::tol;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DomainError {
    #[error("point outside the domain: {0}")]
    Domain(String),
    #[error("singular evaluation: {0}")]
    Singular(String),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2 {
    pub a11: Complex,
    pub a12: Complex,
    pub a21: Complex,
    pub a22: Complex,
}

impl Matrix2 {
    pub fn new(a11: Complex, a12: Complex, a21: Complex, a22: Complex) -> Self {
        Self { a11, a12, a21, a22 }
    }

    /// Largest singular value, from the eigenvalues of `M*M` with the
    /// discriminant written as a sum of squares.
    pub fn norm(&self) -> f64 {
        let h11 = self.a11.norm_sqr() + self.a21.norm_sqr();
        let h22 = self.a12.norm_sqr() + self.a22.norm_sqr();
        let h12 = self.a11.conj() * self.a12 + self.a21.conj() * self.a22;
        let disc = ((h11 - h22).powi(2) + 4.0 * h12.norm_sqr()).sqrt();
        (0.5 * (h11 + h22 + disc)).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaPoint {
    pub s: Complex,
    pub p: Complex,
}

impl GammaPoint {
    pub fn new(s: Complex, p: Complex) -> Self {
        Self { s, p }
    }

    /// `(z + w, zw)`
    pub fn symmetrize(z: Complex, w: Complex) -> Self {
        Self { s: z + w, p: z * w }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PentaPoint {
    pub a: Complex,
    pub s: Complex,
    pub p: Complex,
}

impl PentaPoint {
    pub fn new(a: Complex, s: Complex, p: Complex) -> Self {
        Self { a, s, p }
    }

    pub fn gamma(&self) -> GammaPoint {
        GammaPoint { s: self.s, p: self.p }
    }

    /// Largest coordinatewise distance.
    pub fn distance(&self, other: &PentaPoint) -> f64 {
        (self.a - other.a)
            .norm()
            .max((self.s - other.s).norm())
            .max((self.p - other.p).norm())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Open,
    Closed,
    Boundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    Beta,
    SupPsi,
}

/// Outcome of a membership test. `margin` is the slack of the binding
/// condition: positive inside, negative outside, `−|deviation|` for
/// equalities.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipVerdict {
    pub inside: bool,
    pub margin: f64,
    pub binding: &'static str,
}

impl MembershipVerdict {
    /// Closed-type verdict over named slacks: inside iff every slack is at
    /// least `−tol`.
    fn closed(conds: &[(&'static str, f64)], tol: f64) -> Self {
        let (binding, margin) = conds
            .iter()
            .copied()
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("at least one condition");
        Self { inside: margin >= -tol, margin, binding }
    }

    /// Open-type verdict: strict inequalities, so inside iff every slack
    /// exceeds `tol`.
    fn open(conds: &[(&'static str, f64)], tol: f64) -> Self {
        let mut v = Self::closed(conds, tol);
        v.inside = v.margin > tol;
        v
    }
}

pub const COND_S_BOUND: &str = "|s| <= 2";
pub const COND_GAMMA: &str = "|s - conj(s)p| <= 1 - |p|^2";
pub const COND_G: &str = "|s - conj(s)p| < 1 - |p|^2";
pub const COND_P_UNIT: &str = "|p| = 1";
pub const COND_S_SYM: &str = "s = conj(s)p";
pub const COND_A_BETA: &str = "|a| <= |1 - s conj(beta)/(2(1 + sqrt(1 - |beta|^2)))|";
pub const COND_SUP_PSI: &str = "sup |Psi_z| <= 1";
pub const COND_A_BOUNDARY: &str = "|a| = sqrt(1 - |s|^2/4)";
pub const COND_A_ZERO: &str = "a = 0";
pub const COND_ROYAL: &str = "s^2 = 4p";

/// `π(A) = (a21, tr A, det A)`
pub fn pi_map(m: &Matrix2) -> PentaPoint {
    PentaPoint {
        a: m.a21,
        s: m.a11 + m.a22,
        p: m.a11 * m.a22 - m.a12 * m.a21,
    }
}

pub fn in_gamma(g: GammaPoint, mode: Mode, tol: f64) -> MembershipVerdict {
    let GammaPoint { s, p } = g;
    let lhs = (s - s.conj() * p).norm();
    let rhs = 1.0 - p.norm_sqr();
    match mode {
        Mode::Open => MembershipVerdict::open(&[(COND_G, rhs - lhs)], tol),
        Mode::Closed => MembershipVerdict::closed(
            &[(COND_S_BOUND, 2.0 - s.norm()), (COND_GAMMA, rhs - lhs)],
            tol,
        ),
        Mode::Boundary => MembershipVerdict::closed(
            &[
                (COND_P_UNIT, -(p.norm() - 1.0).abs()),
                (COND_S_BOUND, 2.0 - s.norm()),
                (COND_S_SYM, -lhs),
            ],
            tol,
        ),
    }
}

/// `β = (s − s̄p)/(1 − |p|²)`, or `s/2` when `|p| = 1`.
pub fn beta(g: GammaPoint, tol: f64) -> Result<Complex, DomainError> {
    let v = in_gamma(g, Mode::Closed, tol);
    if !v.inside {
        return Err(DomainError::Domain(format!(
            "({}, {}) is not in Γ ({} violated by {:e})",
            g.s, g.p, v.binding, -v.margin
        )));
    }
    Ok(beta_unchecked(g))
}

fn beta_unchecked(g: GammaPoint) -> Complex {
    let GammaPoint { s, p } = g;
    if p.norm() >= 1.0 - tol::BETA_DEGENERATE {
        s / 2.0
    } else {
        (s - s.conj() * p) / (1.0 - p.norm_sqr())
    }
}

/// The right-hand side `|1 − ½sβ̄/(1 + √(1−|β|²))|` of the β criterion.
pub fn beta_bound(g: GammaPoint) -> f64 {
    let b = beta_unchecked(g);
    let root = (1.0 - b.norm_sqr()).max(0.0).sqrt();
    (Complex::new(1.0, 0.0) - 0.5 * g.s * b.conj() / (1.0 + root)).norm()
}

/// `Ψ_z(a, s, p) = a(1 − |z|²)/(1 − sz + pz²)`
pub fn psi(z: Complex, x: PentaPoint) -> Result<Complex, DomainError> {
    if z.norm() >= 1.0 {
        return Err(DomainError::Domain(format!("|z| = {} is not < 1", z.norm())));
    }
    let den = Complex::new(1.0, 0.0) - x.s * z + x.p * z * z;
    if den.norm() == 0.0 {
        return Err(DomainError::Singular(format!("1 - sz + pz^2 vanishes at z = {z}")));
    }
    Ok(x.a * (1.0 - z.norm_sqr()) / den)
}

fn psi_abs(r: f64, phi: f64, x: PentaPoint) -> f64 {
    let z = Complex::from_polar(r, phi);
    let den = (Complex::new(1.0, 0.0) - x.s * z + x.p * z * z).norm();
    if den == 0.0 {
        f64::INFINITY
    } else {
        x.a.norm() * (1.0 - r * r) / den
    }
}

const PSI_GRID: usize = 64;
const PSI_REFINE: usize = 20;

/// Numerical `sup_{z∈D} |Ψ_z(x)|` and the maximizing `z`: a polar grid
/// followed by golden-section refinement in radius and in angle.
pub fn sup_psi(x: PentaPoint) -> (f64, Complex) {
    let dr = 1.0 / PSI_GRID as f64;
    let dphi = TAU / PSI_GRID as f64;
    let mut best = (psi_abs(0.0, 0.0, x), 0.0, 0.0);
    for i in 1..PSI_GRID {
        let r = i as f64 * dr;
        for j in 0..PSI_GRID {
            let phi = j as f64 * dphi;
            let v = psi_abs(r, phi, x);
            if v > best.0 {
                best = (v, r, phi);
            }
        }
    }
    let (_, mut r, mut phi) = best;
    for _ in 0..2 {
        r = golden_max(|t| psi_abs(t, phi, x), (r - dr).max(0.0), (r + dr).min(1.0 - 1e-12));
        phi = golden_max(|t| psi_abs(r, t, x), phi - dphi, phi + dphi);
    }
    let refined = psi_abs(r, phi, x);
    if refined >= best.0 {
        (refined, Complex::from_polar(r, phi))
    } else {
        (best.0, Complex::from_polar(best.1, best.2))
    }
}

fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..PSI_REFINE {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        x1
    } else {
        x2
    }
}

/// Membership in P (open) or P̄ (closed). `Mode::Boundary` is treated as
/// closed; use [`in_bpenta`] for the distinguished boundary.
pub fn in_penta(x: PentaPoint, mode: Mode, criterion: Criterion, tol: f64) -> MembershipVerdict {
    let open = mode == Mode::Open;
    let base = in_gamma(x.gamma(), if open { Mode::Open } else { Mode::Closed }, tol);
    if !base.inside {
        return base;
    }
    let cond = match criterion {
        Criterion::Beta => (COND_A_BETA, beta_bound(x.gamma()) - x.a.norm()),
        Criterion::SupPsi => (COND_SUP_PSI, 1.0 - sup_psi(x).0),
    };
    if open {
        MembershipVerdict::open(&[cond], tol)
    } else {
        MembershipVerdict::closed(&[cond], tol)
    }
}

/// Membership in the distinguished boundary bP̄. The modulus condition on
/// `a` is measured in the squared form `|a|² + ¼|s|² − 1`, which stays well
/// conditioned near `|s| = 2`.
pub fn in_bpenta(x: PentaPoint, tol: f64) -> MembershipVerdict {
    let g = in_gamma(x.gamma(), Mode::Boundary, tol);
    let a_dev = (x.a.norm_sqr() + 0.25 * x.s.norm_sqr() - 1.0).abs();
    let mut conds = vec![(COND_A_BOUNDARY, -a_dev)];
    conds.push((g.binding, g.margin));
    MembershipVerdict::closed(&conds, tol)
}

/// The set `K₁ = {(s, p) ∈ bΓ, |a| ≤ √(1 − ¼|s|²)}`.
pub fn in_k1(x: PentaPoint, tol: f64) -> MembershipVerdict {
    let g = in_gamma(x.gamma(), Mode::Boundary, tol);
    let bound = (1.0 - 0.25 * x.s.norm_sqr()).max(0.0).sqrt();
    MembershipVerdict::closed(&[(g.binding, g.margin), (COND_A_BOUNDARY, bound - x.a.norm())], tol)
}

pub fn on_royal_penta(x: PentaPoint, tol: f64) -> MembershipVerdict {
    MembershipVerdict::closed(
        &[
            (COND_A_ZERO, -x.a.norm()),
            (COND_ROYAL, -(x.s * x.s - 4.0 * x.p).norm()),
        ],
        tol,
    )
}

pub fn on_royal_gamma(g: GammaPoint, tol: f64) -> MembershipVerdict {
    MembershipVerdict::closed(&[(COND_ROYAL, -(g.s * g.s - 4.0 * g.p).norm())], tol)
}

const SINGULAR_EPS: f64 = 1e-14;

/// `Φ_ω(s, p) = (2ωp − s)/(2 − ωs)`
pub fn phi_omega(omega: Complex, g: GammaPoint) -> Result<Complex, DomainError> {
    let den = 2.0 - omega * g.s;
    if den.norm() <= SINGULAR_EPS {
        return Err(DomainError::Singular(format!("ωs = 2 at ω = {omega}, s = {}", g.s)));
    }
    Ok((2.0 * omega * g.p - g.s) / den)
}

/// `k(λ) = (0, −2λ, λ²)`
pub fn royal_geodesic(lambda: Complex) -> Result<PentaPoint, DomainError> {
    if lambda.norm() >= 1.0 {
        return Err(DomainError::Domain(format!("|λ| = {} is not < 1", lambda.norm())));
    }
    Ok(PentaPoint::new(Complex::new(0.0, 0.0), -2.0 * lambda, lambda * lambda))
}

/// The automorphism `f_{wv}` of P with `v = η·B_α`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Automorphism {
    pub w: Complex,
    pub eta: Complex,
    pub alpha: Complex,
}

impl Automorphism {
    pub fn new(w: Complex, eta: Complex, alpha: Complex) -> Result<Self, DomainError> {
        let unimodular = |z: Complex| (z.norm() - 1.0).abs() <= tol::MEMBERSHIP;
        if !unimodular(w) || !unimodular(eta) {
            return Err(DomainError::Domain("w and η must be unimodular".into()));
        }
        if alpha.norm() >= 1.0 {
            return Err(DomainError::Domain(format!("|α| = {} is not < 1", alpha.norm())));
        }
        Ok(Self { w, eta, alpha })
    }

    pub fn identity() -> Self {
        Self {
            w: Complex::new(1.0, 0.0),
            eta: Complex::new(1.0, 0.0),
            alpha: Complex::new(0.0, 0.0),
        }
    }

    /// `v(z) = η(z − α)/(1 − ᾱz)`
    pub fn v(&self, z: Complex) -> Result<Complex, DomainError> {
        let den = 1.0 - self.alpha.conj() * z;
        if den.norm() <= SINGULAR_EPS {
            return Err(DomainError::Singular(format!("v has a pole at {z}")));
        }
        Ok(self.eta * (z - self.alpha) / den)
    }

    /// `τ_v(z + w, zw) = (v(z) + v(w), v(z)v(w))`
    pub fn tau(&self, g: GammaPoint) -> Result<GammaPoint, DomainError> {
        let disc = g.s * g.s - 4.0 * g.p;
        let (z, w) = if disc.norm() < 1e-14 {
            (g.s / 2.0, g.s / 2.0)
        } else {
            let r = disc.sqrt();
            ((g.s + r) / 2.0, (g.s - r) / 2.0)
        };
        Ok(GammaPoint::symmetrize(self.v(z)?, self.v(w)?))
    }

    pub fn apply(&self, x: PentaPoint) -> Result<PentaPoint, DomainError> {
        let ac = self.alpha.conj();
        let den = 1.0 - ac * x.s + ac * ac * x.p;
        if den.norm() <= SINGULAR_EPS {
            return Err(DomainError::Singular("1 - conj(α)s + conj(α)²p vanishes".into()));
        }
        let a = self.w * self.eta * (1.0 - self.alpha.norm_sqr()) * x.a / den;
        let g = self.tau(x.gamma())?;
        Ok(PentaPoint::new(a, g.s, g.p))
    }

    /// `self ∘ other`, i.e. `f_{(w₁w₂)(v₁∘v₂)}`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        // Zero of v₁∘v₂ is v₂⁻¹(α₁).
        let u = self.alpha * other.eta.conj();
        let alpha = (u + other.alpha) / (1.0 + other.alpha.conj() * u);
        // Recover η by evaluating at a point well away from α.
        let probe = if alpha.norm() == 0.0 {
            Complex::new(0.5, 0.0)
        } else {
            -0.5 * alpha / alpha.norm()
        };
        let composed = self
            .v(other.v(probe).expect("probe inside the disc"))
            .expect("probe inside the disc");
        let b = (probe - alpha) / (1.0 - alpha.conj() * probe);
        let eta = composed / b;
        Automorphism {
            w: self.w * other.w,
            eta: eta / eta.norm(),
            alpha,
        }
    }

    /// `f_{w̄, v⁻¹}`
    pub fn inverse(&self) -> Automorphism {
        Automorphism {
            w: self.w.conj(),
            eta: self.eta.conj(),
            alpha: -self.eta * self.alpha,
        }
    }
}
