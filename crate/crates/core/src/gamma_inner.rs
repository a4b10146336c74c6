//! Rational Γ-inner functions `h = (E/D, D^{~n}/D)`.

use thiserror::Error;

use crate::cpoly::{cluster_roots, unit, BlaschkeProduct, Complex, ComplexPoly, PolyError};
use crate::domains::{in_gamma, GammaPoint, Mode};
use crate::report::Report;
use crate::sampling;
use crate::tol;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GammaInnerError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("royal polynomial vanishes identically: h maps into the royal variety")]
    RoyalVariety,
    #[error("royal polynomial has a root on T of odd order near {0}")]
    Parity(Complex),
    #[error("data is not extremal: F = {fraction} but |λ0| = {lambda_abs}")]
    NotExtremal { fraction: f64, lambda_abs: f64 },
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error("composed function failed verification: {0}")]
    Composition(String),
}

/// Royal node with its multiplicity (T-roots of `R_h` count half).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoyalNode {
    pub node: Complex,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GammaInnerRep {
    e: ComplexPoly,
    d: ComplexPoly,
    n: usize,
}

pub const BOUNDARY_SAMPLES: usize = 512;
pub const INTERIOR_GRID: usize = 32;

/// Relative size below which the royal polynomial is taken to vanish.
const ROYAL_ZERO_REL: f64 = 1e-11;

/// Separation accepted between the two numerical copies of a double T-root.
const T_PAIR_MAX: f64 = 1e-4;

impl GammaInnerRep {
    /// Checks the degree bounds only; see [`GammaInnerRep::verify`] for the
    /// full invariant suite.
    pub fn new(e: ComplexPoly, d: ComplexPoly, n: usize) -> Result<Self, GammaInnerError> {
        for (name, g) in [("E", &e), ("D", &d)] {
            if let Some(deg) = g.degree() {
                if deg > n {
                    return Err(PolyError::DegreeViolation { degree: deg, bound: n }.into());
                }
            } else if name == "D" {
                return Err(PolyError::Invalid("D must be nonzero".into()).into());
            }
        }
        Ok(Self { e, d, n })
    }

    pub fn e(&self) -> &ComplexPoly {
        &self.e
    }

    pub fn d(&self) -> &ComplexPoly {
        &self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d_tilde(&self) -> ComplexPoly {
        self.d.involution(self.n).expect("deg D <= n by construction")
    }

    pub fn eval(&self, z: Complex) -> GammaPoint {
        let d = self.d.eval(z);
        GammaPoint::new(self.e.eval(z) / d, self.d_tilde().eval(z) / d)
    }

    /// `R_h = 4·D·D^{~n} − E²`
    pub fn royal_polynomial(&self) -> ComplexPoly {
        let r = &(&self.d * &self.d_tilde()).scale_real(4.0) - &(&self.e * &self.e);
        let scale = 4.0 * self.d.max_abs_coeff().powi(2) + self.e.max_abs_coeff().powi(2);
        if r.max_abs_coeff() <= ROYAL_ZERO_REL * scale {
            ComplexPoly::zero()
        } else {
            r
        }
    }

    /// Roots of `R_h` in the closed disc. Roots on T are reported with half
    /// their order.
    pub fn royal_nodes(&self) -> Result<Vec<RoyalNode>, GammaInnerError> {
        let r = self.royal_polynomial();
        if r.is_zero() {
            return Err(GammaInnerError::RoyalVariety);
        }
        let roots = r.roots()?;
        let band = tol::FR_PAIRING;
        let mut disc = Vec::new();
        let mut on_t = Vec::new();
        for z in roots {
            if (z.norm() - 1.0).abs() < band {
                on_t.push(z);
            } else if z.norm() < 1.0 {
                disc.push(z);
            }
        }
        let mut out: Vec<RoyalNode> = cluster_roots(&disc, tol::ROOT_CLUSTER)
            .into_iter()
            .map(|c| RoyalNode { node: c.center, multiplicity: c.multiplicity })
            .collect();

        // Pair T-roots into double roots, then merge coincident pairs.
        let mut halves = Vec::new();
        let mut taken = vec![false; on_t.len()];
        for i in 0..on_t.len() {
            if taken[i] {
                continue;
            }
            taken[i] = true;
            let partner = (0..on_t.len())
                .filter(|&j| !taken[j])
                .map(|j| (j, (on_t[i] - on_t[j]).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1));
            match partner {
                Some((j, dist)) if dist <= T_PAIR_MAX => {
                    taken[j] = true;
                    halves.push(unit(on_t[i] + on_t[j]));
                }
                _ => return Err(GammaInnerError::Parity(on_t[i])),
            }
        }
        out.extend(
            cluster_roots(&halves, tol::ROOT_CLUSTER)
                .into_iter()
                .map(|c| RoyalNode { node: unit(c.center), multiplicity: c.multiplicity }),
        );
        out.sort_by(|a, b| crate::cpoly::roots_order(&a.node, &b.node));
        Ok(out)
    }

    /// Degree of `p = D^{~n}/D` after cancelling common roots.
    pub fn degree(&self) -> usize {
        let num = self.d_tilde().roots().unwrap_or_default();
        let mut den = self.d.roots().unwrap_or_default();
        let mut remaining_num = 0;
        for r in num {
            match den
                .iter()
                .position(|q| (q - r).norm() <= tol::ROOT_CLUSTER)
            {
                Some(j) => {
                    den.swap_remove(j);
                }
                None => remaining_num += 1,
            }
        }
        remaining_num.max(den.len())
    }

    /// `(s'(0), p'(0))` from the coefficients.
    pub fn derivative_at_zero(&self) -> (Complex, Complex) {
        let d0 = self.d.coeff(0);
        let d1 = self.d.coeff(1);
        let quot = |g: &ComplexPoly| (g.coeff(1) * d0 - g.coeff(0) * d1) / (d0 * d0);
        (quot(&self.e), quot(&self.d_tilde()))
    }

    pub fn verify(&self) -> Report {
        self.verify_with(BOUNDARY_SAMPLES, INTERIOR_GRID)
    }

    pub fn verify_with(&self, boundary: usize, grid: usize) -> Report {
        let mut rep = Report::new();
        let n = self.n;
        let deg = |g: &ComplexPoly| g.degree().map_or(0, |d| d);
        rep.push("deg E <= n", deg(&self.e) <= n, n as f64 - deg(&self.e) as f64);
        rep.push("deg D <= n", deg(&self.d) <= n, n as f64 - deg(&self.d) as f64);

        let sym_dev = match self.e.involution(n) {
            Ok(inv) => inv.distance(&self.e) / self.e.max_abs_coeff().max(self.d.max_abs_coeff()),
            Err(_) => f64::INFINITY,
        };
        rep.push("E is n-symmetric", sym_dev <= 1e-9, -sym_dev);

        match self.d.min_root_modulus() {
            Ok(m) => {
                let margin = if m.is_finite() { m - 1.0 } else { f64::MAX };
                rep.push("D has no roots in the closed disc", margin > tol::BOUNDARY, margin)
            }
            Err(_) => rep.push("D has no roots in the closed disc", false, f64::NEG_INFINITY),
        }

        let mut ratio_margin = f64::INFINITY;
        for z in sampling::circle(boundary) {
            let m = 2.0 - self.e.eval(z).norm() / self.d.eval(z).norm();
            ratio_margin = ratio_margin.min(m);
        }
        rep.push("|E| <= 2|D| on T", ratio_margin >= -tol::INNER_BOUNDARY, ratio_margin);

        rep.push_worst(
            "boundary samples in bΓ",
            sampling::circle(boundary).map(|z| in_gamma(self.eval(z), Mode::Boundary, tol::INNER_BOUNDARY)),
        );
        rep.push_worst(
            "interior samples in Γ",
            sampling::disc_grid(grid).map(|z| in_gamma(self.eval(z), Mode::Closed, tol::INNER_BOUNDARY)),
        );
        rep
    }

    /// Representation of `h ∘ m`.
    pub fn compose_with_blaschke(&self, m: &BlaschkeProduct) -> Result<GammaInnerRep, GammaInnerError> {
        let (num, den) = (m.numerator(), m.denominator());
        // Unimodular factor keeping D'^{~n'}/D' = p∘m and E' symmetric.
        let omega = m.c().conj().powu(self.n as u32).sqrt();
        let e = self.e.compose_rational(self.n, &num, &den)?.scale(omega);
        let d = self.d.compose_rational(self.n, &num, &den)?.scale(omega);
        let out = GammaInnerRep::new(e, d, self.n * m.degree())?;
        let report = out.verify();
        if !report.passed() {
            let names: Vec<_> = report.failures().map(|c| c.name.clone()).collect();
            return Err(GammaInnerError::Composition(names.join(", ")));
        }
        Ok(out)
    }

    /// `(φ + ψ, φψ)` for finite Blaschke products `φ, ψ`.
    pub fn from_blaschke_pair(phi: &BlaschkeProduct, psi: &BlaschkeProduct) -> GammaInnerRep {
        let (p1, q1) = (phi.numerator(), phi.denominator());
        let (p2, q2) = (psi.numerator(), psi.denominator());
        let omega = (phi.c() * psi.c()).conj().sqrt();
        let d = (&q1 * &q2).scale(omega);
        let e = (&(&p1 * &q2) + &(&p2 * &q1)).scale(omega);
        GammaInnerRep { e, d, n: phi.degree() + psi.degree() }
    }
}

/// `(2|s − p s̄| + |s² − 4p|)/(4 − |s|²)`, the quantity that must not exceed
/// `|λ0|` for a Γ-valued Schwarz interpolant to exist. Requires `|s| < 2`.
pub fn gamma_fraction(s: Complex, p: Complex) -> f64 {
    (2.0 * (s - p * s.conj()).norm() + (s * s - 4.0 * p).norm()) / (4.0 - s.norm_sqr())
}

/// Parameters of the degree-2 extremal interpolant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AyParams {
    pub zeta: Complex,
    pub p1: Complex,
    pub c: f64,
    pub lambda0: Complex,
}

impl AyParams {
    pub fn new(lambda0: Complex, s0: Complex, p0: Complex) -> Self {
        let la = lambda0.norm();
        let zeta = if s0.norm() == 0.0 {
            Complex::new(1.0, 0.0)
        } else {
            la * s0 / (lambda0 * s0.norm())
        };
        let z2 = zeta * zeta;
        let c = (2.0 / la)
            * ((lambda0.conj() - p0.conj() * lambda0 * z2).norm() - (lambda0 * lambda0 * z2 - p0).norm());
        Self { zeta, p1: p0 / lambda0, c, lambda0 }
    }
}

/// Tolerance on `F = |λ0|` for the extremal interpolant.
pub const EQUALITY_TOL: f64 = 1e-8;
/// `||p0| − |λ0||` below this selects the `(0, ωλ)` branch.
pub const P_EQ_TOL: f64 = 1e-9;
/// `|s0|` allowed in the `(0, ωλ)` branch.
pub const S_ZERO_TOL: f64 = 1e-7;

/// Rational Γ-inner `φ` with `φ(0) = (0, 0)` and `φ(λ0) = (s0, p0)` when
/// `gamma_fraction(s0, p0) = |λ0|`.
pub fn ay_equality_interpolant(
    lambda0: Complex,
    s0: Complex,
    p0: Complex,
) -> Result<GammaInnerRep, GammaInnerError> {
    let la = lambda0.norm();
    if la == 0.0 || la >= 1.0 {
        return Err(GammaInnerError::Inconsistent(format!("|λ0| = {la} is not in (0, 1)")));
    }
    if s0.norm() >= 2.0 {
        return Err(GammaInnerError::Inconsistent(format!("|s0| = {} is not < 2", s0.norm())));
    }
    let fraction = gamma_fraction(s0, p0);
    if (fraction - la).abs() > EQUALITY_TOL {
        return Err(GammaInnerError::NotExtremal { fraction, lambda_abs: la });
    }
    if (p0.norm() - la).abs() <= P_EQ_TOL {
        if s0.norm() > S_ZERO_TOL {
            return Err(GammaInnerError::Inconsistent(format!(
                "|p0| = |λ0| requires s0 = 0, got |s0| = {}",
                s0.norm()
            )));
        }
        let omega1 = unit(p0 / lambda0).sqrt();
        return GammaInnerRep::new(ComplexPoly::zero(), ComplexPoly::constant(omega1.conj()), 1);
    }
    let AyParams { zeta, p1, c, .. } = AyParams::new(lambda0, s0, p0);
    let z2 = zeta * zeta;
    let e = ComplexPoly::new(vec![Complex::new(0.0, 0.0), Complex::new(c, 0.0)]);
    let d = ComplexPoly::new(vec![
        1.0 - p1.conj() * z2 * lambda0,
        p1.conj() * z2 - lambda0.conj(),
    ])
    .scale(zeta.conj());
    GammaInnerRep::new(e, d, 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: f64) -> Complex {
        Complex::new(x, 0.0)
    }

    fn rep(e: &[f64], d: &[f64], n: usize) -> GammaInnerRep {
        GammaInnerRep::new(ComplexPoly::from_real(e), ComplexPoly::from_real(d), n).unwrap()
    }

    fn worked() -> GammaInnerRep {
        let rr = 3.0 + 2.0 * 2f64.sqrt();
        GammaInnerRep::new(
            ComplexPoly::new(vec![Complex::new(0.0, -1.0), Complex::new(0.0, 1.0)]),
            ComplexPoly::from_real(&[rr / (rr - 1.0), -1.0 / (rr - 1.0)]),
            1,
        )
        .unwrap()
    }

    #[test]
    fn eval_examples() {
        let h = rep(&[], &[1.0], 1);
        let l = Complex::new(0.2, 0.3);
        assert_eq!(h.eval(l), GammaPoint::new(r(0.0), l));
        assert_eq!(rep(&[2.0], &[1.0], 0).eval(l), GammaPoint::new(r(2.0), r(1.0)));
        assert!(worked().eval(r(1.0)).s.norm() < 1e-15);
    }

    #[test]
    fn royal_polynomial_examples() {
        assert_eq!(rep(&[], &[1.0], 1).royal_polynomial(), ComplexPoly::from_real(&[0.0, 4.0]));
        assert!(rep(&[2.0], &[1.0], 0).royal_polynomial().is_zero());
        let r4 = worked().royal_polynomial();
        assert!(r4.distance(&ComplexPoly::from_real(&[0.0, 4.0])) < 1e-12, "{r4:?}");
    }

    #[test]
    fn royal_nodes_examples() {
        let nodes = rep(&[], &[1.0], 1).royal_nodes().unwrap();
        assert_eq!(nodes, vec![RoyalNode { node: r(0.0), multiplicity: 1 }]);
        assert_eq!(rep(&[2.0], &[1.0], 0).royal_nodes(), Err(GammaInnerError::RoyalVariety));
    }

    #[test]
    fn verify_examples() {
        assert!(rep(&[], &[1.0], 1).verify().passed());
        assert!(!rep(&[3.0], &[1.0], 0).verify().passed());
        assert!(worked().verify().passed());
    }

    #[test]
    fn ay_p_eq_branch() {
        let h = ay_equality_interpolant(r(0.5), r(0.0), r(0.5)).unwrap();
        let l = Complex::new(0.1, -0.4);
        let v = h.eval(l);
        assert!(v.s.norm() < 1e-15 && (v.p - l).norm() < 1e-15);
    }

    #[test]
    fn ay_royal_example() {
        let h = ay_equality_interpolant(r(0.3), r(0.6), r(0.09)).unwrap();
        let v = h.eval(r(0.3));
        assert!((v.s - 0.6).norm() < 1e-12 && (v.p - 0.09).norm() < 1e-12);
        let z = h.eval(r(0.0));
        assert!(z.s.norm() < 1e-15 && z.p.norm() < 1e-15);
        // The interpolant is itself royal: (2λ, λ²).
        assert!(h.royal_polynomial().is_zero());
    }

    #[test]
    fn ay_rejects_non_extremal() {
        assert!(matches!(
            ay_equality_interpolant(r(0.5), r(0.0), r(0.0)),
            Err(GammaInnerError::NotExtremal { .. })
        ));
    }

    #[test]
    fn compose_examples() {
        let h = rep(&[], &[1.0], 1);
        let id = h.compose_with_blaschke(&BlaschkeProduct::identity()).unwrap();
        assert!(id.d().distance(h.d()) < 1e-15 && id.n() == 1);

        let m = BlaschkeProduct::new(r(1.0), vec![r(0.0), r(0.5)]).unwrap();
        let hm = h.compose_with_blaschke(&m).unwrap();
        assert_eq!(hm.n(), 2);
        let l = Complex::new(0.3, 0.2);
        assert!((hm.eval(l).p - m.eval(l).unwrap()).norm() < 1e-14);
    }

    #[test]
    fn blaschke_pair_royal() {
        let b = BlaschkeProduct::new(Complex::new(0.6, 0.8), vec![Complex::new(0.3, -0.2)]).unwrap();
        let h = GammaInnerRep::from_blaschke_pair(&b, &b);
        assert!(h.verify().passed());
        assert!(h.royal_polynomial().is_zero());
        let l = Complex::new(-0.2, 0.5);
        let bl = b.eval(l).unwrap();
        let v = h.eval(l);
        assert!((v.s - 2.0 * bl).norm() < 1e-14 && (v.p - bl * bl).norm() < 1e-14);
    }
}
