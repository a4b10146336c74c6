//! Synthesis of rational P̄-inner functions from prescribed zeros of `s`,
//! zeros of `a`, and royal nodes.

use std::f64::consts::TAU;

use thiserror::Error;

use crate::cpoly::{unit, BlaschkeProduct, Complex, ComplexPoly, PolyError};
use crate::gamma_inner::{GammaInnerError, GammaInnerRep};
use crate::penta_inner::{APart, PentaInnerRep};
use crate::report::Report;
use crate::specfact::{fejer_riesz, SpecFactError, TrigPoly};
use crate::tol;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstructError {
    #[error("invalid construction data: {0}")]
    Data(String),
    #[error("spectral factorization failed: {0}")]
    Numeric(#[from] SpecFactError),
    #[error(transparent)]
    Gamma(#[from] GammaInnerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Zeros of `s` in D (`alphas`) and on T (`etas`), zeros of `a` (`betas`),
/// royal nodes (`sigmas`) and the free parameters `t₊ > 0`, `t ≠ 0`, `|c| = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstructionData {
    pub alphas: Vec<Complex>,
    pub etas: Vec<Complex>,
    pub betas: Vec<Complex>,
    pub sigmas: Vec<Complex>,
    pub t_plus: f64,
    pub t: f64,
    pub c: Complex,
}

const DATA_TOL: f64 = 1e-9;

impl ConstructionData {
    /// Data with the default parameters `t₊ = 4`, `t = 1`, `c = 1`.
    pub fn new(alphas: Vec<Complex>, etas: Vec<Complex>, betas: Vec<Complex>, sigmas: Vec<Complex>) -> Self {
        Self {
            alphas,
            etas,
            betas,
            sigmas,
            t_plus: 4.0,
            t: 1.0,
            c: Complex::new(1.0, 0.0),
        }
    }

    pub fn n(&self) -> usize {
        self.sigmas.len()
    }

    pub fn m(&self) -> usize {
        self.betas.len()
    }

    pub fn validate(&self) -> Result<(), ConstructError> {
        let bad = |msg: String| Err(ConstructError::Data(msg));
        let all = self.alphas.iter().chain(&self.etas).chain(&self.betas).chain(&self.sigmas);
        if !all.clone().all(|z| z.re.is_finite() && z.im.is_finite())
            || !self.t_plus.is_finite()
            || !self.t.is_finite()
        {
            return bad("non-finite value".into());
        }
        if 2 * self.alphas.len() + self.etas.len() != self.n() {
            return bad(format!(
                "2·k0 + k1 = {} must equal the number of royal nodes n = {}",
                2 * self.alphas.len() + self.etas.len(),
                self.n()
            ));
        }
        if let Some(a) = self.alphas.iter().find(|a| a.norm() >= 1.0) {
            return bad(format!("alpha {a} is not in the open disc"));
        }
        if let Some(e) = self.etas.iter().find(|e| (e.norm() - 1.0).abs() > DATA_TOL) {
            return bad(format!("eta {e} is not on the unit circle"));
        }
        if let Some(b) = self.betas.iter().find(|b| b.norm() >= 1.0) {
            return bad(format!("beta {b} is not in the open disc"));
        }
        if let Some(s) = self.sigmas.iter().find(|s| s.norm() > 1.0 + DATA_TOL) {
            return bad(format!("sigma {s} is not in the closed disc"));
        }
        for s in &self.sigmas {
            if let Some(e) = self.etas.iter().find(|e| (*e - s).norm() <= DATA_TOL) {
                return bad(format!("sigma {s} coincides with eta {e}"));
            }
        }
        if !self.t_plus.is_finite() || self.t_plus <= 0.0 {
            return bad(format!("t_plus = {} must be finite and positive", self.t_plus));
        }
        if !self.t.is_finite() || self.t == 0.0 {
            return bad(format!("t = {} must be finite and nonzero", self.t));
        }
        if (self.c.norm() - 1.0).abs() > DATA_TOL {
            return bad(format!("|c| = {} must be 1", self.c.norm()));
        }
        Ok(())
    }

    /// Royal nodes with those within tolerance of T placed exactly on T.
    pub fn snapped_sigmas(&self) -> Vec<Complex> {
        self.sigmas
            .iter()
            .map(|&s| if (s.norm() - 1.0).abs() <= DATA_TOL { unit(s) } else { s })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstructionResult {
    pub data: ConstructionData,
    pub x: PentaInnerRep,
    /// The prescribed royal polynomial `R`.
    pub r: ComplexPoly,
    pub report: Report,
}

fn lin(c0: Complex, c1: Complex) -> ComplexPoly {
    ComplexPoly::new(vec![c0, c1])
}

/// `R = t₊ ∏ (λ − σ)(1 − σ̄λ)`
pub fn royal_target(data: &ConstructionData) -> ComplexPoly {
    let one = Complex::new(1.0, 0.0);
    data.snapped_sigmas()
        .iter()
        .fold(ComplexPoly::constant(Complex::new(data.t_plus, 0.0)), |acc, &s| {
            &(&acc * &lin(-s, one)) * &lin(one, -s.conj())
        })
}

/// `E = t ∏ (λ − α)(1 − ᾱλ) ∏ i e^{−iθ/2}(λ − η)` with `θ ∈ [0, 2π)`.
pub fn e_polynomial(data: &ConstructionData) -> ComplexPoly {
    let one = Complex::new(1.0, 0.0);
    let mut e = ComplexPoly::constant(Complex::new(data.t, 0.0));
    for &a in &data.alphas {
        e = &(&e * &lin(-a, one)) * &lin(one, -a.conj());
    }
    for &eta in &data.etas {
        let theta = eta.arg().rem_euclid(TAU);
        let k = Complex::new(0.0, 1.0) * Complex::from_polar(1.0, -theta / 2.0);
        let eta = unit(eta);
        e = &e * &lin(-k * eta, k);
    }
    e
}

/// Runs the synthesis and verifies the result.
pub fn build(data: &ConstructionData) -> Result<ConstructionResult, ConstructError> {
    data.validate()?;
    let n = data.n();
    let r = royal_target(data);
    let e = e_polynomial(data);
    let g = TrigPoly::from_shifted(&r, n);
    let d = fejer_riesz(&(&g + &TrigPoly::abs_sq(&e)).scale(0.25))?.d;
    // The outer factor of g/4 = (t₊/4)∏|1 − σ̄λ|² is known in closed form.
    let one = Complex::new(1.0, 0.0);
    let a = data.snapped_sigmas().iter().fold(
        ComplexPoly::constant(Complex::new(0.5 * data.t_plus.sqrt(), 0.0)),
        |acc, &s| &acc * &lin(one, -s.conj()),
    );
    let a_in = BlaschkeProduct::new(data.c, data.betas.clone())?;
    let h = GammaInnerRep::new(e, d, n)?;
    let x = PentaInnerRep::from_parts(APart::Outer { a_in, a }, h);

    let mut report = x.verify();
    let rh = x.gamma().royal_polynomial();
    let dev = rh.distance(&r) / r.max_abs_coeff();
    report.push("royal polynomial equals R", dev <= 1e-6, -dev);
    let deg = x.degree();
    let m = data.m();
    report.push(
        "degree <= (m + n, n)",
        deg.deg_a <= m + n && deg.deg_p <= n,
        ((m + n) as f64 - deg.deg_a as f64).min(n as f64 - deg.deg_p as f64),
    );
    Ok(ConstructionResult { data: data.clone(), x, r, report })
}

/// Bottleneck distance between multisets: the minimum over bijections of
/// the largest paired distance, `+∞` when sizes differ.
pub fn multiset_distance(a: &[Complex], b: &[Complex]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    fn rec(a: &[Complex], b: &[Complex], used: &mut [bool], i: usize, cur: f64, best: &mut f64) {
        if cur >= *best {
            return;
        }
        if i == a.len() {
            *best = cur;
            return;
        }
        for j in 0..b.len() {
            if !used[j] {
                used[j] = true;
                rec(a, b, used, i + 1, cur.max((a[i] - b[j]).norm()), best);
                used[j] = false;
            }
        }
    }
    let mut best = f64::INFINITY;
    rec(a, b, &mut vec![false; b.len()], 0, 0.0, &mut best);
    if a.is_empty() {
        0.0
    } else {
        best
    }
}

/// Re-extracts zeros of `s`, royal nodes and zeros of `a` from a built
/// function and compares them with the data.
pub fn roundtrip_check(result: &ConstructionResult) -> Report {
    roundtrip_check_rep(&result.data, &result.x)
}

pub fn roundtrip_check_rep(data: &ConstructionData, x: &PentaInnerRep) -> Report {
    let mut rep = Report::new();
    let h = x.gamma();
    let mut push = |name: &str, found: Result<Vec<Complex>, String>, want: Vec<Complex>| match found {
        Ok(f) => {
            let dist = multiset_distance(&f, &want);
            let margin = if dist.is_finite() { tol::ROUNDTRIP - dist } else { f64::NEG_INFINITY };
            rep.push(name, dist <= tol::ROUNDTRIP, margin);
        }
        Err(_) => rep.push(name, false, f64::NEG_INFINITY),
    };

    let zeros_s = h
        .e()
        .roots()
        .map(|r| r.into_iter().filter(|z| z.norm() <= 1.0 + tol::FR_PAIRING).collect())
        .map_err(|e| e.to_string());
    let mut want_s = data.alphas.clone();
    want_s.extend(data.etas.iter().map(|&e| unit(e)));
    push("zeros of s", zeros_s, want_s);

    let nodes = h
        .royal_nodes()
        .map(|v| {
            v.into_iter()
                .flat_map(|n| std::iter::repeat_n(n.node, n.multiplicity))
                .collect()
        })
        .map_err(|e| e.to_string());
    push("royal nodes", nodes, data.snapped_sigmas());

    let zeros_a = match x.a_part() {
        APart::Zero => Err("a vanishes identically".to_string()),
        APart::Outer { a_in, a } => a
            .roots()
            .map(|r| {
                let mut z: Vec<Complex> =
                    r.into_iter().filter(|z| z.norm() < 1.0 - tol::FR_PAIRING).collect();
                z.extend_from_slice(a_in.zeros());
                z
            })
            .map_err(|e| e.to_string()),
    };
    push("zeros of a", zeros_a, data.betas.clone());
    rep
}
