//! Fejér–Riesz factorization of non-negative trigonometric polynomials.

use std::f64::consts::TAU;
use std::ops::{Add, Sub};

use thiserror::Error;

use crate::cpoly::{cis, unit, Complex, ComplexPoly, PolyError};
use crate::tol;

/// Laurent polynomial `Σ_{k=−n}^{n} c_k λ^k`, interpreted on the unit circle.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPoly {
    n: usize,
    // c[k + n]
    c: Vec<Complex>,
}

impl TrigPoly {
    pub fn zero() -> Self {
        Self { n: 0, c: vec![Complex::new(0.0, 0.0)] }
    }

    /// From `(k, c_k)` pairs; repeated `k` are summed.
    pub fn from_pairs(pairs: &[(i64, Complex)]) -> Self {
        let n = pairs.iter().map(|(k, _)| k.unsigned_abs() as usize).max().unwrap_or(0);
        let mut c = vec![Complex::new(0.0, 0.0); 2 * n + 1];
        for &(k, v) in pairs {
            c[(k + n as i64) as usize] += v;
        }
        Self { n, c }.trimmed()
    }

    /// `λ^{−n} q(λ)` for a polynomial `q`.
    pub fn from_shifted(q: &ComplexPoly, n: usize) -> Self {
        let pairs: Vec<(i64, Complex)> = q
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, &v)| (i as i64 - n as i64, v))
            .collect();
        Self::from_pairs(&pairs)
    }

    /// `|P(λ)|²` on T, i.e. `P(λ)·conj(P)(1/λ)`.
    pub fn abs_sq(p: &ComplexPoly) -> Self {
        let pc = p.coeffs();
        let d = pc.len();
        if d == 0 {
            return Self::zero();
        }
        let n = d - 1;
        let mut c = vec![Complex::new(0.0, 0.0); 2 * n + 1];
        for (i, &a) in pc.iter().enumerate() {
            for (j, &b) in pc.iter().enumerate() {
                c[n + i - j] += a * b.conj();
            }
        }
        Self { n, c }.trimmed()
    }

    /// Drops outer coefficient pairs that are negligible at both ends.
    fn trimmed(mut self) -> Self {
        let cut = tol::COEFF_ZERO_REL * self.max_abs_coeff();
        while self.n > 0 && self.c[0].norm() <= cut && self.c[2 * self.n].norm() <= cut {
            self.c.pop();
            self.c.remove(0);
            self.n -= 1;
        }
        self
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, k: i64) -> Complex {
        let idx = k + self.n as i64;
        if idx < 0 || idx as usize >= self.c.len() {
            Complex::new(0.0, 0.0)
        } else {
            self.c[idx as usize]
        }
    }

    /// Nonzero `(k, c_k)` pairs in ascending `k`.
    pub fn pairs(&self) -> Vec<(i64, Complex)> {
        (0..self.c.len())
            .filter(|&i| self.c[i] != Complex::new(0.0, 0.0))
            .map(|i| (i as i64 - self.n as i64, self.c[i]))
            .collect()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.c.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|v| *v == Complex::new(0.0, 0.0))
    }

    /// The polynomial `λ^n f(λ)` of degree ≤ 2n.
    pub fn to_shifted_poly(&self) -> ComplexPoly {
        ComplexPoly::new(self.c.clone())
    }

    pub fn eval(&self, z: Complex) -> Complex {
        self.to_shifted_poly().eval(z) * z.powi(-(self.n as i32))
    }

    /// Real part of `f(e^{iθ})`.
    pub fn eval_theta(&self, theta: f64) -> f64 {
        self.eval(cis(theta)).re
    }

    pub fn scale(&self, t: f64) -> Self {
        Self {
            n: self.n,
            c: self.c.iter().map(|v| v * t).collect(),
        }
        .trimmed()
    }

    /// `max_k |c_k − conj(c_{−k})|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.n as i64;
        (-n..=n)
            .map(|k| (self.coeff(k) - self.coeff(-k).conj()).norm())
            .fold(0.0, f64::max)
    }

    /// `(θ_j, f(e^{iθ_j}))` on `count` equispaced samples.
    pub fn samples(&self, count: usize) -> Vec<(f64, f64)> {
        let q = self.to_shifted_poly();
        (0..count)
            .map(|j| {
                let th = TAU * j as f64 / count as f64;
                let z = cis(th);
                (th, (q.eval(z) * z.powi(-(self.n as i32))).re)
            })
            .collect()
    }
}

impl Add for &TrigPoly {
    type Output = TrigPoly;
    fn add(self, rhs: &TrigPoly) -> TrigPoly {
        let n = self.n.max(rhs.n) as i64;
        let pairs: Vec<_> = (-n..=n).map(|k| (k, self.coeff(k) + rhs.coeff(k))).collect();
        TrigPoly::from_pairs(&pairs)
    }
}

impl Sub for &TrigPoly {
    type Output = TrigPoly;
    fn sub(self, rhs: &TrigPoly) -> TrigPoly {
        let n = self.n.max(rhs.n) as i64;
        let pairs: Vec<_> = (-n..=n).map(|k| (k, self.coeff(k) - rhs.coeff(k))).collect();
        TrigPoly::from_pairs(&pairs)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFactError {
    #[error("trigonometric polynomial is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),
    #[error("trigonometric polynomial is negative on T (minimum {min:e} at θ = {theta})")]
    NotNonnegative { min: f64, theta: f64 },
    #[error("root pairing failed: {0}")]
    Pairing(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FejerRieszResult {
    /// Outer factor; the zero polynomial for `f ≡ 0`.
    pub d: ComplexPoly,
    /// `max ||D|² − f|` over the check samples.
    pub residual: f64,
}

impl FejerRieszResult {
    /// `f ≡ 0` factors as `D ≡ 0`.
    pub fn is_degenerate(&self) -> bool {
        self.d.is_zero()
    }
}

/// Factors `f ≥ 0` on T as `|D|²` with `D` outer and `D(0) ≥ 0`.
pub fn fejer_riesz(f: &TrigPoly) -> Result<FejerRieszResult, SpecFactError> {
    let scale = f.max_abs_coeff();
    if f.is_zero() {
        return Ok(FejerRieszResult { d: ComplexPoly::zero(), residual: 0.0 });
    }
    let herm = f.hermitian_deviation();
    if herm > tol::FR_NONNEG * scale {
        return Err(SpecFactError::NotHermitian(herm));
    }
    let samples = f.samples(tol::FR_SAMPLES);
    let (theta_min, fmin) = samples
        .iter()
        .copied()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("non-empty sample set");
    if fmin < -tol::FR_NONNEG * scale {
        return Err(SpecFactError::NotNonnegative { min: fmin, theta: theta_min });
    }
    let (theta_max, fmax) = samples
        .iter()
        .copied()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("non-empty sample set");

    let n = f.degree();
    let selected = if n == 0 { Vec::new() } else { select_outer_roots(f)? };

    let base = ComplexPoly::from_roots(&selected);
    let zmax = cis(theta_max);
    let gamma = (fmax / base.eval(zmax).norm_sqr()).sqrt();
    let d0 = base.eval(Complex::new(0.0, 0.0));
    let mut coeffs = base.scale(unit(d0).conj() * gamma).coeffs().to_vec();
    // Real by construction up to rounding; make it exact.
    coeffs[0] = Complex::new(coeffs[0].norm(), 0.0);
    let d = ComplexPoly::new(coeffs);

    let residual = samples
        .iter()
        .map(|&(th, v)| (d.eval(cis(th)).norm_sqr() - v).abs())
        .fold(0.0, f64::max);
    Ok(FejerRieszResult { d, residual })
}

/// Roots of `λ^n f` split into reflected pairs; returns one representative
/// (modulus ≥ 1) per pair, with T-roots halved.
fn select_outer_roots(f: &TrigPoly) -> Result<Vec<Complex>, SpecFactError> {
    let q = f.to_shifted_poly();
    let dq = q.derivative();
    let ddq = dq.derivative();
    let (mut selected, roots) = split_circle_doubles(&q, &dq, &ddq, q.roots()?);
    let band = tol::FR_PAIRING;
    let mut on_t = Vec::new();
    let mut inside = Vec::new();
    let mut outside = Vec::new();
    for r in roots {
        let m = r.norm();
        if (m - 1.0).abs() < band {
            on_t.push(r);
        } else if m > 1.0 {
            outside.push(r);
        } else {
            inside.push(r);
        }
    }
    if inside.len() != outside.len() {
        return Err(SpecFactError::Pairing(format!(
            "{} roots inside T but {} outside",
            inside.len(),
            outside.len()
        )));
    }
    let mut used = vec![false; inside.len()];
    for &r in &outside {
        let (j, dist) = inside
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, &q)| (j, (r * q.conj() - 1.0).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("counts match");
        if dist > band {
            return Err(SpecFactError::Pairing(format!(
                "root {r} has no reflected partner (best mismatch {dist:e})"
            )));
        }
        used[j] = true;
        selected.push(0.5 * (r + inside[j].conj().inv()));
    }

    if on_t.len() % 2 == 1 {
        return Err(SpecFactError::Pairing(format!(
            "odd number ({}) of roots on T",
            on_t.len()
        )));
    }
    let mut taken = vec![false; on_t.len()];
    for i in 0..on_t.len() {
        if taken[i] {
            continue;
        }
        taken[i] = true;
        let (j, dist) = (0..on_t.len())
            .filter(|&j| !taken[j])
            .map(|j| (j, (on_t[i] - on_t[j]).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("even count");
        if dist > T_PAIR_MAX {
            return Err(SpecFactError::Pairing(format!(
                "simple root {} on T (nearest partner at distance {dist:e})",
                on_t[i]
            )));
        }
        taken[j] = true;
        let mid = unit(on_t[i] + on_t[j]);
        let refined = refine_double(&q, &dq, &ddq, mid, dist.max(1e-12)).map_or(mid, unit);
        selected.push(refined);
    }
    merge_near_doubles(&q, &mut selected);
    Ok(selected)
}

/// Largest separation accepted between the two numerical copies of a double
/// root on T.
const T_PAIR_MAX: f64 = 1e-4;

/// Distance from T within which split copies of a double T-root are sought.
const NEAR_T: f64 = 1e-3;

/// Double roots on T can split by more than the pairing band. Pairs of
/// close roots near T whose Newton-refined midpoint (on `q'`) is a root of
/// `q` to rounding level and lies on T are taken as one T-root; returns
/// those and the remaining roots.
fn split_circle_doubles(
    q: &ComplexPoly,
    dq: &ComplexPoly,
    ddq: &ComplexPoly,
    roots: Vec<Complex>,
) -> (Vec<Complex>, Vec<Complex>) {
    let near: Vec<usize> = (0..roots.len()).filter(|&i| (roots[i].norm() - 1.0).abs() < NEAR_T).collect();
    let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
    for (k, &i) in near.iter().enumerate() {
        for &j in &near[k + 1..] {
            let d = (roots[i] - roots[j]).norm();
            if d <= T_PAIR_MAX {
                pairs.push((d, i, j));
            }
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut used = vec![false; roots.len()];
    let mut doubles = Vec::new();
    for (d, i, j) in pairs {
        if used[i] || used[j] {
            continue;
        }
        let mid = 0.5 * (roots[i] + roots[j]);
        if let Some(x) = refine_double(q, dq, ddq, mid, d.max(1e-12)) {
            if (x.norm() - 1.0).abs() <= tol::FR_PAIRING {
                used[i] = true;
                used[j] = true;
                doubles.push(unit(x));
            }
        }
    }
    let rest = roots.into_iter().zip(used).filter(|(_, u)| !u).map(|(r, _)| r).collect();
    (doubles, rest)
}

/// Separation below which two selected roots are tested for being one
/// double root split by rounding.
const NEAR_DOUBLE: f64 = 1e-5;

/// Replaces two close roots by one double root when Newton on `q'` from
/// their midpoint lands on a point where `q` vanishes to rounding level.
/// Double roots of `q` split by `O(√ε)`, which the fixed clustering of the
/// root finder does not always catch.
fn merge_near_doubles(q: &ComplexPoly, selected: &mut [Complex]) {
    let dq = q.derivative();
    let ddq = dq.derivative();
    let k = selected.len();
    for i in 0..k {
        for j in i + 1..k {
            let (a, b) = (selected[i], selected[j]);
            let gap = (a - b).norm();
            if gap == 0.0 || gap > NEAR_DOUBLE {
                continue;
            }
            if let Some(x) = refine_double(q, &dq, &ddq, 0.5 * (a + b), gap) {
                selected[i] = x;
                selected[j] = x;
            }
        }
    }
}

/// Newton on `q'` from `start`, accepted if it stays within `radius` and
/// `q` vanishes there to rounding level.
fn refine_double(q: &ComplexPoly, dq: &ComplexPoly, ddq: &ComplexPoly, start: Complex, radius: f64) -> Option<Complex> {
    let mut x = start;
    for _ in 0..8 {
        let den = ddq.eval(x);
        if den == Complex::new(0.0, 0.0) {
            break;
        }
        let next = x - dq.eval(x) / den;
        if !(next.re.is_finite() && next.im.is_finite()) || (next - x).norm() <= 1e-17 {
            break;
        }
        x = next;
    }
    if (x - start).norm() > radius {
        return None;
    }
    let r = x.norm();
    let mag: f64 = q.coeffs().iter().rev().fold(0.0, |acc, c| acc * r + c.norm());
    (q.eval(x).norm() <= 1e3 * f64::EPSILON * mag).then_some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex {
        Complex::new(re, 0.0)
    }

    #[test]
    fn constant() {
        let r = fejer_riesz(&TrigPoly::from_pairs(&[(0, c(1.0))])).unwrap();
        assert_eq!(r.d, ComplexPoly::one());
    }

    #[test]
    fn one_plus_lambda() {
        let f = TrigPoly::from_pairs(&[(-1, c(1.0)), (0, c(2.0)), (1, c(1.0))]);
        let r = fejer_riesz(&f).unwrap();
        assert!(r.d.distance(&ComplexPoly::from_real(&[1.0, 1.0])) < 1e-12, "{:?}", r.d);
        assert!(r.residual < 1e-12);
    }

    #[test]
    fn worked_quadratic() {
        let f = TrigPoly::from_pairs(&[(-1, c(-0.25)), (0, c(1.5)), (1, c(-0.25))]);
        let r = fejer_riesz(&f).unwrap();
        let rr = 3.0 + 2.0 * 2f64.sqrt();
        let want = ComplexPoly::from_real(&[rr / (rr - 1.0), -1.0 / (rr - 1.0)]);
        assert!(r.d.distance(&want) < 1e-12, "{:?}", r.d);
        assert!(r.d.is_outer().unwrap());
    }

    #[test]
    fn zero_is_degenerate() {
        let r = fejer_riesz(&TrigPoly::zero()).unwrap();
        assert!(r.is_degenerate());
    }

    #[test]
    fn rejects_negative_and_non_hermitian() {
        let f = TrigPoly::from_pairs(&[(-1, c(1.0)), (0, c(1.0)), (1, c(1.0))]);
        assert!(matches!(fejer_riesz(&f), Err(SpecFactError::NotNonnegative { .. })));
        let f = TrigPoly::from_pairs(&[(0, c(3.0)), (1, c(1.0))]);
        assert!(matches!(fejer_riesz(&f), Err(SpecFactError::NotHermitian(_))));
    }

    #[test]
    fn double_root_on_circle() {
        let d0 = ComplexPoly::new(vec![c(1.0), Complex::new(0.0, -1.0)]).scale_real(0.5);
        let r = fejer_riesz(&TrigPoly::abs_sq(&d0)).unwrap();
        assert!(r.d.distance(&d0) < 1e-12, "{:?}", r.d);
    }

    #[test]
    fn fourfold_root_on_circle_is_ill_conditioned() {
        // |1 − λ|⁴: the fourfold root splits by ~ε^{1/4}, beyond the pairing band.
        let d0 = ComplexPoly::from_real(&[1.0, -2.0, 1.0]);
        assert!(matches!(
            fejer_riesz(&TrigPoly::abs_sq(&d0)),
            Err(SpecFactError::Pairing(_))
        ));
    }

    #[test]
    fn abs_sq_and_shift_agree() {
        let p = ComplexPoly::new(vec![Complex::new(1.0, 0.5), Complex::new(-0.3, 0.2), c(0.7)]);
        let f = TrigPoly::abs_sq(&p);
        for th in [0.0, 1.0, 2.5] {
            let z = cis(th);
            assert!((f.eval(z).re - p.eval(z).norm_sqr()).abs() < 1e-14);
            assert!(f.eval(z).im.abs() < 1e-14);
        }
        let g = TrigPoly::from_shifted(&ComplexPoly::from_real(&[0.0, 4.0]), 1);
        assert_eq!(g.pairs(), vec![(0, c(4.0))]);
    }
}
