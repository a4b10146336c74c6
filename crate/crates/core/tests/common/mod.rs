//! Random generators shared by the integration and acceptance tests.
#![allow(dead_code)]

use pentablock::construct::ConstructionData;
use pentablock::cpoly::unit;
use pentablock::domains::beta_bound;
use pentablock::gamma_inner::gamma_fraction;
use pentablock::sampling::{circle_point, disc_point};
use pentablock::schwarz::SchwarzProblem;
use pentablock::{BlaschkeProduct, Complex, ComplexPoly, GammaInnerRep, GammaPoint, PentaPoint};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Generator for a proptest-drawn seed.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    pentablock::sampling::rng(seed)
}

pub fn rng(stream: u64) -> ChaCha8Rng {
    pentablock::sampling::rng(pentablock::sampling::seed_from_env() ^ stream)
}

/// Outer polynomial of degree `deg` with roots of modulus in `[1.2, 3]`
/// positive constant term and largest coefficient of modulus 1.
pub fn outer_poly(rng: &mut ChaCha8Rng, deg: usize) -> ComplexPoly {
    let roots: Vec<Complex> = (0..deg)
        .map(|_| Complex::from_polar(rng.gen_range(1.2..3.0), rng.gen_range(0.0..std::f64::consts::TAU)))
        .collect();
    let p = ComplexPoly::from_roots(&roots).scale(Complex::new(rng.gen_range(0.5..2.0), 0.0));
    let c0 = p.coeff(0);
    p.scale(c0.conj() / (c0.norm() * p.max_abs_coeff()))
}

pub fn blaschke(rng: &mut ChaCha8Rng, deg: usize, radius: f64) -> BlaschkeProduct {
    let zeros = (0..deg).map(|_| disc_point(rng, radius)).collect();
    BlaschkeProduct::new(circle_point(rng), zeros).unwrap()
}

/// Points spread apart by at least `sep`, inside the disc of radius `radius`.
pub fn separated_points(rng: &mut ChaCha8Rng, count: usize, radius: f64, sep: f64) -> Vec<Complex> {
    let mut out: Vec<Complex> = Vec::new();
    while out.len() < count {
        let z = disc_point(rng, radius);
        if out.iter().all(|w| (w - z).norm() >= sep) {
            out.push(z);
        }
    }
    out
}

pub fn construction_data(rng: &mut ChaCha8Rng, max_n: usize, max_m: usize) -> ConstructionData {
    let n = rng.gen_range(1..=max_n);
    let k0 = rng.gen_range(0..=n / 2);
    let k1 = n - 2 * k0;
    let alphas = separated_points(rng, k0, 0.85, 0.1);
    let etas = (0..k1)
        .map(|j| Complex::from_polar(1.0, (j as f64 + rng.gen_range(0.1..0.9)) * std::f64::consts::TAU / k1 as f64))
        .collect();
    let sigmas = separated_points(rng, n, 0.9, 0.1);
    let m = rng.gen_range(0..=max_m);
    let betas = separated_points(rng, m, 0.9, 0.05);
    let mut d = ConstructionData::new(alphas, etas, betas, sigmas);
    d.t_plus = rng.gen_range(0.5..8.0);
    d.t = rng.gen_range(0.3..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    d.c = circle_point(rng);
    d
}

/// Γ-inner function of degree at most `max_n` from a pair of Blaschke
/// products.
pub fn gamma_inner(rng: &mut ChaCha8Rng, max_n: usize) -> GammaInnerRep {
    let n = rng.gen_range(1..=max_n);
    let k = rng.gen_range(0..=n);
    let phi = blaschke(rng, k, 0.9);
    let psi = blaschke(rng, n - k, 0.9);
    GammaInnerRep::from_blaschke_pair(&phi, &psi)
}

pub fn gamma_point(rng: &mut ChaCha8Rng, radius: f64) -> GammaPoint {
    GammaPoint::symmetrize(disc_point(rng, radius), disc_point(rng, radius))
}

/// `(λ0, s0, p0)` with `F(s0, p0) = |λ0|`, `s0 ≠ 0` and `|p0| < |λ0|`.
pub fn equality_instance(rng: &mut ChaCha8Rng) -> (Complex, Complex, Complex) {
    loop {
        let g = gamma_point(rng, 0.9);
        let f = gamma_fraction(g.s, g.p);
        if g.s.norm() > 1e-3 && f > 0.05 && f < 0.97 && g.p.norm() < f - 1e-6 {
            return (Complex::from_polar(f, rng.gen_range(0.0..std::f64::consts::TAU)), g.s, g.p);
        }
    }
}

/// Data meeting the sufficient feasibility conditions: `(s0, p0)` shrunk
/// towards the origin until `F ≤ |λ0|`, then `a0` in the disc of radius
/// `|λ0|√(1 − ¼|s0|²)`. The target need not lie in P̄.
pub fn feasible_data(rng: &mut ChaCha8Rng) -> (Complex, PentaPoint) {
    let lambda0 = Complex::from_polar(rng.gen_range(0.1..0.95), rng.gen_range(0.0..std::f64::consts::TAU));
    let (mut z, mut w) = (disc_point(rng, 1.0), disc_point(rng, 1.0));
    let mut g = GammaPoint::symmetrize(z, w);
    while gamma_fraction(g.s, g.p) > lambda0.norm() {
        z *= 0.9;
        w *= 0.9;
        g = GammaPoint::symmetrize(z, w);
    }
    let bound = lambda0.norm() * (1.0 - 0.25 * g.s.norm_sqr()).sqrt();
    let a0 = disc_point(rng, bound);
    (lambda0, PentaPoint::new(a0, g.s, g.p))
}

/// As [`feasible_data`], resampled until the target lies in P̄.
pub fn feasible_problem(rng: &mut ChaCha8Rng) -> SchwarzProblem {
    loop {
        let (l0, x) = feasible_data(rng);
        if let Ok(p) = SchwarzProblem::new(l0, x) {
            return p;
        }
    }
}

/// Target in P̄ violating exactly one feasibility condition; `kind` 0, 1, 2
/// breaks `|s0| < 2`, `F ≤ |λ0|`, `|a0| ≤ |λ0|√(1 − ¼|s0|²)` respectively.
pub fn infeasible_problem(rng: &mut ChaCha8Rng, kind: usize) -> SchwarzProblem {
    let lambda0 = Complex::from_polar(rng.gen_range(0.1..0.9), rng.gen_range(0.0..std::f64::consts::TAU));
    let target = match kind {
        0 => {
            // Nudged outwards so rounding cannot leave |s0| just below 2.
            let w = circle_point(rng);
            PentaPoint::new(Complex::new(0.0, 0.0), 2.0 * (1.0 + 1e-12) * w, w * w)
        }
        1 => loop {
            let g = gamma_point(rng, 0.98);
            if gamma_fraction(g.s, g.p) > lambda0.norm() + 1e-3 {
                let bound = lambda0.norm() * (1.0 - 0.25 * g.s.norm_sqr()).sqrt();
                break PentaPoint::new(disc_point(rng, bound.min(beta_bound(g))), g.s, g.p);
            }
        },
        _ => loop {
            let g = gamma_point(rng, 0.9);
            if gamma_fraction(g.s, g.p) <= lambda0.norm() {
                let bound = lambda0.norm() * (1.0 - 0.25 * g.s.norm_sqr()).sqrt();
                let top = beta_bound(g);
                if top > bound + 1e-3 {
                    let r = rng.gen_range(bound + 1e-4..top);
                    break PentaPoint::new(r * unit(circle_point(rng)), g.s, g.p);
                }
            }
        },
    };
    SchwarzProblem::new(lambda0, target).unwrap()
}
