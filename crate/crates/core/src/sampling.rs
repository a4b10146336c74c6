//! Deterministic sample sets and seeded random generators.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cpoly::{cis, Complex};

pub const DEFAULT_SEED: u64 = 0x5eed_2b1c;

/// Reads `PENTA_SEED`, falling back to [`DEFAULT_SEED`].
pub fn seed_from_env() -> u64 {
    std::env::var("PENTA_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `count` equispaced points `e^{2πij/count}`.
pub fn circle(count: usize) -> impl Iterator<Item = Complex> {
    (0..count).map(move |j| cis(TAU * j as f64 / count as f64))
}

/// Polar grid with radii `i/k` (`i < k`) and `k` angles per radius.
pub fn disc_grid(k: usize) -> impl Iterator<Item = Complex> {
    (0..k).flat_map(move |i| {
        let r = i as f64 / k as f64;
        (0..k).map(move |j| Complex::from_polar(r, TAU * j as f64 / k as f64))
    })
}

/// Uniform point in the disc of radius `radius`.
pub fn disc_point<R: Rng>(rng: &mut R, radius: f64) -> Complex {
    Complex::from_polar(radius * rng.gen::<f64>().sqrt(), TAU * rng.gen::<f64>())
}

/// Uniform point on the unit circle.
pub fn circle_point<R: Rng>(rng: &mut R) -> Complex {
    cis(TAU * rng.gen::<f64>())
}
