//! Numerical tolerances shared across modules.

/// Trailing coefficients at or below this fraction of the largest coefficient
/// are dropped.
pub const COEFF_ZERO_REL: f64 = 1e-12;

/// Roots closer than this are treated as one cluster.
pub const ROOT_CLUSTER: f64 = 1e-7;

/// Distance from the unit circle treated as "on T" for outerness tests.
pub const BOUNDARY: f64 = 1e-9;

/// Relative step size at which simultaneous iteration is considered converged.
pub const ROOT_STEP: f64 = 1e-13;

pub const ROOT_MAX_ITER: usize = 500;

/// Reflection-pairing tolerance in the metric `|r·conj(r') − 1|`, and the
/// band around `|r| = 1` in which roots are snapped onto T.
pub const FR_PAIRING: f64 = 1e-6;

/// Relative slack for the non-negativity check of trigonometric polynomials.
pub const FR_NONNEG: f64 = 1e-9;

pub const FR_SAMPLES: usize = 1024;

/// Default membership tolerance.
pub const MEMBERSHIP: f64 = 1e-9;

/// `|p|` within this of 1 uses the degenerate formula `β = s/2`.
pub const BETA_DEGENERATE: f64 = 1e-9;

/// Boundary-sample tolerance for inner-function verification.
pub const INNER_BOUNDARY: f64 = 1e-8;

/// Root-set round-trip tolerance for the synthesis pipeline.
pub const ROUNDTRIP: f64 = 1e-6;
