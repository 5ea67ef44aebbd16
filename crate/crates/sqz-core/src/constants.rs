//! Physical constants pinned for bit-for-bit reproducibility of the
//! numerical examples and regression files.

/// Reduced Planck constant in J·s (CODATA 2018 exact-definition era value).
pub const HBAR: f64 = 1.054571817e-34;

/// Speed of light in vacuum in m/s (exact).
pub const C: f64 = 299_792_458.0;
