//! Michelson fringe model and phase-estimation sensitivity bounds with and
//! without loss and squeezing.
//!
//! All bounds treat the mean photon number per measurement interval as a
//! continuous positive real; repetition factors are the caller's business
//! and fold into `n_mean`.

use crate::error::{Error, Result};

/// Phase-estimation strategy whose minimum resolvable phase is requested.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Shot-noise limit of a coherent state, `1/sqrt(n)`.
    Coherent,
    /// Coherent state plus squeezed vacuum, `e^(-r)/sqrt(n)`.
    Csv,
    /// Single-shot Heisenberg bound, `pi/n`.
    HeisenbergSingleShot,
    /// Coherent state with detection efficiency eta.
    CoherentLoss,
    /// Coherent state plus squeezed vacuum with detection efficiency eta.
    CsvLoss,
    /// Fundamental bound for any state at efficiency 0 < eta < 1.
    OptimalLoss,
}

/// Query for [`min_phase`]: photon budget, efficiency, squeeze parameter
/// and strategy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseBoundQuery {
    pub n_mean: f64,
    pub eta: f64,
    pub r: f64,
    pub strategy: Strategy,
}

impl PhaseBoundQuery {
    pub fn new(n_mean: f64, eta: f64, r: f64, strategy: Strategy) -> Result<Self> {
        if !(n_mean > 0.0) {
            return Err(Error::invalid(format!("n_mean = {n_mean} must be > 0")));
        }
        if !(0.0..=1.0).contains(&eta) {
            return Err(Error::invalid(format!("eta = {eta} must be in [0, 1]")));
        }
        if !(r >= 0.0) {
            return Err(Error::invalid(format!("r = {r} must be >= 0")));
        }
        Ok(PhaseBoundQuery {
            n_mean,
            eta,
            r,
            strategy,
        })
    }
}

/// Fraction of the input power leaving the signal port at differential
/// phase `phi`: `sin^2(phi/2)`.
pub fn fringe_power_fraction(phi: f64) -> f64 {
    let s = (0.5 * phi).sin();
    s * s
}

/// Derivative of the detected photon number with respect to phase:
/// `n_mean sin(phi/2) cos(phi/2)`.
pub fn signal_slope(phi: f64, n_mean: f64) -> Result<f64> {
    if !(n_mean > 0.0) {
        return Err(Error::invalid(format!("n_mean = {n_mean} must be > 0")));
    }
    Ok(n_mean * (0.5 * phi).sin() * (0.5 * phi).cos())
}

/// Smallest phase measurable at unity signal-to-noise ratio for the given
/// strategy.
pub fn min_phase(query: &PhaseBoundQuery) -> Result<f64> {
    let n = query.n_mean;
    let eta = query.eta;
    let r = query.r;
    match query.strategy {
        Strategy::Coherent => Ok(1.0 / n.sqrt()),
        Strategy::Csv => Ok((-r).exp() / n.sqrt()),
        Strategy::HeisenbergSingleShot => Ok(std::f64::consts::PI / n),
        Strategy::CoherentLoss => {
            if !(eta > 0.0) {
                return Err(Error::domain("coherent bound with loss needs eta > 0"));
            }
            Ok((1.0 / (eta * n)).sqrt())
        }
        Strategy::CsvLoss => {
            if !(eta > 0.0) {
                return Err(Error::domain("squeezed bound with loss needs eta > 0"));
            }
            Ok(((eta * (-2.0 * r).exp() + 1.0 - eta) / (eta * n)).sqrt())
        }
        Strategy::OptimalLoss => {
            if !(eta > 0.0 && eta < 1.0) {
                return Err(Error::domain(
                    "the fundamental lossy bound is defined for 0 < eta < 1",
                ));
            }
            Ok(((1.0 - eta) / (eta * n)).sqrt())
        }
    }
}

/// Ratio of the coherent-plus-squeezed-vacuum bound to the fundamental
/// lossy bound: `sqrt((eta e^(-2r) + 1 - eta) / (1 - eta))`, >= 1 and
/// approaching 1 for strong squeezing.
pub fn csv_optimality_ratio(eta: f64, r: f64) -> Result<f64> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::domain(format!(
            "eta = {eta} must be strictly inside (0, 1)"
        )));
    }
    if !(r >= 0.0) {
        return Err(Error::invalid(format!("r = {r} must be >= 0")));
    }
    Ok(((eta * (-2.0 * r).exp() + 1.0 - eta) / (1.0 - eta)).sqrt())
}

/// Squeeze parameter from a squeezed-variance value `e^(-2r)`.
pub fn r_from_squeezed_variance(var: f64) -> Result<f64> {
    if !(var > 0.0) {
        return Err(Error::domain(format!("variance {var} must be > 0")));
    }
    Ok(-0.5 * var.ln())
}
