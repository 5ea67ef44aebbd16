//! Wigner functions and quadrature marginals of Gaussian states, plus the
//! dB / squeeze-parameter conversion helpers.

use std::f64::consts::PI;

use ndarray::{Array1, Array2};

use crate::error::{Error, Result};
use crate::gaussian::GaussianState;

/// Wigner quasi-probability of one mode at phase-space point `(x, y)`
/// (vacuum-normalized coordinates, normalized so the full integral is 1).
pub fn wigner_value(state: &GaussianState, mode: usize, x: f64, y: f64) -> Result<f64> {
    let [mx, my] = state.mode_mean(mode)?;
    let v = state.mode_cov(mode)?;
    let det = v[[0, 0]] * v[[1, 1]] - v[[0, 1]] * v[[1, 0]];
    let dx = x - mx;
    let dy = y - my;
    // V^-1 of the 2x2 block
    let q = (v[[1, 1]] * dx * dx - 2.0 * v[[0, 1]] * dx * dy + v[[0, 0]] * dy * dy) / det;
    Ok((-0.5 * q).exp() / (2.0 * PI * det.sqrt()))
}

/// Probability density of the quadrature `X^vartheta` at `value`: a
/// Gaussian whose variance is the quadrature variance and whose mean is the
/// projected displacement.
pub fn marginal_density(
    state: &GaussianState,
    mode: usize,
    vartheta: f64,
    value: f64,
) -> Result<f64> {
    let var = state.quadrature_variance(mode, vartheta)?;
    let mean = state.quadrature_mean(mode, vartheta)?;
    let d = value - mean;
    Ok((-0.5 * d * d / var).exp() / (2.0 * PI * var).sqrt())
}

/// Uniform phase-space grid of Wigner values for one mode.
#[derive(Debug, Clone)]
pub struct WignerGrid {
    pub x_axis: Array1<f64>,
    pub y_axis: Array1<f64>,
    pub values: Array2<f64>,
    pub mode: usize,
}

impl WignerGrid {
    /// Default resolution: 257 points per axis over +-6 maximal standard
    /// deviations, which keeps the normalization error below 1e-4 for
    /// r <= 2.
    pub fn evaluate(state: &GaussianState, mode: usize) -> Result<WignerGrid> {
        WignerGrid::evaluate_with(state, mode, 257, 6.0)
    }

    pub fn evaluate_with(
        state: &GaussianState,
        mode: usize,
        points: usize,
        span_sigmas: f64,
    ) -> Result<WignerGrid> {
        if points < 2 {
            return Err(Error::invalid("grid needs at least 2 points per axis"));
        }
        let [mx, my] = state.mode_mean(mode)?;
        let (_, vmin) = state.minimal_variance_quadrature(mode)?;
        let v = state.mode_cov(mode)?;
        // largest principal standard deviation of the block
        let vmax = v[[0, 0]] + v[[1, 1]] - vmin;
        let half = span_sigmas * vmax.sqrt();
        let x_axis = Array1::linspace(mx - half, mx + half, points);
        let y_axis = Array1::linspace(my - half, my + half, points);
        let mut values = Array2::<f64>::zeros((points, points));
        for (iy, &y) in y_axis.iter().enumerate() {
            for (ix, &x) in x_axis.iter().enumerate() {
                values[[iy, ix]] = wigner_value(state, mode, x, y)?;
            }
        }
        Ok(WignerGrid {
            x_axis,
            y_axis,
            values,
            mode,
        })
    }

    /// Plain Riemann sum of the grid; close to 1 when the grid spans the
    /// state.
    pub fn riemann_sum(&self) -> f64 {
        let hx = self.x_axis[1] - self.x_axis[0];
        let hy = self.y_axis[1] - self.y_axis[0];
        self.values.sum() * hx * hy
    }
}

/// Squeeze factor in dB of a vacuum-normalized variance:
/// `-10 log10(var)`.
pub fn db_from_variance(var: f64) -> Result<f64> {
    if !(var > 0.0) {
        return Err(Error::domain(format!("variance {var} must be > 0")));
    }
    Ok(-10.0 * var.log10())
}

/// Inverse of [`db_from_variance`].
pub fn variance_from_db(db: f64) -> f64 {
    10f64.powf(-db / 10.0)
}

/// Convert a vacuum-normalized variance to the 1/4 zero-point convention.
pub fn variance_to_quarter_convention(var: f64) -> f64 {
    var / 4.0
}

/// Convert a 1/4-convention variance to vacuum-normalized units.
pub fn variance_from_quarter_convention(var_quarter: f64) -> f64 {
    var_quarter * 4.0
}
