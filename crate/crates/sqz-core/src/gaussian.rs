//! Gaussian states over n optical modes and the symplectic operations that
//! transform them.
//!
//! Quadratures are ordered `X1, Y1, X2, Y2, ...` and the covariance matrix
//! is vacuum-normalized: the vacuum state has `cov = I`. With that
//! normalization the Heisenberg bound reads `nu >= 1` for every symplectic
//! eigenvalue `nu`, and a pure single-mode state has `det(cov) = 1`.
//!
//! The phase-space handedness is fixed by the rotation convention
//! `cov -> R^T cov R` with `R = [[cos a, -sin a], [sin a, cos a]]`, chosen
//! so that rotating `diag(0.1, 10)` by 45 degrees produces
//! `[[5.05, 4.95], [4.95, 5.05]]`.

use std::f64::consts::PI;

use ndarray::{Array1, Array2};

use crate::error::{Error, Result};
use crate::mat;

/// Relative tolerance for covariance-matrix symmetry checks.
const SYMMETRY_TOL: f64 = 1e-12;
/// Slack allowed below the Heisenberg bound `nu >= 1`.
const PHYSICALITY_TOL: f64 = 1e-9;

/// Squeeze parameter, squeeze angle and total efficiency of a squeezed-light
/// source. `1 - eta^2` is the relative energy loss of the loss channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeSpec {
    r: f64,
    theta: f64,
    eta: f64,
}

impl SqueezeSpec {
    pub fn new(r: f64, theta: f64, eta: f64) -> Result<Self> {
        if !r.is_finite() || r < 0.0 {
            return Err(Error::invalid(format!(
                "squeeze parameter r = {r} must be >= 0"
            )));
        }
        if !(0.0..=1.0).contains(&eta) {
            return Err(Error::invalid(format!(
                "efficiency eta = {eta} must be in [0, 1]"
            )));
        }
        if !theta.is_finite() {
            return Err(Error::invalid("squeeze angle must be finite"));
        }
        Ok(SqueezeSpec {
            r,
            theta: theta.rem_euclid(PI),
            eta,
        })
    }

    /// Lossless spec from the squeeze parameter.
    pub fn pure(r: f64, theta: f64) -> Result<Self> {
        SqueezeSpec::new(r, theta, 1.0)
    }

    /// Lossless spec from a squeeze factor in dB (10 dB -> r = ln(10)/2).
    pub fn from_db(db: f64, theta: f64) -> Result<Self> {
        SqueezeSpec::pure(db * 10f64.ln() / 20.0, theta)
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// Squeeze angle reduced to [0, pi).
    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// Variance of the squeezed principal axis, `e^(-2r)`.
    pub fn squeezed_variance(&self) -> f64 {
        (-2.0 * self.r).exp()
    }
}

/// Mean vector and covariance matrix of a Gaussian state, vacuum-normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    n_modes: usize,
    mean: Array1<f64>,
    cov: Array2<f64>,
}

impl GaussianState {
    /// Vacuum (ground) state of `n_modes` modes: zero mean, identity
    /// covariance.
    pub fn vacuum(n_modes: usize) -> Result<Self> {
        if n_modes == 0 {
            return Err(Error::invalid("n_modes must be >= 1"));
        }
        Ok(GaussianState {
            n_modes,
            mean: Array1::zeros(2 * n_modes),
            cov: Array2::eye(2 * n_modes),
        })
    }

    /// Pure single-mode squeezed vacuum with principal variances
    /// `e^(-2r)`, `e^(+2r)` along the angle `theta`.
    ///
    /// Loss is applied separately through [`GaussianState::apply_loss`];
    /// a spec with `eta < 1` is rejected here.
    pub fn squeezed_vacuum(spec: &SqueezeSpec) -> Result<Self> {
        if spec.eta() != 1.0 {
            return Err(Error::invalid(
                "squeezed_vacuum builds the pure state; apply_loss handles eta < 1",
            ));
        }
        let state = GaussianState {
            n_modes: 1,
            mean: Array1::zeros(2),
            cov: Array2::from_diag(&Array1::from(vec![
                (-2.0 * spec.r()).exp(),
                (2.0 * spec.r()).exp(),
            ])),
        };
        state.rotate(0, spec.theta())
    }

    /// Build a state from raw parts, enforcing symmetry (1e-12 relative)
    /// and the Heisenberg bound on the symplectic eigenvalues.
    pub fn new(mean: Array1<f64>, cov: Array2<f64>) -> Result<Self> {
        let dim = mean.len();
        if dim == 0 || dim % 2 != 0 {
            return Err(Error::invalid(
                "mean length must be a positive multiple of 2",
            ));
        }
        if cov.nrows() != dim || cov.ncols() != dim {
            return Err(Error::invalid(
                "covariance shape must match the mean length",
            ));
        }
        for i in 0..dim {
            for j in (i + 1)..dim {
                let scale = cov[[i, j]].abs().max(cov[[j, i]].abs()).max(1.0);
                if (cov[[i, j]] - cov[[j, i]]).abs() > SYMMETRY_TOL * scale {
                    return Err(Error::invalid(format!(
                        "covariance is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        let sym = 0.5 * (&cov + &cov.t());
        let state = GaussianState {
            n_modes: dim / 2,
            mean,
            cov: sym,
        };
        let nu_min = state
            .symplectic_eigenvalues()?
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        if nu_min < 1.0 - PHYSICALITY_TOL {
            return Err(Error::invalid(format!(
                "covariance violates the uncertainty bound (nu_min = {nu_min})"
            )));
        }
        Ok(state)
    }

    fn from_parts(n_modes: usize, mean: Array1<f64>, cov: Array2<f64>) -> Self {
        debug_assert_eq!(mean.len(), 2 * n_modes);
        GaussianState { n_modes, mean, cov }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn mean(&self) -> &Array1<f64> {
        &self.mean
    }

    pub fn cov(&self) -> &Array2<f64> {
        &self.cov
    }

    /// Mean (x, y) of one mode.
    pub fn mode_mean(&self, mode: usize) -> Result<[f64; 2]> {
        self.check_mode(mode)?;
        Ok([self.mean[2 * mode], self.mean[2 * mode + 1]])
    }

    /// 2x2 covariance block of one mode.
    pub fn mode_cov(&self, mode: usize) -> Result<Array2<f64>> {
        self.check_mode(mode)?;
        let i = 2 * mode;
        Ok(ndarray::array![
            [self.cov[[i, i]], self.cov[[i, i + 1]]],
            [self.cov[[i + 1, i]], self.cov[[i + 1, i + 1]]]
        ])
    }

    /// Tensor product with another state (this state's modes come first).
    pub fn tensor(&self, other: &GaussianState) -> GaussianState {
        let n = self.n_modes + other.n_modes;
        let dim = 2 * n;
        let mut mean = Array1::<f64>::zeros(dim);
        let mut cov = Array2::<f64>::zeros((dim, dim));
        let da = 2 * self.n_modes;
        for i in 0..da {
            mean[i] = self.mean[i];
            for j in 0..da {
                cov[[i, j]] = self.cov[[i, j]];
            }
        }
        for i in 0..2 * other.n_modes {
            mean[da + i] = other.mean[i];
            for j in 0..2 * other.n_modes {
                cov[[da + i, da + j]] = other.cov[[i, j]];
            }
        }
        GaussianState::from_parts(n, mean, cov)
    }

    /// Rotate one mode's phase space by `phi`: `cov -> R^T cov R` on the
    /// mode's block. Symplectic eigenvalues are unchanged.
    pub fn rotate(&self, mode: usize, phi: f64) -> Result<GaussianState> {
        self.check_mode(mode)?;
        let (s, c) = phi.sin_cos();
        // xi' = R^T xi on the selected block.
        let block = [[c, s], [-s, c]];
        Ok(self.apply_block_transform(mode, &block))
    }

    /// Shift the mean of one mode; the covariance is unchanged.
    pub fn displace(&self, mode: usize, dx: f64, dy: f64) -> Result<GaussianState> {
        self.check_mode(mode)?;
        let mut mean = self.mean.clone();
        mean[2 * mode] += dx;
        mean[2 * mode + 1] += dy;
        Ok(GaussianState::from_parts(
            self.n_modes,
            mean,
            self.cov.clone(),
        ))
    }

    /// Loss channel on one mode with power efficiency `eta_sq`:
    /// `V -> eta_sq V + (1 - eta_sq) I` on the block, cross-covariances
    /// scaled by `sqrt(eta_sq)`, mean scaled by `sqrt(eta_sq)`.
    pub fn apply_loss(&self, mode: usize, eta_sq: f64) -> Result<GaussianState> {
        self.check_mode(mode)?;
        if !(0.0..=1.0).contains(&eta_sq) {
            return Err(Error::invalid(format!(
                "eta_sq = {eta_sq} must be in [0, 1]"
            )));
        }
        let eta = eta_sq.sqrt();
        let dim = 2 * self.n_modes;
        let in_block = |i: usize| i / 2 == mode;
        let mut cov = self.cov.clone();
        for i in 0..dim {
            for j in 0..dim {
                cov[[i, j]] = match (in_block(i), in_block(j)) {
                    (true, true) => {
                        eta_sq * self.cov[[i, j]] + if i == j { 1.0 - eta_sq } else { 0.0 }
                    }
                    (true, false) | (false, true) => eta * self.cov[[i, j]],
                    (false, false) => self.cov[[i, j]],
                };
            }
        }
        let mut mean = self.mean.clone();
        mean[2 * mode] *= eta;
        mean[2 * mode + 1] *= eta;
        Ok(GaussianState::from_parts(self.n_modes, mean, cov))
    }

    /// Passive two-mode mixing. With `t = sqrt(transmissivity)` and
    /// `r = sqrt(1 - transmissivity)`:
    ///
    /// ```text
    /// out_a =  t in_a + r in_b'
    /// out_b = -r in_a + t in_b'
    /// ```
    ///
    /// where `in_b'` is mode b rotated by `relative_phase`. The transform is
    /// orthogonal, so `trace(cov) + |mean|^2` is conserved.
    pub fn beam_splitter(
        &self,
        mode_a: usize,
        mode_b: usize,
        transmissivity: f64,
        relative_phase: f64,
    ) -> Result<GaussianState> {
        self.check_mode(mode_a)?;
        self.check_mode(mode_b)?;
        if mode_a == mode_b {
            return Err(Error::invalid("beam splitter needs two distinct modes"));
        }
        if !(0.0..=1.0).contains(&transmissivity) {
            return Err(Error::invalid(format!(
                "transmissivity = {transmissivity} must be in [0, 1]"
            )));
        }
        let state = self.rotate(mode_b, relative_phase)?;
        let t = transmissivity.sqrt();
        let r = (1.0 - transmissivity).sqrt();
        let dim = 2 * self.n_modes;
        let mut s = Array2::<f64>::eye(dim);
        for k in 0..2 {
            let ia = 2 * mode_a + k;
            let ib = 2 * mode_b + k;
            s[[ia, ia]] = t;
            s[[ia, ib]] = r;
            s[[ib, ia]] = -r;
            s[[ib, ib]] = t;
        }
        let cov = s.dot(&state.cov).dot(&s.t());
        let mean = s.dot(&state.mean);
        Ok(GaussianState::from_parts(self.n_modes, mean, cov))
    }

    /// Variance of the generalized quadrature `X^theta = cos(t) X + sin(t) Y`
    /// of one mode: `cos^2 Vxx + 2 sin cos Vxy + sin^2 Vyy`.
    pub fn quadrature_variance(&self, mode: usize, vartheta: f64) -> Result<f64> {
        self.check_mode(mode)?;
        let i = 2 * mode;
        let (s, c) = vartheta.sin_cos();
        Ok(c * c * self.cov[[i, i]]
            + 2.0 * s * c * self.cov[[i, i + 1]]
            + s * s * self.cov[[i + 1, i + 1]])
    }

    /// Mean of the generalized quadrature of one mode.
    pub fn quadrature_mean(&self, mode: usize, vartheta: f64) -> Result<f64> {
        self.check_mode(mode)?;
        let (s, c) = vartheta.sin_cos();
        Ok(c * self.mean[2 * mode] + s * self.mean[2 * mode + 1])
    }

    /// Angle and value of the lowest quadrature variance of one mode
    /// (2x2 eigenproblem in closed form). The angle is reduced to [0, pi);
    /// an isotropic block returns angle 0 by convention.
    pub fn minimal_variance_quadrature(&self, mode: usize) -> Result<(f64, f64)> {
        self.check_mode(mode)?;
        let i = 2 * mode;
        let a = self.cov[[i, i]];
        let b = self.cov[[i, i + 1]];
        let c = self.cov[[i + 1, i + 1]];
        minimal_variance_2x2(a, b, c)
    }

    /// Symplectic eigenvalues of the full covariance matrix, descending.
    pub fn symplectic_eigenvalues(&self) -> Result<Vec<f64>> {
        mat::symplectic_eigenvalues(&self.cov)
    }

    fn check_mode(&self, mode: usize) -> Result<()> {
        if mode >= self.n_modes {
            return Err(Error::invalid(format!(
                "mode {mode} out of range for a {}-mode state",
                self.n_modes
            )));
        }
        Ok(())
    }

    /// xi' = B xi on the given mode's 2x2 block, identity elsewhere.
    fn apply_block_transform(&self, mode: usize, block: &[[f64; 2]; 2]) -> GaussianState {
        let dim = 2 * self.n_modes;
        let mut s = Array2::<f64>::eye(dim);
        let i = 2 * mode;
        for r in 0..2 {
            for c in 0..2 {
                s[[i + r, i + c]] = block[r][c];
            }
        }
        let cov = s.dot(&self.cov).dot(&s.t());
        let mean = s.dot(&self.mean);
        GaussianState::from_parts(self.n_modes, mean, cov)
    }
}

/// Minimum of the quadratic form `c^2 a + 2sc b + s^2 c` over the angle,
/// i.e. the smaller eigenvalue of `[[a, b], [b, c]]` and its eigenvector
/// angle in [0, pi).
pub(crate) fn minimal_variance_2x2(a: f64, b: f64, c: f64) -> Result<(f64, f64)> {
    let mean = 0.5 * (a + c);
    let d = 0.5 * (a - c);
    let disc = (d * d + b * b).sqrt();
    let scale = a.abs().max(c.abs()).max(1.0);
    if disc <= 1e-12 * scale {
        // isotropic block: angle 0 by convention
        return Ok((0.0, mean));
    }
    // variance(theta) = mean + d cos(2 theta) + b sin(2 theta)
    let theta = 0.5 * (b.atan2(d) + PI);
    Ok((theta.rem_euclid(PI), mean - disc))
}
