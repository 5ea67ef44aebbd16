//! Two-mode (bipartite) squeezing criteria on 4x4 covariance matrices:
//! the Duan inseparability value and the Reid EPR parameter.
//!
//! Ordering is `X_A, Y_A, X_B, Y_B`, vacuum-normalized. A state is
//! two-mode squeezed iff the Duan value is below 2; EPR steering is
//! demonstrated iff the Reid parameter is below 1.

use ndarray::{Array1, Array2};

use crate::error::{Error, Result};
use crate::gaussian::GaussianState;
use crate::mat;

/// Validated 4x4 bipartite covariance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteCovariance {
    cov: Array2<f64>,
}

impl BipartiteCovariance {
    /// Accepts a symmetric, physical (nu >= 1 - 1e-9) 4x4 matrix.
    pub fn new(cov: Array2<f64>) -> Result<Self> {
        if cov.nrows() != 4 || cov.ncols() != 4 {
            return Err(Error::invalid("bipartite covariance must be 4x4"));
        }
        for i in 0..4 {
            for j in (i + 1)..4 {
                let scale = cov[[i, j]].abs().max(cov[[j, i]].abs()).max(1.0);
                if (cov[[i, j]] - cov[[j, i]]).abs() > 1e-9 * scale {
                    return Err(Error::invalid("bipartite covariance is not symmetric"));
                }
            }
        }
        let sym = 0.5 * (&cov + &cov.t());
        let nus = mat::symplectic_eigenvalues(&sym)?;
        if nus.iter().any(|nu| *nu < 1.0 - 1e-9) {
            return Err(Error::invalid(format!(
                "unphysical bipartite covariance (symplectic eigenvalues {nus:?})"
            )));
        }
        Ok(BipartiteCovariance { cov: sym })
    }

    /// Covariance of a two-mode Gaussian state.
    pub fn from_state(state: &GaussianState) -> Result<Self> {
        if state.n_modes() != 2 {
            return Err(Error::invalid("expected a two-mode state"));
        }
        BipartiteCovariance::new(state.cov().clone())
    }

    pub fn cov(&self) -> &Array2<f64> {
        &self.cov
    }
}

/// Duan inseparability value
/// `Delta^2(X_A -+ X_B)/2 + Delta^2(Y_A +- Y_B)/2`.
///
/// Both sign assignments are evaluated and the smaller total returned.
/// Two uncorrelated vacua sit exactly on the boundary value 2.
pub fn duan_value(bp: &BipartiteCovariance) -> f64 {
    let v = &bp.cov;
    let xx = v[[0, 0]] + v[[2, 2]];
    let yy = v[[1, 1]] + v[[3, 3]];
    let cross_x = 2.0 * v[[0, 2]];
    let cross_y = 2.0 * v[[1, 3]];
    let minus_plus = 0.5 * (xx - cross_x) + 0.5 * (yy + cross_y);
    let plus_minus = 0.5 * (xx + cross_x) + 0.5 * (yy - cross_y);
    minus_plus.min(plus_minus)
}

/// Reid EPR parameter: the product of the conditional variances of B's
/// quadratures given A's, normalized so two vacua give exactly 1.
///
/// `eps^2 = [V_XBXB - V_XAXB^2 / V_XAXA] [V_YBYB - V_YAYB^2 / V_YAYA]`.
pub fn reid_epr(bp: &BipartiteCovariance) -> Result<f64> {
    let v = &bp.cov;
    let vxa = v[[0, 0]];
    let vya = v[[1, 1]];
    if vxa <= 1e-12 || vya <= 1e-12 {
        return Err(Error::domain(
            "conditioning variance vanishes; Reid parameter undefined",
        ));
    }
    let cond_x = v[[2, 2]] - v[[0, 2]] * v[[0, 2]] / vxa;
    let cond_y = v[[3, 3]] - v[[1, 3]] * v[[1, 3]] / vya;
    Ok(cond_x * cond_y)
}

/// Overlap two single-mode states on a balanced beam splitter and return
/// the resulting bipartite covariance. `relative_phase` rotates the second
/// state's phase space before mixing.
pub fn assemble_bipartite(
    state_a: &GaussianState,
    state_b: &GaussianState,
    relative_phase: f64,
) -> Result<BipartiteCovariance> {
    if state_a.n_modes() != 1 || state_b.n_modes() != 1 {
        return Err(Error::invalid(
            "assemble_bipartite expects single-mode inputs",
        ));
    }
    let joint = state_a
        .tensor(state_b)
        .beam_splitter(0, 1, 0.5, relative_phase)?;
    BipartiteCovariance::from_state(&joint)
}

/// Reduced single-party state of one side of a bipartite covariance
/// (Gaussian partial trace = block extraction).
pub fn reduced_state(bp: &BipartiteCovariance, party_b: bool) -> Result<GaussianState> {
    let off = if party_b { 2 } else { 0 };
    let mut cov = Array2::<f64>::zeros((2, 2));
    for i in 0..2 {
        for j in 0..2 {
            cov[[i, j]] = bp.cov[[off + i, off + j]];
        }
    }
    GaussianState::new(Array1::zeros(2), cov)
}
