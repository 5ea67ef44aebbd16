//! Squeezed states of light in the Gaussian (covariance-matrix) formalism,
//! together with the quantum-noise model of squeezed-light-enhanced laser
//! interferometers.
//!
//! The crate is organised around a handful of small modules:
//!
//! * [`gaussian`] - Gaussian states over n modes and the symplectic
//!   operations that transform them (rotation, displacement, loss,
//!   beam splitters).
//! * [`phase_space`] - Wigner functions, quadrature marginals and dB
//!   conversions.
//! * [`photon`] - exact photon-number statistics of displaced squeezed
//!   states.
//! * [`entanglement`] - Duan inseparability and Reid EPR criteria for
//!   bipartite covariance matrices.
//! * [`noise_budget`] - shot noise, radiation-pressure noise, the standard
//!   quantum limit and squeezed-light injection for Michelson
//!   interferometers; filter-cavity squeeze-angle rotation and OPO
//!   squeezing spectra.
//! * [`phase_limits`] - phase-estimation sensitivity bounds with and
//!   without loss and squeezing.
//! * [`homodyne`] - time-domain balanced-homodyne simulation, spectrum
//!   analysis and the dual-readout (quantum dense metrology) scheme.
//! * [`cli`] - config parsing and the `sqz` command-line front end.
//!
//! Conventions used throughout: quadrature ordering is `X1, Y1, X2, Y2, …`
//! and covariance matrices are vacuum-normalized, i.e. the vacuum state has
//! unit variance in every quadrature (the 1/4 zero-point convention is
//! available through conversion helpers in [`phase_space`]).

// `!(x > 0.0)`-style guards are deliberate: they reject NaN along with the
// out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod constants;
pub mod entanglement;
mod error;
pub mod gaussian;
pub mod homodyne;
mod mat;
pub mod noise_budget;
pub mod phase_limits;
pub mod phase_space;
pub mod photon;
pub mod spectrum;

pub use error::{Error, Result};
pub use gaussian::{GaussianState, SqueezeSpec};
pub use spectrum::{SpectrumSeries, Units};
