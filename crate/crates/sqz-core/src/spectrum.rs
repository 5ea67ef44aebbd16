//! Frequency (or time) series of spectral values with a units tag.

use crate::error::{Error, Result};

/// Units of the values carried by a [`SpectrumSeries`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Units {
    /// Amplitude spectral density normalized to displacement.
    MetersPerSqrtHz,
    /// Amplitude spectral density normalized to strain.
    StrainPerSqrtHz,
    /// Unitless ratios (e.g. variances relative to vacuum).
    Dimensionless,
    /// Decibel relative to the vacuum level; the one tag whose values may
    /// be negative.
    DecibelRelVacuum,
}

impl Units {
    pub fn label(&self) -> &'static str {
        match self {
            Units::MetersPerSqrtHz => "m/sqrt(Hz)",
            Units::StrainPerSqrtHz => "1/sqrt(Hz)",
            Units::Dimensionless => "dimensionless",
            Units::DecibelRelVacuum => "dB rel vacuum",
        }
    }
}

/// A sampled spectrum: strictly increasing grid plus finite values.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSeries {
    grid: Vec<f64>,
    values: Vec<f64>,
    units: Units,
}

impl SpectrumSeries {
    pub fn new(grid: Vec<f64>, values: Vec<f64>, units: Units) -> Result<Self> {
        if grid.is_empty() {
            return Err(Error::invalid("spectrum grid must not be empty"));
        }
        if grid.len() != values.len() {
            return Err(Error::invalid("grid and values must have equal length"));
        }
        if grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::invalid("spectrum grid must be strictly increasing"));
        }
        for v in &values {
            if !v.is_finite() {
                return Err(Error::NumericRange("spectrum value is not finite".into()));
            }
            if *v < 0.0 && units != Units::DecibelRelVacuum {
                return Err(Error::invalid("spectrum values must be >= 0"));
            }
        }
        Ok(SpectrumSeries {
            grid,
            values,
            units,
        })
    }

    /// Grid points (frequencies in Hz for spectra, seconds for rolling
    /// time series).
    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn units(&self) -> Units {
        self.units
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }
}

/// Log- or linearly-spaced frequency grid helper for the CLI and tests.
pub fn frequency_grid(f_min: f64, f_max: f64, points: usize, log_spaced: bool) -> Result<Vec<f64>> {
    if points == 0 {
        return Err(Error::invalid("frequency grid needs at least one point"));
    }
    if !(f_min > 0.0) || !(f_max > f_min) {
        return Err(Error::invalid("need 0 < f_min < f_max"));
    }
    if points == 1 {
        return Ok(vec![f_min]);
    }
    let n = points as f64 - 1.0;
    let grid = (0..points)
        .map(|i| {
            let t = i as f64 / n;
            if log_spaced {
                (f_min.ln() + t * (f_max.ln() - f_min.ln())).exp()
            } else {
                f_min + t * (f_max - f_min)
            }
        })
        .collect();
    Ok(grid)
}
