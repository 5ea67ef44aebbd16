//! Quantum-noise spectral densities of a Michelson interferometer: shot
//! noise, radiation-pressure noise, the standard quantum limit, total
//! quantum noise with optional squeezed-light injection, the ponderomotive
//! (back-action) transform, filter-cavity squeeze-angle rotation and the
//! below-threshold OPO squeezing spectrum.
//!
//! All spectral densities are single-sided amplitude spectral densities.
//! `omega_sideband` arguments are angular sideband frequencies in rad/s.

use std::f64::consts::PI;

use ndarray::{array, Array2};

use crate::constants::{C, HBAR};
use crate::error::{Error, Result};
use crate::gaussian::{minimal_variance_2x2, GaussianState, SqueezeSpec};

/// Pendulum suspension of the test masses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pendulum {
    /// Resonance frequency in rad/s.
    pub omega_m: f64,
    /// Quality factor.
    pub q: f64,
}

/// Fabry-Perot arm resonators, described by the input mirror's power
/// transmission (end mirrors assumed perfect).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArmCavity {
    pub t_fp: f64,
}

/// Interferometer parameter set. `power_w` is the total light power in the
/// arms including cavity build-ups.
#[derive(Debug, Clone, PartialEq)]
pub struct InterferometerConfig {
    pub power_w: f64,
    pub wavelength_m: f64,
    pub arm_length_m: f64,
    pub mirror_mass_kg: f64,
    pub pendulum: Pendulum,
    pub arm_cavity: Option<ArmCavity>,
}

impl InterferometerConfig {
    pub fn new(
        power_w: f64,
        wavelength_m: f64,
        arm_length_m: f64,
        mirror_mass_kg: f64,
        pendulum: Pendulum,
        arm_cavity: Option<ArmCavity>,
    ) -> Result<Self> {
        for (name, v) in [
            ("power_w", power_w),
            ("wavelength_m", wavelength_m),
            ("arm_length_m", arm_length_m),
            ("mirror_mass_kg", mirror_mass_kg),
            ("pendulum.omega_m", pendulum.omega_m),
            ("pendulum.q", pendulum.q),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::invalid(format!("{name} = {v} must be > 0")));
            }
        }
        if let Some(cav) = &arm_cavity {
            if !(cav.t_fp > 0.0 && cav.t_fp <= 1.0) {
                return Err(Error::invalid(format!(
                    "arm cavity T_FP = {} must be in (0, 1]",
                    cav.t_fp
                )));
            }
        }
        Ok(InterferometerConfig {
            power_w,
            wavelength_m,
            arm_length_m,
            mirror_mass_kg,
            pendulum,
            arm_cavity,
        })
    }

    /// Carrier angular frequency `2 pi c / lambda`.
    pub fn omega(&self) -> f64 {
        2.0 * PI * C / self.wavelength_m
    }

    /// Reduced mass of the differential mirror mode, `M / 2`.
    pub fn reduced_mass(&self) -> f64 {
        self.mirror_mass_kg / 2.0
    }

    /// Arm-cavity half bandwidth `c T_FP / (4 L)`, when cavities are
    /// present.
    pub fn gamma_fp(&self) -> Option<f64> {
        self.arm_cavity
            .as_ref()
            .map(|cav| C * cav.t_fp / (4.0 * self.arm_length_m))
    }
}

/// Signal normalization of a spectral density.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// Differential arm-length change, m/sqrt(Hz).
    Displacement,
    /// Strain h = x / L, 1/sqrt(Hz).
    Strain,
}

/// Mechanical response model used for the radiation-pressure noise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Susceptibility {
    FreeMass,
    Pendulum,
}

/// Which standard-quantum-limit expression to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SqlVariant {
    FreeMass,
    WithArmCavities,
}

/// Squeezed-light injection scenario for the total quantum noise.
#[derive(Debug, Clone, PartialEq)]
pub enum Injection {
    None,
    /// Frequency-independent squeeze angle and efficiency.
    FixedSqueeze(SqueezeSpec),
    /// Squeeze angle optimized for every k(Omega); scales the total PSD by
    /// e^(-2r) at every frequency.
    OptimalFrequencyDependent {
        r: f64,
    },
}

/// Arm-cavity signal-response factor `sqrt(L^2 (gamma_FP^2 + Omega^2) / c^2)`.
pub fn h_fp(config: &InterferometerConfig, omega_sideband: f64) -> Result<f64> {
    let gamma = config
        .gamma_fp()
        .ok_or_else(|| Error::invalid("config has no arm cavity"))?;
    let l = config.arm_length_m;
    Ok((l * l * (gamma * gamma + omega_sideband * omega_sideband)).sqrt() / C)
}

fn cavity_factor(config: &InterferometerConfig, omega_sideband: f64) -> Result<f64> {
    match config.arm_cavity {
        Some(_) => h_fp(config, omega_sideband),
        None => Ok(1.0),
    }
}

fn normalize(value: f64, config: &InterferometerConfig, norm: Normalization) -> f64 {
    match norm {
        Normalization::Displacement => value,
        Normalization::Strain => value / config.arm_length_m,
    }
}

/// Shot-noise ASD `sqrt(hbar c^2 / (2 omega P))`, flat in frequency for a
/// simple Michelson; multiplied by the arm-cavity factor when resonators
/// are present.
pub fn shot_asd(
    config: &InterferometerConfig,
    omega_sideband: f64,
    norm: Normalization,
) -> Result<f64> {
    let base = (HBAR * C * C / (2.0 * config.omega() * config.power_w)).sqrt();
    Ok(normalize(
        base * cavity_factor(config, omega_sideband)?,
        config,
        norm,
    ))
}

/// Radiation-pressure-noise ASD. The free-mass form is
/// `sqrt(2 hbar omega P / (c^2 m^2 Omega^4))` with `m` the reduced mass;
/// the pendulum form replaces `1/(m Omega^2)` by the full mechanical
/// susceptibility `1 / (m |Omega_M^2 - Omega^2 + i Omega Omega_M / Q|)`.
pub fn rpn_asd(
    config: &InterferometerConfig,
    omega_sideband: f64,
    norm: Normalization,
    susceptibility: Susceptibility,
) -> Result<f64> {
    let m = config.reduced_mass();
    let force = (2.0 * HBAR * config.omega() * config.power_w).sqrt() / C;
    let response = match susceptibility {
        Susceptibility::FreeMass => {
            if omega_sideband == 0.0 {
                return Err(Error::domain(
                    "free-mass radiation-pressure noise is singular at Omega = 0",
                ));
            }
            1.0 / (m * omega_sideband * omega_sideband)
        }
        Susceptibility::Pendulum => {
            let om = config.pendulum.omega_m;
            let re = om * om - omega_sideband * omega_sideband;
            let im = omega_sideband * om / config.pendulum.q;
            1.0 / (m * (re * re + im * im).sqrt())
        }
    };
    Ok(normalize(
        force * response * cavity_factor(config, omega_sideband)?,
        config,
        norm,
    ))
}

/// Standard quantum limit, displacement-normalized:
/// `sqrt(2 hbar / (m Omega^2))` for free masses, or
/// `sqrt(hbar / (m Omega^2) (1/H_FP + H_FP))` with arm cavities.
pub fn sql_asd(
    config: &InterferometerConfig,
    omega_sideband: f64,
    variant: SqlVariant,
) -> Result<f64> {
    if omega_sideband == 0.0 {
        return Err(Error::domain("SQL is singular at Omega = 0"));
    }
    let m = config.reduced_mass();
    match variant {
        SqlVariant::FreeMass => Ok((2.0 * HBAR / (m * omega_sideband * omega_sideband)).sqrt()),
        SqlVariant::WithArmCavities => {
            let h = h_fp(config, omega_sideband)?;
            Ok((HBAR / (m * omega_sideband * omega_sideband) * (1.0 / h + h)).sqrt())
        }
    }
}

/// Radiation-pressure coupling parameter `k = 2 omega P / (m c^2 Omega^2)`.
pub fn kappa(config: &InterferometerConfig, omega_sideband: f64) -> Result<f64> {
    if omega_sideband == 0.0 {
        return Err(Error::domain("kappa is singular at Omega = 0"));
    }
    Ok(2.0 * config.omega() * config.power_w
        / (config.reduced_mass() * C * C * omega_sideband * omega_sideband))
}

/// Angular sideband frequency where `kappa = 1`:
/// `Omega_SQL = sqrt(2 omega P / (m c^2))`.
pub fn omega_sql(config: &InterferometerConfig) -> f64 {
    (2.0 * config.omega() * config.power_w / (config.reduced_mass() * C * C)).sqrt()
}

/// Total quantum-noise ASD, displacement-normalized. Without injection
/// this is the SQL-factored form `sqrt(S_SQL / 2 (1/k + k))`, which for a
/// cavity-free Michelson equals `sqrt(shot^2 + rpn^2)` identically. With
/// injection, the output-phase-quadrature variance of the ponderomotively
/// transformed input state replaces the vacuum factor `1 + k^2`.
pub fn total_quantum_noise_asd(
    config: &InterferometerConfig,
    omega_sideband: f64,
    injection: &Injection,
) -> Result<f64> {
    let k = kappa(config, omega_sideband)?;
    let variant = if config.arm_cavity.is_some() {
        SqlVariant::WithArmCavities
    } else {
        SqlVariant::FreeMass
    };
    let s_sql = sql_asd(config, omega_sideband, variant)?.powi(2);
    // S_SQL/2 (1/k + k) = (S_SQL / 2k) (1 + k^2); the leading factor is the
    // effective shot-noise PSD.
    let shot_eff_sq = s_sql / (2.0 * k);
    let v_out_yy = match injection {
        Injection::None => 1.0 + k * k,
        Injection::OptimalFrequencyDependent { r } => {
            if !(*r >= 0.0) {
                return Err(Error::invalid(format!(
                    "squeeze parameter r = {r} must be >= 0"
                )));
            }
            (1.0 + k * k) * (-2.0 * r).exp()
        }
        Injection::FixedSqueeze(spec) => {
            let pure = SqueezeSpec::pure(spec.r(), spec.theta())?;
            let state =
                GaussianState::squeezed_vacuum(&pure)?.apply_loss(0, spec.eta() * spec.eta())?;
            let out = ponderomotive_transform(&state.mode_cov(0)?, k);
            out[[1, 1]]
        }
    };
    Ok((shot_eff_sq * v_out_yy).sqrt())
}

/// Back-action transform of a single-mode covariance:
/// `K^T V K` with `K = [[1, -k], [0, 1]]`. The determinant is preserved.
pub fn ponderomotive_transform(cov: &Array2<f64>, k: f64) -> Array2<f64> {
    let kmat = array![[1.0, -k], [0.0, 1.0]];
    kmat.t().dot(cov).dot(&kmat)
}

/// Input squeeze angle minimizing the output phase-quadrature variance at
/// coupling `k`: `theta_opt = atan2(1, k)`, i.e. `tan(theta) = 1/k`, with
/// the branch that reproduces the 45-degree result at `k = 1`. The
/// minimized output variance is `(1 + k^2) e^(-2r)`.
pub fn optimal_input_angle(k: f64) -> f64 {
    1.0_f64.atan2(k)
}

/// Squeeze factor generated by the back-action transform acting on vacuum,
/// in dB, together with the homodyne angle that extracts it (the angle is
/// the minimal-variance quadrature shifted onto the phase readout,
/// about -58 degrees at k = 1).
pub fn ponderomotive_squeezing_db(k: f64) -> (f64, f64) {
    let v = ponderomotive_transform(&Array2::eye(2), k);
    let (theta_min, v_min) =
        minimal_variance_2x2(v[[0, 0]], v[[0, 1]], v[[1, 1]]).expect("2x2 eigensolve");
    (-10.0 * v_min.log10(), theta_min - PI / 2.0)
}

/// Quadrature variance of an output covariance at homodyne angle `zeta`.
pub fn readout_variance_vs_lo_angle(cov_out: &Array2<f64>, zeta: f64) -> f64 {
    let (s, c) = zeta.sin_cos();
    c * c * cov_out[[0, 0]] + 2.0 * s * c * cov_out[[0, 1]] + s * s * cov_out[[1, 1]]
}

/// Signal-to-quantum-noise ratio of a unit phase signal read out at
/// homodyne angle `zeta`, for an input covariance `cov_in` entering an
/// interferometer with coupling `k`. The signal projects as `sin(zeta)`;
/// the noise is the transformed input read at the same angle.
pub fn readout_snr(cov_in: &Array2<f64>, k: f64, zeta: f64) -> f64 {
    let out = ponderomotive_transform(cov_in, k);
    zeta.sin().abs() / readout_variance_vs_lo_angle(&out, zeta).sqrt()
}

/// One detuned, single-ended, lossless filter cavity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterCavity {
    pub detuning_hz: f64,
    pub half_bandwidth_hz: f64,
}

/// A chain of filter cavities traversed in sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterCavitySpec {
    pub cavities: Vec<FilterCavity>,
}

impl FilterCavitySpec {
    pub fn single(detuning_hz: f64, half_bandwidth_hz: f64) -> Self {
        FilterCavitySpec {
            cavities: vec![FilterCavity {
                detuning_hz,
                half_bandwidth_hz,
            }],
        }
    }
}

/// Squeeze-ellipse rotation angle picked up on reflection at sideband
/// frequency `f_sideband_hz`, reduced to (-pi/2, pi/2].
///
/// Per cavity the reflection phase is `phi(f) = -2 atan((f - Delta)/gamma)`
/// and the ellipse rotates by the sideband-average
/// `(phi(+f) + phi(-f)) / 2`; a cavity chain adds the rotations.
pub fn filter_cavity_rotation(spec: &FilterCavitySpec, f_sideband_hz: f64) -> Result<f64> {
    let mut total = 0.0;
    for cav in &spec.cavities {
        if !(cav.half_bandwidth_hz > 0.0) {
            return Err(Error::invalid("filter cavity bandwidth must be > 0"));
        }
        let phi = |f: f64| -2.0 * ((f - cav.detuning_hz) / cav.half_bandwidth_hz).atan();
        total += 0.5 * (phi(f_sideband_hz) + phi(-f_sideband_hz));
    }
    // the ellipse orientation is pi-periodic
    let mut reduced = total.rem_euclid(PI);
    if reduced > PI / 2.0 {
        reduced -= PI;
    }
    Ok(reduced)
}

/// Strongest intra-cavity squeeze factor of a singly-ended squeezing
/// resonator with input-mirror amplitude reflectivity `r1`, in dB:
/// `10 log10((1 + r1)^2 / r1^2)` (6 dB in the high-reflectivity limit).
pub fn intracavity_squeeze_limit(r1: f64) -> Result<f64> {
    if !(r1 > 0.0 && r1 <= 1.0) {
        return Err(Error::invalid(format!(
            "amplitude reflectivity r1 = {r1} must be in (0, 1]"
        )));
    }
    Ok(20.0 * ((1.0 + r1) / r1).log10())
}

/// Below-threshold OPO output variances at sideband frequency
/// `omega_sideband` (rad/s, only the ratio to `gamma` matters):
///
/// ```text
/// V_-+ = 1 -+ eta 4x / ((1 +- x)^2 + (Omega/gamma)^2)
/// ```
///
/// Returns `(squeezed, anti_squeezed)`. `x` is the pump amplitude relative
/// to threshold; `x -> 1` gives perfect squeezing on resonance at
/// `eta = 1`.
pub fn opo_squeezing_spectrum(
    pump_ratio_x: f64,
    gamma: f64,
    eta_total: f64,
    omega_sideband: f64,
) -> Result<(f64, f64)> {
    if !(0.0..1.0).contains(&pump_ratio_x) {
        return Err(Error::domain(format!(
            "pump ratio x = {pump_ratio_x} must be in [0, 1): at/above threshold"
        )));
    }
    if !(gamma > 0.0) {
        return Err(Error::invalid("cavity half bandwidth gamma must be > 0"));
    }
    if !(0.0..=1.0).contains(&eta_total) {
        return Err(Error::invalid(format!(
            "eta = {eta_total} must be in [0, 1]"
        )));
    }
    let x = pump_ratio_x;
    let w = omega_sideband / gamma;
    let squeezed = 1.0 - eta_total * 4.0 * x / ((1.0 + x) * (1.0 + x) + w * w);
    let anti = 1.0 + eta_total * 4.0 * x / ((1.0 - x) * (1.0 - x) + w * w);
    Ok((squeezed, anti))
}
