//! Time-domain balanced-homodyne simulation: quadrature sampling,
//! scanned-phase traces, signals buried in (squeezed) noise, a
//! spectrum-analyzer emulation, and the dual-readout scheme that uses
//! bipartite squeezing to veto disturbances.
//!
//! The homodyne approximation is taken as exact: sampled voltages are
//! i.i.d. Gaussian draws with the mean and variance of the selected
//! quadrature (vacuum variance = 1, i.e. 0 dB). Traces are reproducible:
//! identical inputs and seed give identical samples.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::gaussian::GaussianState;
use crate::noise_budget::opo_squeezing_spectrum;
use crate::phase_space::variance_from_db;
use crate::spectrum::{SpectrumSeries, Units};

/// Local-oscillator phase over a trace: fixed angle or a linear ramp.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PhaseSchedule {
    Constant(f64),
    Ramp { start: f64, end: f64 },
}

/// A sampled homodyne voltage trace in vacuum-normalized units.
#[derive(Debug, Clone, PartialEq)]
pub struct HomodyneTrace {
    samples: Vec<f64>,
    sample_rate_hz: f64,
    lo_phase_schedule: PhaseSchedule,
    source_state_descriptor: String,
    seed: u64,
}

impl HomodyneTrace {
    /// Wrap externally produced samples (e.g. for feeding recorded data to
    /// the spectrum analyzer).
    pub fn from_samples(samples: Vec<f64>, sample_rate_hz: f64) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::invalid("trace must hold at least one sample"));
        }
        if !(sample_rate_hz > 0.0) {
            return Err(Error::invalid("sample rate must be > 0"));
        }
        Ok(HomodyneTrace {
            samples,
            sample_rate_hz,
            lo_phase_schedule: PhaseSchedule::Constant(0.0),
            source_state_descriptor: "external samples".into(),
            seed: 0,
        })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn sample_rate_hz(&self) -> f64 {
        self.sample_rate_hz
    }

    pub fn lo_phase_schedule(&self) -> PhaseSchedule {
        self.lo_phase_schedule
    }

    pub fn source_state_descriptor(&self) -> &str {
        &self.source_state_descriptor
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn sample_mean(&self) -> f64 {
        self.samples.iter().sum::<f64>() / self.samples.len() as f64
    }

    pub fn sample_variance(&self) -> f64 {
        let m = self.sample_mean();
        self.samples.iter().map(|x| (x - m) * (x - m)).sum::<f64>()
            / (self.samples.len() as f64 - 1.0)
    }
}

fn normal_draws(rng: &mut ChaCha12Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| StandardNormal.sample(rng)).collect()
}

/// Sample the quadrature `X^vartheta` of one mode of a Gaussian state.
pub fn sample_quadratures(
    state: &GaussianState,
    mode: usize,
    vartheta: f64,
    n_samples: usize,
    seed: u64,
) -> Result<HomodyneTrace> {
    if n_samples == 0 {
        return Err(Error::invalid("n_samples must be >= 1"));
    }
    let mean = state.quadrature_mean(mode, vartheta)?;
    let sd = state.quadrature_variance(mode, vartheta)?.sqrt();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let samples = normal_draws(&mut rng, n_samples)
        .into_iter()
        .map(|z| mean + sd * z)
        .collect();
    Ok(HomodyneTrace {
        samples,
        sample_rate_hz: 1.0,
        lo_phase_schedule: PhaseSchedule::Constant(vartheta),
        source_state_descriptor: format!(
            "{}-mode gaussian state, mode {mode}, theta {vartheta:.6}",
            state.n_modes()
        ),
        seed,
    })
}

/// Sample a trace while ramping the LO phase linearly from
/// `phase_ramp.0` to `phase_ramp.1`, then return the rolling variance of
/// non-overlapping windows in dB relative to vacuum. The grid carries the
/// window-centre times.
pub fn scanned_phase_trace(
    state: &GaussianState,
    mode: usize,
    phase_ramp: (f64, f64),
    n_samples: usize,
    window: usize,
    seed: u64,
) -> Result<SpectrumSeries> {
    if !(phase_ramp.1 > phase_ramp.0) {
        return Err(Error::invalid("phase ramp must be strictly increasing"));
    }
    if window < 2 {
        return Err(Error::invalid("window must hold at least 2 samples"));
    }
    if window > n_samples {
        return Err(Error::invalid("window exceeds the trace length"));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let denom = (n_samples - 1).max(1) as f64;
    let mut samples = Vec::with_capacity(n_samples);
    for i in 0..n_samples {
        let theta = phase_ramp.0 + (phase_ramp.1 - phase_ramp.0) * i as f64 / denom;
        let mean = state.quadrature_mean(mode, theta)?;
        let sd = state.quadrature_variance(mode, theta)?.sqrt();
        let z: f64 = StandardNormal.sample(&mut rng);
        samples.push(mean + sd * z);
    }
    let n_windows = n_samples / window;
    let mut grid = Vec::with_capacity(n_windows);
    let mut values = Vec::with_capacity(n_windows);
    for w in 0..n_windows {
        let chunk = &samples[w * window..(w + 1) * window];
        let mean = chunk.iter().sum::<f64>() / window as f64;
        let var =
            chunk.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (window as f64 - 1.0);
        grid.push((w * window + window / 2) as f64);
        values.push(10.0 * var.max(1e-300).log10());
    }
    SpectrumSeries::new(grid, values, Units::DecibelRelVacuum)
}

/// A sinusoidal signal on top of white Gaussian noise at the (squeezed)
/// vacuum level: the time trace of a squeezed-light-enhanced Michelson
/// read out with a photo diode.
pub fn simulate_michelson_output(
    signal_amp: f64,
    signal_freq_hz: f64,
    squeeze_db: f64,
    duration_s: f64,
    sample_rate_hz: f64,
    seed: u64,
) -> Result<HomodyneTrace> {
    if !(sample_rate_hz > 0.0) || !(duration_s > 0.0) {
        return Err(Error::invalid("duration and sample rate must be > 0"));
    }
    if signal_freq_hz >= sample_rate_hz / 2.0 {
        return Err(Error::invalid(format!(
            "signal frequency {signal_freq_hz} Hz aliases at sample rate {sample_rate_hz} Hz"
        )));
    }
    let n = (duration_s * sample_rate_hz).round() as usize;
    if n == 0 {
        return Err(Error::invalid("trace would be empty"));
    }
    let sd = variance_from_db(squeeze_db).sqrt();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let samples = (0..n)
        .map(|i| {
            let t = i as f64 / sample_rate_hz;
            let z: f64 = StandardNormal.sample(&mut rng);
            signal_amp * (2.0 * PI * signal_freq_hz * t).sin() + sd * z
        })
        .collect();
    Ok(HomodyneTrace {
        samples,
        sample_rate_hz,
        lo_phase_schedule: PhaseSchedule::Constant(PI / 2.0),
        source_state_descriptor: format!(
            "michelson output, {squeeze_db} dB squeezing, signal {signal_amp} @ {signal_freq_hz} Hz"
        ),
        seed,
    })
}

/// Averaged periodogram of a trace with the requested resolution
/// bandwidth, in dB relative to the vacuum level. White noise of variance
/// V produces a flat spectrum at `10 log10(V)`.
pub fn spectrum_analyzer(trace: &HomodyneTrace, rbw_hz: f64) -> Result<SpectrumSeries> {
    let (grid, power) = averaged_periodogram(trace, rbw_hz)?;
    let db = power.iter().map(|p| 10.0 * p.max(1e-300).log10()).collect();
    SpectrumSeries::new(grid, db, Units::DecibelRelVacuum)
}

/// Linear-power periodogram used by the spectrum analyzer and the veto:
/// bins j = 1..L/2 at `f_j = j rbw`, averaged over `floor(N/L)` segments,
/// normalized so white noise of variance V reads V per bin.
fn averaged_periodogram(trace: &HomodyneTrace, rbw_hz: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let rate = trace.sample_rate_hz;
    if !(rbw_hz > 0.0) {
        return Err(Error::invalid("resolution bandwidth must be > 0"));
    }
    if rbw_hz > rate / 4.0 {
        return Err(Error::invalid(format!(
            "rbw {rbw_hz} Hz exceeds a quarter of the sample rate {rate} Hz"
        )));
    }
    let seg = (rate / rbw_hz).round() as usize;
    let n = trace.samples.len();
    if seg > n {
        return Err(Error::invalid(format!(
            "rbw {rbw_hz} Hz needs {seg}-sample segments but the trace has only {n}"
        )));
    }
    let n_seg = n / seg;
    let fft = FftPlanner::<f64>::new().plan_fft_forward(seg);
    let mut acc = vec![0.0_f64; seg];
    let mut buf: Vec<Complex64> = Vec::with_capacity(seg);
    for s in 0..n_seg {
        buf.clear();
        buf.extend(
            trace.samples[s * seg..(s + 1) * seg]
                .iter()
                .map(|x| Complex64::new(*x, 0.0)),
        );
        fft.process(&mut buf);
        for (a, x) in acc.iter_mut().zip(buf.iter()) {
            *a += x.norm_sqr();
        }
    }
    let scale = 1.0 / (n_seg as f64 * seg as f64);
    let half = seg / 2;
    let mut grid = Vec::with_capacity(half.saturating_sub(1));
    let mut power = Vec::with_capacity(half.saturating_sub(1));
    for j in 1..half {
        grid.push(j as f64 * rate / seg as f64);
        power.push(0.5 * (acc[j] + acc[seg - j]) * scale);
    }
    Ok((grid, power))
}

/// Number of averaged segments the analyzer uses for a trace at a given
/// rbw; sets the estimator width `sigma_rel = 1/sqrt(n_seg)`.
fn segment_count(trace: &HomodyneTrace, rbw_hz: f64) -> usize {
    let seg = (trace.sample_rate_hz / rbw_hz).round() as usize;
    trace.samples.len() / seg.max(1)
}

/// Stationary noise trace whose spectrum follows the below-threshold OPO
/// squeezed quadrature `V_-(Omega)`, synthesized in the frequency domain
/// (white squeezed noise filtered by the cavity's magnitude response).
pub fn colored_squeezed_trace(
    pump_ratio_x: f64,
    cavity_half_bandwidth_hz: f64,
    eta_total: f64,
    n_samples: usize,
    sample_rate_hz: f64,
    seed: u64,
) -> Result<HomodyneTrace> {
    if n_samples < 8 {
        return Err(Error::invalid("need at least 8 samples"));
    }
    let n = n_samples;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut spec = vec![Complex64::new(0.0, 0.0); n];
    let variance_at = |f_hz: f64| -> Result<f64> {
        let (v_minus, _) = opo_squeezing_spectrum(
            pump_ratio_x,
            2.0 * PI * cavity_half_bandwidth_hz,
            eta_total,
            2.0 * PI * f_hz,
        )?;
        Ok(v_minus)
    };
    for j in 1..n / 2 {
        let f = j as f64 * sample_rate_hz / n as f64;
        let v = variance_at(f)?;
        let sd = (n as f64 * v / 2.0).sqrt();
        let a: f64 = StandardNormal.sample(&mut rng);
        let b: f64 = StandardNormal.sample(&mut rng);
        spec[j] = Complex64::new(sd * a, sd * b);
        spec[n - j] = spec[j].conj();
    }
    let z0: f64 = StandardNormal.sample(&mut rng);
    spec[0] = Complex64::new((n as f64 * variance_at(0.0)?).sqrt() * z0, 0.0);
    let znyq: f64 = StandardNormal.sample(&mut rng);
    spec[n / 2] = Complex64::new(
        (n as f64 * variance_at(sample_rate_hz / 2.0)?).sqrt() * znyq,
        0.0,
    );
    let ifft = FftPlanner::<f64>::new().plan_fft_inverse(n);
    ifft.process(&mut spec);
    let samples = spec.iter().map(|x| x.re / n as f64).collect();
    Ok(HomodyneTrace {
        samples,
        sample_rate_hz,
        lo_phase_schedule: PhaseSchedule::Constant(0.0),
        source_state_descriptor: format!(
            "opo squeezed noise, x = {pump_ratio_x}, gamma = {cavity_half_bandwidth_hz} Hz, eta = {eta_total}"
        ),
        seed,
    })
}

/// A sinusoidal modulation injected into the interferometer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tone {
    pub amp: f64,
    pub freq_hz: f64,
}

/// A disturbance tone with an arbitrary (generally unknown) phase-space
/// angle: 0 puts it entirely in X, pi/2 entirely in Y.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disturbance {
    pub amp: f64,
    pub freq_hz: f64,
    pub angle_rad: f64,
}

/// Dual-readout scenario: two squeezed sources overlapped with a
/// 90-degree offset on a balanced splitter, one output probing the
/// interferometer, recombined so each detector sees its own squeezed
/// quadrature.
#[derive(Debug, Clone, PartialEq)]
pub struct QdmScenario {
    /// Science signal; always enters the phase (Y) quadrature.
    pub signal: Tone,
    pub disturbance: Disturbance,
    /// Squeezing of the phase readout's noise floor, dB.
    pub squeeze_db_a: f64,
    /// Squeezing of the amplitude readout's noise floor, dB.
    pub squeeze_db_b: f64,
    /// Power efficiency of each optical path (the documented loss
    /// assumption: 0.92 reaches 6 dB floors with 7.5 dB sources).
    pub efficiency_sq: f64,
    pub n_samples: usize,
    pub sample_rate_hz: f64,
    pub rbw_hz: f64,
    pub veto_threshold_sigma: f64,
    pub seed: u64,
}

impl Default for QdmScenario {
    fn default() -> Self {
        QdmScenario {
            // both tones sit on bin centres of the default 1/128 rbw
            signal: Tone {
                amp: 0.3,
                freq_hz: 24.0 / 128.0,
            },
            disturbance: Disturbance {
                amp: 0.4,
                freq_hz: 20.0 / 128.0,
                angle_rad: 0.6,
            },
            squeeze_db_a: 7.5,
            squeeze_db_b: 7.5,
            efficiency_sq: 0.92,
            n_samples: 1 << 17,
            sample_rate_hz: 1.0,
            rbw_hz: 1.0 / 128.0,
            veto_threshold_sigma: 5.0,
            seed: 7,
        }
    }
}

/// The two simultaneously recorded quadrature readouts plus the veto mask
/// derived from the amplitude readout's spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct QdmReadout {
    pub trace_a: HomodyneTrace,
    pub trace_b: HomodyneTrace,
    pub veto_mask: Vec<bool>,
    rbw_hz: f64,
}

impl QdmReadout {
    pub fn rbw_hz(&self) -> f64 {
        self.rbw_hz
    }
}

/// Readout noise floor after loss: `eta^2 e^(-2r) + 1 - eta^2`.
pub fn qdm_noise_floor(squeeze_db: f64, efficiency_sq: f64) -> f64 {
    efficiency_sq * variance_from_db(squeeze_db) + 1.0 - efficiency_sq
}

/// Simulate the dual readout. Readout A carries `signal/sqrt(2)` plus the
/// disturbance's Y projection over its squeezed floor; readout B carries
/// only the disturbance's X projection; the recombination splits every
/// modulation evenly (the 3 dB penalty), and a phase signal cannot reach
/// the amplitude quadrature.
pub fn qdm_dual_readout(scenario: &QdmScenario) -> Result<QdmReadout> {
    let sc = scenario;
    if !(sc.sample_rate_hz > 0.0) {
        return Err(Error::invalid("sample rate must be > 0"));
    }
    for f in [sc.signal.freq_hz, sc.disturbance.freq_hz] {
        if f >= sc.sample_rate_hz / 2.0 {
            return Err(Error::invalid(format!("tone at {f} Hz aliases")));
        }
    }
    if !(0.0..=1.0).contains(&sc.efficiency_sq) {
        return Err(Error::invalid("efficiency_sq must be in [0, 1]"));
    }
    if sc.n_samples == 0 {
        return Err(Error::invalid("n_samples must be >= 1"));
    }
    let floor_a = qdm_noise_floor(sc.squeeze_db_a, sc.efficiency_sq);
    let floor_b = qdm_noise_floor(sc.squeeze_db_b, sc.efficiency_sq);
    let sd_a = floor_a.sqrt();
    let sd_b = floor_b.sqrt();
    let split = 1.0 / 2.0_f64.sqrt();
    let (dist_y, dist_x) = (
        sc.disturbance.angle_rad.sin(),
        sc.disturbance.angle_rad.cos(),
    );
    let mut rng = ChaCha12Rng::seed_from_u64(sc.seed);
    let mut a = Vec::with_capacity(sc.n_samples);
    let mut b = Vec::with_capacity(sc.n_samples);
    for i in 0..sc.n_samples {
        let t = i as f64 / sc.sample_rate_hz;
        let sig = sc.signal.amp * (2.0 * PI * sc.signal.freq_hz * t).sin();
        let dist = sc.disturbance.amp * (2.0 * PI * sc.disturbance.freq_hz * t).sin();
        let za: f64 = StandardNormal.sample(&mut rng);
        let zb: f64 = StandardNormal.sample(&mut rng);
        a.push(split * (sig + dist * dist_y) + sd_a * za);
        b.push(split * dist * dist_x + sd_b * zb);
    }
    let trace_a = HomodyneTrace {
        samples: a,
        sample_rate_hz: sc.sample_rate_hz,
        lo_phase_schedule: PhaseSchedule::Constant(PI / 2.0),
        source_state_descriptor: "qdm phase readout".into(),
        seed: sc.seed,
    };
    let trace_b = HomodyneTrace {
        samples: b,
        sample_rate_hz: sc.sample_rate_hz,
        lo_phase_schedule: PhaseSchedule::Constant(0.0),
        source_state_descriptor: "qdm amplitude readout".into(),
        seed: sc.seed,
    };
    let mut readout = QdmReadout {
        trace_a,
        trace_b,
        veto_mask: Vec::new(),
        rbw_hz: sc.rbw_hz,
    };
    readout.veto_mask = qdm_veto(&readout, sc.veto_threshold_sigma)?;
    Ok(readout)
}

/// Flag the frequency bins where the amplitude readout exceeds its own
/// noise floor by `threshold_sigma` periodogram standard deviations. The
/// floor is estimated by the median bin, so isolated tones do not bias
/// it.
pub fn qdm_veto(readout: &QdmReadout, threshold_sigma: f64) -> Result<Vec<bool>> {
    if !(threshold_sigma > 0.0) {
        return Err(Error::invalid("threshold must be > 0"));
    }
    let (_, power) = averaged_periodogram(&readout.trace_b, readout.rbw_hz)?;
    let n_seg = segment_count(&readout.trace_b, readout.rbw_hz);
    let sigma_rel = 1.0 / (n_seg as f64).sqrt();
    let mut sorted = power.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let floor = sorted[sorted.len() / 2];
    let cut = floor * (1.0 + threshold_sigma * sigma_rel);
    Ok(power.into_iter().map(|p| p > cut).collect())
}

/// Frequency grid of the veto mask bins (matches the spectrum analyzer's
/// grid at the readout's rbw).
pub fn qdm_bin_frequencies(readout: &QdmReadout) -> Result<Vec<f64>> {
    let (grid, _) = averaged_periodogram(&readout.trace_b, readout.rbw_hz)?;
    Ok(grid)
}
