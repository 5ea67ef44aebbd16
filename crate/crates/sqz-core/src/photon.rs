//! Exact photon-number statistics of displaced squeezed states.
//!
//! The general probability `P(n)` of a pure displaced squeezed state
//! `|alpha, r, theta>` combines a prefactor with the squared magnitude of a
//! Hermite polynomial of complex argument
//!
//! ```text
//! w = (alpha cosh r + conj(alpha) e^(i theta) sinh r) / sqrt(e^(i theta) sinh 2r).
//! ```
//!
//! Everything is evaluated in log space with a rescaled three-term
//! recurrence for `H_n(w)`, which keeps the evaluation finite up to photon
//! numbers of order 10^4. The closed forms at `r = 0` (Poisson) and
//! `alpha = 0` (even photon numbers only) are special-cased and double as
//! oracles for the general path.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest squeeze parameter accepted by the log-space evaluation before
/// `sinh(2r)` itself leaves the double range.
const R_MAX: f64 = 300.0;

/// ln Gamma(x) for x > 0 (Lanczos, g = 7, 9 terms; ~1e-13 relative).
pub(crate) fn ln_gamma(x: f64) -> f64 {
    const COEF: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_59,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_571_6e-6,
        1.505_632_735_149_311_6e-7,
    ];
    debug_assert!(x > 0.0);
    let xm1 = x - 1.0;
    let mut acc = COEF[0];
    for (i, c) in COEF.iter().enumerate().skip(1) {
        acc += c / (xm1 + i as f64);
    }
    let t = xm1 + 7.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (xm1 + 0.5) * t.ln() - t + acc.ln()
}

fn ln_factorial(n: usize) -> f64 {
    ln_gamma(n as f64 + 1.0)
}

/// ln cosh(r) without overflow for large r.
fn ln_cosh(r: f64) -> f64 {
    if r > 20.0 {
        r - std::f64::consts::LN_2 + (-2.0 * r).exp().ln_1p()
    } else {
        r.cosh().ln()
    }
}

/// ln |H_n(w)| for n = 0..=n_max via the rescaled recurrence
/// `H_(k+1) = 2 w H_k - 2 k H_(k-1)`.
fn ln_abs_hermite_sweep(w: Complex64, n_max: usize) -> Vec<f64> {
    let mut out = vec![f64::NEG_INFINITY; n_max + 1];
    out[0] = 0.0;
    if n_max == 0 {
        return out;
    }
    let mut prev = Complex64::new(1.0, 0.0);
    let mut cur = 2.0 * w;
    let mut scale = 0.0_f64;
    let m1 = cur.norm();
    out[1] = if m1 > 0.0 { m1.ln() } else { f64::NEG_INFINITY };
    for k in 1..n_max {
        let next = 2.0 * w * cur - 2.0 * (k as f64) * prev;
        prev = cur;
        cur = next;
        let m = cur.norm();
        out[k + 1] = if m > 0.0 {
            m.ln() + scale
        } else {
            f64::NEG_INFINITY
        };
        if m > 1e120 || (m > 0.0 && m < 1e-120) {
            cur /= m;
            prev /= m;
            scale += m.ln();
        }
    }
    out
}

/// Shared prefactor of ln P(n): everything except the Hermite term.
/// Returns (per_n_coefficient, constant, w).
fn ln_pmf_parts(alpha: Complex64, r: f64, theta: f64) -> (f64, f64, Complex64) {
    let phase = Complex64::from_polar(1.0, theta);
    let gamma = alpha * r.cosh() + alpha.conj() * phase * r.sinh();
    let w = gamma / (phase * (2.0 * r).sinh()).sqrt();
    let per_n = (0.5 * r.tanh()).ln();
    let cst = -ln_cosh(r) - alpha.norm_sqr() - (alpha.conj() * alpha.conj() * phase).re * r.tanh();
    (per_n, cst, w)
}

fn finalize(ln_p: f64) -> Result<f64> {
    if ln_p.is_nan() || ln_p > 1e-6 {
        return Err(Error::NumericRange(format!(
            "photon pmf evaluation left the valid range (ln P = {ln_p})"
        )));
    }
    Ok(ln_p.exp())
}

/// Probability of `n` photons in the squeezed vacuum `|alpha = 0, r>`:
/// zero for odd `n`, `(2m)! tanh^(2m) r / (4^m (m!)^2 cosh r)` for `n = 2m`.
fn squeezed_vacuum_pmf(r: f64, n: usize) -> Result<f64> {
    if n % 2 == 1 {
        return Ok(0.0);
    }
    if r == 0.0 {
        return Ok(if n == 0 { 1.0 } else { 0.0 });
    }
    let m = n / 2;
    let ln_p = ln_factorial(n) - (m as f64) * 4.0_f64.ln() - 2.0 * ln_factorial(m)
        + (n as f64) * r.tanh().ln()
        - ln_cosh(r);
    finalize(ln_p)
}

/// Probability of detecting `n` photons in the pure displaced squeezed
/// state `|alpha, r, theta>`.
pub fn photon_pmf(alpha: Complex64, r: f64, theta: f64, n: usize) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(Error::invalid(format!(
            "squeeze parameter r = {r} must be >= 0"
        )));
    }
    if r > R_MAX {
        return Err(Error::NumericRange(format!(
            "r = {r} exceeds the supported range"
        )));
    }
    if r == 0.0 {
        return poisson_pmf(alpha.norm_sqr(), n);
    }
    if alpha.norm() == 0.0 {
        return squeezed_vacuum_pmf(r, n);
    }
    let (per_n, cst, w) = ln_pmf_parts(alpha, r, theta);
    let lnh = ln_abs_hermite_sweep(w, n);
    finalize((n as f64) * per_n - ln_factorial(n) + cst + 2.0 * lnh[n])
}

/// Average photon number of `|alpha, r>`:
/// `e^(-2r)/4 + e^(2r)/4 - 1/2 + |alpha|^2`.
pub fn mean_photon_number(alpha: Complex64, r: f64) -> f64 {
    (-2.0 * r).exp() / 4.0 + (2.0 * r).exp() / 4.0 - 0.5 + alpha.norm_sqr()
}

/// Poisson probability mass `e^(-mean) mean^n / n!`, evaluated in log
/// space.
pub fn poisson_pmf(mean: f64, n: usize) -> Result<f64> {
    if !(mean >= 0.0) {
        return Err(Error::invalid(format!("poisson mean {mean} must be >= 0")));
    }
    if mean == 0.0 {
        return Ok(if n == 0 { 1.0 } else { 0.0 });
    }
    finalize(-mean + (n as f64) * mean.ln() - ln_factorial(n))
}

/// Photon-number distribution table for `N = 0..=n_max`.
#[derive(Debug, Clone)]
pub struct PhotonDistribution {
    n_max: usize,
    probs: Vec<f64>,
    mean_analytic: f64,
    mass: f64,
}

impl PhotonDistribution {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Closed-form mean photon number of the untruncated state.
    pub fn mean_analytic(&self) -> f64 {
        self.mean_analytic
    }

    /// Captured probability mass; approaches 1 when n_max covers the state.
    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// Mean of the truncated table.
    pub fn sample_mean(&self) -> f64 {
        self.probs
            .iter()
            .enumerate()
            .map(|(n, p)| n as f64 * p)
            .sum()
    }

    /// Variance of the truncated table.
    pub fn sample_variance(&self) -> f64 {
        let m = self.sample_mean();
        self.probs
            .iter()
            .enumerate()
            .map(|(n, p)| (n as f64 - m) * (n as f64 - m) * p)
            .sum()
    }
}

/// Tabulate the photon-number pmf of `|alpha, r, theta>` up to `n_max`.
/// Picking `n_max >= mean + 10 sqrt(variance)` keeps the truncated mass
/// above `1 - 1e-6`.
pub fn pmf_table(alpha: Complex64, r: f64, theta: f64, n_max: usize) -> Result<PhotonDistribution> {
    if !(r >= 0.0) {
        return Err(Error::invalid(format!(
            "squeeze parameter r = {r} must be >= 0"
        )));
    }
    if r > R_MAX {
        return Err(Error::NumericRange(format!(
            "r = {r} exceeds the supported range"
        )));
    }
    let mut probs = Vec::with_capacity(n_max + 1);
    if r == 0.0 {
        for n in 0..=n_max {
            probs.push(poisson_pmf(alpha.norm_sqr(), n)?);
        }
    } else if alpha.norm() == 0.0 {
        for n in 0..=n_max {
            probs.push(squeezed_vacuum_pmf(r, n)?);
        }
    } else {
        let (per_n, cst, w) = ln_pmf_parts(alpha, r, theta);
        let lnh = ln_abs_hermite_sweep(w, n_max);
        for n in 0..=n_max {
            probs.push(finalize(
                (n as f64) * per_n - ln_factorial(n) + cst + 2.0 * lnh[n],
            )?);
        }
    }
    let mass: f64 = probs.iter().sum();
    if !(mass.is_finite() && mass <= 1.0 + 1e-9) {
        return Err(Error::NumericRange(format!(
            "pmf mass {mass} is outside [0, 1 + 1e-9]"
        )));
    }
    Ok(PhotonDistribution {
        n_max,
        probs,
        mean_analytic: mean_photon_number(alpha, r),
        mass,
    })
}
