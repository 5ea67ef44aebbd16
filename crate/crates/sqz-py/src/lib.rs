//! Python bindings for the squeezed-light toolkit: Gaussian states and
//! their symplectic transforms, photon statistics, entanglement criteria,
//! phase bounds and the interferometer quantum-noise budget.
//!
//! Build the cdylib with `cargo build -p sqz-py --release`; the smoke test
//! under `python/` copies the shared library onto the import path.

use num_complex::Complex64;
use pyo3::exceptions::{PyOverflowError, PyValueError};
use pyo3::prelude::*;

use sqz_core::entanglement as ent;
use sqz_core::homodyne;
use sqz_core::noise_budget as nb;
use sqz_core::phase_limits as pl;
use sqz_core::phase_space as ps;
use sqz_core::photon;
use sqz_core::{Error, GaussianState as CoreState, SqueezeSpec};

fn py_err(err: Error) -> PyErr {
    match err {
        Error::NumericRange(msg) => PyOverflowError::new_err(msg),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn cov_to_lists(cov: &ndarray::Array2<f64>) -> Vec<Vec<f64>> {
    cov.rows().into_iter().map(|r| r.to_vec()).collect()
}

fn cov_from_lists(rows: Vec<Vec<f64>>) -> PyResult<ndarray::Array2<f64>> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(PyValueError::new_err("covariance must be a square matrix"));
    }
    let flat: Vec<f64> = rows.into_iter().flatten().collect();
    ndarray::Array2::from_shape_vec((n, n), flat).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Gaussian state over n modes: mean vector and vacuum-normalized
/// covariance matrix in X1, Y1, X2, Y2, ... ordering.
#[pyclass(name = "GaussianState", from_py_object)]
#[derive(Clone)]
struct PyGaussianState {
    inner: CoreState,
}

#[pymethods]
impl PyGaussianState {
    #[staticmethod]
    fn vacuum(n_modes: usize) -> PyResult<Self> {
        Ok(PyGaussianState {
            inner: CoreState::vacuum(n_modes).map_err(py_err)?,
        })
    }

    #[staticmethod]
    #[pyo3(signature = (r, theta = 0.0))]
    fn squeezed_vacuum(r: f64, theta: f64) -> PyResult<Self> {
        let spec = SqueezeSpec::pure(r, theta).map_err(py_err)?;
        Ok(PyGaussianState {
            inner: CoreState::squeezed_vacuum(&spec).map_err(py_err)?,
        })
    }

    #[staticmethod]
    #[pyo3(signature = (db, theta = 0.0))]
    fn squeezed_vacuum_db(db: f64, theta: f64) -> PyResult<Self> {
        let spec = SqueezeSpec::from_db(db, theta).map_err(py_err)?;
        Ok(PyGaussianState {
            inner: CoreState::squeezed_vacuum(&spec).map_err(py_err)?,
        })
    }

    #[getter]
    fn n_modes(&self) -> usize {
        self.inner.n_modes()
    }

    fn mean(&self) -> Vec<f64> {
        self.inner.mean().to_vec()
    }

    fn cov(&self) -> Vec<Vec<f64>> {
        cov_to_lists(self.inner.cov())
    }

    fn rotate(&self, mode: usize, phi: f64) -> PyResult<Self> {
        Ok(PyGaussianState {
            inner: self.inner.rotate(mode, phi).map_err(py_err)?,
        })
    }

    fn displace(&self, mode: usize, dx: f64, dy: f64) -> PyResult<Self> {
        Ok(PyGaussianState {
            inner: self.inner.displace(mode, dx, dy).map_err(py_err)?,
        })
    }

    fn apply_loss(&self, mode: usize, eta_sq: f64) -> PyResult<Self> {
        Ok(PyGaussianState {
            inner: self.inner.apply_loss(mode, eta_sq).map_err(py_err)?,
        })
    }

    #[pyo3(signature = (mode_a, mode_b, transmissivity = 0.5, relative_phase = 0.0))]
    fn beam_splitter(
        &self,
        mode_a: usize,
        mode_b: usize,
        transmissivity: f64,
        relative_phase: f64,
    ) -> PyResult<Self> {
        Ok(PyGaussianState {
            inner: self
                .inner
                .beam_splitter(mode_a, mode_b, transmissivity, relative_phase)
                .map_err(py_err)?,
        })
    }

    fn tensor(&self, other: &PyGaussianState) -> Self {
        PyGaussianState {
            inner: self.inner.tensor(&other.inner),
        }
    }

    fn quadrature_variance(&self, mode: usize, vartheta: f64) -> PyResult<f64> {
        self.inner
            .quadrature_variance(mode, vartheta)
            .map_err(py_err)
    }

    fn minimal_variance_quadrature(&self, mode: usize) -> PyResult<(f64, f64)> {
        self.inner.minimal_variance_quadrature(mode).map_err(py_err)
    }

    fn symplectic_eigenvalues(&self) -> PyResult<Vec<f64>> {
        self.inner.symplectic_eigenvalues().map_err(py_err)
    }

    fn wigner_value(&self, mode: usize, x: f64, y: f64) -> PyResult<f64> {
        ps::wigner_value(&self.inner, mode, x, y).map_err(py_err)
    }

    fn marginal_density(&self, mode: usize, vartheta: f64, value: f64) -> PyResult<f64> {
        ps::marginal_density(&self.inner, mode, vartheta, value).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!("GaussianState(n_modes={})", self.inner.n_modes())
    }
}

/// Michelson interferometer parameter set for the quantum-noise budget.
#[pyclass(name = "Interferometer", from_py_object)]
#[derive(Clone)]
struct PyInterferometer {
    inner: nb::InterferometerConfig,
}

#[pymethods]
impl PyInterferometer {
    #[new]
    #[pyo3(signature = (power_w, wavelength_m, arm_length_m, mirror_mass_kg,
                        pendulum_f_hz = 1.0, pendulum_q = 1e7, arm_cavity_t_fp = None))]
    fn new(
        power_w: f64,
        wavelength_m: f64,
        arm_length_m: f64,
        mirror_mass_kg: f64,
        pendulum_f_hz: f64,
        pendulum_q: f64,
        arm_cavity_t_fp: Option<f64>,
    ) -> PyResult<Self> {
        let cfg = nb::InterferometerConfig::new(
            power_w,
            wavelength_m,
            arm_length_m,
            mirror_mass_kg,
            nb::Pendulum {
                omega_m: 2.0 * std::f64::consts::PI * pendulum_f_hz,
                q: pendulum_q,
            },
            arm_cavity_t_fp.map(|t_fp| nb::ArmCavity { t_fp }),
        )
        .map_err(py_err)?;
        Ok(PyInterferometer { inner: cfg })
    }

    #[pyo3(signature = (omega_sideband, strain = false))]
    fn shot_asd(&self, omega_sideband: f64, strain: bool) -> PyResult<f64> {
        nb::shot_asd(&self.inner, omega_sideband, norm(strain)).map_err(py_err)
    }

    #[pyo3(signature = (omega_sideband, strain = false, pendulum = false))]
    fn rpn_asd(&self, omega_sideband: f64, strain: bool, pendulum: bool) -> PyResult<f64> {
        let susc = if pendulum {
            nb::Susceptibility::Pendulum
        } else {
            nb::Susceptibility::FreeMass
        };
        nb::rpn_asd(&self.inner, omega_sideband, norm(strain), susc).map_err(py_err)
    }

    fn sql_asd(&self, omega_sideband: f64) -> PyResult<f64> {
        let variant = if self.inner.arm_cavity.is_some() {
            nb::SqlVariant::WithArmCavities
        } else {
            nb::SqlVariant::FreeMass
        };
        nb::sql_asd(&self.inner, omega_sideband, variant).map_err(py_err)
    }

    #[pyo3(signature = (omega_sideband, injection = "none", squeeze_db = 0.0,
                        angle_rad = 0.0, eta = 1.0))]
    fn total_asd(
        &self,
        omega_sideband: f64,
        injection: &str,
        squeeze_db: f64,
        angle_rad: f64,
        eta: f64,
    ) -> PyResult<f64> {
        let r = squeeze_db * 10f64.ln() / 20.0;
        let inj = match injection {
            "none" => nb::Injection::None,
            "optimal" => nb::Injection::OptimalFrequencyDependent { r },
            "fixed" => {
                nb::Injection::FixedSqueeze(SqueezeSpec::new(r, angle_rad, eta).map_err(py_err)?)
            }
            other => {
                return Err(PyValueError::new_err(format!(
                    "injection must be none|optimal|fixed, got {other}"
                )))
            }
        };
        nb::total_quantum_noise_asd(&self.inner, omega_sideband, &inj).map_err(py_err)
    }

    fn kappa(&self, omega_sideband: f64) -> PyResult<f64> {
        nb::kappa(&self.inner, omega_sideband).map_err(py_err)
    }

    fn omega_sql(&self) -> f64 {
        nb::omega_sql(&self.inner)
    }

    fn h_fp(&self, omega_sideband: f64) -> PyResult<f64> {
        nb::h_fp(&self.inner, omega_sideband).map_err(py_err)
    }
}

fn norm(strain: bool) -> nb::Normalization {
    if strain {
        nb::Normalization::Strain
    } else {
        nb::Normalization::Displacement
    }
}

#[pyfunction]
fn db_from_variance(var: f64) -> PyResult<f64> {
    ps::db_from_variance(var).map_err(py_err)
}

#[pyfunction]
fn variance_from_db(db: f64) -> f64 {
    ps::variance_from_db(db)
}

#[pyfunction]
#[pyo3(signature = (alpha, r, theta, n))]
fn photon_pmf(alpha: Complex64, r: f64, theta: f64, n: usize) -> PyResult<f64> {
    photon::photon_pmf(alpha, r, theta, n).map_err(py_err)
}

#[pyfunction]
fn mean_photon_number(alpha: Complex64, r: f64) -> f64 {
    photon::mean_photon_number(alpha, r)
}

#[pyfunction]
fn poisson_pmf(mean: f64, n: usize) -> PyResult<f64> {
    photon::poisson_pmf(mean, n).map_err(py_err)
}

/// Photon-number table: returns `(probs, mean_analytic, mass)`.
#[pyfunction]
#[pyo3(signature = (alpha, r, theta, n_max))]
fn pmf_table(alpha: Complex64, r: f64, theta: f64, n_max: usize) -> PyResult<(Vec<f64>, f64, f64)> {
    let t = photon::pmf_table(alpha, r, theta, n_max).map_err(py_err)?;
    Ok((t.probs().to_vec(), t.mean_analytic(), t.mass()))
}

#[pyfunction]
fn duan_value(cov: Vec<Vec<f64>>) -> PyResult<f64> {
    let bp = ent::BipartiteCovariance::new(cov_from_lists(cov)?).map_err(py_err)?;
    Ok(ent::duan_value(&bp))
}

#[pyfunction]
fn reid_epr(cov: Vec<Vec<f64>>) -> PyResult<f64> {
    let bp = ent::BipartiteCovariance::new(cov_from_lists(cov)?).map_err(py_err)?;
    ent::reid_epr(&bp).map_err(py_err)
}

/// Balanced-splitter bipartite covariance of two single-mode states.
#[pyfunction]
#[pyo3(signature = (state_a, state_b, relative_phase = 0.0))]
fn assemble_bipartite(
    state_a: &PyGaussianState,
    state_b: &PyGaussianState,
    relative_phase: f64,
) -> PyResult<Vec<Vec<f64>>> {
    let bp =
        ent::assemble_bipartite(&state_a.inner, &state_b.inner, relative_phase).map_err(py_err)?;
    Ok(cov_to_lists(bp.cov()))
}

#[pyfunction]
fn ponderomotive_transform(cov: Vec<Vec<f64>>, k: f64) -> PyResult<Vec<Vec<f64>>> {
    let m = cov_from_lists(cov)?;
    if m.nrows() != 2 {
        return Err(PyValueError::new_err("expected a 2x2 covariance"));
    }
    Ok(cov_to_lists(&nb::ponderomotive_transform(&m, k)))
}

#[pyfunction]
fn optimal_input_angle(k: f64) -> f64 {
    nb::optimal_input_angle(k)
}

#[pyfunction]
fn ponderomotive_squeezing_db(k: f64) -> (f64, f64) {
    nb::ponderomotive_squeezing_db(k)
}

#[pyfunction]
fn readout_variance_vs_lo_angle(cov: Vec<Vec<f64>>, zeta: f64) -> PyResult<f64> {
    let m = cov_from_lists(cov)?;
    if m.nrows() != 2 {
        return Err(PyValueError::new_err("expected a 2x2 covariance"));
    }
    Ok(nb::readout_variance_vs_lo_angle(&m, zeta))
}

/// Squeeze-ellipse rotation (radians) for a chain of `(detuning_hz,
/// half_bandwidth_hz)` filter cavities at sideband frequency `f_hz`.
#[pyfunction]
fn filter_cavity_rotation(cavities: Vec<(f64, f64)>, f_hz: f64) -> PyResult<f64> {
    let spec = nb::FilterCavitySpec {
        cavities: cavities
            .into_iter()
            .map(|(detuning_hz, half_bandwidth_hz)| nb::FilterCavity {
                detuning_hz,
                half_bandwidth_hz,
            })
            .collect(),
    };
    nb::filter_cavity_rotation(&spec, f_hz).map_err(py_err)
}

#[pyfunction]
fn intracavity_squeeze_limit(r1: f64) -> PyResult<f64> {
    nb::intracavity_squeeze_limit(r1).map_err(py_err)
}

#[pyfunction]
fn opo_squeezing_spectrum(
    pump_ratio_x: f64,
    gamma: f64,
    eta_total: f64,
    omega_sideband: f64,
) -> PyResult<(f64, f64)> {
    nb::opo_squeezing_spectrum(pump_ratio_x, gamma, eta_total, omega_sideband).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (n_mean, eta = 1.0, r = 0.0, strategy = "coherent"))]
fn min_phase(n_mean: f64, eta: f64, r: f64, strategy: &str) -> PyResult<f64> {
    let strat = match strategy {
        "coherent" => pl::Strategy::Coherent,
        "csv" => pl::Strategy::Csv,
        "heisenberg_single_shot" => pl::Strategy::HeisenbergSingleShot,
        "coherent_loss" => pl::Strategy::CoherentLoss,
        "csv_loss" => pl::Strategy::CsvLoss,
        "optimal_loss" => pl::Strategy::OptimalLoss,
        other => return Err(PyValueError::new_err(format!("unknown strategy `{other}`"))),
    };
    let query = pl::PhaseBoundQuery::new(n_mean, eta, r, strat).map_err(py_err)?;
    pl::min_phase(&query).map_err(py_err)
}

#[pyfunction]
fn csv_optimality_ratio(eta: f64, r: f64) -> PyResult<f64> {
    pl::csv_optimality_ratio(eta, r).map_err(py_err)
}

#[pyfunction]
fn fringe_power_fraction(phi: f64) -> f64 {
    pl::fringe_power_fraction(phi)
}

/// Homodyne samples of one quadrature of a Gaussian state.
#[pyfunction]
fn sample_quadratures(
    state: &PyGaussianState,
    mode: usize,
    vartheta: f64,
    n_samples: usize,
    seed: u64,
) -> PyResult<Vec<f64>> {
    let trace = homodyne::sample_quadratures(&state.inner, mode, vartheta, n_samples, seed)
        .map_err(py_err)?;
    Ok(trace.samples().to_vec())
}

/// Averaged periodogram of raw samples; returns `(f_hz, power_db)` with
/// 0 dB at the vacuum level.
#[pyfunction]
fn spectrum_analyzer(
    samples: Vec<f64>,
    sample_rate_hz: f64,
    rbw_hz: f64,
) -> PyResult<(Vec<f64>, Vec<f64>)> {
    let trace = homodyne::HomodyneTrace::from_samples(samples, sample_rate_hz).map_err(py_err)?;
    let spec = homodyne::spectrum_analyzer(&trace, rbw_hz).map_err(py_err)?;
    Ok((spec.grid().to_vec(), spec.values().to_vec()))
}

#[pymodule]
fn sqz_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGaussianState>()?;
    m.add_class::<PyInterferometer>()?;
    m.add_function(wrap_pyfunction!(db_from_variance, m)?)?;
    m.add_function(wrap_pyfunction!(variance_from_db, m)?)?;
    m.add_function(wrap_pyfunction!(photon_pmf, m)?)?;
    m.add_function(wrap_pyfunction!(mean_photon_number, m)?)?;
    m.add_function(wrap_pyfunction!(poisson_pmf, m)?)?;
    m.add_function(wrap_pyfunction!(pmf_table, m)?)?;
    m.add_function(wrap_pyfunction!(duan_value, m)?)?;
    m.add_function(wrap_pyfunction!(reid_epr, m)?)?;
    m.add_function(wrap_pyfunction!(assemble_bipartite, m)?)?;
    m.add_function(wrap_pyfunction!(ponderomotive_transform, m)?)?;
    m.add_function(wrap_pyfunction!(optimal_input_angle, m)?)?;
    m.add_function(wrap_pyfunction!(ponderomotive_squeezing_db, m)?)?;
    m.add_function(wrap_pyfunction!(readout_variance_vs_lo_angle, m)?)?;
    m.add_function(wrap_pyfunction!(filter_cavity_rotation, m)?)?;
    m.add_function(wrap_pyfunction!(intracavity_squeeze_limit, m)?)?;
    m.add_function(wrap_pyfunction!(opo_squeezing_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(min_phase, m)?)?;
    m.add_function(wrap_pyfunction!(csv_optimality_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(fringe_power_fraction, m)?)?;
    m.add_function(wrap_pyfunction!(sample_quadratures, m)?)?;
    m.add_function(wrap_pyfunction!(spectrum_analyzer, m)?)?;
    Ok(())
}
