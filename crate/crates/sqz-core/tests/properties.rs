//! Property tests for the structural invariants: symplectic-spectrum
//! preservation, the loss channel's effect on purity, quadrature extrema,
//! dB round trips, photon-table normalization and the periodogram
//! estimator.

use std::f64::consts::PI;

use proptest::prelude::*;

use num_complex::Complex64;
use sqz_core::gaussian::{GaussianState, SqueezeSpec};
use sqz_core::homodyne::{simulate_michelson_output, spectrum_analyzer};
use sqz_core::noise_budget::{opo_squeezing_spectrum, ponderomotive_transform};
use sqz_core::phase_space::{
    db_from_variance, marginal_density, variance_from_db, wigner_value, WignerGrid,
};
use sqz_core::photon::{pmf_table, poisson_pmf};

fn squeezed(r: f64, theta: f64) -> GaussianState {
    GaussianState::squeezed_vacuum(&SqueezeSpec::pure(r, theta).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn db_round_trip(r in 0.0..3.0f64) {
        let var = (-2.0 * r).exp();
        let db = db_from_variance(var).unwrap();
        prop_assert!((db - 20.0 / 10f64.ln() * r).abs() < 1e-12);
        prop_assert!((variance_from_db(db) - var).abs() < 1e-14 * var.max(1.0));
    }

    #[test]
    fn passive_transforms_preserve_the_symplectic_spectrum(
        r1 in 0.0..1.8f64,
        r2 in 0.0..1.8f64,
        t1 in 0.0..PI,
        t2 in 0.0..PI,
        loss in 0.0..1.0f64,
        tau in 0.0..1.0f64,
        phase in 0.0..(2.0 * PI),
    ) {
        let joint = squeezed(r1, t1)
            .apply_loss(0, loss).unwrap()
            .tensor(&squeezed(r2, t2));
        let before = joint.symplectic_eigenvalues().unwrap();
        let after = joint.beam_splitter(0, 1, tau, phase).unwrap()
            .rotate(0, phase / 2.0).unwrap()
            .symplectic_eigenvalues().unwrap();
        for (x, y) in before.iter().zip(after.iter()) {
            prop_assert!((x - y).abs() < 1e-9, "{x} vs {y}");
        }
        // physicality: nothing dips below the Heisenberg bound
        for nu in &after {
            prop_assert!(*nu >= 1.0 - 1e-9);
        }
    }

    #[test]
    fn loss_strictly_degrades_purity(
        r in 0.05..1.8f64,
        theta in 0.0..PI,
        eta_sq in 0.01..0.99f64,
    ) {
        let lossy = squeezed(r, theta).apply_loss(0, eta_sq).unwrap();
        let block = lossy.mode_cov(0).unwrap();
        let det = block[[0, 0]] * block[[1, 1]] - block[[0, 1]] * block[[1, 0]];
        prop_assert!(det > 1.0, "det = {det}");
    }

    #[test]
    fn minimal_variance_is_the_angular_minimum(
        r in 0.0..1.8f64,
        theta in 0.0..PI,
        loss in 0.0..1.0f64,
        dx in -2.0..2.0f64,
    ) {
        let state = squeezed(r, theta)
            .apply_loss(0, loss).unwrap()
            .displace(0, dx, -dx).unwrap();
        let (angle, vmin) = state.minimal_variance_quadrature(0).unwrap();
        prop_assert!((state.quadrature_variance(0, angle).unwrap() - vmin).abs() < 1e-9);
        for k in 0..64 {
            let v = state.quadrature_variance(0, k as f64 * PI / 64.0).unwrap();
            prop_assert!(vmin <= v + 1e-12);
        }
    }

    #[test]
    fn pure_states_peak_at_one_over_two_pi(
        r in 0.0..2.0f64,
        theta in 0.0..PI,
        dx in -2.0..2.0f64,
        dy in -2.0..2.0f64,
    ) {
        let state = squeezed(r, theta).displace(0, dx, dy).unwrap();
        let peak = wigner_value(&state, 0, dx, dy).unwrap();
        prop_assert!((peak - 1.0 / (2.0 * PI)).abs() < 1e-9);
    }

    #[test]
    fn photon_tables_normalize_and_obey_parity(
        r in 0.0..1.5f64,
        theta in 0.0..(2.0 * PI),
        re in -2.0..2.0f64,
        im in -2.0..2.0f64,
    ) {
        let alpha = Complex64::new(re, im);
        let table = pmf_table(alpha, r, theta, 300).unwrap();
        prop_assert!(table.mass() >= 1.0 - 1e-6);
        prop_assert!(table.mass() <= 1.0 + 1e-9);
        prop_assert!(
            (table.sample_mean() - table.mean_analytic()).abs()
                <= 1e-6 * table.mean_analytic().max(1.0)
        );
        let vacuum_table = pmf_table(Complex64::ZERO, r, theta, 300).unwrap();
        for n in (1..=299).step_by(2) {
            prop_assert!(vacuum_table.probs()[n] < 1e-12);
        }
    }

    #[test]
    fn poisson_limit_of_the_general_pmf(mean in 0.1..16.0f64) {
        let alpha = Complex64::new(mean.sqrt(), 0.0);
        let table = pmf_table(alpha, 0.0, 0.0, 200).unwrap();
        for n in 0..=100 {
            let p = poisson_pmf(mean, n).unwrap();
            prop_assert!((table.probs()[n] - p).abs() < 1e-9);
        }
    }

    #[test]
    fn ponderomotive_transform_preserves_the_determinant(
        r in 0.0..1.5f64,
        theta in 0.0..PI,
        k in 0.0..5.0f64,
    ) {
        let v = squeezed(r, theta).mode_cov(0).unwrap();
        let out = ponderomotive_transform(&v, k);
        let det_in = v[[0, 0]] * v[[1, 1]] - v[[0, 1]] * v[[1, 0]];
        let det_out = out[[0, 0]] * out[[1, 1]] - out[[0, 1]] * out[[1, 0]];
        prop_assert!((det_in - det_out).abs() < 1e-9);
    }

    #[test]
    fn opo_uncertainty_product(
        x in 0.0..0.99f64,
        eta in 0.0..1.0f64,
        w in 0.0..8.0f64,
    ) {
        let (vm, vp) = opo_squeezing_spectrum(x, 1.0, eta, w).unwrap();
        prop_assert!(vm * vp >= 1.0 - 1e-12);
        prop_assert!(vm <= 1.0 + 1e-12);
        prop_assert!(vp >= 1.0 - 1e-12);
    }
}

/// Y-integration of the Wigner function reproduces the X marginal for a
/// batch of random mixed states.
#[test]
fn wigner_marginal_consistency() {
    use rand::Rng;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(99);
    for _ in 0..20 {
        let r = rng.random_range(0.0..1.5);
        let theta = rng.random_range(0.0..PI);
        let loss = rng.random_range(0.3..1.0);
        let dx = rng.random_range(-1.0..1.0);
        let state = squeezed(r, theta)
            .apply_loss(0, loss)
            .unwrap()
            .displace(0, dx, -0.5 * dx)
            .unwrap();
        let y_sd = state.quadrature_variance(0, PI / 2.0).unwrap().sqrt();
        let my = state.mode_mean(0).unwrap()[1];
        let n = 4001;
        let half = 6.0 * y_sd;
        let h = 2.0 * half / (n as f64 - 1.0);
        let x = dx + 0.3;
        let mut sum = 0.0;
        for i in 0..n {
            let y = my - half + i as f64 * h;
            let w = wigner_value(&state, 0, x, y).unwrap();
            let coeff = if i == 0 || i == n - 1 {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            sum += coeff * w;
        }
        let integral = sum * h / 3.0;
        let expect = marginal_density(&state, 0, 0.0, x).unwrap();
        assert!(
            (integral - expect).abs() < 1e-6,
            "marginal mismatch: {integral} vs {expect}"
        );
    }
}

/// Grid normalization across squeeze strengths: the default grid captures
/// at least 99% of the quasi-probability mass and never exceeds 1.
#[test]
fn wigner_grid_mass_bounds() {
    for r in [0.0, 0.5, 1.0, 1.5, 2.0] {
        let state = squeezed(r, 0.9);
        let grid = WignerGrid::evaluate(&state, 0).unwrap();
        let mass = grid.riemann_sum();
        assert!((0.99..=1.0 + 1e-9).contains(&mass), "r = {r}: mass {mass}");
    }
}

/// White input: no periodogram bin strays more than 6 estimator standard
/// deviations from the mean over 100 averages.
#[test]
fn spectrum_flatness_six_sigma() {
    let n_avg = 100.0;
    let seg = 64.0;
    let trace = simulate_michelson_output(0.0, 0.01, 0.0, n_avg * seg, 1.0, 31).unwrap();
    let spec = spectrum_analyzer(&trace, 1.0 / seg).unwrap();
    let linear: Vec<f64> = spec
        .values()
        .iter()
        .map(|db| 10f64.powf(db / 10.0))
        .collect();
    let mean = linear.iter().sum::<f64>() / linear.len() as f64;
    let sigma = mean / n_avg.sqrt();
    for (f, v) in spec.grid().iter().zip(&linear) {
        assert!(
            (v - mean).abs() <= 6.0 * sigma,
            "bin {f}: {v} vs mean {mean} (6 sigma = {})",
            6.0 * sigma
        );
    }
}
